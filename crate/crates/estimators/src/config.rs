use sampling_primitives::F0Mode;

use crate::error::EstimatorError;

/// Shared knobs for every estimator. `k`, the accuracy pair `(epsilon,
/// delta)`, and the promised lower bound `t_promise` on the true simplex
/// count drive all sampling rates; the remaining fields tune individual
/// algorithms and default to values that the test suite calibrates against.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimatorConfig {
    pub k: usize,
    /// Promised lower bound on the simplex count of the input. Estimators
    /// stay correct when the promise holds; a promise that is too high only
    /// costs accuracy, never validity of the space accounting.
    pub t_promise: u64,
    pub epsilon: f64,
    pub delta: f64,
    pub master_seed: u64,
    /// Multiplier on the analytic variance bound used to size batches for
    /// the four-pass estimators.
    pub variance_const: f64,
    /// A batch whose sampling budgets exceed `abort_factor` times their
    /// expected total is dropped instead of run to completion.
    pub abort_factor: f64,
    /// Stand-in for the expected per-trial neighbor budget when sizing the
    /// abort threshold.
    pub expected_r_budget: f64,
    /// Override for the oracle's vertex-sampling coefficient. `None` uses
    /// the analysis-mandated `12k(k+1)`; overrides may only lower it.
    pub xi: Option<f64>,
    /// Promised maximum number of simplices sharing one edge. Required by
    /// the one-pass estimator.
    pub delta_e: Option<u64>,
    /// Promised maximum number of simplices sharing one vertex. Required by
    /// the one-pass estimator.
    pub delta_v: Option<u64>,
    /// How the four-pass degree-ordered estimator sizes a neighborhood:
    /// exact distinct counting or a fixed-size sketch.
    pub f0_mode: F0Mode,
    /// Forces every sampling probability to 1 and the oracle's vertex set to
    /// all of V. Estimates become deterministic and exact; space degenerates
    /// to storing the whole stream. Useful as a correctness oracle.
    pub full_sampling: bool,
}

impl EstimatorConfig {
    pub fn new(k: usize, t_promise: u64, epsilon: f64, delta: f64, master_seed: u64) -> Self {
        Self {
            k,
            t_promise,
            epsilon,
            delta,
            master_seed,
            variance_const: 8.0,
            abort_factor: 8.0,
            expected_r_budget: 4.0,
            xi: None,
            delta_e: None,
            delta_v: None,
            f0_mode: F0Mode::Exact,
            full_sampling: false,
        }
    }

    /// The oracle coefficient the analysis requires for arity `k`.
    pub fn default_xi(k: usize) -> f64 {
        (12 * k * (k + 1)) as f64
    }

    pub fn xi_value(&self) -> f64 {
        self.xi.unwrap_or_else(|| Self::default_xi(self.k))
    }

    pub fn validate(&self) -> Result<(), EstimatorError> {
        let fail = |msg: String| Err(EstimatorError::Config(msg));
        if self.k < 2 {
            return fail(format!("arity must be at least 2, got {}", self.k));
        }
        if self.t_promise < 1 {
            return fail("the simplex-count promise must be at least 1".into());
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return fail(format!("epsilon must lie in (0, 1], got {}", self.epsilon));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return fail(format!("delta must lie in (0, 1), got {}", self.delta));
        }
        if !(self.variance_const > 0.0) {
            return fail("variance_const must be positive".into());
        }
        if !(self.abort_factor > 1.0) {
            return fail("abort_factor must exceed 1".into());
        }
        if !(self.expected_r_budget > 0.0) {
            return fail("expected_r_budget must be positive".into());
        }
        if let Some(xi) = self.xi {
            let cap = Self::default_xi(self.k);
            if !(xi > 0.0 && xi <= cap) {
                return fail(format!(
                    "xi override must lie in (0, {cap}]; raising it past the default weakens \
                     nothing and is not supported"
                ));
            }
        }
        if self.delta_e == Some(0) || self.delta_v == Some(0) {
            return fail("overlap promises must be at least 1".into());
        }
        Ok(())
    }

    /// The overlap promises, or a configuration error naming the algorithm
    /// that needs them.
    pub fn overlap_promises(&self, algorithm: &str) -> Result<(u64, u64), EstimatorError> {
        match (self.delta_e, self.delta_v) {
            (Some(de), Some(dv)) => Ok((de, dv)),
            _ => Err(EstimatorError::Config(format!(
                "{algorithm} needs both overlap promises (max simplices per edge and per vertex)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> EstimatorConfig {
        EstimatorConfig::new(3, 10, 0.5, 0.25, 7)
    }

    #[test]
    fn default_knobs_validate() {
        base().validate().unwrap();
    }

    #[test]
    fn rejects_out_of_range_accuracy() {
        for (eps, delta) in [(0.0, 0.25), (1.5, 0.25), (0.5, 0.0), (0.5, 1.0)] {
            let mut cfg = base();
            cfg.epsilon = eps;
            cfg.delta = delta;
            assert!(cfg.validate().is_err(), "eps={eps} delta={delta}");
        }
    }

    #[test]
    fn xi_can_only_be_lowered() {
        let mut cfg = base();
        cfg.xi = Some(EstimatorConfig::default_xi(3));
        cfg.validate().unwrap();
        cfg.xi = Some(EstimatorConfig::default_xi(3) + 1.0);
        assert!(cfg.validate().is_err());
        cfg.xi = Some(0.0);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn overlap_promises_are_all_or_nothing() {
        let mut cfg = base();
        assert!(cfg.overlap_promises("x").is_err());
        cfg.delta_e = Some(2);
        assert!(cfg.overlap_promises("x").is_err());
        cfg.delta_v = Some(3);
        assert_eq!(cfg.overlap_promises("x").unwrap(), (2, 3));
    }

    #[test]
    fn zero_promise_rejected() {
        let mut cfg = base();
        cfg.delta_e = Some(0);
        assert!(cfg.validate().is_err());
    }
}
