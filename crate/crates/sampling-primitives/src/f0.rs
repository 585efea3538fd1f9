use std::collections::{BTreeSet, HashSet};

use crate::hashing::keyed_hash64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum F0Mode {
    Exact,
    Kmv { epsilon: f64 },
}

/// Distinct-count estimator over an insert-only stream. Exact mode stores the
/// distinct items; KMV mode keeps the `ceil(3/eps^2)` smallest hash values
/// and extrapolates from the k-th minimum.
#[derive(Clone, Debug)]
pub struct F0Estimator {
    mode: F0Mode,
    inner: Inner,
}

#[derive(Clone, Debug)]
enum Inner {
    Exact(HashSet<u64>),
    Kmv {
        key: u64,
        size: usize,
        sketch: BTreeSet<u64>,
    },
}

impl F0Estimator {
    pub fn exact() -> Self {
        Self {
            mode: F0Mode::Exact,
            inner: Inner::Exact(HashSet::new()),
        }
    }

    pub fn kmv(epsilon: f64, key: u64) -> Self {
        assert!(
            epsilon > 0.0 && epsilon < 1.0,
            "relative error must lie in (0, 1)"
        );
        let size = (3.0 / (epsilon * epsilon)).ceil() as usize;
        Self {
            mode: F0Mode::Kmv { epsilon },
            inner: Inner::Kmv {
                key,
                size,
                sketch: BTreeSet::new(),
            },
        }
    }

    pub fn observe(&mut self, item: u64) {
        match &mut self.inner {
            Inner::Exact(set) => {
                set.insert(item);
            }
            Inner::Kmv { key, size, sketch } => {
                // Distinct items collide on priority with probability 2^-64
                // per pair and then count as one; accepted, not corrected.
                let priority = keyed_hash64(*key, item);
                if sketch.len() < *size {
                    sketch.insert(priority);
                } else {
                    let max = *sketch.iter().next_back().unwrap();
                    if priority < max && sketch.insert(priority) {
                        sketch.remove(&max);
                    }
                }
            }
        }
    }

    pub fn estimate(&self) -> u64 {
        match &self.inner {
            Inner::Exact(set) => set.len() as u64,
            Inner::Kmv { size, sketch, .. } => {
                if sketch.len() < *size {
                    sketch.len() as u64
                } else {
                    let kth = *sketch.iter().next_back().unwrap();
                    let fraction = kth as f64 / 2f64.powi(64);
                    ((*size as f64 - 1.0) / fraction).round() as u64
                }
            }
        }
    }

    pub fn mode(&self) -> F0Mode {
        self.mode
    }

    /// Words of state to charge to a space meter.
    pub fn space_words(&self) -> u64 {
        match &self.inner {
            Inner::Exact(set) => set.len() as u64,
            Inner::Kmv { sketch, .. } => sketch.len() as u64,
        }
    }
}
