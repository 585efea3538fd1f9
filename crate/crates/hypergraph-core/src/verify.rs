//! Identity and inequality checks tying the census, ordering, and density
//! routines together. Every check is an equality or bound that must hold on
//! any valid instance, so a failure always indicates an implementation bug.

use itertools::Itertools;

use crate::arboricity::{hyperarboricity_exact, sum_min_degrees};
use crate::error::HypergraphError;
use crate::graph::{Hyperedge, Hypergraph, VertexId};
use crate::order::{precedes, simplex_label, sum_prefix_codegs};
use crate::shadow::shadow_simplex_census;
use crate::simplices::{count_simplices_exact, enumerate_simplices, hyperwedges_of};
use crate::util::binomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: CheckStatus,
    pub details: String,
}

impl CheckOutcome {
    fn pass(name: &'static str, details: String) -> Self {
        CheckOutcome { name, status: CheckStatus::Pass, details }
    }
    fn fail(name: &'static str, details: String) -> Self {
        CheckOutcome { name, status: CheckStatus::Fail, details }
    }
    fn skipped(name: &'static str, details: String) -> Self {
        CheckOutcome { name, status: CheckStatus::Skipped, details }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Cap on non-isolated vertices for the hyperarboricity-backed bound.
    pub arboricity_cap: usize,
    /// Refuse instances with more non-isolated vertices than this; the
    /// subset sweeps are exponential in spirit and meant for desk scale.
    pub max_active: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { arboricity_cap: 16, max_active: 48 }
    }
}

/// Runs the full identity suite. Errors only on oversized instances; check
/// failures are reported in the outcome list.
pub fn verify_instance(
    h: &Hypergraph,
    opts: &VerifyOptions,
) -> Result<Vec<CheckOutcome>, HypergraphError> {
    let active = h.active_vertices();
    if active.len() > opts.max_active {
        return Err(HypergraphError::VertexCapExceeded {
            active: active.len(),
            cap: opts.max_active,
        });
    }

    let stats = count_simplices_exact(h);
    let simplices = enumerate_simplices(h);
    let mut out = Vec::new();

    out.push(check_handshake(h, &active));
    out.push(check_sandwich(h, &active));
    out.push(check_label_census(h, &simplices, &stats.per_edge_labeled));
    out.push(check_nsimp_bound(h, &stats.per_edge_labeled));
    out.push(check_wedge_census(h, stats.t_k, &stats.per_edge_containing, &simplices));
    out.push(check_shadow(h, stats.t_k));
    out.push(check_min_degree_sum(h, opts.arboricity_cap));
    out.push(check_prefix_codegs_k2(h));
    Ok(out)
}

pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|c| c.status != CheckStatus::Fail)
}

/// Co-degrees over all r-sets sum to C(k,r) * m: each edge is counted once
/// per r-subset of its vertices.
fn check_handshake(h: &Hypergraph, active: &[VertexId]) -> CheckOutcome {
    let name = "codeg-handshake";
    let m = h.m() as u64;
    for r in 1..h.k() {
        let total: u64 = active
            .iter()
            .copied()
            .combinations(r)
            .map(|s| h.codeg(&s))
            .sum();
        let expect = binomial(h.k() as u64, r as u64) * m;
        if total != expect {
            return CheckOutcome::fail(
                name,
                format!("r={r}: co-degree sum {total}, expected {expect}"),
            );
        }
    }
    CheckOutcome::pass(name, format!("r=1..{} over {} vertices", h.k() - 1, active.len()))
}

/// codeg(S) <= |Nhd(S)| <= (k-|S|) codeg(S), with equality on the left at
/// |S| = k-1.
fn check_sandwich(h: &Hypergraph, active: &[VertexId]) -> CheckOutcome {
    let name = "neighborhood-sandwich";
    for r in 1..h.k() {
        for s in active.iter().copied().combinations(r) {
            let codeg = h.codeg(&s);
            let nhd = h.neighborhood(&s).len() as u64;
            // Edges extending S are distinct (k-r)-subsets of Nhd(S), and each
            // contributes at most k-r of its members.
            let lo_ok = codeg <= binomial(nhd, (h.k() - r) as u64);
            let hi = (h.k() - r) as u64 * codeg;
            if !lo_ok || nhd > hi {
                return CheckOutcome::fail(
                    name,
                    format!("S={s:?}: codeg={codeg}, |Nhd|={nhd}, upper={hi}"),
                );
            }
            if r == h.k() - 1 && nhd != codeg {
                return CheckOutcome::fail(
                    name,
                    format!("S={s:?}: expected |Nhd| = codeg at |S|=k-1, got {nhd} vs {codeg}"),
                );
            }
        }
    }
    CheckOutcome::pass(name, "all proper subsets within bounds".into())
}

/// Each simplex is owned by exactly one (edge, apex) split, the one its label
/// selects, and the per-edge label counts sum back to t_k.
fn check_label_census(
    h: &Hypergraph,
    simplices: &[Vec<VertexId>],
    per_edge_labeled: &[u64],
) -> CheckOutcome {
    let name = "label-census";
    for x in simplices {
        let (e, z) = simplex_label(h, x);
        let mut owners = 0;
        for &apex in x {
            let face: Vec<VertexId> = x.iter().copied().filter(|&v| v != apex).collect();
            let face = Hyperedge::new(face).unwrap();
            if precedes(h, &face, apex) {
                owners += 1;
                if (face, apex) != (e.clone(), z) {
                    return CheckOutcome::fail(name, format!("label mismatch on {x:?}"));
                }
            }
        }
        if owners != 1 {
            return CheckOutcome::fail(name, format!("{owners} owners for {x:?}"));
        }
    }
    let total: u64 = per_edge_labeled.iter().sum();
    if total != simplices.len() as u64 {
        return CheckOutcome::fail(
            name,
            format!("label counts sum to {total}, expected {}", simplices.len()),
        );
    }
    CheckOutcome::pass(name, format!("{} simplices, unique owners", simplices.len()))
}

/// No edge owns more than k * m^(1/k) labels.
fn check_nsimp_bound(h: &Hypergraph, per_edge_labeled: &[u64]) -> CheckOutcome {
    let name = "labeled-count-bound";
    let bound = h.k() as f64 * (h.m() as f64).powf(1.0 / h.k() as f64);
    let worst = per_edge_labeled.iter().copied().max().unwrap_or(0);
    if worst as f64 <= bound {
        CheckOutcome::pass(name, format!("max labeled {worst} <= {bound:.3}"))
    } else {
        CheckOutcome::fail(name, format!("max labeled {worst} > {bound:.3}"))
    }
}

/// Containing counts sum to (k+1) t_k, one per hyperwedge of each simplex.
fn check_wedge_census(
    h: &Hypergraph,
    t_k: u64,
    per_edge_containing: &[u64],
    simplices: &[Vec<VertexId>],
) -> CheckOutcome {
    let name = "hyperwedge-census";
    let total: u64 = per_edge_containing.iter().sum();
    let wedges: u64 = simplices.iter().map(|x| hyperwedges_of(x).len() as u64).sum();
    let expect = (h.k() as u64 + 1) * t_k;
    if total == expect && wedges == expect {
        CheckOutcome::pass(name, format!("{expect} wedges"))
    } else {
        CheckOutcome::fail(
            name,
            format!("containing sum {total}, wedge count {wedges}, expected {expect}"),
        )
    }
}

fn check_shadow(h: &Hypergraph, t_k: u64) -> CheckOutcome {
    let name = "shadow-correspondence";
    if h.k() < 3 {
        return CheckOutcome::skipped(name, "needs k >= 3".into());
    }
    match shadow_simplex_census(h) {
        Ok(count) if count == t_k => CheckOutcome::pass(name, format!("census {count}")),
        Ok(count) => CheckOutcome::fail(name, format!("census {count}, expected {t_k}")),
        Err(e) => CheckOutcome::fail(name, e.to_string()),
    }
}

/// Sum of per-edge minimum degrees is at most k * m * hyperarboricity.
fn check_min_degree_sum(h: &Hypergraph, cap: usize) -> CheckOutcome {
    let name = "min-degree-sum-bound";
    let rho = match hyperarboricity_exact(h, cap) {
        Ok(r) => r,
        Err(e) => return CheckOutcome::skipped(name, e.to_string()),
    };
    let lhs = sum_min_degrees(h);
    let rhs = h.k() as u64 * h.m() as u64 * rho;
    if lhs <= rhs {
        CheckOutcome::pass(name, format!("{lhs} <= {rhs} (rho = {rho})"))
    } else {
        CheckOutcome::fail(name, format!("{lhs} > {rhs} (rho = {rho})"))
    }
}

/// For graphs (k = 2) the chain-head co-degree sum is at most 2 m^(3/2).
fn check_prefix_codegs_k2(h: &Hypergraph) -> CheckOutcome {
    let name = "prefix-codeg-bound";
    if h.k() != 2 {
        return CheckOutcome::skipped(name, "k = 2 only".into());
    }
    let lhs = sum_prefix_codegs(h) as f64;
    let rhs = 2.0 * (h.m() as f64).powf(1.5);
    if lhs <= rhs {
        CheckOutcome::pass(name, format!("{lhs} <= {rhs:.3}"))
    } else {
        CheckOutcome::fail(name, format!("{lhs} > {rhs:.3}"))
    }
}
