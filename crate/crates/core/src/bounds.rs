//! Entropic lower bounds for one or two POVMs.
//!
//! For measurements `M = {M_i}`, `N = {N_j}` and a state `rho`:
//!
//! | bound | value | holds for |
//! |-------|-------|-----------|
//! | coupled (`relation1`) | `-2 log2 f(M,N|rho)` | `H_a(M) + H_b(N)`, `1/a + 1/b = 2` |
//! | single (`relation2`) | `-log2 phi(M|rho)` | `H_a(M)`, every `a > 0` |
//! | uncoupled | `-log2 phi(M|rho) phi(N|rho)` | `H_a(M) + H_b(N)`, any `a, b > 0` |
//! | state-independent pair | `-2 log2 max ||M_i^(1/2) N_j^(1/2)||` | as coupled |
//! | state-independent single | `-log2 max ||M_i||` | as single |
//!
//! `f(M,N|psi)` is the largest `|<psi|M_i N_j|psi>| / (||M_i^(1/2) psi|| ||N_j^(1/2) psi||)`
//! over pairs with a nonzero denominator, and `f(M,N|rho)` maximises it over
//! the eigenvectors of `rho` with positive weight. `phi(M|rho)` is the
//! largest outcome probability. All values are in bits.

use serde::Serialize;

use crate::entropy::{renyi_entropy, ConjugatePair, RenyiOrder};
use crate::error::{Error, Result};
use crate::linalg::{self, operator_norm, psd_sqrt, ComplexMatrix};
use crate::quantum::{
    outcome_distribution, spectral_decompose, DensityMatrix, Ket, Povm, SPECTRAL_CUTOFF,
};

/// Pairs `(i, j)` whose denominator is at or below this are skipped.
pub const DENOMINATOR_CUTOFF: f64 = 1e-12;
/// A slack below `-VIOLATION_TOL` is a genuine violation, not round-off.
pub const VIOLATION_TOL: f64 = 1e-9;

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn element_roots(m: &Povm) -> Result<Vec<ComplexMatrix>> {
    m.elements().iter().map(psd_sqrt).collect()
}

/// `S_i psi / ||S_i psi||` mapped through `S_i` once more, with the norm
/// `||S_i psi||`. Entries with a zero norm carry `None`.
fn probe_vectors(roots: &[ComplexMatrix], psi: &[num_complex::Complex64]) -> Vec<(f64, Option<Vec<num_complex::Complex64>>)> {
    roots
        .iter()
        .map(|s| {
            let a = s.mul_vec(psi);
            let norm = linalg::vector_norm(&a);
            if norm == 0.0 {
                return (0.0, None);
            }
            let unit: Vec<_> = a.iter().map(|z| z / norm).collect();
            (norm, Some(s.mul_vec(&unit)))
        })
        .collect()
}

/// `f` for a pure state, from precomputed element square roots.
///
/// With `a = S_i psi` and `b = T_j psi`, the numerator `<psi|M_i N_j|psi>`
/// equals `<a|S_i T_j|b>`, so the ratio is `|<S_i a^ | T_j b^>|` for the unit
/// vectors `a^`, `b^`. This keeps the ratio bounded by `||S_i T_j||` under
/// round-off.
fn f_pure_from_roots(m_roots: &[ComplexMatrix], n_roots: &[ComplexMatrix], psi: &Ket) -> f64 {
    let left = probe_vectors(m_roots, psi.amplitudes());
    let right = probe_vectors(n_roots, psi.amplitudes());
    let mut best = 0.0f64;
    for (na, u) in &left {
        let Some(u) = u else { continue };
        for (nb, w) in &right {
            let Some(w) = w else { continue };
            if na * nb <= DENOMINATOR_CUTOFF {
                continue;
            }
            best = best.max(linalg::inner(u, w).norm());
        }
    }
    debug_assert!(best > 0.0, "completeness guarantees a nonzero denominator");
    debug_assert!(best <= 1.0 + 1e-9, "f = {best} exceeds 1");
    best
}

fn f_mixed_from_roots(
    m_roots: &[ComplexMatrix],
    n_roots: &[ComplexMatrix],
    rho: &DensityMatrix,
) -> Result<f64> {
    Ok(spectral_decompose(rho, SPECTRAL_CUTOFF)?
        .iter()
        .map(|(_, psi)| f_pure_from_roots(m_roots, n_roots, psi))
        .fold(0.0, f64::max))
}

/// `f(M,N|psi)`.
pub fn f_pure(m: &Povm, n: &Povm, psi: &Ket) -> Result<f64> {
    check_dims(m.dim(), n.dim())?;
    check_dims(m.dim(), psi.dim())?;
    Ok(f_pure_from_roots(&element_roots(m)?, &element_roots(n)?, psi))
}

/// `f(M,N|rho)`: the maximum of [`f_pure`] over eigenvectors of `rho` with
/// weight above `1e-10`.
///
/// For degenerate `rho` the value may depend on the eigenbasis the solver
/// picks inside the degenerate subspace.
pub fn f_mixed(m: &Povm, n: &Povm, rho: &DensityMatrix) -> Result<f64> {
    check_dims(m.dim(), n.dim())?;
    check_dims(m.dim(), rho.dim())?;
    f_mixed_from_roots(&element_roots(m)?, &element_roots(n)?, rho)
}

/// `phi(M|rho) = max_i tr(M_i rho)`.
pub fn phi(m: &Povm, rho: &DensityMatrix) -> Result<f64> {
    Ok(outcome_distribution(m, rho)?.max())
}

fn neg_log2(x: f64) -> f64 {
    (-x.log2()).max(0.0)
}

/// Coupled bound `-2 log2 f(M,N|rho)`.
pub fn bound_relation1(m: &Povm, n: &Povm, rho: &DensityMatrix) -> Result<f64> {
    Ok(2.0 * neg_log2(f_mixed(m, n, rho)?))
}

/// Single-measurement bound `-log2 phi(M|rho)`, valid for every order.
pub fn bound_relation2(m: &Povm, rho: &DensityMatrix) -> Result<f64> {
    Ok(neg_log2(phi(m, rho)?))
}

/// `-log2 [phi(M|rho) phi(N|rho)]`.
pub fn bound_uncoupled(m: &Povm, n: &Povm, rho: &DensityMatrix) -> Result<f64> {
    check_dims(m.dim(), n.dim())?;
    Ok(bound_relation2(m, rho)? + bound_relation2(n, rho)?)
}

fn max_root_product_norm_from_roots(m_roots: &[ComplexMatrix], n_roots: &[ComplexMatrix]) -> Result<f64> {
    let mut best = 0.0f64;
    for s in m_roots {
        for t in n_roots {
            best = best.max(operator_norm(&(s * t))?);
        }
    }
    Ok(best)
}

/// `max_{ij} ||M_i^(1/2) N_j^(1/2)||`, the state-independent ceiling on `f`.
pub fn max_root_product_norm(m: &Povm, n: &Povm) -> Result<f64> {
    check_dims(m.dim(), n.dim())?;
    max_root_product_norm_from_roots(&element_roots(m)?, &element_roots(n)?)
}

/// `-2 log2 max_{ij} ||M_i^(1/2) N_j^(1/2)||`.
pub fn state_independent_pair_bound(m: &Povm, n: &Povm) -> Result<f64> {
    Ok(2.0 * neg_log2(max_root_product_norm(m, n)?))
}

/// `-log2 max_i ||M_i||`; zero for any projective measurement.
pub fn state_independent_single_bound(m: &Povm) -> Result<f64> {
    let mut best = 0.0f64;
    for el in m.elements() {
        best = best.max(operator_norm(el)?);
    }
    Ok(neg_log2(best))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyValue {
    pub order: RenyiOrder,
    pub bits: f64,
}

/// Single-measurement quantities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementReport {
    pub name: String,
    pub probabilities: Vec<f64>,
    pub entropies: Vec<EntropyValue>,
    pub phi: f64,
    pub relation2_bound: f64,
    pub state_independent_single_bound: f64,
    /// `min_a H_a - relation2_bound` over the evaluated orders.
    pub relation2_slack: f64,
    /// `min_a H_a - state_independent_single_bound`.
    pub state_independent_single_slack: f64,
    /// `relation2_bound - state_independent_single_bound`.
    pub dominance_slack: f64,
}

impl MeasurementReport {
    pub fn entropy(&self, order: RenyiOrder) -> Option<f64> {
        self.entropies
            .iter()
            .find(|e| e.order == order)
            .map(|e| e.bits)
    }
}

/// One conjugate pair evaluated against the coupled, uncoupled and
/// state-independent pair bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoupledEntry {
    pub alpha: RenyiOrder,
    pub beta: RenyiOrder,
    /// `H_alpha(M|rho) + H_beta(N|rho)`.
    pub lhs_entropy_sum: f64,
    pub relation1_slack: f64,
    pub uncoupled_slack: f64,
    pub state_independent_pair_slack: f64,
}

/// Two-measurement quantities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    /// `f(M,N|rho)`; present with `relation1_bound`.
    pub f: Option<f64>,
    pub relation1_bound: Option<f64>,
    pub max_root_product_norm: f64,
    /// `max ||M_i^(1/2) N_j^(1/2)|| - f`.
    pub norm_ordering_slack: Option<f64>,
    pub uncoupled_bound: f64,
    pub state_independent_pair_bound: f64,
    /// `relation1_bound - state_independent_pair_bound`.
    pub dominance_slack: Option<f64>,
    pub coupled: Vec<CoupledEntry>,
    /// Smallest `H_a(M) + H_b(N)` over every pair of evaluated orders.
    pub uncoupled_min_lhs: f64,
    pub uncoupled_slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub bound: String,
    pub slack: f64,
}

/// Everything computed for one (state, measurement(s)) instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub dim: usize,
    pub measurements: Vec<MeasurementReport>,
    pub pair: Option<PairReport>,
    pub violations: Vec<Violation>,
}

impl BoundReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Smallest slack across every bound in the report.
    pub fn min_slack(&self) -> f64 {
        let mut s = f64::INFINITY;
        for m in &self.measurements {
            s = s
                .min(m.relation2_slack)
                .min(m.state_independent_single_slack)
                .min(m.dominance_slack);
        }
        if let Some(p) = &self.pair {
            s = s.min(p.uncoupled_slack);
            for v in [p.norm_ordering_slack, p.dominance_slack].into_iter().flatten() {
                s = s.min(v);
            }
            for e in &p.coupled {
                s = s
                    .min(e.relation1_slack)
                    .min(e.uncoupled_slack)
                    .min(e.state_independent_pair_slack);
            }
        }
        s
    }
}

struct Evaluated {
    report: MeasurementReport,
    roots: Vec<ComplexMatrix>,
}

fn evaluate_measurement(
    name: &str,
    m: &Povm,
    rho: &DensityMatrix,
    orders: &[RenyiOrder],
) -> Result<Evaluated> {
    let dist = outcome_distribution(m, rho)?;
    let entropies: Vec<EntropyValue> = orders
        .iter()
        .map(|&order| EntropyValue {
            order,
            bits: renyi_entropy(&dist, order),
        })
        .collect();
    let phi = dist.max();
    let relation2_bound = neg_log2(phi);
    let roots = element_roots(m)?;
    let mut top_norm = 0.0f64;
    for el in m.elements() {
        top_norm = top_norm.max(operator_norm(el)?);
    }
    let single = neg_log2(top_norm);
    let min_h = entropies
        .iter()
        .map(|e| e.bits)
        .fold(f64::INFINITY, f64::min);
    Ok(Evaluated {
        report: MeasurementReport {
            name: name.to_string(),
            probabilities: dist.probabilities().to_vec(),
            entropies,
            phi,
            relation2_bound,
            state_independent_single_bound: single,
            relation2_slack: min_h - relation2_bound,
            state_independent_single_slack: min_h - single,
            dominance_slack: relation2_bound - single,
        },
        roots,
    })
}

fn push_orders(orders: &mut Vec<RenyiOrder>, extra: impl IntoIterator<Item = RenyiOrder>) {
    for o in extra {
        if !orders.contains(&o) {
            orders.push(o);
        }
    }
}

/// Evaluates every applicable bound for `M` (and `N` when given) on `rho`.
///
/// Entropies are computed for every order in `extra_orders` plus both
/// members of each conjugate pair. The coupled bound and its slacks are
/// populated only when `n` is present and `pairs` is nonempty. Any slack
/// below `-1e-9` is recorded in `violations`.
pub fn check_instance(
    m: &Povm,
    n: Option<&Povm>,
    rho: &DensityMatrix,
    pairs: &[ConjugatePair],
    extra_orders: &[RenyiOrder],
) -> Result<BoundReport> {
    check_dims(m.dim(), rho.dim())?;
    if let Some(n) = n {
        check_dims(m.dim(), n.dim())?;
    }

    let mut orders = Vec::new();
    push_orders(&mut orders, extra_orders.iter().copied());
    push_orders(&mut orders, pairs.iter().flat_map(|p| [p.alpha(), p.beta()]));
    if orders.is_empty() {
        orders.push(RenyiOrder::Shannon);
    }

    let em = evaluate_measurement("M", m, rho, &orders)?;
    let mut violations = Vec::new();
    let mut measurements = vec![em.report.clone()];

    let pair = match n {
        None => None,
        Some(n) => {
            let en = evaluate_measurement("N", n, rho, &orders)?;
            measurements.push(en.report.clone());
            let (mr, nr) = (&em.report, &en.report);

            let norm_max = max_root_product_norm_from_roots(&em.roots, &en.roots)?;
            let pair_bound = 2.0 * neg_log2(norm_max);
            let uncoupled = mr.relation2_bound + nr.relation2_bound;

            let f = if pairs.is_empty() {
                None
            } else {
                Some(f_mixed_from_roots(&em.roots, &en.roots, rho)?)
            };
            let relation1 = f.map(|f| 2.0 * neg_log2(f));

            let mut coupled = Vec::with_capacity(pairs.len());
            for p in pairs {
                let lhs = mr.entropy(p.alpha()).unwrap() + nr.entropy(p.beta()).unwrap();
                coupled.push(CoupledEntry {
                    alpha: p.alpha(),
                    beta: p.beta(),
                    lhs_entropy_sum: lhs,
                    relation1_slack: lhs - relation1.unwrap(),
                    uncoupled_slack: lhs - uncoupled,
                    state_independent_pair_slack: lhs - pair_bound,
                });
            }
            let min_m = mr.entropies.iter().map(|e| e.bits).fold(f64::INFINITY, f64::min);
            let min_n = nr.entropies.iter().map(|e| e.bits).fold(f64::INFINITY, f64::min);

            Some(PairReport {
                f,
                relation1_bound: relation1,
                max_root_product_norm: norm_max,
                norm_ordering_slack: f.map(|f| norm_max - f),
                uncoupled_bound: uncoupled,
                state_independent_pair_bound: pair_bound,
                dominance_slack: relation1.map(|r| r - pair_bound),
                coupled,
                uncoupled_min_lhs: min_m + min_n,
                uncoupled_slack: min_m + min_n - uncoupled,
            })
        }
    };

    let mut flag = |bound: String, slack: f64| {
        if slack.is_nan() || slack < -VIOLATION_TOL {
            violations.push(Violation { bound, slack });
        }
    };
    for mr in &measurements {
        flag(format!("relation2[{}]", mr.name), mr.relation2_slack);
        flag(
            format!("state_independent_single[{}]", mr.name),
            mr.state_independent_single_slack,
        );
        flag(format!("single_dominance[{}]", mr.name), mr.dominance_slack);
    }
    if let Some(p) = &pair {
        flag("uncoupled".into(), p.uncoupled_slack);
        if let Some(s) = p.norm_ordering_slack {
            flag("norm_ordering".into(), s);
        }
        if let Some(s) = p.dominance_slack {
            flag("pair_dominance".into(), s);
        }
        for e in &p.coupled {
            let tag = format!("alpha={},beta={}", e.alpha, e.beta);
            flag(format!("relation1[{tag}]"), e.relation1_slack);
            flag(format!("uncoupled[{tag}]"), e.uncoupled_slack);
            flag(format!("state_independent_pair[{tag}]"), e.state_independent_pair_slack);
        }
    }

    Ok(BoundReport {
        dim: m.dim(),
        measurements,
        pair,
        violations,
    })
}
