//! Discriminating `|0>` from `|+>`: the minimum-error (Helstrom) PVM and
//! the unambiguous three-outcome POVM, with every quantity of the worked
//! example checked against its closed form.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_8, SQRT_2};

use serde::Serialize;

use crate::bounds::{check_instance, max_root_product_norm, BoundReport};
use crate::entropy::ConjugatePair;
use crate::error::Result;
use crate::linalg::{operator_norm, psd_sqrt, ComplexMatrix};
use crate::quantum::{pure_density, validate_povm, Ket, Povm, COMPLETENESS_TOL};

/// Agreement required between a computed value and its closed form.
pub const CLOSED_FORM_TOL: f64 = 1e-9;
/// Agreement required with a value quoted to three decimals.
pub const PRINTED_TOL: f64 = 5e-4;

fn ket(a: f64, b: f64) -> Ket {
    Ket::from_real(&[a, b]).expect("unit vector")
}

pub fn zero() -> Ket {
    ket(1.0, 0.0)
}

pub fn one() -> Ket {
    ket(0.0, 1.0)
}

pub fn plus() -> Ket {
    ket(FRAC_1_SQRT_2, FRAC_1_SQRT_2)
}

pub fn minus() -> Ket {
    ket(FRAC_1_SQRT_2, -FRAC_1_SQRT_2)
}

/// `|x> = cos(pi/8)|0> - sin(pi/8)|1>`.
pub fn helstrom_x() -> Ket {
    ket(FRAC_PI_8.cos(), -FRAC_PI_8.sin())
}

/// `|y> = sin(pi/8)|0> + cos(pi/8)|1>`.
pub fn helstrom_y() -> Ket {
    ket(FRAC_PI_8.sin(), FRAC_PI_8.cos())
}

/// `{|x><x|, |y><y|}`; outcome 1 guesses `|0>`, outcome 2 guesses `|+>`.
pub fn build_helstrom_pvm() -> Povm {
    let elements = [helstrom_x(), helstrom_y()]
        .iter()
        .map(|k| ComplexMatrix::projector(k.amplitudes()).hermitian_part())
        .collect();
    validate_povm(elements, COMPLETENESS_TOL)
        .expect("Helstrom PVM is complete")
        .with_labels(vec!["N1".into(), "N2".into()])
}

/// Weight `sqrt(2) / (sqrt(2) + 1)` of the two conclusive elements.
pub fn unambiguous_weight() -> f64 {
    SQRT_2 / (SQRT_2 + 1.0)
}

/// `{c|-><-|, c|1><1|, 1 - M_1 - M_2}` with `c = sqrt(2)/(sqrt(2)+1)`.
/// Outcome 1 can only come from `|0>`, outcome 2 only from `|+>`, and
/// outcome 3 is inconclusive.
pub fn build_unambiguous_povm() -> Povm {
    let c = unambiguous_weight();
    let m1 = ComplexMatrix::projector(minus().amplitudes()).scale(c);
    let m2 = ComplexMatrix::projector(one().amplitudes()).scale(c);
    let m3 = &(&ComplexMatrix::identity(2) - &m1) - &m2;
    validate_povm(vec![m1, m2, m3.hermitian_part()], COMPLETENESS_TOL)
        .expect("unambiguous POVM is complete")
        .with_labels(vec!["M1".into(), "M2".into(), "M3".into()])
}

#[derive(Debug, Clone)]
pub struct DiscriminationScenario {
    pub psi1: Ket,
    pub psi2: Ket,
    pub helstrom: Povm,
    pub unambiguous: Povm,
    /// `|<psi1|psi2>|`.
    pub overlap: f64,
}

impl DiscriminationScenario {
    pub fn new() -> Self {
        let psi1 = zero();
        let psi2 = plus();
        let overlap = psi1.inner(&psi2).norm();
        Self {
            psi1,
            psi2,
            helstrom: build_helstrom_pvm(),
            unambiguous: build_unambiguous_povm(),
            overlap,
        }
    }

    /// `(1/2) (<psi1|N_2|psi1> + <psi2|N_1|psi2>)`.
    pub fn helstrom_error_probability(&self) -> f64 {
        let n = self.helstrom.elements();
        let wrong1 = n[1].sandwich(self.psi1.amplitudes(), self.psi1.amplitudes()).re;
        let wrong2 = n[0].sandwich(self.psi2.amplitudes(), self.psi2.amplitudes()).re;
        0.5 * (wrong1 + wrong2)
    }

    /// `(<psi1|M_3|psi1>, <psi2|M_3|psi2>)`.
    pub fn inconclusive_probabilities(&self) -> (f64, f64) {
        let m3 = &self.unambiguous.elements()[2];
        (
            m3.sandwich(self.psi1.amplitudes(), self.psi1.amplitudes()).re,
            m3.sandwich(self.psi2.amplitudes(), self.psi2.amplitudes()).re,
        )
    }

    /// `(<psi1|M_2|psi1>, <psi2|M_1|psi2>)`; both vanish.
    pub fn misidentification_probabilities(&self) -> (f64, f64) {
        let m = self.unambiguous.elements();
        (
            m[1].sandwich(self.psi1.amplitudes(), self.psi1.amplitudes()).re,
            m[0].sandwich(self.psi2.amplitudes(), self.psi2.amplitudes()).re,
        )
    }
}

impl Default for DiscriminationScenario {
    fn default() -> Self {
        Self::new()
    }
}

/// One reproduced number.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleRow {
    pub name: &'static str,
    pub computed: f64,
    pub closed_form: f64,
    /// Three-decimal value quoted alongside the closed form, when there is one.
    pub printed: Option<f64>,
    pub pass: bool,
}

impl ExampleRow {
    fn new(name: &'static str, computed: f64, closed_form: f64, printed: Option<f64>) -> Self {
        let pass = (computed - closed_form).abs() <= CLOSED_FORM_TOL
            && printed.is_none_or(|p| (computed - p).abs() <= PRINTED_TOL);
        Self {
            name,
            computed,
            closed_form,
            printed,
            pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PaperExample {
    pub alpha: f64,
    pub beta: f64,
    pub rows: Vec<ExampleRow>,
    /// Unambiguous POVM as `M`, Helstrom PVM as `N`, state `|0>`.
    pub report: BoundReport,
}

impl PaperExample {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass) && self.report.is_ok()
    }

    pub fn row(&self, name: &str) -> Option<&ExampleRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

/// Runs the bound checker on (unambiguous, Helstrom, `|0>`) and compares
/// every derived number with its closed form.
pub fn paper_example_report(pair: ConjugatePair) -> Result<PaperExample> {
    let sc = DiscriminationScenario::new();
    let rho1 = pure_density(&sc.psi1);
    let mut report = check_instance(&sc.unambiguous, Some(&sc.helstrom), &rho1, &[pair], &[])?;
    report.measurements[0].name = "unambiguous".into();
    report.measurements[1].name = "helstrom".into();

    let m = &report.measurements[0];
    let n = &report.measurements[1];
    let p = report.pair.as_ref().expect("two measurements");
    let f = p.f.expect("pair supplied");
    let relation1 = p.relation1_bound.expect("pair supplied");
    let log_silver = (SQRT_2 + 1.0).log2();

    let mu = sc.unambiguous.elements();
    let nh = sc.helstrom.elements();
    let norm_m1_n1 = operator_norm(&(&psd_sqrt(&mu[0])? * &nh[0]))?;
    let norm_m2_n2 = operator_norm(&(&psd_sqrt(&mu[1])? * &nh[1]))?;
    let (inc1, inc2) = sc.inconclusive_probabilities();
    let (mis1, mis2) = sc.misidentification_probabilities();

    let rows = vec![
        ExampleRow::new("f_squared", f * f, 0.5, None),
        ExampleRow::new("norm_sq_m1_n1", norm_m1_n1 * norm_m1_n1, 0.5, None),
        ExampleRow::new("norm_sq_m2_n2", norm_m2_n2 * norm_m2_n2, 0.5, None),
        ExampleRow::new(
            "max_root_product_norm_sq",
            max_root_product_norm(&sc.unambiguous, &sc.helstrom)?.powi(2),
            0.5,
            None,
        ),
        ExampleRow::new("relation1_bound", relation1, 1.0, Some(1.0)),
        ExampleRow::new(
            "state_independent_pair_bound",
            p.state_independent_pair_bound,
            1.0,
            None,
        ),
        ExampleRow::new("phi_unambiguous", m.phi, FRAC_1_SQRT_2, None),
        ExampleRow::new("phi_helstrom", n.phi, 2f64.powf(-1.5) * (SQRT_2 + 1.0), None),
        ExampleRow::new("uncoupled_bound", p.uncoupled_bound, 2.0 - log_silver, Some(0.728)),
        ExampleRow::new("bound_gap", relation1 - p.uncoupled_bound, log_silver - 1.0, Some(0.272)),
        ExampleRow::new("relation2_unambiguous", m.relation2_bound, 0.5, Some(0.5)),
        ExampleRow::new(
            "trivial_bound_unambiguous",
            m.state_independent_single_bound,
            log_silver - 1.0,
            Some(0.272),
        ),
        ExampleRow::new("norm_m3", operator_norm(&mu[2])?, 2.0 / (SQRT_2 + 1.0), None),
        ExampleRow::new("trivial_bound_helstrom", n.state_independent_single_bound, 0.0, None),
        ExampleRow::new(
            "helstrom_error_probability",
            sc.helstrom_error_probability(),
            (SQRT_2 - 1.0) * 2f64.powf(-1.5),
            None,
        ),
        ExampleRow::new("inconclusive_probability_psi1", inc1, FRAC_1_SQRT_2, None),
        ExampleRow::new("inconclusive_probability_psi2", inc2, FRAC_1_SQRT_2, None),
        ExampleRow::new("overlap", sc.overlap, FRAC_1_SQRT_2, None),
        ExampleRow::new("misidentification_psi1", mis1, 0.0, None),
        ExampleRow::new("misidentification_psi2", mis2, 0.0, None),
    ];

    Ok(PaperExample {
        alpha: pair.alpha().value(),
        beta: pair.beta().value(),
        rows,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eig;
    use approx::assert_abs_diff_eq;

    #[test]
    fn helstrom_vectors_orthogonal() {
        assert_abs_diff_eq!(helstrom_x().inner(&helstrom_y()).norm(), 0.0, epsilon = 1e-16);
        let n = build_helstrom_pvm();
        let prod = &n.elements()[0] * &n.elements()[1];
        assert!(prod.max_abs_diff(&ComplexMatrix::zeros(2)) < 1e-15);
    }

    #[test]
    fn helstrom_numbers() {
        let sc = DiscriminationScenario::new();
        assert_abs_diff_eq!(
            sc.helstrom_error_probability(),
            (SQRT_2 - 1.0) * 2f64.powf(-1.5),
            epsilon = 1e-12
        );
        let z = zero();
        let p = sc.helstrom.elements()[0].sandwich(z.amplitudes(), z.amplitudes()).re;
        assert_abs_diff_eq!(p, 2f64.powf(-1.5) * (SQRT_2 + 1.0), epsilon = 1e-12);
    }

    #[test]
    fn unambiguous_numbers() {
        let sc = DiscriminationScenario::new();
        let (a, b) = sc.misidentification_probabilities();
        assert_abs_diff_eq!(a, 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(b, 0.0, epsilon = 1e-16);
        let (i1, i2) = sc.inconclusive_probabilities();
        assert_abs_diff_eq!(i1, FRAC_1_SQRT_2, epsilon = 1e-12);
        assert_abs_diff_eq!(i2, FRAC_1_SQRT_2, epsilon = 1e-12);
        let eig = hermitian_eig(&sc.unambiguous.elements()[2]).unwrap();
        // M_3 is rank one with eigenvalue tr M_3 = 2 - 2c = 2/(sqrt2 + 1)
        assert_abs_diff_eq!(eig.eigenvalues[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eig.eigenvalues[0], 2.0 / (SQRT_2 + 1.0), epsilon = 1e-12);
    }

    #[test]
    fn default_report_passes() {
        let ex = paper_example_report(ConjugatePair::new(2.0, 2.0 / 3.0).unwrap()).unwrap();
        for r in &ex.rows {
            assert!(r.pass, "{r:?}");
        }
        assert!(ex.all_pass());
    }
}
