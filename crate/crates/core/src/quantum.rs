//! States, measurements and outcome distributions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eig, trace_product, ComplexMatrix, HERMITIAN_TOL, PSD_CLAMP};

/// Normalisation tolerance for kets.
pub const KET_TOL: f64 = 1e-10;
/// Trace tolerance for density matrices.
pub const TRACE_TOL: f64 = 1e-10;
/// Default completeness tolerance for POVMs.
pub const COMPLETENESS_TOL: f64 = 1e-9;
/// Default weight cutoff for [`spectral_decompose`].
pub const SPECTRAL_CUTOFF: f64 = 1e-10;
/// Per-entry tolerance on a probability vector's sum.
pub const DISTRIBUTION_SUM_TOL: f64 = 1e-9;
/// Probabilities in `[-NEGATIVE_PROB_TOL, 0)` are round-off and read as 0.
pub const NEGATIVE_PROB_TOL: f64 = 1e-12;

/// A unit vector in `C^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amplitudes: Vec<Complex64>,
}

impl Ket {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::NotNormalized { norm: 0.0 });
        }
        let norm = linalg::vector_norm(&amplitudes);
        if !norm.is_finite() || (norm * norm - 1.0).abs() > KET_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = linalg::vector_norm(&amplitudes);
        if amplitudes.is_empty() || !norm.is_finite() || norm == 0.0 {
            return Err(Error::NotNormalized { norm });
        }
        for z in &mut amplitudes {
            *z /= norm;
        }
        Ok(Self { amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis vector `|k>`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index out of range");
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &Ket) -> Complex64 {
        linalg::inner(&self.amplitudes, &other.amplitudes)
    }
}

/// Unit-trace positive-semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let herm = matrix.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::NonHermitian {
                max_deviation: herm,
            });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidTrace { trace: trace.re });
        }
        let eig = hermitian_eig(&matrix)?;
        let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -PSD_CLAMP {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(Self { matrix })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// `|psi><psi|`.
pub fn pure_density(psi: &Ket) -> DensityMatrix {
    DensityMatrix {
        matrix: ComplexMatrix::projector(psi.amplitudes()).hermitian_part(),
    }
}

/// Eigen-decomposition of a state restricted to weights above `cutoff`.
///
/// Vectors come from the deterministic solver basis; inside a degenerate
/// eigenspace any orthonormal basis is equally valid and this one is not
/// canonical.
pub fn spectral_decompose(rho: &DensityMatrix, cutoff: f64) -> Result<Vec<(f64, Ket)>> {
    let eig = hermitian_eig(rho.matrix())?;
    Ok(eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > cutoff)
        .map(|(k, &w)| {
            (
                w,
                Ket {
                    amplitudes: eig.eigenvector(k),
                },
            )
        })
        .collect())
}

/// An ordered set of positive operators summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<ComplexMatrix>,
    labels: Option<Vec<String>>,
}

impl Povm {
    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.elements.len(), "one label per element");
        self.labels = Some(labels);
        self
    }

    /// Same elements in a different order; `order[k]` is the old index of
    /// new element `k`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self {
            elements: order.iter().map(|&i| self.elements[i].clone()).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| order.iter().map(|&i| l[i].clone()).collect()),
        }
    }
}

/// Checks Hermiticity, positivity and completeness (`sum M_i = 1` within
/// `tolerance` per entry).
pub fn validate_povm(elements: Vec<ComplexMatrix>, tolerance: f64) -> Result<Povm> {
    let dim = elements.first().ok_or(Error::EmptyPovm)?.dim();
    let mut total = ComplexMatrix::zeros(dim);
    for (index, m) in elements.iter().enumerate() {
        if m.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.dim(),
            });
        }
        let herm = m.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::ElementNotHermitian {
                index,
                max_deviation: herm,
            });
        }
        let min = *hermitian_eig(m)?.eigenvalues.last().unwrap();
        if min < -PSD_CLAMP {
            return Err(Error::ElementNotPositive {
                index,
                min_eigenvalue: min,
            });
        }
        total = &total + m;
    }
    let deviation = total.max_abs_diff(&ComplexMatrix::identity(dim));
    if deviation > tolerance {
        return Err(Error::Incomplete {
            max_deviation: deviation,
        });
    }
    Ok(Povm {
        elements,
        labels: None,
    })
}

/// Projective measurement onto an orthonormal basis given as kets.
pub fn pvm_from_basis(basis: &[Ket]) -> Result<Povm> {
    validate_povm(
        basis
            .iter()
            .map(|k| ComplexMatrix::projector(k.amplitudes()).hermitian_part())
            .collect(),
        COMPLETENESS_TOL,
    )
}

/// Computational-basis PVM `{|k><k|}`.
pub fn computational_pvm(dim: usize) -> Povm {
    let basis: Vec<Ket> = (0..dim).map(|k| Ket::basis(dim, k)).collect();
    pvm_from_basis(&basis).expect("computational basis is complete")
}

/// Nonnegative reals summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution {
    probabilities: Vec<f64>,
}

impl ProbabilityDistribution {
    /// Clamps entries in `[-1e-12, 0)` to zero; rejects anything more
    /// negative or a sum off by more than `1e-9`.
    pub fn new(mut probabilities: Vec<f64>) -> Result<Self> {
        for (index, p) in probabilities.iter_mut().enumerate() {
            if !p.is_finite() || *p < -NEGATIVE_PROB_TOL {
                return Err(Error::NegativeProbability { index, value: *p });
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let sum: f64 = probabilities.iter().sum();
        if probabilities.is_empty() || (sum - 1.0).abs() > DISTRIBUTION_SUM_TOL {
            return Err(Error::InvalidDistribution { sum });
        }
        Ok(Self { probabilities })
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            probabilities: vec![1.0 / n as f64; n],
        }
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.probabilities.iter().copied().fold(0.0, f64::max)
    }
}

/// `p_i = tr(M_i rho)`.
///
/// Round-off negatives down to the POVM positivity tolerance are read as 0,
/// since `tr(M_i rho)` of two PSD operators cannot be negative.
pub fn outcome_distribution(m: &Povm, rho: &DensityMatrix) -> Result<ProbabilityDistribution> {
    if m.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: rho.dim(),
        });
    }
    let mut probs = Vec::with_capacity(m.len());
    for el in m.elements() {
        let t = trace_product(el, rho.matrix())?;
        debug_assert!(t.im.abs() <= 1e-10, "imaginary residue {}", t.im);
        let p = t.re;
        probs.push(if p < 0.0 && p >= -PSD_CLAMP * rho.dim() as f64 { 0.0 } else { p });
    }
    ProbabilityDistribution::new(probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use approx::assert_abs_diff_eq;

    fn plus() -> Ket {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Ket::from_real(&[h, h]).unwrap()
    }

    #[test]
    fn computational_basis_is_valid() {
        let p = computational_pvm(2);
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn duplicated_projector_is_incomplete() {
        let p0 = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let err = validate_povm(vec![p0.clone(), p0], COMPLETENESS_TOL).unwrap_err();
        assert!(matches!(err, Error::Incomplete { .. }));
    }

    #[test]
    fn validation_errors_name_the_element() {
        let bad = ComplexMatrix::from_real_rows(&[vec![0.5, 0.1], vec![0.0, 0.5]]).unwrap();
        let ok = ComplexMatrix::from_diagonal(&[0.5, 0.5]);
        assert!(matches!(
            validate_povm(vec![ok.clone(), bad], 1e-9),
            Err(Error::ElementNotHermitian { index: 1, .. })
        ));
        let neg = ComplexMatrix::from_diagonal(&[1.5, 1.5]);
        let comp = ComplexMatrix::from_diagonal(&[-0.5, -0.5]);
        assert!(matches!(
            validate_povm(vec![neg, comp], 1e-9),
            Err(Error::ElementNotPositive { index: 1, .. })
        ));
        assert!(matches!(validate_povm(vec![], 1e-9), Err(Error::EmptyPovm)));
        assert!(matches!(
            validate_povm(vec![ok, ComplexMatrix::identity(3)], 1e-9),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn computational_pvm_on_zero() {
        let rho = pure_density(&Ket::basis(2, 0));
        let p = outcome_distribution(&computational_pvm(2), &rho).unwrap();
        assert_eq!(p.probabilities(), &[1.0, 0.0]);
    }

    #[test]
    fn pure_density_examples() {
        let rho = pure_density(&Ket::basis(2, 0));
        assert_eq!(rho.matrix(), &ComplexMatrix::from_diagonal(&[1.0, 0.0]));
        let rho = pure_density(&plus());
        for z in rho.matrix().entries() {
            assert_abs_diff_eq!(z.re, 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(z.im, 0.0);
        }
    }

    #[test]
    fn spectral_pure_and_mixed() {
        let dec = spectral_decompose(&pure_density(&Ket::basis(2, 0)), SPECTRAL_CUTOFF).unwrap();
        assert_eq!(dec.len(), 1);
        assert_abs_diff_eq!(dec[0].0, 1.0);
        assert_eq!(dec[0].1, Ket::basis(2, 0));

        let dec = spectral_decompose(&DensityMatrix::maximally_mixed(2), SPECTRAL_CUTOFF).unwrap();
        assert_eq!(dec.len(), 2);
        for (w, _) in dec {
            assert_abs_diff_eq!(w, 0.5);
        }
    }

    #[test]
    fn density_validation() {
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::from_diagonal(&[0.6, 0.6])),
            Err(Error::InvalidTrace { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::from_diagonal(&[1.5, -0.5])),
            Err(Error::NotPositive { .. })
        ));
        let skew = ComplexMatrix::from_rows(vec![
            vec![c(0.5, 0.0), c(0.0, 0.2)],
            vec![c(0.0, 0.2), c(0.5, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            DensityMatrix::new(skew),
            Err(Error::NonHermitian { .. })
        ));
    }

    #[test]
    fn ket_validation() {
        assert!(Ket::from_real(&[1.0, 1.0]).is_err());
        assert!(Ket::normalized(vec![c(0.0, 0.0)]).is_err());
        let k = Ket::normalized(vec![c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert_abs_diff_eq!(k.inner(&k).re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn distribution_clamps_round_off() {
        let p = ProbabilityDistribution::new(vec![1.0, -1e-13]).unwrap();
        assert_eq!(p.probabilities(), &[1.0, 0.0]);
        assert!(ProbabilityDistribution::new(vec![1.1, -0.1]).is_err());
        assert!(ProbabilityDistribution::new(vec![0.5, 0.4]).is_err());
    }

    #[test]
    fn dimension_mismatch_in_distribution() {
        let rho = DensityMatrix::maximally_mixed(3);
        assert!(matches!(
            outcome_distribution(&computational_pvm(2), &rho),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
