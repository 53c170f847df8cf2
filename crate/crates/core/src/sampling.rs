//! Seeded random states and POVMs.
//!
//! Every generator is a pure function of its [`SampleConfig`]. Randomness
//! comes from ChaCha8 (`rand_chacha::ChaCha8Rng`), a counter-based stream
//! cipher whose output is specified bit-for-bit and independent of
//! platform. The 64-bit seed keys the generator and each object kind reads
//! from its own ChaCha stream, so a state and a POVM drawn from the same
//! config are independent. Gaussian variates come from
//! `rand_distr::StandardNormal`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, normalize_phase, ComplexMatrix};
use crate::quantum::{pure_density, validate_povm, DensityMatrix, Ket, Povm, COMPLETENESS_TOL};

/// Resampling attempts before [`random_povm`] gives up.
pub const MAX_POVM_ATTEMPTS: usize = 8;
/// `S` counts as singular when `lambda_min <= SINGULAR_CUTOFF * lambda_max`.
const SINGULAR_CUTOFF: f64 = 1e-12;
/// Relative ridge added to a singular `S`.
const REGULARIZATION: f64 = 1e-8;

const STREAM_KET: u64 = 1;
const STREAM_DENSITY: u64 = 2;
const STREAM_POVM: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SampleConfig {
    pub seed: u64,
    pub dim: usize,
    pub n_outcomes: usize,
    pub rank_one_only: bool,
    pub state_rank: usize,
}

impl SampleConfig {
    /// Pure states, general POVM elements.
    pub fn new(seed: u64, dim: usize, n_outcomes: usize) -> Self {
        Self {
            seed,
            dim,
            n_outcomes,
            rank_one_only: false,
            state_rank: 1,
        }
    }

    pub fn rank_one(mut self, yes: bool) -> Self {
        self.rank_one_only = yes;
        self
    }

    pub fn with_state_rank(mut self, rank: usize) -> Self {
        self.state_rank = rank;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// SplitMix64 finaliser applied to `master + index * golden_gamma`; gives
/// each fuzz trial its own seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

fn gaussian_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| gaussian(rng)).collect()
}

/// `G G^dagger` for a `dim x cols` complex Gaussian `G`, drawn column by column.
fn gaussian_gram(rng: &mut ChaCha8Rng, dim: usize, cols: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(dim);
    for _ in 0..cols {
        let g = gaussian_vector(rng, dim);
        out = &out + &ComplexMatrix::projector(&g);
    }
    out.hermitian_part()
}

fn check_dim(config: &SampleConfig) -> Result<()> {
    if config.dim == 0 {
        return Err(Error::InvalidConfig("dim must be at least 1".into()));
    }
    Ok(())
}

/// Haar-random unit vector, phase-normalised.
pub fn random_pure_state(config: &SampleConfig) -> Result<Ket> {
    check_dim(config)?;
    let mut rng = config.rng(STREAM_KET);
    loop {
        let mut v = gaussian_vector(&mut rng, config.dim);
        normalize_phase(&mut v);
        if let Ok(k) = Ket::normalized(v) {
            return Ok(k);
        }
    }
}

/// `G G^dagger / tr(G G^dagger)` with `G` of shape `dim x state_rank`.
pub fn random_density_matrix(config: &SampleConfig) -> Result<DensityMatrix> {
    check_dim(config)?;
    if config.state_rank == 0 || config.state_rank > config.dim {
        return Err(Error::InvalidConfig(format!(
            "state_rank {} outside 1..={}",
            config.state_rank, config.dim
        )));
    }
    if config.state_rank == 1 {
        return Ok(pure_density(&random_pure_state(config)?));
    }
    let mut rng = config.rng(STREAM_DENSITY);
    let gram = gaussian_gram(&mut rng, config.dim, config.state_rank);
    let trace = gram.trace().re;
    DensityMatrix::new(gram.scale(1.0 / trace).hermitian_part())
}

/// Random POVM `M_i = S^(-1/2) A_i S^(-1/2)` with `S = sum A_i`.
///
/// `A_i = |g_i><g_i|` when `rank_one_only`, else `G_i G_i^dagger` with a
/// square Gaussian `G_i`. Rank-one sampling needs `n_outcomes >= dim`, since
/// fewer rank-one operators cannot sum to the identity.
pub fn random_povm(config: &SampleConfig) -> Result<Povm> {
    check_dim(config)?;
    let (dim, n) = (config.dim, config.n_outcomes);
    if n == 0 {
        return Err(Error::InvalidConfig("n_outcomes must be at least 1".into()));
    }
    if config.rank_one_only && n < dim {
        return Err(Error::InvalidConfig(format!(
            "{n} rank-one outcomes cannot complete dimension {dim}"
        )));
    }
    if n == 1 {
        return validate_povm(vec![ComplexMatrix::identity(dim)], COMPLETENESS_TOL);
    }

    let mut rng = config.rng(STREAM_POVM);
    for _ in 0..MAX_POVM_ATTEMPTS {
        let vectors: Vec<Vec<Complex64>>;
        let raw: Vec<ComplexMatrix> = if config.rank_one_only {
            vectors = (0..n).map(|_| gaussian_vector(&mut rng, dim)).collect();
            vectors.iter().map(|g| ComplexMatrix::projector(g)).collect()
        } else {
            vectors = Vec::new();
            (0..n).map(|_| gaussian_gram(&mut rng, dim, dim)).collect()
        };
        let total = raw
            .iter()
            .fold(ComplexMatrix::zeros(dim), |acc, a| &acc + a)
            .hermitian_part();
        let Some(w) = inverse_sqrt(&total) else {
            continue;
        };
        let elements: Vec<ComplexMatrix> = if config.rank_one_only {
            vectors
                .iter()
                .map(|g| ComplexMatrix::projector(&w.mul_vec(g)).hermitian_part())
                .collect()
        } else {
            raw.iter().map(|a| (&(&w * a) * &w).hermitian_part()).collect()
        };
        if let Ok(p) = validate_povm(elements, COMPLETENESS_TOL) {
            return Ok(p);
        }
    }
    Err(Error::DegenerateSample {
        attempts: MAX_POVM_ATTEMPTS,
    })
}

/// `S^(-1/2)`, ridge-regularised when `S` is numerically singular.
fn inverse_sqrt(s: &ComplexMatrix) -> Option<ComplexMatrix> {
    let eig = hermitian_eig(s).ok()?;
    let top = eig.eigenvalues[0];
    if top.is_nan() || top <= 0.0 {
        return None;
    }
    let bottom = *eig.eigenvalues.last().unwrap();
    let ridge = if bottom <= SINGULAR_CUTOFF * top {
        REGULARIZATION * top
    } else {
        0.0
    };
    if bottom + ridge <= 0.0 {
        return None;
    }
    Some(eig.reconstruct_with(|l| 1.0 / (l + ridge).sqrt()).hermitian_part())
}
