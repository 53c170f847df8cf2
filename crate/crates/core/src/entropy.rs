//! Rényi and Shannon entropies in bits, and conjugate orders.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quantum::ProbabilityDistribution;

/// Probabilities at or below this are dropped from the power sum.
const ZERO_PROB: f64 = 1e-15;
/// Tolerance on `1/alpha + 1/beta = 2`.
pub const CONJUGACY_TOL: f64 = 1e-12;

/// Order of a Rényi entropy. `Shannon` is the `alpha = 1` limit and is
/// never approximated by a nearby numeric order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RenyiOrder {
    Shannon,
    Alpha(f64),
}

impl RenyiOrder {
    /// Accepts any finite positive order; exactly `1.0` maps to `Shannon`.
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidOrder(alpha));
        }
        Ok(if alpha == 1.0 {
            Self::Shannon
        } else {
            Self::Alpha(alpha)
        })
    }

    pub fn value(self) -> f64 {
        match self {
            Self::Shannon => 1.0,
            Self::Alpha(a) => a,
        }
    }
}

impl fmt::Display for RenyiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shannon => write!(f, "1"),
            Self::Alpha(a) => write!(f, "{a}"),
        }
    }
}

impl Serialize for RenyiOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.value())
    }
}

/// Orders `(alpha, beta)` with `1/alpha + 1/beta = 2`, both above 1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugatePair {
    alpha: RenyiOrder,
    beta: RenyiOrder,
}

impl ConjugatePair {
    /// Pairs `alpha` with its conjugate.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        let alpha = RenyiOrder::new(alpha)?;
        Ok(Self {
            alpha,
            beta: conjugate_order(alpha)?,
        })
    }

    /// Validates a caller-supplied pair.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let a = RenyiOrder::new(alpha)?;
        let b = RenyiOrder::new(beta)?;
        if alpha <= 0.5 || beta <= 0.5 || (1.0 / alpha + 1.0 / beta - 2.0).abs() > CONJUGACY_TOL {
            return Err(Error::NotConjugate { alpha, beta });
        }
        Ok(Self { alpha: a, beta: b })
    }

    pub fn shannon() -> Self {
        Self {
            alpha: RenyiOrder::Shannon,
            beta: RenyiOrder::Shannon,
        }
    }

    pub fn alpha(&self) -> RenyiOrder {
        self.alpha
    }

    pub fn beta(&self) -> RenyiOrder {
        self.beta
    }
}

/// `beta = alpha / (2 alpha - 1)`, the partner of `alpha` under
/// `1/alpha + 1/beta = 2`.
pub fn conjugate_order(alpha: RenyiOrder) -> Result<RenyiOrder> {
    match alpha {
        RenyiOrder::Shannon => Ok(RenyiOrder::Shannon),
        RenyiOrder::Alpha(a) => {
            if a.is_nan() || a <= 0.5 || !a.is_finite() {
                return Err(Error::OutOfRange(a));
            }
            RenyiOrder::new(a / (2.0 * a - 1.0))
        }
    }
}

/// `-sum p log2 p` with `0 log 0 = 0`.
pub fn shannon_entropy(p: &ProbabilityDistribution) -> f64 {
    let h: f64 = p
        .probabilities()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum();
    h.max(0.0)
}

/// `log2(sum p^alpha) / (1 - alpha)`, or Shannon entropy for
/// [`RenyiOrder::Shannon`].
pub fn renyi_entropy(p: &ProbabilityDistribution, alpha: RenyiOrder) -> f64 {
    let a = match alpha {
        RenyiOrder::Shannon => return shannon_entropy(p),
        RenyiOrder::Alpha(a) => a,
    };
    let power_sum: f64 = p
        .probabilities()
        .iter()
        .filter(|&&x| x > ZERO_PROB)
        .map(|&x| x.powf(a))
        .sum();
    (power_sum.log2() / (1.0 - a)).max(0.0)
}
