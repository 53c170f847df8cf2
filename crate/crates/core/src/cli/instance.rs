//! JSON instance files.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "state": { "ket": [[1, 0], [0, 0]] },
//!   "povms": [
//!     { "name": "M", "elements": [ [[[1,0],[0,0]], [[0,0],[0,0]]], ... ] },
//!     { "name": "N", "elements": [ ... ] }
//!   ],
//!   "orders": [0.5, 2],
//!   "pair": [2, 0.6666666666666666]
//! }
//! ```
//!
//! Complex scalars are `[re, im]`; matrices are row-major nested arrays.
//! `state` holds either `"ket"` (a unit vector) or `"rho"` (a density
//! matrix). One or two POVMs are accepted.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::entropy::{ConjugatePair, RenyiOrder};
use crate::linalg::ComplexMatrix;
use crate::quantum::{pure_density, validate_povm, DensityMatrix, Ket, Povm};

pub type JsonComplex = [f64; 2];
pub type JsonMatrix = Vec<Vec<JsonComplex>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateSpec {
    Ket(Vec<JsonComplex>),
    Rho(JsonMatrix),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedPovm {
    pub name: String,
    pub elements: Vec<JsonMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub dim: usize,
    pub state: StateSpec,
    pub povms: Vec<NamedPovm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<[f64; 2]>,
}

/// A parsed and validated instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub rho: DensityMatrix,
    pub povms: Vec<(String, Povm)>,
    pub orders: Vec<RenyiOrder>,
    pub pair: Option<ConjugatePair>,
}

fn to_complex(z: &JsonComplex) -> Complex64 {
    Complex64::new(z[0], z[1])
}

pub fn matrix_to_json(m: &ComplexMatrix) -> JsonMatrix {
    m.rows()
        .iter()
        .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn matrix_from_json(rows: &JsonMatrix, dim: usize, what: &str) -> Result<ComplexMatrix, CliError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(CliError::Validation(format!("{what}: expected a {dim}x{dim} matrix")));
    }
    ComplexMatrix::from_rows(rows.iter().map(|r| r.iter().map(to_complex).collect()).collect())
        .map_err(|e| CliError::Validation(format!("{what}: {e}")))
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(CliError::Parse)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialises")
    }

    /// Validates every object at the standard tolerances, with
    /// `completeness_tol` applied to `sum M_i = 1`.
    pub fn resolve(&self, completeness_tol: f64) -> Result<Instance, CliError> {
        let dim = self.dim;
        if dim == 0 {
            return Err(CliError::Validation("dim must be positive".into()));
        }
        let rho = match &self.state {
            StateSpec::Ket(amps) => {
                if amps.len() != dim {
                    return Err(CliError::Validation(format!(
                        "state.ket: expected {dim} amplitudes, found {}",
                        amps.len()
                    )));
                }
                let k = Ket::new(amps.iter().map(to_complex).collect())
                    .map_err(|e| CliError::Validation(format!("state.ket: {e}")))?;
                pure_density(&k)
            }
            StateSpec::Rho(rows) => DensityMatrix::new(matrix_from_json(rows, dim, "state.rho")?)
                .map_err(|e| CliError::Validation(format!("state.rho: {e}")))?,
        };

        if self.povms.is_empty() || self.povms.len() > 2 {
            return Err(CliError::Validation(format!(
                "povms: expected one or two measurements, found {}",
                self.povms.len()
            )));
        }
        let mut povms = Vec::with_capacity(self.povms.len());
        for named in &self.povms {
            let what = format!("povm '{}'", named.name);
            let elements = named
                .elements
                .iter()
                .enumerate()
                .map(|(i, m)| matrix_from_json(m, dim, &format!("{what} element {i}")))
                .collect::<Result<Vec<_>, _>>()?;
            let povm = validate_povm(elements, completeness_tol)
                .map_err(|e| CliError::Validation(format!("{what}: {e}")))?;
            povms.push((named.name.clone(), povm));
        }

        let orders = self
            .orders
            .as_deref()
            .unwrap_or(&[])
            .iter()
            .map(|&a| RenyiOrder::new(a))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Validation(format!("orders: {e}")))?;
        let pair = self
            .pair
            .map(|[a, b]| ConjugatePair::new(a, b))
            .transpose()
            .map_err(|e| CliError::Validation(format!("pair: {e}")))?;

        Ok(Instance {
            rho,
            povms,
            orders,
            pair,
        })
    }
}

impl NamedPovm {
    pub fn from_povm(name: &str, povm: &Povm) -> Self {
        Self {
            name: name.to_string(),
            elements: povm.elements().iter().map(matrix_to_json).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUBIT: &str = r#"{
        "dim": 2,
        "state": {"ket": [[1, 0], [0, 0]]},
        "povms": [{"name": "Z", "elements": [
            [[[1,0],[0,0]],[[0,0],[0,0]]],
            [[[0,0],[0,0]],[[0,0],[1,0]]]
        ]}],
        "orders": [2]
    }"#;

    #[test]
    fn parses_and_resolves() {
        let f = InstanceFile::parse(QUBIT).unwrap();
        let inst = f.resolve(1e-9).unwrap();
        assert_eq!(inst.povms.len(), 1);
        assert_eq!(inst.orders, vec![RenyiOrder::Alpha(2.0)]);
        assert!(inst.pair.is_none());
    }

    #[test]
    fn rejects_bad_shapes() {
        let mut f = InstanceFile::parse(QUBIT).unwrap();
        f.dim = 3;
        assert!(matches!(f.resolve(1e-9), Err(CliError::Validation(_))));
        assert!(matches!(InstanceFile::parse("{"), Err(CliError::Parse(_))));
        assert!(matches!(
            InstanceFile::parse(r#"{"dim":2,"state":{"psi":[]},"povms":[]}"#),
            Err(CliError::Parse(_))
        ));
    }

    #[test]
    fn rejects_bad_pair_and_state() {
        let mut f = InstanceFile::parse(QUBIT).unwrap();
        f.pair = Some([2.0, 2.0]);
        let err = f.resolve(1e-9).unwrap_err().to_string();
        assert!(err.contains("pair"), "{err}");
        f.pair = None;
        f.state = StateSpec::Ket(vec![[1.0, 0.0], [1.0, 0.0]]);
        assert!(f.resolve(1e-9).unwrap_err().to_string().contains("state.ket"));
    }
}
