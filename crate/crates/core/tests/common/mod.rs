#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use renyi_uncertainty::linalg::ComplexMatrix;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Square complex matrix with entries in the unit box.
pub fn any_matrix(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
            ComplexMatrix::new(n, v.into_iter().map(|(r, i)| c(r, i)).collect()).unwrap()
        })
    })
}

pub fn matrix_pair(max_dim: usize) -> impl Strategy<Value = (ComplexMatrix, ComplexMatrix)> {
    (1..=max_dim).prop_flat_map(|n| {
        let entries = || prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n);
        (entries(), entries()).prop_map(move |(a, b)| {
            let mk = |v: Vec<(f64, f64)>| {
                ComplexMatrix::new(n, v.into_iter().map(|(r, i)| c(r, i)).collect()).unwrap()
            };
            (mk(a), mk(b))
        })
    })
}

pub fn any_hermitian(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    any_matrix(max_dim).prop_map(|m| m.hermitian_part())
}

pub fn any_psd(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    any_matrix(max_dim).prop_map(|g| (&g * &g.adjoint()).hermitian_part())
}

/// Probability vectors of length 1..=max_len, including exact zeros.
pub fn any_distribution(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![1 => Just(0.0), 4 => 0.0f64..1.0], 1..=max_len)
        .prop_filter("nonzero mass", |v| v.iter().sum::<f64>() > 1e-3)
        .prop_map(|v| {
            let s: f64 = v.iter().sum();
            v.into_iter().map(|x| x / s).collect()
        })
}
