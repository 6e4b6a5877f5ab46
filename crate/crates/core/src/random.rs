//! Random matrices, group elements and maps for property tests and
//! self-checks.

use rand::Rng;

use crate::error::Result;
use crate::field::ScalarField;
use crate::matrix::Matrix;
use crate::sample::{SampleKey, SampleMap};

pub fn random_matrix<F: ScalarField, R: Rng + ?Sized>(field: &F, rows: usize, cols: usize, rng: &mut R) -> Matrix<F> {
    let entries = (0..rows * cols).map(|_| field.random_elem(rng)).collect();
    Matrix::new(field.clone(), rows, cols, entries).expect("sized entries")
}

/// Rejection-samples an invertible `n x n` matrix.
pub fn random_invertible<F: ScalarField, R: Rng + ?Sized>(field: &F, n: usize, rng: &mut R) -> Matrix<F> {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// An element of `SL(n)`: a random invertible matrix with its first column
/// divided by the determinant.
pub fn random_special<F: ScalarField, R: Rng + ?Sized>(field: &F, n: usize, rng: &mut R) -> Matrix<F> {
    let mut m = random_invertible(field, n, rng);
    if n > 0 {
        let det = m.determinant().expect("square");
        let inv = field.inv(&det).expect("invertible");
        m.scale_column(0, &inv);
    }
    m
}

/// An invertible matrix with the given determinant.
pub fn random_with_det<F: ScalarField, R: Rng + ?Sized>(field: &F, n: usize, det: &F::Elem, rng: &mut R) -> Matrix<F> {
    let mut m = random_special(field, n, rng);
    if n > 0 {
        m.scale_column(0, det);
    }
    m
}

/// A map with `m` samples labeled `t0, t1, ...` (zero-padded so key order
/// matches index order) whose rank is at most `rank`: random coefficient
/// combinations of `rank` random vectors.
pub fn random_map<F: ScalarField, R: Rng + ?Sized>(
    field: &F,
    n: usize,
    m: usize,
    rank: usize,
    rng: &mut R,
) -> Result<SampleMap<F>> {
    let spanning = random_matrix(field, n, rank, rng);
    let samples = (0..m)
        .map(|i| {
            let coeffs: Vec<F::Elem> = (0..rank).map(|_| field.random_elem(rng)).collect();
            let v = spanning.mul_vec(&coeffs).expect("rank-length coefficients");
            (SampleKey::new(format!("t{i:02}")), v)
        })
        .collect::<Vec<_>>();
    SampleMap::new(field.clone(), n, samples)
}

/// Uniformly random vectors, no rank control.
pub fn random_free_map<F: ScalarField, R: Rng + ?Sized>(
    field: &F,
    n: usize,
    m: usize,
    rng: &mut R,
) -> Result<SampleMap<F>> {
    let samples = (0..m)
        .map(|i| {
            let v = (0..n).map(|_| field.random_elem(rng)).collect();
            (SampleKey::new(format!("t{i:02}")), v)
        })
        .collect::<Vec<_>>();
    SampleMap::new(field.clone(), n, samples)
}
