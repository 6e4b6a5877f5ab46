//! Generators of the field of rational invariants, evaluated at a map, and a
//! Jacobian-rank certificate of their algebraic independence.
//!
//! For `GL` the generators are the signature coordinates of the non-base
//! samples; for `SL` at full rank the determinant of the base matrix joins
//! them. Independence is certified by exact Jacobian rank at a random
//! rational point: derivatives come from running the generator evaluation
//! over dual numbers.

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Dual, DualField, Field, Rationals, ScalarField};
use crate::group::GroupSpec;
use crate::matrix::Matrix;
use crate::sample::{BasePoints, SampleMap};
use crate::signature::compute_signature;

const MAX_POINT_ATTEMPTS: usize = 64;

/// Whether the group adds `det_base` to the generator list at rank `k` in
/// dimension `n`.
fn includes_det(group: &GroupSpec<impl Field>, k: usize, n: usize) -> Result<bool> {
    match group {
        GroupSpec::GL => Ok(false),
        GroupSpec::SL => Ok(k == n),
        GroupSpec::Custom(c) => {
            Err(Error::UnsupportedGroup(format!("no generator system is known for custom group {}", c.name)))
        }
        GroupSpec::AffineOver(_) => Err(Error::UnsupportedGroup("generators are defined for GL and SL only".into())),
    }
}

/// Labeled generator values of `map` relative to its greedy base points.
pub fn evaluate_generators<F: Field>(map: &SampleMap<F>, group: &GroupSpec<F>) -> Result<Vec<(String, F::Elem)>> {
    evaluate_generators_with_base(map, &map.select_base_points(), group)
}

/// `alpha[key][i]` for every non-base key (1-based `i`), in key order, then
/// `det_base` for `SL` at full rank.
pub fn evaluate_generators_with_base<F: Field>(
    map: &SampleMap<F>,
    base: &BasePoints<F>,
    group: &GroupSpec<F>,
) -> Result<Vec<(String, F::Elem)>> {
    if !map.field().is_exact() {
        return Err(Error::NotExactField);
    }
    let with_det = includes_det(group, base.len(), map.n())?;
    let sig = compute_signature(map, base)?;
    let mut out = Vec::new();
    for (key, alpha) in &sig.coords {
        if sig.is_base_key(key) {
            continue;
        }
        for (i, a) in alpha.iter().enumerate() {
            out.push((format!("alpha[{key}][{}]", i + 1), a.clone()));
        }
    }
    if with_det {
        out.push(("det_base".to_string(), base.base_matrix.determinant()?));
    }
    Ok(out)
}

/// Number of generators for `m` samples of rank `k` in dimension `n`.
pub fn generator_count(n: usize, k: usize, m: usize, group: &GroupSpec<impl Field>) -> Result<usize> {
    check_shape(n, k, m)?;
    Ok(k * (m - k) + usize::from(includes_det(group, k, n)?))
}

fn check_shape(n: usize, k: usize, m: usize) -> Result<()> {
    if n == 0 || k > n || k > m {
        return Err(Error::InvalidShape(format!("need 1 <= n, k <= n, k <= m; got n={n}, k={k}, m={m}")));
    }
    Ok(())
}

/// The generator map on an unconstrained `n x m` point whose first `k`
/// columns play the base points: `(X_top)^-1 x_top` for every later column,
/// where `_top` keeps rows `1..k`, followed by `det X` when `with_det`.
///
/// Generic over the field so the same code yields values (over `Q`) and
/// directional derivatives (over dual numbers).
pub fn generator_values<F: Field>(point: &Matrix<F>, k: usize, with_det: bool) -> Result<Vec<F::Elem>> {
    let top: Vec<usize> = (0..k).collect();
    let base: Vec<usize> = (0..k).collect();
    let minor = point.select_rows(&top).select_cols(&base);
    let mut out = Vec::new();
    for j in k..point.cols() {
        let target: Vec<F::Elem> = point.column(j)[..k].to_vec();
        let alpha = minor
            .solve_in_column_space(&target)?
            .ok_or_else(|| Error::Internal("square invertible minor must span".into()))?;
        out.extend(alpha);
    }
    if with_det {
        out.push(point.select_cols(&base).determinant()?);
    }
    Ok(out)
}

/// Exact Jacobian of [`generator_values`] at `point`: one row per generator,
/// one column per coordinate, coordinates ordered sample-major
/// (`column * n + row`).
pub fn generator_jacobian(point: &Matrix<Rationals>, k: usize, with_det: bool) -> Result<Matrix<Rationals>> {
    let (n, m) = (point.rows(), point.cols());
    let dual = DualField::new(Rationals);
    let mut columns = Vec::with_capacity(n * m);
    for c in 0..m {
        for r in 0..n {
            let lifted = Matrix::new(
                dual.clone(),
                n,
                m,
                (0..n * m)
                    .map(|idx| {
                        let x = point.entries()[idx].clone();
                        if idx == r * m + c {
                            dual.variable(x)
                        } else {
                            dual.constant(x)
                        }
                    })
                    .collect(),
            )?;
            let values: Vec<Dual<BigRational>> = generator_values(&lifted, k, with_det)?;
            columns.push(values.into_iter().map(|d| d.slope).collect::<Vec<_>>());
        }
    }
    let rows = generator_count_for(k, m, with_det);
    Matrix::from_columns(Rationals, rows, &columns)
}

fn generator_count_for(k: usize, m: usize, with_det: bool) -> usize {
    k * (m - k) + usize::from(with_det)
}

/// A random rational point (numerators in `[-20, 20]`, denominators in
/// `[1, 7]`) whose leading `k x k` minor is invertible.
pub fn generic_point(n: usize, k: usize, m: usize, seed: u64) -> Result<Matrix<Rationals>> {
    check_shape(n, k, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = Rationals;
    let idx: Vec<usize> = (0..k).collect();
    for _ in 0..MAX_POINT_ATTEMPTS {
        let entries = (0..n * m).map(|_| f.random_elem(&mut rng)).collect();
        let point = Matrix::new(f, n, m, entries)?;
        let minor = point.select_rows(&idx).select_cols(&idx);
        if !f.is_zero(&minor.determinant()?) {
            return Ok(point);
        }
    }
    Err(Error::RetriesExhausted(MAX_POINT_ATTEMPTS))
}

/// Outcome of the Jacobian test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub generators: usize,
    pub jacobian_rank: usize,
}

impl IndependenceReport {
    pub fn independent(&self) -> bool {
        self.jacobian_rank == self.generators
    }
}

pub fn independence_report(
    n: usize,
    k: usize,
    m: usize,
    group: &GroupSpec<Rationals>,
    seed: u64,
) -> Result<IndependenceReport> {
    let generators = generator_count(n, k, m, group)?;
    let with_det = includes_det(group, k, n)?;
    let point = generic_point(n, k, m, seed)?;
    let jacobian = generator_jacobian(&point, k, with_det)?;
    Ok(IndependenceReport { generators, jacobian_rank: jacobian.rank() })
}

/// `true` iff the generator Jacobian has full row rank at a seeded random
/// rational point, which certifies algebraic independence over `Q`.
pub fn check_algebraic_independence(
    n: usize,
    k: usize,
    m: usize,
    group: &GroupSpec<Rationals>,
    seed: u64,
) -> Result<bool> {
    Ok(independence_report(n, k, m, group, seed)?.independent())
}
