//! Brute-force ground truth over small prime fields.
//!
//! Enumerates every matrix of `GF(p)^{n x n}` and filters by group
//! membership. The enumeration is deliberately naive.

use crate::equivalence::Witness;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::group::GroupSpec;
use crate::matrix::Matrix;
use crate::sample::SampleMap;

/// Largest `p^(n^2)` the enumerator accepts.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

/// All vectors of `GF(p)^len`, ordered as base-`p` integers with the first
/// entry most significant.
fn all_vectors(p: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(len as u32);
    (0..count).map(move |mut code| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = code % p;
            code /= p;
        }
        v
    })
}

/// Every element of `group` in `n` dimensions over `GF(p)`, in row-major
/// base-`p` order (translations vary fastest for affine groups).
pub fn enumerate_group(group: &GroupSpec<PrimeField>, n: usize, p: u64) -> Result<Vec<Witness<PrimeField>>> {
    let field = PrimeField::new(p)?;
    let size = p.checked_pow((n * n) as u32).filter(|&s| s <= ENUMERATION_LIMIT);
    if size.is_none() {
        return Err(Error::TooLarge(format!("{p}^{} matrices exceeds {ENUMERATION_LIMIT}", n * n)));
    }
    let linear = group.linear_part();
    let matrices: Vec<Matrix<PrimeField>> = all_vectors(p, n * n)
        .map(|entries| Matrix::new(field, n, n, entries).expect("n*n entries"))
        .filter(|g| linear.contains(g))
        .collect();
    if !group.is_affine() {
        return Ok(matrices.into_iter().map(|g| Witness { g, translation: None }).collect());
    }
    let shifts: Vec<Vec<u64>> = all_vectors(p, n).collect();
    Ok(matrices
        .into_iter()
        .flat_map(|g| shifts.iter().map(move |b| Witness { g: g.clone(), translation: Some(b.clone()) }))
        .collect())
}

/// `|GL(n, p)| = (p^n - 1)(p^n - p)...(p^n - p^(n-1))`
pub fn gl_order(n: usize, p: u64) -> u64 {
    let pn = p.pow(n as u32);
    (0..n as u32).map(|i| pn - p.pow(i)).product()
}

/// Decides equivalence by trying every group element.
pub fn brute_force_equivalent(
    u: &SampleMap<PrimeField>,
    v: &SampleMap<PrimeField>,
    group: &GroupSpec<PrimeField>,
) -> Result<bool> {
    if u.field() != v.field() {
        return Err(Error::FieldMismatch);
    }
    if u.n() != v.n() {
        return Err(Error::DimensionMismatch { expected: u.n(), found: v.n() });
    }
    if !u.same_keys(v) {
        return Err(Error::KeySetMismatch);
    }
    let elements = enumerate_group(group, u.n(), u.field().modulus())?;
    Ok(find_witness(u, v, &elements).is_some())
}

/// First enumerated element mapping `u` onto `v`.
pub fn find_witness<'a>(
    u: &SampleMap<PrimeField>,
    v: &SampleMap<PrimeField>,
    elements: &'a [Witness<PrimeField>],
) -> Option<&'a Witness<PrimeField>> {
    elements.iter().find(|w| u.iter().zip(v.iter()).all(|((_, x), (_, y))| w.apply(x).is_ok_and(|gx| &gx == y)))
}
