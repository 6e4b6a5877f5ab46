//! Invariant signatures and canonical representatives.
//!
//! The signature of a map relative to base points `t_1..t_k` is the table of
//! coordinates of every sample vector in the basis `u(t_1)..u(t_k)`. Two
//! maps that share base keys are `GL`-equivalent exactly when their tables
//! agree, and a table determines its map up to equivalence: placing the
//! coordinates in the first `k` components and zeros below gives a canonical
//! representative.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::dataset::KeyRepr;
use crate::error::{Error, Result};
use crate::field::{Field, ScalarField};
use crate::group::GroupSpec;
use crate::matrix::Matrix;
use crate::sample::{BasePoints, SampleKey, SampleMap};

#[derive(Debug, Clone, PartialEq)]
pub struct Signature<F: Field> {
    pub field: F,
    pub k: usize,
    pub base_keys: Vec<SampleKey>,
    /// Coordinates of every sample, base keys included (`e_i` there).
    pub coords: BTreeMap<SampleKey, Vec<F::Elem>>,
}

impl<F: Field> Signature<F> {
    pub fn get(&self, key: &SampleKey) -> Option<&Vec<F::Elem>> {
        self.coords.get(key)
    }

    pub fn is_base_key(&self, key: &SampleKey) -> bool {
        self.base_keys.contains(key)
    }
}

pub fn compute_signature<F: Field>(map: &SampleMap<F>, base: &BasePoints<F>) -> Result<Signature<F>> {
    signature_in_basis(map, &base.keys, &base.base_matrix)
}

/// Signature of `map` in the basis formed by `base_matrix`, whose columns
/// are the vectors of `map` at `base_keys`. Fails with `NotInSpan` if some
/// sample lies outside the column span.
pub fn signature_in_basis<F: Field>(
    map: &SampleMap<F>,
    base_keys: &[SampleKey],
    base_matrix: &Matrix<F>,
) -> Result<Signature<F>> {
    let f = map.field();
    let k = base_keys.len();
    if base_matrix.cols() != k || base_matrix.rows() != map.n() {
        return Err(Error::DimensionMismatch { expected: k, found: base_matrix.cols() });
    }
    let mut coords = BTreeMap::new();
    for (key, value) in map.iter() {
        let alpha = match base_keys.iter().position(|b| b == key) {
            Some(i) => unit_vector(f, k, i),
            None => base_matrix.solve_in_column_space(value)?.ok_or_else(|| Error::NotInSpan(key.to_string()))?,
        };
        coords.insert(key.clone(), alpha);
    }
    Ok(Signature { field: f.clone(), k, base_keys: base_keys.to_vec(), coords })
}

fn unit_vector<F: Field>(f: &F, k: usize, i: usize) -> Vec<F::Elem> {
    (0..k).map(|j| if j == i { f.one() } else { f.zero() }).collect()
}

pub fn signatures_equal<F: Field>(a: &Signature<F>, b: &Signature<F>) -> bool {
    a.k == b.k
        && a.base_keys == b.base_keys
        && a.coords.len() == b.coords.len()
        && a.coords.iter().zip(&b.coords).all(|((ka, va), (kb, vb))| {
            ka == kb && va.len() == vb.len() && va.iter().zip(vb).all(|(x, y)| a.field.equal(x, y))
        })
}

/// Canonical map in `F^n` with the given signature: components `1..k` are
/// the coordinates, components `k+1..n` are zero, so the base matrix is
/// `[I_k; 0]`.
///
/// For `SL` with `k = n` the base matrix is `I_n`, of determinant 1; below
/// full rank `SL` classes coincide with `GL` classes. Custom and affine
/// groups are rejected: no construction is known for an arbitrary subgroup.
pub fn reconstruct_canonical<F: Field>(sig: &Signature<F>, n: usize, group: &GroupSpec<F>) -> Result<SampleMap<F>> {
    if sig.k > n {
        return Err(Error::InvalidShape(format!("signature rank {} exceeds dimension {n}", sig.k)));
    }
    match group {
        GroupSpec::GL | GroupSpec::SL => {}
        GroupSpec::Custom(c) => {
            return Err(Error::UnsupportedGroup(format!("no canonical form is known for custom group {}", c.name)))
        }
        GroupSpec::AffineOver(_) => {
            return Err(Error::UnsupportedGroup("canonical forms are linear-group only".into()))
        }
    }
    let f = &sig.field;
    let samples = sig.coords.iter().map(|(key, alpha)| {
        let mut v = alpha.clone();
        v.resize(n, f.zero());
        (key.clone(), v)
    });
    SampleMap::new(f.clone(), n, samples)
}

impl<F: ScalarField> Signature<F> {
    /// `{"k": K, "base": [keys], "coords": [{"s", "t", "alpha": [...]}]}`,
    /// coordinates in key order.
    pub fn to_json(&self) -> Value {
        let base: Vec<KeyRepr> = self.base_keys.iter().map(KeyRepr::from).collect();
        let coords: Vec<Value> = self
            .coords
            .iter()
            .map(|(key, alpha)| {
                let alpha: Vec<String> = alpha.iter().map(|x| self.field.format(x)).collect();
                match &key.s {
                    Some(s) => json!({ "s": s, "t": key.t, "alpha": alpha }),
                    None => json!({ "t": key.t, "alpha": alpha }),
                }
            })
            .collect();
        json!({ "k": self.k, "base": base, "coords": coords })
    }
}
