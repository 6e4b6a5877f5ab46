//! Sampled vector-valued maps `T -> F^n` and families `(s, t) -> F^n`.
//!
//! A family of maps sharing one group element is the same thing as a single
//! map on composite keys, so families are represented by keys with an
//! optional `s` label and need no separate code path.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// A sample label. Ordering is lexicographic on `(s, t)` with an absent `s`
/// sorting first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SampleKey {
    pub s: Option<String>,
    pub t: String,
}

impl SampleKey {
    pub fn new(t: impl Into<String>) -> Self {
        SampleKey { s: None, t: t.into() }
    }

    pub fn composite(s: impl Into<String>, t: impl Into<String>) -> Self {
        SampleKey { s: Some(s.into()), t: t.into() }
    }
}

/// `t`, or `s:t` for composite keys.
impl fmt::Display for SampleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.s {
            Some(s) => write!(f, "{s}:{}", self.t),
            None => write!(f, "{}", self.t),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleMap<F: Field> {
    field: F,
    n: usize,
    samples: BTreeMap<SampleKey, Vec<F::Elem>>,
}

/// Sample keys whose vectors form a basis of the span of a map.
#[derive(Debug, Clone, PartialEq)]
pub struct BasePoints<F: Field> {
    pub keys: Vec<SampleKey>,
    pub base_matrix: Matrix<F>,
}

impl<F: Field> BasePoints<F> {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

impl<F: Field> SampleMap<F> {
    pub fn new(field: F, n: usize, samples: impl IntoIterator<Item = (SampleKey, Vec<F::Elem>)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Schema("dimension n must be at least 1".into()));
        }
        let mut map = BTreeMap::new();
        for (key, value) in samples {
            if value.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: value.len() });
            }
            if map.contains_key(&key) {
                return Err(Error::DuplicateKey(key.to_string()));
            }
            map.insert(key, value);
        }
        if map.is_empty() {
            return Err(Error::EmptyMap);
        }
        Ok(SampleMap { field, n, samples: map })
    }

    /// Convenience constructor for single maps keyed by `t` labels.
    pub fn from_i64(field: F, n: usize, samples: &[(&str, &[i64])]) -> Result<Self> {
        let items = samples
            .iter()
            .map(|(t, v)| (SampleKey::new(*t), v.iter().map(|&x| field.from_i64(x)).collect()))
            .collect::<Vec<_>>();
        Self::new(field, n, items)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &SampleKey> {
        self.samples.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SampleKey, &Vec<F::Elem>)> {
        self.samples.iter()
    }

    pub fn get(&self, key: &SampleKey) -> Option<&Vec<F::Elem>> {
        self.samples.get(key)
    }

    pub fn same_keys(&self, other: &SampleMap<F>) -> bool {
        self.samples.len() == other.samples.len() && self.keys().eq(other.keys())
    }

    /// Looks a key up by its display form (`t` or `s:t`).
    pub fn find_key(&self, text: &str) -> Result<SampleKey> {
        self.keys().find(|k| k.to_string() == text).cloned().ok_or_else(|| Error::UnknownKey(text.to_string()))
    }

    /// The `n x m` matrix of all sample vectors as columns, in key order.
    pub fn matrix(&self) -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> = self.samples.values().cloned().collect();
        Matrix::from_columns(self.field.clone(), self.n, &cols).expect("vectors have length n")
    }

    /// Matrix whose columns are the vectors at `keys`, in order.
    pub fn columns_at(&self, keys: &[SampleKey]) -> Result<Matrix<F>> {
        let cols = keys
            .iter()
            .map(|k| self.get(k).cloned().ok_or_else(|| Error::UnknownKey(k.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(self.field.clone(), self.n, &cols)
    }

    /// Dimension of the span of all sample vectors.
    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }

    /// Greedy base selection in key order: a key joins the base iff its
    /// vector is independent of the vectors already chosen.
    pub fn select_base_points(&self) -> BasePoints<F> {
        // With columns scanned left to right, the pivot columns of the sample
        // matrix are exactly the greedily independent ones.
        let profile = self.matrix().rank_profile();
        let all: Vec<&SampleKey> = self.keys().collect();
        let keys: Vec<SampleKey> = profile.pivot_cols.iter().map(|&j| all[j].clone()).collect();
        let base_matrix = self.columns_at(&keys).expect("keys come from the map");
        BasePoints { keys, base_matrix }
    }

    /// Validates an explicit, ordered base: keys must exist, be distinct,
    /// have independent vectors and span every sample.
    pub fn base_from_keys(&self, keys: &[SampleKey]) -> Result<BasePoints<F>> {
        for (i, k) in keys.iter().enumerate() {
            if keys[..i].contains(k) {
                return Err(Error::DuplicateKey(k.to_string()));
            }
        }
        let base_matrix = self.columns_at(keys)?;
        if base_matrix.rank() < keys.len() {
            return Err(Error::BaseDependent);
        }
        for (key, value) in self.iter() {
            if base_matrix.solve_in_column_space(value)?.is_none() {
                return Err(Error::NotInSpan(key.to_string()));
            }
        }
        Ok(BasePoints { keys: keys.to_vec(), base_matrix })
    }

    /// `key -> g * u(key)`
    pub fn transform(&self, g: &Matrix<F>) -> Result<Self> {
        if g.rows() != self.n || g.cols() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: g.rows() });
        }
        self.try_map_vectors(|v| g.mul_vec(v))
    }

    /// `key -> u(key) + shift`
    pub fn translate(&self, shift: &[F::Elem]) -> Result<Self> {
        if shift.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: shift.len() });
        }
        let f = self.field.clone();
        self.try_map_vectors(|v| Ok(v.iter().zip(shift).map(|(a, b)| f.add(a, b)).collect()))
    }

    /// `key -> u(key) - u(anchor)`
    pub fn difference_from(&self, anchor: &SampleKey) -> Result<Self> {
        let origin = self.get(anchor).ok_or_else(|| Error::UnknownKey(anchor.to_string()))?.clone();
        let f = self.field.clone();
        self.try_map_vectors(|v| Ok(v.iter().zip(&origin).map(|(a, b)| f.sub(a, b)).collect()))
    }

    pub fn try_map_vectors(&self, mut op: impl FnMut(&[F::Elem]) -> Result<Vec<F::Elem>>) -> Result<Self> {
        let samples = self.samples.iter().map(|(k, v)| Ok((k.clone(), op(v)?))).collect::<Result<BTreeMap<_, _>>>()?;
        Ok(SampleMap { field: self.field.clone(), n: self.n, samples })
    }

    /// Replaces the vector at an existing key.
    pub fn with_sample(&self, key: &SampleKey, value: Vec<F::Elem>) -> Result<Self> {
        if value.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: value.len() });
        }
        if !self.samples.contains_key(key) {
            return Err(Error::UnknownKey(key.to_string()));
        }
        let mut out = self.clone();
        out.samples.insert(key.clone(), value);
        Ok(out)
    }

    /// Vector-wise equality under the field's comparison rule.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.same_keys(other)
            && self
                .samples
                .values()
                .zip(other.samples.values())
                .all(|(a, b)| a.iter().zip(b).all(|(x, y)| self.field.equal(x, y)))
    }
}
