//! Deciding `u ≃_G v` and constructing witnesses.
//!
//! Base points are taken from `u` and validated against `v`. For `GL` the
//! maps are equivalent iff their signatures agree; for subgroups at full
//! rank the unique candidate `g = V U^-1` must also lie in `G`. `SL` below
//! full rank behaves like `GL`, with the witness rescaled to determinant one
//! along a completion direction. Affine groups reduce to their linear part
//! by differencing against an anchor sample.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, ScalarField};
use crate::group::GroupSpec;
use crate::matrix::Matrix;
use crate::sample::{BasePoints, SampleKey, SampleMap};
use crate::signature::{compute_signature, signature_in_basis, signatures_equal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    Equivalent,
    RankMismatch,
    BaseDependentInV,
    OutsideSpanInV,
    SignatureMismatch,
    GroupConditionFailed,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::Equivalent => "EQUIVALENT",
            Reason::RankMismatch => "RANK_MISMATCH",
            Reason::BaseDependentInV => "BASE_DEPENDENT_IN_V",
            Reason::OutsideSpanInV => "OUTSIDE_SPAN_IN_V",
            Reason::SignatureMismatch => "SIGNATURE_MISMATCH",
            Reason::GroupConditionFailed => "GROUP_CONDITION_FAILED",
        }
    }
}

/// A group element `x -> g x (+ translation)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<F: Field> {
    pub g: Matrix<F>,
    pub translation: Option<Vec<F::Elem>>,
}

impl<F: Field> Witness<F> {
    pub fn apply(&self, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let gx = self.g.mul_vec(x)?;
        Ok(match &self.translation {
            Some(b) => gx.iter().zip(b).map(|(a, c)| self.g.field().add(a, c)).collect(),
            None => gx,
        })
    }

    /// `self` followed by `next`: `x -> next(self(x))`.
    pub fn then(&self, next: &Witness<F>) -> Result<Witness<F>> {
        let g = next.g.mul(&self.g)?;
        let translation = match (&self.translation, &next.translation) {
            (None, None) => None,
            (first, second) => {
                let f = g.field();
                let zero = vec![f.zero(); g.rows()];
                let moved = next.g.mul_vec(first.as_ref().unwrap_or(&zero))?;
                let b2 = second.as_ref().unwrap_or(&zero);
                Some(moved.iter().zip(b2).map(|(a, b)| f.add(a, b)).collect())
            }
        };
        Ok(Witness { g, translation })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decision<F: Field> {
    pub equivalent: bool,
    pub witness: Option<Witness<F>>,
    pub reason: Reason,
}

impl<F: Field> Decision<F> {
    fn rejected(reason: Reason) -> Self {
        Decision { equivalent: false, witness: None, reason }
    }

    fn accepted(witness: Witness<F>) -> Self {
        Decision { equivalent: true, witness: Some(witness), reason: Reason::Equivalent }
    }
}

impl<F: ScalarField> Decision<F> {
    /// `{"equivalent": bool, "reason": code, "witness": {"g", "translation"} | null}`
    pub fn to_json(&self) -> Value {
        let witness = match &self.witness {
            Some(w) => {
                let f = w.g.field();
                let translation = w.translation.as_ref().map(|b| b.iter().map(|x| f.format(x)).collect::<Vec<_>>());
                json!({ "g": w.g.to_text_rows(), "translation": translation })
            }
            None => Value::Null,
        };
        json!({ "equivalent": self.equivalent, "reason": self.reason.code(), "witness": witness })
    }
}

/// Explicit choices that otherwise default to the greedy base and the least
/// sample key.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DecideOptions {
    pub base: Option<Vec<SampleKey>>,
    pub anchor: Option<SampleKey>,
}

pub fn decide<F: Field>(
    u: &SampleMap<F>,
    v: &SampleMap<F>,
    group: &GroupSpec<F>,
    opts: &DecideOptions,
) -> Result<Decision<F>> {
    match group {
        GroupSpec::AffineOver(inner) => decide_affine_with(u, v, inner, opts),
        linear => decide_linear(u, v, linear, opts.base.as_deref()),
    }
}

pub fn decide_gl<F: Field>(u: &SampleMap<F>, v: &SampleMap<F>) -> Result<Decision<F>> {
    decide_linear(u, v, &GroupSpec::GL, None)
}

pub fn decide_subgroup<F: Field>(u: &SampleMap<F>, v: &SampleMap<F>, group: &GroupSpec<F>) -> Result<Decision<F>> {
    decide(u, v, group, &DecideOptions::default())
}

pub fn decide_affine<F: Field>(u: &SampleMap<F>, v: &SampleMap<F>, inner: &GroupSpec<F>) -> Result<Decision<F>> {
    decide_affine_with(u, v, inner, &DecideOptions::default())
}

fn check_compatible<F: Field>(u: &SampleMap<F>, v: &SampleMap<F>) -> Result<()> {
    if u.field() != v.field() {
        return Err(Error::FieldMismatch);
    }
    if u.n() != v.n() {
        return Err(Error::DimensionMismatch { expected: u.n(), found: v.n() });
    }
    if !u.same_keys(v) {
        return Err(Error::KeySetMismatch);
    }
    Ok(())
}

fn decide_affine_with<F: Field>(
    u: &SampleMap<F>,
    v: &SampleMap<F>,
    inner: &GroupSpec<F>,
    opts: &DecideOptions,
) -> Result<Decision<F>> {
    if inner.is_affine() {
        return Err(Error::UnsupportedGroup("nested affine group".into()));
    }
    check_compatible(u, v)?;
    let anchor = match &opts.anchor {
        Some(a) => a.clone(),
        None => u.keys().next().cloned().ok_or(Error::EmptyMap)?,
    };
    let du = u.difference_from(&anchor)?;
    let dv = v.difference_from(&anchor)?;
    let linear = decide_linear(&du, &dv, inner, opts.base.as_deref())?;
    let Some(Witness { g, .. }) = linear.witness else {
        return Ok(linear);
    };
    let f = u.field();
    let moved = g.mul_vec(u.get(&anchor).expect("anchor checked above"))?;
    let translation: Vec<F::Elem> =
        v.get(&anchor).expect("same keys").iter().zip(&moved).map(|(a, b)| f.sub(a, b)).collect();
    let witness = Witness { g, translation: Some(translation) };
    ensure_maps(u, v, &witness)?;
    Ok(Decision::accepted(witness))
}

fn decide_linear<F: Field>(
    u: &SampleMap<F>,
    v: &SampleMap<F>,
    group: &GroupSpec<F>,
    base_keys: Option<&[SampleKey]>,
) -> Result<Decision<F>> {
    check_compatible(u, v)?;
    let base = match base_keys {
        Some(keys) => u.base_from_keys(keys)?,
        None => u.select_base_points(),
    };
    let n = u.n();
    let k = base.len();
    if let GroupSpec::Custom(_) = group {
        if k < n {
            return Err(Error::CustomGroupNeedsFullRank { k, n });
        }
    }

    let v_base = v.columns_at(&base.keys)?;
    if v_base.rank() < k {
        return Ok(Decision::rejected(Reason::BaseDependentInV));
    }
    let sig_v = match signature_in_basis(v, &base.keys, &v_base) {
        Ok(sig) => sig,
        Err(Error::NotInSpan(_)) => return Ok(Decision::rejected(Reason::OutsideSpanInV)),
        Err(e) => return Err(e),
    };
    if v.rank() != k {
        return Ok(Decision::rejected(Reason::RankMismatch));
    }
    let sig_u = compute_signature(u, &base)?;
    if !signatures_equal(&sig_u, &sig_v) {
        return Ok(Decision::rejected(Reason::SignatureMismatch));
    }

    let f = u.field();
    let u_ext = complete_basis(&base.base_matrix)?;
    let mut v_ext = complete_basis(&v_base)?;
    let g = match group {
        GroupSpec::GL => v_ext.mul(&u_ext.inverse()?)?,
        GroupSpec::SL if k < n => {
            // det(g) = det(V_ext) / det(U_ext); rescale one completion column.
            let det_g = f.div(&v_ext.determinant()?, &u_ext.determinant()?)?;
            v_ext.scale_column(n - 1, &f.inv(&det_g)?);
            v_ext.mul(&u_ext.inverse()?)?
        }
        GroupSpec::SL => {
            if !f.equal(&base.base_matrix.determinant()?, &v_base.determinant()?) {
                return Ok(Decision::rejected(Reason::GroupConditionFailed));
            }
            v_base.mul(&base.base_matrix.inverse()?)?
        }
        GroupSpec::Custom(custom) => {
            let g = v_base.mul(&base.base_matrix.inverse()?)?;
            let member = custom.contains(&g);
            if let Some(by_class) = custom.class_fns_agree(&base.base_matrix, &v_base) {
                if by_class != member {
                    return Err(Error::ClassFunctionDisagreement);
                }
            }
            if !member {
                return Ok(Decision::rejected(Reason::GroupConditionFailed));
            }
            g
        }
        GroupSpec::AffineOver(_) => unreachable!("affine groups are handled by decide_affine"),
    };
    let witness = Witness { g, translation: None };
    ensure_maps(u, v, &witness)?;
    Ok(Decision::accepted(witness))
}

/// Extends the columns of `m` (`n x k`, full column rank) to an invertible
/// `n x n` matrix by appending standard basis vectors `e_1, e_2, ...` in
/// ascending order, skipping those that would break independence.
pub fn complete_basis<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    let n = m.rows();
    let f = m.field().clone();
    let mut out = m.clone();
    let mut rank = out.rank();
    if rank != m.cols() {
        return Err(Error::RankDeficientBasis { rank, cols: m.cols() });
    }
    for j in 0..n {
        if out.cols() == n {
            break;
        }
        let mut e = vec![f.zero(); n];
        e[j] = f.one();
        let candidate = out.hstack(&Matrix::from_columns(f.clone(), n, &[e])?)?;
        if candidate.rank() == rank + 1 {
            out = candidate;
            rank += 1;
        }
    }
    if out.cols() != n {
        return Err(Error::Internal("basis completion fell short".into()));
    }
    Ok(out)
}

/// A `GL` witness for maps whose signatures relative to `base` agree:
/// `g = V_ext U_ext^-1` with both bases completed by the same recipe.
pub fn build_witness<F: Field>(u: &SampleMap<F>, v: &SampleMap<F>, base: &BasePoints<F>) -> Result<Matrix<F>> {
    let u_ext = complete_basis(&base.base_matrix)?;
    let v_ext = complete_basis(&v.columns_at(&base.keys)?)?;
    let g = v_ext.mul(&u_ext.inverse()?)?;
    ensure_maps(u, v, &Witness { g: g.clone(), translation: None })?;
    Ok(g)
}

fn maps_onto<F: Field>(u: &SampleMap<F>, v: &SampleMap<F>, w: &Witness<F>) -> bool {
    let f = u.field();
    u.same_keys(v)
        && u.iter().zip(v.iter()).all(|((_, x), (_, y))| match w.apply(x) {
            Ok(gx) => gx.len() == y.len() && gx.iter().zip(y).all(|(a, b)| f.equal(a, b)),
            Err(_) => false,
        })
}

fn ensure_maps<F: Field>(u: &SampleMap<F>, v: &SampleMap<F>, w: &Witness<F>) -> Result<()> {
    if maps_onto(u, v, w) {
        Ok(())
    } else {
        Err(Error::Internal("constructed witness does not map u onto v".into()))
    }
}

/// Checks a positive decision: the witness lies in `group`, carries a
/// translation exactly when the group is affine, and maps every sample of
/// `u` onto the matching sample of `v`.
pub fn verify_witness<F: Field>(
    u: &SampleMap<F>,
    v: &SampleMap<F>,
    decision: &Decision<F>,
    group: &GroupSpec<F>,
) -> bool {
    if !decision.equivalent {
        return false;
    }
    let Some(w) = &decision.witness else { return false };
    if w.g.rows() != u.n() || !group.contains(&w.g) {
        return false;
    }
    match (&w.translation, group.is_affine()) {
        (Some(b), true) if b.len() == u.n() => {}
        (None, false) => {}
        _ => return false,
    }
    maps_onto(u, v, w)
}
