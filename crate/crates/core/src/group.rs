//! Matrix groups acting on `F^n`.

use std::fmt;
use std::sync::Arc;

use crate::field::Field;
use crate::matrix::Matrix;

pub type MembershipFn<F> = Arc<dyn Fn(&Matrix<F>) -> bool + Send + Sync>;
pub type ClassFn<F> = Arc<dyn Fn(&Matrix<F>) -> <F as Field>::Elem + Send + Sync>;

/// A user-supplied subgroup `G` of `GL(n, F)`.
///
/// `class_fns`, when non-empty, must satisfy: `f(g1) = f(g2)` for every `f`
/// iff `g2 * g1^-1` lies in `G`. Membership stays authoritative; see
/// [`CustomGroup::check_class_fn_contract`].
#[derive(Clone)]
pub struct CustomGroup<F: Field> {
    pub name: String,
    pub membership: MembershipFn<F>,
    pub class_fns: Vec<ClassFn<F>>,
}

impl<F: Field> CustomGroup<F> {
    pub fn new(name: impl Into<String>, membership: impl Fn(&Matrix<F>) -> bool + Send + Sync + 'static) -> Self {
        CustomGroup { name: name.into(), membership: Arc::new(membership), class_fns: Vec::new() }
    }

    pub fn with_class_fn(mut self, f: impl Fn(&Matrix<F>) -> F::Elem + Send + Sync + 'static) -> Self {
        self.class_fns.push(Arc::new(f));
        self
    }

    pub fn contains(&self, g: &Matrix<F>) -> bool {
        (self.membership)(g)
    }

    /// `Some(verdict)` on whether `g2 * g1^-1` is in the group according to
    /// the class functions; `None` when none are declared.
    pub fn class_fns_agree(&self, g1: &Matrix<F>, g2: &Matrix<F>) -> Option<bool> {
        if self.class_fns.is_empty() {
            return None;
        }
        let f = g1.field();
        Some(self.class_fns.iter().all(|c| f.equal(&c(g1), &c(g2))))
    }

    /// Spot-checks the class-function contract on all ordered pairs of the
    /// given invertible matrices.
    pub fn check_class_fn_contract(&self, samples: &[Matrix<F>]) -> bool {
        samples.iter().all(|g1| {
            let Ok(g1_inv) = g1.inverse() else { return false };
            samples.iter().all(|g2| {
                let by_membership = g2.mul(&g1_inv).map(|q| self.contains(&q)).unwrap_or(false);
                self.class_fns_agree(g1, g2).is_none_or(|v| v == by_membership)
            })
        })
    }
}

impl<F: Field> fmt::Debug for CustomGroup<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomGroup").field("name", &self.name).field("class_fns", &self.class_fns.len()).finish()
    }
}

#[derive(Debug, Clone)]
pub enum GroupSpec<F: Field> {
    GL,
    SL,
    Custom(CustomGroup<F>),
    /// `F^n ⋊ inner`, acting by `x -> g x + b`.
    AffineOver(Box<GroupSpec<F>>),
}

impl<F: Field> GroupSpec<F> {
    pub fn affine(inner: GroupSpec<F>) -> Self {
        GroupSpec::AffineOver(Box::new(inner))
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, GroupSpec::AffineOver(_))
    }

    /// The linear part: `inner` for affine groups, `self` otherwise.
    pub fn linear_part(&self) -> &GroupSpec<F> {
        match self {
            GroupSpec::AffineOver(inner) => inner.linear_part(),
            other => other,
        }
    }

    pub fn name(&self) -> String {
        match self {
            GroupSpec::GL => "gl".into(),
            GroupSpec::SL => "sl".into(),
            GroupSpec::Custom(c) => c.name.clone(),
            GroupSpec::AffineOver(inner) => format!("aff-{}", inner.name()),
        }
    }

    /// Membership of the linear part `g` (square and invertible, plus the
    /// group's own condition).
    pub fn contains(&self, g: &Matrix<F>) -> bool {
        if !g.is_square() {
            return false;
        }
        let Ok(det) = g.determinant() else { return false };
        let f = g.field();
        if f.is_zero(&det) {
            return false;
        }
        match self {
            GroupSpec::GL => true,
            GroupSpec::SL => f.is_one(&det),
            GroupSpec::Custom(c) => c.contains(g),
            GroupSpec::AffineOver(inner) => inner.contains(g),
        }
    }
}

/// Parses `gl`, `sl`, `aff-gl`, `aff-sl`.
pub fn parse_group<F: Field>(name: &str) -> Option<GroupSpec<F>> {
    match name.trim().to_ascii_lowercase().as_str() {
        "gl" => Some(GroupSpec::GL),
        "sl" => Some(GroupSpec::SL),
        "aff-gl" => Some(GroupSpec::affine(GroupSpec::GL)),
        "aff-sl" => Some(GroupSpec::affine(GroupSpec::SL)),
        _ => None,
    }
}
