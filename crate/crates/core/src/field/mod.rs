//! Coefficient fields.
//!
//! Matrices, maps and signatures are generic over a [`Field`], a small
//! context object that owns the arithmetic of its elements. Keeping the
//! arithmetic on the context lets a prime field carry its modulus at runtime
//! and lets the dual-number ring reuse every generic algorithm unchanged.
//!
//! Fields that can be read from and written to the scalar text grammar also
//! implement [`ScalarField`].

mod approx;
mod dual;
mod prime;
mod rational;

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

pub use approx::ApproxField;
pub use dual::{Dual, DualField};
pub use prime::{is_prime, PrimeField};
pub use rational::Rationals;

/// Arithmetic of a commutative field (or, for [`DualField`], a local ring
/// whose units are exactly the elements with nonzero value part).
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Zero test used for pivoting and span membership.
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Equality under the field's comparison rule (exact, or epsilon-relative).
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.one())
    }

    /// `false` for floating-point fields, whose results are heuristic.
    fn is_exact(&self) -> bool {
        true
    }

    /// Magnitude used for partial pivoting. `None` selects the first nonzero
    /// candidate instead of the largest one.
    fn pivot_magnitude(&self, _a: &Self::Elem) -> Option<f64> {
        None
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A field whose elements have a text form in the interchange grammar.
pub trait ScalarField: Field {
    fn spec(&self) -> FieldSpec;

    /// Parses `[+-]?digits(/digits)?` (exact fields) or a decimal literal
    /// (approximate fields) into a canonical element.
    fn parse(&self, text: &str) -> Result<Self::Elem>;

    fn format(&self, a: &Self::Elem) -> String;

    /// A random element drawn from a small range, used by test drivers and
    /// the generic-point search.
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random_elem(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

/// Runtime description of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
    Approx(f64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn approx(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps >= 0.0 {
            Ok(FieldSpec::Approx(eps))
        } else {
            Err(Error::InvalidField(format!("epsilon {eps} must be finite and nonnegative")))
        }
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            FieldSpec::Rational => Ok(self),
            FieldSpec::Prime(p) => FieldSpec::prime(p),
            FieldSpec::Approx(eps) => FieldSpec::approx(eps),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, FieldSpec::Approx(_))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "prime:{p}"),
            FieldSpec::Approx(eps) => write!(f, "approx:{eps}"),
        }
    }
}

/// Accepts the command-line forms `rational`, `prime:P` and `approx:EPS`.
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("rational") {
            return Ok(FieldSpec::Rational);
        }
        if let Some(p) = s.strip_prefix("prime:") {
            let p: u64 = p.parse().map_err(|_| Error::InvalidField(format!("bad prime {p:?}")))?;
            return FieldSpec::prime(p);
        }
        if let Some(eps) = s.strip_prefix("approx:") {
            let eps: f64 = eps.parse().map_err(|_| Error::InvalidField(format!("bad epsilon {eps:?}")))?;
            return FieldSpec::approx(eps);
        }
        Err(Error::InvalidField(format!("unknown field {s:?}")))
    }
}

/// Splits an exact scalar literal `[+-]?digits(/digits)?` into sign,
/// numerator digits and optional denominator digits.
pub(crate) fn split_exact_literal(text: &str) -> Result<(bool, &str, Option<&str>)> {
    let bad = |reason: &str| Error::ParseScalar { text: text.to_string(), reason: reason.to_string() };
    let (negative, rest) = match text.as_bytes().first() {
        Some(b'-') => (true, &text[1..]),
        Some(b'+') => (false, &text[1..]),
        Some(_) => (false, text),
        None => return Err(bad("empty")),
    };
    let (num, den) = match rest.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (rest, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(bad("expected digits"));
    }
    if let Some(d) = den {
        if !digits(d) {
            return Err(bad("expected digits after '/'"));
        }
    }
    Ok((negative, num, den))
}
