use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, NumCast};
use rand::Rng;

use super::{Field, FieldSpec, ScalarField};
use crate::error::{Error, Result};

/// Floating-point "field" with a single relative tolerance.
///
/// `a` and `b` compare equal when `|a - b| <= eps * max(1, |a|, |b|)`, and
/// `a` is zero when `|a| <= eps`. With `eps = 0` both tests are strict.
/// Results in this mode are heuristic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxField<T> {
    eps: T,
}

impl<T: Float> ApproxField<T> {
    pub fn new(eps: T) -> Result<Self> {
        if eps.is_finite() && eps >= T::zero() {
            Ok(ApproxField { eps })
        } else {
            Err(Error::InvalidField("epsilon must be finite and nonnegative".into()))
        }
    }

    pub fn epsilon(&self) -> T {
        self.eps
    }
}

impl<T> Field for ApproxField<T>
where
    T: Float + Debug + Send + Sync,
{
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn from_i64(&self, v: i64) -> T {
        <T as NumCast>::from(v).unwrap_or_else(T::nan)
    }

    fn add(&self, a: &T, b: &T) -> T {
        *a + *b
    }

    fn sub(&self, a: &T, b: &T) -> T {
        *a - *b
    }

    fn mul(&self, a: &T, b: &T) -> T {
        *a * *b
    }

    fn neg(&self, a: &T) -> T {
        -*a
    }

    fn inv(&self, a: &T) -> Result<T> {
        if self.is_zero(a) {
            Err(Error::ZeroInverse)
        } else {
            Ok(a.recip())
        }
    }

    fn is_zero(&self, a: &T) -> bool {
        a.abs() <= self.eps
    }

    fn equal(&self, a: &T, b: &T) -> bool {
        let scale = T::one().max(a.abs()).max(b.abs());
        (*a - *b).abs() <= self.eps * scale
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn pivot_magnitude(&self, a: &T) -> Option<f64> {
        a.abs().to_f64()
    }
}

/// `[+-]?(digits[.digits*] | .digits)([eE][+-]?digits)?`
fn is_decimal_literal(text: &str) -> bool {
    let b = text.as_bytes();
    let mut i = 0;
    if matches!(b.first(), Some(b'+' | b'-')) {
        i += 1;
    }
    let int_start = i;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    let mut mantissa_digits = i - int_start;
    if i < b.len() && b[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        mantissa_digits += i - frac_start;
    }
    if mantissa_digits == 0 {
        return false;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if matches!(b.get(i), Some(b'+' | b'-')) {
            i += 1;
        }
        let exp_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        if i == exp_start {
            return false;
        }
    }
    i == b.len()
}

impl<T> ScalarField for ApproxField<T>
where
    T: Float + FromStr + Display + Debug + Send + Sync,
{
    fn spec(&self) -> FieldSpec {
        FieldSpec::Approx(self.eps.to_f64().unwrap_or(f64::NAN))
    }

    fn parse(&self, text: &str) -> Result<T> {
        let bad = |reason: &str| Error::ParseScalar { text: text.to_string(), reason: reason.to_string() };
        if !is_decimal_literal(text) {
            return Err(bad("expected a decimal literal"));
        }
        let v: T = text.parse().map_err(|_| bad("unparseable float"))?;
        if !v.is_finite() {
            return Err(bad("out of range"));
        }
        Ok(v)
    }

    fn format(&self, a: &T) -> String {
        // Display of f32/f64 is the shortest string that reads back exactly.
        a.to_string()
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        let v: f64 = rng.gen_range(-10.0..10.0);
        <T as NumCast>::from(v).unwrap_or_else(T::zero)
    }
}
