use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{split_exact_literal, Field, FieldSpec, ScalarField};
use crate::error::{Error, Result};

/// The rational numbers with arbitrary-precision numerator and denominator.
///
/// Elements are always in lowest terms with a positive denominator, which is
/// the invariant `BigRational` maintains on construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn equal(&self, a: &BigRational, b: &BigRational) -> bool {
        a == b
    }
}

impl ScalarField for Rationals {
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }

    fn parse(&self, text: &str) -> Result<BigRational> {
        let (negative, num, den) = split_exact_literal(text)?;
        let mut numer: BigInt =
            num.parse().map_err(|_| Error::ParseScalar { text: text.to_string(), reason: "bad numerator".into() })?;
        if negative {
            numer = -numer;
        }
        let denom: BigInt = match den {
            Some(d) => d
                .parse()
                .map_err(|_| Error::ParseScalar { text: text.to_string(), reason: "bad denominator".into() })?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(Error::ZeroDenominator(text.to_string()));
        }
        Ok(BigRational::new(numer, denom))
    }

    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let num: i64 = rng.gen_range(-20..=20);
        let den: i64 = rng.gen_range(1..=7);
        BigRational::new(num.into(), den.into())
    }
}
