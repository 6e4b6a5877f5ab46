use rand::Rng;

use super::{split_exact_literal, Field, FieldSpec, ScalarField};
use crate::error::{Error, Result};

/// The prime field GF(p) for a word-sized prime `p`; elements are residues
/// in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, v: u64) -> u64 {
        v % self.p
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        let mut b = base % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, b, self.p);
            }
            b = mul_mod(b, b, self.p);
            exp >>= 1;
        }
        acc
    }

    /// Residue of a decimal digit string.
    fn digits_mod(&self, digits: &str) -> u64 {
        digits.bytes().fold(0u64, |acc, d| ((acc as u128 * 10 + (d - b'0') as u128) % self.p as u128) as u64)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if (*a).is_multiple_of(self.p) {
            return Err(Error::ZeroInverse);
        }
        // Fermat: a^(p-2) = a^-1.
        Ok(self.pow(*a, self.p - 2))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn equal(&self, a: &u64, b: &u64) -> bool {
        a == b
    }
}

impl ScalarField for PrimeField {
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }

    fn parse(&self, text: &str) -> Result<u64> {
        let (negative, num, den) = split_exact_literal(text)?;
        let mut value = self.digits_mod(num);
        if negative {
            value = self.neg(&value);
        }
        if let Some(d) = den {
            let d = self.digits_mod(d);
            if d == 0 {
                return Err(Error::ZeroDenominator(text.to_string()));
            }
            value = self.mul(&value, &self.inv(&d)?);
        }
        Ok(value)
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}
