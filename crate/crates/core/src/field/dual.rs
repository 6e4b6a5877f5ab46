use super::Field;
use crate::error::{Error, Result};

/// `value + slope * ε` with `ε² = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dual<E> {
    pub value: E,
    pub slope: E,
}

/// Dual numbers over a base field, for exact forward-mode derivatives.
///
/// Zero tests look at the value part only, so Gaussian elimination pivots on
/// units. Derivatives obtained this way are exact as long as every pivot
/// encountered is nonzero at the evaluation point.
#[derive(Debug, Clone, PartialEq)]
pub struct DualField<F> {
    base: F,
}

impl<F: Field> DualField<F> {
    pub fn new(base: F) -> Self {
        DualField { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn constant(&self, value: F::Elem) -> Dual<F::Elem> {
        Dual { value, slope: self.base.zero() }
    }

    pub fn variable(&self, value: F::Elem) -> Dual<F::Elem> {
        Dual { value, slope: self.base.one() }
    }
}

impl<F: Field> Field for DualField<F> {
    type Elem = Dual<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.constant(self.base.zero())
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.constant(self.base.from_i64(v))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Dual { value: self.base.add(&a.value, &b.value), slope: self.base.add(&a.slope, &b.slope) }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Dual { value: self.base.sub(&a.value, &b.value), slope: self.base.sub(&a.slope, &b.slope) }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        Dual { value: f.mul(&a.value, &b.value), slope: f.add(&f.mul(&a.value, &b.slope), &f.mul(&a.slope, &b.value)) }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Dual { value: self.base.neg(&a.value), slope: self.base.neg(&a.slope) }
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        let f = &self.base;
        let r = f.inv(&a.value).map_err(|_| Error::ZeroInverse)?;
        // (v + sε)^-1 = 1/v - s/v² ε
        let slope = f.neg(&f.mul(&a.slope, &f.mul(&r, &r)));
        Ok(Dual { value: r, slope })
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.value)
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.base.equal(&a.value, &b.value) && self.base.equal(&a.slope, &b.slope)
    }

    fn is_exact(&self) -> bool {
        self.base.is_exact()
    }

    fn pivot_magnitude(&self, a: &Self::Elem) -> Option<f64> {
        self.base.pivot_magnitude(&a.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use num_rational::BigRational;

    #[test]
    fn quotient_rule() {
        let d = DualField::new(Rationals);
        let q = |n: i64, den: i64| BigRational::new(n.into(), den.into());
        // f(x) = x / (x + 1) at x = 2: f = 2/3, f' = 1/(x+1)^2 = 1/9
        let x = d.variable(q(2, 1));
        let y = d.div(&x, &d.add(&x, &d.one())).unwrap();
        assert_eq!(y.value, q(2, 3));
        assert_eq!(y.slope, q(1, 9));
        let eps_only = Dual { value: q(0, 1), slope: q(1, 1) };
        assert!(d.inv(&eps_only).is_err());
    }
}
