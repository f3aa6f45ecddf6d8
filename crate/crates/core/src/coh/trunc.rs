use std::fmt;

use super::field::BaseField;
use super::h2::{cup, H2Class};
use super::square::SquareClass;
use crate::error::Result;

/// A unit `1 + s1 + s2` of `H^*(K, Z/2)` truncated above degree 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncClass {
    pub s1: SquareClass,
    pub s2: H2Class,
}

impl TruncClass {
    pub fn one(field: BaseField) -> Self {
        TruncClass { s1: SquareClass::one(field), s2: H2Class::zero(field) }
    }

    pub fn new(s1: SquareClass, s2: H2Class) -> Result<Self> {
        s1.field().ensure_same(s2.field())?;
        Ok(TruncClass { s1, s2 })
    }

    /// `1 + a`.
    pub fn linear(a: &SquareClass) -> Self {
        TruncClass { s1: a.clone(), s2: H2Class::zero(a.field()) }
    }

    /// `1 + x` for `x` of degree 2.
    pub fn quadratic(x: &H2Class) -> Self {
        TruncClass { s1: SquareClass::one(x.field()), s2: x.clone() }
    }

    pub fn field(&self) -> BaseField {
        self.s1.field()
    }

    pub fn mul(&self, other: &TruncClass) -> Result<TruncClass> {
        let s1 = self.s1.add(&other.s1)?;
        let s2 = self.s2.add(&other.s2)?.add(&cup(&self.s1, &other.s1)?)?;
        Ok(TruncClass { s1, s2 })
    }

    pub fn inv(&self) -> Result<TruncClass> {
        let s2 = self.s2.add(&cup(&self.s1, &self.s1)?)?;
        Ok(TruncClass { s1: self.s1.clone(), s2 })
    }

    /// Integer powers by repeated squaring; negative exponents go through the inverse.
    pub fn pow(&self, n: i64) -> Result<TruncClass> {
        let mut base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = TruncClass::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn product<'a>(field: BaseField, items: impl IntoIterator<Item = &'a TruncClass>) -> Result<TruncClass> {
        items.into_iter().try_fold(TruncClass::one(field), |acc, x| acc.mul(x))
    }

    pub fn is_one(&self) -> bool {
        self.s1.is_trivial() && self.s2.is_zero()
    }
}

impl fmt::Display for TruncClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1, {}, {})", self.s1, self.s2)
    }
}

/// `(1 + {-1})^n`, the total class attached to an Euler characteristic `n`.
pub fn minus_one_power(field: BaseField, n: i64) -> Result<TruncClass> {
    TruncClass::linear(&SquareClass::minus_one(field)).pow(n)
}
