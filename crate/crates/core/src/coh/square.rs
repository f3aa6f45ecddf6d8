use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::BaseField;
use crate::arith::{integral_rep, jacobi, least_nonresidue, parse_rational, split_valuation, squarefree_kernel};
use crate::error::{Error, Result};

/// An element of `K*/K*^2`, the group `H^1(K, Z/2)`, written additively.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareClass {
    field: BaseField,
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Signed squarefree integer with its sorted prime support.
    Global { value: BigInt, primes: Vec<BigUint> },
    /// Coordinates in a local F_2-basis:
    /// `Q_p` (p odd): bit 0 = least nonresidue u, bit 1 = p;
    /// `Q_2`: bit 0 = -1, bit 1 = 5, bit 2 = 2;
    /// `R`: bit 0 = -1; `F_p`: bit 0 = least nonresidue.
    Local(u8),
}

pub(crate) const Q2_MINUS_ONE: u8 = 1;
pub(crate) const Q2_FIVE: u8 = 2;
pub(crate) const Q2_TWO: u8 = 4;
pub(crate) const QP_UNIT: u8 = 1;
pub(crate) const QP_UNIFORMIZER: u8 = 2;

impl SquareClass {
    pub fn one(field: BaseField) -> Self {
        let repr = match field {
            BaseField::Rationals => Repr::Global { value: BigInt::one(), primes: Vec::new() },
            _ => Repr::Local(0),
        };
        SquareClass { field, repr }
    }

    pub fn minus_one(field: BaseField) -> Self {
        sqclass_int(field, &BigInt::from(-1)).expect("-1 is a unit in every supported field")
    }

    pub fn from_i64(field: BaseField, a: i64) -> Result<Self> {
        sqclass_int(field, &BigInt::from(a))
    }

    pub fn parse(field: BaseField, s: &str) -> Result<Self> {
        sqclass(field, &parse_rational(s)?)
    }

    pub(crate) fn local(field: BaseField, bits: u8) -> Self {
        debug_assert!(field.is_local());
        SquareClass { field, repr: Repr::Local(bits) }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn is_trivial(&self) -> bool {
        match &self.repr {
            Repr::Global { value, .. } => value.is_one(),
            Repr::Local(b) => *b == 0,
        }
    }

    pub(crate) fn bits(&self) -> u8 {
        match &self.repr {
            Repr::Local(b) => *b,
            Repr::Global { .. } => panic!("bits() of a global class"),
        }
    }

    /// Signed squarefree integer representing a class over Q.
    pub fn global_value(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Global { value, .. } => Some(value),
            Repr::Local(_) => None,
        }
    }

    pub fn global_primes(&self) -> &[BigUint] {
        match &self.repr {
            Repr::Global { primes, .. } => primes,
            Repr::Local(_) => &[],
        }
    }

    pub fn add(&self, other: &SquareClass) -> Result<SquareClass> {
        self.field.ensure_same(other.field)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Global { value: a, primes: pa }, Repr::Global { value: b, primes: pb }) => {
                let primes = symmetric_difference(pa, pb);
                let mut value: BigInt = primes.iter().map(|p| BigInt::from(p.clone())).product();
                if a.is_negative() != b.is_negative() {
                    value = -value;
                }
                Repr::Global { value, primes }
            }
            (Repr::Local(a), Repr::Local(b)) => Repr::Local(a ^ b),
            _ => unreachable!("same field implies same representation"),
        };
        Ok(SquareClass { field: self.field, repr })
    }

    /// `k` times the class in the F_2-vector space.
    pub fn times(&self, k: i64) -> SquareClass {
        if k.rem_euclid(2) == 1 {
            self.clone()
        } else {
            SquareClass::one(self.field)
        }
    }

    pub fn sum<'a>(field: BaseField, items: impl IntoIterator<Item = &'a SquareClass>) -> Result<SquareClass> {
        items.into_iter().try_fold(SquareClass::one(field), |acc, x| acc.add(x))
    }

    /// The canonical integer representative.
    pub fn representative(&self) -> BigInt {
        match (&self.repr, self.field) {
            (Repr::Global { value, .. }, _) => value.clone(),
            (Repr::Local(b), BaseField::Padic(2)) => {
                let mut r = BigInt::one();
                if b & Q2_MINUS_ONE != 0 {
                    r = -r;
                }
                if b & Q2_FIVE != 0 {
                    r *= 5;
                }
                if b & Q2_TWO != 0 {
                    r *= 2;
                }
                r
            }
            (Repr::Local(b), BaseField::Padic(p)) => {
                let mut r = BigInt::one();
                if b & QP_UNIT != 0 {
                    r *= least_nonresidue(p);
                }
                if b & QP_UNIFORMIZER != 0 {
                    r *= p;
                }
                r
            }
            (Repr::Local(b), BaseField::Reals) => {
                if *b != 0 {
                    BigInt::from(-1)
                } else {
                    BigInt::one()
                }
            }
            (Repr::Local(b), BaseField::ResidueField(p)) => {
                if *b != 0 {
                    BigInt::from(least_nonresidue(p))
                } else {
                    BigInt::one()
                }
            }
            (Repr::Local(_), BaseField::Rationals) => unreachable!(),
        }
    }

    /// Image in `K_v*/K_v*^2` for a completion (or residue field) of Q.
    pub fn restrict(&self, target: BaseField) -> Result<SquareClass> {
        if target == self.field {
            return Ok(self.clone());
        }
        match &self.repr {
            Repr::Global { value, .. } => sqclass_int(target, value),
            Repr::Local(_) => Err(Error::FieldMismatch(self.field, target)),
        }
    }

    /// Over `Q_p`: whether the class has odd valuation.
    pub fn has_odd_valuation(&self) -> Result<bool> {
        match self.field {
            BaseField::Padic(2) => Ok(self.bits() & Q2_TWO != 0),
            BaseField::Padic(_) => Ok(self.bits() & QP_UNIFORMIZER != 0),
            f => Err(Error::UnsupportedField(f)),
        }
    }

    /// Over `Q_p` with p odd: the class with the uniformizer removed.
    pub fn unit_part(&self) -> Result<SquareClass> {
        match self.field {
            BaseField::Padic(2) => Err(Error::EvenResidueChar),
            BaseField::Padic(_) => Ok(SquareClass::local(self.field, self.bits() & QP_UNIT)),
            f => Err(Error::UnsupportedField(f)),
        }
    }

    /// Reduction of a unit class of `Q_p` (p odd) to the residue field.
    pub fn residue(&self) -> Result<SquareClass> {
        match self.field {
            BaseField::Padic(2) => Err(Error::EvenResidueChar),
            BaseField::Padic(p) => {
                if self.bits() & QP_UNIFORMIZER != 0 {
                    return Err(Error::NotAUnit(self.to_string()));
                }
                Ok(SquareClass::local(BaseField::ResidueField(p), self.bits() & QP_UNIT))
            }
            f => Err(Error::UnsupportedField(f)),
        }
    }
}

fn symmetric_difference(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j].clone());
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out
}

/// The square class of a nonzero rational in `field`.
pub fn sqclass(field: BaseField, a: &BigRational) -> Result<SquareClass> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if field == BaseField::Rationals {
        let (value, primes) = squarefree_kernel(a)?;
        return Ok(SquareClass { field, repr: Repr::Global { value, primes } });
    }
    sqclass_int(field, &integral_rep(a))
}

pub fn sqclass_int(field: BaseField, a: &BigInt) -> Result<SquareClass> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let bits = match field {
        BaseField::Rationals => return sqclass(field, &BigRational::from_integer(a.clone())),
        BaseField::Reals => u8::from(a.is_negative()),
        BaseField::Padic(2) => {
            let (v, u) = split_valuation(a, &BigUint::from(2u8));
            let r = u.mod_floor(&BigInt::from(8)).to_u8().expect("small");
            let unit = match r {
                1 => 0,
                5 => Q2_FIVE,
                7 => Q2_MINUS_ONE,
                3 => Q2_MINUS_ONE | Q2_FIVE,
                _ => unreachable!("odd residue"),
            };
            unit | if v % 2 == 1 { Q2_TWO } else { 0 }
        }
        BaseField::Padic(p) => {
            let (v, u) = split_valuation(a, &BigUint::from(p));
            let unit = if jacobi(&u, &BigUint::from(p)) == -1 { QP_UNIT } else { 0 };
            unit | if v % 2 == 1 { QP_UNIFORMIZER } else { 0 }
        }
        BaseField::ResidueField(p) => match jacobi(a, &BigUint::from(p)) {
            0 => return Err(Error::NotAUnit(format!("{a} mod {p}"))),
            -1 => 1,
            _ => 0,
        },
    };
    Ok(SquareClass::local(field, bits))
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}
