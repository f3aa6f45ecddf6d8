use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::field::{BaseField, Place};
use super::square::SquareClass;
use crate::arith::{integral_rep, is_prime_u64, jacobi, split_valuation};
use crate::error::{Error, Result};

/// An element of `H^2(K, Z/2)`, the 2-torsion of the Brauer group.
///
/// Over Q a class is the (even) set of places where its local invariant is nonzero.
/// Over a local field it is a single bit; over a finite field it is always zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct H2Class {
    field: BaseField,
    repr: H2Repr,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum H2Repr {
    Global(BTreeSet<Place>),
    Bit(bool),
}

impl H2Class {
    pub fn zero(field: BaseField) -> Self {
        let repr = match field {
            BaseField::Rationals => H2Repr::Global(BTreeSet::new()),
            _ => H2Repr::Bit(false),
        };
        H2Class { field, repr }
    }

    pub fn from_places(places: impl IntoIterator<Item = Place>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in places {
            if !set.insert(p.clone()) {
                set.remove(&p);
            }
        }
        if set.len() % 2 == 1 {
            return Err(Error::OddPlaceCount);
        }
        Ok(H2Class { field: BaseField::Rationals, repr: H2Repr::Global(set) })
    }

    pub fn from_bit(field: BaseField, bit: bool) -> Result<Self> {
        match field {
            BaseField::Rationals => Err(Error::UnsupportedField(field)),
            BaseField::ResidueField(_) if bit => Err(Error::UnsupportedField(field)),
            _ => Ok(H2Class { field, repr: H2Repr::Bit(bit) }),
        }
    }

    /// Parses `0`, `1`, or a comma separated place list such as `{2, inf}`.
    pub fn parse(field: BaseField, s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if field == BaseField::Rationals {
            if t.is_empty() || t == "0" {
                return Ok(H2Class::zero(field));
            }
            let places = t.split(',').map(|p| p.parse::<Place>()).collect::<Result<Vec<_>>>()?;
            return H2Class::from_places(places);
        }
        match t {
            "" | "0" => Ok(H2Class::zero(field)),
            "1" => H2Class::from_bit(field, true),
            _ => Err(Error::Parse(format!("bad H^2 class {s:?} over {field}"))),
        }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            H2Repr::Global(s) => s.is_empty(),
            H2Repr::Bit(b) => !b,
        }
    }

    pub fn places(&self) -> Option<&BTreeSet<Place>> {
        match &self.repr {
            H2Repr::Global(s) => Some(s),
            H2Repr::Bit(_) => None,
        }
    }

    pub fn bit(&self) -> Option<bool> {
        match &self.repr {
            H2Repr::Bit(b) => Some(*b),
            H2Repr::Global(_) => None,
        }
    }

    pub fn add(&self, other: &H2Class) -> Result<H2Class> {
        self.field.ensure_same(other.field)?;
        let repr = match (&self.repr, &other.repr) {
            (H2Repr::Global(a), H2Repr::Global(b)) => H2Repr::Global(a.symmetric_difference(b).cloned().collect()),
            (H2Repr::Bit(a), H2Repr::Bit(b)) => H2Repr::Bit(a ^ b),
            _ => unreachable!("same field implies same representation"),
        };
        Ok(H2Class { field: self.field, repr })
    }

    pub fn times(&self, k: i64) -> H2Class {
        if k.rem_euclid(2) == 1 {
            self.clone()
        } else {
            H2Class::zero(self.field)
        }
    }

    pub fn sum<'a>(field: BaseField, items: impl IntoIterator<Item = &'a H2Class>) -> Result<H2Class> {
        items.into_iter().try_fold(H2Class::zero(field), |acc, x| acc.add(x))
    }

    /// Restriction from Q to a completion.
    pub fn restrict(&self, target: BaseField) -> Result<H2Class> {
        if target == self.field {
            return Ok(self.clone());
        }
        let H2Repr::Global(set) = &self.repr else {
            return Err(Error::FieldMismatch(self.field, target));
        };
        let bit = match target {
            BaseField::Reals => set.contains(&Place::Real),
            BaseField::Padic(p) => set.contains(&Place::prime(p)),
            BaseField::ResidueField(_) => false,
            BaseField::Rationals => unreachable!(),
        };
        H2Class::from_bit(target, bit)
    }
}

impl fmt::Display for H2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            H2Repr::Global(s) if s.is_empty() => write!(f, "0"),
            H2Repr::Global(s) => {
                let parts: Vec<String> = s.iter().map(ToString::to_string).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            H2Repr::Bit(b) => write!(f, "{}", u8::from(*b)),
        }
    }
}

/// The Hilbert symbol `(a, b)_p` of two nonzero integers, as `1` or `-1`.
pub(crate) fn hilbert_int(a: &BigInt, b: &BigInt, place: &Place) -> i8 {
    let p = match place {
        Place::Real => return if a.is_negative() && b.is_negative() { -1 } else { 1 },
        Place::Finite(p) => p,
    };
    let (alpha, u) = split_valuation(a, p);
    let (beta, v) = split_valuation(b, p);
    let (alpha, beta) = (alpha % 2, beta % 2);
    if *p == BigUint::from(2u8) {
        let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u8().expect("small");
        let (u8_, v8) = (m8(&u), m8(&v));
        let eps = |r: u8| u32::from(r % 4 == 3);
        let omega = |r: u8| u32::from(r == 3 || r == 5);
        let e = eps(u8_) * eps(v8) + alpha * omega(v8) + beta * omega(u8_);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let mut s = 1i8;
    if alpha * beta == 1 && (p % 4u8) == BigUint::from(3u8) {
        s = -s;
    }
    if beta == 1 {
        s *= jacobi(&u, p);
    }
    if alpha == 1 {
        s *= jacobi(&v, p);
    }
    s
}

/// The Hilbert symbol of two nonzero rationals at a place of Q.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: &Place) -> Result<i8> {
    if a.numer().sign() == num_bigint::Sign::NoSign || b.numer().sign() == num_bigint::Sign::NoSign {
        return Err(Error::ZeroInput);
    }
    Ok(hilbert_int(&integral_rep(a), &integral_rep(b), place))
}

/// The cup product `{a} ∪ {b}`.
pub fn cup(a: &SquareClass, b: &SquareClass) -> Result<H2Class> {
    let field = a.field();
    field.ensure_same(b.field())?;
    match field {
        BaseField::Rationals => {
            let (va, vb) = (a.global_value().expect("global"), b.global_value().expect("global"));
            let mut places = BTreeSet::new();
            if va.is_negative() && vb.is_negative() {
                places.insert(Place::Real);
            }
            let mut candidates: BTreeSet<&BigUint> = a.global_primes().iter().chain(b.global_primes()).collect();
            let two = BigUint::from(2u8);
            candidates.insert(&two);
            for p in candidates {
                let place = Place::Finite(p.clone());
                if hilbert_int(va, vb, &place) == -1 {
                    places.insert(place);
                }
            }
            H2Class::from_places(places)
        }
        BaseField::Padic(p) => {
            let s = hilbert_int(&a.representative(), &b.representative(), &Place::prime(p));
            H2Class::from_bit(field, s == -1)
        }
        BaseField::Reals => H2Class::from_bit(field, a.bits() & b.bits() & 1 == 1),
        BaseField::ResidueField(_) => Ok(H2Class::zero(field)),
    }
}

/// The class `c_ℓ`, supported at `ℓ` and at infinity.
pub fn c_ell(ell: u64, field: BaseField) -> Result<H2Class> {
    if !is_prime_u64(ell) {
        return Err(Error::InvalidPrime(ell));
    }
    match field {
        BaseField::Rationals => H2Class::from_places([Place::prime(ell), Place::Real]),
        BaseField::Padic(p) => H2Class::from_bit(field, p == ell),
        BaseField::Reals => H2Class::from_bit(field, true),
        BaseField::ResidueField(p) if p == ell => Err(Error::CharacteristicClash { ell, field }),
        BaseField::ResidueField(_) => Ok(H2Class::zero(field)),
    }
}

/// A character `ε · χ_ℓ^k` with `ε` quadratic and `χ_ℓ` the ℓ-adic cyclotomic character.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharClass {
    pub eps: SquareClass,
    pub k: i64,
    pub ell: u64,
}

impl CharClass {
    pub fn new(eps: SquareClass, k: i64, ell: u64) -> Self {
        CharClass { eps, k, ell }
    }

    pub fn quadratic(eps: SquareClass, ell: u64) -> Self {
        CharClass { eps, k: 0, ell }
    }

    pub fn field(&self) -> BaseField {
        self.eps.field()
    }

    /// Reduction mod 2: the quadratic character `det`.
    pub fn mod2(&self) -> SquareClass {
        self.eps.clone()
    }

    pub fn mul(&self, other: &CharClass) -> Result<CharClass> {
        if self.ell != other.ell {
            return Err(Error::Parse(format!("characters for ell={} and ell={}", self.ell, other.ell)));
        }
        Ok(CharClass { eps: self.eps.add(&other.eps)?, k: self.k + other.k, ell: self.ell })
    }

    pub fn twist_quadratic(&self, chi: &SquareClass) -> Result<CharClass> {
        Ok(CharClass { eps: self.eps.add(chi)?, k: self.k, ell: self.ell })
    }
}

impl fmt::Display for CharClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "{}", self.eps)
        } else {
            write!(f, "{}*chi_{}^{}", self.eps, self.ell, self.k)
        }
    }
}

/// The class `c̄_1(ε χ_ℓ^k) = {ε} ∪ {-1} + k c_ℓ`.
pub fn cbar1(chi: &CharClass) -> Result<H2Class> {
    let field = chi.field();
    let base = cup(&chi.eps, &SquareClass::minus_one(field))?;
    if chi.k.rem_euclid(2) == 0 {
        return Ok(base);
    }
    base.add(&c_ell(chi.ell, field)?)
}

/// The residue map `H^2(Q_p, Z/2) → H^1(F_p, Z/2)` for odd `p`.
pub fn boundary(x: &H2Class) -> Result<SquareClass> {
    match x.field() {
        BaseField::Padic(2) => Err(Error::EvenResidueChar),
        BaseField::Padic(p) => {
            let f = BaseField::ResidueField(p);
            Ok(if x.bit() == Some(true) {
                SquareClass::local(f, 1)
            } else {
                SquareClass::one(f)
            })
        }
        f => Err(Error::UnsupportedField(f)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q(a: i64) -> SquareClass {
        SquareClass::from_i64(BaseField::Rationals, a).unwrap()
    }

    #[test]
    fn known_symbols() {
        assert_eq!(cup(&q(-1), &q(-1)).unwrap().to_string(), "{2, inf}");
        assert_eq!(cup(&q(2), &q(3)).unwrap().to_string(), "{2, 3}");
        assert!(cup(&q(2), &q(-1)).unwrap().is_zero());
        assert_eq!(c_ell(5, BaseField::Rationals).unwrap().to_string(), "{5, inf}");
        assert_eq!(c_ell(2, BaseField::Rationals).unwrap(), cup(&q(-1), &q(-1)).unwrap());
    }

    #[test]
    fn c_ell_errors() {
        assert_eq!(
            c_ell(7, BaseField::ResidueField(7)),
            Err(Error::CharacteristicClash { ell: 7, field: BaseField::ResidueField(7) })
        );
        assert_eq!(c_ell(9, BaseField::Rationals), Err(Error::InvalidPrime(9)));
    }

    #[test]
    fn boundary_examples() {
        let f = BaseField::Padic(5);
        let x = cup(&SquareClass::from_i64(f, 5).unwrap(), &SquareClass::from_i64(f, 2).unwrap()).unwrap();
        assert_eq!(boundary(&x).unwrap(), SquareClass::from_i64(BaseField::ResidueField(5), 2).unwrap());
        let y = H2Class::from_bit(BaseField::Padic(2), true).unwrap();
        assert_eq!(boundary(&y), Err(Error::EvenResidueChar));
    }

    #[test]
    fn parse_and_display() {
        let x = H2Class::parse(BaseField::Rationals, "{inf, 2}").unwrap();
        assert_eq!(x.to_string(), "{2, inf}");
        assert_eq!(H2Class::parse(BaseField::Rationals, "{3}"), Err(Error::OddPlaceCount));
        assert_eq!(hilbert_symbol(&rat(0), &rat(1), &Place::Real), Err(Error::ZeroInput));
    }
}
