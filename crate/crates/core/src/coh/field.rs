use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};

/// The base fields the workbench computes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseField {
    Rationals,
    Padic(u64),
    Reals,
    ResidueField(u64),
}

impl BaseField {
    pub fn padic(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(BaseField::Padic(p))
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    /// Residue fields are restricted to odd characteristic.
    pub fn residue(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            Err(Error::InvalidPrime(p))
        } else if p == 2 {
            Err(Error::EvenResidueChar)
        } else {
            Ok(BaseField::ResidueField(p))
        }
    }

    pub fn is_local(self) -> bool {
        !matches!(self, BaseField::Rationals)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            BaseField::ResidueField(p) => p,
            _ => 0,
        }
    }

    pub fn ensure_same(self, other: BaseField) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self, other))
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Padic(p) => write!(f, "Q_{p}"),
            BaseField::Reals => write!(f, "R"),
            BaseField::ResidueField(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for BaseField {
    type Err = Error;

    /// Accepts `Q`, `R`, `Qp:5`, `Q_5`, `Fp:7`, `F_7`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let prime = |t: &str| -> Result<u64> {
            t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad prime in field {s:?}")))
        };
        match s {
            "Q" => return Ok(BaseField::Rationals),
            "R" => return Ok(BaseField::Reals),
            _ => {}
        }
        if let Some(t) = s.strip_prefix("Qp:").or_else(|| s.strip_prefix("Q_")) {
            return BaseField::padic(prime(t)?);
        }
        if let Some(t) = s.strip_prefix("Fp:").or_else(|| s.strip_prefix("F_")) {
            return BaseField::residue(prime(t)?);
        }
        Err(Error::Parse(format!("unknown field {s:?}")))
    }
}

/// A place of Q: a prime or the real place.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(BigUint),
    Real,
}

impl Place {
    pub fn prime(p: u64) -> Self {
        Place::Finite(BigUint::from(p))
    }

    /// The completion of Q at this place.
    pub fn completion(&self) -> Result<BaseField> {
        match self {
            Place::Real => Ok(BaseField::Reals),
            Place::Finite(p) => {
                let p = p.to_u64().ok_or_else(|| Error::Parse(format!("prime {p} is too large for a field")))?;
                BaseField::padic(p)
            }
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
            (Place::Finite(_), Place::Real) => Ordering::Less,
            (Place::Real, Place::Finite(_)) => Ordering::Greater,
            (Place::Real, Place::Real) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Real => write!(f, "inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "oo" | "∞" | "R") {
            return Ok(Place::Real);
        }
        let p: BigUint = s.parse().map_err(|_| Error::Parse(format!("bad place {s:?}")))?;
        match p.to_u64() {
            Some(small) if !is_prime_u64(small) => Err(Error::InvalidPrime(small)),
            _ => Ok(Place::Finite(p)),
        }
    }
}
