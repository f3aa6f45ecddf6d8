//! Trace forms of étale Q-algebras `Q[x]/(f)` and Serre's comparison with the
//! permutation representation.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coh::{cup, BaseField, H2Class, SquareClass, TruncClass};
use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::poly::Poly;
use crate::quadform::{diagonalize, QuadSpace};

pub const DEFAULT_DEGREE_CAP: usize = 24;

/// `Q[x]/(f)` for a monic squarefree integer polynomial.
#[derive(Debug, Clone)]
pub struct EtaleAlgebra {
    f: Poly,
}

impl EtaleAlgebra {
    pub fn new(f: Poly) -> Result<Self> {
        Self::with_cap(f, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(f: Poly, cap: usize) -> Result<Self> {
        if !f.is_monic() || f.degree() == Some(0) {
            return Err(Error::NotMonic);
        }
        let degree = f.degree().unwrap();
        if degree > cap {
            return Err(Error::DegreeTooLarge { degree, cap });
        }
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Ok(EtaleAlgebra { f })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(Poly::parse(s)?)
    }

    pub fn poly(&self) -> &Poly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap()
    }

    /// Power sums `p_0 .. p_{count-1}` of the roots, by Newton's identities.
    pub fn power_sums(&self, count: usize) -> Vec<BigInt> {
        let n = self.degree();
        let c = self.f.coeffs();
        // Elementary symmetric functions: e_k = (-1)^k c_{n-k}.
        let e: Vec<BigInt> = (0..=n).map(|k| if k % 2 == 0 { c[n - k].clone() } else { -c[n - k].clone() }).collect();
        let mut p: Vec<BigInt> = Vec::with_capacity(count);
        for k in 0..count {
            if k == 0 {
                p.push(BigInt::from(n));
                continue;
            }
            let mut s = BigInt::zero();
            for i in 1..k.min(n + 1) {
                let term = &e[i] * &p[k - i];
                if i % 2 == 1 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            if k <= n {
                let term = &e[k] * BigInt::from(k);
                if k % 2 == 1 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            p.push(s);
        }
        p
    }

    /// Gram matrix `Tr(x^{i+j})` in the power basis.
    pub fn trace_gram(&self) -> QMat {
        let n = self.degree();
        let p = self.power_sums(2 * n - 1);
        QMat::from_fn(n, n, |i, j| BigRational::from_integer(p[i + j].clone()))
    }

    pub fn trace_form(&self) -> Result<QuadSpace> {
        QuadSpace::over_q(self.trace_gram())
    }
}

/// One field factor of an abelian étale algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitFactor {
    /// `Q(√a)`, of dimension 2.
    Quadratic(BigInt),
    /// An abelian field of odd degree (including Q itself); its permutation
    /// representation has trivial `w1` and `w2`.
    OddAbelian(usize),
}

impl SplitFactor {
    pub fn dim(&self) -> usize {
        match self {
            SplitFactor::Quadratic(_) => 2,
            SplitFactor::OddAbelian(d) => *d,
        }
    }
}

impl FromStr for SplitFactor {
    type Err = Error;

    /// `q<a>` for `Q(√a)`, `o<d>` for an odd abelian factor of degree `d`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad split factor {s:?}"));
        if let Some(a) = s.strip_prefix('q') {
            let a: BigInt = a.parse().map_err(|_| bad())?;
            if a.is_zero() || a.is_one() {
                return Err(bad());
            }
            return Ok(SplitFactor::Quadratic(a));
        }
        if let Some(d) = s.strip_prefix('o') {
            let d: usize = d.parse().map_err(|_| bad())?;
            if d % 2 == 0 {
                return Err(bad());
            }
            return Ok(SplitFactor::OddAbelian(d));
        }
        Err(bad())
    }
}

impl fmt::Display for SplitFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitFactor::Quadratic(a) => write!(f, "q{a}"),
            SplitFactor::OddAbelian(d) => write!(f, "o{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianSplitting {
    pub factors: Vec<SplitFactor>,
}

impl AbelianSplitting {
    pub fn parse(s: &str) -> Result<Self> {
        let factors = s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<Vec<_>>>()?;
        Ok(AbelianSplitting { factors })
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(SplitFactor::dim).sum()
    }
}

/// Total Stiefel-Whitney class of the permutation representation, computed from the splitting.
pub fn perm_sw_total(split: &AbelianSplitting) -> Result<TruncClass> {
    let mut acc = TruncClass::one(BaseField::Rationals);
    for f in &split.factors {
        if let SplitFactor::Quadratic(a) = f {
            let a = crate::coh::sqclass_int(BaseField::Rationals, a)?;
            acc = acc.mul(&TruncClass::linear(&a))?;
        }
    }
    Ok(acc)
}

pub fn perm_sw2_oracle(split: &AbelianSplitting) -> Result<H2Class> {
    Ok(perm_sw_total(split)?.s2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SerreStatus {
    Equal,
    NotEqual,
    OracleUnavailable,
}

impl fmt::Display for SerreStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SerreStatus::Equal => "EQUAL",
            SerreStatus::NotEqual => "NOT EQUAL",
            SerreStatus::OracleUnavailable => "ORACLE UNAVAILABLE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SerreReport {
    pub lhs: Option<H2Class>,
    pub rhs: H2Class,
    pub disc: SquareClass,
    pub status: SerreStatus,
}

/// Compares `w2(perm)` with `hw2(trace form) + {2} ∪ {disc}`.
pub fn serre_check(a: &EtaleAlgebra, split: Option<&AbelianSplitting>) -> Result<SerreReport> {
    let form = diagonalize(&a.trace_form()?)?;
    let disc = form.disc();
    let two = SquareClass::from_i64(BaseField::Rationals, 2)?;
    let rhs = form.hw2()?.add(&cup(&two, &disc)?)?;
    let Some(split) = split else {
        return Ok(SerreReport { lhs: None, rhs, disc, status: SerreStatus::OracleUnavailable });
    };
    if split.dim() != a.degree() {
        return Err(Error::DimensionMismatch { expected: a.degree(), got: split.dim() });
    }
    let lhs = perm_sw2_oracle(split)?;
    let status = if lhs == rhs { SerreStatus::Equal } else { SerreStatus::NotEqual };
    Ok(SerreReport { lhs: Some(lhs), rhs, disc, status })
}

/// Squarefree integers `a` with `|a| <= bound`, `a != 0, 1`.
pub fn quadratic_parameters(bound: i64) -> Vec<i64> {
    (-bound..=bound)
        .filter(|&a| a != 0 && a != 1)
        .filter(|&a| {
            let m = a.unsigned_abs();
            (2..=m).take_while(|d| d * d <= m).all(|d| m % (d * d) != 0)
        })
        .collect()
}

/// `Π (x^2 - a_i)` together with its splitting.
pub fn quadratic_product(params: &[i64]) -> Result<(EtaleAlgebra, AbelianSplitting)> {
    let f = params.iter().fold(Poly::constant(BigInt::one()), |acc, &a| acc.mul(&Poly::from_i64(&[-a, 0, 1])));
    let split = AbelianSplitting { factors: params.iter().map(|&a| SplitFactor::Quadratic(a.into())).collect() };
    Ok((EtaleAlgebra::new(f)?, split))
}

#[cfg(test)]
mod tests;
