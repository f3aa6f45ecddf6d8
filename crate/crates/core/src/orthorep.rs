//! Orthogonal Galois representations modelled as sums of quadratic characters and
//! hyperbolic summands, with their Stiefel-Whitney classes.

use num_rational::BigRational;

use crate::arith::binom2_odd;
use crate::coh::{boundary, cbar1, cup, sqclass, BaseField, CharClass, H2Class, SquareClass, TruncClass};
use crate::error::{Error, Result};
use crate::quadform::{diagonalize, QuadSpace};

/// A summand `W ⊕ W^∨` of rank `2 * rank` with `det W` given as a character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperbolic {
    pub det: CharClass,
    pub rank: u32,
}

/// An orthogonal representation `⊕ χ_i ⊕ ⊕ (W_j ⊕ W_j^∨)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthRep {
    field: BaseField,
    chars: Vec<SquareClass>,
    hyps: Vec<Hyperbolic>,
}

impl OrthRep {
    pub fn new(field: BaseField, chars: Vec<SquareClass>, hyps: Vec<Hyperbolic>) -> Result<Self> {
        for c in &chars {
            field.ensure_same(c.field())?;
        }
        for h in &hyps {
            field.ensure_same(h.det.field())?;
        }
        Ok(OrthRep { field, chars, hyps })
    }

    pub fn from_chars(field: BaseField, chars: Vec<SquareClass>) -> Result<Self> {
        Self::new(field, chars, Vec::new())
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn chars(&self) -> &[SquareClass] {
        &self.chars
    }

    pub fn hyps(&self) -> &[Hyperbolic] {
        &self.hyps
    }

    pub fn dim(&self) -> usize {
        self.chars.len() + 2 * self.hyps.iter().map(|h| h.rank as usize).sum::<usize>()
    }

    pub fn direct_sum(&self, other: &OrthRep) -> Result<OrthRep> {
        self.field.ensure_same(other.field)?;
        let mut chars = self.chars.clone();
        chars.extend(other.chars.iter().cloned());
        let mut hyps = self.hyps.clone();
        hyps.extend(other.hyps.iter().cloned());
        Ok(OrthRep { field: self.field, chars, hyps })
    }

    /// `sw1 = det`; hyperbolic summands have trivial determinant.
    pub fn sw1(&self) -> SquareClass {
        SquareClass::sum(self.field, &self.chars).expect("chars share the field")
    }

    /// `Σ_{i<j} χ_i ∪ χ_j + Σ c̄_1(det W)`.
    pub fn sw2(&self) -> Result<H2Class> {
        let mut acc = H2Class::zero(self.field);
        for i in 0..self.chars.len() {
            for j in i + 1..self.chars.len() {
                acc = acc.add(&cup(&self.chars[i], &self.chars[j])?)?;
            }
        }
        for h in &self.hyps {
            acc = acc.add(&cbar1(&h.det)?)?;
        }
        Ok(acc)
    }

    /// Whitney product of the total classes of the summands.
    pub fn sw_total(&self) -> Result<TruncClass> {
        let mut acc = TruncClass::one(self.field);
        for c in &self.chars {
            acc = acc.mul(&TruncClass::linear(c))?;
        }
        for h in &self.hyps {
            acc = acc.mul(&TruncClass::quadratic(&cbar1(&h.det)?))?;
        }
        Ok(acc)
    }

    /// `V ⊗ χ`. A hyperbolic summand stays hyperbolic with `det(W ⊗ χ) = det W · χ^{rank W}`.
    pub fn twist(&self, chi: &SquareClass) -> Result<OrthRep> {
        self.field.ensure_same(chi.field())?;
        let chars = self.chars.iter().map(|c| c.add(chi)).collect::<Result<Vec<_>>>()?;
        let hyps = self
            .hyps
            .iter()
            .map(|h| {
                Ok(Hyperbolic { det: h.det.twist_quadratic(&chi.times(i64::from(h.rank)))?, rank: h.rank })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OrthRep { field: self.field, chars, hyps })
    }

    /// `sw2(V ⊗ χ) = sw2(V) + (n-1) det V ∪ χ + C(n,2) χ ∪ χ`.
    pub fn twist_sw2_formula(&self, chi: &SquareClass) -> Result<H2Class> {
        let n = self.dim() as i64;
        self.sw2()?
            .add(&cup(&self.sw1(), chi)?.times(n - 1))?
            .add(&cup(chi, chi)?.times(i64::from(binom2_odd(n))))
    }
}

/// `sw2` of a graded representation with middle part `v0` and pieces `V^q` (q < 0) known
/// through their determinants: `sw2(V0) + Σ c̄_1(det V^q)`.
pub fn graded_sw2(v0: &OrthRep, lower: &[(i32, CharClass)]) -> Result<H2Class> {
    let mut acc = v0.sw2()?;
    for (q, det) in lower {
        if *q >= 0 {
            return Err(Error::Parse(format!("graded pieces must sit in negative degree, got {q}")));
        }
        acc = acc.add(&cbar1(det)?)?;
    }
    Ok(acc)
}

/// The same class as a Whitney product `w(V0) Π (1 + c̄_1(det V^q))^{(-1)^q}`.
pub fn graded_sw_total(v0: &OrthRep, lower: &[(i32, CharClass)]) -> Result<TruncClass> {
    let mut acc = v0.sw_total()?;
    for (q, det) in lower {
        let piece = TruncClass::quadratic(&cbar1(det)?).pow(if q % 2 == 0 { 1 } else { -1 })?;
        acc = acc.mul(&piece)?;
    }
    Ok(acc)
}

/// `V = V0 ⊕ V1 ⊗ χ` over `Q_p` (p odd) with `V0`, `V1` unramified and `χ` of odd valuation.
#[derive(Debug, Clone)]
pub struct TameRep {
    p: u64,
    v0: Vec<SquareClass>,
    v1: Vec<SquareClass>,
    chi: SquareClass,
}

impl TameRep {
    pub fn new(p: u64, v0: Vec<SquareClass>, v1: Vec<SquareClass>, chi: SquareClass) -> Result<Self> {
        let field = BaseField::padic(p)?;
        if p == 2 {
            return Err(Error::EvenResidueChar);
        }
        for c in v0.iter().chain(&v1) {
            field.ensure_same(c.field())?;
            if c.has_odd_valuation()? {
                return Err(Error::NotUnramified);
            }
        }
        field.ensure_same(chi.field())?;
        if !chi.has_odd_valuation()? {
            return Err(Error::NotRamified);
        }
        Ok(TameRep { p, v0, v1, chi })
    }

    pub fn field(&self) -> BaseField {
        BaseField::Padic(self.p)
    }

    pub fn assemble(&self) -> OrthRep {
        let mut chars = self.v0.clone();
        for c in &self.v1 {
            chars.push(c.add(&self.chi).expect("same field"));
        }
        OrthRep { field: self.field(), chars, hyps: Vec::new() }
    }

    /// `C(r,2){-1} + det V1 + (r odd) det V / χ` in `H^1(F_p, Z/2)`, with `r = dim V1`.
    pub fn boundary_formula(&self) -> Result<SquareClass> {
        let f = self.field();
        let r = self.v1.len() as i64;
        let residue_field = BaseField::ResidueField(self.p);
        let mut acc = SquareClass::minus_one(residue_field).times(i64::from(binom2_odd(r)));
        acc = acc.add(&SquareClass::sum(f, &self.v1)?.residue()?)?;
        if r % 2 == 1 {
            let det_over_chi = self.assemble().sw1().add(&self.chi)?;
            acc = acc.add(&det_over_chi.residue()?)?;
        }
        Ok(acc)
    }

    pub fn boundary_direct(&self) -> Result<SquareClass> {
        boundary(&self.assemble().sw2()?)
    }
}

pub fn tame_boundary_sw2(p: u64, v0: &[SquareClass], v1: &[SquareClass], chi: &SquareClass) -> Result<SquareClass> {
    TameRep::new(p, v0.to_vec(), v1.to_vec(), chi.clone())?.boundary_formula()
}

/// A diagonal form over `Q_p` split as `<u_1..u_s> ⊥ p<u'_1..u'_r>` with units `u`, `u'`.
#[derive(Debug, Clone)]
pub struct JordanDiag {
    p: u64,
    units: Vec<SquareClass>,
    scaled_units: Vec<SquareClass>,
}

impl JordanDiag {
    /// Entries must have `p`-adic valuation 0 or 1.
    pub fn from_entries(p: u64, entries: &[BigRational]) -> Result<Self> {
        let field = BaseField::padic(p)?;
        if p == 2 {
            return Err(Error::EvenResidueChar);
        }
        let pb = num_bigint::BigUint::from(p);
        let mut units = Vec::new();
        let mut scaled_units = Vec::new();
        for e in entries {
            if num_traits::Zero::is_zero(e) {
                return Err(Error::ZeroInput);
            }
            let vn = crate::arith::split_valuation(e.numer(), &pb).0 as i64;
            let vd = crate::arith::split_valuation(e.denom(), &pb).0 as i64;
            let v = vn - vd;
            let class = sqclass(field, e)?;
            match v {
                0 => units.push(class),
                1 => scaled_units.push(class.unit_part()?),
                _ => return Err(Error::BadValuation(v)),
            }
        }
        Ok(JordanDiag { p, units, scaled_units })
    }

    /// Square classes are already normalised to valuation 0 or 1.
    pub fn from_quadspace(d: &QuadSpace, p: u64) -> Result<Self> {
        let field = BaseField::padic(p)?;
        if p == 2 {
            return Err(Error::EvenResidueChar);
        }
        let form = diagonalize(&d.with_field(field)?)?;
        let mut units = Vec::new();
        let mut scaled_units = Vec::new();
        for c in form.entries() {
            if c.has_odd_valuation()? {
                scaled_units.push(c.unit_part()?);
            } else {
                units.push(c.clone());
            }
        }
        Ok(JordanDiag { p, units, scaled_units })
    }

    fn field(&self) -> BaseField {
        BaseField::Padic(self.p)
    }

    pub fn entries(&self) -> Vec<SquareClass> {
        let f = self.field();
        let pi = SquareClass::from_i64(f, self.p as i64).expect("p is nonzero");
        let mut out = self.units.clone();
        out.extend(self.scaled_units.iter().map(|u| u.add(&pi).expect("same field")));
        out
    }

    /// `C(r,2){-1} + disc(L̄_1) + (r odd) disc D / {p}` with `r` the rank of the `p`-scaled part.
    pub fn boundary_formula(&self) -> Result<SquareClass> {
        let f = self.field();
        let r = self.scaled_units.len() as i64;
        let rf = BaseField::ResidueField(self.p);
        let mut acc = SquareClass::minus_one(rf).times(i64::from(binom2_odd(r)));
        acc = acc.add(&SquareClass::sum(f, &self.scaled_units)?.residue()?)?;
        if r % 2 == 1 {
            let disc = SquareClass::sum(f, &self.entries())?;
            let p = SquareClass::from_i64(f, self.p as i64)?;
            acc = acc.add(&disc.add(&p)?.residue()?)?;
        }
        Ok(acc)
    }

    pub fn boundary_direct(&self) -> Result<SquareClass> {
        let entries = self.entries();
        let mut acc = H2Class::zero(self.field());
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                acc = acc.add(&cup(&entries[i], &entries[j])?)?;
            }
        }
        boundary(&acc)
    }
}

/// `∂ hw2(D)` over `Q_p` through the Jordan splitting formula.
pub fn tame_boundary_hw2(d: &QuadSpace, p: u64) -> Result<SquareClass> {
    JordanDiag::from_quadspace(d, p)?.boundary_formula()
}
