//! Non-degenerate quadratic spaces, diagonalization and the Hasse-Witt classes.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::arith::{binom2_odd, height, parse_rational};
use crate::coh::{cup, minus_one_power, sqclass, BaseField, H2Class, SquareClass, TruncClass};
use crate::error::{Error, Result};
use crate::linalg::QMat;

/// A quadratic space given by a symmetric Gram matrix with rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSpace {
    gram: QMat,
    field: BaseField,
}

impl QuadSpace {
    pub fn new(gram: QMat, field: BaseField) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if matches!(field, BaseField::ResidueField(_)) {
            return Err(Error::UnsupportedField(field));
        }
        if gram.det().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(QuadSpace { gram, field })
    }

    pub fn over_q(gram: QMat) -> Result<Self> {
        Self::new(gram, BaseField::Rationals)
    }

    pub fn diagonal(entries: &[BigRational], field: BaseField) -> Result<Self> {
        Self::new(QMat::diagonal(entries), field)
    }

    /// Reads a JSON array of rows; entries are numbers or `"p/q"` strings.
    pub fn from_json(text: &str, field: BaseField) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = v.as_array().ok_or_else(|| Error::Parse("gram must be an array of rows".into()))?;
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| Error::Parse("gram row must be an array".into()))?;
            let parsed = row
                .iter()
                .map(|x| match x {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => parse_rational(&n.to_string()),
                    _ => Err(Error::Parse(format!("bad gram entry {x}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if parsed.len() != rows.len() {
                return Err(Error::Parse("gram matrix must be square".into()));
            }
            out.push(parsed);
        }
        Self::new(QMat::from_rows(out), field)
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn with_field(&self, field: BaseField) -> Result<Self> {
        Self::new(self.gram.clone(), field)
    }

    pub fn orthogonal_sum(&self, other: &QuadSpace) -> Result<Self> {
        self.field.ensure_same(other.field)?;
        Ok(QuadSpace { gram: QMat::block_diag(&[&self.gram, &other.gram]), field: self.field })
    }

    pub fn scaled(&self, a: &BigRational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(QuadSpace { gram: self.gram.scale(a), field: self.field })
    }

    /// Change of basis: the space with Gram matrix `P^T G P`.
    pub fn transformed(&self, p: &QMat) -> Result<Self> {
        Self::new(&(&p.transpose() * &self.gram) * p, self.field)
    }

    /// `m` copies of the hyperbolic plane.
    pub fn hyperbolic(m: usize, field: BaseField) -> Self {
        let h = QMat::from_i64(&[&[0, 1], &[1, 0]]);
        let blocks: Vec<&QMat> = std::iter::repeat(&h).take(m).collect();
        QuadSpace { gram: QMat::block_diag(&blocks), field }
    }
}

/// Pivot selection for symmetric Gaussian elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotStrategy {
    First,
    Last,
    SmallestHeight,
}

/// Raw output of diagonalization: `basis^T G basis = diag(entries)`.
#[derive(Debug, Clone)]
pub struct Diagonalization {
    pub entries: Vec<BigRational>,
    pub basis: QMat,
}

pub fn diagonalize_with(d: &QuadSpace, strategy: PivotStrategy) -> Result<Diagonalization> {
    let n = d.dim();
    let mut a = d.gram.clone();
    let mut basis = QMat::identity(n);
    let mut entries = Vec::with_capacity(n);
    for k in 0..n {
        let diag: Vec<usize> = (k..n).filter(|&i| !a.get(i, i).is_zero()).collect();
        let pivot = match strategy {
            PivotStrategy::First => diag.first().copied(),
            PivotStrategy::Last => diag.last().copied(),
            PivotStrategy::SmallestHeight => diag.iter().copied().min_by_key(|&i| height(a.get(i, i))),
        };
        let pivot = match pivot {
            Some(p) => p,
            None => {
                // Zero diagonal: e_i + e_j has value 2 a_ij.
                let (i, j) = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a.get(i, j).is_zero())
                    .ok_or(Error::Degenerate)?;
                add_row_col(&mut a, &mut basis, i, j, &BigRational::one());
                i
            }
        };
        swap_row_col(&mut a, &mut basis, k, pivot);
        let piv = a.get(k, k).clone();
        for i in k + 1..n {
            if a.get(i, k).is_zero() {
                continue;
            }
            let f = -(a.get(i, k) / &piv);
            add_row_col(&mut a, &mut basis, i, k, &f);
        }
        entries.push(piv);
    }
    Ok(Diagonalization { entries, basis })
}

/// `v_i += f v_j` applied as a congruence.
fn add_row_col(a: &mut QMat, basis: &mut QMat, i: usize, j: usize, f: &BigRational) {
    let n = a.rows();
    for c in 0..n {
        let v = a.get(i, c) + f * a.get(j, c);
        a.set(i, c, v);
    }
    for r in 0..n {
        let v = a.get(r, i) + f * a.get(r, j);
        a.set(r, i, v);
    }
    for r in 0..n {
        let v = basis.get(r, i) + f * basis.get(r, j);
        basis.set(r, i, v);
    }
}

fn swap_row_col(a: &mut QMat, basis: &mut QMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = a.rows();
    a.swap_rows(i, j);
    for r in 0..n {
        let (x, y) = (a.get(r, i).clone(), a.get(r, j).clone());
        a.set(r, i, y);
        a.set(r, j, x);
        let (x, y) = (basis.get(r, i).clone(), basis.get(r, j).clone());
        basis.set(r, i, y);
        basis.set(r, j, x);
    }
}

pub fn diagonalize(d: &QuadSpace) -> Result<DiagForm> {
    diagonalize_by(d, PivotStrategy::SmallestHeight)
}

pub fn diagonalize_by(d: &QuadSpace, strategy: PivotStrategy) -> Result<DiagForm> {
    let raw = diagonalize_with(d, strategy)?;
    let entries = raw.entries.iter().map(|e| sqclass(d.field, e)).collect::<Result<Vec<_>>>()?;
    Ok(DiagForm { field: d.field, entries })
}

/// A diagonal form `<a_1, ..., a_n>` recorded by square classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagForm {
    field: BaseField,
    entries: Vec<SquareClass>,
}

impl DiagForm {
    pub fn new(field: BaseField, entries: Vec<SquareClass>) -> Result<Self> {
        for e in &entries {
            field.ensure_same(e.field())?;
        }
        Ok(DiagForm { field, entries })
    }

    pub fn from_i64(field: BaseField, entries: &[i64]) -> Result<Self> {
        let e = entries.iter().map(|&a| SquareClass::from_i64(field, a)).collect::<Result<Vec<_>>>()?;
        Ok(DiagForm { field, entries: e })
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn entries(&self) -> &[SquareClass] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn disc(&self) -> SquareClass {
        SquareClass::sum(self.field, &self.entries).expect("entries share the field")
    }

    pub fn hw1(&self) -> SquareClass {
        self.disc()
    }

    /// `Σ_{i<j} {a_i} ∪ {a_j}`.
    pub fn hw2(&self) -> Result<H2Class> {
        let mut acc = H2Class::zero(self.field);
        for i in 0..self.entries.len() {
            for j in i + 1..self.entries.len() {
                acc = acc.add(&cup(&self.entries[i], &self.entries[j])?)?;
            }
        }
        Ok(acc)
    }

    /// `Π (1 + {a_i})`, computed by the Whitney product.
    pub fn hw_total(&self) -> Result<TruncClass> {
        self.entries
            .iter()
            .try_fold(TruncClass::one(self.field), |acc, a| acc.mul(&TruncClass::linear(a)))
    }

    pub fn scaled(&self, a: &SquareClass) -> Result<DiagForm> {
        let entries = self.entries.iter().map(|e| e.add(a)).collect::<Result<Vec<_>>>()?;
        Ok(DiagForm { field: self.field, entries })
    }

    pub fn orthogonal_sum(&self, other: &DiagForm) -> Result<DiagForm> {
        self.field.ensure_same(other.field)?;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(DiagForm { field: self.field, entries })
    }
}

/// Total Hasse-Witt class of the `a`-scaled form, by the closed formula
/// `1 + n{a} + C(n,2){a,a} + disc + (n-1){a,disc} + hw2`.
pub fn scale_hw(d: &DiagForm, a: &SquareClass) -> Result<TruncClass> {
    d.field.ensure_same(a.field())?;
    let n = d.dim() as i64;
    let disc = d.disc();
    let s1 = a.times(n).add(&disc)?;
    let s2 = cup(a, a)?
        .times(i64::from(binom2_odd(n)))
        .add(&cup(a, &disc)?.times(n - 1))?
        .add(&d.hw2()?)?;
    TruncClass::new(s1, s2)
}

/// Passes from `D` to `W^⊥ / W` for a totally isotropic `W` (columns of `w`).
/// Returns the reduced space and `r = dim W`.
pub fn isotropic_reduce(d: &QuadSpace, w: &QMat) -> Result<(QuadSpace, usize)> {
    if w.rows() != d.dim() {
        return Err(Error::DimensionMismatch { expected: d.dim(), got: w.rows() });
    }
    let r = w.cols();
    if w.rank() != r {
        return Err(Error::NotIndependent);
    }
    let gw = &d.gram * w;
    if !(&w.transpose() * &gw).is_zero() {
        return Err(Error::NotIsotropic);
    }
    let perp = gw.transpose().kernel();
    let complement = w.complement_in(&perp);
    let gram = &(&complement.transpose() * &d.gram) * &complement;
    Ok((QuadSpace::new(gram, d.field)?, r))
}

/// `hw2(D0) + r{-1, disc D0} + C(r,2){-1,-1}`: the class predicted for a form
/// containing `r` hyperbolic planes orthogonal to `D0`.
pub fn hyperbolic_extension_hw2(d0: &DiagForm, r: i64) -> Result<H2Class> {
    let m = SquareClass::minus_one(d0.field);
    d0.hw2()?
        .add(&cup(&m, &d0.disc())?.times(r))?
        .add(&cup(&m, &m)?.times(i64::from(binom2_odd(r))))
}

/// A graded quadratic space: the middle part plus the dimensions of the negative degrees.
/// Degree `q < 0` is paired with degree `-q` hyperbolically.
#[derive(Debug, Clone)]
pub struct GradedQuadSpace {
    pub middle: QuadSpace,
    pub lower: Vec<(i32, usize)>,
}

impl GradedQuadSpace {
    pub fn new(middle: QuadSpace, lower: Vec<(i32, usize)>) -> Result<Self> {
        if let Some(&(q, _)) = lower.iter().find(|(q, _)| *q >= 0) {
            return Err(Error::Parse(format!("graded pieces must sit in negative degree, got {q}")));
        }
        Ok(GradedQuadSpace { middle, lower })
    }

    /// `Σ_{q<0} (-1)^q dim D^q`.
    pub fn euler_lower(&self) -> i64 {
        self.lower.iter().map(|&(q, n)| if q % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// The ungraded form `⊕ D^q`, with `D^q ⊕ D^{-q}` hyperbolic.
    pub fn total_space(&self) -> Result<QuadSpace> {
        let n: usize = self.lower.iter().map(|&(_, n)| n).sum();
        self.middle.orthogonal_sum(&QuadSpace::hyperbolic(n, self.middle.field))
    }
}

/// `(hw1, hw2)` of a graded space from the closed formulas.
pub fn graded_hw(g: &GradedQuadSpace) -> Result<(SquareClass, H2Class)> {
    let d0 = diagonalize(&g.middle)?;
    let r = g.euler_lower();
    let m = SquareClass::minus_one(d0.field);
    let hw1 = d0.disc().add(&m.times(r))?;
    let hw2 = hyperbolic_extension_hw2(&d0, r)?;
    Ok((hw1, hw2))
}

/// The same class as a Whitney product `hw(D0) (1 + {-1})^r`.
pub fn graded_hw_product(g: &GradedQuadSpace) -> Result<TruncClass> {
    let d0 = diagonalize(&g.middle)?;
    d0.hw_total()?.mul(&minus_one_power(d0.field, g.euler_lower())?)
}

/// `(n+, n-)`: counts of positive and negative diagonal entries.
pub fn signature(d: &QuadSpace) -> Result<(usize, usize)> {
    let raw = diagonalize_with(d, PivotStrategy::SmallestHeight)?;
    let neg = raw.entries.iter().filter(|e| e.is_negative()).count();
    Ok((raw.entries.len() - neg, neg))
}
