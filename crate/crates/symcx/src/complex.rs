//! Bounded complexes of finite dimensional Q-vector spaces and graded maps between them.
//!
//! The dual of `Q^k` is `Q^k` with the dual basis, so `D` acts on matrices by transposition
//! and the canonical map to the bidual is the identity matrix.

use std::collections::BTreeMap;

use num_rational::BigRational;
use swhw_core::linalg::QMat;

use crate::error::{Error, Result};

fn sign(k: i64) -> BigRational {
    BigRational::from_integer(if k.rem_euclid(2) == 0 { 1.into() } else { (-1).into() })
}

fn signed(m: QMat, k: i64) -> QMat {
    if k.rem_euclid(2) == 0 {
        m
    } else {
        -&m
    }
}

/// A bounded complex `K^lo -> ... -> K^{hi-1}` with differentials `d^i: K^i -> K^{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cx {
    lo: i32,
    dims: Vec<usize>,
    diffs: Vec<QMat>,
}

impl Cx {
    pub fn zero() -> Self {
        Cx { lo: 0, dims: Vec::new(), diffs: Vec::new() }
    }

    /// `diffs[j]` is the differential out of degree `lo + j`; there are `dims.len() - 1` of them.
    pub fn new(lo: i32, dims: Vec<usize>, diffs: Vec<QMat>) -> Result<Self> {
        if diffs.len() != dims.len().saturating_sub(1) {
            return Err(Error::Shape(format!("{} spaces need {} differentials", dims.len(), dims.len().saturating_sub(1))));
        }
        for (j, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[j + 1], dims[j]) {
                return Err(Error::Shape(format!("d^{} has shape {:?}", lo + j as i32, d.shape())));
            }
        }
        let k = Cx { lo, dims, diffs };
        k.check()?;
        Ok(k.trimmed())
    }

    /// A single space of dimension `dim` in degree `deg`.
    pub fn concentrated(deg: i32, dim: usize) -> Self {
        Cx { lo: deg, dims: vec![dim], diffs: Vec::new() }.trimmed()
    }

    /// `K^deg -> K^{deg+1}` given by `d`.
    pub fn two_term(deg: i32, d: QMat) -> Self {
        let (r, c) = d.shape();
        Cx { lo: deg, dims: vec![c, r], diffs: vec![d] }.trimmed()
    }

    /// Builds the complex on degrees `lo..hi` from dimension and differential functions.
    pub fn from_fn(lo: i32, hi: i32, dim: impl Fn(i32) -> usize, d: impl Fn(i32) -> QMat) -> Self {
        if hi <= lo {
            return Cx::zero();
        }
        let dims: Vec<usize> = (lo..hi).map(&dim).collect();
        let diffs: Vec<QMat> = (lo..hi - 1).map(&d).collect();
        Cx { lo, dims, diffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.dims.last() == Some(&0) {
            self.dims.pop();
            self.diffs.pop();
        }
        while self.dims.first() == Some(&0) {
            self.dims.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.dims.is_empty() {
            return Cx::zero();
        }
        self
    }

    pub fn check(&self) -> Result<()> {
        for i in self.lo..self.hi() - 1 {
            if !(&self.d(i + 1) * &self.d(i)).is_zero() {
                return Err(Error::NotAComplex(i + 1));
            }
        }
        Ok(())
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// One past the top nonzero degree.
    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, i: i32) -> usize {
        if i < self.lo || i >= self.hi() {
            0
        } else {
            self.dims[(i - self.lo) as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn d(&self, i: i32) -> QMat {
        if i >= self.lo && i + 1 < self.hi() {
            self.diffs[(i - self.lo) as usize].clone()
        } else {
            QMat::zeros(self.dim(i + 1), self.dim(i))
        }
    }

    pub fn euler_char(&self) -> i64 {
        (self.lo..self.hi()).map(|i| if i % 2 == 0 { self.dim(i) as i64 } else { -(self.dim(i) as i64) }).sum()
    }

    /// Columns representing a basis of `H^i`.
    pub fn cohomology_basis(&self, i: i32) -> QMat {
        let z = self.d(i).kernel();
        let b = self.d(i - 1).column_basis();
        b.complement_in(&z)
    }

    pub fn cohomology_dim(&self, i: i32) -> usize {
        let n = self.dim(i);
        n - self.d(i).rank() - self.d(i - 1).rank()
    }

    pub fn is_acyclic(&self) -> bool {
        (self.lo..self.hi()).all(|i| self.cohomology_dim(i) == 0)
    }

    /// `K[n]^i = K^{i+n}` with differential `(-1)^n d`.
    pub fn shift(&self, n: i32) -> Cx {
        Cx::from_fn(self.lo - n, self.hi() - n, |i| self.dim(i + n), |i| signed(self.d(i + n), n as i64))
    }

    pub fn direct_sum(&self, other: &Cx) -> Cx {
        let (lo, hi) = span(&[self, other]);
        Cx::from_fn(lo, hi, |i| self.dim(i) + other.dim(i), |i| QMat::block_diag(&[&self.d(i), &other.d(i)]))
    }

    /// The subcomplex of degrees `> k`.
    pub fn above(&self, k: i32) -> Cx {
        Cx::from_fn(self.lo.max(k + 1), self.hi(), |i| self.dim(i), |i| self.d(i))
    }

    pub fn identity(&self) -> GMap {
        GMap::from_fn(self, self, 0, |i| QMat::identity(self.dim(i)))
    }

    pub fn zero_map(&self, to: &Cx, deg: i32) -> GMap {
        GMap::from_fn(self, to, deg, |i| QMat::zeros(to.dim(i + deg), self.dim(i)))
    }
}

/// Smallest degree range containing the given complexes.
pub fn span(parts: &[&Cx]) -> (i32, i32) {
    let nonzero: Vec<&&Cx> = parts.iter().filter(|k| !k.is_zero()).collect();
    if nonzero.is_empty() {
        return (0, 0);
    }
    let lo = nonzero.iter().map(|k| k.lo()).min().unwrap();
    let hi = nonzero.iter().map(|k| k.hi()).max().unwrap();
    (lo, hi)
}

/// A family of maps `h^i: K^i -> M^{i+deg}`. Chain maps have degree 0, homotopies degree -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GMap {
    pub deg: i32,
    comps: BTreeMap<i32, QMat>,
}

pub type CxMap = GMap;
pub type Homotopy = GMap;

impl GMap {
    pub fn from_fn(src: &Cx, tgt: &Cx, deg: i32, mut f: impl FnMut(i32) -> QMat) -> Self {
        let comps = (src.lo()..src.hi())
            .map(|i| {
                let m = f(i);
                assert_eq!(m.shape(), (tgt.dim(i + deg), src.dim(i)), "component {i} has the wrong shape");
                (i, m)
            })
            .collect();
        GMap { deg, comps }
    }

    /// Builds from explicit components, checking their shapes.
    pub fn new(src: &Cx, tgt: &Cx, deg: i32, comps: BTreeMap<i32, QMat>) -> Result<Self> {
        for (&i, m) in &comps {
            if m.shape() != (tgt.dim(i + deg), src.dim(i)) {
                return Err(Error::Shape(format!("component {i} has shape {:?}", m.shape())));
            }
        }
        Ok(GMap::from_fn(src, tgt, deg, |i| comps.get(&i).cloned().unwrap_or_else(|| QMat::zeros(tgt.dim(i + deg), src.dim(i)))))
    }

    pub fn at(&self, i: i32, src: &Cx, tgt: &Cx) -> QMat {
        match self.comps.get(&i) {
            Some(m) => m.clone(),
            None => QMat::zeros(tgt.dim(i + self.deg), src.dim(i)),
        }
    }

    pub fn components(&self) -> &BTreeMap<i32, QMat> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(QMat::is_zero)
    }

    /// `self ∘ first` where `first: K -> L` and `self: L -> M`.
    pub fn after(&self, first: &GMap, k: &Cx, l: &Cx, m: &Cx) -> GMap {
        GMap::from_fn(k, m, self.deg + first.deg, |i| &self.at(i + first.deg, l, m) * &first.at(i, k, l))
    }

    pub fn add(&self, other: &GMap, src: &Cx, tgt: &Cx) -> GMap {
        assert_eq!(self.deg, other.deg);
        GMap::from_fn(src, tgt, self.deg, |i| &self.at(i, src, tgt) + &other.at(i, src, tgt))
    }

    pub fn sub(&self, other: &GMap, src: &Cx, tgt: &Cx) -> GMap {
        self.add(&other.neg(), src, tgt)
    }

    pub fn neg(&self) -> GMap {
        GMap { deg: self.deg, comps: self.comps.iter().map(|(&i, m)| (i, -m)).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> GMap {
        GMap { deg: self.deg, comps: self.comps.iter().map(|(&i, m)| (i, m.scale(c))).collect() }
    }

    pub fn same_as(&self, other: &GMap, src: &Cx, tgt: &Cx) -> bool {
        self.deg == other.deg && (src.lo()..src.hi()).all(|i| self.at(i, src, tgt) == other.at(i, src, tgt))
    }

    pub fn check_chain_map(&self, src: &Cx, tgt: &Cx) -> Result<()> {
        assert_eq!(self.deg, 0, "chain maps have degree 0");
        let (lo, hi) = span(&[src, tgt]);
        for i in lo - 1..hi {
            if &tgt.d(i) * &self.at(i, src, tgt) != &self.at(i + 1, src, tgt) * &src.d(i) {
                return Err(Error::NotChainMap(i));
            }
        }
        Ok(())
    }

    /// Checks `h^i = t^{i+1} d^i + d^{i-1} t^i` for a chain map `h: src -> tgt`.
    pub fn check_homotopy_for(&self, h: &GMap, src: &Cx, tgt: &Cx) -> Result<()> {
        assert_eq!(self.deg, -1, "homotopies have degree -1");
        let (lo, hi) = span(&[src, tgt]);
        for i in lo - 1..=hi {
            let rhs = &(&self.at(i + 1, src, tgt) * &src.d(i)) + &(&tgt.d(i - 1) * &self.at(i, src, tgt));
            if h.at(i, src, tgt) != rhs {
                return Err(Error::NotHomotopy(i));
            }
        }
        Ok(())
    }

    /// Inverts a chain isomorphism degree by degree.
    pub fn inverse(&self, src: &Cx, tgt: &Cx) -> Result<GMap> {
        let mut comps = BTreeMap::new();
        for i in tgt.lo()..tgt.hi() {
            let inv = self.at(i, src, tgt).inverse().ok_or(Error::NotQuasiIso)?;
            comps.insert(i, inv);
        }
        GMap::new(tgt, src, -self.deg, comps)
    }

    /// `(f ⊕ g)` between direct sums.
    pub fn direct_sum(&self, other: &GMap, s1: &Cx, t1: &Cx, s2: &Cx, t2: &Cx) -> GMap {
        let src = s1.direct_sum(s2);
        let tgt = t1.direct_sum(t2);
        GMap::from_fn(&src, &tgt, self.deg, |i| QMat::block_diag(&[&self.at(i, s1, t1), &other.at(i, s2, t2)]))
    }
}

/// `(DK)^i = D(K^{-i})` with differential `(-1)^{i+1} D(d^{-i-1})`.
pub fn dual(k: &Cx) -> Cx {
    Cx::from_fn(1 - k.hi(), 1 - k.lo(), |i| k.dim(-i), |i| signed(k.d(-i - 1).transpose(), i as i64 + 1))
}

/// `D h: DM -> DK`. Chain maps dualize by transposition, homotopies as `(Dt)^i = (-1)^i D(t^{1-i})`.
pub fn dual_map(h: &GMap, src: &Cx, tgt: &Cx) -> GMap {
    let (dsrc, dtgt) = (dual(tgt), dual(src));
    match h.deg {
        0 => GMap::from_fn(&dsrc, &dtgt, 0, |i| h.at(-i, src, tgt).transpose()),
        -1 => GMap::from_fn(&dsrc, &dtgt, -1, |i| signed(h.at(1 - i, src, tgt).transpose(), i as i64)),
        d => panic!("dual of a map of degree {d} is not defined here"),
    }
}

/// `c_K: K -> DDK`, `(-1)^i` times the identity in degree `i`.
pub fn bidual_can(k: &Cx) -> GMap {
    let dd = dual(&dual(k));
    GMap::from_fn(k, &dd, 0, |i| QMat::scalar(k.dim(i), sign(i as i64)))
}

/// `Cone(f)^i = K^{i+1} ⊕ L^i` with differential `[[-d, 0], [f, d]]`.
pub fn cone(f: &GMap, k: &Cx, l: &Cx) -> Cx {
    let (lo, hi) = span(&[&k.shift(1), l]);
    Cx::from_fn(
        lo,
        hi,
        |i| k.dim(i + 1) + l.dim(i),
        |i| {
            let dims = [k.dim(i + 1), l.dim(i)];
            let out = [k.dim(i + 2), l.dim(i + 1)];
            QMat::from_blocks(&out, &dims, &[(0, 0, -&k.d(i + 1)), (1, 0, f.at(i + 1, k, l)), (1, 1, l.d(i))])
        },
    )
}

/// `Fib(f)^i = K^i ⊕ L^{i-1}` with differential `[[d, 0], [f, -d]]`.
pub fn fib(f: &GMap, k: &Cx, l: &Cx) -> Cx {
    let (lo, hi) = span(&[k, &l.shift(-1)]);
    Cx::from_fn(
        lo,
        hi,
        |i| k.dim(i) + l.dim(i - 1),
        |i| {
            let dims = [k.dim(i), l.dim(i - 1)];
            let out = [k.dim(i + 1), l.dim(i)];
            QMat::from_blocks(&out, &dims, &[(0, 0, k.d(i)), (1, 0, f.at(i, k, l)), (1, 1, -&l.d(i - 1))])
        },
    )
}

/// `L -> Cone(f)`.
pub fn cone_inclusion(f: &GMap, k: &Cx, l: &Cx) -> GMap {
    let c = cone(f, k, l);
    GMap::from_fn(l, &c, 0, |i| QMat::vstack(&[&QMat::zeros(k.dim(i + 1), l.dim(i)), &QMat::identity(l.dim(i))]))
}

/// `Cone(f) -> K[1]`.
pub fn cone_projection(f: &GMap, k: &Cx, l: &Cx) -> GMap {
    let c = cone(f, k, l);
    let k1 = k.shift(1);
    GMap::from_fn(&c, &k1, 0, |i| QMat::hstack(&[&QMat::identity(k.dim(i + 1)), &QMat::zeros(k.dim(i + 1), l.dim(i))]))
}

/// `(g, t): Cone(f) -> M` for a homotopy `t` from `g ∘ f` to 0.
pub fn cone_map(f: &GMap, g: &GMap, t: &GMap, k: &Cx, l: &Cx, m: &Cx) -> Result<GMap> {
    t.check_homotopy_for(&g.after(f, k, l, m), k, m)?;
    let c = cone(f, k, l);
    Ok(GMap::from_fn(&c, m, 0, |i| QMat::hstack(&[&t.at(i + 1, k, m), &g.at(i, l, m)])))
}

/// The data `K --f--> L --g--> M` with a homotopy `t` from `g ∘ f` to 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub k: Cx,
    pub l: Cx,
    pub m: Cx,
    pub f: GMap,
    pub g: GMap,
    pub t: GMap,
}

impl Triple {
    pub fn new(k: Cx, l: Cx, m: Cx, f: GMap, g: GMap, t: GMap) -> Result<Self> {
        f.check_chain_map(&k, &l)?;
        g.check_chain_map(&l, &m)?;
        t.check_homotopy_for(&g.after(&f, &k, &l, &m), &k, &m)?;
        Ok(Triple { k, l, m, f, g, t })
    }

    fn block_dims(&self, i: i32) -> [usize; 3] {
        [self.k.dim(i + 1), self.l.dim(i), self.m.dim(i - 1)]
    }

    /// `C^i = K^{i+1} ⊕ L^i ⊕ M^{i-1}` with differential `[[-d, 0, 0], [f, d, 0], [t, g, -d]]`.
    pub fn total(&self) -> Cx {
        let (lo, hi) = span(&[&self.k.shift(1), &self.l, &self.m.shift(-1)]);
        Cx::from_fn(
            lo,
            hi,
            |i| self.block_dims(i).iter().sum(),
            |i| {
                let (k, l, m) = (&self.k, &self.l, &self.m);
                QMat::from_blocks(
                    &self.block_dims(i + 1),
                    &self.block_dims(i),
                    &[
                        (0, 0, -&k.d(i + 1)),
                        (1, 0, self.f.at(i + 1, k, l)),
                        (1, 1, l.d(i)),
                        (2, 0, self.t.at(i + 1, k, m)),
                        (2, 1, self.g.at(i, l, m)),
                        (2, 2, -&m.d(i - 1)),
                    ],
                )
            },
        )
    }

    /// `DM --Dg--> DL --Df--> DK` with the homotopy `Dt`.
    pub fn dual(&self) -> Triple {
        Triple {
            k: dual(&self.m),
            l: dual(&self.l),
            m: dual(&self.k),
            f: dual_map(&self.g, &self.l, &self.m),
            g: dual_map(&self.f, &self.k, &self.l),
            t: dual_map(&self.t, &self.k, &self.m),
        }
    }

    /// The map of total complexes induced by `(a, b, c)`; requires `c ∘ t = t' ∘ a`.
    pub fn map_to(&self, other: &Triple, a: &GMap, b: &GMap, c: &GMap) -> Result<GMap> {
        a.check_chain_map(&self.k, &other.k)?;
        b.check_chain_map(&self.l, &other.l)?;
        c.check_chain_map(&self.m, &other.m)?;
        let (k, l, m) = (&self.k, &self.l, &self.m);
        let (k2, l2, m2) = (&other.k, &other.l, &other.m);
        if !b.after(&self.f, k, l, l2).same_as(&other.f.after(a, k, k2, l2), k, l2)
            || !c.after(&self.g, l, m, m2).same_as(&other.g.after(b, l, l2, m2), l, m2)
        {
            return Err(Error::NotChainMap(0));
        }
        if !c.after(&self.t, k, m, m2).same_as(&other.t.after(a, k, k2, m2), k, m2) {
            return Err(Error::NotHomotopy(0));
        }
        let src = self.total();
        let tgt = other.total();
        Ok(GMap::from_fn(&src, &tgt, 0, |i| {
            QMat::block_diag(&[&a.at(i + 1, k, k2), &b.at(i, l, l2), &c.at(i - 1, m, m2)])
        }))
    }

    /// `D(C(K → L → M)_t) → C(DM → DL → DK)_{Dt}`: `(-1)^{i+1} ⊕ 1 ⊕ (-1)^i` on
    /// `D(M^{-1-i}) ⊕ D(L^{-i}) ⊕ D(K^{1-i})`.
    pub fn dual_iso(&self) -> GMap {
        let dc = dual(&self.total());
        let target = self.dual().total();
        GMap::from_fn(&dc, &target, 0, |i| {
            // Source blocks come in the order of C^{-i}: D(K^{1-i}), D(L^{-i}), D(M^{-1-i}).
            let src_dims = [self.k.dim(1 - i), self.l.dim(-i), self.m.dim(-1 - i)];
            let tgt_dims = [self.m.dim(-1 - i), self.l.dim(-i), self.k.dim(1 - i)];
            QMat::from_blocks(
                &tgt_dims,
                &src_dims,
                &[
                    (0, 2, QMat::scalar(src_dims[2], sign(i as i64 + 1))),
                    (1, 1, QMat::identity(src_dims[1])),
                    (2, 0, QMat::scalar(src_dims[0], sign(i as i64))),
                ],
            )
        })
    }
}

/// `D(K[n]) → (DK)[-n]`: degreewise sign, `(-1)^i` for `n = 1` and iterated.
pub fn dual_shift_iso(k: &Cx, n: i32) -> GMap {
    let src = dual(&k.shift(n));
    let tgt = dual(k).shift(-n);
    GMap::from_fn(&src, &tgt, 0, |i| QMat::scalar(src.dim(i), shift_sign(n, i)))
}

fn shift_sign(n: i32, i: i32) -> BigRational {
    // s_n(i) = (-1)^i s_{n-1}(i-1); the product collapses to (-1)^{n i - n(n-1)/2}.
    let n = n as i64;
    let i = i as i64;
    sign(n * i - n * (n - 1) / 2)
}

/// Solves `h = t d + d t` for `t`, if a homotopy exists.
pub fn find_homotopy(h: &GMap, src: &Cx, tgt: &Cx) -> Option<GMap> {
    let (lo, hi) = span(&[src, tgt]);
    // Unknown blocks t^i: src^i -> tgt^{i-1}.
    let mut offsets = BTreeMap::new();
    let mut n_unknowns = 0;
    for i in src.lo()..src.hi() {
        offsets.insert(i, n_unknowns);
        n_unknowns += tgt.dim(i - 1) * src.dim(i);
    }
    let mut rows: Vec<(Vec<(usize, BigRational)>, BigRational)> = Vec::new();
    for i in lo..hi {
        let (r_dim, c_dim) = (tgt.dim(i), src.dim(i));
        let target = h.at(i, src, tgt);
        let d_src = src.d(i);
        let d_tgt = tgt.d(i - 1);
        for r in 0..r_dim {
            for c in 0..c_dim {
                let mut coeffs = Vec::new();
                // (t^{i+1} d^i)_{rc} = Σ_k t^{i+1}_{rk} d^i_{kc}
                if let Some(&off) = offsets.get(&(i + 1)) {
                    for k in 0..src.dim(i + 1) {
                        let v = d_src.get(k, c);
                        if !num_traits::Zero::is_zero(v) {
                            coeffs.push((off + r * src.dim(i + 1) + k, v.clone()));
                        }
                    }
                }
                // (d^{i-1} t^i)_{rc} = Σ_k d^{i-1}_{rk} t^i_{kc}
                if let Some(&off) = offsets.get(&i) {
                    for k in 0..tgt.dim(i - 1) {
                        let v = d_tgt.get(r, k);
                        if !num_traits::Zero::is_zero(v) {
                            coeffs.push((off + k * c_dim + c, v.clone()));
                        }
                    }
                }
                rows.push((coeffs, target.get(r, c).clone()));
            }
        }
    }
    let mut a = QMat::zeros(rows.len(), n_unknowns);
    let mut b = QMat::zeros(rows.len(), 1);
    for (j, (coeffs, rhs)) in rows.into_iter().enumerate() {
        for (col, v) in coeffs {
            let cur = a.get(j, col).clone();
            a.set(j, col, cur + v);
        }
        b.set(j, 0, rhs);
    }
    let x = if n_unknowns == 0 {
        if b.is_zero() {
            QMat::zeros(0, 1)
        } else {
            return None;
        }
    } else {
        a.solve(&b)?
    };
    Some(GMap::from_fn(src, tgt, -1, |i| {
        let off = offsets[&i];
        let (r, c) = (tgt.dim(i - 1), src.dim(i));
        QMat::from_fn(r, c, |p, q| x.get(off + p * c + q, 0).clone())
    }))
}
