//! Symmetric complexes `(K, q: K -> DK)` and their total class truncated in degree 2.

use num_rational::BigRational;
use swhw_core::coh::{minus_one_power, BaseField, TruncClass};
use swhw_core::linalg::QMat;
use swhw_core::quadform::{diagonalize, QuadSpace};

use crate::complex::{bidual_can, cone, dual, dual_map, Cx, GMap, Triple};
use crate::error::{Error, Result};

const Q: BaseField = BaseField::Rationals;

/// A nondegenerate symmetric bilinear form on `Q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymBundle {
    pub gram: QMat,
}

impl SymBundle {
    pub fn new(gram: QMat) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if gram.rows() > 0 && gram.rank() < gram.rows() {
            return Err(Error::Core(swhw_core::Error::Degenerate));
        }
        Ok(SymBundle { gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// `(1, hw_1, hw_2)` of the form.
    pub fn w(&self) -> Result<TruncClass> {
        if self.rank() == 0 {
            return Ok(TruncClass::one(Q));
        }
        Ok(diagonalize(&QuadSpace::over_q(self.gram.clone())?)?.hw_total()?)
    }

    pub fn negated(&self) -> SymBundle {
        SymBundle { gram: -&self.gram }
    }

    /// The bundle placed in degree 0.
    pub fn to_complex(&self) -> SymCx {
        let k = Cx::concentrated(0, self.rank());
        let dk = dual(&k);
        let q = GMap::from_fn(&k, &dk, 0, |_| self.gram.clone());
        SymCx { k, q }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymCx {
    pub k: Cx,
    pub q: GMap,
}

/// `(1 + {-1})^{χ(K)}`; over a field only ranks enter.
pub fn cbar(k: &Cx) -> TruncClass {
    minus_one_power(Q, k.euler_char()).expect("classes over Q")
}

/// Whether `D h ∘ c = h` for a map `h: K -> DK` of degree 0 or -1.
pub fn is_symmetric_map(h: &GMap, k: &Cx) -> bool {
    let dk = dual(k);
    let ddk = dual(&dk);
    let dh = dual_map(h, k, &dk);
    dh.after(&bidual_can(k), k, &ddk, &dk).same_as(h, k, &dk)
}

/// `(h + D h ∘ c) / 2`.
pub fn symmetrize(h: &GMap, k: &Cx) -> GMap {
    let dk = dual(k);
    let ddk = dual(&dk);
    let dh = dual_map(h, k, &dk).after(&bidual_can(k), k, &ddk, &dk);
    h.add(&dh, k, &dk).scale(&BigRational::new(1.into(), 2.into()))
}

pub fn is_quasi_iso(f: &GMap, src: &Cx, tgt: &Cx) -> bool {
    cone(f, src, tgt).is_acyclic()
}

impl SymCx {
    pub fn new(k: Cx, q: GMap) -> Result<Self> {
        let s = SymCx { k, q };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let dk = self.dual();
        self.q.check_chain_map(&self.k, &dk)?;
        if !is_symmetric_map(&self.q, &self.k) {
            return Err(Error::NotSymmetric);
        }
        if !is_quasi_iso(&self.q, &self.k, &dk) {
            return Err(Error::NotQuasiIso);
        }
        Ok(())
    }

    pub fn dual(&self) -> Cx {
        dual(&self.k)
    }

    pub fn negated(&self) -> SymCx {
        SymCx { k: self.k.clone(), q: self.q.neg() }
    }

    pub fn direct_sum(&self, other: &SymCx) -> SymCx {
        let q = self.q.direct_sum(&other.q, &self.k, &self.dual(), &other.k, &other.dual());
        SymCx { k: self.k.direct_sum(&other.k), q }
    }

    /// Gram matrix of the form induced on `H^0(K)` in a basis of cohomology representatives.
    pub fn form_on_h0(&self) -> SymBundle {
        let z = self.k.cohomology_basis(0);
        let q0 = self.q.at(0, &self.k, &self.dual());
        SymBundle { gram: &(&z.transpose() * &q0) * &z }
    }

    /// Transports the structure along a chain isomorphism `phi: K -> K'`.
    pub fn transport(&self, phi: &GMap, target: &Cx) -> Result<SymCx> {
        let inv = phi.inverse(&self.k, target)?;
        let dk = self.dual();
        let dinv = dual_map(&inv, target, &self.k);
        let q = dinv.after(&self.q.after(&inv, target, &self.k, &dk), target, &dk, &dual(target));
        SymCx::new(target.clone(), q)
    }
}

/// Symmetrizes a quasi-isomorphism `q_raw: K -> DK` whose dual is homotopic to it.
pub fn make_symmetric(k: &Cx, q_raw: &GMap) -> Result<SymCx> {
    let dk = dual(k);
    q_raw.check_chain_map(k, &dk)?;
    if !is_quasi_iso(q_raw, k, &dk) {
        return Err(Error::NotQuasiIso);
    }
    let ddk = dual(&dk);
    let flipped = dual_map(q_raw, k, &dk).after(&bidual_can(k), k, &ddk, &dk);
    if crate::complex::find_homotopy(&q_raw.sub(&flipped, k, &dk), k, &dk).is_none() {
        return Err(Error::NotSymmetric);
    }
    SymCx::new(k.clone(), symmetrize(q_raw, k))
}

/// The triple `L --f--> K --Df∘q--> DL` with homotopy `t`.
pub fn m_triple(s: &SymCx, l: &Cx, f: &GMap, t: &GMap) -> Result<Triple> {
    let dk = s.dual();
    let dl = dual(l);
    let dfq = dual_map(f, l, &s.k).after(&s.q, &s.k, &dk, &dl);
    if !is_symmetric_map(t, l) {
        return Err(Error::NotSymmetricHomotopy);
    }
    Triple::new(l.clone(), s.k.clone(), dl, f.clone(), dfq, t.clone())
}

/// `M(L → K)_{q,t}` with its symmetric form `q_M`.
pub fn m_construction(s: &SymCx, l: &Cx, f: &GMap, t: &GMap) -> Result<SymCx> {
    let tri = m_triple(s, l, f, t)?;
    let dl = dual(l);
    // C(DDL --Dq∘DDf--> DK --Df--> DL)_{Dt}, which is also the dual triple of `tri`.
    let target = tri.dual();
    let c_l = bidual_can(l);
    let q_tilde = tri.map_to(&target, &c_l, &s.q, &dl.identity())?;
    let m = tri.total();
    let dm = dual(&m);
    let iso = tri.dual_iso();
    let target_total = target.total();
    let iso_inv = iso.inverse(&dm, &target_total)?;
    let q_m = iso_inv.after(&q_tilde, &m, &target_total, &dm);
    SymCx::new(m, q_m)
}

/// `K^♮ = M(K^{>0} → K)_q` and the form induced on `H^0(K^♮)`.
pub fn k_natural(s: &SymCx) -> Result<(SymCx, SymBundle)> {
    let l = s.k.above(0);
    let f = GMap::from_fn(&l, &s.k, 0, |i| QMat::identity(s.k.dim(i)));
    let t = l.zero_map(&dual(&l), -1);
    let kn = m_construction(s, &l, &f, &t)?;
    let e = kn.form_on_h0();
    let e = SymBundle::new(e.gram)?;
    Ok((kn, e))
}

/// `w(K) = w(E) · cbar(K^{>0})` with `E = H^0(K^♮)`.
pub fn w(s: &SymCx) -> Result<TruncClass> {
    let (_, e) = k_natural(s)?;
    Ok(e.w()?.mul(&cbar(&s.k.above(0)))?)
}

/// Whether `M(L → K)_{q,t}` is acyclic.
pub fn lagrangean_check(s: &SymCx, l: &Cx, f: &GMap, t: &GMap) -> Result<bool> {
    Ok(m_triple(s, l, f, t)?.total().is_acyclic())
}

/// A symmetric homotopy from `D f ∘ q ∘ f` to 0, when one exists.
pub fn solve_symmetric_homotopy(s: &SymCx, l: &Cx, f: &GMap) -> Result<GMap> {
    let dk = s.dual();
    let dl = dual(l);
    let h = dual_map(f, l, &s.k).after(&s.q.after(f, l, &s.k, &dk), l, &dk, &dl);
    let t = crate::complex::find_homotopy(&h, l, &dl).ok_or(Error::NotHomotopy(0))?;
    let t = symmetrize(&t, l);
    t.check_homotopy_for(&h, l, &dl)?;
    Ok(t)
}
