//! Polarized real Hodge structures of weight 0 and the identity at the real place.
//!
//! A model is an explicit rational matrix triple: complex conjugation `σ`, the form `b`,
//! and the Weil operator `C`. The de Rham side `D = V^+ ⊕ i V^-` carries the Gram matrix
//! `diag(b|V^+, -b|V^-)`, as `b` is `σ`-invariant.

use num_rational::BigRational;
use rand::Rng;

use super::{derive_invariants, CohomProfile, LefschetzData};
use crate::arith::binom2_odd;
use crate::coh::{cup, BaseField, H2Class, SquareClass};
use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::quadform::{signature, QuadSpace};

/// Hodge numbers of a real Hodge structure of weight 0: `hpq[p - 1] = h^{p,-p}` for `p > 0`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RealHodge {
    pub hpq: Vec<i64>,
    pub h00plus: i64,
    pub h00minus: i64,
}

impl RealHodge {
    pub fn dim(&self) -> i64 {
        2 * self.hpq.iter().sum::<i64>() + self.h00plus + self.h00minus
    }

    pub fn add(&self, other: &RealHodge) -> RealHodge {
        let len = self.hpq.len().max(other.hpq.len());
        let at = |v: &[i64], i: usize| v.get(i).copied().unwrap_or(0);
        RealHodge {
            hpq: (0..len).map(|i| at(&self.hpq, i) + at(&other.hpq, i)).collect(),
            h00plus: self.h00plus + other.h00plus,
            h00minus: self.h00minus + other.h00minus,
        }
    }
}

/// `(v^-, d^-)`, both equal to `Σ_{p>0} h^{p,-p} + h^{0,0,-}`.
pub fn real_counts(h: &RealHodge) -> (i64, i64) {
    let k = h.hpq.iter().sum::<i64>() + h.h00minus;
    (k, k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedModel {
    pub sigma: QMat,
    pub form: QMat,
    pub weil: QMat,
    pub hodge: RealHodge,
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InconsistentSynthesis(msg.into())
}

impl PolarizedModel {
    pub fn zero() -> Self {
        PolarizedModel { sigma: QMat::zeros(0, 0), form: QMat::zeros(0, 0), weil: QMat::zeros(0, 0), hodge: RealHodge::default() }
    }

    /// A line of type `(0,0)` on which conjugation acts by `eps = ±1`.
    pub fn point(eps: i64) -> Self {
        let hodge = if eps == 1 {
            RealHodge { h00plus: 1, ..Default::default() }
        } else {
            RealHodge { h00minus: 1, ..Default::default() }
        };
        PolarizedModel {
            sigma: QMat::scalar(1, int(eps.signum())),
            form: QMat::identity(1),
            weil: QMat::identity(1),
            hodge,
        }
    }

    /// The plane with `V^{p,-p}` spanned by `e1 - i e2`, `p > 0`.
    pub fn pair(p: usize) -> Self {
        assert!(p > 0, "pair pieces have p > 0");
        let sign = if p % 2 == 0 { 1 } else { -1 };
        let mut hpq = vec![0; p];
        hpq[p - 1] = 1;
        PolarizedModel {
            sigma: QMat::diagonal(&[int(1), int(-1)]),
            form: QMat::scalar(2, int(sign)),
            weil: QMat::scalar(2, int(sign)),
            hodge: RealHodge { hpq, ..Default::default() },
        }
    }

    pub fn dim(&self) -> usize {
        self.sigma.rows()
    }

    pub fn direct_sum(&self, other: &PolarizedModel) -> Self {
        PolarizedModel {
            sigma: QMat::block_diag(&[&self.sigma, &other.sigma]),
            form: QMat::block_diag(&[&self.form, &other.form]),
            weil: QMat::block_diag(&[&self.weil, &other.weil]),
            hodge: self.hodge.add(&other.hodge),
        }
    }

    /// Rewrites the model in the basis given by the columns of `g`.
    pub fn change_basis(&self, g: &QMat) -> Result<Self> {
        let gi = g.inverse().ok_or(Error::Degenerate)?;
        Ok(PolarizedModel {
            sigma: &(&gi * &self.sigma) * g,
            form: &(&g.transpose() * &self.form) * g,
            weil: &(&gi * &self.weil) * g,
            hodge: self.hodge.clone(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let id = QMat::identity(n);
        if self.form.shape() != (n, n) || self.weil.shape() != (n, n) {
            return Err(inconsistent("matrix shapes differ"));
        }
        if &self.sigma * &self.sigma != id || &self.weil * &self.weil != id {
            return Err(inconsistent("conjugation and Weil operator must be involutions"));
        }
        if &self.sigma * &self.weil != &self.weil * &self.sigma {
            return Err(inconsistent("Weil operator must commute with conjugation"));
        }
        if !self.form.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if &(&self.sigma.transpose() * &self.form) * &self.sigma != self.form {
            return Err(inconsistent("form is not conjugation invariant"));
        }
        let positive = &self.form * &self.weil;
        if !positive.is_symmetric() {
            return Err(inconsistent("b(x, Cy) is not symmetric"));
        }
        if n > 0 {
            let (_, neg) = signature(&QuadSpace::new(positive, BaseField::Reals)?)?;
            if neg != 0 {
                return Err(inconsistent("b(x, Cy) is not positive definite"));
            }
        }
        if self.hodge.dim() != n as i64 {
            return Err(inconsistent("recorded Hodge numbers do not add up to the dimension"));
        }
        Ok(())
    }

    fn eigenspace(&self, eps: i64) -> QMat {
        (&self.sigma - &QMat::scalar(self.dim(), int(eps))).kernel()
    }

    /// Multiplicity of the eigenvalue `-1` of conjugation.
    pub fn v_minus(&self) -> usize {
        self.eigenspace(-1).cols()
    }

    /// Gram matrix of the restricted form on `D = V^+ ⊕ i V^-`.
    pub fn de_rham_gram(&self) -> QMat {
        let plus = self.eigenspace(1);
        let minus = self.eigenspace(-1);
        let gp = &(&plus.transpose() * &self.form) * &plus;
        let gm = &(&minus.transpose() * &self.form) * &minus;
        QMat::block_diag(&[&gp, &gm.scale_i(-1)])
    }

    /// Signature `(d^+, d^-)` of `D`.
    pub fn de_rham_signature(&self) -> Result<(usize, usize)> {
        if self.dim() == 0 {
            return Ok((0, 0));
        }
        signature(&QuadSpace::new(self.de_rham_gram(), BaseField::Reals)?)
    }

    /// Checks `v^- = d^- = Σ_{p>0} h^{p,-p} + h^{0,0,-}` on the explicit model.
    pub fn check_counts(&self) -> Result<()> {
        self.validate()?;
        let (expected, _) = real_counts(&self.hodge);
        let v = self.v_minus() as i64;
        let d = self.de_rham_signature()?.1 as i64;
        if v != expected || d != expected {
            return Err(inconsistent(format!("v^- = {v}, d^- = {d}, Hodge count {expected}")));
        }
        Ok(())
    }

    pub fn random(rng: &mut impl Rng, max_pieces: usize, max_p: usize) -> Result<Self> {
        let mut model = PolarizedModel::zero();
        for _ in 0..rng.gen_range(0..=max_pieces) {
            let kinds = if max_p == 0 { 2 } else { 3 };
            let piece = match rng.gen_range(0..kinds) {
                0 => PolarizedModel::point(1),
                1 => PolarizedModel::point(-1),
                _ => PolarizedModel::pair(rng.gen_range(1..=max_p)),
            };
            model = model.direct_sum(&piece);
        }
        model.change_basis(&random_unimodular(rng, model.dim()))
    }
}

/// A product of random elementary integer matrices.
fn random_unimodular(rng: &mut impl Rng, n: usize) -> QMat {
    let mut g = QMat::identity(n);
    if n < 2 {
        return g;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = int(rng.gen_range(-2..=2));
        let mut e = QMat::identity(n);
        e.set(i, j, c);
        g = &g * &e;
    }
    g
}

/// A real variety of even dimension `n` described through its Lefschetz decomposition.
///
/// `prim[k]` is the weight 0 model of `P^{2k}(k)` for `2k <= n`; odd primitive parts enter
/// only through their (even) dimensions `odd_prim[k] = dim P^{2k+1}`.
#[derive(Debug, Clone)]
pub struct RealVariety {
    pub n: usize,
    pub prim: Vec<PolarizedModel>,
    pub odd_prim: Vec<i64>,
}

/// Outcome of the real-place identity on one synthesized variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealIdentityReport {
    pub lhs: H2Class,
    pub rhs: H2Class,
    pub congruence_holds: bool,
}

impl RealIdentityReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.congruence_holds
    }
}

impl RealVariety {
    pub fn validate(&self) -> Result<()> {
        for (k, m) in self.prim.iter().enumerate() {
            if m.hodge.hpq.iter().skip(k).any(|&h| h != 0) {
                return Err(inconsistent(format!("P^{} has Hodge types beyond its degree", 2 * k)));
            }
        }
        if self.n % 2 != 0 || self.prim.len() != self.n / 2 + 1 || self.odd_prim.len() != self.n / 2 {
            return Err(inconsistent("wrong number of primitive parts"));
        }
        if self.odd_prim.iter().any(|&d| d < 0 || d % 2 != 0) {
            return Err(inconsistent("odd primitive parts must have even dimension"));
        }
        for m in &self.prim {
            m.check_counts()?;
        }
        if self.prim[0].dim() == 0 {
            return Err(inconsistent("P^0 must be nonzero"));
        }
        Ok(())
    }

    fn prim_dim(&self, q: usize) -> i64 {
        if q % 2 == 0 {
            self.prim[q / 2].dim() as i64
        } else {
            self.odd_prim[q / 2]
        }
    }

    /// `H^q = ⊕_{q' <= q, q' ≡ q} L^{(q-q')/2} P^{q'}` for `q <= n`, mirrored above `n`.
    fn lower_degree(&self, q: usize) -> usize {
        if q <= self.n {
            q
        } else {
            2 * self.n - q
        }
    }

    /// Hodge numbers `h^{a,b}`: the part `h^{p,-p}` of `P^{q}(q/2)` sits in bidegree
    /// `(q/2 + p, q/2 - p)` and odd primitive parts are split evenly between `((q±1)/2, (q∓1)/2)`.
    fn hodge_table(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut h = vec![vec![0i64; n + 1]; n + 1];
        for k in 0..=2 * n {
            let top = self.lower_degree(k);
            let shift = (k - top) / 2;
            for q in (k % 2..=top).step_by(2) {
                let lift = (top - q) / 2 + shift;
                if q % 2 == 0 {
                    let rh = &self.prim[q / 2].hodge;
                    let c = q / 2 + lift;
                    h[c][c] += rh.h00plus + rh.h00minus;
                    for (i, &x) in rh.hpq.iter().enumerate() {
                        let p = i + 1;
                        if x != 0 {
                            h[c + p][c - p] += x;
                            h[c - p][c + p] += x;
                        }
                    }
                } else {
                    let half = self.odd_prim[q / 2] / 2;
                    let a = (q - 1) / 2 + lift;
                    h[a + 1][a] += half;
                    h[a][a + 1] += half;
                }
            }
        }
        h
    }

    /// Number of conjugation eigenvalues `-1` on `H^q(q/2)`, q even.
    fn e_minus(&self, q: usize) -> i64 {
        (0..=q).step_by(2).map(|k| self.prim[k / 2].v_minus() as i64).sum()
    }

    /// Gram matrix of the cup product on `H^n`: `(-1)^{q/2}` times the polarization on each
    /// primitive piece, read on `D`.
    pub fn middle_gram(&self) -> QMat {
        let blocks: Vec<QMat> = (0..=self.n)
            .step_by(2)
            .map(|q| {
                let g = self.prim[q / 2].de_rham_gram();
                if (q / 2) % 2 == 0 {
                    g
                } else {
                    g.scale_i(-1)
                }
            })
            .collect();
        QMat::block_diag(&blocks.iter().collect::<Vec<_>>())
    }

    pub fn profile(&self, ell: u64) -> Result<CohomProfile> {
        self.validate()?;
        let n = self.n;
        let field = BaseField::Reals;
        let m = SquareClass::minus_one(field);
        let mm = cup(&m, &m)?;
        let betti: Vec<i64> = (0..=2 * n)
            .map(|k| {
                let top = self.lower_degree(k);
                (k % 2..=top).step_by(2).map(|q| self.prim_dim(q)).sum()
            })
            .collect();
        let (_, d_minus) = signature(&QuadSpace::new(self.middle_gram(), field)?)?;
        let d_minus = d_minus as i64;
        let e_n_minus = self.e_minus(n);
        let eq_chars = (0..=n).map(|q| if q % 2 == 0 { m.times(self.e_minus(q)) } else { SquareClass::one(field) }).collect();
        let prim_dims = (0..=n).step_by(2).map(|q| self.prim_dim(q)).collect();
        let prim_dets = (0..=n)
            .step_by(2)
            .map(|q| m.times(self.prim[q / 2].v_minus() as i64))
            .collect();
        let profile = CohomProfile {
            n,
            betti,
            hodge: self.hodge_table(),
            d_x: m.times(d_minus),
            eq_chars,
            hw2_in: Some(mm.times(i64::from(binom2_odd(d_minus)))),
            sw2_in: Some(mm.times(i64::from(binom2_odd(e_n_minus)))),
            ell,
            field,
            lef: Some(LefschetzData { prim_dims, prim_dets }),
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn random(rng: &mut impl Rng, n: usize) -> Result<Self> {
        let mut prim = Vec::new();
        for k in 0..=n / 2 {
            let mut model = PolarizedModel::random(rng, 3, k)?;
            if k == 0 && model.dim() == 0 {
                model = PolarizedModel::point(1);
            }
            prim.push(model);
        }
        let odd_prim = (0..n / 2).map(|_| 2 * rng.gen_range(0..=2)).collect();
        Ok(RealVariety { n, prim, odd_prim })
    }
}

/// Evaluates both sides of the real identity and the mod 4 congruence behind it.
pub fn real_identity_check(x: &RealVariety) -> Result<RealIdentityReport> {
    let p = x.profile(2)?;
    let inv = derive_invariants(&p)?;
    let field = BaseField::Reals;
    let m = SquareClass::minus_one(field);
    let mm = cup(&m, &m)?;
    let lhs = p.sw2_in.clone().expect("synthesized").add(&cup(&inv.e, &m)?)?.add(&mm.times(inv.beta))?;
    let (hw2p, dp) = p.primed()?;
    let rhs = hw2p.add(&cup(&dp, &m)?.times(inv.r))?.add(&mm.times(i64::from(binom2_odd(inv.r))))?;

    let n = x.n;
    let sign = if (n / 2) % 2 == 0 { 1 } else { -1 };
    let primed = x.middle_gram().scale_i(sign);
    let (_, dprime_minus) = signature(&QuadSpace::new(primed, field)?)?;
    let e_minus: i64 = (0..n).step_by(2).map(|q| x.e_minus(q)).sum();
    let wanted = if n % 4 == 0 { 2 } else { 0 };
    let dim_p: i64 = (0..n).step_by(2).filter(|q| q % 4 == wanted).map(|q| x.prim_dim(q)).sum();
    let congruence_holds = (x.e_minus(n) - 2 * e_minus - dprime_minus as i64 + dim_p).rem_euclid(4) == 0;
    Ok(RealIdentityReport { lhs, rhs, congruence_holds })
}
