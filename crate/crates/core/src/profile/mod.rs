//! Cohomological profiles of proper smooth varieties of even dimension and the identities
//! relating `sw2` of the étale realisation to `hw2` of the de Rham realisation.

mod hypersurface;
mod io;
pub mod real;

pub use hypersurface::{hypersurface_hodge, hypersurface_profile, jacobian_ring_series};

use crate::arith::{binom2_odd, is_prime_u64};
use crate::coh::{boundary, c_ell, cup, minus_one_power, BaseField, CharClass, H2Class, SquareClass, TruncClass};
use crate::error::{Error, Result};
use crate::orthorep::{graded_sw2, OrthRep};

/// Dimensions and determinants of the primitive parts `P^q`, `q` even, `q <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzData {
    pub prim_dims: Vec<i64>,
    pub prim_dets: Vec<SquareClass>,
}

/// The numeric and class data attached to a variety `X` of even dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomProfile {
    pub n: usize,
    /// `b_q` for `0 <= q <= 2n`.
    pub betti: Vec<i64>,
    /// `hodge[p][q] = h^{p,q} = dim H^q(X, Ω^p)` for `0 <= p, q <= n`.
    pub hodge: Vec<Vec<i64>>,
    /// Discriminant of the middle de Rham cup product form.
    pub d_x: SquareClass,
    /// `e_q` for `q < n`, optionally followed by `e_n`.
    pub eq_chars: Vec<SquareClass>,
    pub hw2_in: Option<H2Class>,
    pub sw2_in: Option<H2Class>,
    pub ell: u64,
    pub field: BaseField,
    pub lef: Option<LefschetzData>,
}

/// Integers derived from the Betti and Hodge numbers, plus `e = Σ_{q<n} e_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub r: i64,
    pub beta: i64,
    pub eta: i64,
    pub h: i64,
    pub rprime: i64,
    pub s: i64,
    pub e: SquareClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    Plain,
    Primed,
    Graded,
}

impl std::str::FromStr for Formulation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Formulation::Plain),
            "primed" => Ok(Formulation::Primed),
            "graded" => Ok(Formulation::Graded),
            _ => Err(Error::Parse(format!("unknown formulation {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sides {
    pub lhs: H2Class,
    pub rhs: H2Class,
}

impl Sides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn difference(&self) -> H2Class {
        self.lhs.add(&self.rhs).expect("sides share the field")
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::ValidationFailed(msg.into())
}

impl CohomProfile {
    pub fn m(&self) -> usize {
        self.n / 2
    }

    fn n_mod4_is_zero(&self) -> bool {
        self.n % 4 == 0
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n % 2 != 0 {
            return Err(fail(format!("dimension {n} is odd")));
        }
        if matches!(self.field, BaseField::ResidueField(_)) {
            return Err(Error::UnsupportedField(self.field));
        }
        if !is_prime_u64(self.ell) {
            return Err(Error::InvalidPrime(self.ell));
        }
        if self.betti.len() != 2 * n + 1 {
            return Err(fail(format!("expected {} Betti numbers, got {}", 2 * n + 1, self.betti.len())));
        }
        if self.hodge.len() != n + 1 || self.hodge.iter().any(|row| row.len() != n + 1) {
            return Err(fail(format!("Hodge numbers must form a {0}x{0} table", n + 1)));
        }
        if self.betti.iter().chain(self.hodge.iter().flatten()).any(|&x| x < 0) {
            return Err(fail("negative Betti or Hodge number"));
        }
        for p in 0..=n {
            for q in 0..=n {
                if self.hodge[p][q] != self.hodge[q][p] {
                    return Err(fail(format!("Hodge symmetry h^{{{p},{q}}} = h^{{{q},{p}}}")));
                }
                if self.hodge[p][q] != self.hodge[n - p][n - q] {
                    return Err(fail(format!("Serre duality h^{{{p},{q}}} = h^{{{},{}}}", n - p, n - q)));
                }
            }
        }
        for (k, &b) in self.betti.iter().enumerate() {
            let sum: i64 = (0..=n).filter(|&p| k >= p && k - p <= n).map(|p| self.hodge[p][k - p]).sum();
            if sum != b {
                return Err(fail(format!("b_{k} = {b} but the Hodge numbers sum to {sum}")));
            }
            if k % 2 == 1 && b % 2 != 0 {
                return Err(fail(format!("odd Betti number b_{k} = {b} is odd")));
            }
        }
        if self.eq_chars.len() != n && self.eq_chars.len() != n + 1 {
            return Err(fail(format!("expected {n} or {} characters e_q, got {}", n + 1, self.eq_chars.len())));
        }
        for (q, e) in self.eq_chars.iter().enumerate() {
            self.field.ensure_same(e.field())?;
            if q % 2 == 1 && !e.is_trivial() {
                return Err(fail(format!("e_{q} must be trivial for odd q")));
            }
        }
        self.field.ensure_same(self.d_x.field())?;
        for x in self.hw2_in.iter().chain(self.sw2_in.iter()) {
            self.field.ensure_same(x.field())?;
        }
        if let Some(lef) = &self.lef {
            let k = n / 2 + 1;
            if lef.prim_dims.len() != k || lef.prim_dets.len() != k {
                return Err(fail(format!("Lefschetz data needs {k} primitive parts")));
            }
            for (i, &dim) in lef.prim_dims.iter().enumerate() {
                let q = 2 * i;
                let expect = if q == 0 { self.betti[0] } else { self.betti[q] - self.betti[q - 2] };
                if dim != expect {
                    return Err(fail(format!("dim P^{q} = {dim} but b_{q} - b_{} = {expect}", q.saturating_sub(2))));
                }
            }
            for d in &lef.prim_dets {
                self.field.ensure_same(d.field())?;
            }
        }
        Ok(())
    }

    /// `χ(X, Ω^q) = Σ_p (-1)^p h^{q,p}`.
    pub fn chi_omega(&self, q: usize) -> i64 {
        self.hodge[q].iter().enumerate().map(|(p, &h)| if p % 2 == 0 { h } else { -h }).sum()
    }

    pub fn e(&self) -> SquareClass {
        SquareClass::sum(self.field, &self.eq_chars[..self.n]).expect("validated")
    }

    pub fn e_n(&self) -> Option<&SquareClass> {
        self.eq_chars.get(self.n)
    }

    pub fn b_n(&self) -> i64 {
        self.betti[self.n]
    }

    fn hw2(&self) -> Result<&H2Class> {
        self.hw2_in.as_ref().ok_or(Error::MissingInput("hw2"))
    }

    fn sw2(&self) -> Result<&H2Class> {
        self.sw2_in.as_ref().ok_or(Error::MissingInput("sw2"))
    }

    /// `hw2` and discriminant of the middle form scaled by `(-1)^{n/2}`.
    pub fn primed(&self) -> Result<(H2Class, SquareClass)> {
        let hw2 = self.hw2()?.clone();
        if self.n_mod4_is_zero() {
            return Ok((hw2, self.d_x.clone()));
        }
        let b = self.b_n();
        let m = SquareClass::minus_one(self.field);
        let hw2p = hw2
            .add(&cup(&self.d_x, &m)?.times(b - 1))?
            .add(&cup(&m, &m)?.times(i64::from(binom2_odd(b))))?;
        Ok((hw2p, self.d_x.add(&m.times(b))?))
    }
}

pub fn derive_invariants(p: &CohomProfile) -> Result<Invariants> {
    p.validate()?;
    let n = p.n;
    let m = n / 2;
    let sign = |q: usize| if q % 2 == 0 { 1 } else { -1 };
    let r: i64 = (0..n).map(|q| sign(q) * p.betti[q]).sum();
    let twice_beta: i64 = (0..n).map(|q| sign(q) * (n - q) as i64 * p.betti[q]).sum();
    if twice_beta % 2 != 0 {
        return Err(fail("beta is not integral"));
    }
    let eta: i64 = (0..m).map(|q| sign(q) * (m - q) as i64 * p.chi_omega(q)).sum();
    let h: i64 = (0..m).map(|q| (m - q) as i64 * p.hodge[q][n - q]).sum();
    let rprime: i64 = if n % 4 == 0 {
        (0..n).step_by(2).map(|q| if (q / 2) % 2 == 0 { p.betti[q] } else { -p.betti[q] }).sum()
    } else {
        let lower: i64 = (0..n).step_by(2).map(|q| if (q / 2) % 2 == 0 { -p.betti[q] } else { p.betti[q] }).sum();
        lower + p.b_n()
    };
    let diff = p.b_n() - p.hodge[m][m];
    if diff % 2 != 0 || diff < 0 {
        return Err(Error::ParityViolation(format!("b_n - h^(m,m) = {diff}")));
    }
    Ok(Invariants { r, beta: twice_beta / 2, eta, h, rprime, s: diff / 2, e: p.e() })
}

/// `{2, d} + η (c_ℓ - c_2)`, shared by every formulation.
fn common_tail(p: &CohomProfile, inv: &Invariants) -> Result<H2Class> {
    let two = SquareClass::from_i64(p.field, 2)?;
    let c = c_ell(p.ell, p.field)?.add(&c_ell(2, p.field)?)?;
    cup(&two, &p.d_x)?.add(&c.times(inv.eta))
}

/// `sw2 + {e,-1} + β c_ℓ`.
fn plain_lhs(p: &CohomProfile, inv: &Invariants) -> Result<H2Class> {
    let m = SquareClass::minus_one(p.field);
    p.sw2()?.add(&cup(&inv.e, &m)?)?.add(&c_ell(p.ell, p.field)?.times(inv.beta))
}

fn plain_rhs(p: &CohomProfile, inv: &Invariants) -> Result<H2Class> {
    let m = SquareClass::minus_one(p.field);
    let mm = cup(&m, &m)?;
    let dm = cup(&p.d_x, &m)?;
    let correction = if p.n % 4 == 0 {
        dm.times(inv.r).add(&mm.times(i64::from(binom2_odd(inv.r))))?
    } else {
        let rb = inv.r + p.b_n();
        dm.times(rb - 1).add(&mm.times(i64::from(binom2_odd(rb))))?
    };
    p.hw2()?.add(&correction)?.add(&common_tail(p, inv)?)
}

pub fn conjecture_sides(p: &CohomProfile, form: Formulation) -> Result<Sides> {
    let inv = derive_invariants(p)?;
    let field = p.field;
    let m = SquareClass::minus_one(field);
    match form {
        Formulation::Plain => Ok(Sides { lhs: plain_lhs(p, &inv)?, rhs: plain_rhs(p, &inv)? }),
        Formulation::Primed => {
            let (hw2p, dp) = p.primed()?;
            let rhs = hw2p
                .add(&cup(&dp, &m)?.times(inv.r))?
                .add(&cup(&m, &m)?.times(i64::from(binom2_odd(inv.r))))?
                .add(&common_tail(p, &inv)?)?;
            Ok(Sides { lhs: plain_lhs(p, &inv)?, rhs })
        }
        Formulation::Graded => {
            let v0 = OrthRep::from_chars(field, Vec::new())?;
            let lower = graded_determinants(p);
            let lhs = p.sw2()?.add(&graded_sw2(&v0, &lower)?)?;
            let (hw2p, dp) = p.primed()?;
            let middle = TruncClass::new(dp, hw2p)?;
            let graded = middle.mul(&minus_one_power(field, inv.r)?)?;
            let rhs = graded.s2.add(&common_tail(p, &inv)?)?;
            Ok(Sides { lhs, rhs })
        }
    }
}

/// The value of `sw2` predicted by the plain formulation.
pub fn solve_sw2(p: &CohomProfile) -> Result<H2Class> {
    let inv = derive_invariants(p)?;
    let m = SquareClass::minus_one(p.field);
    plain_rhs(p, &inv)?.add(&cup(&inv.e, &m)?)?.add(&c_ell(p.ell, p.field)?.times(inv.beta))
}

/// `e_n = {d} + r{-1}` (n ≡ 0 mod 4) or `{d} + (r + b_n){-1}` (n ≡ 2 mod 4).
pub fn det_formula_check(p: &CohomProfile) -> Result<bool> {
    let inv = derive_invariants(p)?;
    let e_n = p.e_n().ok_or(Error::MissingInput("e_n"))?;
    let k = if p.n % 4 == 0 { inv.r } else { inv.r + p.b_n() };
    Ok(*e_n == p.d_x.add(&SquareClass::minus_one(p.field).times(k))?)
}

/// Compares the de Rham form with the Hodge form `H^m(X, Ω^m)` padded by `s` hyperbolic planes.
pub fn hodge_dr_check(p: &CohomProfile, hw2_hodge: &H2Class, disc_hodge: &SquareClass) -> Result<bool> {
    if let (Some(&b), Some(&h)) = (p.betti.get(p.n), p.hodge.get(p.m()).and_then(|row| row.get(p.m()))) {
        if (b - h).rem_euclid(2) != 0 {
            return Err(Error::ParityViolation(format!("b_n = {b} and h^(m,m) = {h} differ in parity")));
        }
    }
    let inv = derive_invariants(p)?;
    let m = SquareClass::minus_one(p.field);
    let expect = hw2_hodge
        .add(&cup(&m, disc_hodge)?.times(inv.s))?
        .add(&cup(&m, &m)?.times(i64::from(binom2_odd(inv.s))))?;
    Ok(*p.hw2()? == expect && p.d_x == disc_hodge.add(&m.times(inv.s))?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceResult {
    pub name: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

pub fn congruence_checks(p: &CohomProfile) -> Result<Vec<CongruenceResult>> {
    let inv = derive_invariants(p)?;
    let zero_mod4 = p.n % 4 == 0;
    let mut out = Vec::new();
    let mod2 = |x: i64| x.rem_euclid(2);
    let mut push = |name, lhs: i64, rhs: i64, modulus: i64| {
        out.push(CongruenceResult {
            name,
            lhs: format!("{}", lhs),
            rhs: format!("{}", rhs),
            holds: (lhs - rhs).rem_euclid(modulus) == 0,
        })
    };
    push("beta = eta + h (mod 2)", mod2(inv.beta), mod2(inv.eta + inv.h), 2);
    let rr = if zero_mod4 { inv.r } else { inv.r + p.b_n() };
    push("r' = r or r + b_n (mod 2)", mod2(inv.rprime), mod2(rr), 2);
    push(
        "C(r',2) = beta + C(r or r + b_n, 2) (mod 2)",
        i64::from(binom2_odd(inv.rprime)),
        mod2(inv.beta + i64::from(binom2_odd(rr))),
        2,
    );
    if let Some(lef) = &p.lef {
        // P^+ collects q < n with q ≡ 0 (4), P^- those with q ≡ 2 (4).
        let wanted = if zero_mod4 { 2 } else { 0 };
        let parts: Vec<usize> = (0..p.n).step_by(2).filter(|q| q % 4 == wanted).map(|q| q / 2).collect();
        let dim: i64 = parts.iter().map(|&i| lef.prim_dims[i]).sum();
        push("r + 2 beta = -dim P (mod 4)", (inv.r + 2 * inv.beta).rem_euclid(4), (-dim).rem_euclid(4), 4);
        let det = SquareClass::sum(p.field, parts.iter().map(|&i| &lef.prim_dets[i]))?;
        out.push(CongruenceResult {
            name: "e = det P",
            lhs: inv.e.to_string(),
            rhs: det.to_string(),
            holds: inv.e == det,
        });
    }
    Ok(out)
}

/// `∂ sw2(H^n_p) = h ∂ c_p` for a good-reduction profile over `Q_p` with `ℓ = p`.
pub fn crystalline_boundary_check(p: &CohomProfile) -> Result<bool> {
    let inv = derive_invariants(p)?;
    let prime = match p.field {
        BaseField::Padic(2) => return Err(Error::EvenResidueChar),
        BaseField::Padic(prime) => prime,
        f => return Err(Error::UnsupportedField(f)),
    };
    if p.ell != prime {
        return Err(Error::NotGoodReduction(format!("ell = {} differs from p = {prime}", p.ell)));
    }
    let half = (prime as i64 - 1) / 2;
    for q in 0..=p.n {
        if (2 * q as i64 - p.n as i64).abs() >= 2 * half && p.hodge[p.n - q][q] != 0 {
            return Err(Error::HodgeConditionViolated { p: p.n - q, q, h: p.hodge[p.n - q][q], prime });
        }
    }
    if p.hw2()?.bit() != Some(false) {
        return Err(Error::NotGoodReduction("hw2 is ramified".into()));
    }
    for (name, c) in [("d_X", &p.d_x), ("e", &inv.e)] {
        if c.has_odd_valuation()? {
            return Err(Error::NotGoodReduction(format!("{name} is not a unit class")));
        }
    }
    let lhs = boundary(&solve_sw2(p)?)?;
    let rhs = boundary(&c_ell(prime, p.field)?)?.times(inv.h);
    Ok(lhs == rhs)
}

/// The abelian surface profile with trivial classes: `b = (1,4,6,4,1)`.
pub fn abelian_surface(field: BaseField, ell: u64) -> CohomProfile {
    CohomProfile {
        n: 2,
        betti: vec![1, 4, 6, 4, 1],
        hodge: vec![vec![1, 2, 1], vec![2, 4, 2], vec![1, 2, 1]],
        d_x: SquareClass::one(field),
        eq_chars: vec![SquareClass::one(field), SquareClass::one(field)],
        hw2_in: Some(H2Class::zero(field)),
        sw2_in: None,
        ell,
        field,
        lef: Some(LefschetzData {
            prim_dims: vec![1, 5],
            prim_dets: vec![SquareClass::one(field), SquareClass::one(field)],
        }),
    }
}

/// `det H^q(X)(n/2) = e_q χ_ℓ^{(n-q) b_q / 2}` for `q < n`, placed in degree `q - n`.
pub fn graded_determinants(p: &CohomProfile) -> Vec<(i32, CharClass)> {
    (0..p.n)
        .map(|q| {
            let k = (p.n - q) as i64 * p.betti[q] / 2;
            ((q as i32) - (p.n as i32), CharClass::new(p.eq_chars[q].clone(), k, p.ell))
        })
        .collect()
}
