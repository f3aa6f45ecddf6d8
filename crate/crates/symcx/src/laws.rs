//! Executable laws for complexes, symmetric complexes and their total class.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swhw_core::linalg::QMat;

use crate::complex::{bidual_can, cone, cone_inclusion, cone_map, dual, dual_map, dual_shift_iso, fib, Cx, GMap, Triple};
use crate::error::{Error, Result};
use crate::random::{hyperbolic, random_complex, random_graded, random_iso, random_nullhomotopic, random_symcx};
use crate::sym::{cbar, k_natural, lagrangean_check, m_construction, make_symmetric, solve_symmetric_homotopy, w, SymCx};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const LAW_NAMES: [&str; 14] = [
    "sign audit",
    "triple complex",
    "construction oracle",
    "bundle in degree 0",
    "direct sum",
    "quasi-isomorphism invariance",
    "Lagrangean gives cbar",
    "product with the negated form",
    "M construction",
    "cohomology formula",
    "even shift",
    "symmetrization",
    "K natural",
    "Lagrangean of N into K + M",
];

fn check(name: &'static str, r: Result<bool>) -> LawResult {
    match r {
        Ok(passed) => LawResult { name, passed, detail: String::new() },
        Err(e) => LawResult { name, passed: false, detail: e.to_string() },
    }
}

fn id_ok(m: &GMap, k: &Cx) -> bool {
    m.same_as(&k.identity(), k, k)
}

fn sign_audit(rng: &mut ChaCha8Rng, max_dim: usize) -> Result<bool> {
    let k = random_complex(rng, max_dim / 2, 2);
    let l = random_complex(rng, max_dim / 2, 2);
    let dk = dual(&k);
    let ddk = dual(&dk);
    // Dc_K ∘ c_{DK} = id and c_K is a chain map to DDK.
    let comp = dual_map(&bidual_can(&k), &k, &ddk).after(&bidual_can(&dk), &dk, &dual(&ddk), &dk);
    bidual_can(&k).check_chain_map(&k, &ddk)?;
    // A chain map L -> K homotopic to zero, so cones and fibres have content.
    let f = random_nullhomotopic(rng, &l, &k);
    f.check_chain_map(&l, &k)?;
    cone(&f, &l, &k).check()?;
    fib(&f, &l, &k).check()?;
    // Fib(f)[1] = Cone(-f).
    let same = fib(&f, &l, &k).shift(1) == cone(&f.neg(), &l, &k);
    // Cone of an identity is acyclic; cone of zero is K[1] ⊕ L.
    let acyclic = cone(&k.identity(), &k, &k).is_acyclic();
    let zero = l.zero_map(&k, 0);
    let split = cone(&zero, &l, &k) == l.shift(1).direct_sum(&k);
    dk.check()?;
    Ok(id_ok(&comp, &dk) && same && acyclic && split)
}

/// Random `K --f--> L --g--> M` with a homotopy, then the checks on `C`, `DC` and the bidual square.
fn triple_laws(rng: &mut ChaCha8Rng, max_dim: usize) -> Result<bool> {
    let k = random_complex(rng, max_dim / 2, 2);
    let l = random_complex(rng, max_dim / 2, 2);
    let m = random_complex(rng, max_dim / 2, 2);
    let f = random_nullhomotopic(rng, &k, &l);
    let s = random_graded(rng, &l, &m, -1);
    let g = GMap::from_fn(&l, &m, 0, |i| &(&s.at(i + 1, &l, &m) * &l.d(i)) + &(&m.d(i - 1) * &s.at(i, &l, &m)));
    // g ∘ f = (d s + s d) f = d (s f) + (s f) d, since f is a chain map.
    let t = s.after(&f, &k, &l, &m);
    let tri = Triple::new(k.clone(), l.clone(), m.clone(), f.clone(), g.clone(), t.clone())?;
    let c = tri.total();
    c.check()?;
    let dc = dual(&c);
    let dual_tri = tri.dual();
    let iso = tri.dual_iso();
    iso.check_chain_map(&dc, &dual_tri.total())?;
    iso.inverse(&dc, &dual_tri.total())?;
    // The square relating C, its bidual and the dual triple's dual iso.
    let dd_tri = dual_tri.dual();
    let top = tri.map_to(&dd_tri, &bidual_can(&k), &bidual_can(&l), &bidual_can(&m))?;
    let right = dual_tri.dual_iso();
    let ddc = dual(&dc);
    let dtotal = dual_tri.total();
    let bottom = dual_map(&iso, &dc, &dtotal);
    let right_inv = right.inverse(&dual(&dtotal), &dd_tri.total())?;
    let around = bottom.after(&right_inv.after(&top, &c, &dd_tri.total(), &dual(&dtotal)), &c, &dual(&dtotal), &ddc);
    let square = around.same_as(&bidual_can(&c), &c, &ddc);
    // L -> Cone(f) -> M is g.
    let cm = cone_map(&f, &g, &t, &k, &l, &m)?;
    let through = cm.after(&cone_inclusion(&f, &k, &l), &l, &cone(&f, &k, &l), &m);
    let restricts = through.same_as(&g, &l, &m);
    // Degenerate triples: K = M = 0 gives L.
    let z = Cx::zero();
    let only_l = Triple::new(z.clone(), l.clone(), z.clone(), z.zero_map(&l, 0), l.zero_map(&z, 0), z.zero_map(&z, -1))?;
    Ok(square && restricts && only_l.total() == l)
}

fn direct_sum_law(a: &SymCx, b: &SymCx) -> Result<bool> {
    Ok(w(&a.direct_sum(b))? == w(a)?.mul(&w(b)?)?)
}

/// `K_2 = K_1 ⊕ (acyclic hyperbolic)` transported along a random isomorphism, with `f` the inclusion.
fn quasi_iso_law(rng: &mut ChaCha8Rng, s: &SymCx) -> Result<bool> {
    let pieces = (0..rng.gen_range(1..=2)).map(|_| Cx::two_term(rng.gen_range(-2..=2), QMat::identity(1)));
    let acyclic = pieces.fold(Cx::zero(), |acc, p| acc.direct_sum(&p));
    let big = s.direct_sum(&hyperbolic(&acyclic));
    let (k2, phi) = random_iso(rng, &big.k);
    let s2 = big.transport(&phi, &k2)?;
    let hk = hyperbolic(&acyclic).k;
    let incl = GMap::from_fn(&s.k, &big.k, 0, |i| QMat::vstack(&[&QMat::identity(s.k.dim(i)), &QMat::zeros(hk.dim(i), s.k.dim(i))]));
    let f = phi.after(&incl, &s.k, &big.k, &k2);
    // Perturb f within its homotopy class.
    let f = f.add(&random_nullhomotopic(rng, &s.k, &k2), &s.k, &k2);
    let dk1 = s.dual();
    let dk2 = s2.dual();
    let pulled = dual_map(&f, &s.k, &k2).after(&s2.q.after(&f, &s.k, &k2, &dk2), &s.k, &dk2, &dk1);
    let homotopic = crate::complex::find_homotopy(&pulled.sub(&s.q, &s.k, &dk1), &s.k, &dk1).is_some();
    Ok(homotopic && crate::sym::is_quasi_iso(&f, &s.k, &k2) && w(s)? == w(&s2)?)
}

fn m_law(rng: &mut ChaCha8Rng, sample: &crate::random::Sample, max_dim: usize) -> Result<bool> {
    let s = &sample.sym;
    // L = A ⊕ B with f = (the isotropic inclusion, 0) + a nullhomotopic map.
    let b = random_complex(rng, max_dim / 4, 2);
    let l = sample.lag.direct_sum(&b);
    let base = GMap::from_fn(&l, &s.k, 0, |i| {
        QMat::hstack(&[&sample.lag_map.at(i, &sample.lag, &s.k), &QMat::zeros(s.k.dim(i), b.dim(i))])
    });
    let f = base.add(&random_nullhomotopic(rng, &l, &s.k), &l, &s.k);
    let t = solve_symmetric_homotopy(s, &l, &f)?;
    let m = m_construction(s, &l, &f, &t)?;
    m.validate()?;
    let rule = w(s)? == w(&m)?.mul(&cbar(&l))?;
    // With L = A alone the map is Lagrangean and w(K) = cbar(A).
    let t0 = solve_symmetric_homotopy(s, &sample.lag, &sample.lag_map)?;
    let lag = lagrangean_check(s, &sample.lag, &sample.lag_map, &t0)?;
    let lag_ok = !lag || w(s)? == cbar(&sample.lag);
    Ok(rule && lag_ok)
}

/// `w(K) = w(H^0(K)) · Π_{i<0} cbar(H^i)^{(-1)^i}`.
fn cohomology_law(s: &SymCx) -> Result<bool> {
    let e = crate::sym::SymBundle::new(s.form_on_h0().gram)?;
    let mut rhs = e.w()?;
    for i in s.k.lo()..0 {
        let h = Cx::concentrated(i, s.k.cohomology_dim(i));
        rhs = rhs.mul(&cbar(&h))?;
    }
    Ok(w(s)? == rhs)
}

/// For `K' = K[n]` with `n` even, the form on `H^n(K)` induced through `D(K[n]) ≅ (DK)[-n]`
/// is `(-1)^{n/2}` times the form on `H^0(K')`.
fn even_shift_law(s: &SymCx, n: i32) -> Result<bool> {
    let k = s.k.shift(-n);
    // q_K: K -> DK[-2n] at degree i is can^{-1} ∘ q'^{i-n}, read through H^n.
    let can = dual_shift_iso(&k, n);
    let dkn = dual(&k.shift(n));
    let tgt = dual(&k).shift(-n);
    let sign_at_0 = can.at(0, &dkn, &tgt);
    let z = k.cohomology_basis(n);
    let q0 = s.q.at(0, &s.k, &s.dual());
    let induced = &(&z.transpose() * &(&sign_at_0 * &q0)) * &z;
    let sign = if (n / 2) % 2 == 0 { 1 } else { -1 };
    let e = crate::sym::SymBundle::new(induced.scale_i(sign))?;
    let mut rhs = e.w()?;
    for i in k.lo()..n {
        rhs = rhs.mul(&cbar(&Cx::concentrated(i - n, k.cohomology_dim(i))))?;
    }
    Ok(w(s)? == rhs)
}

fn symmetrization_law(rng: &mut ChaCha8Rng, s: &SymCx) -> Result<bool> {
    let dk = s.dual();
    let ddk = dual(&dk);
    let noise = random_nullhomotopic(rng, &s.k, &dk);
    let flipped = dual_map(&noise, &s.k, &dk).after(&bidual_can(&s.k), &s.k, &ddk, &dk);
    let anti = noise.sub(&flipped, &s.k, &dk);
    let raw = s.q.add(&anti, &s.k, &dk);
    let fixed = make_symmetric(&s.k, &raw)?;
    let unchanged = make_symmetric(&s.k, &s.q)?;
    Ok(fixed.q.same_as(&s.q, &s.k, &dk) && unchanged == *s)
}

fn k_natural_law(s: &SymCx) -> Result<bool> {
    let (kn, e) = k_natural(s)?;
    let concentrated = (kn.k.lo()..kn.k.hi()).all(|i| i == 0 || kn.k.cohomology_dim(i) == 0);
    Ok(concentrated && e.rank() == kn.k.cohomology_dim(0) && e.gram.is_symmetric())
}

/// `N = Fib(K → DL) → K ⊕ M` is Lagrangean for `q ⊕ -q_M`.
fn n_lagrangean_law(rng: &mut ChaCha8Rng, sample: &crate::random::Sample, max_dim: usize) -> Result<bool> {
    let s = &sample.sym;
    let b = random_complex(rng, max_dim / 4, 2);
    let l = sample.lag.direct_sum(&b);
    let f = GMap::from_fn(&l, &s.k, 0, |i| QMat::hstack(&[&sample.lag_map.at(i, &sample.lag, &s.k), &QMat::zeros(s.k.dim(i), b.dim(i))]))
        .add(&random_nullhomotopic(rng, &l, &s.k), &l, &s.k);
    let t = solve_symmetric_homotopy(s, &l, &f)?;
    let m = m_construction(s, &l, &f, &t)?;
    let tri = crate::sym::m_triple(s, &l, &f, &t)?;
    let n = fib(&tri.g, &s.k, &tri.m);
    let sum = s.direct_sum(&m.negated());
    let into = GMap::from_fn(&n, &sum.k, 0, |i| {
        let (kd, dl) = (s.k.dim(i), tri.m.dim(i - 1));
        // N^i = K^i ⊕ DL^{i-1} and M^i = L^{i+1} ⊕ K^i ⊕ DL^{i-1}.
        let to_k = QMat::hstack(&[&QMat::identity(kd), &QMat::zeros(kd, dl)]);
        let to_m = QMat::from_blocks(&[l.dim(i + 1), kd, dl], &[kd, dl], &[(1, 0, QMat::identity(kd)), (2, 1, QMat::identity(dl))]);
        QMat::vstack(&[&to_k, &to_m])
    });
    into.check_chain_map(&n, &sum.k)?;
    let t0 = n.zero_map(&dual(&n), -1);
    let lag = lagrangean_check(&sum, &n, &into, &t0)?;
    Ok(lag && w(&sum)? == cbar(&n))
}

fn negation_law(s: &SymCx) -> Result<bool> {
    Ok(w(s)?.mul(&w(&s.negated())?)? == cbar(&s.k))
}

/// Runs every law on instances drawn from `seed`.
pub fn law_suite(seed: u64, max_dim: usize) -> Vec<LawResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_dim = max_dim.max(2);
    let mut out = vec![
        check(LAW_NAMES[0], sign_audit(&mut rng, max_dim)),
        check(LAW_NAMES[1], triple_laws(&mut rng, max_dim)),
    ];
    let sample = match random_symcx(&mut rng, max_dim) {
        Ok(s) => s,
        Err(e) => {
            out.extend(LAW_NAMES[2..].iter().map(|&name| LawResult { name, passed: false, detail: e.to_string() }));
            return out;
        }
    };
    let other = random_symcx(&mut rng, max_dim / 2);
    let s = &sample.sym;
    out.push(check(LAW_NAMES[2], w(s).map(|x| x == sample.expected_w)));
    out.push(check(LAW_NAMES[3], sample.bundle.to_complex().validate().map_err(Error::from).and_then(|_| {
        Ok(w(&sample.bundle.to_complex())? == sample.bundle.w()?)
    })));
    out.push(check(LAW_NAMES[4], other.and_then(|o| direct_sum_law(s, &o.sym))));
    out.push(check(LAW_NAMES[5], quasi_iso_law(&mut rng, s)));
    out.push(check(LAW_NAMES[6], lagrangean_law(&sample)));
    out.push(check(LAW_NAMES[7], negation_law(s)));
    out.push(check(LAW_NAMES[8], m_law(&mut rng, &sample, max_dim)));
    out.push(check(LAW_NAMES[9], cohomology_law(s)));
    let n = 2 * rng.gen_range(0..=2);
    out.push(check(LAW_NAMES[10], even_shift_law(s, n)));
    out.push(check(LAW_NAMES[11], symmetrization_law(&mut rng, s)));
    out.push(check(LAW_NAMES[12], k_natural_law(s)));
    out.push(check(LAW_NAMES[13], n_lagrangean_law(&mut rng, &sample, max_dim)));
    out
}

fn lagrangean_law(sample: &crate::random::Sample) -> Result<bool> {
    let s = &sample.sym;
    if sample.bundle.rank() > 0 {
        // The diagonal K -> K ⊕ K is Lagrangean for q ⊕ -q.
        let sum = s.direct_sum(&s.negated());
        let diag = GMap::from_fn(&s.k, &sum.k, 0, |i| QMat::vstack(&[&QMat::identity(s.k.dim(i)), &QMat::identity(s.k.dim(i))]));
        let t = s.k.zero_map(&dual(&s.k), -1);
        return Ok(lagrangean_check(&sum, &s.k, &diag, &t)? && w(&sum)? == cbar(&s.k));
    }
    let t = s.k.zero_map(&dual(&s.k), -1);
    let t = solve_symmetric_homotopy(s, &sample.lag, &sample.lag_map).unwrap_or(t);
    Ok(lagrangean_check(s, &sample.lag, &sample.lag_map, &t)? && w(s)? == cbar(&sample.lag))
}
