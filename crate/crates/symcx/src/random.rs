//! Random complexes and symmetric complexes with structure known by construction.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::Rng;
use swhw_core::coh::TruncClass;
use swhw_core::linalg::QMat;

use crate::complex::{bidual_can, dual, Cx, GMap};
use crate::error::Result;
use crate::sym::{cbar, SymBundle, SymCx};

fn int(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

/// An invertible integer matrix built from elementary operations.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> QMat {
    let mut g = QMat::identity(n);
    if n == 0 {
        return g;
    }
    for i in 0..n {
        if rng.gen_bool(0.3) {
            g.set(i, i, int(if rng.gen_bool(0.5) { -1 } else { 2 }));
        }
    }
    if n < 2 {
        return g;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let mut e = QMat::identity(n);
        e.set(i, j, int(rng.gen_range(-2..=2)));
        g = &g * &e;
    }
    g
}

/// A sum of shifted copies of `Q` and of `Q --1--> Q` in degrees `[-span, span]`, with random
/// bases. Total dimension at most `max_dim`.
pub fn random_complex(rng: &mut impl Rng, max_dim: usize, span: i32) -> Cx {
    let mut k = Cx::zero();
    let mut budget = max_dim;
    while budget > 0 && rng.gen_bool(0.75) {
        let deg = rng.gen_range(-span..=span);
        if budget >= 2 && rng.gen_bool(0.5) {
            k = k.direct_sum(&Cx::two_term(deg, QMat::identity(1)));
            budget -= 2;
        } else {
            k = k.direct_sum(&Cx::concentrated(deg, 1));
            budget -= 1;
        }
    }
    random_iso(rng, &k).0
}

/// A random chain isomorphism `phi: K -> K'`.
pub fn random_iso(rng: &mut impl Rng, k: &Cx) -> (Cx, GMap) {
    let g: BTreeMap<i32, QMat> = (k.lo()..k.hi()).map(|i| (i, random_invertible(rng, k.dim(i)))).collect();
    let at = |i: i32| g.get(&i).cloned().unwrap_or_else(|| QMat::identity(k.dim(i)));
    let k2 = Cx::from_fn(k.lo(), k.hi(), |i| k.dim(i), |i| &(&at(i + 1) * &k.d(i)) * &at(i).inverse().expect("invertible"));
    let phi = GMap::from_fn(k, &k2, 0, at);
    (k2, phi)
}

/// A nondegenerate symmetric Gram matrix `P^T diag(a) P`.
pub fn random_bundle(rng: &mut impl Rng, rank: usize) -> SymBundle {
    const ENTRIES: [i64; 12] = [-7, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 10];
    let diag: Vec<BigRational> = (0..rank).map(|_| int(ENTRIES[rng.gen_range(0..ENTRIES.len())])).collect();
    let p = random_invertible(rng, rank);
    SymBundle::new(&(&p.transpose() * &QMat::diagonal(&diag)) * &p).expect("congruent to a diagonal form")
}

/// `A ⊕ DA` with `q(a, α) = (α, c_A a)`.
pub fn hyperbolic(a: &Cx) -> SymCx {
    let da = dual(a);
    let k = a.direct_sum(&da);
    let dk = dual(&k);
    let c = bidual_can(a);
    let q = GMap::from_fn(&k, &dk, 0, |i| {
        let (n, m) = (a.dim(i), da.dim(i));
        QMat::from_blocks(&[m, n], &[n, m], &[(0, 1, QMat::identity(m)), (1, 0, c.at(i, a, &dual(&da)))])
    });
    SymCx { k, q }
}

/// The inclusion `A -> A ⊕ DA`.
pub fn hyperbolic_inclusion(a: &Cx) -> GMap {
    let k = a.direct_sum(&dual(a));
    GMap::from_fn(a, &k, 0, |i| QMat::vstack(&[&QMat::identity(a.dim(i)), &QMat::zeros(dual(a).dim(i), a.dim(i))]))
}

/// A random symmetric complex together with its class computed from the construction:
/// `w(E) · cbar(A)` for `E[0] ⊕ (A ⊕ DA)` transported along a random isomorphism.
#[derive(Debug, Clone)]
pub struct Sample {
    pub sym: SymCx,
    pub expected_w: TruncClass,
    /// The isotropic piece `A` and its image in `sym.k`.
    pub lag: Cx,
    pub lag_map: GMap,
    pub bundle: SymBundle,
}

pub fn random_symcx(rng: &mut impl Rng, max_dim: usize) -> Result<Sample> {
    let rank = rng.gen_range(0..=max_dim.min(4));
    let bundle = random_bundle(rng, rank);
    let a = random_complex(rng, (max_dim - rank) / 2, 2);
    let base = bundle.to_complex().direct_sum(&hyperbolic(&a));
    let (k2, phi) = random_iso(rng, &base.k);
    let sym = base.transport(&phi, &k2)?;
    // A sits in the hyperbolic summand after the bundle.
    let incl = hyperbolic_inclusion(&a);
    let hk = hyperbolic(&a).k;
    let pad = GMap::from_fn(&a, &base.k, 0, |i| {
        QMat::vstack(&[&QMat::zeros(bundle.to_complex().k.dim(i), a.dim(i)), &incl.at(i, &a, &hk)])
    });
    let lag_map = phi.after(&pad, &a, &base.k, &k2);
    let expected_w = bundle.w()?.mul(&cbar(&a))?;
    Ok(Sample { sym, expected_w, lag: a, lag_map, bundle })
}

/// A random map of degree `deg` between two complexes.
pub fn random_graded(rng: &mut impl Rng, src: &Cx, tgt: &Cx, deg: i32) -> GMap {
    GMap::from_fn(src, tgt, deg, |i| QMat::from_fn(tgt.dim(i + deg), src.dim(i), |_, _| int(rng.gen_range(-1..=1))))
}

/// `d s + s d` for a random `s` of degree -1: a chain map homotopic to zero.
pub fn random_nullhomotopic(rng: &mut impl Rng, src: &Cx, tgt: &Cx) -> GMap {
    let s = random_graded(rng, src, tgt, -1);
    GMap::from_fn(src, tgt, 0, |i| &(&s.at(i + 1, src, tgt) * &src.d(i)) + &(&tgt.d(i - 1) * &s.at(i, src, tgt)))
}
