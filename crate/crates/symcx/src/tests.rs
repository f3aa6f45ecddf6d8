use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use swhw_core::arith::rat;
use swhw_core::coh::{cup, BaseField, H2Class, SquareClass, TruncClass};
use swhw_core::linalg::QMat;
use swhw_core::quadform::{signature, QuadSpace};

use crate::complex::{bidual_can, cone, dual, dual_map, dual_shift_iso, Cx, GMap, Triple};
use crate::random::{hyperbolic, random_iso, random_nullhomotopic, random_symcx};
use crate::sym::{cbar, k_natural, lagrangean_check, m_construction, make_symmetric, w, SymBundle, SymCx};
use crate::Error;

const Q: BaseField = BaseField::Rationals;

fn m(rows: &[&[i64]]) -> QMat {
    QMat::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
}

fn diag(entries: &[i64]) -> QMat {
    QMat::diagonal(&entries.iter().map(|&x| rat(x)).collect::<Vec<BigRational>>())
}

fn sq(a: i64) -> SquareClass {
    SquareClass::from_i64(Q, a).unwrap()
}

fn minus_one_sq() -> H2Class {
    cup(&sq(-1), &sq(-1)).unwrap()
}

/// `(1 + {-1})^n` written out: `n {-1} + C(n, 2) {-1,-1}`, valid for negative `n` too.
fn cbar_oracle(n: i64) -> TruncClass {
    let s1 = if n.rem_euclid(2) == 1 { sq(-1) } else { SquareClass::one(Q) };
    let s2 = if (n * (n - 1) / 2).rem_euclid(2) == 1 { minus_one_sq() } else { H2Class::zero(Q) };
    TruncClass::new(s1, s2).unwrap()
}

/// Hasse-Minkowski: rank, signature and the classes determine a form over Q.
fn congruent(a: &QMat, b: &QMat) -> bool {
    let (qa, qb) = (QuadSpace::over_q(a.clone()).unwrap(), QuadSpace::over_q(b.clone()).unwrap());
    a.rows() == b.rows()
        && signature(&qa).unwrap() == signature(&qb).unwrap()
        && SymBundle::new(a.clone()).unwrap().w().unwrap() == SymBundle::new(b.clone()).unwrap().w().unwrap()
}

/// `E[0] ⊕ hyperbolic(Q --id--> Q)` moved along a random isomorphism.
fn padded(rng: &mut ChaCha8Rng, gram: &QMat, deg: i32) -> SymCx {
    let e = SymBundle::new(gram.clone()).unwrap().to_complex();
    let big = e.direct_sum(&hyperbolic(&Cx::two_term(deg, QMat::identity(1))));
    let (k2, phi) = random_iso(rng, &big.k);
    big.transport(&phi, &k2).unwrap()
}

#[test]
fn dual_in_degree_zero_is_transpose() {
    let k = Cx::concentrated(0, 2);
    let l = Cx::concentrated(0, 3);
    let a = m(&[&[1, 2], &[3, 4], &[5, 6]]);
    let h = GMap::from_fn(&k, &l, 0, |_| a.clone());
    let dh = dual_map(&h, &k, &l);
    assert_eq!(dh.at(0, &dual(&l), &dual(&k)), a.transpose());
    assert!(bidual_can(&k).same_as(&k.identity(), &k, &dual(&dual(&k))));
}

#[test]
fn dual_of_two_term_complex() {
    let d = m(&[&[1, 2], &[0, 1], &[3, 0]]);
    let k = Cx::two_term(0, d.clone());
    let dk = dual(&k);
    dk.check().unwrap();
    assert_eq!((dk.lo(), dk.hi()), (-1, 1));
    assert_eq!(dk.d(-1), d.transpose());
    // D(c_K) ∘ c_{DK} is the identity of DK.
    let ddk = dual(&dk);
    let composite = dual_map(&bidual_can(&k), &k, &ddk).after(&bidual_can(&dk), &dk, &dual(&ddk), &dk);
    assert!(composite.same_as(&dk.identity(), &dk, &dk));
}

#[test]
fn even_shift_sign_is_a_scalar() {
    let k = Cx::two_term(-1, m(&[&[1], &[2]]));
    for (n, s) in [(2, -1), (4, 1), (-2, -1)] {
        let iso = dual_shift_iso(&k, n);
        let src = dual(&k.shift(n));
        for i in src.lo()..src.hi() {
            assert_eq!(iso.at(i, &src, &dual(&k).shift(-n)), QMat::scalar(src.dim(i), rat(s)));
        }
    }
}

#[test]
fn cone_examples() {
    let k = Cx::concentrated(0, 2);
    assert!(cone(&k.identity(), &k, &k).is_acyclic());
    let l = Cx::two_term(0, m(&[&[1, 1]]));
    let c = cone(&k.zero_map(&l, 0), &k, &l);
    let expected = k.shift(1).direct_sum(&l);
    assert_eq!(c, expected);
}

#[test]
fn triple_with_outer_terms_zero_is_middle() {
    let l = Cx::two_term(0, m(&[&[2], &[1]]));
    let z = Cx::zero();
    let tri = Triple::new(z.clone(), l.clone(), z.clone(), z.zero_map(&l, 0), l.zero_map(&z, 0), z.zero_map(&z, -1)).unwrap();
    assert_eq!(tri.total(), l);
}

#[test]
fn triple_rejects_a_bad_homotopy() {
    let k = Cx::concentrated(0, 1);
    let f = k.identity();
    let t = k.zero_map(&k, -1);
    assert!(matches!(Triple::new(k.clone(), k.clone(), k.clone(), f.clone(), f, t), Err(Error::NotHomotopy(_))));
}

#[test]
fn make_symmetric_fixes_symmetric_input() {
    let s = SymBundle::new(diag(&[1, -3])).unwrap().to_complex();
    let out = make_symmetric(&s.k, &s.q).unwrap();
    assert!(out.q.same_as(&s.q, &s.k, &s.dual()));
}

#[test]
fn make_symmetric_strips_a_homotopic_perturbation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s = padded(&mut rng, &diag(&[2, 5]), -1);
    let dk = s.dual();
    let pert = random_nullhomotopic(&mut rng, &s.k, &dk);
    let raw = s.q.add(&pert, &s.k, &dk);
    let out = make_symmetric(&s.k, &raw).unwrap();
    out.validate().unwrap();
    assert_eq!(w(&out).unwrap(), w(&s).unwrap());
}

#[test]
fn make_symmetric_rejects_a_degenerate_map() {
    let k = Cx::concentrated(0, 2);
    let q = GMap::from_fn(&k, &dual(&k), 0, |_| diag(&[1, 0]));
    assert!(matches!(make_symmetric(&k, &q), Err(Error::NotQuasiIso)));
}

#[test]
fn m_construction_with_zero_source_is_identity() {
    let s = SymBundle::new(m(&[&[0, 1], &[1, 3]])).unwrap().to_complex();
    let z = Cx::zero();
    let out = m_construction(&s, &z, &z.zero_map(&s.k, 0), &z.zero_map(&dual(&z), -1)).unwrap();
    assert_eq!(out.k, s.k);
    assert!(out.q.same_as(&s.q, &s.k, &s.dual()));
}

#[test]
fn k_natural_of_a_bundle_is_the_bundle() {
    let g = m(&[&[2, 1], &[1, 3]]);
    let (kn, e) = k_natural(&SymBundle::new(g.clone()).unwrap().to_complex()).unwrap();
    assert_eq!(e.gram, g);
    assert_eq!(kn.k.cohomology_dim(0), 2);
}

#[test]
fn k_natural_recovers_a_resolved_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let plane = m(&[&[0, 1], &[1, 0]]);
    for g in [diag(&[1, 1]), diag(&[-1, 3]), plane.clone(), diag(&[2, 7])] {
        for deg in -3..=2 {
            let s = padded(&mut rng, &g, deg);
            let (kn, e) = k_natural(&s).unwrap();
            for i in kn.k.lo()..kn.k.hi() {
                if i != 0 {
                    assert_eq!(kn.k.cohomology_dim(i), 0);
                }
            }
            // Padding that straddles degree 0 is cut by the truncation and leaves a hyperbolic plane.
            let expected = if deg == -1 || deg == 0 { QMat::block_diag(&[&g, &plane]) } else { g.clone() };
            assert!(congruent(&e.gram, &expected), "deg {deg}: {:?} vs {:?}", e.gram, expected);
        }
    }
}

#[test]
fn cbar_examples() {
    for r in 0..6 {
        assert_eq!(cbar(&Cx::concentrated(0, r)), cbar_oracle(r as i64));
    }
    assert!(cbar(&Cx::two_term(-1, QMat::identity(3))).is_one());
    let k = Cx::concentrated(0, 3);
    assert_eq!(cbar(&k.shift(1)), cbar(&k).inv().unwrap());
    assert_eq!(cbar(&k.shift(1)), cbar_oracle(-3));
}

#[test]
fn w_of_a_rank_one_form() {
    for a in [2, -1, 3, -6, 5] {
        let s = SymBundle::new(diag(&[a])).unwrap().to_complex();
        assert_eq!(w(&s).unwrap(), TruncClass::linear(&sq(a)));
        // prw.6: w(a) w(-a) = 1 + {-1}, using {a} + {-a} = {-1} and {a, -a} = 0.
        let prod = w(&s).unwrap().mul(&w(&s.negated()).unwrap()).unwrap();
        assert_eq!(prod, cbar_oracle(1));
    }
}

#[test]
fn whitney_on_diagonal_bundles() {
    let a = SymBundle::new(diag(&[3, -2])).unwrap().to_complex();
    let b = SymBundle::new(diag(&[5])).unwrap().to_complex();
    let expected = [3, -2, 5].iter().map(|&x| TruncClass::linear(&sq(x))).collect::<Vec<_>>();
    let expected = TruncClass::product(Q, &expected).unwrap();
    assert_eq!(w(&a.direct_sum(&b)).unwrap(), expected);
}

#[test]
fn hyperbolic_has_w_of_its_lagrangean() {
    let two_step = Cx::from_fn(-1, 2, |i| if i == 0 { 2 } else { 1 }, |i| if i == -1 { m(&[&[1], &[0]]) } else { m(&[&[0, 1]]) });
    for a in [Cx::two_term(0, QMat::identity(2)), two_step, Cx::concentrated(1, 1), Cx::concentrated(-2, 3)] {
        let h = hyperbolic(&a);
        let incl = crate::random::hyperbolic_inclusion(&a);
        assert!(lagrangean_check(&h, &a, &incl, &a.zero_map(&dual(&a), -1)).unwrap());
        assert_eq!(w(&h).unwrap(), cbar(&a));
    }
    // With the Lagrangean in positive degrees, w = cbar(K^{>0}).
    let h = hyperbolic(&Cx::concentrated(1, 1));
    assert_eq!(w(&h).unwrap(), cbar(&h.k.above(0)));
    assert_eq!(w(&h).unwrap(), cbar_oracle(-1));
    assert!(!w(&h).unwrap().s2.is_zero());
}

#[test]
fn zero_is_not_lagrangean_in_a_nonacyclic_complex() {
    let s = SymBundle::new(diag(&[1])).unwrap().to_complex();
    let z = Cx::zero();
    assert!(!lagrangean_check(&s, &z, &z.zero_map(&s.k, 0), &z.zero_map(&dual(&z), -1)).unwrap());
}

#[test]
fn diagonal_is_lagrangean_for_opposite_forms() {
    let s = SymBundle::new(m(&[&[1, 2], &[2, -3]])).unwrap().to_complex();
    let sum = s.direct_sum(&s.negated());
    let diag_map = GMap::from_fn(&s.k, &sum.k, 0, |_| QMat::vstack(&[&QMat::identity(2), &QMat::identity(2)]));
    assert!(lagrangean_check(&sum, &s.k, &diag_map, &s.k.zero_map(&dual(&s.k), -1)).unwrap());
}

#[test]
fn symmetric_homotopy_is_required() {
    let s = SymBundle::new(diag(&[1, 1])).unwrap().to_complex();
    let l = Cx::concentrated(0, 1).direct_sum(&Cx::concentrated(1, 1));
    let dl = dual(&l);
    let f = l.zero_map(&s.k, 0);
    let t = GMap::from_fn(&l, &dl, -1, |i| m(&[&[i as i64 + 1]]));
    assert!(!crate::sym::is_symmetric_map(&t, &l));
    assert!(matches!(crate::sym::m_triple(&s, &l, &f, &t), Err(Error::NotSymmetricHomotopy)));
    let t = GMap::from_fn(&l, &dl, -1, |_| m(&[&[1]]));
    assert!(crate::sym::is_symmetric_map(&t, &l));
}

#[test]
fn json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = random_symcx(&mut rng, 6).unwrap().sym;
    let text = s.to_json().to_string();
    let back = SymCx::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, s);
    let bad = serde_json::json!({"lo": 0, "dims": [1, 1], "d": [[["1", "0"]]]});
    assert!(matches!(Cx::from_json(&bad), Err(Error::Parse(_))));
    let not_complex = serde_json::json!({"lo": 0, "dims": [1, 1, 1], "d": [[["1"]], [["1"]]]});
    assert!(matches!(Cx::from_json(&not_complex), Err(Error::NotAComplex(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn laws_hold(seed in any::<u64>()) {
        for r in crate::law_suite(seed, 8) {
            prop_assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn sample_w_matches_construction(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sample = random_symcx(&mut rng, 8).unwrap();
        sample.sym.validate().unwrap();
        prop_assert_eq!(w(&sample.sym).unwrap(), sample.expected_w);
    }

    #[test]
    fn cbar_is_additive_and_dual_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = crate::random::random_complex(&mut rng, 5, 3);
        prop_assert_eq!(cbar(&k), cbar_oracle(k.euler_char()));
        prop_assert_eq!(cbar(&dual(&k)), cbar(&k));
    }
}
