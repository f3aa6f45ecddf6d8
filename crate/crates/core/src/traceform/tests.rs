use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;

fn companion(f: &Poly) -> QMat {
    let n = f.degree().unwrap();
    let c = f.coeffs();
    let mut m = QMat::zeros(n, n);
    for i in 1..n {
        m.set(i, i - 1, BigRational::one());
    }
    for i in 0..n {
        m.set(i, n - 1, BigRational::from_integer(-c[i].clone()));
    }
    m
}

/// `p_k = tr(C^k)` for the companion matrix `C`.
fn power_sums_by_trace(f: &Poly, count: usize) -> Vec<BigInt> {
    let c = companion(f);
    let n = c.rows();
    let mut m = QMat::identity(n);
    let mut out = Vec::new();
    for _ in 0..count {
        let tr: BigRational = (0..n).map(|i| m.get(i, i).clone()).sum();
        out.push(tr.to_integer());
        m = &m * &c;
    }
    out
}

/// `disc(f) = (-1)^{n(n-1)/2} Res(f, f')` through the Sylvester matrix.
fn discriminant_by_resultant(f: &Poly) -> BigRational {
    let g = f.derivative();
    let (n, m) = (f.degree().unwrap(), g.degree().unwrap());
    let size = n + m;
    let mut s = QMat::zeros(size, size);
    for i in 0..m {
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            s.set(i, i + j, BigRational::from_integer(c.clone()));
        }
    }
    for i in 0..n {
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            s.set(m + i, i + j, BigRational::from_integer(c.clone()));
        }
    }
    let res = s.det();
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

#[test]
fn power_sums_match_companion_traces() {
    for s in ["x^2-2", "x^3-3x+1", "x^4-10x^2+1", "x^5-x-1", "(x^2+1)(x^2-5)(x^2+3)", "x^7+3x^4-2x+11"] {
        let a = EtaleAlgebra::parse(s).unwrap();
        let n = a.degree();
        assert_eq!(a.power_sums(2 * n + 3), power_sums_by_trace(a.poly(), 2 * n + 3), "{s}");
    }
}

#[test]
fn gram_determinant_is_the_discriminant() {
    for s in ["x^2-2", "x^3-3x+1", "x^4-10x^2+1", "x^5-x-1", "x^6+x+1"] {
        let a = EtaleAlgebra::parse(s).unwrap();
        assert_eq!(a.trace_gram().det(), discriminant_by_resultant(a.poly()), "{s}");
    }
}

#[test]
fn quadratic_example() {
    let a = EtaleAlgebra::parse("x^2-2").unwrap();
    assert_eq!(a.power_sums(3), vec![BigInt::from(2), BigInt::from(0), BigInt::from(4)]);
}

#[test]
fn biquadratic_example() {
    let a = EtaleAlgebra::parse("(x^2-2)(x^2-3)").unwrap();
    let split = AbelianSplitting::parse("q2,q3").unwrap();
    let r = serre_check(&a, Some(&split)).unwrap();
    assert_eq!(r.status, SerreStatus::Equal);
    assert_eq!(r.lhs.unwrap().to_string(), "{2, 3}");
    // The field Q(√2, √3) itself: its permutation representation is the regular
    // representation 1 + χ_2 + χ_3 + χ_6 of the Klein group.
    let b = EtaleAlgebra::parse("x^4-10x^2+1").unwrap();
    let r = serre_check(&b, None).unwrap();
    assert_eq!(r.status, SerreStatus::OracleUnavailable);
    let q = |a: i64| SquareClass::from_i64(BaseField::Rationals, a).unwrap();
    let regular = crate::quadform::DiagForm::from_i64(BaseField::Rationals, &[1, 2, 3, 6]).unwrap();
    assert_eq!(r.rhs, regular.hw2().unwrap());
    assert_eq!(r.rhs, cup(&q(2), &q(3)).unwrap().add(&cup(&q(3), &q(-1)).unwrap()).unwrap());
    assert!(r.rhs.is_zero());
    let wrong = AbelianSplitting::parse("q-1,q-1").unwrap();
    assert_eq!(serre_check(&b, Some(&wrong)).unwrap().status, SerreStatus::NotEqual);
}

#[test]
fn odd_cyclic_cubic() {
    let a = EtaleAlgebra::parse("x^3-3x+1").unwrap();
    let r = serre_check(&a, Some(&AbelianSplitting::parse("o3").unwrap())).unwrap();
    assert_eq!(r.status, SerreStatus::Equal);
    assert!(r.disc.is_trivial());
}

#[test]
fn rejects_bad_input() {
    assert_eq!(EtaleAlgebra::parse("(x-1)^2").unwrap_err(), Error::NotSquarefree);
    assert_eq!(EtaleAlgebra::parse("2x^2-1").unwrap_err(), Error::NotMonic);
    assert_eq!(EtaleAlgebra::parse("x^25+1").unwrap_err(), Error::DegreeTooLarge { degree: 25, cap: 24 });
    let a = EtaleAlgebra::parse("x^2-2").unwrap();
    let bad = AbelianSplitting::parse("q2,q3").unwrap();
    assert_eq!(serre_check(&a, Some(&bad)).unwrap_err(), Error::DimensionMismatch { expected: 2, got: 4 });
    assert!(AbelianSplitting::parse("q1").is_err());
    assert!(AbelianSplitting::parse("o2").is_err());
}

#[test]
fn small_quadratic_corpus() {
    let params = quadratic_parameters(12);
    for (i, &a) in params.iter().enumerate() {
        for &b in &params[i + 1..] {
            let (alg, split) = quadratic_product(&[a, b]).unwrap();
            let r = serre_check(&alg, Some(&split)).unwrap();
            assert_eq!(r.status, SerreStatus::Equal, "a={a} b={b}");
        }
    }
}
