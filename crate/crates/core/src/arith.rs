//! Integer and rational helpers: valuations, residue symbols, squarefree kernels.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn is_prime_u64(p: u64) -> bool {
    num_prime::nt_funcs::is_prime64(p)
}

/// Writes `n = p^v * u` with `p` not dividing `u`. `n` must be nonzero.
pub fn split_valuation(n: &BigInt, p: &BigUint) -> (u32, BigInt) {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p.clone());
    let mut v = 0;
    let mut u = n.clone();
    loop {
        let (q, r) = u.div_rem(&p);
        if !r.is_zero() {
            return (v, u);
        }
        u = q;
        v += 1;
    }
}

/// Primes dividing `n` to an odd power, ascending.
pub fn odd_primes(n: &BigUint) -> Vec<BigUint> {
    if n.is_one() || n.is_zero() {
        return Vec::new();
    }
    if let Some(small) = n.to_u64() {
        return num_prime::nt_funcs::factorize64(small)
            .into_iter()
            .filter(|(_, e)| e % 2 == 1)
            .map(|(p, _)| BigUint::from(p))
            .collect();
    }
    num_prime::nt_funcs::factorize(n.clone())
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .collect()
}

/// An integer in the same square class as the nonzero rational `a`.
pub fn integral_rep(a: &BigRational) -> BigInt {
    a.numer() * a.denom()
}

/// Signed squarefree kernel of a nonzero rational, with its prime support.
pub fn squarefree_kernel(a: &BigRational) -> Result<(BigInt, Vec<BigUint>)> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let num = a.numer().magnitude().clone();
    let den = a.denom().magnitude().clone();
    let mut primes = odd_primes(&num);
    for p in odd_primes(&den) {
        match primes.binary_search(&p) {
            Ok(i) => {
                primes.remove(i);
            }
            Err(i) => primes.insert(i, p),
        }
    }
    let mut value = BigInt::one();
    for p in &primes {
        value *= BigInt::from(p.clone());
    }
    if a.is_negative() {
        value = -value;
    }
    Ok((value, primes))
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigUint) -> i8 {
    assert!(n.is_odd(), "jacobi symbol needs an odd modulus");
    let n_int = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n_int).to_biguint().expect("nonnegative");
    let mut n = n.clone();
    let mut t = 1i8;
    let three = BigUint::from(3u8);
    let five = BigUint::from(5u8);
    let eight = BigUint::from(8u8);
    let four = BigUint::from(4u8);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = &n % &eight;
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if &a % &four == three && &n % &four == three {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Least positive quadratic nonresidue modulo the odd prime `p`.
pub fn least_nonresidue(p: u64) -> u64 {
    let pb = BigUint::from(p);
    (2..p)
        .find(|&u| jacobi(&BigInt::from(u), &pb) == -1)
        .expect("odd prime has a nonresidue")
}

/// `C(r, 2) mod 2` through the polynomial `r(r-1)/2`, valid for negative `r`.
pub fn binom2_odd(r: i64) -> bool {
    let r = r.rem_euclid(4);
    r == 2 || r == 3
}

pub fn parity(k: i64) -> bool {
    k.rem_euclid(2) == 1
}

/// Parses `"p/q"`, `"p"` or a decimal-free integer string.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Size of a rational in bits, used for pivot heuristics.
pub fn height(q: &BigRational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

pub fn sign_of(n: &BigInt) -> Sign {
    n.sign()
}
