//! Hodge numbers of smooth hypersurfaces from the Jacobian ring of a Fermat equation.

use super::{CohomProfile, LefschetzData};
use crate::coh::{BaseField, H2Class, SquareClass};
use crate::error::{Error, Result};

/// Coefficients of `((1 - t^{d-1}) / (1 - t))^{n+2}`, the Hilbert series of
/// `C[x_0, ..., x_{n+1}] / (x_i^{d-1})`.
pub fn jacobian_ring_series(n: usize, d: usize) -> Vec<i64> {
    if d < 2 {
        return vec![0];
    }
    let mut series = vec![1i64];
    let block = d - 1;
    for _ in 0..n + 2 {
        let mut next = vec![0i64; series.len() + block - 1];
        for (i, &c) in series.iter().enumerate() {
            for j in 0..block {
                next[i + j] += c;
            }
        }
        series = next;
    }
    series
}

/// `h^{n-p,p}` for `0 <= p <= n` of a smooth degree `d` hypersurface of dimension `n`.
pub fn hypersurface_hodge(n: usize, d: usize) -> Vec<i64> {
    let series = jacobian_ring_series(n, d);
    (0..=n)
        .map(|p| {
            let degree = (p as i64 + 1) * d as i64 - n as i64 - 2;
            let prim = usize::try_from(degree).ok().and_then(|k| series.get(k)).copied().unwrap_or(0);
            prim + i64::from(2 * p == n)
        })
        .collect()
}

/// Profile of a smooth degree `d` hypersurface of even dimension `n` with all classes trivial
/// and `hw2`, `sw2` left unknown.
pub fn hypersurface_profile(n: usize, d: usize, ell: u64, field: BaseField) -> Result<CohomProfile> {
    if n % 2 != 0 {
        return Err(Error::ValidationFailed(format!("dimension {n} is odd")));
    }
    if d < 2 {
        return Err(Error::ValidationFailed(format!("degree {d} is below 2")));
    }
    let middle = hypersurface_hodge(n, d);
    let mut hodge = vec![vec![0i64; n + 1]; n + 1];
    for p in 0..=n {
        hodge[p][p] = 1;
    }
    for (p, &h) in middle.iter().enumerate() {
        hodge[n - p][p] = h;
    }
    let betti: Vec<i64> = (0..=2 * n)
        .map(|q| match q {
            q if q == n => middle.iter().sum(),
            q if q % 2 == 0 => 1,
            _ => 0,
        })
        .collect();
    let one = SquareClass::one(field);
    // Smooth hypersurfaces have good reduction at every odd p, where the middle cup product
    // form is unimodular on the integral lattice; its Hasse-Witt class then vanishes over Q_p.
    let hw2_in = match field {
        BaseField::Padic(p) if p != 2 => Some(H2Class::zero(field)),
        _ => None,
    };
    let prim_dims = (0..=n).step_by(2).map(|q| if q == 0 { betti[0] } else { betti[q] - betti[q - 2] }).collect();
    let profile = CohomProfile {
        n,
        betti,
        hodge,
        d_x: one.clone(),
        eq_chars: vec![one.clone(); n],
        hw2_in,
        sw2_in: None,
        ell,
        field,
        lef: Some(LefschetzData { prim_dims, prim_dets: vec![one; n / 2 + 1] }),
    };
    profile.validate()?;
    Ok(profile)
}
