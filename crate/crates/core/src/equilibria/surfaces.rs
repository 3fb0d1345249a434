use alloc::vec::Vec;

use crate::cubic::{eigenvalues, modulus};
use crate::map::{jacobian, Params, CUBOID_MU_MAX};
use crate::{Error, Result};

use super::points::{fixed_point, FixedPointId};

/// Default bisection tolerance on `mu` for the coexistence-point
/// Neimark-Sacker value.
pub const DEFAULT_PSI4_TOL: f64 = 1e-10;

const SCAN_POINTS: usize = 400;
// A scan endpoint this close to unit modulus counts as "on the circle".
const ENDPOINT_BAND: f64 = 1e-9;

/// Birth of the predator-prey point `P3` (transcritical with `P2`).
pub fn mu_p3_birth(beta: f64) -> f64 {
    beta / (beta - 1.0)
}

/// Onset of complex eigenvalues at `P3`.
pub fn mu_p3_spiral(beta: f64) -> f64 {
    // 2b(b - 1 - sqrt(b(b-2))), rationalised
    2.0 * beta / (beta - 1.0 + libm::sqrt(beta * (beta - 2.0)))
}

/// Birth of the coexistence point `P4` (transcritical with `P3`).
pub fn mu_p4_birth(beta: f64, gamma: f64) -> f64 {
    beta * gamma / ((beta - 1.0) * gamma - beta)
}

/// Loss of stability of the complex pair at `P3`.
pub fn mu_p3_flip(beta: f64) -> f64 {
    beta / (beta - 2.0)
}

/// Largest modulus of the complex pair at the coexistence point.
///
/// If the spectrum happens to be real, the largest modulus of the whole
/// spectrum is returned instead.
pub fn p4_pair_modulus(p: &Params) -> f64 {
    let ev = eigenvalues(&jacobian(fixed_point(FixedPointId::P4, p), p));
    let pair = ev.iter().filter(|l| l.im != 0.0).map(modulus).fold(f64::NAN, f64::max);
    if pair.is_nan() {
        ev.iter().map(modulus).fold(0.0, f64::max)
    } else {
        pair
    }
}

/// Outermost unit crossing of the coexistence pair along `mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Psi4 {
    /// crossing value
    pub mu: f64,
    /// number of sign changes of `|pair| - 1` seen by the scan
    pub crossings: usize,
}

fn pair_excess(mu: f64, beta: f64, gamma: f64) -> f64 {
    match Params::new(mu, beta, gamma) {
        Ok(p) => p4_pair_modulus(&p) - 1.0,
        Err(_) => f64::NAN,
    }
}

/// Largest `mu` in `(c4, 4]` where the coexistence pair crosses the unit
/// circle, with `c4` the birth value of `P4`.
///
/// The interval is scanned on a uniform grid and the outermost bracket is
/// refined by bisection to `tol`. Fails with [`Error::NoCrossing`] if the
/// pair stays inside the circle.
pub fn psi4(beta: f64, gamma: f64, tol: f64) -> Result<Psi4> {
    let lo = mu_p4_birth(beta, gamma);
    if !(lo.is_finite() && lo > 0.0 && lo < CUBOID_MU_MAX) || !(tol > 0.0) {
        return Err(Error::InvalidArgument("psi4 needs 0 < c4 < 4 and tol > 0"));
    }
    let at = |i: usize| {
        if i == SCAN_POINTS {
            lo
        } else {
            CUBOID_MU_MAX - (CUBOID_MU_MAX - lo) * i as f64 / SCAN_POINTS as f64
        }
    };
    let above = |f: f64, i: usize| {
        if i == SCAN_POINTS {
            f > ENDPOINT_BAND
        } else {
            f > 0.0
        }
    };
    // descending mu
    let flags: Vec<bool> = (0..=SCAN_POINTS).map(|i| above(pair_excess(at(i), beta, gamma), i)).collect();
    let crossings = flags.windows(2).filter(|w| w[0] != w[1]).count();
    let Some(i) = flags.windows(2).position(|w| w[0] && !w[1]) else {
        return Err(Error::NoCrossing);
    };
    let (mut below, mut over) = (at(i + 1), at(i));
    while over - below > tol {
        let mid = 0.5 * (below + over);
        if pair_excess(mid, beta, gamma) > 0.0 {
            over = mid;
        } else {
            below = mid;
        }
    }
    Ok(Psi4 { mu: 0.5 * (below + over), crossings })
}

/// `(beta, gamma)` where the coexistence point stays stable up to `mu = 3`.
pub fn in_h4(beta: f64, gamma: f64) -> Result<bool> {
    Ok(psi4(beta, gamma, DEFAULT_PSI4_TOL)?.mu >= 3.0)
}

/// `(beta, gamma)` where the pair modulus first decreases after the birth of
/// the coexistence point, making it non-monotone in `mu`.
pub fn in_nm4(beta: f64, gamma: f64) -> Result<bool> {
    let lo = mu_p4_birth(beta, gamma);
    if !(lo.is_finite() && lo > 0.0 && lo < CUBOID_MU_MAX) {
        return Err(Error::InvalidArgument("in_nm4 needs 0 < c4 < 4"));
    }
    let n = 4 * SCAN_POINTS;
    let mut prev = f64::NAN;
    for i in 1..=n {
        let mu = lo + (CUBOID_MU_MAX - lo) * i as f64 / n as f64;
        let m = pair_excess(mu, beta, gamma);
        if m < prev - 1e-12 {
            return Ok(true);
        }
        prev = m;
    }
    Ok(false)
}

/// Named critical values of `mu` at fixed `(beta, gamma)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalMu {
    /// extinction point loses stability, `P2` is born
    Unit,
    /// `P3` is born
    P3Birth,
    /// `P3` eigenvalues turn complex
    P3Spiral,
    /// `P4` is born
    P4Birth,
    /// `P2` flips
    P2Flip,
    /// `P3` complex pair leaves the unit circle
    P3Flip,
    /// `P4` complex pair leaves the unit circle
    P4Flip,
}

/// All critical `mu` values for `(beta, gamma)`, ascending.
pub fn critical_mu_values(beta: f64, gamma: f64, tol: f64) -> Result<Vec<(CriticalMu, f64)>> {
    let mut v = alloc::vec![
        (CriticalMu::Unit, 1.0),
        (CriticalMu::P3Birth, mu_p3_birth(beta)),
        (CriticalMu::P3Spiral, mu_p3_spiral(beta)),
        (CriticalMu::P4Birth, mu_p4_birth(beta, gamma)),
        (CriticalMu::P2Flip, 3.0),
        (CriticalMu::P3Flip, mu_p3_flip(beta)),
        (CriticalMu::P4Flip, psi4(beta, gamma, tol)?.mu),
    ];
    v.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(v)
}
