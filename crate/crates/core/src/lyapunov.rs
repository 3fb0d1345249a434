//! Lyapunov spectra by repeated QR re-orthonormalisation of a tangent frame.

use crate::map::{jacobian, step, Params, State};
use crate::Mat3;

/// Column norms below this mark a direction as collapsed.
pub const COLLAPSE_NORM: f64 = 1e-300;

/// Orbit lengths for [`lyapunov_spectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LyapunovConfig {
    /// iterates discarded before averaging
    pub transient: usize,
    /// iterates averaged
    pub steps: usize,
}

impl Default for LyapunovConfig {
    fn default() -> Self {
        LyapunovConfig { transient: 30_000, steps: 100_000 }
    }
}

/// Outcome of a spectrum computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovResult {
    /// exponents, descending; `None` if the orbit escaped. Collapsed
    /// directions report `-inf`.
    pub exponents: Option<[f64; 3]>,
    /// mean of `ln |det J|` over the averaging window
    pub mean_log_det: f64,
    /// averaging iterates actually performed
    pub steps_used: usize,
    /// transient iterates discarded
    pub transient_skipped: usize,
    /// whether the orbit left the simplex
    pub escaped: bool,
}

impl LyapunovResult {
    /// Largest exponent, if available.
    pub fn max(&self) -> Option<f64> {
        self.exponents.map(|e| e[0])
    }

    /// Sum of the exponents, if available.
    pub fn sum(&self) -> Option<f64> {
        self.exponents.map(|e| e.iter().sum())
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: &[f64; 3]) -> f64 {
    libm::sqrt(dot(a, a))
}

/// Unit vector orthogonal to `basis[..k]`, taken from the coordinate axes.
fn complement(basis: &[[f64; 3]; 3], k: usize) -> [f64; 3] {
    let mut best = [0.0; 3];
    let mut best_norm = -1.0;
    for axis in 0..3 {
        let mut v = [0.0; 3];
        v[axis] = 1.0;
        for q in &basis[..k] {
            let c = dot(&v, q);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= c * qi;
            }
        }
        let n = norm(&v);
        if n > best_norm {
            best_norm = n;
            best = v.map(|x| x / n);
        }
    }
    best
}

/// Spectrum from the identity frame.
pub fn lyapunov_spectrum(s0: State, p: &Params, cfg: &LyapunovConfig) -> LyapunovResult {
    lyapunov_spectrum_from(s0, p, cfg, &Mat3::IDENTITY)
}

/// Spectrum starting from the columns of `frame`, which should be linearly
/// independent. Modified Gram-Schmidt is applied after every step.
pub fn lyapunov_spectrum_from(s0: State, p: &Params, cfg: &LyapunovConfig, frame: &Mat3) -> LyapunovResult {
    let mut result =
        LyapunovResult { exponents: None, mean_log_det: f64::NAN, steps_used: 0, transient_skipped: 0, escaped: false };
    let mut s = s0;
    if !s.in_simplex() {
        result.escaped = true;
        return result;
    }
    for _ in 0..cfg.transient {
        s = step(s, p);
        if !s.in_simplex() {
            result.escaped = true;
            return result;
        }
        result.transient_skipped += 1;
    }

    let mut q = [frame.column(0), frame.column(1), frame.column(2)];
    let mut acc = [0.0_f64; 3];
    let mut collapsed = [false; 3];
    let mut log_det = 0.0;
    for _ in 0..cfg.steps {
        let j = jacobian(s, p);
        s = step(s, p);
        if !s.in_simplex() {
            result.escaped = true;
            return result;
        }
        log_det += libm::log(j.det().abs());
        let mut v = q.map(|c| j.mul_vec(c));
        for k in 0..3 {
            for qi in &q[..k] {
                let c = dot(&v[k], qi);
                for (vk, qi) in v[k].iter_mut().zip(qi) {
                    *vk -= c * qi;
                }
            }
            let r = norm(&v[k]);
            if collapsed[k] || !(r >= COLLAPSE_NORM) {
                collapsed[k] = true;
                q[k] = complement(&q, k);
            } else {
                acc[k] += libm::log(r);
                q[k] = v[k].map(|x| x / r);
            }
        }
        result.steps_used += 1;
    }
    let n = cfg.steps.max(1) as f64;
    let mut ex = [0.0; 3];
    for k in 0..3 {
        ex[k] = if collapsed[k] { f64::NEG_INFINITY } else { acc[k] / n };
    }
    ex.sort_by(|a, b| b.total_cmp(a));
    result.exponents = Some(ex);
    result.mean_log_det = log_det / n;
    result
}

/// Largest exponent, `None` on escape.
pub fn max_lyapunov(s0: State, p: &Params, cfg: &LyapunovConfig) -> Option<f64> {
    lyapunov_spectrum(s0, p, cfg).max()
}
