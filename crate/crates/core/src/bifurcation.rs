//! One-parameter sweeps, local-maxima statistics and the coexistence-point
//! Neimark-Sacker value along `gamma`.

use alloc::vec::Vec;

use crate::equilibria::{fixed_points, mu_p4_birth, p4_pair_modulus, zone, FixedPointReport, ZoneId};
use crate::lyapunov::{lyapunov_spectrum, LyapunovConfig, LyapunovResult};
use crate::map::{advance, iterate_with, Outcome, Params, State, CUBOID_GAMMA_MAX, CUBOID_GAMMA_MIN};
use crate::{Error, Result};

/// Straight segment in parameter space sampled at `samples` evenly spaced
/// points, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSpec {
    start: Params,
    end: Params,
    samples: usize,
}

impl PathSpec {
    /// Needs at least two samples.
    pub fn new(start: Params, end: Params, samples: usize) -> Result<Self> {
        if samples < 2 {
            return Err(Error::InvalidArgument("a path needs at least two samples"));
        }
        Ok(PathSpec { start, end, samples })
    }

    /// Number of samples.
    pub fn samples(&self) -> usize {
        self.samples
    }

    /// First endpoint.
    pub fn start(&self) -> Params {
        self.start
    }

    /// Last endpoint.
    pub fn end(&self) -> Params {
        self.end
    }

    /// Path coordinate of sample `i` in `[0, 1]`.
    pub fn t(&self, i: usize) -> f64 {
        i as f64 / (self.samples - 1) as f64
    }

    /// Parameters of sample `i`; endpoints are reproduced exactly.
    pub fn params_at(&self, i: usize) -> Params {
        if i == 0 {
            self.start
        } else if i + 1 >= self.samples {
            self.end
        } else {
            // both endpoints are positive, so convex combinations are too
            self.start.lerp(&self.end, self.t(i)).unwrap_or(self.start)
        }
    }
}

/// What each sweep sample computes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    /// iterates discarded before recording
    pub transient: usize,
    /// iterates recorded after the transient
    pub keep: usize,
    /// Lyapunov spectrum settings; `None` skips it
    pub lyapunov: Option<LyapunovConfig>,
    /// start each sample from the last state of the previous one
    pub continuation: bool,
    /// tolerance for zone boundaries and hyperbolicity
    pub tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { transient: 30_000, keep: 2048, lyapunov: None, continuation: false, tol: 1e-9 }
    }
}

/// Everything computed at one sample of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    /// sample index
    pub index: usize,
    /// parameters
    pub params: Params,
    /// post-transient states; empty iff the orbit escaped
    pub attractor: Vec<State>,
    /// fixed points at these parameters
    pub fixed_points: [FixedPointReport; 4],
    /// spectrum if requested
    pub lyapunov: Option<LyapunovResult>,
    /// zone label
    pub zone: ZoneId,
    /// whether the orbit left the simplex during transient or recording
    pub escaped: bool,
}

/// Single sweep sample from `s0`.
pub fn sweep_point(index: usize, params: Params, s0: State, cfg: &SweepConfig) -> SweepRecord {
    let mut attractor = Vec::with_capacity(cfg.keep);
    let (start, pre) = advance(s0, &params, cfg.transient);
    let mut escaped = pre != Outcome::Survived;
    if !escaped && cfg.keep > 0 {
        let out = iterate_with(start, &params, cfg.keep - 1, |_, s| attractor.push(s));
        escaped = out != Outcome::Survived;
    }
    if escaped {
        attractor.clear();
    }
    SweepRecord {
        index,
        params,
        attractor,
        fixed_points: fixed_points(&params, cfg.tol),
        lyapunov: cfg
            .lyapunov
            .map(|l| lyapunov_spectrum(s0, &params, &LyapunovConfig { transient: cfg.transient, steps: l.steps })),
        zone: zone(&params, cfg.tol),
        escaped,
    }
}

/// Sequential sweep. With continuation the next sample starts from the last
/// recorded state of the previous one (or `s0` after an escape).
pub fn sweep(path: &PathSpec, s0: State, cfg: &SweepConfig) -> Vec<SweepRecord> {
    let mut out = Vec::with_capacity(path.samples());
    let mut start = s0;
    for i in 0..path.samples() {
        let rec = sweep_point(i, path.params_at(i), start, cfg);
        if cfg.continuation {
            start = rec.attractor.last().copied().unwrap_or(s0);
        }
        out.push(rec);
    }
    out
}

/// Strict interior local maxima of the running mean of `series` over
/// `window` samples (`window <= 1` means no smoothing).
pub fn local_maxima(series: &[f64], window: usize) -> Vec<f64> {
    let w = window.max(1);
    if series.len() < w {
        return Vec::new();
    }
    let smooth: Vec<f64> = series.windows(w).map(|s| s.iter().sum::<f64>() / w as f64).collect();
    smooth.windows(3).filter(|t| t[1] > t[0] && t[1] > t[2]).map(|t| t[1]).collect()
}

/// Number of distinct levels among successive maxima.
///
/// For each trial period `q` in `1, 2, 4, ..` up to `max_period`, the maxima
/// are split into `q` interleaved phases and the value ranges of the phases
/// are merged where they overlap. The result is the largest number of
/// disjoint groups seen.
pub fn maxima_levels(maxima: &[f64], max_period: usize) -> usize {
    if maxima.is_empty() {
        return 0;
    }
    let mut best = 1;
    let mut q = 1;
    while q <= max_period.max(1) && q <= maxima.len() {
        let mut ranges: Vec<(f64, f64)> = (0..q)
            .map(|phase| {
                maxima[phase..]
                    .iter()
                    .step_by(q)
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &m| (lo.min(m), hi.max(m)))
            })
            .collect();
        ranges.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut groups = 1;
        let mut hi = ranges[0].1;
        for r in &ranges[1..] {
            if r.0 > hi {
                groups += 1;
            }
            hi = hi.max(r.1);
        }
        best = best.max(groups);
        q *= 2;
    }
    best
}

const GAMMA_SCAN: usize = 400;

/// `gamma` in `[5, 9.4]` where the coexistence pair leaves the unit circle
/// at fixed `(mu, beta)`, refined by bisection to `tol`.
pub fn neimark_sacker_gamma(mu: f64, beta: f64, tol: f64) -> Result<f64> {
    // P4 exists for gamma >= 1 / (1 - 1/mu - 1/beta)
    let room = 1.0 - 1.0 / mu - 1.0 / beta;
    if !(room > 0.0) || !(tol > 0.0) {
        return Err(Error::InvalidArgument("coexistence point never exists on this gamma line"));
    }
    let lo = CUBOID_GAMMA_MIN.max(1.0 / room);
    if lo >= CUBOID_GAMMA_MAX {
        return Err(Error::NoCrossing);
    }
    let excess = |g: f64| match Params::new(mu, beta, g) {
        Ok(p) if mu_p4_birth(beta, g) <= mu => p4_pair_modulus(&p) - 1.0,
        _ => -1.0,
    };
    let at = |i: usize| lo + (CUBOID_GAMMA_MAX - lo) * i as f64 / GAMMA_SCAN as f64;
    let mut prev = excess(at(0));
    for i in 1..=GAMMA_SCAN {
        let cur = excess(at(i));
        if (prev <= 0.0) != (cur <= 0.0) {
            let (mut a, mut b) = (at(i - 1), at(i));
            let a_below = prev <= 0.0;
            while b - a > tol {
                let m = 0.5 * (a + b);
                if (excess(m) <= 0.0) == a_below {
                    a = m;
                } else {
                    b = m;
                }
            }
            return Ok(0.5 * (a + b));
        }
        prev = cur;
    }
    Err(Error::NoCrossing)
}
