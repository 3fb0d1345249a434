//! Escape times, orbit fates and escape-set rasters on axis-aligned planes.

use alloc::vec::Vec;

use crate::equilibria::{fixed_points, FixedPointId, DEFAULT_HYPERBOLIC_TOL};
use crate::map::{step, Params, State};
use crate::{Error, Result};

/// True when one application of the map leaves the simplex.
pub fn one_step_escapes(s: State, p: &Params) -> bool {
    !step(s, p).in_simplex()
}

/// Result of an escape-time computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EscapeTime {
    /// first `k` with `T^k(s)` outside the simplex (0 if `s` itself is outside)
    Escaped(usize),
    /// still inside after the iteration budget
    Survived,
}

/// Smallest `k <= max_iter` with `T^k(s)` outside the simplex.
pub fn escape_time(s: State, p: &Params, max_iter: usize) -> EscapeTime {
    if !s.in_simplex() {
        return EscapeTime::Escaped(0);
    }
    let mut s = s;
    for k in 1..=max_iter {
        s = step(s, p);
        if !s.in_simplex() {
            return EscapeTime::Escaped(k);
        }
    }
    EscapeTime::Survived
}

/// Long-term behaviour of one orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fate {
    /// converged to the extinction point
    ConvergedP1,
    /// converged to the prey-only point
    ConvergedP2,
    /// converged to the predator-prey point
    ConvergedP3,
    /// converged to the coexistence point
    ConvergedP4,
    /// left the simplex at this iterate
    Escaped(usize),
    /// neither within the budget
    Undetermined,
}

impl Fate {
    /// Convergence outcome for a fixed point.
    pub fn converged(id: FixedPointId) -> Fate {
        match id {
            FixedPointId::P1 => Fate::ConvergedP1,
            FixedPointId::P2 => Fate::ConvergedP2,
            FixedPointId::P3 => Fate::ConvergedP3,
            FixedPointId::P4 => Fate::ConvergedP4,
        }
    }
}

/// Budget and convergence criterion for [`classify_fate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FateConfig {
    /// iteration budget
    pub max_iter: usize,
    /// max-norm distance counted as "at" a fixed point
    pub conv_tol: f64,
    /// consecutive iterates required within `conv_tol`
    pub conv_window: usize,
}

impl Default for FateConfig {
    fn default() -> Self {
        FateConfig { max_iter: 50_000, conv_tol: 1e-8, conv_window: 20 }
    }
}

/// Follows the orbit of `s` until it escapes, settles on an existing fixed
/// point, or the budget runs out. Escape is checked before convergence.
pub fn classify_fate(s: State, p: &Params, cfg: &FateConfig) -> Fate {
    let targets: Vec<(FixedPointId, State)> =
        fixed_points(p, DEFAULT_HYPERBOLIC_TOL).iter().filter(|r| r.exists).map(|r| (r.id, r.coordinates)).collect();
    classify_fate_with(s, p, cfg, &targets)
}

fn classify_fate_with(s0: State, p: &Params, cfg: &FateConfig, targets: &[(FixedPointId, State)]) -> Fate {
    let window = cfg.conv_window.max(1);
    let mut runs = [0usize; 4];
    let mut s = s0;
    for k in 0..=cfg.max_iter {
        if k > 0 {
            s = step(s, p);
        }
        if !s.in_simplex() {
            return Fate::Escaped(k);
        }
        for (slot, (id, fp)) in runs.iter_mut().zip(targets) {
            if s.dist_inf(fp) < cfg.conv_tol {
                *slot += 1;
                if *slot >= window {
                    return Fate::converged(*id);
                }
            } else {
                *slot = 0;
            }
        }
    }
    Fate::Undetermined
}

/// Coordinate held fixed by a raster plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// `x = const`; raster axes are `(y, z)`
    X,
    /// `y = const`; raster axes are `(x, z)`
    Y,
    /// `z = const`; raster axes are `(x, y)`
    Z,
}

/// Plane `axis = offset` in state space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    /// fixed coordinate
    pub axis: Axis,
    /// its value
    pub offset: f64,
}

impl Plane {
    /// State at in-plane coordinates `(u, v)`.
    pub fn embed(&self, u: f64, v: f64) -> State {
        match self.axis {
            Axis::X => State::new(self.offset, u, v),
            Axis::Y => State::new(u, self.offset, v),
            Axis::Z => State::new(u, v, self.offset),
        }
    }
}

/// Rectangle `[u_min, u_max] x [v_min, v_max]` in plane coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    /// first in-plane axis range
    pub u: (f64, f64),
    /// second in-plane axis range
    pub v: (f64, f64),
}

/// Geometry of a raster: plane, rectangle and resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RasterSpec {
    /// slicing plane
    pub plane: Plane,
    /// rectangle in plane coordinates
    pub bounds: Bounds,
    /// cells along `u`
    pub nu: usize,
    /// cells along `v`
    pub nv: usize,
}

impl RasterSpec {
    /// Validates resolution and bounds.
    pub fn new(plane: Plane, bounds: Bounds, nu: usize, nv: usize) -> Result<Self> {
        let ok = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && a < b;
        if nu == 0 || nv == 0 || !ok(bounds.u) || !ok(bounds.v) || !plane.offset.is_finite() {
            return Err(Error::InvalidArgument("raster needs positive resolution and finite increasing bounds"));
        }
        Ok(RasterSpec { plane, bounds, nu, nv })
    }

    /// State at the centre of cell `(i, j)`, `i` along `u` and `j` along `v`.
    pub fn cell_centre(&self, i: usize, j: usize) -> State {
        let (u0, u1) = self.bounds.u;
        let (v0, v1) = self.bounds.v;
        let u = u0 + (i as f64 + 0.5) * (u1 - u0) / self.nu as f64;
        let v = v0 + (j as f64 + 0.5) * (v1 - v0) / self.nv as f64;
        self.plane.embed(u, v)
    }
}

/// Fates of all cells, row-major with rows along `v`: `cells[j * nu + i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EscapeRaster {
    /// geometry
    pub spec: RasterSpec,
    /// one fate per cell
    pub cells: Vec<Fate>,
}

impl EscapeRaster {
    /// Fate of cell `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Fate {
        self.cells[j * self.spec.nu + i]
    }
}

/// Row `j` of a raster; exposed so drivers can parallelise over rows.
pub fn raster_row(spec: &RasterSpec, j: usize, p: &Params, cfg: &FateConfig) -> Vec<Fate> {
    let targets: Vec<(FixedPointId, State)> =
        fixed_points(p, DEFAULT_HYPERBOLIC_TOL).iter().filter(|r| r.exists).map(|r| (r.id, r.coordinates)).collect();
    (0..spec.nu).map(|i| classify_fate_with(spec.cell_centre(i, j), p, cfg, &targets)).collect()
}

/// Sequential raster of fates over a plane slice.
pub fn raster_slice(spec: &RasterSpec, p: &Params, cfg: &FateConfig) -> EscapeRaster {
    let mut cells = Vec::with_capacity(spec.nu * spec.nv);
    for j in 0..spec.nv {
        cells.extend(raster_row(spec, j, p, cfg));
    }
    EscapeRaster { spec: *spec, cells }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(mu: f64, beta: f64, gamma: f64) -> Params {
        Params::new(mu, beta, gamma).unwrap()
    }

    #[test]
    fn wedge_escapes_in_one_step() {
        assert!(one_step_escapes(State::new(0.1, 0.1, 0.2), &p(2.0, 3.0, 6.0)));
        assert_eq!(escape_time(State::new(0.1, 0.1, 0.2), &p(2.0, 3.0, 6.0), 50), EscapeTime::Escaped(1));
        assert_eq!(escape_time(State::new(0.9, 0.9, 0.0), &p(2.0, 3.0, 6.0), 50), EscapeTime::Escaped(0));
    }

    #[test]
    fn prey_only_orbit_converges_to_p2() {
        let f = classify_fate(State::new(0.3, 0.0, 0.0), &p(2.5, 3.0, 6.0), &FateConfig::default());
        assert_eq!(f, Fate::ConvergedP2);
    }

    #[test]
    fn zone_a_goes_extinct() {
        let f = classify_fate(State::new(0.2, 0.1, 0.05), &p(0.8, 3.0, 6.0), &FateConfig::default());
        assert!(matches!(f, Fate::ConvergedP1 | Fate::Escaped(_)));
    }

    #[test]
    fn cell_centres() {
        let spec =
            RasterSpec::new(Plane { axis: Axis::Y, offset: 0.02 }, Bounds { u: (0.0, 1.0), v: (0.0, 0.5) }, 4, 2)
                .unwrap();
        assert_eq!(spec.cell_centre(0, 0), State::new(0.125, 0.02, 0.125));
        assert_eq!(spec.cell_centre(3, 1), State::new(0.875, 0.02, 0.375));
        assert!(RasterSpec::new(spec.plane, spec.bounds, 0, 2).is_err());
    }

    #[test]
    fn outside_cells_escape_immediately() {
        let spec = RasterSpec::new(Plane { axis: Axis::Z, offset: 0.0 }, Bounds { u: (0.0, 1.0), v: (0.0, 1.0) }, 8, 8)
            .unwrap();
        let r = raster_slice(&spec, &p(2.0, 3.0, 6.0), &FateConfig { max_iter: 50, ..Default::default() });
        for j in 0..8 {
            for i in 0..8 {
                if !spec.cell_centre(i, j).in_simplex() {
                    assert_eq!(r.get(i, j), Fate::Escaped(0));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn escape_time_is_first_exit(x in 0.0..1.0f64, y in 0.0..1.0f64, z in 0.0..1.0f64,
                                     mu in 0.1..4.0f64, beta in 2.5..5.0f64, gamma in 5.0..9.4f64) {
            let q = p(mu, beta, gamma);
            let s = State::new(x, y, z);
            if let EscapeTime::Escaped(k) = escape_time(s, &q, 60) {
                prop_assert_eq!(crate::map::iterate(s, &q, k).escaped_at(), Some(k));
                if k > 0 {
                    prop_assert_eq!(crate::map::iterate(s, &q, k - 1).escaped_at(), None);
                }
            }
        }

        #[test]
        fn wall_is_absorbing(x in 0.0..=1.0f64, t in 0.0..=1.0f64, n in 0usize..200,
                             mu in 0.1..=4.0f64, beta in 2.5..5.0f64, gamma in 5.0..9.4f64) {
            let s = State::new(x, 0.0, t * (1.0 - x));
            prop_assume!(s.in_simplex());
            prop_assert_eq!(escape_time(s, &p(mu, beta, gamma), n), EscapeTime::Survived);
        }

        #[test]
        fn wedge_points_escape(x in 0.0..0.5f64, dy in 0.001..0.5f64, dz in 0.001..0.5f64,
                               mu in 0.1..4.0f64, beta in 2.5..5.0f64, gamma in 5.0..9.4f64) {
            // y > 0 and z > x inside the simplex
            let z = x + dz;
            let y = dy.min(1.0 - x - z);
            prop_assume!(y > 0.0 && x + y + z <= 1.0);
            prop_assert!(one_step_escapes(State::new(x, y, z), &p(mu, beta, gamma)));
        }

        #[test]
        fn domain_points_stay_non_negative(x in 0.0..=1.0f64, t in 0.0..=1.0f64, w in 0.0..=1.0f64,
                                           mu in 0.1..4.0f64, beta in 2.5..5.0f64, gamma in 5.0..9.4f64) {
            // z <= x, y fills a fraction of the remaining mass
            let z = (t * x).min((1.0 - x).max(0.0));
            let s = State::new(x, w * (1.0 - x - z).max(0.0), z);
            prop_assume!(s.in_domain_e());
            let t = step(s, &p(mu, beta, gamma));
            prop_assert!(t.x >= 0.0 && t.y >= 0.0 && t.z >= 0.0);
        }
    }
}
