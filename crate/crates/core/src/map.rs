//! The map itself: parameters, states, one step, its Jacobian, the domain
//! predicates and orbit iteration.
//!
//! Iterates are never clamped. An orbit that leaves the closed simplex is
//! reported as escaped and its raw coordinates are kept for diagnostics.

use alloc::vec::Vec;

use crate::{Error, Mat3, Result};

/// Lower/upper bounds of the parameter cuboid `(0,4] x [2.5,5] x [5,9.4]`.
pub const CUBOID_MU_MAX: f64 = 4.0;
/// Smallest predator growth rate in the cuboid.
pub const CUBOID_BETA_MIN: f64 = 2.5;
/// Largest predator growth rate in the cuboid.
pub const CUBOID_BETA_MAX: f64 = 5.0;
/// Smallest top-predator growth rate in the cuboid.
pub const CUBOID_GAMMA_MIN: f64 = 5.0;
/// Largest top-predator growth rate in the cuboid.
pub const CUBOID_GAMMA_MAX: f64 = 9.4;

/// A point `(mu, beta, gamma)` of parameter space; all three are finite and positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    mu: f64,
    beta: f64,
    gamma: f64,
}

impl Params {
    /// Validates positivity and finiteness.
    pub fn new(mu: f64, beta: f64, gamma: f64) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if ok(mu) && ok(beta) && ok(gamma) {
            Ok(Params { mu, beta, gamma })
        } else {
            Err(Error::InvalidParams { mu, beta, gamma })
        }
    }

    /// Prey growth rate.
    #[inline]
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Growth rate of the predator `y`.
    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Growth rate of the top predator `z`.
    #[inline]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Same `beta, gamma` with a different `mu`.
    pub fn with_mu(&self, mu: f64) -> Result<Self> {
        Params::new(mu, self.beta, self.gamma)
    }

    /// Same `mu, beta` with a different `gamma`.
    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Params::new(self.mu, self.beta, gamma)
    }

    /// Same `mu, gamma` with a different `beta`.
    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        Params::new(self.mu, beta, self.gamma)
    }

    /// True iff the point lies in `(0,4] x [2.5,5] x [5,9.4]`.
    pub fn in_cuboid(&self) -> bool {
        self.mu > 0.0
            && self.mu <= CUBOID_MU_MAX
            && (CUBOID_BETA_MIN..=CUBOID_BETA_MAX).contains(&self.beta)
            && (CUBOID_GAMMA_MIN..=CUBOID_GAMMA_MAX).contains(&self.gamma)
    }

    /// Affine interpolation `self + t (other - self)`.
    pub fn lerp(&self, other: &Params, t: f64) -> Result<Self> {
        let l = |a: f64, b: f64| a + t * (b - a);
        Params::new(l(self.mu, other.mu), l(self.beta, other.beta), l(self.gamma, other.gamma))
    }
}

/// Population densities relative to the prey carrying capacity.
///
/// No sign constraint is imposed here; iterates may leave the simplex.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct State {
    /// prey
    pub x: f64,
    /// predator
    pub y: f64,
    /// top predator
    pub z: f64,
}

impl State {
    /// Extinction point.
    pub const ORIGIN: State = State { x: 0.0, y: 0.0, z: 0.0 };

    /// Convenience constructor.
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        State { x, y, z }
    }

    /// Coordinates as an array.
    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Max-norm distance.
    pub fn dist_inf(&self, other: &State) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs()).max((self.z - other.z).abs())
    }

    /// Max-norm.
    pub fn norm_inf(&self) -> f64 {
        self.dist_inf(&State::ORIGIN)
    }

    /// True when all coordinates are finite.
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Membership in the closed simplex `x,y,z >= 0, x+y+z <= 1`.
    pub fn in_simplex(&self) -> bool {
        self.x >= 0.0 && self.y >= 0.0 && self.z >= 0.0 && self.x + self.y + self.z <= 1.0
    }

    /// Membership in the working domain: the simplex minus the one-step
    /// escaping wedge `{y > 0, z > x}`.
    pub fn in_domain_e(&self) -> bool {
        self.in_simplex() && (self.y == 0.0 || self.x >= self.z)
    }
}

/// Applies the map once. No clamping.
#[inline]
pub fn step(s: State, p: &Params) -> State {
    State { x: p.mu * s.x * (1.0 - s.x - s.y - s.z), y: p.beta * s.y * (s.x - s.z), z: p.gamma * s.y * s.z }
}

/// Jacobian of [`step`] at `s`.
#[inline]
pub fn jacobian(s: State, p: &Params) -> Mat3 {
    let State { x, y, z } = s;
    let (mu, beta, gamma) = (p.mu, p.beta, p.gamma);
    Mat3([
        [mu * (1.0 - 2.0 * x - y - z), -mu * x, -mu * x],
        [beta * y, beta * (x - z), -beta * y],
        [0.0, gamma * z, gamma * y],
    ])
}

/// Closed form of `det J(x,y,z)`.
pub fn jacobian_det(s: State, p: &Params) -> f64 {
    p.mu * p.beta * p.gamma * s.x * s.y * (1.0 - 2.0 * s.x - 2.0 * s.z)
}

/// Logistic map `mu s (1 - s)`.
#[inline]
pub fn logistic(sigma: f64, mu: f64) -> f64 {
    mu * sigma * (1.0 - sigma)
}

/// Damped logistic map `damping * mu * s (1 - s)`.
#[inline]
pub fn damped_logistic(sigma: f64, mu: f64, damping: f64) -> f64 {
    damping * logistic(sigma, mu)
}

/// Stable fixed point `1 - 1/(mu s)` of the damped logistic map.
pub fn damped_logistic_fixed_point(mu: f64, damping: f64) -> f64 {
    1.0 - 1.0 / (mu * damping)
}

/// How an orbit segment ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Every iterate stayed in the simplex.
    Survived,
    /// First index whose state is outside the simplex.
    Escaped(usize),
}

/// Orbit `s_0 .. s_k`, truncated at the first state outside the simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// States including the initial one and, if escaped, the first exterior one.
    pub states: Vec<State>,
    /// Escape index or survival.
    pub outcome: Outcome,
}

impl Trajectory {
    /// Escape index if the orbit left the simplex.
    pub fn escaped_at(&self) -> Option<usize> {
        match self.outcome {
            Outcome::Escaped(k) => Some(k),
            Outcome::Survived => None,
        }
    }
}

/// Iterates `n` steps, stopping at the first state outside the simplex.
pub fn iterate(s0: State, p: &Params, n: usize) -> Trajectory {
    let mut states = Vec::with_capacity(n.saturating_add(1).min(1 << 20));
    let outcome = iterate_with(s0, p, n, |_, s| states.push(s));
    Trajectory { states, outcome }
}

/// Streaming variant of [`iterate`]: `visit(k, s_k)` is called for every
/// state produced, including `s_0` and the escaping state.
pub fn iterate_with<F: FnMut(usize, State)>(s0: State, p: &Params, n: usize, mut visit: F) -> Outcome {
    let mut s = s0;
    visit(0, s);
    if !s.in_simplex() {
        return Outcome::Escaped(0);
    }
    for k in 1..=n {
        s = step(s, p);
        visit(k, s);
        if !s.in_simplex() {
            return Outcome::Escaped(k);
        }
    }
    Outcome::Survived
}

/// Advances `n` steps without recording; returns the final state and the
/// escape index if the orbit left the simplex.
pub fn advance(s0: State, p: &Params, n: usize) -> (State, Outcome) {
    let mut last = s0;
    let outcome = iterate_with(s0, p, n, |_, s| last = s);
    (last, outcome)
}
