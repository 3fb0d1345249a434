use core::fmt;

use crate::map::{Params, CUBOID_BETA_MIN, CUBOID_MU_MAX};

use super::surfaces::{mu_p3_birth, mu_p3_flip, mu_p3_spiral, mu_p4_birth, psi4, DEFAULT_PSI4_TOL};

/// Default distance to a critical surface reported as [`ZoneId::Boundary`].
pub const DEFAULT_ZONE_TOL: f64 = 1e-9;

/// Region of the parameter cuboid with a fixed qualitative equilibrium picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZoneId {
    /// only extinction, globally attracting
    A,
    /// prey-only point stable
    B,
    /// predator-prey point a stable node
    C,
    /// predator-prey point a stable focus
    D,
    /// coexistence point stable
    E,
    /// coexistence point unstable, below `mu = 3`
    F,
    /// both the predator-prey and coexistence foci unstable, `mu < 3`
    G,
    /// coexistence point still stable beyond `mu = 3`
    H,
    /// `mu > 3`, predator-prey focus stable, coexistence unstable
    I,
    /// `mu > 3`, every fixed point unstable
    J,
    /// within tolerance of a critical surface
    Boundary,
    /// outside the cuboid, or no zone applies
    Unclassified,
}

impl ZoneId {
    /// Single-token label.
    pub fn as_str(self) -> &'static str {
        match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
            Self::E => "E",
            Self::F => "F",
            Self::G => "G",
            Self::H => "H",
            Self::I => "I",
            Self::J => "J",
            Self::Boundary => "Boundary",
            Self::Unclassified => "Unclassified",
        }
    }
}

impl fmt::Display for ZoneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Critical `mu` values at fixed `(beta, gamma)`, computed once so that many
/// `mu` values can be classified cheaply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalSurfaces {
    /// predator growth rate
    pub beta: f64,
    /// top-predator growth rate
    pub gamma: f64,
    /// `P3` birth
    pub p3_birth: f64,
    /// `P3` spectrum turns complex
    pub p3_spiral: f64,
    /// `P4` birth
    pub p4_birth: f64,
    /// `P3` pair leaves the unit circle
    pub p3_flip: f64,
    /// `P4` pair leaves the unit circle; `None` if the search failed
    pub psi4: Option<f64>,
}

impl CriticalSurfaces {
    /// Evaluates all surfaces at `(beta, gamma)`.
    pub fn new(beta: f64, gamma: f64) -> Self {
        CriticalSurfaces {
            beta,
            gamma,
            p3_birth: mu_p3_birth(beta),
            p3_spiral: mu_p3_spiral(beta),
            p4_birth: mu_p4_birth(beta, gamma),
            p3_flip: mu_p3_flip(beta),
            psi4: psi4(beta, gamma, DEFAULT_PSI4_TOL).ok().map(|r| r.mu),
        }
    }

    /// Zone of `mu` at these `(beta, gamma)`; the caller is responsible for
    /// the cuboid check.
    pub fn zone(&self, mu: f64, tol: f64) -> ZoneId {
        let beta = self.beta;
        let mut surfaces = [1.0, self.p3_birth, self.p3_spiral, self.p4_birth, 3.0, self.p3_flip, f64::NAN];
        if let Some(psi) = self.psi4 {
            surfaces[6] = psi;
        }
        if surfaces.iter().any(|s| (mu - s).abs() <= tol) {
            return ZoneId::Boundary;
        }
        if mu < 1.0 {
            return ZoneId::A;
        }
        if mu < self.p3_birth {
            return ZoneId::B;
        }
        if mu < self.p3_spiral {
            return ZoneId::C;
        }
        if mu < self.p4_birth {
            return ZoneId::D;
        }
        let Some(psi) = self.psi4 else {
            return ZoneId::Unclassified;
        };
        let h4 = psi >= 3.0;
        let c6 = self.p3_flip;
        if mu < psi.min(3.0) {
            ZoneId::E
        } else if !h4 && mu > psi && mu < c6.min(3.0) {
            ZoneId::F
        } else if beta > 3.0 && mu > c6 && mu < 3.0 {
            ZoneId::G
        } else if h4 && mu > 3.0 && mu < psi {
            ZoneId::H
        } else if (CUBOID_BETA_MIN..3.0).contains(&beta) && mu > psi.max(3.0) && mu <= c6.min(CUBOID_MU_MAX) {
            ZoneId::I
        } else if beta > 8.0 / 3.0 && mu > c6.max(3.0) && mu <= CUBOID_MU_MAX {
            ZoneId::J
        } else {
            ZoneId::Unclassified
        }
    }
}

/// Zone of a parameter point; [`ZoneId::Unclassified`] outside the cuboid.
pub fn zone(p: &Params, tol: f64) -> ZoneId {
    if !p.in_cuboid() {
        return ZoneId::Unclassified;
    }
    CriticalSurfaces::new(p.beta(), p.gamma()).zone(p.mu(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(mu: f64, beta: f64, gamma: f64) -> ZoneId {
        zone(&Params::new(mu, beta, gamma).unwrap(), DEFAULT_ZONE_TOL)
    }

    #[test]
    fn examples() {
        assert_eq!(z(0.5, 3.0, 6.0), ZoneId::A);
        assert_eq!(z(1.0, 3.0, 6.0), ZoneId::Boundary);
        assert_eq!(z(2.1, 3.36, 7.3), ZoneId::F);
        assert_eq!(z(2.1, 3.89, 6.5), ZoneId::G);
        assert_eq!(z(4.5, 3.0, 6.0), ZoneId::Unclassified);
    }

    #[test]
    fn h4_region_has_zone_h() {
        // psi4(2.5, 5) is about 3.78
        assert_eq!(z(3.5, 2.5, 5.0), ZoneId::H);
        assert_eq!(z(3.9, 2.5, 5.0), ZoneId::I);
    }

    #[test]
    fn large_beta_reaches_g_and_j() {
        assert_eq!(z(2.8, 4.5, 7.0), ZoneId::G);
        assert_eq!(z(3.5, 4.5, 7.0), ZoneId::J);
    }
}
