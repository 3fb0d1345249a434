//! Fixed points, their linear stability, the critical `mu` surfaces and the
//! partition of the parameter cuboid into zones.

mod points;
mod surfaces;
mod zones;

pub use points::{
    classify, eigenvalues_closed, eigenvalues_numeric, fixed_point, fixed_points, FixedPointId, FixedPointReport,
    StabilityClass, DEFAULT_HYPERBOLIC_TOL,
};
pub use surfaces::{
    critical_mu_values, in_h4, in_nm4, mu_p3_birth, mu_p3_flip, mu_p3_spiral, mu_p4_birth, p4_pair_modulus, psi4,
    CriticalMu, Psi4, DEFAULT_PSI4_TOL,
};
pub use zones::{zone, CriticalSurfaces, ZoneId, DEFAULT_ZONE_TOL};
