use crate::equilibria::FixedPointId;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Things that can go wrong in the analysis routines
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Parameters must be finite and strictly positive
    #[error("parameters must be finite and positive (mu={mu}, beta={beta}, gamma={gamma})")]
    InvalidParams {
        /// prey growth rate
        mu: f64,
        /// predator growth rate
        beta: f64,
        /// top-predator growth rate
        gamma: f64,
    },

    /// Operation is only defined on the parameter cuboid
    #[error("parameters (mu={mu}, beta={beta}, gamma={gamma}) lie outside the cuboid (0,4]x[2.5,5]x[5,9.4]")]
    OutsideCuboid {
        /// prey growth rate
        mu: f64,
        /// predator growth rate
        beta: f64,
        /// top-predator growth rate
        gamma: f64,
    },

    /// A unit-modulus crossing was searched for but the modulus never crossed 1
    #[error("no unit-modulus crossing found on the searched interval")]
    NoCrossing,

    /// The requested fixed point is not biologically meaningful at these parameters
    #[error("fixed point {0:?} does not exist at these parameters")]
    FixedPointAbsent(FixedPointId),

    /// No closed-form eigenvalues are used for this fixed point
    #[error("closed-form eigenvalues are not available for {0:?}")]
    NoClosedForm(FixedPointId),

    /// Generic precondition failure
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
