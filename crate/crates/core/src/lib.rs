//! Analysis toolkit for the three-species discrete food-chain map
//!
//! ```text
//! x' = mu x (1 - x - y - z)
//! y' = beta y (x - z)
//! z' = gamma y z
//! ```
//!
//! The crate is `no_std` (with `alloc`) and purely computational: iteration
//! and domain predicates, fixed points with their stability and the
//! parameter-space zone partition, escape-time classification, Lyapunov
//! spectra, one-parameter sweeps and DFT-based period-doubling detection.
//! File formats, parallel drivers and the command-line front end live in the
//! `trichain` crate.
#![cfg_attr(not(test), no_std)]
#![deny(missing_docs)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub use error::{Error, Result};

pub mod mat3;
pub use mat3::Mat3;

pub mod cubic;

pub mod map;
pub use map::{Params, State, Trajectory};

pub mod equilibria;
pub use equilibria::{FixedPointId, FixedPointReport, StabilityClass, ZoneId};

pub mod escape;
pub use escape::{EscapeTime, Fate};

pub mod lyapunov;
pub use lyapunov::LyapunovResult;

pub mod bifurcation;
pub use bifurcation::{PathSpec, SweepConfig, SweepRecord};

pub mod spectral;
pub use spectral::Spectrum;
