use core::fmt;

use num_complex::Complex64;

use crate::cubic::{eigen_order, eigenvalues, modulus};
use crate::map::{jacobian, Params, State};
use crate::{Error, Result};

/// Default band around the unit circle treated as non-hyperbolic.
pub const DEFAULT_HYPERBOLIC_TOL: f64 = 1e-9;

// Parameter-existence tests allow a few ulps so that points placed exactly on
// a birth surface by floating-point solving still count as existing.
const EXISTENCE_SLACK: f64 = 1e-14;

/// The four fixed points of the map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FixedPointId {
    /// total extinction
    P1,
    /// prey only
    P2,
    /// prey and predator
    P3,
    /// coexistence of all three species
    P4,
}

impl FixedPointId {
    /// All four, in order.
    pub const ALL: [FixedPointId; 4] = [Self::P1, Self::P2, Self::P3, Self::P4];

    /// Position in [`FixedPointId::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for FixedPointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::P1 => "P1",
            Self::P2 => "P2",
            Self::P3 => "P3",
            Self::P4 => "P4",
        };
        f.write_str(s)
    }
}

/// Linear stability type of a hyperbolic fixed point, plus a catch-all for
/// eigenvalues on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilityClass {
    /// three real eigenvalues inside the unit circle
    SinkNode,
    /// real spectrum, one eigenvalue outside
    SaddleU1,
    /// real spectrum, two eigenvalues outside
    SaddleU2,
    /// real spectrum, all outside
    SourceNode,
    /// complex pair inside, real eigenvalue inside
    SpiralNodeSink,
    /// complex pair inside, real eigenvalue outside
    SpiralSinkNodeSource,
    /// complex pair outside, real eigenvalue inside
    SpiralSourceNodeSink,
    /// complex pair outside, real eigenvalue outside
    SpiralNodeSource,
    /// same spectrum type as [`Self::SpiralNodeSink`], reported for the
    /// coexistence point
    SpiralNodeSinkOfP4,
    /// some eigenvalue within the tolerance band of the unit circle
    NonHyperbolic,
}

impl StabilityClass {
    /// Stable identifier used in text output.
    pub fn as_str(self) -> &'static str {
        match self {
            Self::SinkNode => "sink-node",
            Self::SaddleU1 => "saddle-u1",
            Self::SaddleU2 => "saddle-u2",
            Self::SourceNode => "source-node",
            Self::SpiralNodeSink => "spiral-node-sink",
            Self::SpiralSinkNodeSource => "spiral-sink-node-source",
            Self::SpiralSourceNodeSink => "spiral-source-node-sink",
            Self::SpiralNodeSource => "spiral-node-source",
            Self::SpiralNodeSinkOfP4 => "spiral-node-sink-p4",
            Self::NonHyperbolic => "non-hyperbolic",
        }
    }
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Location, existence, spectrum and stability type of one fixed point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointReport {
    /// which point
    pub id: FixedPointId,
    /// coordinates from the closed-form expressions (meaningful even when
    /// the point is not in the domain)
    pub coordinates: State,
    /// whether the point lies in the working domain at these parameters
    pub exists: bool,
    /// Jacobian eigenvalues, descending modulus
    pub eigenvalues: [Complex64; 3],
    /// stability type; `None` when the point does not exist
    pub class: Option<StabilityClass>,
}

fn p4_rho(p: &Params) -> f64 {
    0.5 * (1.0 + 1.0 / p.beta() - 1.0 / p.gamma() - 1.0 / p.mu())
}

/// Closed-form coordinates of a fixed point.
pub fn fixed_point(id: FixedPointId, p: &Params) -> State {
    let (mu, beta, gamma) = (p.mu(), p.beta(), p.gamma());
    match id {
        FixedPointId::P1 => State::ORIGIN,
        FixedPointId::P2 => State::new((mu - 1.0) / mu, 0.0, 0.0),
        FixedPointId::P3 => State::new(1.0 / beta, 1.0 - 1.0 / mu - 1.0 / beta, 0.0),
        FixedPointId::P4 => {
            let rho = p4_rho(p);
            State::new(rho, 1.0 / gamma, rho - 1.0 / beta)
        }
    }
}

fn exists(id: FixedPointId, p: &Params) -> bool {
    let (mu, beta, gamma) = (p.mu(), p.beta(), p.gamma());
    match id {
        FixedPointId::P1 => true,
        FixedPointId::P2 => 1.0 / mu <= 1.0 + EXISTENCE_SLACK,
        FixedPointId::P3 => 1.0 / mu + 1.0 / beta <= 1.0 + EXISTENCE_SLACK,
        FixedPointId::P4 => 1.0 / mu + 1.0 / beta + 1.0 / gamma <= 1.0 + EXISTENCE_SLACK,
    }
}

/// Reports for all four fixed points, in order `P1..P4`.
pub fn fixed_points(p: &Params, tol: f64) -> [FixedPointReport; 4] {
    FixedPointId::ALL.map(|id| {
        let ok = exists(id, p);
        FixedPointReport {
            id,
            coordinates: fixed_point(id, p),
            exists: ok,
            eigenvalues: eigenvalues_numeric(id, p),
            class: ok.then(|| classify(id, p, tol)),
        }
    })
}

/// Closed-form eigenvalues for `P1..P3`, in their natural index order.
///
/// The coexistence point has no closed form here and yields
/// [`Error::NoClosedForm`].
pub fn eigenvalues_closed(id: FixedPointId, p: &Params) -> Result<[Complex64; 3]> {
    let (mu, beta, gamma) = (p.mu(), p.beta(), p.gamma());
    let re = |v: f64| Complex64::new(v, 0.0);
    match id {
        FixedPointId::P1 => Ok([re(mu), re(0.0), re(0.0)]),
        FixedPointId::P2 => Ok([re(2.0 - mu), re(beta * (1.0 - 1.0 / mu)), re(0.0)]),
        FixedPointId::P3 => {
            let l1 = gamma * (1.0 - 1.0 / beta - 1.0 / mu);
            let centre = 1.0 - mu / (2.0 * beta);
            let disc = (beta + 0.5 * mu) * (beta + 0.5 * mu) - beta * beta * mu;
            let s = if disc >= 0.0 {
                Complex64::new(libm::sqrt(disc) / beta, 0.0)
            } else {
                Complex64::new(0.0, libm::sqrt(-disc) / beta)
            };
            Ok([re(l1), re(centre) + s, re(centre) - s])
        }
        FixedPointId::P4 => Err(Error::NoClosedForm(id)),
    }
}

/// Eigenvalues of the Jacobian at the fixed point, descending modulus.
pub fn eigenvalues_numeric(id: FixedPointId, p: &Params) -> [Complex64; 3] {
    let mut ev = eigenvalues(&jacobian(fixed_point(id, p), p));
    ev.sort_by(eigen_order);
    ev
}

/// Stability type from the numerically computed spectrum.
///
/// Any eigenvalue with `| |l| - 1 | <= tol` makes the point non-hyperbolic.
pub fn classify(id: FixedPointId, p: &Params, tol: f64) -> StabilityClass {
    classify_spectrum(&eigenvalues_numeric(id, p), id == FixedPointId::P4, tol)
}

pub(crate) fn classify_spectrum(ev: &[Complex64; 3], is_p4: bool, tol: f64) -> StabilityClass {
    if ev.iter().any(|l| (modulus(l) - 1.0).abs() <= tol) {
        return StabilityClass::NonHyperbolic;
    }
    let outside = |l: &Complex64| modulus(l) > 1.0;
    let pair = ev.iter().find(|l| l.im != 0.0);
    let real = ev.iter().find(|l| l.im == 0.0);
    match pair.zip(real) {
        Some((pair, real)) => match (outside(pair), outside(real)) {
            (false, false) if is_p4 => StabilityClass::SpiralNodeSinkOfP4,
            (false, false) => StabilityClass::SpiralNodeSink,
            (false, true) => StabilityClass::SpiralSinkNodeSource,
            (true, false) => StabilityClass::SpiralSourceNodeSink,
            (true, true) => StabilityClass::SpiralNodeSource,
        },
        None => match ev.iter().filter(|l| outside(l)).count() {
            0 => StabilityClass::SinkNode,
            1 => StabilityClass::SaddleU1,
            2 => StabilityClass::SaddleU2,
            _ => StabilityClass::SourceNode,
        },
    }
}
