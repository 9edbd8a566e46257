//! Exact polygonal-loop geometry on the plane and the flat torus.
//!
//! [`loops`] holds the loop type and its constant-speed parametrization,
//! [`intersect`] the exact self-intersection census, [`coproduct`] the stick
//! retractions, the geometric loop product and the transversal coproduct of
//! a rotation family. [`radical`] supplies the exact arithmetic for arc
//! lengths.

pub mod coproduct;
pub mod intersect;
pub mod io;
pub mod loops;
pub mod radical;

pub use coproduct::{
    cs_product_geometric, pair_chain_class, rotation_coproduct, stick_retraction_gh, PairChain,
    RotationCoproduct, RotationTerm,
};
pub use intersect::{basepoint_self_intersections, double_points, DoublePoint, Incidence};
pub use loops::{ComponentLabel, LoopPos, PolyLoop, Pt, Space, Vec2};
pub use radical::SqrtSum;

use std::fmt;

/// Errors from the geometric engine. `Contract` marks violated preconditions,
/// `Degenerate` marks inputs outside generic position (tangencies, ambiguous
/// torus lifts, multiple points of order above two).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeomError {
    Contract(String),
    Degenerate(String),
}

impl GeomError {
    pub fn contract<S: Into<String>>(msg: S) -> Self {
        GeomError::Contract(msg.into())
    }

    pub fn degenerate<S: Into<String>>(msg: S) -> Self {
        GeomError::Degenerate(msg.into())
    }
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::Contract(m) => write!(f, "contract violation: {}", m),
            GeomError::Degenerate(m) => write!(f, "degenerate geometry: {}", m),
        }
    }
}

impl std::error::Error for GeomError {}
