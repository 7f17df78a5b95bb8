//! Exact tropical trigonometry and wave-front evolution of convex domains
//! with rational slopes.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`).  The main entry
//! points are [`ConvexDomain`], [`simulate`] and the caustic, continued
//! fraction and toric modules built on top of the evolution trace.

pub mod caustic;
pub mod contfrac;
pub mod error;
pub mod json;
pub mod lattice;
pub mod random;
pub mod svg;
pub mod toric;
pub mod trig;
pub mod verify;
pub mod wavefront;

pub use error::{Error, Result};
pub use lattice::{Direction, Extended, Int, LatticeVec, Rat, RatPoint, UnimodularAffineMap};
pub use trig::Angle;
pub use wavefront::{simulate, ConvexDomain, DomainKind, EvolutionTrace, FinalLocus, Front, Support};
