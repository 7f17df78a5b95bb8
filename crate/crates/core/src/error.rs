//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong in the engine.
///
/// Variants fall into two groups: *validation* failures, caused by inputs
/// that violate an operation's precondition, and [`Error::Internal`], which
/// signals a broken internal invariant (a bug).  [`Error::is_validation`]
/// tells them apart; the command-line front-end maps them to different exit
/// codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("vector ({0}) is not primitive")]
    NotPrimitive(String),
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),
    #[error("angle legs are collinear")]
    CollinearLegs,
    #[error("orientation precondition violated: {0}")]
    OrientationError(String),
    #[error("the two cones flanking the middle ray are not both right angles")]
    NotRightAnglePair,
    #[error("value {0} is outside the open interval (0, 1)")]
    OutOfRange(String),
    #[error("the right angle has no continued-fraction data")]
    RightAngleExcluded,
    #[error("input has no points")]
    EmptyInput,
    #[error("input is not convex: {0}")]
    NonConvexInput(String),
    #[error("domain has empty interior: {0}")]
    DegenerateDomain(String),
    #[error("irrational slopes are not supported")]
    IrrationalSlopeUnsupported,
    #[error("negative time {0}")]
    NegativeTime(String),
    #[error("polygon has a non-lattice vertex ({0})")]
    NotLatticePolygon(String),
    #[error("operation requires a bounded domain")]
    Unbounded,
    #[error("edge is unbounded or not present at the requested time")]
    UnboundedEdge,
    #[error("backward time {time} is not below the age {age}")]
    AgeExceeded { time: String, age: String },
    #[error("point ({0}) lies outside the domain")]
    PointOutsideDomain(String),
    #[error("vertex ({0}) is not canonical")]
    NotCanonical(String),
    #[error("vertex ({0}) of the broken line is not canonical")]
    NonCanonicalVertex(String),
    #[error("final locus is not a point")]
    NotPointFinal,
    #[error("final locus is neither a segment nor a ray")]
    NotEdgeFinal,
    #[error("unexpected final star: {0}")]
    UnexpectedFinalStar(String),
    #[error("ray {0} has no neighbour on one side in an incomplete fan")]
    BoundaryRay(usize),
    #[error("class is not closed: sum of a*lambda is ({0})")]
    ClassNotClosed(String),
    #[error("ray ({0}) is not a side of the domain")]
    MissingRay(String),
    #[error("window contains the critical time {0}")]
    WindowContainsCriticalTime(String),
    #[error("fan is not complete and unimodular: {0}")]
    NotUnimodularFan(String),
    #[error("nothing to render")]
    EmptyScene,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// `true` for errors caused by bad input, `false` for internal failures.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }

    /// A short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroVector => "ZeroVector",
            Error::NotPrimitive(_) => "NotPrimitive",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::CollinearLegs => "CollinearLegs",
            Error::OrientationError(_) => "OrientationError",
            Error::NotRightAnglePair => "NotRightAnglePair",
            Error::OutOfRange(_) => "OutOfRange",
            Error::RightAngleExcluded => "RightAngleExcluded",
            Error::EmptyInput => "EmptyInput",
            Error::NonConvexInput(_) => "NonConvexInput",
            Error::DegenerateDomain(_) => "DegenerateDomain",
            Error::IrrationalSlopeUnsupported => "IrrationalSlopeUnsupported",
            Error::NegativeTime(_) => "NegativeTime",
            Error::NotLatticePolygon(_) => "NotLatticePolygon",
            Error::Unbounded => "Unbounded",
            Error::UnboundedEdge => "UnboundedEdge",
            Error::AgeExceeded { .. } => "AgeExceeded",
            Error::PointOutsideDomain(_) => "PointOutsideDomain",
            Error::NotCanonical(_) => "NotCanonical",
            Error::NonCanonicalVertex(_) => "NonCanonicalVertex",
            Error::NotPointFinal => "NotPointFinal",
            Error::NotEdgeFinal => "NotEdgeFinal",
            Error::UnexpectedFinalStar(_) => "UnexpectedFinalStar",
            Error::BoundaryRay(_) => "BoundaryRay",
            Error::ClassNotClosed(_) => "ClassNotClosed",
            Error::MissingRay(_) => "MissingRay",
            Error::WindowContainsCriticalTime(_) => "WindowContainsCriticalTime",
            Error::NotUnimodularFan(_) => "NotUnimodularFan",
            Error::EmptyScene => "EmptyScene",
            Error::Parse(_) => "Parse",
            Error::Invalid(_) => "Invalid",
            Error::Internal(_) => "Internal",
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Returns an [`Error::Internal`] unless `cond` holds.
pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Internal(msg()))
    }
}
