use thiserror::Error;

/// Errors raised by the geometry, warping, covering and homology routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point must lie in the upper half-plane (y = {0})")]
    NotInUpperHalfPlane(f64),

    #[error("matrix determinant {0} is not 1")]
    BadDeterminant(f64),

    #[error("no axis: isometry is {0}")]
    NoAxis(&'static str),

    #[error("isometry has no boundary fixed-point structure: {0}")]
    NoBoundaryFixedPoints(&'static str),

    #[error("value {value} outside the domain of {what}")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("empty generator list")]
    NoGenerators,

    #[error("generator {0} is the identity or elliptic")]
    BadGenerator(usize),

    #[error("already thick: start height {y_start} <= thick height {y_thick}")]
    AlreadyThick { y_start: f64, y_thick: f64 },

    #[error("warp bridge rejected: {0}")]
    BridgeRejected(String),

    #[error("intersection oracle is not monotone on simplex {0:?}")]
    NonMonotoneOracle(Vec<usize>),

    #[error("invalid simplex {0:?}: {1}")]
    BadSimplex(Vec<usize>, &'static str),

    #[error("boundary degree {k} out of range 1..={dim}")]
    DegreeOutOfRange { k: usize, dim: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
