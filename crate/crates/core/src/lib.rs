//! Explicit models for bounding the topology of finite-volume negatively
//! curved manifolds: hyperbolic plane geometry, a flattened cusp warp,
//! thick-thin decompositions of Fuchsian groups, good covers and their
//! nerves, and integer homology by Smith normal form.

// `!(x > 0.0)` is deliberate: NaN has to fail these checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cover;
pub mod error;
pub mod geom;
pub mod homology;
pub mod ledger;
pub mod quadrature;
pub mod thick_thin;
pub mod warp;

pub use error::{Error, Result};
pub use geom::{BoundaryPoint, Classification, GeodesicRay, Horoball, MoebiusIsometry, UhpPoint};
pub use homology::{HomologySummary, SimplicialComplex, SnfResult};
pub use ledger::{ConstantsLedger, Magnitude};
pub use thick_thin::{EpsAssignment, GroupPresentation, ThinKind};
pub use warp::{CuspModel, TangentPlaneSpec, VolumeIntegrand, WarpFunction};
