//! Integer simplicial homology.

pub mod complex;
pub mod modp;
pub mod snf;
pub mod summary;

pub use complex::{BoundaryMatrix, SimplicialComplex};
pub use modp::{is_prime, rank_mod_p};
pub use snf::{snf, snf_diagonal, snf_sparse, IntMatrix, SnfResult};
pub use summary::{
    bounds_report, hadamard_torsion_cap, homology, simplex_count_check, BoundRecord, BoundsReport, CheckStatus,
    CountRecord, DegreeHomology, HomologySummary, SimplexCountReport,
};
