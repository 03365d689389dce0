//! Nets, covering sets, nerves and the complexity checks on them.

pub mod dc;
pub mod models;
pub mod nerve;
pub mod net;
pub mod packing;
pub mod sets;

pub use dc::{check_dc, check_dc_ledger, complexity_constants, refinement_budget, DcReport};
pub use models::{ArcCover, CuspStrip, IntervalCover, TorusPatchCover};
pub use nerve::{disks_intersect, nerve, HyperbolicBallOracle, IntersectionOracle, NerveComplex, QuotientBallOracle, SampledOracle};
pub use net::{greedy_net, greedy_net_with, Net};
pub use packing::{euclidean_ball_volume, hyperbolic_ball_volume, n_packing, unit_ball_volume};
pub use sets::{euclidean_disk, stabilize_ball, CollarExtension, CoverSet, EuclideanDisk};

/// Default nerve dimension cap in dimension `n`.
pub fn default_dim_cap(n: usize) -> usize {
    n + 2
}
