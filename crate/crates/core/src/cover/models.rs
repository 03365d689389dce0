//! Model spaces with open covers whose nerves are known, and the cusp strip
//! of the modular translation group used for complexity checks.

use super::nerve::{IntersectionOracle, QuotientBallOracle};
use super::net::{greedy_net_with, Net};
use crate::error::Result;
use crate::geom::{MoebiusIsometry, UhpPoint};
use crate::thick_thin::{hyperbolic_grid, thin_boundary_height, GroupPresentation};

/// Open intervals `(lo, hi)` on the line.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalCover {
    pub intervals: Vec<(f64, f64)>,
}

impl IntervalCover {
    /// `pieces` equal intervals covering `[0, 1]`, each widened by `overlap`.
    pub fn segment(pieces: usize, overlap: f64) -> Self {
        let w = 1.0 / pieces as f64;
        Self { intervals: (0..pieces).map(|i| (i as f64 * w - overlap, (i + 1) as f64 * w + overlap)).collect() }
    }
}

impl IntersectionOracle for IntervalCover {
    fn len(&self) -> usize {
        self.intervals.len()
    }

    fn intersects(&self, idx: &[usize]) -> bool {
        let lo = idx.iter().map(|&i| self.intervals[i].0).fold(f64::NEG_INFINITY, f64::max);
        let hi = idx.iter().map(|&i| self.intervals[i].1).fold(f64::INFINITY, f64::min);
        lo < hi
    }
}

/// Open arcs `(start, start + len)` on the circle `ℝ/ℤ`, `len < 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcCover {
    pub arcs: Vec<(f64, f64)>,
}

impl ArcCover {
    /// `k` consecutive arcs, each overlapping its neighbours by `overlap`.
    pub fn circle(k: usize, overlap: f64) -> Self {
        let w = 1.0 / k as f64;
        Self { arcs: (0..k).map(|i| (i as f64 * w - overlap / 2.0, w + overlap)).collect() }
    }

    /// A common point exists iff one arc's left end, nudged right, lies in all.
    pub fn arcs_intersect(arcs: &[(f64, f64)]) -> bool {
        arcs.iter().any(|&(a, _)| arcs.iter().all(|&(b, len)| (a - b).rem_euclid(1.0) < len))
    }
}

impl IntersectionOracle for ArcCover {
    fn len(&self) -> usize {
        self.arcs.len()
    }

    fn intersects(&self, idx: &[usize]) -> bool {
        Self::arcs_intersect(&idx.iter().map(|&i| self.arcs[i]).collect::<Vec<_>>())
    }
}

/// Products of open arcs on the flat torus `ℝ²/ℤ²`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPatchCover {
    pub patches: Vec<((f64, f64), (f64, f64))>,
}

impl TorusPatchCover {
    /// An `m × m` grid of squares, each widened by `overlap` on every side.
    pub fn grid(m: usize, overlap: f64) -> Self {
        let axis = ArcCover::circle(m, 2.0 * overlap).arcs;
        let patches = axis.iter().flat_map(|&x| axis.iter().map(move |&y| (x, y))).collect();
        Self { patches }
    }
}

impl IntersectionOracle for TorusPatchCover {
    fn len(&self) -> usize {
        self.patches.len()
    }

    fn intersects(&self, idx: &[usize]) -> bool {
        let xs: Vec<(f64, f64)> = idx.iter().map(|&i| self.patches[i].0).collect();
        let ys: Vec<(f64, f64)> = idx.iter().map(|&i| self.patches[i].1).collect();
        ArcCover::arcs_intersect(&xs) && ArcCover::arcs_intersect(&ys)
    }
}

/// The band `{y_lo <= y <= y_hi}` just below the thin part of the cusp of
/// `⟨z ↦ z + 1⟩`, sampled on a hyperbolic grid over one period.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspStrip {
    pub group: GroupPresentation,
    pub y_lo: f64,
    pub y_hi: f64,
    pub samples: Vec<UhpPoint>,
}

impl CuspStrip {
    /// Band of hyperbolic height `depth` below the thin level `eps`.
    pub fn new(eps: f64, depth: f64, pitch: f64) -> Result<Self> {
        let group = GroupPresentation::new(vec![MoebiusIsometry::translation(1.0)], 1)?;
        let y_hi = thin_boundary_height(eps)?;
        let y_lo = y_hi * (-depth).exp();
        let samples = hyperbolic_grid((0.0, 1.0), (y_lo, y_hi), pitch)?
            .into_iter()
            .flatten()
            .filter(|p| p.x() < 1.0)
            .collect();
        Ok(Self { group, y_lo, y_hi, samples })
    }

    /// Hyperbolic area of the band in the quotient.
    pub fn area(&self) -> f64 {
        1.0 / self.y_lo - 1.0 / self.y_hi
    }

    pub fn distance(&self, p: &UhpPoint, q: &UhpPoint) -> f64 {
        self.group.quotient_distance(p, q)
    }

    pub fn net(&self, separation: f64) -> Result<Net> {
        greedy_net_with(&self.samples, separation, |p, q| self.distance(p, q))
    }

    pub fn oracle(&self, net: &Net, radius: f64) -> QuotientBallOracle {
        QuotientBallOracle::new(net.centers.iter().map(|c| (*c, radius)).collect(), self.group.ball())
    }
}
