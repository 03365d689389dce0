use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::sets::{euclidean_disk, EuclideanDisk};
use crate::error::{Error, Result};
use crate::geom::{MoebiusIsometry, UhpPoint};
use crate::homology::SimplicialComplex;

/// Decides whether a family of cover sets has a common point.
///
/// Indices are passed sorted and distinct.
pub trait IntersectionOracle {
    fn len(&self) -> usize;

    fn intersects(&self, indices: &[usize]) -> bool;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NerveComplex {
    pub vertex_count: usize,
    pub dim_cap: usize,
    pub complex: SimplicialComplex,
}

impl NerveComplex {
    pub fn max_degree(&self) -> usize {
        self.complex.max_vertex_degree()
    }
}

/// Nerve of the cover described by `oracle`, up to dimension `dim_cap`.
///
/// Simplices are grown one vertex at a time from common neighbours. A
/// candidate whose edges all exist is always queried; if the oracle accepts
/// it while one of its facets was rejected the oracle is not monotone.
pub fn nerve<O: IntersectionOracle + ?Sized>(oracle: &O, dim_cap: usize) -> Result<NerveComplex> {
    let n = oracle.len();
    let verts: Vec<usize> = (0..n).filter(|&i| oracle.intersects(&[i])).collect();
    let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut all: Vec<Vec<usize>> = verts.iter().map(|&v| vec![v]).collect();
    let mut level: Vec<Vec<usize>> = Vec::new();
    if dim_cap >= 1 {
        for (a, &i) in verts.iter().enumerate() {
            for &j in &verts[a + 1..] {
                if oracle.intersects(&[i, j]) {
                    nbrs[i].insert(j);
                    nbrs[j].insert(i);
                    level.push(vec![i, j]);
                }
            }
        }
    }
    let mut d = 1;
    while d < dim_cap && !level.is_empty() {
        let present: HashSet<&Vec<usize>> = level.iter().collect();
        let mut next = Vec::new();
        for s in &level {
            let last = *s.last().expect("nonempty simplex");
            let common = nbrs[s[0]].range(last + 1..).filter(|v| s[1..].iter().all(|u| nbrs[*u].contains(v)));
            for &v in common {
                let mut t = s.clone();
                t.push(v);
                if !oracle.intersects(&t) {
                    continue;
                }
                let facets_ok = (0..t.len() - 1).all(|drop| {
                    let mut f = t.clone();
                    f.remove(drop);
                    present.contains(&f)
                });
                if !facets_ok {
                    return Err(Error::NonMonotoneOracle(t));
                }
                next.push(t);
            }
        }
        all.append(&mut level);
        level = next;
        d += 1;
    }
    all.append(&mut level);
    Ok(NerveComplex { vertex_count: verts.len(), dim_cap, complex: SimplicialComplex::from_simplices(all)? })
}

/// Whether the open Euclidean disks share a point.
///
/// If the common intersection is nonempty, its leftmost point is either the
/// leftmost point of one disk or a crossing point of two boundary circles;
/// radii are shrunk slightly first so tangency counts as disjoint.
pub fn disks_intersect(disks: &[EuclideanDisk]) -> bool {
    const SHRINK: f64 = 1e-10;
    let shrunk: Vec<EuclideanDisk> = disks.iter().map(|&(x, y, r)| (x, y, r * (1.0 - SHRINK))).collect();
    let inside = |px: f64, py: f64| {
        shrunk.iter().all(|&(x, y, r)| {
            let tol = 1e-13 * (r + x.abs().max(y.abs()));
            (px - x).hypot(py - y) <= r + tol
        })
    };
    if shrunk.iter().any(|&(x, y, r)| inside(x - r, y)) {
        return true;
    }
    for (i, &(x0, y0, r0)) in shrunk.iter().enumerate() {
        for &(x1, y1, r1) in &shrunk[i + 1..] {
            let (dx, dy) = (x1 - x0, y1 - y0);
            let d = dx.hypot(dy);
            if d >= r0 + r1 || d <= (r0 - r1).abs() || d == 0.0 {
                continue;
            }
            let a = (r0 * r0 - r1 * r1 + d * d) / (2.0 * d);
            let h = (r0 * r0 - a * a).max(0.0).sqrt();
            let (mx, my) = (x0 + a * dx / d, y0 + a * dy / d);
            for s in [-1.0, 1.0] {
                if inside(mx - s * h * dy / d, my + s * h * dx / d) {
                    return true;
                }
            }
        }
    }
    false
}

/// Open hyperbolic balls in the upper half-plane.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicBallOracle {
    balls: Vec<(UhpPoint, f64)>,
}

impl HyperbolicBallOracle {
    pub fn new(balls: Vec<(UhpPoint, f64)>) -> Self {
        Self { balls }
    }
}

impl IntersectionOracle for HyperbolicBallOracle {
    fn len(&self) -> usize {
        self.balls.len()
    }

    fn intersects(&self, idx: &[usize]) -> bool {
        match idx {
            [] | [_] => true,
            [i, j] => {
                let (p, r) = self.balls[*i];
                let (q, s) = self.balls[*j];
                p.distance(&q) < r + s
            }
            _ => disks_intersect(&idx.iter().map(|&i| euclidean_disk(&self.balls[i].0, self.balls[i].1)).collect::<Vec<_>>()),
        }
    }
}

/// Balls in a quotient `Γ \ H²`, tested on lifts by the given group elements.
///
/// The first ball is kept fixed and the others are moved by every element
/// that brings them within reach of it.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientBallOracle {
    balls: Vec<(UhpPoint, f64)>,
    lifts: Vec<MoebiusIsometry>,
}

impl QuotientBallOracle {
    /// `elements` should be a word ball of the group; the identity is added.
    pub fn new(balls: Vec<(UhpPoint, f64)>, elements: &[MoebiusIsometry]) -> Self {
        let mut lifts = vec![MoebiusIsometry::IDENTITY];
        lifts.extend_from_slice(elements);
        Self { balls, lifts }
    }

    fn search(&self, chosen: &mut Vec<(UhpPoint, f64)>, rest: &[usize]) -> bool {
        let Some((&next, tail)) = rest.split_first() else {
            let disks: Vec<EuclideanDisk> = chosen.iter().map(|(p, r)| euclidean_disk(p, *r)).collect();
            return chosen.len() <= 2 || disks_intersect(&disks);
        };
        let (c, r) = self.balls[next];
        for g in &self.lifts {
            let q = g.apply(&c);
            if chosen.iter().all(|(p, s)| p.distance(&q) < r + s) {
                chosen.push((q, r));
                if self.search(chosen, tail) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

impl IntersectionOracle for QuotientBallOracle {
    fn len(&self) -> usize {
        self.balls.len()
    }

    fn intersects(&self, idx: &[usize]) -> bool {
        let Some((&first, rest)) = idx.split_first() else { return true };
        let mut chosen = vec![self.balls[first]];
        self.search(&mut chosen, rest)
    }
}

/// Explicit family of sets given by a membership table over sample points.
///
/// Exact for the sampled space; used for cross-checks.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledOracle {
    members: Vec<BTreeSet<usize>>,
}

impl SampledOracle {
    pub fn new<T, F: Fn(usize, &T) -> bool>(sets: usize, samples: &[T], contains: F) -> Self {
        let members = (0..sets)
            .map(|i| samples.iter().enumerate().filter(|(_, s)| contains(i, s)).map(|(k, _)| k).collect())
            .collect();
        Self { members }
    }
}

impl IntersectionOracle for SampledOracle {
    fn len(&self) -> usize {
        self.members.len()
    }

    fn intersects(&self, idx: &[usize]) -> bool {
        let Some((&first, rest)) = idx.split_first() else { return true };
        self.members[first].iter().any(|k| rest.iter().all(|&i| self.members[i].contains(k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;

    fn pt(x: f64, y: f64) -> UhpPoint {
        UhpPoint::new(x, y).unwrap()
    }

    #[test]
    fn disjoint_and_overlapping_balls() {
        let o = HyperbolicBallOracle::new(vec![(pt(0.0, 1.0), 0.2), (pt(5.0, 1.0), 0.2)]);
        let nv = nerve(&o, 3).unwrap();
        assert_eq!(nv.complex.counts(), vec![2]);
        let o = HyperbolicBallOracle::new(vec![(pt(0.0, 1.0), 0.6), (pt(1.0, 1.0), 0.6)]);
        assert_eq!(nerve(&o, 3).unwrap().complex.counts(), vec![2, 1]);
    }

    #[test]
    fn three_disks_pairwise_but_not_jointly() {
        // three unit disks on a triangle of side 1.9: pairwise overlap, no common point
        let s = 1.9f64;
        let d = [(0.0, 10.0, 1.0), (s, 10.0, 1.0), (s / 2.0, 10.0 + s * 3f64.sqrt() / 2.0, 1.0)];
        assert!(disks_intersect(&d[..2]));
        assert!(!disks_intersect(&d));
        let d = [(0.0, 10.0, 1.0), (1.0, 10.0, 1.0), (0.5, 10.8, 1.0)];
        assert!(disks_intersect(&d));
        // tangent disks do not meet
        assert!(!disks_intersect(&[(0.0, 5.0, 1.0), (2.0, 5.0, 1.0)]));
        // nested
        assert!(disks_intersect(&[(0.0, 5.0, 2.0), (0.3, 5.0, 0.1), (0.0, 5.5, 1.0)]));
    }

    #[test]
    fn four_arc_circle() {
        // four hyperbolic balls along a circle with consecutive overlaps only
        // vertices of a square with circumradius 1 about i: sides 1.5, diagonals 2
        let w = 0.5f64.tanh();
        let centers: Vec<UhpPoint> = [(w, 0.0), (0.0, w), (-w, 0.0), (0.0, -w)]
            .iter()
            .map(|&(a, b)| {
                // disk to half-plane: z = i (1 + w) / (1 - w)
                let den = (1.0 - a).powi(2) + b * b;
                pt(-2.0 * b / den, (1.0 - a * a - b * b) / den)
            })
            .collect();
        let o = HyperbolicBallOracle::new(centers.iter().map(|c| (*c, 0.8)).collect());
        let nv = nerve(&o, 4).unwrap();
        assert_eq!(nv.complex.counts(), vec![4, 4]);
        let h = homology(&nv.complex, &[2]).unwrap();
        assert_eq!(h.betti_q(), vec![1, 1]);
    }

    struct Liar;
    impl IntersectionOracle for Liar {
        fn len(&self) -> usize {
            3
        }
        fn intersects(&self, idx: &[usize]) -> bool {
            idx != [0, 2] || idx.len() == 3
        }
    }

    struct Liar2;
    impl IntersectionOracle for Liar2 {
        fn len(&self) -> usize {
            4
        }
        fn intersects(&self, idx: &[usize]) -> bool {
            idx != [0, 1, 3]
        }
    }

    #[test]
    fn detects_non_monotone() {
        // 0-2 missing so {0,1,2} is never proposed; the edge filter is not a violation
        assert!(nerve(&Liar, 2).is_ok());
        assert!(matches!(nerve(&Liar2, 3), Err(Error::NonMonotoneOracle(_))));
    }

    #[test]
    fn induced_subcover() {
        let balls: Vec<(UhpPoint, f64)> = (0..8).map(|i| (pt(0.3 * i as f64, 1.0 + 0.1 * (i % 3) as f64), 0.35)).collect();
        let full = nerve(&HyperbolicBallOracle::new(balls.clone()), 4).unwrap();
        let keep = [0usize, 2, 3, 5, 6];
        let sub: Vec<(UhpPoint, f64)> = keep.iter().map(|&i| balls[i]).collect();
        let part = nerve(&HyperbolicBallOracle::new(sub), 4).unwrap();
        let relabel: Vec<Vec<usize>> = part.complex.maximal_simplices().iter().map(|s| s.iter().map(|&v| keep[v]).collect()).collect();
        let relabelled = SimplicialComplex::from_simplices(relabel).unwrap();
        assert_eq!(relabelled, full.complex.induced(&keep.into_iter().collect()));
    }

    #[test]
    fn quotient_oracle_wraps() {
        let t = MoebiusIsometry::translation(1.0);
        let elems = [t, t.inverse()];
        let balls = vec![(pt(0.05, 2.0), 0.1), (pt(0.95, 2.0), 0.1)];
        let o = QuotientBallOracle::new(balls.clone(), &elems);
        assert!(o.intersects(&[0, 1]));
        assert!(!HyperbolicBallOracle::new(balls).intersects(&[0, 1]));
    }
}
