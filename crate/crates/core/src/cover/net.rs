use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::UhpPoint;

/// Centers of a maximal discrete subset of a sampled domain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Net {
    pub centers: Vec<UhpPoint>,
    pub separation: f64,
}

impl Net {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Smallest pairwise distance between centers.
    pub fn min_spacing_with<F: Fn(&UhpPoint, &UhpPoint) -> f64>(&self, dist: F) -> f64 {
        let mut best = f64::INFINITY;
        for (i, p) in self.centers.iter().enumerate() {
            for q in &self.centers[i + 1..] {
                best = best.min(dist(p, q));
            }
        }
        best
    }

    /// Largest distance from a sample to its nearest center.
    pub fn covering_radius_with<F: Fn(&UhpPoint, &UhpPoint) -> f64>(&self, samples: &[UhpPoint], dist: F) -> f64 {
        samples
            .iter()
            .map(|s| self.centers.iter().map(|c| dist(s, c)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    }
}

/// Greedy net under the hyperbolic metric, scanning samples in order.
pub fn greedy_net(samples: &[UhpPoint], separation: f64) -> Result<Net> {
    greedy_net_with(samples, separation, UhpPoint::distance)
}

/// Greedy net under an arbitrary metric, e.g. a quotient distance.
///
/// A sample becomes a center when it is at least `separation` from every
/// earlier center, so the result is separated and every sample lies within
/// `separation` of some center.
pub fn greedy_net_with<F>(samples: &[UhpPoint], separation: f64, dist: F) -> Result<Net>
where
    F: Fn(&UhpPoint, &UhpPoint) -> f64,
{
    if !(separation > 0.0) {
        return Err(Error::InvalidParameter { name: "separation", reason: format!("{separation} is not positive") });
    }
    let mut centers: Vec<UhpPoint> = Vec::new();
    for s in samples {
        if centers.iter().all(|c| dist(s, c) >= separation) {
            centers.push(*s);
        }
    }
    Ok(Net { centers, separation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point() {
        let net = greedy_net(&[UhpPoint::I], 0.3).unwrap();
        assert_eq!(net.len(), 1);
        assert!(greedy_net(&[], 0.3).unwrap().is_empty());
        assert!(greedy_net(&[UhpPoint::I], 0.0).is_err());
    }

    #[test]
    fn horizontal_segment() {
        let samples: Vec<UhpPoint> = (0..=1000).map(|i| UhpPoint::new(i as f64 / 1000.0, 1.0).unwrap()).collect();
        let net = greedy_net(&samples, 0.5).unwrap();
        assert!((2..=3).contains(&net.len()));
        assert!(net.min_spacing_with(UhpPoint::distance) >= 0.5);
        assert!(net.covering_radius_with(&samples, UhpPoint::distance) < 0.5);
        // exhaustive packing check: no 4 samples are pairwise 0.5 apart
        let far = |a: &UhpPoint, b: &UhpPoint| a.distance(b) >= 0.5;
        let step = 10;
        let coarse: Vec<&UhpPoint> = samples.iter().step_by(step).collect();
        let mut best = 0;
        for i in 0..coarse.len() {
            for j in i + 1..coarse.len() {
                if !far(coarse[i], coarse[j]) {
                    continue;
                }
                best = best.max(2);
                for k in j + 1..coarse.len() {
                    if far(coarse[i], coarse[k]) && far(coarse[j], coarse[k]) {
                        best = best.max(3);
                        assert!(!(k + 1..coarse.len()).any(|l| far(coarse[i], coarse[l]) && far(coarse[j], coarse[l]) && far(coarse[k], coarse[l])));
                    }
                }
            }
        }
        assert!(net.len() <= best);
    }

    #[test]
    fn deterministic() {
        let samples: Vec<UhpPoint> = (0..200).map(|i| UhpPoint::new((i as f64 * 0.37).sin(), 1.0 + (i % 7) as f64 * 0.1).unwrap()).collect();
        assert_eq!(greedy_net(&samples, 0.2).unwrap(), greedy_net(&samples, 0.2).unwrap());
    }
}
