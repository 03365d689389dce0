use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::UhpPoint;

/// Euclidean disk `(cx, cy, radius)` in the upper half-plane.
pub type EuclideanDisk = (f64, f64, f64);

/// The hyperbolic ball of radius `r` about `p` as a Euclidean disk.
pub fn euclidean_disk(p: &UhpPoint, r: f64) -> EuclideanDisk {
    (p.x(), p.y() * r.cosh(), p.y() * r.sinh())
}

/// Vertical extension of a ball above the thick cut `{y = y_thick}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollarExtension {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_thick: f64,
    pub y_top: f64,
}

impl CollarExtension {
    pub fn contains(&self, p: &UhpPoint) -> bool {
        p.x() > self.x_lo && p.x() < self.x_hi && p.y() >= self.y_thick && p.y() < self.y_top
    }
}

/// A hyperbolic ball, optionally cut at the thick level and extended along
/// the vertical flow lines above the cut.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverSet {
    pub center: UhpPoint,
    pub radius: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collar: Option<CollarExtension>,
}

impl CoverSet {
    pub fn ball(center: UhpPoint, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter { name: "radius", reason: format!("{radius} is not positive") });
        }
        Ok(Self { center, radius, collar: None })
    }

    pub fn is_stabilized(&self) -> bool {
        self.collar.is_some()
    }

    pub fn ball_contains(&self, p: &UhpPoint) -> bool {
        self.center.distance(p) < self.radius
    }

    pub fn contains(&self, p: &UhpPoint) -> bool {
        match &self.collar {
            None => self.ball_contains(p),
            Some(c) => (p.y() <= c.y_thick && self.ball_contains(p)) || c.contains(p),
        }
    }

    pub fn euclidean_disk(&self) -> EuclideanDisk {
        euclidean_disk(&self.center, self.radius)
    }
}

/// Replaces a ball that pokes above `{y = y_thick}` by its part below the
/// cut together with the vertical segments above the cut, up to `collar_top`.
///
/// The result is invariant under the downward collar flow. Balls that stay
/// at or below the cut (they are open) are returned unchanged.
pub fn stabilize_ball(b: &CoverSet, y_thick: f64, collar_top: f64) -> Result<CoverSet> {
    if !(y_thick > 0.0) || !(collar_top > y_thick) {
        return Err(Error::InvalidParameter {
            name: "collar",
            reason: format!("need 0 < y_thick ({y_thick}) < collar_top ({collar_top})"),
        });
    }
    let (cx, cy, rad) = b.euclidean_disk();
    if cy + rad <= y_thick {
        return Ok(*b);
    }
    if cy - rad >= y_thick {
        return Err(Error::InvalidParameter { name: "ball", reason: "ball lies above the thick part".into() });
    }
    let half = (rad * rad - (y_thick - cy).powi(2)).max(0.0).sqrt();
    Ok(CoverSet {
        collar: Some(CollarExtension { x_lo: cx - half, x_hi: cx + half, y_thick, y_top: collar_top }),
        ..*b
    })
}
