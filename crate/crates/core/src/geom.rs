//! Upper half-plane model of the hyperbolic plane.
//!
//! Points are `x + iy` with `y > 0`; isometries are real unimodular 2×2
//! matrices acting by fractional linear transformations, taken modulo sign.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Determinant tolerance accepted by [`MoebiusIsometry::new`].
pub const DET_TOL: f64 = 1e-12;
/// Width of the band `||tr| - 2| <= TRACE_TOL` classified as parabolic.
pub const TRACE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct UhpPoint {
    x: f64,
    y: f64,
}

impl UhpPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::NotInUpperHalfPlane(y));
        }
        Ok(Self { x, y })
    }

    /// The point `i`.
    pub const I: UhpPoint = UhpPoint { x: 0.0, y: 1.0 };

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// Hyperbolic distance, via `sinh(d/2) = |p - q| / (2 sqrt(y_p y_q))`.
    ///
    /// This is the half-angle form of `cosh d = 1 + |p-q|²/(2 y_p y_q)` and
    /// keeps full relative precision for nearby points.
    pub fn distance(&self, other: &UhpPoint) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let chord = dx.hypot(dy);
        2.0 * (chord / (2.0 * (self.y * other.y).sqrt())).asinh()
    }
}

impl TryFrom<[f64; 2]> for UhpPoint {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        UhpPoint::new(v[0], v[1])
    }
}

impl From<UhpPoint> for [f64; 2] {
    fn from(p: UhpPoint) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for UhpPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.x, self.y)
    }
}

/// Hyperbolic distance between two points.
pub fn distance(p: &UhpPoint, q: &UhpPoint) -> f64 {
    p.distance(q)
}

/// A point of the boundary at infinity `ℝ ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum BoundaryPoint {
    Real(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn approx_eq(&self, other: &BoundaryPoint, tol: f64) -> bool {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            (BoundaryPoint::Real(a), BoundaryPoint::Real(b)) => (a - b).abs() <= tol * (1.0 + a.abs()),
            _ => false,
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Real(v) => write!(f, "{v}"),
            BoundaryPoint::Infinity => write!(f, "∞"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Identity => "identity",
            Classification::Elliptic => "elliptic",
            Classification::Parabolic => "parabolic",
            Classification::Hyperbolic => "hyperbolic",
        }
    }
}

/// An orientation-preserving isometry `z ↦ (az + b)/(cz + d)` with `ad - bc = 1`.
///
/// The representative is canonical: `a > 0`, or `a = 0` and `b > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct MoebiusIsometry {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl MoebiusIsometry {
    pub const IDENTITY: MoebiusIsometry = MoebiusIsometry { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// Builds an isometry from matrix entries whose determinant is 1 within [`DET_TOL`].
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !det.is_finite() || (det - 1.0).abs() > DET_TOL {
            return Err(Error::BadDeterminant(det));
        }
        Ok(Self::normalized(a, b, c, d, det))
    }

    /// Builds an isometry from any matrix with positive determinant, rescaling it.
    pub fn from_unnormalized(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::BadDeterminant(det));
        }
        Ok(Self::normalized(a, b, c, d, det))
    }

    fn normalized(a: f64, b: f64, c: f64, d: f64, det: f64) -> Self {
        let s = det.sqrt();
        let (mut a, mut b, mut c, mut d) = (a / s, b / s, c / s, d / s);
        if a < 0.0 || (a == 0.0 && b < 0.0) {
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
        Self { a, b, c, d }
    }

    /// `z ↦ z + b`.
    pub fn translation(b: f64) -> Self {
        Self { a: 1.0, b, c: 0.0, d: 1.0 }
    }

    /// `z ↦ k z` for `k > 0`.
    pub fn dilation(k: f64) -> Result<Self> {
        if !(k > 0.0) {
            return Err(Error::InvalidParameter { name: "k", reason: format!("dilation factor {k} must be positive") });
        }
        let s = k.sqrt();
        Ok(Self { a: s, b: 0.0, c: 0.0, d: 1.0 / s })
    }

    /// An isometry sending the boundary point `xi` to `∞`.
    pub fn sending_to_infinity(xi: BoundaryPoint) -> Self {
        match xi {
            BoundaryPoint::Infinity => Self::IDENTITY,
            // z ↦ -1/(z - ξ)
            BoundaryPoint::Real(x) => Self::normalized(0.0, -1.0, 1.0, -x, 1.0),
        }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn inverse(&self) -> Self {
        Self::normalized(self.d, -self.b, -self.c, self.a, 1.0)
    }

    pub fn compose(&self, other: &Self) -> Self {
        let a = self.a * other.a + self.b * other.c;
        let b = self.a * other.b + self.b * other.d;
        let c = self.c * other.a + self.d * other.c;
        let d = self.c * other.b + self.d * other.d;
        // re-normalize to absorb rounding in long products
        let det = a * d - b * c;
        Self::normalized(a, b, c, d, det)
    }

    /// `h · self · h⁻¹`.
    pub fn conjugate_by(&self, h: &Self) -> Self {
        h.compose(self).compose(&h.inverse())
    }

    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut acc = Self::IDENTITY;
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    pub fn apply(&self, p: &UhpPoint) -> UhpPoint {
        let den_re = self.c * p.x + self.d;
        let den_im = self.c * p.y;
        let den2 = den_re * den_re + den_im * den_im;
        let num_re = self.a * p.x + self.b;
        let x = (num_re * den_re + self.a * self.c * p.y * p.y) / den2;
        let y = p.y / den2;
        UhpPoint { x, y }
    }

    /// Induced action on `ℝ ∪ {∞}`.
    pub fn apply_boundary(&self, z: &BoundaryPoint) -> BoundaryPoint {
        match *z {
            BoundaryPoint::Infinity => {
                if self.c == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Real(self.a / self.c)
                }
            }
            BoundaryPoint::Real(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Real((self.a * x + self.b) / den)
                }
            }
        }
    }

    /// Displacement `d(p, g p)`.
    pub fn displacement(&self, p: &UhpPoint) -> f64 {
        p.distance(&self.apply(p))
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (self.a - 1.0).abs() <= tol && (self.d - 1.0).abs() <= tol && self.b.abs() <= tol && self.c.abs() <= tol
    }

    /// Classification by trace; `||tr| - 2| <= TRACE_TOL` counts as parabolic.
    pub fn classify(&self) -> Classification {
        if self.is_identity(TRACE_TOL) {
            return Classification::Identity;
        }
        let t = self.trace().abs();
        if (t - 2.0).abs() <= TRACE_TOL {
            Classification::Parabolic
        } else if t > 2.0 {
            Classification::Hyperbolic
        } else {
            Classification::Elliptic
        }
    }

    /// `2 arccosh(|tr|/2)`, the minimal displacement of a hyperbolic isometry.
    pub fn translation_length(&self) -> Result<f64> {
        match self.classify() {
            Classification::Hyperbolic => Ok(2.0 * (self.trace().abs() / 2.0).acosh()),
            other => Err(Error::NoAxis(other.name())),
        }
    }

    /// Fixed points on the boundary: two for hyperbolic, one for parabolic.
    ///
    /// Finite points come first in increasing order, `∞` last.
    pub fn fixed_points(&self) -> Result<Vec<BoundaryPoint>> {
        let class = self.classify();
        match class {
            Classification::Identity | Classification::Elliptic => {
                return Err(Error::NoBoundaryFixedPoints(class.name()));
            }
            _ => {}
        }
        // c z² + (d - a) z - b = 0
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs());
        if c.abs() <= 1e-14 * scale {
            let mut pts = Vec::new();
            if class == Classification::Hyperbolic {
                pts.push(BoundaryPoint::Real(b / (d - a)));
            }
            pts.push(BoundaryPoint::Infinity);
            return Ok(pts);
        }
        if class == Classification::Parabolic {
            return Ok(vec![BoundaryPoint::Real((a - d) / (2.0 * c))]);
        }
        let disc = (self.trace() * self.trace() - 4.0).sqrt();
        let mut roots = [(a - d - disc) / (2.0 * c), (a - d + disc) / (2.0 * c)];
        roots.sort_by(|x, y| x.total_cmp(y));
        Ok(roots.iter().map(|&r| BoundaryPoint::Real(r)).collect())
    }

    /// Entrywise comparison of canonical representatives.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let e = self.entries();
        let f = other.entries();
        let close = |s: f64| e.iter().zip(f.iter()).all(|(x, y)| (x - s * y).abs() <= tol * (1.0 + x.abs()));
        close(1.0) || close(-1.0)
    }
}

impl Mul for MoebiusIsometry {
    type Output = MoebiusIsometry;
    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

impl TryFrom<[f64; 4]> for MoebiusIsometry {
    type Error = Error;
    fn try_from(v: [f64; 4]) -> Result<Self> {
        MoebiusIsometry::new(v[0], v[1], v[2], v[3])
    }
}

impl From<MoebiusIsometry> for [f64; 4] {
    fn from(g: MoebiusIsometry) -> Self {
        g.entries()
    }
}

pub fn apply(g: &MoebiusIsometry, p: &UhpPoint) -> UhpPoint {
    g.apply(p)
}

pub fn displacement(g: &MoebiusIsometry, p: &UhpPoint) -> f64 {
    g.displacement(p)
}

pub fn classify(g: &MoebiusIsometry) -> Classification {
    g.classify()
}

/// Busemann function of the ray from `base` towards `z`, evaluated at `p`.
///
/// For `z = ∞` this is `ln(y_base / y_p)`; finite centers are moved to `∞` first.
pub fn busemann(z: BoundaryPoint, base: &UhpPoint, p: &UhpPoint) -> f64 {
    match z {
        BoundaryPoint::Infinity => base.y.ln() - p.y.ln(),
        finite => {
            let g = MoebiusIsometry::sending_to_infinity(finite);
            busemann(BoundaryPoint::Infinity, &g.apply(base), &g.apply(p))
        }
    }
}

/// Open horoball `{p : busemann(center, canonical base, p) < level}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Horoball {
    pub center: BoundaryPoint,
    pub level: f64,
}

impl Horoball {
    /// `i` for the center `∞`, `ξ + i` for a finite center `ξ`.
    pub fn canonical_base(center: BoundaryPoint) -> UhpPoint {
        match center {
            BoundaryPoint::Infinity => UhpPoint::I,
            BoundaryPoint::Real(x) => UhpPoint { x, y: 1.0 },
        }
    }

    pub fn contains(&self, p: &UhpPoint) -> bool {
        busemann(self.center, &Self::canonical_base(self.center), p) < self.level
    }
}

pub fn horoball_contains(hb: &Horoball, p: &UhpPoint) -> bool {
    hb.contains(p)
}

/// Unit-speed geodesic ray with `ray(0) = base`, heading to `endpoint`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodesicRay {
    base: UhpPoint,
    endpoint: BoundaryPoint,
    to_infinity: MoebiusIsometry,
}

impl GeodesicRay {
    pub fn new(base: UhpPoint, endpoint: BoundaryPoint) -> Self {
        let to_infinity = MoebiusIsometry::sending_to_infinity(endpoint);
        Self { base, endpoint, to_infinity }
    }

    pub fn base(&self) -> UhpPoint {
        self.base
    }

    pub fn endpoint(&self) -> BoundaryPoint {
        self.endpoint
    }

    pub fn point_at(&self, s: f64) -> UhpPoint {
        let b = self.to_infinity.apply(&self.base);
        let q = UhpPoint { x: b.x, y: b.y * s.exp() };
        self.to_infinity.inverse().apply(&q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pt(x: f64, y: f64) -> UhpPoint {
        UhpPoint::new(x, y).unwrap()
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(UhpPoint::new(0.0, 0.0).is_err());
        assert!(UhpPoint::new(0.0, -1.0).is_err());
        assert!(UhpPoint::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(&UhpPoint::I, &UhpPoint::I), 0.0);
        // arccosh(5/4) = ln 2
        assert_abs_diff_eq!(distance(&UhpPoint::I, &pt(0.0, 2.0)), (1.25f64).acosh(), epsilon = 1e-15);
        assert_abs_diff_eq!(distance(&UhpPoint::I, &pt(0.0, 2.0)), 2f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(distance(&UhpPoint::I, &pt(1.0, 1.0)), 1.5f64.acosh(), epsilon = 1e-15);
        assert_abs_diff_eq!(1.5f64.acosh(), 0.9624236501192069, epsilon = 1e-15);
    }

    #[test]
    fn apply_examples() {
        assert_eq!(MoebiusIsometry::IDENTITY.apply(&UhpPoint::I), UhpPoint::I);
        assert_eq!(MoebiusIsometry::translation(1.0).apply(&UhpPoint::I), pt(1.0, 1.0));
        let g = MoebiusIsometry::new(2.0, 0.0, 0.0, 0.5).unwrap();
        let q = g.apply(&UhpPoint::I);
        assert_abs_diff_eq!(q.x(), 0.0);
        assert_abs_diff_eq!(q.y(), 4.0, epsilon = 1e-15);
    }

    #[test]
    fn determinant_checked_and_sign_canonical() {
        assert!(MoebiusIsometry::new(2.0, 0.0, 0.0, 1.0).is_err());
        let g = MoebiusIsometry::new(-1.0, -1.0, 0.0, -1.0).unwrap();
        assert_eq!(g.entries(), [1.0, 1.0, 0.0, 1.0]);
        let h = MoebiusIsometry::new(0.0, -1.0, 1.0, 0.0).unwrap();
        assert_eq!(h.entries(), [0.0, 1.0, -1.0, 0.0]);
        let s = MoebiusIsometry::from_unnormalized(4.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(s.entries(), [2.0, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn displacement_examples() {
        assert_eq!(MoebiusIsometry::IDENTITY.displacement(&pt(3.0, 0.2)), 0.0);
        let t = MoebiusIsometry::translation(1.0);
        assert_abs_diff_eq!(t.displacement(&UhpPoint::I), 1.5f64.acosh(), epsilon = 1e-15);
        let neg = MoebiusIsometry::from_unnormalized(-1.0, -1.0, 0.0, -1.0).unwrap();
        assert_eq!(neg.displacement(&UhpPoint::I), t.displacement(&UhpPoint::I));
        let dil = MoebiusIsometry::dilation(4.0).unwrap();
        assert_abs_diff_eq!(dil.displacement(&UhpPoint::I), 4f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!((17.0f64 / 8.0).acosh(), 4f64.ln(), epsilon = 1e-15);
        // numeric minimisation along the imaginary axis
        let min = (1..=2000)
            .map(|k| dil.displacement(&pt(0.0, 0.01 * k as f64)))
            .fold(f64::INFINITY, f64::min);
        assert_abs_diff_eq!(min, 4f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn classify_examples() {
        let p = MoebiusIsometry::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(p.classify(), Classification::Parabolic);
        // displacement along iy decreases to 0 without reaching it
        let mut prev = f64::INFINITY;
        for k in 0..=60 {
            let y = 10f64.powf(k as f64 / 10.0);
            let d = p.displacement(&pt(0.0, y));
            assert!(d > 0.0 && d < prev);
            prev = d;
        }
        assert!(prev < 1e-5);

        let h = MoebiusIsometry::new(2.0, 0.0, 0.0, 0.5).unwrap();
        assert_eq!(h.classify(), Classification::Hyperbolic);
        let grid_min = (-200..=200)
            .flat_map(|i| (1..=200).map(move |j| pt(0.01 * i as f64, 0.02 * j as f64)))
            .map(|q| h.displacement(&q))
            .fold(f64::INFINITY, f64::min);
        assert_abs_diff_eq!(grid_min, 2.0 * 2f64.ln(), epsilon = 1e-12);

        assert_eq!(MoebiusIsometry::IDENTITY.classify(), Classification::Identity);
        let rot = MoebiusIsometry::new(0.0, -1.0, 1.0, 0.0).unwrap();
        assert_eq!(rot.classify(), Classification::Elliptic);
    }

    #[test]
    fn translation_length_examples() {
        let h = MoebiusIsometry::new(2.0, 0.0, 0.0, 0.5).unwrap();
        assert_abs_diff_eq!(h.translation_length().unwrap(), 2.0 * 2f64.ln(), epsilon = 1e-14);
        let e = MoebiusIsometry::new(0.5f64.exp(), 0.0, 0.0, (-0.5f64).exp()).unwrap();
        assert_abs_diff_eq!(e.translation_length().unwrap(), 1.0, epsilon = 1e-14);
        let p = MoebiusIsometry::translation(1.0);
        assert_eq!(p.translation_length(), Err(Error::NoAxis("parabolic")));
    }

    #[test]
    fn translation_length_is_min_displacement() {
        // golden-ratio element [[2,1],[1,1]]; its axis joins (1±√5)/2
        let g = MoebiusIsometry::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let ell = g.translation_length().unwrap();
        let centre = 0.5;
        let radius = 5f64.sqrt() / 2.0;
        let on_axis = pt(centre, radius);
        assert_abs_diff_eq!(g.displacement(&on_axis), ell, epsilon = 1e-8);
        let grid_min = (-100..=100)
            .flat_map(|i| (1..=100).map(move |j| pt(centre + 0.02 * i as f64, 0.03 * j as f64)))
            .map(|q| g.displacement(&q))
            .fold(f64::INFINITY, f64::min);
        assert!(grid_min >= ell - 1e-12);
    }

    #[test]
    fn fixed_point_examples() {
        let t = MoebiusIsometry::translation(1.0);
        assert_eq!(t.fixed_points().unwrap(), vec![BoundaryPoint::Infinity]);
        let d = MoebiusIsometry::dilation(4.0).unwrap();
        assert_eq!(d.fixed_points().unwrap(), vec![BoundaryPoint::Real(0.0), BoundaryPoint::Infinity]);
        let g = MoebiusIsometry::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let fp = g.fixed_points().unwrap();
        let s5 = 5f64.sqrt();
        assert!(fp[0].approx_eq(&BoundaryPoint::Real((1.0 - s5) / 2.0), 1e-12));
        assert!(fp[1].approx_eq(&BoundaryPoint::Real((1.0 + s5) / 2.0), 1e-12));
        for z in &fp {
            assert!(g.apply_boundary(z).approx_eq(z, 1e-10));
        }
        assert!(MoebiusIsometry::IDENTITY.fixed_points().is_err());
        assert!(MoebiusIsometry::new(0.0, -1.0, 1.0, 0.0).unwrap().fixed_points().is_err());
        // parabolic with a finite fixed point
        let q = t.conjugate_by(&MoebiusIsometry::sending_to_infinity(BoundaryPoint::Real(2.0)).inverse());
        let fq = q.fixed_points().unwrap();
        assert_eq!(fq.len(), 1);
        assert!(fq[0].approx_eq(&BoundaryPoint::Real(2.0), 1e-10));
    }

    #[test]
    fn busemann_examples() {
        let inf = BoundaryPoint::Infinity;
        assert_eq!(busemann(inf, &UhpPoint::I, &UhpPoint::I), 0.0);
        assert_abs_diff_eq!(busemann(inf, &UhpPoint::I, &pt(0.0, 2.0)), -(2f64.ln()), epsilon = 1e-15);
        assert_abs_diff_eq!(busemann(inf, &UhpPoint::I, &pt(7.5, 1.0)), 0.0);
        // limit oracle: d(p, c(t)) - t at t = 30
        let ray = GeodesicRay::new(UhpPoint::I, inf);
        for p in [pt(0.0, 2.0), pt(3.0, 1.0), pt(-1.0, 0.3)] {
            let t = 30.0;
            let lim = p.distance(&ray.point_at(t)) - t;
            assert_abs_diff_eq!(lim, busemann(inf, &UhpPoint::I, &p), epsilon = 1e-9);
        }
    }

    #[test]
    fn busemann_finite_center_matches_limit() {
        let xi = BoundaryPoint::Real(1.5);
        let base = pt(0.0, 2.0);
        let ray = GeodesicRay::new(base, xi);
        for p in [pt(1.0, 0.5), pt(-2.0, 3.0), base] {
            let t = 25.0;
            let lim = p.distance(&ray.point_at(t)) - t;
            assert_abs_diff_eq!(lim, busemann(xi, &base, &p), epsilon = 1e-8);
        }
    }

    #[test]
    fn horoball_examples() {
        let hb = Horoball { center: BoundaryPoint::Infinity, level: -(2f64.ln()) };
        assert!(hb.contains(&pt(0.0, 3.0)));
        assert!(!hb.contains(&pt(0.0, 2.0)));
        let hb0 = Horoball { center: BoundaryPoint::Infinity, level: 0.0 };
        assert!(!hb0.contains(&pt(0.0, 0.5)));
    }

    #[test]
    fn ray_is_unit_speed() {
        for end in [BoundaryPoint::Infinity, BoundaryPoint::Real(-0.7), BoundaryPoint::Real(4.0)] {
            let ray = GeodesicRay::new(pt(0.3, 1.2), end);
            assert_abs_diff_eq!(ray.point_at(0.0).distance(&ray.base()), 0.0, epsilon = 1e-12);
            for &(s, t) in &[(0.0, 1.0), (0.5, 3.0), (2.0, 7.5), (-1.0, 1.0)] {
                let d = ray.point_at(s).distance(&ray.point_at(t));
                assert_abs_diff_eq!(d, (s - t).abs(), epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn parabolic_displacement_decreases_along_vertical_ray() {
        let g = MoebiusIsometry::translation(0.7);
        let ts: Vec<f64> = (0..100).map(|k| -5.0 + 15.0 * k as f64 / 99.0).collect();
        let ds: Vec<f64> = ts.iter().map(|t| g.displacement(&pt(0.0, t.exp()))).collect();
        assert!(ds.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn hyperbolic_displacement_increases_off_axis() {
        // axis is the imaginary axis; the geodesic through i orthogonal to it is the unit circle
        let g = MoebiusIsometry::dilation(3.0).unwrap();
        let ray = GeodesicRay::new(UhpPoint::I, BoundaryPoint::Real(1.0));
        let ds: Vec<f64> = (0..100).map(|k| g.displacement(&ray.point_at(0.08 * k as f64))).collect();
        assert!(ds.windows(2).all(|w| w[1] > w[0]));
        assert!(*ds.last().unwrap() > 5.0);
    }

    #[test]
    fn serde_shapes() {
        let g: MoebiusIsometry = serde_json::from_str("[2.0, 1.0, 1.0, 1.0]").unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), "[2.0,1.0,1.0,1.0]");
        let p: UhpPoint = serde_json::from_str("[0.5, 2.0]").unwrap();
        assert_eq!(p, pt(0.5, 2.0));
        assert!(serde_json::from_str::<UhpPoint>("[0.5, -2.0]").is_err());
        assert!(serde_json::from_str::<MoebiusIsometry>("[1.0, 1.0, 1.0, 1.0]").is_err());
    }
}
