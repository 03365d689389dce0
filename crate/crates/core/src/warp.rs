//! Warped-product cusp metrics `h(t)² ds² + dt²` on `T^{n-1} × [0, ∞)`.
//!
//! The warp function is `exp(-t)` on `[0, 1]`, `1/t²` on `[3, ∞)`, and a
//! polynomial bridge in between. The bridge is parametrised through the log
//! slope `u = h'/h`, a degree-8 polynomial in `s = (t - 1)/2`; integrating it
//! gives `ln h`, so `h`, `h'` and `h'' = (u' + u²) h` are all closed form.
//!
//! The four low coefficients of `u` are pinned by the matching conditions
//! `u(1) = -1`, `u'(1) = 0`, `u(3) = -2/3`, `u'(3) = 2/9` and
//! `∫₁³ u = 1 - 2 ln 3`; the five free ones shape the bridge.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{adaptive_simpson, adaptive_simpson_split, integrate_to_infinity};

const BRIDGE_DEGREE: usize = 8;
const PINNED: usize = 5;

/// Free coefficients `c5..c8` of the default bridge.
pub const DEFAULT_BRIDGE_SHAPE: [f64; BRIDGE_DEGREE + 1 - PINNED] = [-2422.0, 2503.0, -1379.0, 315.0];

pub const DEFAULT_GRID: usize = 10_000;
/// Upper end of the sampling window used to validate a warp function.
pub const VALIDATION_T_MAX: f64 = 100.0;

/// Curvature band the bridge must respect on `(1, 3)`.
pub const MIDDLE_K_MIN: f64 = -11.0;
pub const MIDDLE_K_MAX: f64 = -0.04;

const QUAD_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WarpValues {
    pub h: f64,
    pub dh: f64,
    pub d2h: f64,
}

/// Sampled checks of the warp-function properties.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WarpDiagnostics {
    pub positive: bool,
    pub decreasing: bool,
    pub ratio_positive: bool,
    /// `h''/h` nonincreasing on the grid. With these end pieces no C² warp can
    /// satisfy this on `(1, 3)`: `h''/h >= 2/3` forces `h'/h <= -2/3` there,
    /// which overshoots `ln h(3) = -2 ln 3`.
    pub ratio_nonincreasing: bool,
    pub continuity_gap: f64,
    pub middle_k_min: f64,
    pub middle_k_max: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WarpFunction {
    /// Coefficients of `u(s)`, lowest degree first.
    slope: [f64; BRIDGE_DEGREE + 1],
    grid: usize,
}

impl Default for WarpFunction {
    fn default() -> Self {
        Self::with_shape(DEFAULT_BRIDGE_SHAPE, DEFAULT_GRID).expect("default bridge is valid")
    }
}

impl WarpFunction {
    /// Builds the bridge from its free coefficients and validates it on a grid
    /// of `grid` points over `[0, 100]`.
    pub fn with_shape(free: [f64; BRIDGE_DEGREE + 1 - PINNED], grid: usize) -> Result<Self> {
        if grid < 10 {
            return Err(Error::InvalidParameter { name: "grid", reason: format!("{grid} < 10") });
        }
        let slope = solve_pinned(free);
        let w = Self { slope, grid };
        let diag = w.diagnostics();
        if !(diag.positive && diag.decreasing && diag.ratio_positive) {
            return Err(Error::BridgeRejected(format!("sign conditions fail: {diag:?}")));
        }
        if diag.continuity_gap > 1e-8 {
            return Err(Error::BridgeRejected(format!("discontinuous by {}", diag.continuity_gap)));
        }
        if diag.middle_k_min < MIDDLE_K_MIN || diag.middle_k_max > MIDDLE_K_MAX {
            return Err(Error::BridgeRejected(format!(
                "curvature on (1,3) spans [{}, {}]",
                diag.middle_k_min, diag.middle_k_max
            )));
        }
        Ok(w)
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn slope_coefficients(&self) -> &[f64] {
        &self.slope
    }

    /// `(h'/h, h''/h)` at `t >= 0`.
    pub fn log_derivatives(&self, t: f64) -> Result<(f64, f64)> {
        if !(t >= 0.0) {
            return Err(Error::Domain { what: "warp function", value: t });
        }
        Ok(self.log_derivatives_unchecked(t))
    }

    fn log_derivatives_unchecked(&self, t: f64) -> (f64, f64) {
        if t <= 1.0 {
            (-1.0, 1.0)
        } else if t >= 3.0 {
            (-2.0 / t, 6.0 / (t * t))
        } else {
            let s = 0.5 * (t - 1.0);
            let (u, du_ds) = poly_with_derivative(&self.slope, s);
            (u, 0.5 * du_ds + u * u)
        }
    }

    #[cfg(test)]
    fn log_h(&self, t: f64) -> f64 {
        if t <= 1.0 {
            -t
        } else if t >= 3.0 {
            -2.0 * t.ln()
        } else {
            self.bridge_log_h(t)
        }
    }

    fn bridge_log_h(&self, t: f64) -> f64 {
        let s = 0.5 * (t - 1.0);
        let integral = self
            .slope
            .iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (k, c)| acc * s + c / (k as f64 + 1.0))
            * s;
        -1.0 + 2.0 * integral
    }

    /// Bridge formula evaluated at any `t`, including the junctions.
    fn bridge(&self, t: f64) -> WarpValues {
        let h = self.bridge_log_h(t).exp();
        let (u, du_ds) = poly_with_derivative(&self.slope, 0.5 * (t - 1.0));
        WarpValues { h, dh: u * h, d2h: (0.5 * du_ds + u * u) * h }
    }

    pub fn eval(&self, t: f64) -> Result<WarpValues> {
        if !(t >= 0.0) {
            return Err(Error::Domain { what: "warp function", value: t });
        }
        Ok(self.eval_unchecked(t))
    }

    fn eval_unchecked(&self, t: f64) -> WarpValues {
        if t <= 1.0 {
            let e = (-t).exp();
            return WarpValues { h: e, dh: -e, d2h: e };
        }
        if t >= 3.0 {
            let t2 = t * t;
            return WarpValues { h: 1.0 / t2, dh: -2.0 / (t2 * t), d2h: 6.0 / (t2 * t2) };
        }
        self.bridge(t)
    }

    pub fn diagnostics(&self) -> WarpDiagnostics {
        let mut positive = true;
        let mut decreasing = true;
        let mut ratio_positive = true;
        let mut ratio_nonincreasing = true;
        let mut middle_k_min = f64::INFINITY;
        let mut middle_k_max = f64::NEG_INFINITY;
        let mut prev_ratio = f64::INFINITY;
        for i in 0..=self.grid {
            let t = VALIDATION_T_MAX * i as f64 / self.grid as f64;
            let v = self.eval_unchecked(t);
            let (u, q) = self.log_derivatives_unchecked(t);
            positive &= v.h > 0.0;
            decreasing &= v.dh < 0.0;
            ratio_positive &= q > 0.0;
            ratio_nonincreasing &= q <= prev_ratio + 1e-15;
            prev_ratio = q;
            if t > 1.0 && t < 3.0 {
                middle_k_min = middle_k_min.min(-q.max(u * u));
                middle_k_max = middle_k_max.max(-q.min(u * u));
            }
        }
        // dense pass over the bridge itself
        let dense = self.grid.max(2000);
        for i in 1..dense {
            let t = 1.0 + 2.0 * i as f64 / dense as f64;
            let v = self.eval_unchecked(t);
            let (u, q) = self.log_derivatives_unchecked(t);
            positive &= v.h > 0.0;
            decreasing &= v.dh < 0.0;
            ratio_positive &= q > 0.0;
            middle_k_min = middle_k_min.min(-q.max(u * u));
            middle_k_max = middle_k_max.max(-q.min(u * u));
        }
        let mut continuity_gap: f64 = 0.0;
        for t in [1.0, 3.0] {
            let outer = self.eval_unchecked(t);
            let inner = self.bridge(t);
            continuity_gap = continuity_gap
                .max((outer.h - inner.h).abs())
                .max((outer.dh - inner.dh).abs())
                .max((outer.d2h - inner.d2h).abs());
        }
        WarpDiagnostics {
            positive,
            decreasing,
            ratio_positive,
            ratio_nonincreasing,
            continuity_gap,
            middle_k_min,
            middle_k_max,
        }
    }
}

fn poly_with_derivative(c: &[f64], s: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &ck in c.iter().rev() {
        dp = dp * s + p;
        p = p * s + ck;
    }
    (p, dp)
}

/// Solves for the pinned coefficients `c0..c4` given `c5..c8`.
fn solve_pinned(free: [f64; BRIDGE_DEGREE + 1 - PINNED]) -> [f64; BRIDGE_DEGREE + 1] {
    let n = BRIDGE_DEGREE + 1;
    let target = 1.0 - 2.0 * 3f64.ln();
    // rows: u(0) = -1, u_s(0) = 0, u(1) = -2/3, u_s(1)/2 = 2/9, 2∫₀¹u ds = target
    let row = |r: usize, k: usize| -> f64 {
        match r {
            0 => f64::from(u8::from(k == 0)),
            1 => f64::from(u8::from(k == 1)),
            2 => 1.0,
            3 => k as f64 / 2.0,
            _ => 2.0 / (k as f64 + 1.0),
        }
    };
    let rhs = [-1.0, 0.0, -2.0 / 3.0, 2.0 / 9.0, target];
    let mut m = [[0.0f64; PINNED + 1]; PINNED];
    for (r, mr) in m.iter_mut().enumerate() {
        for (k, x) in mr.iter_mut().take(PINNED).enumerate() {
            *x = row(r, k);
        }
        let tail: f64 = (PINNED..n).map(|k| row(r, k) * free[k - PINNED]).sum();
        mr[PINNED] = rhs[r] - tail;
    }
    // Gaussian elimination with partial pivoting on the 5×5 system
    for col in 0..PINNED {
        let piv = (col..PINNED)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap_or(col);
        m.swap(col, piv);
        let pivot = m[col];
        for (r, mr) in m.iter_mut().enumerate() {
            if r != col {
                let f = mr[col] / pivot[col];
                for (x, p) in mr.iter_mut().zip(&pivot).skip(col) {
                    *x -= f * p;
                }
            }
        }
    }
    let mut out = [0.0; BRIDGE_DEGREE + 1];
    for k in 0..PINNED {
        out[k] = m[k][PINNED] / m[k][k];
    }
    out[PINNED..].copy_from_slice(&free);
    out
}

pub fn h_eval(w: &WarpFunction, t: f64) -> Result<WarpValues> {
    w.eval(t)
}

/// A tangent plane at height `t` spanned by the fiber direction and a unit
/// vector whose base component is `y`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangentPlaneSpec {
    t: f64,
    y: f64,
}

impl TangentPlaneSpec {
    pub fn new(t: f64, y: f64) -> Result<Self> {
        if !(t >= 0.0) {
            return Err(Error::Domain { what: "cusp coordinate", value: t });
        }
        if !(y.abs() <= 1.0) {
            return Err(Error::Domain { what: "plane component |Y| <= 1", value: y });
        }
        Ok(Self { t, y })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn y(&self) -> f64 {
        self.y
    }
}

/// Integrand used for the cusp volume.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VolumeIntegrand {
    /// `h^{n-1}`, the volume form of the warped product.
    #[default]
    WarpedProduct,
    /// `h` alone, whatever the dimension.
    Linear,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CuspModel {
    n: usize,
    torus_volume: f64,
    warp: WarpFunction,
    integrand: VolumeIntegrand,
}

impl CuspModel {
    pub fn new(n: usize, torus_volume: f64, warp: WarpFunction) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter { name: "n", reason: format!("dimension {n} < 2") });
        }
        if !(torus_volume > 0.0) || !torus_volume.is_finite() {
            return Err(Error::InvalidParameter {
                name: "torus_volume",
                reason: format!("{torus_volume} is not positive"),
            });
        }
        Ok(Self { n, torus_volume, warp, integrand: VolumeIntegrand::default() })
    }

    pub fn with_integrand(mut self, integrand: VolumeIntegrand) -> Self {
        self.integrand = integrand;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn torus_volume(&self) -> f64 {
        self.torus_volume
    }

    pub fn warp(&self) -> &WarpFunction {
        &self.warp
    }

    /// `K = -(h''/h) Y² - (h'/h)² (1 - Y²)`.
    pub fn sectional_curvature(&self, plane: &TangentPlaneSpec) -> f64 {
        let (u, q) = self.warp.log_derivatives_unchecked(plane.t);
        let y2 = plane.y * plane.y;
        -q * y2 - u * u * (1.0 - y2)
    }

    /// Extremes of the sectional curvature over all planes at height `t`.
    pub fn curvature_range(&self, t: f64) -> Result<(f64, f64)> {
        let (u, q) = self.warp.log_derivatives(t)?;
        let u2 = u * u;
        Ok((-q.max(u2), -q.min(u2)))
    }

    /// Minimal `|K|` over planes containing the radial direction.
    pub fn radial_min_curvature(&self, t: f64) -> Result<f64> {
        let (u, q) = self.warp.log_derivatives(t)?;
        Ok(q.min(u * u))
    }

    /// `∫₁^T k(t) t dt` by adaptive Simpson quadrature.
    pub fn visibility_integral(&self, upper: f64) -> Result<f64> {
        if !(upper >= 1.0) {
            return Err(Error::Domain { what: "visibility integral upper limit", value: upper });
        }
        let mut breaks = vec![1.0];
        let mut b = 3.0;
        while b < upper {
            breaks.push(b);
            b *= 10.0;
        }
        breaks.push(upper);
        let f = |t: f64| {
            let (u, q) = self.warp.log_derivatives_unchecked(t);
            q.min(u * u) * t
        };
        Ok(adaptive_simpson_split(f, &breaks, QUAD_TOL))
    }

    fn exponent(&self) -> i32 {
        match self.integrand {
            VolumeIntegrand::WarpedProduct => (self.n - 1) as i32,
            VolumeIntegrand::Linear => 1,
        }
    }

    /// Volume of `T^{n-1} × [t0, ∞)`: closed form past `t = 3`, quadrature below.
    pub fn cusp_volume(&self, t0: f64) -> Result<f64> {
        if !(t0 >= 0.0) {
            return Err(Error::Domain { what: "cusp volume lower limit", value: t0 });
        }
        let e = self.exponent();
        // ∫_a^∞ t^{-2e} dt = a^{1-2e} / (2e - 1)
        let tail = |a: f64| a.powi(1 - 2 * e) / f64::from(2 * e - 1);
        let fiber = if t0 >= 3.0 {
            tail(t0)
        } else {
            let head = adaptive_simpson(|t| self.warp.eval_unchecked(t).h.powi(e), t0, 3.0, QUAD_TOL * 1e-3);
            head + tail(3.0)
        };
        Ok(self.torus_volume * fiber)
    }

    /// Same volume, integrated numerically all the way to infinity.
    pub fn cusp_volume_quadrature(&self, t0: f64) -> Result<f64> {
        if !(t0 > 0.0) {
            return Err(Error::Domain { what: "cusp volume lower limit", value: t0 });
        }
        let e = self.exponent();
        let f = |t: f64| self.warp.eval_unchecked(t).h.powi(e);
        let fiber = if t0 >= 3.0 {
            integrate_to_infinity(f, t0, QUAD_TOL * 1e-3)
        } else {
            adaptive_simpson(f, t0, 3.0, QUAD_TOL * 1e-3) + integrate_to_infinity(f, 3.0, QUAD_TOL * 1e-3)
        };
        Ok(self.torus_volume * fiber)
    }
}

pub fn sectional_curvature(m: &CuspModel, p: &TangentPlaneSpec) -> f64 {
    m.sectional_curvature(p)
}

pub fn curvature_range(m: &CuspModel, t: f64) -> Result<(f64, f64)> {
    m.curvature_range(t)
}

pub fn visibility_integral(m: &CuspModel, upper: f64) -> Result<f64> {
    m.visibility_integral(upper)
}

pub fn cusp_volume(m: &CuspModel, t0: f64) -> Result<f64> {
    m.cusp_volume(t0)
}
