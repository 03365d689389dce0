//! Ball volumes and the volume-comparison packing bound `N(n, a, b)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::adaptive_simpson;

/// Volume of a Euclidean `n`-ball of radius `r`.
pub fn euclidean_ball_volume(r: f64, n: usize) -> f64 {
    unit_ball_volume(n) * r.powi(n as i32)
}

/// `π^{n/2} / Γ(n/2 + 1)` by the two-step recurrence `V_n = 2π/n · V_{n-2}`.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / n as f64 * unit_ball_volume(n - 2),
    }
}

/// `∫₀^ρ sinh^m(s) ds`, computed as `ρ^{m+1} ∫₀¹ (sinh(ρu)/ρ)^m du` so the
/// relative accuracy survives tiny radii.
pub fn sinh_power_integral(m: usize, rho: f64) -> f64 {
    if rho <= 0.0 {
        return 0.0;
    }
    let scaled = |u: f64| {
        let x = rho * u;
        let r = if x == 0.0 { 1.0 } else { x.sinh() / x };
        (r * u).powi(m as i32)
    };
    let top = (rho.sinh() / rho).powi(m as i32).max(1.0);
    rho.powi(m as i32 + 1) * adaptive_simpson(scaled, 0.0, 1.0, 1e-15 * top)
}

/// Volume of a radius-`rho` ball in hyperbolic `n`-space of curvature -1.
pub fn hyperbolic_ball_volume(rho: f64, n: usize) -> f64 {
    // surface area of the unit (n-1)-sphere is n · V_n(1)
    n as f64 * unit_ball_volume(n) * sinh_power_integral(n - 1, rho)
}

/// Upper bound on the size of an `a`-discrete subset of a `b`-ball in
/// hyperbolic `n`-space: `⌈V(b + a/2) / V(a/2)⌉`.
///
/// Disjoint `a/2`-balls around the points all sit inside the `(b + a/2)`-ball;
/// the bound also holds for curvature in `[-1, 0]` by volume comparison.
pub fn n_packing(n: usize, a: f64, b: f64) -> Result<u64> {
    if n < 1 {
        return Err(Error::InvalidParameter { name: "n", reason: "dimension must be positive".into() });
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidParameter { name: "a", reason: format!("{a} is not positive") });
    }
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::InvalidParameter { name: "b", reason: format!("{b} is not positive") });
    }
    if a > 2.0 * b {
        return Err(Error::InvalidParameter { name: "a", reason: format!("separation {a} exceeds 2b = {}", 2.0 * b) });
    }
    let ratio = sinh_power_integral(n - 1, b + 0.5 * a) / sinh_power_integral(n - 1, 0.5 * a);
    if !ratio.is_finite() || ratio >= u64::MAX as f64 {
        return Err(Error::InvalidParameter { name: "b", reason: format!("packing ratio {ratio} overflows") });
    }
    Ok(ratio.ceil() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn euclidean_volumes() {
        assert_relative_eq!(euclidean_ball_volume(1.0, 2), PI, max_relative = 1e-15);
        assert_relative_eq!(euclidean_ball_volume(1.0, 3), 4.0 * PI / 3.0, max_relative = 1e-15);
        assert_relative_eq!(euclidean_ball_volume(2.0, 4), PI * PI / 2.0 * 16.0, max_relative = 1e-15);
    }

    #[test]
    fn hyperbolic_area_closed_form() {
        for rho in [1e-4, 0.0025, 0.3, 1.0, 4.0] {
            // 2π(cosh ρ - 1) = 4π sinh²(ρ/2)
            let exact = 4.0 * PI * (rho / 2.0f64).sinh().powi(2);
            assert_relative_eq!(hyperbolic_ball_volume(rho, 2), exact, max_relative = 1e-12);
        }
        // n = 3: π(sinh 2ρ - 2ρ)
        let rho: f64 = 0.7;
        assert_relative_eq!(
            hyperbolic_ball_volume(rho, 3),
            PI * ((2.0 * rho).sinh() - 2.0 * rho),
            max_relative = 1e-12
        );
    }

    #[test]
    fn packing_examples() {
        // ⌈(cosh 1.5 - 1)/(cosh 0.5 - 1)⌉ = ⌈10.597⌉
        let ratio = (1.5f64.cosh() - 1.0) / (0.5f64.cosh() - 1.0);
        assert_eq!(ratio.ceil() as u64, 11);
        assert_eq!(n_packing(2, 1.0, 1.0).unwrap(), 11);
        assert!(n_packing(2, 2.0, 1.0).unwrap() >= 1);
        assert!(n_packing(2, 0.0, 1.0).is_err());
        assert!(n_packing(2, 1.0, -1.0).is_err());
        assert!(n_packing(2, 3.0, 1.0).is_err());
    }

    #[test]
    fn packing_monotone() {
        for n in [2, 3, 4] {
            let bs = [0.1, 0.3, 0.7, 1.2, 2.0];
            let as_ = [0.05, 0.1, 0.15, 0.2];
            for &a in &as_ {
                let v: Vec<u64> = bs.iter().map(|&b| n_packing(n, a, b).unwrap()).collect();
                assert!(v.windows(2).all(|w| w[0] <= w[1]));
            }
            for &b in &bs {
                let v: Vec<u64> = as_.iter().map(|&a| n_packing(n, a, b).unwrap()).collect();
                assert!(v.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }
}
