//! Adaptive Simpson quadrature.
//!
//! Every integrand in this crate is smooth on the interval handed to it, so the
//! classic Richardson-corrected recursive Simpson rule converges quickly.

const MAX_DEPTH: u32 = 48;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Returns 0 for an empty interval and negates for `b < a`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return 0.0;
    }
    if b < a {
        return -adaptive_simpson(f, b, a, tol);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Integrates over `[a, b]` after splitting at the given interior breakpoints.
///
/// The tolerance is shared evenly between the pieces.
pub fn adaptive_simpson_split<F>(f: F, breakpoints: &[f64], tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    if breakpoints.len() < 2 {
        return 0.0;
    }
    let pieces = (breakpoints.len() - 1) as f64;
    breakpoints
        .windows(2)
        .map(|w| adaptive_simpson(&f, w[0], w[1], tol / pieces))
        .sum()
}

/// Integrates `f` over `[a, ∞)` via the substitution `t = a / u`, `u ∈ (0, 1]`.
///
/// Requires `a > 0` and `f(t)·t²` bounded as `t → ∞`.
pub fn integrate_to_infinity<F>(f: F, a: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    debug_assert!(a > 0.0);
    let g = |u: f64| {
        if u <= 0.0 {
            // limit of f(a/u)·a/u² as u → 0 for integrands decaying like t^{-2} or faster
            let t = a / f64::MIN_POSITIVE.sqrt();
            return f(t) * t * t / a;
        }
        let t = a / u;
        f(t) * a / (u * u)
    };
    adaptive_simpson(g, 0.0, 1.0, tol)
}
