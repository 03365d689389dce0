//! Thick-thin decomposition for discrete groups acting on the upper half-plane.
//!
//! `d_Γ(p)` is the minimal displacement over the nontrivial elements of a
//! word-length ball; the thin part is where some element `γ` moves `p` less
//! than its level `ε_γ`. Cusps and tubes are handled in normal form (cusp at
//! `∞`, axis on the imaginary axis), where thin boundaries and the retraction
//! flow have closed forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{BoundaryPoint, Classification, MoebiusIsometry, UhpPoint};

const DEDUP_TOL: f64 = 1e-9;

/// Generators plus the cached ball of reduced words of length `<= word_cap`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupPresentation {
    generators: Vec<MoebiusIsometry>,
    word_cap: usize,
    ball: Vec<MoebiusIsometry>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<MoebiusIsometry>, word_cap: usize) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        if word_cap == 0 {
            return Err(Error::InvalidParameter { name: "word_cap", reason: "must be at least 1".into() });
        }
        for (i, g) in generators.iter().enumerate() {
            if matches!(g.classify(), Classification::Identity | Classification::Elliptic) {
                return Err(Error::BadGenerator(i));
            }
        }
        let ball = enumerate_ball(&generators, word_cap);
        Ok(Self { generators, word_cap, ball })
    }

    pub fn generators(&self) -> &[MoebiusIsometry] {
        &self.generators
    }

    pub fn word_cap(&self) -> usize {
        self.word_cap
    }

    /// Nontrivial elements of word length `<= word_cap`, deduplicated.
    pub fn ball(&self) -> &[MoebiusIsometry] {
        &self.ball
    }

    pub fn with_word_cap(&self, word_cap: usize) -> Result<Self> {
        Self::new(self.generators.clone(), word_cap)
    }

    /// `d_Γ(p) = min_γ d(p, γp)` over the enumerated ball.
    pub fn d_gamma(&self, p: &UhpPoint) -> f64 {
        self.ball.iter().map(|g| g.displacement(p)).fold(f64::INFINITY, f64::min)
    }

    /// Element of the ball realizing `d_Γ(p)`.
    pub fn shortest_element(&self, p: &UhpPoint) -> &MoebiusIsometry {
        self.ball
            .iter()
            .min_by(|a, b| a.displacement(p).total_cmp(&b.displacement(p)))
            .expect("ball is nonempty")
    }

    pub fn is_thin(&self, levels: &EpsAssignment, p: &UhpPoint) -> bool {
        self.ball.iter().any(|g| g.displacement(p) < levels.level(g))
    }

    /// Kind of the thin region containing `p`, if `p` is thin.
    pub fn thin_kind(&self, levels: &EpsAssignment, p: &UhpPoint) -> Option<ThinKind> {
        self.ball
            .iter()
            .filter(|g| g.displacement(p) < levels.level(g))
            .min_by(|a, b| a.displacement(p).total_cmp(&b.displacement(p)))
            .map(|g| match g.classify() {
                Classification::Parabolic => ThinKind::Cusp,
                _ => ThinKind::Tube,
            })
    }

    /// Distance between the orbits of `p` and `q` (distance in the quotient).
    pub fn quotient_distance(&self, p: &UhpPoint, q: &UhpPoint) -> f64 {
        self.ball.iter().map(|g| p.distance(&g.apply(q))).fold(p.distance(q), f64::min)
    }
}

fn enumerate_ball(generators: &[MoebiusIsometry], word_cap: usize) -> Vec<MoebiusIsometry> {
    // letter 2i is generator i, letter 2i+1 its inverse
    let letters: Vec<MoebiusIsometry> = generators.iter().flat_map(|g| [*g, g.inverse()]).collect();
    let mut ball: Vec<MoebiusIsometry> = Vec::new();
    let mut frontier: Vec<(MoebiusIsometry, usize)> = vec![(MoebiusIsometry::IDENTITY, usize::MAX)];
    for _ in 0..word_cap {
        let mut next = Vec::new();
        for (word, last) in &frontier {
            for (l, letter) in letters.iter().enumerate() {
                if *last != usize::MAX && l == (*last ^ 1) {
                    continue;
                }
                let w = word.compose(letter);
                next.push((w, l));
                if w.is_identity(DEDUP_TOL) || ball.iter().any(|b| b.approx_eq(&w, DEDUP_TOL)) {
                    continue;
                }
                ball.push(w);
            }
        }
        frontier = next;
    }
    ball
}

pub fn group_ball(g: &GroupPresentation) -> &[MoebiusIsometry] {
    g.ball()
}

pub fn d_gamma(g: &GroupPresentation, p: &UhpPoint) -> f64 {
    g.d_gamma(p)
}

pub fn is_thin(g: &GroupPresentation, levels: &EpsAssignment, p: &UhpPoint) -> bool {
    g.is_thin(levels, p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThinKind {
    Tube,
    Cusp,
}

/// Rule assigning each element its level `ε_γ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "rule")]
pub enum EpsRule {
    /// `ε_γ = ε` for every element.
    Constant,
    /// `ε_γ = ε + (ε(n)/2 - ε) · exp(-(|tr γ| - 2)/width)`; depends on `γ`
    /// through its trace only, hence constant on conjugacy classes.
    TraceRamp { width: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsAssignment {
    epsilon: f64,
    margulis_eps: f64,
    rule: EpsRule,
}

impl EpsAssignment {
    pub fn new(epsilon: f64, margulis_eps: f64, rule: EpsRule) -> Result<Self> {
        if !(epsilon > 0.0) || !(epsilon <= margulis_eps / 2.0) {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                reason: format!("{epsilon} must lie in (0, {}]", margulis_eps / 2.0),
            });
        }
        if let EpsRule::TraceRamp { width } = rule {
            if !(width > 0.0) {
                return Err(Error::InvalidParameter { name: "width", reason: format!("{width} is not positive") });
            }
        }
        Ok(Self { epsilon, margulis_eps, rule })
    }

    /// Constant level `ε` with `ε(n) = 2ε`, the loosest consistent choice.
    pub fn constant(epsilon: f64) -> Result<Self> {
        Self::new(epsilon, 2.0 * epsilon, EpsRule::Constant)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn margulis_eps(&self) -> f64 {
        self.margulis_eps
    }

    pub fn level(&self, g: &MoebiusIsometry) -> f64 {
        match self.rule {
            EpsRule::Constant => self.epsilon,
            EpsRule::TraceRamp { width } => {
                let excess = (g.trace().abs() - 2.0).max(0.0);
                self.epsilon + (self.margulis_eps / 2.0 - self.epsilon) * (-excess / width).exp()
            }
        }
    }
}

/// Height `y₀` above which `⟨z ↦ z + 1⟩` displaces by less than `eps`.
pub fn thin_boundary_height(eps: f64) -> Result<f64> {
    thin_boundary_height_for(eps, 1.0)
}

/// Same for `⟨z ↦ z + τ⟩`: `cosh ε = 1 + τ²/(2y²)` gives `y₀ = τ / (2 sinh(ε/2))`.
pub fn thin_boundary_height_for(eps: f64, tau: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::Domain { what: "thin level", value: eps });
    }
    Ok(tau.abs() / (2.0 * (eps / 2.0).sinh()))
}

/// Radius of the tube `{d_γ < ε}` around the axis of a hyperbolic element
/// with translation length `ell`, or `None` when `ell >= eps`.
///
/// On the tube boundary `sinh(ε/2) = cosh(w) sinh(ℓ/2)`.
pub fn tube_radius(eps: f64, ell: f64) -> Option<f64> {
    let ratio = (eps / 2.0).sinh() / (ell / 2.0).sinh();
    (ratio > 1.0).then(|| ratio.acosh())
}

/// Length of the vertical segment from height `y_start` down to `y_thick`.
pub fn entry_time(y_start: f64, y_thick: f64) -> Result<f64> {
    if !(y_thick > 0.0) || !(y_start > y_thick) {
        return Err(Error::AlreadyThick { y_start, y_thick });
    }
    Ok((y_start / y_thick).ln())
}

/// Collar `{y_thick < y <= y_top}` below a cusp at `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CuspCollar {
    y_thick: f64,
    y_top: f64,
}

impl CuspCollar {
    pub fn new(y_thick: f64, y_top: f64) -> Result<Self> {
        if !(y_thick > 0.0) || !(y_top > y_thick) {
            return Err(Error::InvalidParameter {
                name: "collar",
                reason: format!("need 0 < y_thick ({y_thick}) < y_top ({y_top})"),
            });
        }
        Ok(Self { y_thick, y_top })
    }

    /// Collar of width `width` under the thin horoball of level `eps` for `z ↦ z + τ`.
    pub fn below_thin_part(eps: f64, tau: f64, width: f64) -> Result<Self> {
        let y_top = thin_boundary_height_for(eps, tau)?;
        Self::new(y_top * (-width).exp(), y_top)
    }

    pub fn y_thick(&self) -> f64 {
        self.y_thick
    }

    pub fn y_top(&self) -> f64 {
        self.y_top
    }

    pub fn contains(&self, p: &UhpPoint) -> bool {
        p.y() > self.y_thick && p.y() <= self.y_top
    }

    /// Moves a collar point a fraction `s` of the way down its vertical
    /// geodesic to `{y = y_thick}`; other points are left fixed.
    pub fn flow(&self, p: &UhpPoint, s: f64) -> Result<UhpPoint> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Domain { what: "flow time in [0, 1]", value: s });
        }
        if !self.contains(p) {
            return Ok(*p);
        }
        if s == 1.0 {
            return UhpPoint::new(p.x(), self.y_thick);
        }
        let ln_y = (1.0 - s) * p.y().ln() + s * self.y_thick.ln();
        UhpPoint::new(p.x(), ln_y.exp())
    }
}

/// Flow toward `{y = y_thick}` with an unbounded collar above it.
pub fn flow(p: &UhpPoint, s: f64, y_thick: f64) -> Result<UhpPoint> {
    CuspCollar::new(y_thick, f64::INFINITY)?.flow(p, s)
}

/// A parabolic element conjugated to `z ↦ z + τ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspNormalForm {
    to_normal: MoebiusIsometry,
    tau: f64,
}

impl CuspNormalForm {
    pub fn new(g: &MoebiusIsometry) -> Result<Self> {
        if g.classify() != Classification::Parabolic {
            return Err(Error::InvalidParameter { name: "g", reason: format!("{} is not parabolic", g.classify().name()) });
        }
        let fixed = g.fixed_points()?[0];
        let to_normal = MoebiusIsometry::sending_to_infinity(fixed);
        let t = g.conjugate_by(&to_normal);
        let [a, b, _, _] = t.entries();
        // ±[[1, τ], [0, 1]]
        Ok(Self { to_normal, tau: b / a })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn to_normal(&self) -> &MoebiusIsometry {
        &self.to_normal
    }

    /// Flow in original coordinates through the normal-form collar.
    pub fn flow(&self, collar: &CuspCollar, p: &UhpPoint, s: f64) -> Result<UhpPoint> {
        let q = collar.flow(&self.to_normal.apply(p), s)?;
        Ok(self.to_normal.inverse().apply(&q))
    }
}

/// A hyperbolic element conjugated to a dilation with axis the imaginary axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TubeNormalForm {
    to_normal: MoebiusIsometry,
    translation_length: f64,
}

impl TubeNormalForm {
    pub fn new(g: &MoebiusIsometry) -> Result<Self> {
        let translation_length = g.translation_length()?;
        let fp = g.fixed_points()?;
        let to_normal = match (fp[0], fp[1]) {
            (BoundaryPoint::Real(a), BoundaryPoint::Real(b)) => {
                // z ↦ (z - b)/(z - a) sends b to 0 and a to ∞; det = b - a > 0
                MoebiusIsometry::from_unnormalized(1.0, -b, 1.0, -a)?
            }
            (BoundaryPoint::Real(a), BoundaryPoint::Infinity) => MoebiusIsometry::translation(-a),
            _ => unreachable!("finite fixed points are listed first"),
        };
        Ok(Self { to_normal, translation_length })
    }

    pub fn translation_length(&self) -> f64 {
        self.translation_length
    }

    pub fn to_normal(&self) -> &MoebiusIsometry {
        &self.to_normal
    }

    /// Distance from `p` to the axis: `sinh w = |x|/y` in normal form.
    pub fn distance_to_axis(&self, p: &UhpPoint) -> f64 {
        let q = self.to_normal.apply(p);
        (q.x().abs() / q.y()).asinh()
    }

    /// Pushes points with axis distance in `[w_thin, w_thick)` outward along
    /// the geodesic orthogonal to the axis, reaching `w_thick` at `s = 1`.
    pub fn flow(&self, p: &UhpPoint, s: f64, w_thin: f64, w_thick: f64) -> Result<UhpPoint> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Domain { what: "flow time in [0, 1]", value: s });
        }
        let w = self.distance_to_axis(p);
        if !(w >= w_thin && w < w_thick) {
            return Ok(*p);
        }
        let q = self.to_normal.apply(p);
        let radius = q.x().hypot(q.y());
        let target = (1.0 - s) * w + s * w_thick;
        // on the circle |z| = radius, the point at axis distance w has x/y = sinh w
        let angle = target.sinh().atan();
        let sign = if q.x() < 0.0 { -1.0 } else { 1.0 };
        let moved = UhpPoint::new(sign * radius * angle.sin(), radius * angle.cos())?;
        Ok(self.to_normal.inverse().apply(&moved))
    }
}

/// Connected components of a row-structured point sample.
///
/// Points are linked when within `link` of each other; rows must be given in
/// order of increasing height with each row sorted by `x`.
pub fn label_components(rows: &[Vec<UhpPoint>], link: f64) -> Vec<Vec<UhpPoint>> {
    let mut offsets = Vec::with_capacity(rows.len() + 1);
    let mut total = 0;
    for r in rows {
        offsets.push(total);
        total += r.len();
    }
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let ln_link_limit = link;
    for (j, row) in rows.iter().enumerate() {
        for (i, p) in row.iter().enumerate() {
            let me = offsets[j] + i;
            for (jj, other) in rows.iter().enumerate().skip(j) {
                if let Some(first) = other.first() {
                    if (first.y().ln() - p.y().ln()).abs() > ln_link_limit {
                        break;
                    }
                }
                // |Δx| <= 2 sqrt(y y') sinh(link/2) is necessary for d <= link
                let lo = p.x() - 2.0 * (p.y() * other.first().map_or(p.y(), UhpPoint::y)).sqrt() * (link / 2.0).sinh() - 1e-12;
                let start = other.partition_point(|q| q.x() < lo);
                for (ii, q) in other.iter().enumerate().skip(start) {
                    let bound = 2.0 * (p.y() * q.y()).sqrt() * (link / 2.0).sinh();
                    if q.x() > p.x() + bound + 1e-12 {
                        break;
                    }
                    let you = offsets[jj] + ii;
                    if you != me && p.distance(q) <= link {
                        let a = find(&mut parent, me);
                        let b = find(&mut parent, you);
                        if a != b {
                            parent[a] = b;
                        }
                    }
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<UhpPoint>> = std::collections::BTreeMap::new();
    for (j, row) in rows.iter().enumerate() {
        for (i, p) in row.iter().enumerate() {
            let root = find(&mut parent, offsets[j] + i);
            groups.entry(root).or_default().push(*p);
        }
    }
    groups.into_values().collect()
}

/// Rows of points spaced `pitch` apart in hyperbolic length over a rectangle.
pub fn hyperbolic_grid(x_range: (f64, f64), y_range: (f64, f64), pitch: f64) -> Result<Vec<Vec<UhpPoint>>> {
    if !(pitch > 0.0) || !(y_range.0 > 0.0) || !(y_range.1 >= y_range.0) || !(x_range.1 >= x_range.0) {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: format!("x {x_range:?}, y {y_range:?}, pitch {pitch}"),
        });
    }
    let n_rows = ((y_range.1 / y_range.0).ln() / pitch).floor() as usize + 1;
    let mut rows = Vec::with_capacity(n_rows);
    for j in 0..n_rows {
        let y = y_range.0 * (pitch * j as f64).exp();
        let dx = pitch * y;
        let n_cols = ((x_range.1 - x_range.0) / dx).floor() as usize + 1;
        rows.push((0..n_cols).map(|i| UhpPoint::new(x_range.0 + dx * i as f64, y)).collect::<Result<Vec<_>>>()?);
    }
    Ok(rows)
}
