//! Points of the quadric `Q³`, the extended Ahern-Rudin map and its
//! degeneracy locus.
//!
//! All coordinates are the `w`-coordinates
//! `w₁ = z₁ + iz₂, w₂ = z₁ − iz₂, w₃ = z₃ + iz₄, w₄ = z₃ − iz₄`, in which the
//! quadric reads `w₁w₂ + w₃w₄ = 1` and the map is
//! `F̃(w) = (w₁, w₃, w₂w₃w₄² + iw₁w₂²w₄)`.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{c, Complex64, I};

/// Default tolerance on `|w₁w₂ + w₃w₄ − 1|`.
pub const QUADRIC_TOL: f64 = 1e-9;

/// Below this modulus a chart coordinate is treated as zero.
pub const CHART_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadricError {
    #[error("non-finite coordinate w{index}")]
    NonFinite { index: usize },
    #[error("point is off the quadric: |w1*w2 + w3*w4 - 1| = {residual:e} exceeds {tol:e}")]
    OffQuadric { residual: f64, tol: f64 },
    #[error("both w1 and w3 vanish; no point of Q^3 has this form")]
    BothChartsDegenerate,
    #[error("min_g requires p > 0 and q > 0, got p = {p}, q = {q}")]
    NonPositiveWeights { p: f64, q: f64 },
    #[error(
        "no degeneracy below threshold: F~ is nondegenerate on M_t^3 for t < tau = sqrt((2+sqrt(2))/3) = {tau:.15}, got t = {t}"
    )]
    BelowDegeneracyThreshold { t: f64, tau: f64 },
    #[error("infeasible level: |1-a| + |a| = {lower} exceeds t = {t}")]
    InfeasibleLevel { t: f64, lower: f64 },
    #[error("level t = {t} must exceed 1")]
    LevelTooLow { t: f64 },
    #[error("split must lie in [0, 1], got {split}")]
    BadSplit { split: f64 },
    #[error("degenerate sample: the {which} coordinate pair received no budget (a = {a})")]
    DegenerateSample { which: &'static str, a: Complex64 },
}

/// Thresholds that recur throughout: `τ = √((2+√2)/3)`, `τ²`, `2/√3`, `√2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainConstants {
    pub tau: f64,
    pub tau_sq: f64,
    pub two_over_sqrt3: f64,
    pub sqrt2: f64,
}

impl DomainConstants {
    pub fn get() -> Self {
        let sqrt2 = std::f64::consts::SQRT_2;
        let tau_sq = (2.0 + sqrt2) / 3.0;
        DomainConstants {
            tau: tau_sq.sqrt(),
            tau_sq,
            two_over_sqrt3: 2.0 / 3f64.sqrt(),
            sqrt2,
        }
    }
}

/// `τ = √((2+√2)/3)`, the embeddability threshold.
pub fn tau() -> f64 {
    DomainConstants::get().tau
}

/// `τ² = (2+√2)/3`.
pub fn tau_sq() -> f64 {
    DomainConstants::get().tau_sq
}

/// The two values of `w₃w₄` at which the Jacobian of `F̃` vanishes:
/// `(3 + √2 − i)/6` and `(3 − √2 − i)/6`.
pub fn degeneracy_products() -> [Complex64; 2] {
    let s = std::f64::consts::SQRT_2;
    [c((3.0 + s) / 6.0, -1.0 / 6.0), c((3.0 - s) / 6.0, -1.0 / 6.0)]
}

/// A point `(w₁, w₂, w₃, w₄)` of `Q³`, checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "crate::pointio::PointJson", into = "crate::pointio::PointJson")]
pub struct QuadricPoint {
    w: [Complex64; 4],
}

impl QuadricPoint {
    pub fn new(w: [Complex64; 4]) -> Result<Self, QuadricError> {
        Self::with_tol(w, QUADRIC_TOL)
    }

    pub fn with_tol(w: [Complex64; 4], tol: f64) -> Result<Self, QuadricError> {
        for (i, wi) in w.iter().enumerate() {
            if !wi.re.is_finite() || !wi.im.is_finite() {
                return Err(QuadricError::NonFinite { index: i + 1 });
            }
        }
        let residual = quadric_residual(&w);
        if residual.is_nan() || residual > tol {
            return Err(QuadricError::OffQuadric { residual, tol });
        }
        if w[0].norm() + w[2].norm() == 0.0 {
            return Err(QuadricError::BothChartsDegenerate);
        }
        Ok(QuadricPoint { w })
    }

    /// Builds `(w₁, (1 − w₃w₄)/w₁, w₃, w₄)`, the parametrisation used for
    /// fibers. Requires `w₁ ≠ 0`.
    pub fn from_chart(w1: Complex64, w3: Complex64, w4: Complex64) -> Result<Self, QuadricError> {
        Self::new([w1, (Complex64::new(1.0, 0.0) - w3 * w4) / w1, w3, w4])
    }

    pub fn from_reals(v: [f64; 4]) -> Result<Self, QuadricError> {
        Self::new(v.map(|x| c(x, 0.0)))
    }

    #[inline]
    pub fn coords(&self) -> [Complex64; 4] {
        self.w
    }
    #[inline]
    pub fn w1(&self) -> Complex64 {
        self.w[0]
    }
    #[inline]
    pub fn w2(&self) -> Complex64 {
        self.w[1]
    }
    #[inline]
    pub fn w3(&self) -> Complex64 {
        self.w[2]
    }
    #[inline]
    pub fn w4(&self) -> Complex64 {
        self.w[3]
    }

    pub fn residual(&self) -> f64 {
        quadric_residual(&self.w)
    }

    /// Max coordinate-wise distance to another point.
    pub fn distance(&self, other: &QuadricPoint) -> f64 {
        self.w
            .iter()
            .zip(other.w.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest coordinate modulus.
    pub fn scale(&self) -> f64 {
        self.w.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// True if `w₂ = w̄₁` and `w₄ = w̄₃` within `tol`, i.e. the point lies on `S³`.
    pub fn is_on_sphere(&self, tol: f64) -> bool {
        (self.w[1] - self.w[0].conj()).norm() <= tol && (self.w[3] - self.w[2].conj()).norm() <= tol
    }
}

/// `|w₁w₂ + w₃w₄ − 1|`.
pub fn quadric_residual(w: &[Complex64; 4]) -> f64 {
    (w[0] * w[1] + w[2] * w[3] - 1.0).norm()
}

/// Image `F̃(W) = (c₁, c₂, c₃)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapImage {
    #[serde(with = "crate::pointio::complex_pair")]
    pub c1: Complex64,
    #[serde(with = "crate::pointio::complex_pair")]
    pub c2: Complex64,
    #[serde(with = "crate::pointio::complex_pair")]
    pub c3: Complex64,
}

impl MapImage {
    pub fn distance(&self, other: &MapImage) -> f64 {
        [(self.c1 - other.c1), (self.c2 - other.c2), (self.c3 - other.c3)]
            .iter()
            .map(|d| d.norm())
            .fold(0.0, f64::max)
    }
}

pub fn to_w_coords(z: [Complex64; 4]) -> [Complex64; 4] {
    [z[0] + I * z[1], z[0] - I * z[1], z[2] + I * z[3], z[2] - I * z[3]]
}

pub fn from_w_coords(w: [Complex64; 4]) -> [Complex64; 4] {
    let two_i = c(0.0, 2.0);
    [
        (w[0] + w[1]) / 2.0,
        (w[0] - w[1]) / two_i,
        (w[2] + w[3]) / 2.0,
        (w[2] - w[3]) / two_i,
    ]
}

/// `(|w₁|² + |w₂|² + |w₃|² + |w₄|²)/2`; equals `t` on `M_t³`.
pub fn t_level(p: &QuadricPoint) -> f64 {
    p.w.iter().map(|z| z.norm_sqr()).sum::<f64>() / 2.0
}

/// Third component of the extended map on all of `C⁴`.
#[inline]
pub fn map_third(w: &[Complex64; 4]) -> Complex64 {
    w[1] * w[2] * w[3] * w[3] + I * w[0] * w[1] * w[1] * w[3]
}

/// `F̃(W) = (w₁, w₃, w₂w₃w₄² + iw₁w₂²w₄)`.
pub fn eval_map(p: &QuadricPoint) -> MapImage {
    eval_map_raw(&p.w)
}

/// The extended map at an arbitrary point of `C⁴`.
pub fn eval_map_raw(w: &[Complex64; 4]) -> MapImage {
    MapImage {
        c1: w[0],
        c2: w[2],
        c3: map_third(w),
    }
}

/// The Ahern-Rudin map `f(z, w) = (z, w, w z̄ w̄² + i z z̄² w̄)` on `C²`.
pub fn ahern_rudin(z: Complex64, w: Complex64) -> [Complex64; 3] {
    let (zb, wb) = (z.conj(), w.conj());
    [z, w, w * zb * wb * wb + I * z * zb * zb * wb]
}

/// The point of `S³ ⊂ Q³` corresponding to `(z, w)` with `|z|² + |w|² = 1`.
pub fn sphere_point(z: Complex64, w: Complex64) -> Result<QuadricPoint, QuadricError> {
    QuadricPoint::new([z, z.conj(), w, w.conj()])
}

/// Which local chart of `Q³` a Jacobian value was computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// Coordinates `(w₁, w₃, w₄)`, valid where `w₁ ≠ 0`.
    Phi,
    /// Coordinates `(w₁, w₂, w₃)`, valid where `w₃ ≠ 0`.
    Psi,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobian {
    pub value: Complex64,
    pub chart: Chart,
}

/// Numerator of `∂φ/∂w₄` as a polynomial in `u = w₃w₄`:
/// `(3i − 3)u² + (2 − 4i)u + i`.
#[inline]
pub fn phi_numerator(u: Complex64) -> Complex64 {
    c(-3.0, 3.0) * u * u + c(2.0, -4.0) * u + I
}

/// Numerator of `∂ψ/∂w₂` as a polynomial in `v = w₁w₂`:
/// `(3 − 3i)v² + (2i − 4)v + 1`.
#[inline]
pub fn psi_numerator(v: Complex64) -> Complex64 {
    c(3.0, -3.0) * v * v + c(-4.0, 2.0) * v + 1.0
}

/// Third component of `F̃` in the φ-chart `(w₁, w₃, w₄)`.
pub fn phi_chart(w1: Complex64, w3: Complex64, w4: Complex64) -> Complex64 {
    (1.0 - w3 * w4) / w1 * (I * w4 + c(1.0, -1.0) * w3 * w4 * w4)
}

/// Third component of `F̃` in the ψ-chart `(w₁, w₂, w₃)`.
pub fn psi_chart(w1: Complex64, w2: Complex64, w3: Complex64) -> Complex64 {
    (1.0 - w1 * w2) / w3 * (w2 + c(-1.0, 1.0) * w1 * w2 * w2)
}

/// Jacobian of `F̃` restricted to `Q³`, in the chart with the larger of
/// `|w₁|`, `|w₃|`.
pub fn eval_jacobian(p: &QuadricPoint) -> Result<Jacobian, QuadricError> {
    let [w1, w2, w3, w4] = p.w;
    if w1.norm() < CHART_EPS && w3.norm() < CHART_EPS {
        return Err(QuadricError::BothChartsDegenerate);
    }
    if w1.norm() >= w3.norm() {
        Ok(Jacobian {
            value: phi_numerator(w3 * w4) / w1,
            chart: Chart::Phi,
        })
    } else {
        Ok(Jacobian {
            value: -psi_numerator(w1 * w2) / w3,
            chart: Chart::Psi,
        })
    }
}

/// `g(x, y) = x + p/x + y + q/y`.
pub fn g(p: f64, q: f64, x: f64, y: f64) -> f64 {
    x + p / x + y + q / y
}

/// Minimum of `g` over `x, y > 0`: `2(√p + √q)` at `(√p, √q)`.
pub fn min_g(p: f64, q: f64) -> Result<(f64, (f64, f64)), QuadricError> {
    if !(p > 0.0 && q > 0.0) {
        return Err(QuadricError::NonPositiveWeights { p, q });
    }
    let (sp, sq) = (p.sqrt(), q.sqrt());
    Ok((2.0 * (sp + sq), (sp, sq)))
}

/// Larger root of `x + p/x = target` for `p ≥ 0`.
///
/// A negative discriminant within round-off of zero is clamped.
pub(crate) fn larger_root(p: f64, target: f64) -> f64 {
    let disc = (target * target - 4.0 * p).max(0.0);
    (target + disc.sqrt()) / 2.0
}

/// A point `W₀ ∈ M_t³` where the Jacobian of `F̃` vanishes; exists iff `t ≥ τ`.
///
/// Keeps `y₀ = √q` at its minimiser and solves `x + p/x = 2t − 2√q` for the
/// larger root `x₀`, with `p = (2+√2)/6`, `q = (2−√2)/6`.
pub fn degeneracy_witness(t: f64) -> Result<QuadricPoint, QuadricError> {
    let k = DomainConstants::get();
    if !(t >= k.tau) {
        return Err(QuadricError::BelowDegeneracyThreshold { t, tau: k.tau });
    }
    let p = (2.0 + k.sqrt2) / 6.0;
    let q = (2.0 - k.sqrt2) / 6.0;
    let y0 = q.sqrt();
    let x0 = larger_root(p, 2.0 * t - 2.0 * y0);
    let (sx, sy) = (x0.sqrt(), y0.sqrt());
    QuadricPoint::new([
        c(sx, 0.0),
        c(3.0 + k.sqrt2, 1.0) / (6.0 * sx),
        c(sy, 0.0),
        c(3.0 - k.sqrt2, -1.0) / (6.0 * sy),
    ])
}

/// Samples `W ∈ M_t³` with `w₃w₄ = a`.
///
/// Returns `(e^{iθ₁}√x, e^{−iθ₁}(1−a)/√x, e^{iθ₃}√y, e^{−iθ₃}a/√y)` where
/// `x + |1−a|²/x = 2|1−a| + split·excess` and `y + |a|²/y = 2|a| + (1−split)·excess`,
/// `excess = 2t − 2(|1−a| + |a|)`, each solved for its larger root.
/// For `a = 0` (resp. `a = 1`) the coordinate `w₄` (resp. `w₂`) is exactly zero.
pub fn sample_mt(
    t: f64,
    a: Complex64,
    phase1: f64,
    phase3: f64,
    split: f64,
) -> Result<QuadricPoint, QuadricError> {
    if !(t > 1.0) {
        return Err(QuadricError::LevelTooLow { t });
    }
    if !(0.0..=1.0).contains(&split) {
        return Err(QuadricError::BadSplit { split });
    }
    let one_minus = Complex64::new(1.0, 0.0) - a;
    let (m1, m3) = (one_minus.norm(), a.norm());
    let lower = m1 + m3;
    if lower > t {
        return Err(QuadricError::InfeasibleLevel { t, lower });
    }
    let excess = 2.0 * (t - lower);
    let x = larger_root(m1 * m1, 2.0 * m1 + split * excess);
    let y = larger_root(m3 * m3, 2.0 * m3 + (1.0 - split) * excess);
    if x <= 0.0 {
        return Err(QuadricError::DegenerateSample { which: "(w1, w2)", a });
    }
    if y <= 0.0 {
        return Err(QuadricError::DegenerateSample { which: "(w3, w4)", a });
    }
    let (sx, sy) = (x.sqrt(), y.sqrt());
    let e1 = Complex64::from_polar(1.0, phase1);
    let e3 = Complex64::from_polar(1.0, phase3);
    let w2 = if m1 == 0.0 { Complex64::new(0.0, 0.0) } else { one_minus / (e1 * sx) };
    let w4 = if m3 == 0.0 { Complex64::new(0.0, 0.0) } else { a / (e3 * sy) };
    QuadricPoint::new([e1 * sx, w2, e3 * sy, w4])
}

/// Draws `a` uniformly from the closed elliptical region `|1−a| + |a| ≤ limit`
/// by rejection from its bounding box. Requires `limit > 1`.
pub fn random_in_ellipse<R: Rng + ?Sized>(rng: &mut R, limit: f64) -> Complex64 {
    let half = limit / 2.0;
    let minor = (half * half - 0.25).max(0.0).sqrt();
    loop {
        let a = c(rng.gen_range(0.5 - half..=0.5 + half), rng.gen_range(-minor..=minor));
        if (1.0 - a).norm() + a.norm() <= limit {
            return a;
        }
    }
}

/// A random point of `M_t³` with `w₃w₄` drawn from `|1−a| + |a| ≤ t`, random
/// phases and a random split. `a` is kept away from `{0, 1}` so both chart
/// coordinates are nonzero.
pub fn random_mt_point<R: Rng + ?Sized>(rng: &mut R, t: f64) -> QuadricPoint {
    loop {
        let a = random_in_ellipse(rng, t);
        if a.norm() < 1e-9 || (1.0 - a).norm() < 1e-9 {
            continue;
        }
        let tau = std::f64::consts::TAU;
        let (p1, p3, s) = (rng.gen_range(0.0..tau), rng.gen_range(0.0..tau), rng.gen_range(0.0..=1.0));
        if let Ok(p) = sample_mt(t, a, p1, p3, s) {
            return p;
        }
    }
}

/// A random point of `Q³` with `|w₁|, |w₃|` drawn from `[lo, hi]`.
pub fn random_quadric_point<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> QuadricPoint {
    let tau = std::f64::consts::TAU;
    loop {
        let w1 = Complex64::from_polar(rng.gen_range(lo..=hi), rng.gen_range(0.0..tau));
        let w3 = Complex64::from_polar(rng.gen_range(lo..=hi), rng.gen_range(0.0..tau));
        let w4 = c(rng.gen_range(-1.5..=1.5), rng.gen_range(-1.5..=1.5));
        if let Ok(p) = QuadricPoint::from_chart(w1, w3, w4) {
            return p;
        }
    }
}
