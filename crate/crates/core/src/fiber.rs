//! Fibers of `F̃` on `Q³`.
//!
//! Two points with the same image share `w₁` and `w₃`. With `w₁, w₃ ≠ 0` and
//! `ŵ₂ = (1 − w₃ŵ₄)/w₁`, equality of third components is a cubic in `ŵ₄`
//! with the known root `ŵ₄ = w₄`; the remaining quadratic
//!
//! ```text
//! (i−1)w₃² ŵ₄² + ((1−2i)w₃ + (i−1)w₃²w₄) ŵ₄ + (i + (1−2i)w₃w₄ + (i−1)w₃²w₄²) = 0
//! ```
//!
//! has the closed-form roots returned by [`companion_w4`].

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadric::{eval_map, map_third, t_level, DomainConstants, QuadricError, QuadricPoint, CHART_EPS};
use crate::{c, Complex64, I};

/// Relative tolerance under which a companion is identified with the base point.
pub const DEDUPE_TOL: f64 = 1e-8;

/// Radicand modulus below which the two companions are flagged as nearly coincident.
pub const ILL_CONDITIONED_RADICAND: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FiberError {
    /// `w₁ = 0` or `w₃ = 0`: the fiber is the single point `W`.
    #[error("trivial fiber: {0:?} vanishes")]
    Trivial(TrivialReason),
    #[error("need t >= sqrt(2) for the three-point witness, got t = {t}")]
    BelowSqrt2 { t: f64 },
    #[error(transparent)]
    Quadric(#[from] QuadricError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrivialReason {
    W1Zero,
    W3Zero,
}

fn trivial_reason(p: &QuadricPoint) -> Option<TrivialReason> {
    if p.w1().norm() <= CHART_EPS {
        Some(TrivialReason::W1Zero)
    } else if p.w3().norm() <= CHART_EPS {
        Some(TrivialReason::W3Zero)
    } else {
        None
    }
}

/// Coefficients `[a₂, a₁, a₀]` of the companion quadratic in `ŵ₄`.
pub fn companion_quadratic(w3: Complex64, w4: Complex64) -> [Complex64; 3] {
    let im1 = c(-1.0, 1.0);
    let one_m2i = c(1.0, -2.0);
    let u = w3 * w4;
    [im1 * w3 * w3, one_m2i * w3 + im1 * w3 * u, I + one_m2i * u + im1 * u * u]
}

/// `6i u² − (2 + 6i)u + 1` with `u = w₃w₄`; zero exactly when the two
/// companions coincide.
pub fn companion_radicand(u: Complex64) -> Complex64 {
    c(0.0, 6.0) * u * u - c(2.0, 6.0) * u + 1.0
}

/// The two values of `ŵ₄` from the closed form, principal square root first.
pub fn companion_w4(p: &QuadricPoint) -> Result<[Complex64; 2], FiberError> {
    if let Some(r) = trivial_reason(p) {
        return Err(FiberError::Trivial(r));
    }
    let (w3, w4) = (p.w3(), p.w4());
    let u = w3 * w4;
    let s = companion_radicand(u).sqrt();
    let base = c(-1.0, 2.0) + c(1.0, -1.0) * u;
    let den = c(-2.0, 2.0) * w3;
    Ok([(base + s) / den, (base - s) / den])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Principal square root.
    Plus,
    /// Negated principal square root.
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// The fiber `F̃⁻¹(F̃(W))` as the base point plus at most two companions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiberResult {
    pub base: QuadricPoint,
    pub companions: Vec<QuadricPoint>,
    /// Per companion: max of the quadric residual and `|F̃₃(Ŵ) − F̃₃(W)|`.
    pub residuals: Vec<f64>,
    pub t_levels: Vec<f64>,
    pub base_t_level: f64,
    pub branches: Vec<Branch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial: Option<TrivialReason>,
    /// Set when the companion radicand is below [`ILL_CONDITIONED_RADICAND`].
    pub ill_conditioned: bool,
}

pub fn fiber_of(p: &QuadricPoint) -> FiberResult {
    let mut out = FiberResult {
        base: *p,
        companions: Vec::new(),
        residuals: Vec::new(),
        t_levels: Vec::new(),
        base_t_level: t_level(p),
        branches: Vec::new(),
        trivial: trivial_reason(p),
        ill_conditioned: false,
    };
    let Ok(roots) = companion_w4(p) else {
        return out;
    };
    out.ill_conditioned = companion_radicand(p.w3() * p.w4()).norm() < ILL_CONDITIONED_RADICAND;
    let target = map_third(&p.coords());
    for (root, branch) in roots.into_iter().zip(Branch::BOTH) {
        let w = [p.w1(), (1.0 - p.w3() * root) / p.w1(), p.w3(), root];
        let Ok(q) = QuadricPoint::new(w) else {
            continue;
        };
        if q.distance(p) <= DEDUPE_TOL * p.scale().max(1.0) {
            continue;
        }
        if out.companions.iter().any(|o| o.distance(&q) <= DEDUPE_TOL * q.scale().max(1.0)) {
            continue;
        }
        let residual = q.residual().max((map_third(&w) - target).norm());
        out.t_levels.push(t_level(&q));
        out.residuals.push(residual);
        out.companions.push(q);
        out.branches.push(branch);
    }
    out
}

impl FiberResult {
    /// All points of the fiber, base first.
    pub fn points(&self) -> Vec<QuadricPoint> {
        std::iter::once(self.base).chain(self.companions.iter().copied()).collect()
    }

    /// Largest distance between the image of a companion and the image of the base.
    pub fn max_image_gap(&self) -> f64 {
        let m = eval_map(&self.base);
        self.companions.iter().map(|q| eval_map(q).distance(&m)).fold(0.0, f64::max)
    }
}

/// Coefficients `[c₃, c₂, c₁, c₀]` (times `w₁`) of the cubic in `ŵ₄` obtained by
/// expanding `ŵ₂w₃ŵ₄² + iw₁ŵ₂²ŵ₄ = F̃₃(W)` after substituting
/// `ŵ₂ = (1 − w₃ŵ₄)/w₁`.
pub fn fiber_cubic(p: &QuadricPoint) -> [Complex64; 4] {
    let (w1, w3) = (p.w1(), p.w3());
    let rhs = map_third(&p.coords());
    [c(-1.0, 1.0) * w3 * w3, c(1.0, -2.0) * w3, I, -w1 * rhs]
}

/// All three roots of [`fiber_cubic`], from the eigenvalues of its companion
/// matrix followed by Newton polishing. Independent of the closed form.
pub fn cubic_oracle(p: &QuadricPoint) -> Result<Vec<Complex64>, FiberError> {
    if let Some(r) = trivial_reason(p) {
        return Err(FiberError::Trivial(r));
    }
    let [a3, a2, a1, a0] = fiber_cubic(p);
    Ok(cubic_roots(a3, a2, a1, a0))
}

/// Roots of `a₃x³ + a₂x² + a₁x + a₀` with `a₃ ≠ 0`.
pub fn cubic_roots(a3: Complex64, a2: Complex64, a1: Complex64, a0: Complex64) -> Vec<Complex64> {
    let (b2, b1, b0) = (a2 / a3, a1 / a3, a0 / a3);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let companion = Matrix3::new(zero, zero, -b0, one, zero, -b1, zero, one, -b2);
    let eig = companion
        .schur()
        .eigenvalues()
        .expect("triangular Schur form of a complex matrix");
    let poly = |x: Complex64| ((x + b2) * x + b1) * x + b0;
    let dpoly = |x: Complex64| (3.0 * x + 2.0 * b2) * x + b1;
    eig.iter()
        .map(|&r0| {
            let mut r = r0;
            for _ in 0..3 {
                let d = dpoly(r);
                if d.norm() == 0.0 {
                    break;
                }
                let next = r - poly(r) / d;
                if poly(next).norm() < poly(r).norm() {
                    r = next;
                } else {
                    break;
                }
            }
            r
        })
        .collect()
}

/// Hausdorff distance between two finite point sets in `C`.
pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let one_way = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Groups roots closer than `tol` and returns the cluster sizes, sorted.
pub fn multiplicities(roots: &[Complex64], tol: f64) -> Vec<usize> {
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut n = 0;
        for j in i..roots.len() {
            if !used[j] && (roots[i] - roots[j]).norm() <= tol {
                used[j] = true;
                n += 1;
            }
        }
        out.push(n);
    }
    out.sort_unstable();
    out
}

/// The three points of `M_t³` over `(u, u, 0)`, `2u² + 1/u² = 2t`:
/// `(u, 1/u, u, 0)`, `(u, 0, u, 1/u)`, `(u, (1+i)/(2u), u, (1−i)/(2u))`.
pub fn three_point_witness(t: f64) -> Result<[QuadricPoint; 3], FiberError> {
    let sqrt2 = DomainConstants::get().sqrt2;
    if !(t >= sqrt2) {
        return Err(FiberError::BelowSqrt2 { t });
    }
    let u2 = (t + (t * t - 2.0).max(0.0).sqrt()) / 2.0;
    let u = u2.sqrt();
    let cu = c(u, 0.0);
    let zero = c(0.0, 0.0);
    Ok([
        QuadricPoint::new([cu, c(1.0 / u, 0.0), cu, zero])?,
        QuadricPoint::new([cu, zero, cu, c(1.0 / u, 0.0)])?,
        QuadricPoint::new([cu, c(1.0, 1.0) / (2.0 * u), cu, c(1.0, -1.0) / (2.0 * u)])?,
    ])
}

/// `t`-levels of the companions of `W`. Below `τ` every companion lies on a
/// level at least `τ`.
pub fn companion_levels(p: &QuadricPoint) -> Result<Vec<f64>, FiberError> {
    if let Some(r) = trivial_reason(p) {
        return Err(FiberError::Trivial(r));
    }
    Ok(fiber_of(p).t_levels)
}
