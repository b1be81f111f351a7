//! The ellipse `E`, the companion product `â`, the invariants `A`, `B`, and the
//! branch-and-bound certificate for `AB ≥ τ²`.
//!
//! For `W ∈ M_t³` with `a = w₃w₄` and a companion with `â = w₃ŵ₄`, write
//! `x = |w₁|²`, `y = |w₃|²`,
//!
//! ```text
//! D = |â|² − |a|²,   R = 2(Re â − Re a),   E = |1−a|² − |1−â|² = R − D.
//! ```
//!
//! If both points lie on the same level then `x = k·y` with `k = E/D`, and
//! `y` solves `A y² − 2t y + B = 0` with `A = R/D`, `B = N/E`,
//! `N = (1−2Re a)|â|² − (1−2Re â)|a|²`. A companion on the same level
//! therefore needs `k > 0` (an *admissible* pair) and `t² ≥ AB`.
//!
//! On a sizeable part of `E` one branch has `k < 0`, and there `AB` falls
//! below `τ²` and can be negative; such pairs cannot come from a point of
//! `M_t³`. The certificate is stated for the quantity
//!
//! ```text
//! Φ_b = R·(|1−a|²D + |a|²E) − b·D·E
//! ```
//!
//! which equals `D·E·(AB − b)` and so, wherever `D·E > 0`, has the sign of
//! `AB − b`. `Φ_b ≥ 0` on a region therefore proves that no admissible pair
//! there has `AB < b`, and unlike `AB` it has no poles.

pub mod bnb;
pub mod enclosure;
pub mod interval;
pub mod scan;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::fiber::Branch;
use crate::quadric::DomainConstants;
use crate::{c, Complex64};
pub use bnb::{certify_lower_bound, CertifyConfig, CertificateReport, QueueOrder, Verdict, Witness};
pub use enclosure::{ab_enclosure, ab_piece_enclosures, companion_a_enclosure, gap_enclosure, BranchGap};
pub use interval::{ComplexBox, Interval};
pub use scan::{grid_scan, GridScan};

/// Denominator magnitude below which `A` or `B` is not evaluated.
pub const DEGENERATE_DENOM: f64 = 1e-13;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("degenerate pair at a = {a}: |a^|^2-|a|^2 = {d:e}, |1-a|^2-|1-a^|^2 = {e:e}")]
    DegeneratePair { a: Complex64, d: f64, e: f64 },
    #[error("level t = {t} must exceed 1")]
    LevelTooLow { t: f64 },
    #[error("certification needs margin > 0, got {margin}")]
    NonPositiveMargin { margin: f64 },
    #[error("grid needs at least one point per axis")]
    EmptyGrid,
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// Which `(a, branch)` pairs a lower bound on `AB` is asserted for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbSemantics {
    /// Pairs with `k = E/D > 0`, the only ones a point of `M_t³` can produce.
    #[default]
    Admissible,
    /// Every pair with nonvanishing denominators.
    Unrestricted,
}

/// The elliptical region `|1−z| + |z| < threshold − margin`, foci `0` and `1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseDomain {
    pub threshold: f64,
    pub margin: f64,
}

impl Default for EllipseDomain {
    fn default() -> Self {
        EllipseDomain {
            threshold: DomainConstants::get().tau,
            margin: 0.0,
        }
    }
}

impl EllipseDomain {
    pub fn with_margin(margin: f64) -> Self {
        EllipseDomain {
            margin,
            ..Default::default()
        }
    }

    /// `threshold − margin`.
    pub fn limit(&self) -> f64 {
        self.threshold - self.margin
    }

    /// Empty when `threshold − margin ≤ 1 = |1−z| + |z|` on the focal segment.
    pub fn is_empty(&self) -> bool {
        self.limit() <= 1.0
    }

    /// Bounding rectangle `[0.5 − L/2, 0.5 + L/2] × [−√(L²/4 − 1/4), …]`,
    /// `L = limit`, or `None` when the domain is empty.
    pub fn bounding_box(&self) -> Option<ComplexBox> {
        if self.is_empty() {
            return None;
        }
        let half = self.limit() / 2.0;
        let minor = (half * half - 0.25).sqrt();
        Some(ComplexBox::from_bounds(
            (0.5 - half).next_down(),
            (0.5 + half).next_up(),
            (-minor).next_down(),
            minor.next_up(),
        ))
    }

    /// Interval enclosure of `|1−z| + |z|` over a box.
    pub fn focal_sum(b: ComplexBox) -> Interval {
        let one_minus = ComplexBox::point(c(1.0, 0.0)) - b;
        one_minus.abs() + b.abs()
    }

    /// True if no point of the box is a member.
    pub fn excludes(&self, b: ComplexBox) -> bool {
        Self::focal_sum(b).lo >= self.limit()
    }

    /// True if every point of the box is a member.
    pub fn includes(&self, b: ComplexBox) -> bool {
        Self::focal_sum(b).hi < self.limit()
    }
}

/// Strict membership `|1−z| + |z| < threshold − margin`.
pub fn ellipse_contains(z: Complex64, dom: &EllipseDomain) -> bool {
    (1.0 - z).norm() + z.norm() < dom.limit()
}

/// `6ia² − (2+6i)a + 1`.
pub fn radicand(a: Complex64) -> Complex64 {
    c(0.0, 6.0) * a * a - c(2.0, 6.0) * a + 1.0
}

/// `â = (2i − 1 + (1−i)a ± √(6ia² − (2+6i)a + 1)) / (2i − 2)`.
pub fn companion_a(a: Complex64, branch: Branch) -> Complex64 {
    let s = radicand(a).sqrt() * branch.sign();
    (c(-1.0, 2.0) + c(1.0, -1.0) * a + s) / c(-2.0, 2.0)
}

/// Left side of `(i−1)â² + (1−2i)â + (i−1)âa + (i−1)a² + (1−2i)a + i = 0`.
pub fn pair_relation(a: Complex64, a_hat: Complex64) -> Complex64 {
    let im1 = c(-1.0, 1.0);
    let one_m2i = c(1.0, -2.0);
    im1 * a_hat * a_hat + one_m2i * a_hat + im1 * a_hat * a + im1 * a * a + one_m2i * a + c(0.0, 1.0)
}

/// All quantities attached to one `(a, branch)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ABValue {
    #[serde(with = "crate::pointio::complex_pair")]
    pub a: Complex64,
    #[serde(with = "crate::pointio::complex_pair")]
    pub a_hat: Complex64,
    #[serde(rename = "A")]
    pub a_coef: f64,
    #[serde(rename = "B")]
    pub b_coef: f64,
    #[serde(rename = "AB")]
    pub ab: f64,
    pub branch: Branch,
    /// `|â|² − |a|²`.
    pub d: f64,
    /// `|1−a|² − |1−â|²`.
    pub e: f64,
}

impl ABValue {
    /// `k = x/y = |w₁|²/|w₃|²` forced by equal levels.
    pub fn ratio(&self) -> f64 {
        self.e / self.d
    }

    /// True if `k > 0`.
    pub fn is_admissible(&self) -> bool {
        self.d * self.e > 0.0
    }
}

/// `D` and `E` for a pair, without dividing.
pub fn pair_denominators(a: Complex64, a_hat: Complex64) -> (f64, f64) {
    let d = a_hat.norm_sqr() - a.norm_sqr();
    let e = (1.0 - a).norm_sqr() - (1.0 - a_hat).norm_sqr();
    (d, e)
}

pub fn ab_product(a: Complex64, branch: Branch) -> Result<ABValue, CertifyError> {
    let a_hat = companion_a(a, branch);
    let (d, e) = pair_denominators(a, a_hat);
    if d.abs() < DEGENERATE_DENOM || e.abs() < DEGENERATE_DENOM {
        return Err(CertifyError::DegeneratePair { a, d, e });
    }
    let a_coef = 2.0 * (a_hat.re - a.re) / d;
    let b_coef = ((1.0 - 2.0 * a.re) * a_hat.norm_sqr() - (1.0 - 2.0 * a_hat.re) * a.norm_sqr()) / e;
    Ok(ABValue {
        a,
        a_hat,
        a_coef,
        b_coef,
        ab: a_coef * b_coef,
        branch,
        d,
        e,
    })
}

/// Smallest `AB` over the branches selected by `semantics`; `None` if no
/// branch qualifies.
pub fn ab_min_branch(a: Complex64, semantics: AbSemantics) -> Option<f64> {
    Branch::BOTH
        .iter()
        .filter_map(|&br| ab_product(a, br).ok())
        .filter(|v| semantics == AbSemantics::Unrestricted || v.is_admissible())
        .map(|v| v.ab)
        .fold(None, |m, x| Some(m.map_or(x, |m: f64| m.min(x))))
}

/// `Δ = 4(t² − AB)` of `A s² − 2t s + B`.
pub fn discriminant(t: f64, a: Complex64, branch: Branch) -> Result<f64, CertifyError> {
    if !(t > 1.0) {
        return Err(CertifyError::LevelTooLow { t });
    }
    let v = ab_product(a, branch)?;
    Ok(4.0 * (t * t - v.ab))
}

/// Roots of `A s² − 2t s + B = 0` for one branch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchRoots {
    pub value: ABValue,
    pub discriminant: f64,
    /// Real positive roots `s = |w₃|²`.
    pub positive_roots: Vec<f64>,
    /// The subset for which `x = k·s` is also positive.
    pub admissible_roots: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum RootVerdict {
    /// No branch yields positive `(x, y)`: the companion cannot share the level.
    None { branches: Vec<BranchRoots> },
    Exists { branches: Vec<BranchRoots> },
}

impl RootVerdict {
    pub fn is_none(&self) -> bool {
        matches!(self, RootVerdict::None { .. })
    }
}

/// Decides whether some companion of a point with `w₃w₄ = a` can lie on the
/// same level `t`, i.e. whether `A s² − 2t s + B = 0` has a root `s > 0`
/// with `k·s > 0`.
pub fn root_check(t: f64, a: Complex64) -> Result<RootVerdict, CertifyError> {
    if !(t > 1.0) {
        return Err(CertifyError::LevelTooLow { t });
    }
    let mut branches = Vec::with_capacity(2);
    for br in Branch::BOTH {
        let v = ab_product(a, br)?;
        let disc = 4.0 * (t * t - v.ab);
        let mut positive = Vec::new();
        if disc >= 0.0 {
            let sq = disc.sqrt();
            // Roots of A s² − 2t s + B, computed without cancellation.
            let q = t + sq / 2.0;
            let r1 = q / v.a_coef;
            let r2 = v.b_coef / q;
            for r in [r1, r2] {
                if r.is_finite() && r > 0.0 && !positive.contains(&r) {
                    positive.push(r);
                }
            }
        }
        let admissible = positive.iter().copied().filter(|s| v.ratio() * s > 0.0).collect();
        branches.push(BranchRoots {
            value: v,
            discriminant: disc,
            positive_roots: positive,
            admissible_roots: admissible,
        });
    }
    if branches.iter().all(|b| b.admissible_roots.is_empty()) {
        Ok(RootVerdict::None { branches })
    } else {
        Ok(RootVerdict::Exists { branches })
    }
}

/// `Φ_b = R(|1−a|²D + |a|²E) − b·D·E` at a point.
pub fn gap(a: Complex64, branch: Branch, bound: f64) -> f64 {
    let a_hat = companion_a(a, branch);
    let (d, e) = pair_denominators(a, a_hat);
    let r = 2.0 * (a_hat.re - a.re);
    r * ((1.0 - a).norm_sqr() * d + a.norm_sqr() * e) - bound * d * e
}
