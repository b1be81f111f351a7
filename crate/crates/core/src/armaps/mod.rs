//! Exact algebra for maps of the form `g(z, w) = (z, w, P(z, z̄, w, w̄))` on
//! the unit sphere, and the holomorphic extension `G` of their push-forward
//! to the quadric.
//!
//! `P` is obtained from a sum of homogeneous harmonic polynomials `Q_j` of
//! bidegree `(p_j, q_j)` as
//! `P = (z̄ ∂_w − w̄ ∂_z) Σ Q_j / (p_j (q_j + 1))`.

mod gauss;
mod io;
mod poly;
mod sphere;

use num_rational::BigRational;
use thiserror::Error;

pub use gauss::GaussianRational;
pub use io::{parse_polynomial, polynomial_to_json, ArmapSpec, PartSpec, PolynomialJson, TermJson};
pub use poly::{Exponents, HolomorphicPolynomial4, Poly4, SparseHermitianPolynomial};
pub use sphere::{nonvanishing_on_sphere, nonvanishing_on_sphere_seeded, SphereVerdict};

use crate::quadric::{MapImage, QuadricPoint};

#[derive(Debug, Error, PartialEq)]
pub enum ArmapError {
    #[error("part {index}: expected bidegree ({p}, {q}), found {found:?}")]
    Bidegree {
        index: usize,
        p: u32,
        q: u32,
        found: Option<(u32, u32)>,
    },
    #[error("part {index}: holomorphic degree must be at least 1")]
    ZeroDegree { index: usize },
    #[error("part {index}: polynomial is not harmonic")]
    NotHarmonic { index: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// One summand `Q_j` with its declared bidegree.
#[derive(Debug, Clone, PartialEq)]
pub struct Part {
    pub q: SparseHermitianPolynomial,
    pub p_deg: u32,
    pub q_deg: u32,
}

impl Part {
    pub fn new(q: SparseHermitianPolynomial, p_deg: u32, q_deg: u32) -> Self {
        Part { q, p_deg, q_deg }
    }
}

fn int(k: u32) -> GaussianRational {
    GaussianRational::from_ints(k as i64, 0)
}

/// `∂²Q/∂z∂z̄ + ∂²Q/∂w∂w̄`.
pub fn laplacian(q: &SparseHermitianPolynomial) -> SparseHermitianPolynomial {
    SparseHermitianPolynomial(q.0.map_terms(|&[a, b, g, d], c, out| {
        if a > 0 && b > 0 {
            out.add_term([a - 1, b - 1, g, d], c * &int(a * b));
        }
        if g > 0 && d > 0 {
            out.add_term([a, b, g - 1, d - 1], c * &int(g * d));
        }
    }))
}

pub fn is_harmonic(q: &SparseHermitianPolynomial) -> bool {
    laplacian(q).is_zero()
}

/// `z̄ ∂Q/∂w − w̄ ∂Q/∂z`.
pub fn apply_operator(q: &SparseHermitianPolynomial) -> SparseHermitianPolynomial {
    SparseHermitianPolynomial(q.0.map_terms(|&[a, b, g, d], c, out| {
        if g > 0 {
            out.add_term([a, b + 1, g - 1, d], c * &int(g));
        }
        if a > 0 {
            out.add_term([a - 1, b, g, d + 1], -(c * &int(a)));
        }
    }))
}

/// `Σ Q_j / (p_j (q_j + 1))` after validating every part.
pub fn weighted_sum(parts: &[Part]) -> Result<SparseHermitianPolynomial, ArmapError> {
    let mut sum = SparseHermitianPolynomial::zero();
    for (index, part) in parts.iter().enumerate() {
        if part.p_deg == 0 {
            return Err(ArmapError::ZeroDegree { index });
        }
        if !part.q.has_bidegree(part.p_deg, part.q_deg) {
            return Err(ArmapError::Bidegree {
                index,
                p: part.p_deg,
                q: part.q_deg,
                found: part.q.bidegree(),
            });
        }
        if !is_harmonic(&part.q) {
            return Err(ArmapError::NotHarmonic { index });
        }
        let w = BigRational::new(1.into(), (part.p_deg as i64 * (part.q_deg as i64 + 1)).into());
        sum = &sum + &part.q.scale(&GaussianRational::real(w));
    }
    Ok(sum)
}

#[allow(non_snake_case)]
pub fn build_P(parts: &[Part]) -> Result<SparseHermitianPolynomial, ArmapError> {
    weighted_sum(parts).map(|s| apply_operator(&s))
}

/// Substitutes `z → w₁, z̄ → w₂, w → w₃, w̄ → w₄`.
pub fn extend(p: &SparseHermitianPolynomial) -> HolomorphicPolynomial4 {
    HolomorphicPolynomial4(p.0.clone())
}

/// True iff `z̄w̄` divides `P` (every term has `β ≥ 1` and `δ ≥ 1`).
///
/// The zero polynomial counts as divisible.
pub fn divisible_by_conj(p: &SparseHermitianPolynomial) -> bool {
    p.0.terms().all(|(e, _)| e[1] >= 1 && e[3] >= 1)
}

/// `G(W) = (w₁, w₃, extend(P)(W))`.
#[allow(non_snake_case)]
pub fn eval_G(p: &SparseHermitianPolynomial, w: &QuadricPoint) -> MapImage {
    MapImage {
        c1: w.w1(),
        c2: w.w3(),
        c3: extend(p).eval(w.coords()),
    }
}

/// `P = w z̄ w̄² + i z z̄² w̄`, the third component of the Ahern-Rudin map.
pub fn ahern_rudin_p() -> SparseHermitianPolynomial {
    SparseHermitianPolynomial::from_terms([
        ([0, 1, 1, 2], GaussianRational::one()),
        ([1, 2, 0, 1], GaussianRational::i()),
    ])
}

/// `|z|² − |w|²`.
pub fn q_basic() -> SparseHermitianPolynomial {
    SparseHermitianPolynomial::from_terms([
        ([1, 1, 0, 0], GaussianRational::one()),
        ([0, 0, 1, 1], GaussianRational::from_ints(-1, 0)),
    ])
}

/// The harmonic polynomial of bidegree `(p, p)` in `|z|²`, `|w|²` alone,
/// normalised so that the `|z|^{2p}` coefficient is 1.
pub fn radial_harmonic(p: u32) -> SparseHermitianPolynomial {
    let mut terms = Vec::new();
    let mut c = BigRational::from_integer(1.into());
    for k in 0..=p {
        terms.push(([p - k, p - k, k, k], GaussianRational::real(c.clone())));
        let num = BigRational::from_integer(((p - k) as i64 * (p - k) as i64).into());
        let den = BigRational::from_integer(((k + 1) as i64 * (k + 1) as i64).into());
        c = -(c * num / den);
    }
    SparseHermitianPolynomial::from_terms(terms)
}

/// Report of the full pipeline on one set of parts.
///
/// When a part fails validation, `error` is set and the construction fields
/// are absent.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PipelineReport {
    pub parts: Vec<PartCheck>,
    pub sum_harmonic: bool,
    pub nonvanishing: SphereVerdict,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    pub p: Option<PolynomialJson>,
    #[serde(rename = "G3", skip_serializing_if = "Option::is_none")]
    pub g3: Option<PolynomialJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisible_by_conj: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collision: Option<CollisionCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl PipelineReport {
    pub fn ok(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct PartCheck {
    pub bidegree: Option<(u32, u32)>,
    pub declared: (u32, u32),
    pub bidegree_ok: bool,
    pub harmonic: bool,
}

/// `G` at `W_u = (u, 1/u, u, 0)` and `W_u′ = (u, 0, u, 1/u)`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CollisionCheck {
    pub u: f64,
    pub g_wu: MapImage,
    pub g_wu_prime: MapImage,
    pub distance: f64,
    pub collide: bool,
}

/// Panics unless `u > 0` is finite.
pub fn collision_check(p: &SparseHermitianPolynomial, u: f64) -> CollisionCheck {
    assert!(u.is_finite() && u > 0.0, "u must be positive");
    let c = crate::c;
    let wu = QuadricPoint::new([c(u, 0.0), c(1.0 / u, 0.0), c(u, 0.0), c(0.0, 0.0)]).expect("W_u lies on the quadric");
    let wu2 = QuadricPoint::new([c(u, 0.0), c(0.0, 0.0), c(u, 0.0), c(1.0 / u, 0.0)]).expect("W_u' lies on the quadric");
    let g_wu = eval_G(p, &wu);
    let g_wu_prime = eval_G(p, &wu2);
    let distance = g_wu.distance(&g_wu_prime);
    CollisionCheck {
        u,
        g_wu,
        g_wu_prime,
        distance,
        collide: distance <= 1e-12 * (1.0 + u.abs()),
    }
}

/// Runs bidegree and harmonicity checks, the sphere test on `Q = Σ Q_j`,
/// construction of `P`, extension, the divisibility test and the collision
/// test at `u`.
pub fn run_pipeline(parts: &[Part], n_samples: usize, seed: u64, u: f64) -> PipelineReport {
    let checks = parts
        .iter()
        .map(|pt| PartCheck {
            bidegree: pt.q.bidegree(),
            declared: (pt.p_deg, pt.q_deg),
            bidegree_ok: pt.q.has_bidegree(pt.p_deg, pt.q_deg),
            harmonic: is_harmonic(&pt.q),
        })
        .collect();
    let q_sum = parts
        .iter()
        .fold(SparseHermitianPolynomial::zero(), |acc, pt| &acc + &pt.q);
    let mut report = PipelineReport {
        parts: checks,
        sum_harmonic: is_harmonic(&q_sum),
        nonvanishing: nonvanishing_on_sphere_seeded(&q_sum, n_samples, seed),
        p: None,
        g3: None,
        divisible_by_conj: None,
        collision: None,
        error: None,
    };
    match build_P(parts) {
        Ok(p) => {
            report.g3 = Some(polynomial_to_json(extend(&p).poly()));
            report.p = Some(polynomial_to_json(p.poly()));
            report.divisible_by_conj = Some(divisible_by_conj(&p));
            report.collision = Some(collision_check(&p, u));
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::quadric::{eval_map, map_third, random_quadric_point, sphere_point};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn shp(terms: &[(Exponents, GaussianRational)]) -> SparseHermitianPolynomial {
        SparseHermitianPolynomial::from_terms(terms.iter().cloned())
    }

    #[test]
    fn laplacian_examples() {
        assert!(laplacian(&q_basic()).is_zero());
        let zzww = shp(&[([1, 1, 1, 1], g(1, 0))]);
        assert_eq!(laplacian(&zzww), shp(&[([1, 1, 0, 0], g(1, 0)), ([0, 0, 1, 1], g(1, 0))]));
        assert!(laplacian(&radial_harmonic(2)).is_zero());
        assert_eq!(
            radial_harmonic(2),
            shp(&[([2, 2, 0, 0], g(1, 0)), ([1, 1, 1, 1], g(-4, 0)), ([0, 0, 2, 2], g(1, 0))])
        );
    }

    #[test]
    fn operator_examples() {
        assert_eq!(apply_operator(&shp(&[([1, 0, 0, 0], g(1, 0))])), shp(&[([0, 0, 0, 1], g(-1, 0))]));
        assert_eq!(apply_operator(&shp(&[([0, 0, 1, 0], g(1, 0))])), shp(&[([0, 1, 0, 0], g(1, 0))]));
        let zzww = shp(&[([1, 1, 1, 1], g(1, 0))]);
        assert_eq!(apply_operator(&zzww), shp(&[([1, 2, 0, 1], g(1, 0)), ([0, 1, 1, 2], g(-1, 0))]));
    }

    #[test]
    fn build_p_examples() {
        let p = build_P(&[Part::new(q_basic(), 1, 1)]).unwrap();
        assert_eq!(p, shp(&[([0, 1, 0, 1], g(-1, 0))]));
        assert!(divisible_by_conj(&p));
        assert_eq!(extend(&p), HolomorphicPolynomial4::from_terms([([0, 1, 0, 1], g(-1, 0))]));

        let bad = build_P(&[Part::new(shp(&[([1, 1, 1, 1], g(1, 0))]), 2, 2)]);
        assert_eq!(bad, Err(ArmapError::NotHarmonic { index: 0 }));
        let wrong_deg = build_P(&[Part::new(q_basic(), 2, 1)]);
        assert!(matches!(wrong_deg, Err(ArmapError::Bidegree { .. })));
        assert!(matches!(build_P(&[Part::new(q_basic(), 0, 2)]), Err(ArmapError::ZeroDegree { .. })));

        let parts = [
            Part::new(q_basic(), 1, 1),
            Part::new(radial_harmonic(2).scale(&GaussianRational::i()), 2, 2),
        ];
        let sum = weighted_sum(&parts).unwrap();
        assert!(laplacian(&sum).is_zero());
        // (1/2)(−2z̄w̄) + (i/6)(−6zz̄²w̄ + 6wz̄w̄²)
        let p = build_P(&parts).unwrap();
        let expected = shp(&[([0, 1, 0, 1], g(-1, 0)), ([1, 2, 0, 1], g(0, -1)), ([0, 1, 1, 2], g(0, 1))]);
        assert_eq!(p, expected);
        assert!(divisible_by_conj(&p));
    }

    #[test]
    fn extension_of_ahern_rudin_p() {
        let g3 = extend(&ahern_rudin_p());
        let expected = HolomorphicPolynomial4::from_terms([([0, 1, 1, 2], g(1, 0)), ([1, 2, 0, 1], g(0, 1))]);
        assert_eq!(g3, expected);
        assert!(extend(&SparseHermitianPolynomial::zero()).is_zero());
        assert!(divisible_by_conj(&ahern_rudin_p()));
        assert!(!divisible_by_conj(&shp(&[([1, 0, 0, 0], g(1, 0))])));
    }

    #[test]
    fn eval_g_examples() {
        let one = QuadricPoint::new([c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let img = eval_G(&ahern_rudin_p(), &one);
        assert!(img.distance(&MapImage { c1: c(1.0, 0.0), c2: c(1.0, 0.0), c3: c(0.0, 0.0) }) < 1e-15);

        let col = collision_check(&build_P(&[Part::new(q_basic(), 1, 1)]).unwrap(), 1.0);
        assert!(col.collide);
        assert!(col.g_wu.distance(&MapImage { c1: c(1.0, 0.0), c2: c(1.0, 0.0), c3: c(0.0, 0.0) }) < 1e-15);

        let s = 0.5f64.sqrt();
        let sp = sphere_point(c(s, 0.0), c(s, 0.0)).unwrap();
        let img = eval_G(&ahern_rudin_p(), &sp);
        assert!((img.c3 - c(0.25, 0.25)).norm() < 1e-15);
    }

    #[test]
    fn eval_g_matches_eval_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = ahern_rudin_p();
        for _ in 0..10_000 {
            let w = random_quadric_point(&mut rng, 1.0, 3.0);
            let a = eval_G(&p, &w);
            let b = eval_map(&w);
            let scale = 1.0 + map_third(&w.coords()).norm();
            assert!(a.distance(&b) <= 1e-12 * scale, "{a:?} {b:?}");
        }
    }

    #[test]
    fn radial_sums_are_divisible_and_collide() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let m = rng.gen_range(1..=3);
            let parts: Vec<Part> = (0..m)
                .map(|_| {
                    let deg = rng.gen_range(1..=4);
                    let k = GaussianRational::from_fractions(
                        rng.gen_range(-9..=9),
                        rng.gen_range(1..=7),
                        rng.gen_range(-9..=9),
                        rng.gen_range(1..=7),
                    );
                    Part::new(radial_harmonic(deg).scale(&k), deg, deg)
                })
                .collect();
            let p = build_P(&parts).unwrap();
            assert!(divisible_by_conj(&p));
            for u in [1.0, 1.3, 2.0] {
                assert!(collision_check(&p, u).collide);
            }
        }
    }
}
