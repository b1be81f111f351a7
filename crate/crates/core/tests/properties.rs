//! Property tests for the invariants of each module.

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use quadric_cert::armaps::{
    ahern_rudin_p, build_P, collision_check, divisible_by_conj, eval_G, extend, laplacian, radial_harmonic,
    weighted_sum, Exponents, GaussianRational, Part, SparseHermitianPolynomial,
};
use quadric_cert::certify::{
    ab_enclosure, ab_product, certify_lower_bound, companion_a, pair_relation, AbSemantics, Branch, CertifyConfig,
    ComplexBox, EllipseDomain, Interval, QueueOrder,
};
use quadric_cert::fiber::{companion_quadratic, companion_w4, cubic_oracle, fiber_of, hausdorff, three_point_witness};
use quadric_cert::quadric::{
    ahern_rudin, degeneracy_products, eval_jacobian, eval_map, g, min_g, sample_mt, sphere_point, t_level, tau,
    DomainConstants, QuadricPoint,
};
use quadric_cert::{c, Complex64};

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig::with_cases(cases)
}

fn complex(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(x, y)| c(x, y))
}

fn phase() -> impl Strategy<Value = f64> {
    0.0..std::f64::consts::TAU
}

/// Feasible `(t, a)` with `t ≤ τ − 0.01` and `|1−a| + |a| ≤ t`.
fn level_and_product() -> impl Strategy<Value = (f64, Complex64)> {
    (1.0 + 1e-6..tau() - 0.01, 0.0..1.0f64, phase()).prop_map(|(t, r, th)| {
        // Polar coordinates about the centre of the ellipse with foci 0, 1.
        let half = t / 2.0;
        let minor = (half * half - 0.25).sqrt();
        let s = r.sqrt() * 0.999;
        (t, c(0.5 + half * s * th.cos(), minor * s * th.sin()))
    })
}

fn mt_point() -> impl Strategy<Value = (f64, Complex64, QuadricPoint)> {
    (level_and_product(), phase(), phase(), 0.0..=1.0f64).prop_filter_map("degenerate sample", |((t, a), p1, p3, s)| {
        if a.norm() < 1e-6 || (1.0 - a).norm() < 1e-6 {
            return None;
        }
        sample_mt(t, a, p1, p3, s).ok().map(|p| (t, a, p))
    })
}

fn quadric_point() -> impl Strategy<Value = QuadricPoint> {
    (0.3..3.0f64, phase(), 0.3..3.0f64, phase(), complex(1.5)).prop_filter_map("off quadric", |(r1, p1, r3, p3, w4)| {
        QuadricPoint::from_chart(Complex64::from_polar(r1, p1), Complex64::from_polar(r3, p3), w4).ok()
    })
}

fn dist_to_degeneracy(u: Complex64) -> f64 {
    degeneracy_products().iter().map(|d| (u - d).norm()).fold(f64::INFINITY, f64::min)
}

// ---------------------------------------------------------------- quadric

#[test]
fn constants_are_ordered() {
    let k = DomainConstants::get();
    assert!((k.tau * k.tau - k.tau_sq).abs() <= 4.0 * f64::EPSILON);
    assert!(1.0 < k.tau && k.tau < k.two_over_sqrt3 && k.two_over_sqrt3 < k.sqrt2);
}

proptest! {
    #![proptest_config(cfg(10_000))]

    #[test]
    fn chart_constructor_lands_on_quadric(p in quadric_point()) {
        prop_assert!(p.residual() <= 1e-9);
        let img = eval_map(&p);
        prop_assert_eq!((img.c1, img.c2), (p.w1(), p.w3()));
    }

    #[test]
    fn sample_mt_hits_level_and_product((t, a, p) in mt_point()) {
        prop_assert!((t_level(&p) - t).abs() <= 1e-10);
        prop_assert!((p.w3() * p.w4() - a).norm() <= 1e-12);
        prop_assert!(p.residual() <= 1e-9);
    }

    #[test]
    fn sphere_points_match_the_planar_map(th in 0.0..std::f64::consts::FRAC_PI_2, p1 in phase(), p2 in phase()) {
        let (z, w) = (Complex64::from_polar(th.cos(), p1), Complex64::from_polar(th.sin(), p2));
        let p = sphere_point(z, w).unwrap();
        prop_assert!((t_level(&p) - 1.0).abs() <= 1e-12);
        let m = eval_map(&p);
        let f = ahern_rudin(z, w);
        prop_assert!((m.c1 - f[0]).norm() <= 1e-12 && (m.c2 - f[1]).norm() <= 1e-12 && (m.c3 - f[2]).norm() <= 1e-12);
    }

    #[test]
    fn jacobian_vanishes_on_degenerate_products(which in 0usize..2, r3 in 0.3..3.0f64, p3 in phase(), w1 in complex(3.0)) {
        prop_assume!(w1.norm() > 0.3);
        let u = degeneracy_products()[which];
        let w3 = Complex64::from_polar(r3, p3);
        let p = QuadricPoint::from_chart(w1, w3, u / w3).unwrap();
        prop_assert!(eval_jacobian(&p).unwrap().value.norm() <= 1e-9);
    }

    #[test]
    fn jacobian_nonzero_away_from_degenerate_products(p in quadric_point()) {
        prop_assume!(dist_to_degeneracy(p.w3() * p.w4()) > 1e-3);
        prop_assert!(eval_jacobian(&p).unwrap().value.norm() > 1e-9);
    }

    #[test]
    fn min_g_is_a_lower_bound(p in 1e-3..5.0f64, q in 1e-3..5.0f64, x in 1e-9..=10.0f64, y in 1e-9..=10.0f64) {
        let (m, (sx, sy)) = min_g(p, q).unwrap();
        prop_assert!(g(p, q, x, y) >= m - 1e-12);
        prop_assert!((g(p, q, sx, sy) - m).abs() <= 1e-12 * m);
    }

    #[test]
    fn jacobian_positive_below_tau((_t, _a, p) in mt_point()) {
        prop_assert!(eval_jacobian(&p).unwrap().value.norm() > 0.0);
    }
}

// ---------------------------------------------------------------- fiber

proptest! {
    #![proptest_config(cfg(10_000))]

    #[test]
    fn fibers_below_tau_have_three_points((_t, _a, p) in mt_point()) {
        prop_assume!(p.w1().norm() > 1e-6 && p.w3().norm() > 1e-6);
        let f = fiber_of(&p);
        prop_assert_eq!(f.companions.len(), 2);
        for q in &f.companions {
            prop_assert!((q.w4() - p.w4()).norm() > 1e-6);
        }
        prop_assert!((f.companions[0].w4() - f.companions[1].w4()).norm() > 1e-6);
        prop_assert!(f.max_image_gap() <= 1e-9 * (1.0 + eval_map(&p).c3.norm()));
    }

    #[test]
    fn companion_roots_match_the_quadratic(p in quadric_point()) {
        let [r1, r2] = companion_w4(&p).unwrap();
        let [a2, a1, a0] = companion_quadratic(p.w3(), p.w4());
        let scale = 1.0 + (a1 / a2).norm() + (a0 / a2).norm();
        prop_assert!((r1 + r2 + a1 / a2).norm() <= 1e-10 * scale);
        prop_assert!((r1 * r2 - a0 / a2).norm() <= 1e-10 * scale);
    }

    #[test]
    fn closed_form_matches_cubic_oracle(p in quadric_point()) {
        let closed: Vec<Complex64> = fiber_of(&p).points().iter().map(|q| q.w4()).collect();
        let oracle = cubic_oracle(&p).unwrap();
        prop_assert!(hausdorff(&closed, &oracle) <= 1e-8 * (1.0 + p.w4().norm()));
    }
}

// ---------------------------------------------------------------- intervals

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn in_iv(iv: Interval, x: &BigRational) -> bool {
    rat(iv.lo) <= *x && *x <= rat(iv.hi)
}

/// An interval `[lo, lo + w]` and a member of it.
fn interval_member() -> impl Strategy<Value = (Interval, f64)> {
    (-1e3..1e3f64, prop_oneof![Just(0.0), 0.0..1e-6f64, 0.0..10.0f64], 0.0..=1.0f64).prop_map(|(lo, w, s)| {
        let hi = lo + w;
        let x = (lo + s * w).clamp(lo, hi);
        (Interval::new(lo, hi), x)
    })
}

fn box_member() -> impl Strategy<Value = (ComplexBox, Complex64)> {
    (interval_member(), interval_member()).prop_map(|((re, x), (im, y))| (ComplexBox::new(re, im), c(x, y)))
}

proptest! {
    #![proptest_config(cfg(100_000))]

    #[test]
    fn real_ops_enclose((a, x) in interval_member(), (b, y) in interval_member()) {
        let (rx, ry) = (rat(x), rat(y));
        prop_assert!(in_iv(a + b, &(&rx + &ry)));
        prop_assert!(in_iv(a - b, &(&rx - &ry)));
        prop_assert!(in_iv(a * b, &(&rx * &ry)));
        prop_assert!(in_iv(a.sqr(), &(&rx * &rx)));
        if !b.contains_zero() {
            prop_assert!(in_iv(a / b, &(&rx / &ry)));
        }
        // lo ≤ √x ≤ hi  ⇔  lo² ≤ x ≤ hi² for lo ≥ 0.
        let (lo, hi) = (a.lo.abs().min(a.hi.abs()), a.lo.abs().max(a.hi.abs()));
        let m = x.abs().clamp(lo, hi);
        let root = Interval::new(lo, hi).sqrt();
        let rm = rat(m);
        prop_assert!(root.lo >= 0.0 && rat(root.lo) * rat(root.lo) <= rm && rm <= rat(root.hi) * rat(root.hi));
    }

    #[test]
    fn complex_ops_enclose((a, z) in box_member(), (b, w) in box_member()) {
        let (zr, zi, wr, wi) = (rat(z.re), rat(z.im), rat(w.re), rat(w.im));
        let inside = |bx: ComplexBox, re: &BigRational, im: &BigRational| in_iv(bx.re, re) && in_iv(bx.im, im);
        prop_assert!(inside(a + b, &(&zr + &wr), &(&zi + &wi)));
        prop_assert!(inside(a - b, &(&zr - &wr), &(&zi - &wi)));
        prop_assert!(inside(a * b, &(&zr * &wr - &zi * &wi), &(&zr * &wi + &zi * &wr)));
        let n2 = &zr * &zr + &zi * &zi;
        prop_assert!(in_iv(a.norm_sqr(), &n2));
        let d = &wr * &wr + &wi * &wi;
        if !(b.norm_sqr().contains_zero()) && !d.is_zero() {
            let q = a / b;
            prop_assert!(inside(q, &((&zr * &wr + &zi * &wi) / &d), &((&zi * &wr - &zr * &wi) / &d)));
        }
        // Both square roots of z lie in the union of the two returned boxes.
        let s = z.sqrt();
        let (p, m) = a.sqrt_pair();
        let slack = 1e-15 * (1.0 + s.norm());
        let near = |bx: ComplexBox, v: Complex64| {
            v.re >= bx.re.lo - slack && v.re <= bx.re.hi + slack && v.im >= bx.im.lo - slack && v.im <= bx.im.hi + slack
        };
        for v in [s, -s] {
            prop_assert!(near(p, v) || near(m, v));
        }
    }
}

// ---------------------------------------------------------------- certify

fn in_e_box() -> impl Strategy<Value = Complex64> {
    let k = DomainConstants::get();
    let half = k.tau / 2.0;
    let minor = (half * half - 0.25).sqrt();
    (0.5 - half..0.5 + half, -minor..minor).prop_map(|(x, y)| c(x, y))
}

proptest! {
    #![proptest_config(cfg(100_000))]

    #[test]
    fn companion_satisfies_pair_relation(a in in_e_box(), plus in any::<bool>()) {
        let br = if plus { Branch::Plus } else { Branch::Minus };
        prop_assert!(pair_relation(a, companion_a(a, br)).norm() <= 1e-10);
    }

    #[test]
    fn companion_is_never_the_conjugate(a in in_e_box()) {
        for br in Branch::BOTH {
            prop_assert!((companion_a(a, br) - a.conj()).norm() > 0.0);
        }
    }
}

proptest! {
    #![proptest_config(cfg(10_000))]

    #[test]
    fn branches_lie_in_point_enclosure(a in in_e_box()) {
        let enc = ab_enclosure(ComplexBox::point(a));
        for br in Branch::BOTH {
            if let Ok(v) = ab_product(a, br) {
                // The float value carries its own rounding error.
                let slack = 1e-9 * (1.0 + v.ab.abs());
                prop_assert!(enc.lo - slack <= v.ab && v.ab <= enc.hi + slack, "{:?} {:?}", enc, v);
            }
        }
    }

    #[test]
    fn fiber_companions_give_companion_products((_t, a, p) in mt_point()) {
        let from_fiber: Vec<Complex64> = companion_w4(&p).unwrap().iter().map(|r| r * p.w3()).collect();
        let direct: Vec<Complex64> = Branch::BOTH.iter().map(|&b| companion_a(a, b)).collect();
        prop_assert!(hausdorff(&from_fiber, &direct) <= 1e-10 * (1.0 + a.norm()));
    }
}

#[test]
fn smallest_conjugate_gap_is_reported() {
    use rand::{Rng, SeedableRng};
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let k = DomainConstants::get();
    let half = k.tau / 2.0;
    let minor = (half * half - 0.25).sqrt();
    let mut min = f64::INFINITY;
    for _ in 0..100_000 {
        let a = c(r.gen_range(0.5 - half..0.5 + half), r.gen_range(-minor..minor));
        for br in Branch::BOTH {
            min = min.min((companion_a(a, br) - a.conj()).norm());
        }
    }
    println!("min |a^ - conj(a)| over 1e5 samples: {min:.6}");
    assert!(min > 0.0);
}

#[test]
fn certification_is_monotone() {
    let bounds = [1.0, 1.1, 1.138];
    let margins = [0.02, 0.05, 0.1];
    let certified = |b: f64, m: f64| {
        certify_lower_bound(&EllipseDomain::with_margin(m), b, &CertifyConfig::default())
            .unwrap()
            .certified
    };
    for (i, &b) in bounds.iter().enumerate() {
        for (j, &m) in margins.iter().enumerate() {
            if certified(b, m) {
                for &b2 in &bounds[..=i] {
                    for &m2 in &margins[j..] {
                        assert!(certified(b2, m2), "({b}, {m}) certified but ({b2}, {m2}) not");
                    }
                }
            }
        }
    }
    assert!(certified(1.138, 0.02));
}

#[test]
fn queue_order_does_not_change_the_outcome() {
    let dom = EllipseDomain::with_margin(0.02);
    for (bound, sem) in [(1.138, AbSemantics::Admissible), (1.0, AbSemantics::Unrestricted)] {
        let run = |q| {
            certify_lower_bound(
                &dom,
                bound,
                &CertifyConfig {
                    queue_order: q,
                    semantics: sem,
                    ..Default::default()
                },
            )
            .unwrap()
        };
        let (w, l) = (run(QueueOrder::WidestFirst), run(QueueOrder::Lexicographic));
        assert_eq!(w.certified, l.certified);
        assert_eq!(w.verdict, l.verdict);
        let key = |v: &[ComplexBox]| {
            let mut k: Vec<[u64; 4]> =
                v.iter().map(|b| [b.re.lo.to_bits(), b.re.hi.to_bits(), b.im.lo.to_bits(), b.im.hi.to_bits()]).collect();
            k.sort_unstable();
            k
        };
        assert_eq!(key(&w.unresolved_boxes), key(&l.unresolved_boxes));
    }
}

// ---------------------------------------------------------------- armaps

fn gauss() -> impl Strategy<Value = GaussianRational> {
    (-5i64..=5, -5i64..=5, 1i64..=4).prop_map(|(re, im, den)| GaussianRational::from_fractions(re, den, im, den))
}

/// Monomials `z^α z̄^β w^γ w̄^δ` with `α+γ = p`, `β+δ = q`, `αβ = γδ = 0` are
/// harmonic; random combinations of them and of radial harmonics.
fn harmonic(p: u32, q: u32) -> impl Strategy<Value = SparseHermitianPolynomial> {
    let mut monos: Vec<Exponents> = Vec::new();
    for a in 0..=p {
        for b in 0..=q {
            let e = [a, b, p - a, q - b];
            if e[0] * e[1] == 0 && e[2] * e[3] == 0 {
                monos.push(e);
            }
        }
    }
    let n = monos.len();
    (proptest::collection::vec(gauss(), n), gauss()).prop_map(move |(cs, r)| {
        let mut poly = SparseHermitianPolynomial::from_terms(monos.iter().copied().zip(cs));
        if p == q {
            poly = &poly + &radial_harmonic(p).scale(&r);
        }
        poly
    })
}

fn parts() -> impl Strategy<Value = Vec<Part>> {
    proptest::collection::vec((1u32..=3, 0u32..=3), 1..=3).prop_flat_map(|degs| {
        degs.into_iter()
            .map(|(p, q)| harmonic(p, q).prop_map(move |h| Part::new(h, p, q)))
            .collect::<Vec<_>>()
    })
}

fn small_poly() -> impl Strategy<Value = SparseHermitianPolynomial> {
    proptest::collection::vec(((0u32..=2, 0u32..=2, 0u32..=2, 0u32..=2), gauss()), 0..=4)
        .prop_map(|ts| SparseHermitianPolynomial::from_terms(ts.into_iter().map(|((a, b, c, d), k)| ([a, b, c, d], k))))
}

fn magnitude(p: &SparseHermitianPolynomial, v: [Complex64; 4]) -> f64 {
    p.poly()
        .terms()
        .map(|(e, k)| k.to_complex64().norm() * e.iter().zip(v).map(|(&n, x)| x.norm().powi(n as i32)).product::<f64>())
        .sum()
}

proptest! {
    #![proptest_config(cfg(100))]

    #[test]
    fn weighted_sums_stay_harmonic(ps in parts()) {
        prop_assert!(laplacian(&weighted_sum(&ps).unwrap()).is_zero());
        let q = ps.iter().fold(SparseHermitianPolynomial::zero(), |acc, pt| &acc + &pt.q);
        prop_assert!(laplacian(&q).is_zero());
    }

    #[test]
    fn extend_is_a_ring_homomorphism(a in small_poly(), b in small_poly()) {
        prop_assert_eq!(extend(&(&a * &b)), &extend(&a) * &extend(&b));
        prop_assert_eq!(extend(&(&a + &b)), &extend(&a) + &extend(&b));
    }

    #[test]
    fn radial_parts_give_divisible_p(cs in proptest::collection::vec(gauss(), 1..=4), t in 1.42..3.0f64) {
        let parts: Vec<Part> = cs
            .iter()
            .enumerate()
            .filter(|(_, k)| !k.is_zero())
            .map(|(i, k)| {
                let d = i as u32 + 1;
                Part::new(radial_harmonic(d).scale(k), d, d)
            })
            .collect();
        prop_assume!(!parts.is_empty());
        let p = build_P(&parts).unwrap();
        prop_assert!(divisible_by_conj(&p));
        let u = three_point_witness(t).unwrap()[0].w1().re;
        prop_assert!(collision_check(&p, u).collide);
    }

    #[test]
    fn exact_evaluation_matches_float(ps in parts(), pts in proptest::collection::vec((-8i64..=8, -8i64..=8, -8i64..=8, -8i64..=8), 100)) {
        let p = build_P(&ps).unwrap();
        for (a, b, cc, d) in pts {
            // Dyadic points so that the float input is exact.
            let q = |re: i64, im: i64| GaussianRational::from_fractions(re, 4, im, 4);
            let (z, w) = (q(a, b), q(cc, d));
            let exact = p.poly().eval_exact(&[q(a, b), q(a, -b), q(cc, d), q(cc, -d)]).to_complex64();
            let (zf, wf) = (z.to_complex64(), w.to_complex64());
            let approx = p.eval(zf, wf);
            let bound = 64.0 * f64::EPSILON * magnitude(&p, [zf, zf.conj(), wf, wf.conj()]);
            prop_assert!((exact - approx).norm() <= bound + f64::MIN_POSITIVE, "{exact} vs {approx}");
        }
    }
}

proptest! {
    #![proptest_config(cfg(10_000))]

    #[test]
    fn g_of_the_planar_map_is_the_extended_map(p in quadric_point()) {
        let a = eval_G(&ahern_rudin_p(), &p);
        let b = eval_map(&p);
        prop_assert!(a.distance(&b) <= 1e-12 * (1.0 + b.c3.norm()));
    }
}
