//! Interval enclosures of `â`, `AB` and the gap `Φ_b` over a box of `a` values.

use super::interval::{ComplexBox, Interval};
use crate::c;

/// Enclosures of both companion values `â` for every `a` in the box.
///
/// The two returned boxes come from `±S`, where `S ∪ −S` covers both square
/// roots of the radicand; together they contain `â` for both branches at
/// every member, though not necessarily one branch per box.
pub fn companion_a_enclosure(b: ComplexBox) -> [ComplexBox; 2] {
    let rad = b.sqr().mul_const(c(0.0, 6.0)) - b.mul_const(c(2.0, 6.0));
    let rad = rad.add_const(c(1.0, 0.0));
    let (s, m) = rad.sqrt_pair();
    let base = b.mul_const(c(1.0, -1.0)).add_const(c(-1.0, 2.0));
    // 1/(2i − 2) = −(1 + i)/4 exactly.
    let inv = c(-0.25, -0.25);
    [(base + s).mul_const(inv), (base + m).mul_const(inv)]
}

/// Per-branch enclosures of `D`, `E` and `Φ_b`.
#[derive(Debug, Clone, Copy)]
pub struct BranchGap {
    pub d: Interval,
    pub e: Interval,
    pub phi: Interval,
}

impl BranchGap {
    /// `D` and `E` have strictly opposite signs on the whole box: `k < 0`, so
    /// no pair in the box is admissible.
    pub fn inadmissible(&self) -> bool {
        (self.d.is_negative() && self.e.is_positive()) || (self.d.is_positive() && self.e.is_negative())
    }

    /// `D` and `E` have strictly equal signs on the whole box.
    pub fn admissible(&self) -> bool {
        (self.d.is_negative() && self.e.is_negative()) || (self.d.is_positive() && self.e.is_positive())
    }
}

fn branch_terms(b: ComplexBox, a_hat: ComplexBox) -> (Interval, Interval, Interval) {
    let one = c(1.0, 0.0);
    let a2 = b.norm_sqr();
    let d = a_hat.norm_sqr() - a2;
    let r = (a_hat.re - b.re).scale(2.0);
    let one_minus_a = ComplexBox::point(one) - b;
    let one_minus_hat = ComplexBox::point(one) - a_hat;
    let e = one_minus_a.norm_sqr() - one_minus_hat.norm_sqr();
    (d, e, r)
}

/// Encloses `D`, `E` and `Φ_b = R(|1−a|²D + |a|²E) − b·D·E` for both square
/// root pieces over the box.
pub fn gap_enclosure(b: ComplexBox, bound: f64) -> [BranchGap; 2] {
    let one_minus_a = ComplexBox::point(c(1.0, 0.0)) - b;
    let p = one_minus_a.norm_sqr();
    let q = b.norm_sqr();
    companion_a_enclosure(b).map(|h| {
        let (d, e, r) = branch_terms(b, h);
        let phi = r * (p * d + q * e) - Interval::point(bound) * d * e;
        BranchGap { d, e, phi }
    })
}

/// Encloses `AB` on each square-root piece over the box; a piece is the
/// whole line when one of its denominators may vanish.
pub fn ab_piece_enclosures(b: ComplexBox) -> [Interval; 2] {
    companion_a_enclosure(b).map(|h| {
        let (d, e, r) = branch_terms(b, h);
        if d.contains_zero() || e.contains_zero() {
            return Interval::ENTIRE;
        }
        let one = Interval::point(1.0);
        let n = (one - b.re.scale(2.0)) * h.norm_sqr() - (one - h.re.scale(2.0)) * b.norm_sqr();
        (r / d) * (n / e)
    })
}

/// Encloses `AB(a, branch)` for every `a` in the box and both branches.
///
/// Returns the whole line if any denominator enclosure contains zero.
pub fn ab_enclosure(b: ComplexBox) -> Interval {
    let [p, m] = ab_piece_enclosures(b);
    if p.is_entire() || m.is_entire() {
        return Interval::ENTIRE;
    }
    p.hull(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{ab_product, companion_a, gap, Branch};
    use crate::quadric::{degeneracy_products, tau_sq};
    use crate::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn point_box_is_tight() {
        let iv = ab_enclosure(ComplexBox::point(c(0.5, 0.0)));
        assert!(iv.contains(ab_product(c(0.5, 0.0), Branch::Plus).unwrap().ab));
        assert!(iv.width() <= 1e-9, "{iv:?}");
        assert!((iv.mid() - 1.5).abs() < 1e-9);
    }

    #[test]
    fn small_box_near_center() {
        let r = 1e-3;
        let b = ComplexBox::from_bounds(0.5 - r, 0.5 + r, -r, r);
        let iv = ab_enclosure(b);
        assert!(iv.lo > 1.3 && iv.hi < 1.7, "{iv:?}");
        let tiny = ab_enclosure(ComplexBox::from_bounds(0.5 - 1e-5, 0.5 + 1e-5, -1e-5, 1e-5));
        assert!(tiny.lo >= 1.49 && tiny.hi <= 1.51, "{tiny:?}");
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let a = c(rng.gen_range(0.5 - r..=0.5 + r), rng.gen_range(-r..=r));
            for br in Branch::BOTH {
                assert!(iv.contains(ab_product(a, br).unwrap().ab));
            }
        }
    }

    #[test]
    fn box_around_degeneracy_product_is_entire() {
        let a0 = degeneracy_products()[0];
        let b = ComplexBox::from_bounds(a0.re - 1e-3, a0.re + 1e-3, a0.im - 1e-3, a0.im + 1e-3);
        assert!(ab_enclosure(b).is_entire());
    }

    #[test]
    fn branch_completeness_and_gap_containment() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let bound = tau_sq();
        for _ in 0..20_000 {
            let a = c(rng.gen_range(-0.1..1.1), rng.gen_range(-0.45..0.45));
            let pb = ComplexBox::point(a);
            let iv = ab_enclosure(pb);
            for br in Branch::BOTH {
                if let Ok(v) = ab_product(a, br) {
                    assert!(iv.contains(v.ab) || iv.is_entire());
                }
            }
            // A random sub-box containing a.
            let w: f64 = rng.gen_range(0.0..0.05);
            let b = ComplexBox::from_bounds(a.re - rng.gen_range(0.0..=w), a.re + rng.gen_range(0.0..=w), a.im - rng.gen_range(0.0..=w), a.im + rng.gen_range(0.0..=w));
            let hats = companion_a_enclosure(b);
            let gaps = gap_enclosure(b, bound);
            for br in Branch::BOTH {
                let h: Complex64 = companion_a(a, br);
                assert!(hats.iter().any(|hb| hb.contains(h)), "{b:?} {a} {h}");
                let g = gap(a, br, bound);
                assert!(gaps.iter().any(|gb| gb.phi.contains(g)), "{b:?} {a} {g}");
            }
        }
    }
}
