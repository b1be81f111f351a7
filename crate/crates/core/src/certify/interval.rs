//! Outward-rounded real intervals and rectangular complex boxes.
//!
//! Every primitive rounds its result to nearest and then steps one ulp
//! outward with `next_down`/`next_up`. IEEE-754 `+ − × ÷ √` are correctly
//! rounded, so the true result lies within half an ulp of the computed one
//! and the stepped bounds enclose it.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::Complex64;

#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

#[inline]
fn down(x: f64) -> f64 {
    x.next_down()
}

#[inline]
fn up(x: f64) -> f64 {
    x.next_up()
}

impl Interval {
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    /// Panics if `lo > hi` or either bound is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Degenerate interval `[x, x]`; exact for representable `x`.
    pub const fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Bounds that may be NaN collapse to the whole line.
    fn checked(lo: f64, hi: f64) -> Self {
        if lo.is_nan() || hi.is_nan() {
            Self::ENTIRE
        } else {
            Interval { lo, hi }
        }
    }

    pub fn is_entire(&self) -> bool {
        self.lo == f64::NEG_INFINITY && self.hi == f64::INFINITY
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        if self.lo.is_finite() && self.hi.is_finite() {
            self.lo + (self.hi - self.lo) / 2.0
        } else {
            0.0
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Intersection of two enclosures of the same quantity. Falls back to
    /// `self` if rounding made them disjoint.
    pub fn meet(self, other: Interval) -> Interval {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Interval { lo, hi }
        } else {
            self
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0.0
    }

    /// Enclosure of `x²`.
    pub fn sqr(self) -> Interval {
        let (a, b) = (self.lo * self.lo, self.hi * self.hi);
        if self.lo >= 0.0 {
            Self::checked(down(a), up(b))
        } else if self.hi <= 0.0 {
            Self::checked(down(b), up(a))
        } else {
            Self::checked(0.0, up(a.max(b)))
        }
    }

    /// Enclosure of `√x` over the nonnegative part; negative lower bounds
    /// are clamped to zero.
    pub fn sqrt(self) -> Interval {
        if self.hi < 0.0 {
            return Self::ENTIRE;
        }
        let lo = if self.lo <= 0.0 { 0.0 } else { down(self.lo.sqrt()).max(0.0) };
        Self::checked(lo, up(self.hi.sqrt()))
    }

    /// Clamps the lower bound at zero; for quantities known to be nonnegative.
    pub fn nonneg(self) -> Interval {
        Interval {
            lo: self.lo.max(0.0),
            hi: self.hi.max(0.0),
        }
    }

    pub fn scale(self, k: f64) -> Interval {
        self * Interval::point(k)
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, r: Interval) -> Interval {
        Interval::checked(down(self.lo + r.lo), up(self.hi + r.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, r: Interval) -> Interval {
        Interval::checked(down(self.lo - r.hi), up(self.hi - r.lo))
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, r: Interval) -> Interval {
        let p = [self.lo * r.lo, self.lo * r.hi, self.hi * r.lo, self.hi * r.hi];
        if p.iter().any(|x| x.is_nan()) {
            // 0 × ∞
            return Interval::ENTIRE;
        }
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::checked(down(lo), up(hi))
    }
}

impl Div for Interval {
    type Output = Interval;
    /// Division by an interval containing zero yields the whole line.
    fn div(self, r: Interval) -> Interval {
        if r.contains_zero() {
            return Interval::ENTIRE;
        }
        let q = [self.lo / r.lo, self.lo / r.hi, self.hi / r.lo, self.hi / r.hi];
        if q.iter().any(|x| x.is_nan()) {
            return Interval::ENTIRE;
        }
        let lo = q.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::checked(down(lo), up(hi))
    }
}

/// Axis-aligned rectangle `re × im` in `C`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

impl fmt::Debug for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}

impl ComplexBox {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexBox { re, im }
    }

    pub fn point(z: Complex64) -> Self {
        ComplexBox {
            re: Interval::point(z.re),
            im: Interval::point(z.im),
        }
    }

    pub fn from_bounds(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Self {
        ComplexBox {
            re: Interval::new(re_lo, re_hi),
            im: Interval::new(im_lo, im_hi),
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.re.contains(z.re) && self.im.contains(z.im)
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(self.re.mid(), self.im.mid())
    }

    pub fn width(&self) -> f64 {
        self.re.width().max(self.im.width())
    }

    pub fn hull(self, o: ComplexBox) -> ComplexBox {
        ComplexBox {
            re: self.re.hull(o.re),
            im: self.im.hull(o.im),
        }
    }

    pub fn conj(self) -> ComplexBox {
        ComplexBox { re: self.re, im: -self.im }
    }

    /// `|z|²`.
    pub fn norm_sqr(self) -> Interval {
        (self.re.sqr() + self.im.sqr()).nonneg()
    }

    /// `|z|`.
    pub fn abs(self) -> Interval {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, k: f64) -> ComplexBox {
        ComplexBox {
            re: self.re.scale(k),
            im: self.im.scale(k),
        }
    }

    /// Multiplication by a complex constant, which is taken as exact.
    pub fn mul_const(self, k: Complex64) -> ComplexBox {
        self * ComplexBox::point(k)
    }

    pub fn add_const(self, k: Complex64) -> ComplexBox {
        self + ComplexBox::point(k)
    }

    pub fn sqr(self) -> ComplexBox {
        ComplexBox {
            re: self.re.sqr() - self.im.sqr(),
            im: (self.re * self.im).scale(2.0),
        }
    }

    /// Splits along the wider side.
    pub fn bisect(self) -> (ComplexBox, ComplexBox) {
        if self.re.width() >= self.im.width() {
            let m = self.re.mid();
            (
                ComplexBox::new(Interval::new(self.re.lo, m), self.im),
                ComplexBox::new(Interval::new(m, self.re.hi), self.im),
            )
        } else {
            let m = self.im.mid();
            (
                ComplexBox::new(self.re, Interval::new(self.im.lo, m)),
                ComplexBox::new(self.re, Interval::new(m, self.im.hi)),
            )
        }
    }

    /// Enclosures `(S, −S)` whose union contains both square roots of every
    /// member.
    ///
    /// On the closed upper half plane the square root with nonnegative
    /// imaginary part is `(√((|z|+x)/2), √((|z|−x)/2))`, continuous up to the
    /// real axis; on the closed lower half plane the one with nonpositive
    /// imaginary part is `(√((|z|+x)/2), −√((|z|−x)/2))`. For a box crossing
    /// the real axis both halves are enclosed. When the crossing is on the
    /// positive side the halves glue into one continuous determination; on
    /// the negative side the lower half is negated so the two pieces meet near
    /// `+i√|x|`. `S` is the hull of the two pieces.
    pub fn sqrt_pair(self) -> (ComplexBox, ComplexBox) {
        let s = if self.im.lo >= 0.0 {
            self.sqrt_half(true)
        } else if self.im.hi <= 0.0 {
            self.sqrt_half(false)
        } else {
            let upper = ComplexBox::new(self.re, Interval::new(0.0, self.im.hi)).sqrt_half(true);
            let lower = ComplexBox::new(self.re, Interval::new(self.im.lo, 0.0)).sqrt_half(false);
            if self.re.lo > 0.0 {
                upper.hull(lower)
            } else {
                upper.hull(-lower)
            }
        };
        (s, -s)
    }

    /// Principal square root over a box inside one closed half-plane.
    fn sqrt_half(self, upper: bool) -> ComplexBox {
        let r = self.abs();
        let y = if upper { self.im } else { -self.im };
        let mut u = ((r + self.re).scale(0.5)).nonneg().sqrt();
        let mut v = ((r - self.re).scale(0.5)).nonneg().sqrt();
        // v = |y|/(2u) and u = |y|/(2v) avoid the square root's blow-up near 0.
        if u.lo > 0.0 {
            v = v.meet((y / u.scale(2.0)).nonneg());
        }
        if v.lo > 0.0 {
            u = u.meet((y / v.scale(2.0)).nonneg());
        }
        ComplexBox {
            re: u,
            im: if upper { v } else { -v },
        }
    }
}

impl Neg for ComplexBox {
    type Output = ComplexBox;
    fn neg(self) -> ComplexBox {
        ComplexBox {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Add for ComplexBox {
    type Output = ComplexBox;
    fn add(self, r: ComplexBox) -> ComplexBox {
        ComplexBox {
            re: self.re + r.re,
            im: self.im + r.im,
        }
    }
}

impl Sub for ComplexBox {
    type Output = ComplexBox;
    fn sub(self, r: ComplexBox) -> ComplexBox {
        ComplexBox {
            re: self.re - r.re,
            im: self.im - r.im,
        }
    }
}

impl Mul for ComplexBox {
    type Output = ComplexBox;
    fn mul(self, r: ComplexBox) -> ComplexBox {
        ComplexBox {
            re: self.re * r.re - self.im * r.im,
            im: self.re * r.im + self.im * r.re,
        }
    }
}

impl Div for ComplexBox {
    type Output = ComplexBox;
    fn div(self, r: ComplexBox) -> ComplexBox {
        let n = r.norm_sqr();
        let num = self * r.conj();
        ComplexBox {
            re: num.re / n,
            im: num.im / n,
        }
    }
}
