use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::Complex64;

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    /// `re_num/re_den + i·im_num/im_den`. Panics on a zero denominator.
    pub fn from_fractions(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }

    pub fn real(q: BigRational) -> Self {
        GaussianRational { re: q, im: BigRational::zero() }
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigRational::from_integer(BigInt::from(k));
        GaussianRational {
            re: &self.re * &k,
            im: &self.im * &k,
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        GaussianRational {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) if self.im.is_one() => write!(f, "i"),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => write!(f, "({} + {}i)", self.re, self.im),
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, r: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &r.re,
            im: &self.im + &r.im,
        }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, r: GaussianRational) -> GaussianRational {
        &self + &r
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, r: &GaussianRational) {
        self.re += &r.re;
        self.im += &r.im;
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, r: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &r.re,
            im: &self.im - &r.im,
        }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, r: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &r.re - &self.im * &r.im,
            im: &self.re * &r.im + &self.im * &r.re,
        }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, r: GaussianRational) -> GaussianRational {
        &self * &r
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = GaussianRational::from_fractions(1, 2, 1, 3);
        let b = GaussianRational::from_fractions(-2, 1, 3, 4);
        // (1/2 + i/3)(−2 + 3i/4) = −1 − 1/4 + i(3/8 − 2/3)
        assert_eq!(&a * &b, GaussianRational::from_fractions(-5, 4, -7, 24));
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), GaussianRational::from_ints(-1, 0));
        assert_eq!(a.to_string(), "(1/2 + 1/3i)");
        assert_eq!(GaussianRational::i().to_string(), "i");
    }
}
