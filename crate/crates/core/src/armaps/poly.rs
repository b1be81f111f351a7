use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gauss::GaussianRational;
use crate::Complex64;

/// Exponent tuple of a monomial in four variables.
pub type Exponents = [u32; 4];

/// Sparse polynomial in four variables with Gaussian-rational coefficients.
///
/// Terms are kept in a `BTreeMap`, so iteration and serialisation follow
/// lexicographic exponent order, and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly4 {
    terms: BTreeMap<Exponents, GaussianRational>,
}

impl Poly4 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(e: Exponents, c: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, GaussianRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponents, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponents) -> Option<&GaussianRational> {
        self.terms.get(e)
    }

    pub fn scale(&self, k: &GaussianRational) -> Poly4 {
        Poly4::from_terms(self.terms.iter().map(|(e, c)| (*e, c * k)))
    }

    /// Floating-point evaluation at `v`.
    pub fn eval(&self, v: [Complex64; 4]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: Complex64 = (0..4).map(|k| v[k].powu(e[k])).product();
                c.to_complex64() * mono
            })
            .sum()
    }

    /// Exact evaluation at Gaussian-rational `v`.
    pub fn eval_exact(&self, v: &[GaussianRational; 4]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for k in 0..4 {
                for _ in 0..e[k] {
                    m = &m * &v[k];
                }
            }
            acc += &m;
        }
        acc
    }

    pub(crate) fn map_terms<F: FnMut(&Exponents, &GaussianRational, &mut Poly4)>(&self, mut f: F) -> Poly4 {
        let mut out = Poly4::zero();
        for (e, c) in &self.terms {
            f(e, c, &mut out);
        }
        out
    }

    /// Formats with the given variable names.
    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: [&str; 4]) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for k in 0..4 {
                match e[k] {
                    0 => {}
                    1 => write!(f, "*{}", names[k])?,
                    n => write!(f, "*{}^{n}", names[k])?,
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly4> for &'a Poly4 {
    type Output = Poly4;
    fn add(self, r: &Poly4) -> Poly4 {
        let mut out = self.clone();
        for (e, c) in &r.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly4> for &'a Poly4 {
    type Output = Poly4;
    fn sub(self, r: &Poly4) -> Poly4 {
        let mut out = self.clone();
        for (e, c) in &r.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for Poly4 {
    type Output = Poly4;
    fn neg(self) -> Poly4 {
        Poly4::from_terms(self.terms.into_iter().map(|(e, c)| (e, -c)))
    }
}

impl<'a> Mul<&'a Poly4> for &'a Poly4 {
    type Output = Poly4;
    fn mul(self, r: &Poly4) -> Poly4 {
        let mut out = Poly4::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &r.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

macro_rules! poly_newtype {
    ($name:ident, $names:expr) => {
        impl $name {
            pub fn zero() -> Self {
                $name(Poly4::zero())
            }

            pub fn from_terms<I: IntoIterator<Item = (Exponents, GaussianRational)>>(terms: I) -> Self {
                $name(Poly4::from_terms(terms))
            }

            pub fn poly(&self) -> &Poly4 {
                &self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.is_zero()
            }

            pub fn scale(&self, k: &GaussianRational) -> Self {
                $name(self.0.scale(k))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, $names)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, $names)
            }
        }

        impl<'a> Add<&'a $name> for &'a $name {
            type Output = $name;
            fn add(self, r: &$name) -> $name {
                $name(&self.0 + &r.0)
            }
        }

        impl<'a> Sub<&'a $name> for &'a $name {
            type Output = $name;
            fn sub(self, r: &$name) -> $name {
                $name(&self.0 - &r.0)
            }
        }

        impl<'a> Mul<&'a $name> for &'a $name {
            type Output = $name;
            fn mul(self, r: &$name) -> $name {
                $name(&self.0 * &r.0)
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(-self.0)
            }
        }
    };
}

/// Polynomial in `(z, z̄, w, w̄)`; exponents `(α, β, γ, δ)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseHermitianPolynomial(pub Poly4);

/// Polynomial in `(w₁, w₂, w₃, w₄)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HolomorphicPolynomial4(pub Poly4);

poly_newtype!(SparseHermitianPolynomial, ["z", "zb", "w", "wb"]);
poly_newtype!(HolomorphicPolynomial4, ["w1", "w2", "w3", "w4"]);

impl SparseHermitianPolynomial {
    /// `(p, q)` if every term has holomorphic degree `α + γ = p` and
    /// antiholomorphic degree `β + δ = q`.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.0.terms().map(|(e, _)| (e[0] + e[2], e[1] + e[3]));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn has_bidegree(&self, p: u32, q: u32) -> bool {
        self.is_zero() || self.bidegree() == Some((p, q))
    }

    /// True if every term has `α = β` and `γ = δ`, i.e. the polynomial is a
    /// function of `|z|²` and `|w|²` alone.
    pub fn is_radial(&self) -> bool {
        self.0.terms().all(|(e, _)| e[0] == e[1] && e[2] == e[3])
    }

    /// Evaluates at `(z, w)`, feeding `z̄`, `w̄` as conjugates.
    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.0.eval([z, z.conj(), w, w.conj()])
    }
}

impl HolomorphicPolynomial4 {
    pub fn eval(&self, w: [Complex64; 4]) -> Complex64 {
        self.0.eval(w)
    }
}
