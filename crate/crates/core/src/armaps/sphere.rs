//! Does `Q` vanish somewhere on `S³ = {|z|² + |w|² = 1}`?
//!
//! For `Q` a polynomial in `|z|²` and `|w|²` the question reduces to whether
//! `q(x) = Q|_{|z|² = x, |w|² = 1−x}` has a root in `[0, 1]`, which is decided
//! exactly: a common real root of `Re q` and `Im q` is a root of their gcd,
//! and Sturm sequences count those in the interval. Anything else is sampled.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::SparseHermitianPolynomial;
use crate::{c, Complex64};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum SphereVerdict {
    /// Decided exactly on the radial subclass. `root` is a value of `|z|²`
    /// in `[0, 1]` where `Q` vanishes, accurate to 1e-15.
    Exact { nonvanishing: bool, root: Option<f64> },
    /// Probabilistic: `min_abs` is the smallest `|Q|` seen over `samples`
    /// uniform points of `S³`, attained at `argmin = (z, w)`.
    Sampled {
        nonvanishing: bool,
        samples: usize,
        min_abs: f64,
        #[serde(with = "pair")]
        argmin: (Complex64, Complex64),
    },
}

mod pair {
    use super::Complex64;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &(Complex64, Complex64), s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq([[v.0.re, v.0.im], [v.1.re, v.1.im]])
    }
}

impl SphereVerdict {
    pub fn nonvanishing(&self) -> bool {
        match self {
            SphereVerdict::Exact { nonvanishing, .. } | SphereVerdict::Sampled { nonvanishing, .. } => *nonvanishing,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SphereVerdict::Exact { .. })
    }
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
type Upoly = Vec<BigRational>;

fn trim(mut p: Upoly) -> Upoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn add_scaled(acc: &mut Upoly, p: &Upoly, k: &BigRational, shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, BigRational::zero());
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += c * k;
    }
}

fn eval(p: &Upoly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &Upoly) -> Upoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer((i as i64).into()))
            .collect(),
    )
}

fn rem(a: &Upoly, b: &Upoly) -> Upoly {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let k = r.last().unwrap() / lead;
        let shift = r.len() - b.len();
        add_scaled(&mut r, b, &-k, shift);
        r.pop();
        r = trim(r);
    }
    r
}

fn gcd(a: &Upoly, b: &Upoly) -> Upoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn sturm_chain(p: &Upoly) -> Vec<Upoly> {
    let mut chain = vec![p.clone(), derivative(p)];
    while !chain.last().unwrap().is_empty() {
        let n = chain.len();
        let r = rem(&chain[n - 2], &chain[n - 1]);
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain.pop();
    chain
}

fn sign_changes(chain: &[Upoly], x: &BigRational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct roots of `p` in `(a, b]`.
fn count_roots(chain: &[Upoly], a: &BigRational, b: &BigRational) -> usize {
    sign_changes(chain, a) - sign_changes(chain, b)
}

/// `(Re q, Im q)` for radial `Q`, with `x = |z|²`.
fn restrict(q: &SparseHermitianPolynomial) -> (Upoly, Upoly) {
    let mut re = Upoly::new();
    let mut im = Upoly::new();
    for (e, coef) in q.poly().terms() {
        let mut term: Upoly = vec![BigRational::one()];
        for _ in 0..e[2] {
            let mut next = term.clone();
            add_scaled(&mut next, &term, &-BigRational::one(), 1);
            term = next;
        }
        let shift = e[0] as usize;
        add_scaled(&mut re, &term, &coef.re, shift);
        add_scaled(&mut im, &term, &coef.im, shift);
    }
    (trim(re), trim(im))
}

fn exact_verdict(q: &SparseHermitianPolynomial) -> SphereVerdict {
    let (re, im) = restrict(q);
    let h = gcd(&re, &im);
    let zero = BigRational::zero();
    let one = BigRational::one();
    if h.is_empty() {
        return SphereVerdict::Exact { nonvanishing: false, root: Some(0.0) };
    }
    if eval(&h, &zero).is_zero() {
        return SphereVerdict::Exact { nonvanishing: false, root: Some(0.0) };
    }
    if eval(&h, &one).is_zero() {
        return SphereVerdict::Exact { nonvanishing: false, root: Some(1.0) };
    }
    let chain = sturm_chain(&h);
    if count_roots(&chain, &zero, &one) == 0 {
        return SphereVerdict::Exact { nonvanishing: true, root: None };
    }
    let (mut lo, mut hi) = (zero, one);
    let eps = BigRational::new(1.into(), (1i64 << 52).into());
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        if eval(&h, &mid).is_zero() {
            lo = mid.clone();
            hi = mid;
            break;
        }
        if count_roots(&chain, &lo, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let root = ((&lo + &hi) / BigRational::from_integer(2.into())).to_f64();
    SphereVerdict::Exact { nonvanishing: false, root }
}

/// Uniform point of `S³ ⊂ C²` by rejection from the unit 4-cube.
fn sphere_sample<R: Rng + ?Sized>(rng: &mut R) -> (Complex64, Complex64) {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            return (c(v[0] / n, v[1] / n), c(v[2] / n, v[3] / n));
        }
    }
}

/// Exact when `Q` is radial, sampled otherwise (seed 0).
pub fn nonvanishing_on_sphere(q: &SparseHermitianPolynomial, n_samples: usize) -> SphereVerdict {
    nonvanishing_on_sphere_seeded(q, n_samples, 0)
}

pub fn nonvanishing_on_sphere_seeded(q: &SparseHermitianPolynomial, n_samples: usize, seed: u64) -> SphereVerdict {
    if q.is_radial() {
        return exact_verdict(q);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = (f64::INFINITY, (c(0.0, 0.0), c(0.0, 0.0)));
    for _ in 0..n_samples {
        let (z, w) = sphere_sample(&mut rng);
        let v = q.eval(z, w).norm();
        if v < best.0 {
            best = (v, (z, w));
        }
    }
    SphereVerdict::Sampled {
        nonvanishing: n_samples > 0 && best.0 > 0.0,
        samples: n_samples,
        min_abs: best.0,
        argmin: best.1,
    }
}
