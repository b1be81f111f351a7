//! Validated numerics for the holomorphic extension of the Ahern-Rudin map to
//! the affine quadric `Q³ = {w₁w₂ + w₃w₄ = 1}` and its level sets
//! `M_t³ = {|w₁|² + |w₂|² + |w₃|² + |w₄|² = 2t} ∩ Q³`.
//!
//! The crate is organised by what each part computes:
//!
//! * [`quadric`]: coordinates, membership, the map `F̃`, its Jacobian, the
//!   degeneracy witnesses and point sampling on `M_t³`.
//! * [`fiber`]: closed-form fibers of `F̃`, an independent cubic root oracle,
//!   companion levels and the three-point fiber witnesses.
//! * [`certify`]: outward-rounded interval arithmetic and the branch-and-bound
//!   certifier for the `AB ≥ τ²` inequality over the ellipse `E`.
//! * [`armaps`]: exact Gaussian-rational polynomial algebra for the
//!   generalized maps `g(z, w) = (z, w, P)`.
//! * [`cli`]: configuration, JSON reports and the subcommands behind the
//!   `qcert` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod armaps;
pub mod certify;
pub mod cli;
pub mod fiber;
pub mod pointio;
pub mod quadric;

pub use num_complex::Complex64;

/// Double-precision complex number used for every map evaluation.
pub type ComplexScalar = Complex64;

/// The imaginary unit.
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Shorthand constructor.
#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
