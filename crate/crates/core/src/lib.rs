//! Boundary interpolation for generalized Schur functions.
//!
//! The crate builds the coefficient matrix function `Θ` that parametrizes all
//! generalized Schur functions with a prescribed boundary expansion at a point
//! of the unit circle, counts negative squares of the kernel
//! `(1 - s(z) conj(s(w))) / (1 - z conj(w))`, and runs rigidity diagnostics
//! (Julia quotients, order-of-contact tests, horocycle checks) on rational
//! functions.
//!
//! Modules:
//!
//! * [`rational`]: polynomials, rational functions, Blaschke products,
//!   linear-fractional transforms and the Krein–Langer factorization.
//! * [`kernel`]: kernel evaluation, Gram matrices, Hermitian inertia and the
//!   sampled negative-squares estimator.
//! * [`interp`]: the boundary interpolation data, `Θ`, and the solution
//!   parametrization.
//! * [`rigidity`]: nontangential paths, contact orders and the rigidity
//!   verdicts, including the `s'(1) = α` family.
//!
//! Everything runs in `f64` complex arithmetic; comparisons go through
//! [`Tolerances`].
//!
//! Note that meromorphy is part of the definition of a generalized Schur
//! function: a function can have a kernel with finitely many negative
//! squares without being meromorphic. Only rational inputs are handled here,
//! so that situation never arises.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exec;
pub mod interp;
pub mod kernel;
pub mod matrix;
pub mod rational;
pub mod rigidity;

pub use error::{Error, Result};
pub use exec::Execution;
pub use interp::{InterpData, ThetaFn};
pub use kernel::{Inertia, SamplePlan};
pub use rational::{BlaschkeProduct, Mat2RF, Order, Poly, RationalFn};

/// Complex scalar used throughout.
pub type Cplx = num_complex::Complex64;

/// Largest polynomial degree accepted in a reduced rational function.
pub const MAX_DEGREE: usize = 64;

/// Numerical thresholds. All comparisons in the crate are relative to the
/// natural scale of the quantities involved.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Trailing-coefficient trimming, relative to the largest coefficient.
    pub trim: f64,
    /// Root matching and pole detection.
    pub root: f64,
    /// Unimodularity on the unit circle.
    pub circle: f64,
    /// Taylor coefficients counted as zero when finding orders of contact.
    pub order: f64,
    /// Hermitian symmetry of sampled matrices.
    pub herm: f64,
    /// Separation of `s1(z1)` from `tau0` for admissible parameters.
    pub admissible: f64,
    /// Relative width of the zero band when counting eigenvalue signs.
    pub inertia: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            trim: 1e-12,
            root: 1e-8,
            circle: 1e-9,
            order: 1e-7,
            herm: 1e-9,
            admissible: 1e-6,
            inertia: 1e-10,
        }
    }
}

/// Shorthand for a real number as a complex scalar.
#[inline]
pub fn re(x: f64) -> Cplx {
    Cplx::new(x, 0.0)
}
