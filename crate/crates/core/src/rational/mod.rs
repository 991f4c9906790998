//! Complex rational-function arithmetic and the transforms built on it.

mod blaschke;
mod mat2;
mod poly;
mod rational_fn;
pub mod roots;

pub use blaschke::BlaschkeProduct;
pub use mat2::{j_unitarity_residual, lft_scalar, mat2_mul, Mat2, Mat2RF};
pub use poly::{Poly, TRIM_REL};
pub use rational_fn::{BoundaryValue, Order, RationalFn};
pub use roots::RootCluster;

use crate::{Cplx, Error, Execution, Result, Tolerances};

/// Number of circle samples used for maximum-modulus checks.
pub const CIRCLE_SAMPLES: usize = 512;

/// `T_M(s)`; see [`Mat2RF::lft_apply`].
pub fn lft_apply(m: &Mat2RF, s: &RationalFn, tol: &Tolerances) -> Result<RationalFn> {
    m.lft_apply(s, tol)
}

/// Inverse transform; see [`Mat2RF::lft_invert`].
pub fn lft_invert(m: &Mat2RF, tol: &Tolerances) -> Result<Mat2RF> {
    m.lft_invert(tol)
}

/// Cayley transform `C(z) = (1 + z) / (1 - z)`.
pub fn cayley(z: Cplx) -> Result<Cplx> {
    let den = Cplx::new(1.0, 0.0) - z;
    if den == Cplx::new(0.0, 0.0) {
        return Err(Error::PoleAtOne);
    }
    Ok((Cplx::new(1.0, 0.0) + z) / den)
}

/// The matrix of the Cayley transform, `[[1, 1], [-1, 1]]`.
pub fn cayley_matrix() -> Mat2 {
    let one = Cplx::new(1.0, 0.0);
    [[one, one], [-one, one]]
}

/// `C ∘ s = (1 + s) / (1 - s)`; fails when `s ≡ 1`.
pub fn cayley_of_fn(s: &RationalFn, tol: &Tolerances) -> Result<RationalFn> {
    Mat2RF::from_constants(cayley_matrix()).lft_apply(s, tol)
}

/// Krein–Langer factorization `s = s0 / b`: `b` collects the poles of `s`
/// in the open disk (unimodular constant 1) and `s0 = s·b` is analytic on
/// the closed disk with `|s0| ≤ 1` on the circle.
pub fn krein_langer_factor(s: &RationalFn, tol: &Tolerances) -> Result<(RationalFn, BlaschkeProduct)> {
    let s = s.reduced(tol)?;
    let mut zeros = Vec::new();
    let mut den = s.den().clone();
    for cl in s.poles(tol) {
        let r = cl.center.norm();
        if (r - 1.0).abs() <= tol.root {
            return Err(Error::BoundaryPole(cl.center));
        }
        if r < 1.0 {
            for _ in 0..cl.multiplicity {
                zeros.push(cl.center);
                den = den.div_linear(cl.center).0;
            }
        }
    }
    let one = Cplx::new(1.0, 0.0);
    for a in &zeros {
        den = &den * &Poly::linear(one, -a.conj());
    }
    let s0 = RationalFn::new(s.num().clone(), den)?;
    let sup = s0.circle_sup(CIRCLE_SAMPLES, Execution::default());
    if sup > 1.0 + tol.circle {
        return Err(Error::NotGeneralizedSchur(sup));
    }
    let b = BlaschkeProduct::new(zeros, one, tol.circle.max(1e-12))?;
    Ok((s0, b))
}

/// Checks that `s` is a Schur function: no poles in the closed disk and
/// circle maximum at most `1 + tol.circle` (maximum-modulus principle).
pub fn check_schur(s: &RationalFn, tol: &Tolerances) -> Result<()> {
    let s = s.reduced(tol)?;
    if let Some(p) = s.poles(tol).iter().find(|p| p.center.norm() <= 1.0 + tol.root) {
        return Err(Error::NotSchur(format!("pole at {}", p.center)));
    }
    let sup = s.circle_sup(CIRCLE_SAMPLES, Execution::default());
    if sup > 1.0 + tol.circle {
        return Err(Error::NotSchur(format!("circle maximum {sup}")));
    }
    Ok(())
}
