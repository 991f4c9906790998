//! Dense complex polynomials in ascending-degree form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::Cplx;

/// Relative threshold used by the arithmetic operators when trimming
/// trailing coefficients.
pub const TRIM_REL: f64 = 1e-12;

/// A polynomial `c₀ + c₁z + … + cₙzⁿ`.
///
/// The coefficient list never ends in a coefficient that is negligible
/// relative to the operands it was computed from; the zero polynomial has an
/// empty coefficient list.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<Cplx>,
}

impl Poly {
    /// Builds a polynomial, trimming trailing coefficients that are below
    /// `TRIM_REL` times the largest coefficient.
    pub fn new(coeffs: Vec<Cplx>) -> Self {
        let scale = max_abs(&coeffs);
        Self::with_trim(coeffs, scale, TRIM_REL)
    }

    /// Builds a polynomial trimming trailing coefficients `|c| <= rel * scale`.
    pub fn with_trim(mut coeffs: Vec<Cplx>, scale: f64, rel: f64) -> Self {
        let cut = rel * scale;
        while let Some(last) = coeffs.last() {
            if last.norm() <= cut || *last == Cplx::new(0.0, 0.0) {
                coeffs.pop();
            } else {
                break;
            }
        }
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Cplx::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Cplx::new(1.0, 0.0))
    }

    pub fn constant(c: Cplx) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Poly {
            coeffs: vec![Cplx::new(0.0, 0.0), Cplx::new(1.0, 0.0)],
        }
    }

    /// `a + b z`.
    pub fn linear(a: Cplx, b: Cplx) -> Self {
        Self::new(vec![a, b])
    }

    /// Monic polynomial with the given roots (with repetition).
    pub fn from_roots(roots: &[Cplx]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, &r| &acc * &Self::linear(-r, Cplx::new(1.0, 0.0)))
    }

    pub fn coeffs(&self) -> &[Cplx] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Cplx> {
        self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Cplx> {
        self.coeffs.last().copied()
    }

    /// Largest coefficient modulus (0 for the zero polynomial).
    pub fn max_abs(&self) -> f64 {
        max_abs(&self.coeffs)
    }

    /// Sum of coefficient moduli.
    pub fn l1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    pub fn eval(&self, z: Cplx) -> Cplx {
        self.coeffs
            .iter()
            .rev()
            .fold(Cplx::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Running-error bound scale `Σ |cᵢ| |z|ⁱ` for Horner evaluation.
    pub fn eval_abs(&self, z: Cplx) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as f64)
            .collect();
        Poly::new(coeffs)
    }

    pub fn scale(&self, c: Cplx) -> Poly {
        Poly::new(self.coeffs.iter().map(|&x| x * c).collect())
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Coefficients of `p` re-expanded in powers of `(z - c)`.
    ///
    /// Repeated synthetic division; the result is not trimmed so that index
    /// `j` is always the `j`-th Taylor coefficient.
    pub fn taylor_shift(&self, c: Cplx) -> Vec<Cplx> {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = a[j + 1];
                a[j] += c * next;
            }
        }
        a
    }

    /// Scale of the Taylor coefficients at `c`: entry `j` is
    /// `Σᵢ |aᵢ| C(i, j) |c|^(i-j)`, the natural bound for the `j`-th
    /// shifted coefficient.
    pub fn taylor_scale(&self, c: Cplx) -> Vec<f64> {
        let abs = Poly {
            coeffs: self.coeffs.iter().map(|x| Cplx::new(x.norm(), 0.0)).collect(),
        };
        abs.taylor_shift(Cplx::new(c.norm(), 0.0))
            .into_iter()
            .map(|x| x.re)
            .collect()
    }

    /// Divides by `(z - c)`, returning quotient and remainder.
    pub fn div_linear(&self, c: Cplx) -> (Poly, Cplx) {
        if self.coeffs.is_empty() {
            return (Poly::zero(), Cplx::new(0.0, 0.0));
        }
        let n = self.coeffs.len();
        let mut q = vec![Cplx::new(0.0, 0.0); n - 1];
        let mut acc = Cplx::new(0.0, 0.0);
        for i in (0..n).rev() {
            acc = acc * c + self.coeffs[i];
            if i > 0 {
                q[i - 1] = acc;
            }
        }
        let rem = acc;
        (Poly { coeffs: q }.retrim(), rem)
    }

    /// Multiplicity of `c` as a root, judged by the leading Taylor
    /// coefficients at `c` against their natural scale.
    pub fn multiplicity_at(&self, c: Cplx, rel: f64) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let shifted = self.taylor_shift(c);
        let scale = self.taylor_scale(c);
        shifted
            .iter()
            .zip(scale.iter())
            .take_while(|(t, s)| t.norm() <= rel * **s)
            .count()
    }

    /// Polynomial in `w` obtained by substituting `z = conj(w)` and
    /// conjugating the result: `p*(w) = conj(p(conj(w)))`.
    pub fn conj_coeffs(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// True when coefficients agree to `rel` times the larger operand scale.
    pub fn approx_eq(&self, other: &Poly, rel: f64) -> bool {
        let scale = self.max_abs().max(other.max_abs());
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|i| (self.coeff(i) - other.coeff(i)).norm() <= rel * scale.max(f64::MIN_POSITIVE))
    }

    /// Coefficient of `zⁱ` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Cplx {
        self.coeffs.get(i).copied().unwrap_or(Cplx::new(0.0, 0.0))
    }

    fn retrim(self) -> Poly {
        let scale = self.max_abs();
        Poly::with_trim(self.coeffs, scale, TRIM_REL)
    }
}

fn max_abs(c: &[Cplx]) -> f64 {
    c.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

fn add_sub(p: &Poly, q: &Poly, sign: f64) -> Poly {
    let n = p.coeffs.len().max(q.coeffs.len());
    let coeffs: Vec<Cplx> = (0..n).map(|i| p.coeff(i) + q.coeff(i) * sign).collect();
    let scale = p.max_abs().max(q.max_abs());
    Poly::with_trim(coeffs, scale, TRIM_REL)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        add_sub(self, rhs, 1.0)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        add_sub(self, rhs, -1.0)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Cplx::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == Cplx::new(0.0, 0.0) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Cplx {
        Cplx::new(re, 0.0)
    }

    #[test]
    fn difference_of_squares() {
        let p = Poly::from_real(&[1.0, 1.0]);
        let q = Poly::from_real(&[1.0, -1.0]);
        assert_eq!((&p * &q).coeffs(), &[c(1.0), c(0.0), c(-1.0)]);
    }

    #[test]
    fn additive_identity() {
        let p = Poly::from_real(&[2.0, -3.0, 0.5]);
        assert_eq!(&p + &Poly::zero(), p);
    }

    #[test]
    fn fourth_power_binomial() {
        let q = Poly::from_real(&[1.0, -1.0]);
        let q2 = &q * &q;
        let q4 = &q2 * &q2;
        assert_eq!(q4.coeffs(), &[c(1.0), c(-4.0), c(6.0), c(-4.0), c(1.0)]);
        assert_eq!(q.pow(4), q4);
    }

    #[test]
    fn cancellation_trims_to_zero() {
        let p = Poly::from_real(&[0.1, 0.2, 0.3]);
        let q = Poly::from_real(&[0.1, 0.2, 0.3 + 1e-17]);
        assert!((&p - &q).degree().unwrap_or(0) <= 1);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn taylor_shift_matches_binomial() {
        // z^2 = (z-1)^2 + 2(z-1) + 1
        let p = Poly::from_real(&[0.0, 0.0, 1.0]);
        assert_eq!(p.taylor_shift(c(1.0)), vec![c(1.0), c(2.0), c(1.0)]);
    }

    #[test]
    fn synthetic_division() {
        let p = Poly::from_real(&[-1.0, 0.0, 1.0]);
        let (q, r) = p.div_linear(c(1.0));
        assert_eq!(q.coeffs(), &[c(1.0), c(1.0)]);
        assert!(r.norm() < 1e-15);
    }

    #[test]
    fn multiplicity_of_repeated_root() {
        let p = Poly::from_real(&[1.0, -1.0]).pow(3);
        assert_eq!(p.multiplicity_at(c(1.0), 1e-10), 3);
        assert_eq!(p.multiplicity_at(c(0.5), 1e-10), 0);
    }
}
