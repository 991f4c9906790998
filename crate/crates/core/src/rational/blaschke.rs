use super::poly::Poly;
use super::rational_fn::RationalFn;
use crate::{Cplx, Error, Result};

/// Finite Blaschke product `c · ∏ (z - aᵢ) / (1 - conj(aᵢ) z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlaschkeProduct {
    zeros: Vec<Cplx>,
    unimodular: Cplx,
}

impl BlaschkeProduct {
    /// Fails unless every zero lies strictly inside the disk (by more than
    /// `eps`) and `|c| = 1` within `eps`.
    pub fn new(zeros: Vec<Cplx>, unimodular: Cplx, eps: f64) -> Result<Self> {
        if let Some(a) = zeros.iter().find(|a| a.norm() >= 1.0 - eps) {
            return Err(Error::InvalidArgument(format!(
                "Blaschke zero {a} is not inside the unit disk"
            )));
        }
        if (unimodular.norm() - 1.0).abs() > eps {
            return Err(Error::InvalidArgument(format!(
                "Blaschke constant {unimodular} is not unimodular"
            )));
        }
        Ok(BlaschkeProduct { zeros, unimodular })
    }

    /// The constant 1 (order zero).
    pub fn trivial() -> Self {
        BlaschkeProduct {
            zeros: Vec::new(),
            unimodular: Cplx::new(1.0, 0.0),
        }
    }

    pub fn zeros(&self) -> &[Cplx] {
        &self.zeros
    }

    pub fn unimodular_const(&self) -> Cplx {
        self.unimodular
    }

    pub fn order(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Cplx) -> Cplx {
        self.zeros.iter().fold(self.unimodular, |acc, a| {
            acc * (z - a) / (Cplx::new(1.0, 0.0) - a.conj() * z)
        })
    }

    pub fn to_rational(&self) -> RationalFn {
        let one = Cplx::new(1.0, 0.0);
        let num = self
            .zeros
            .iter()
            .fold(Poly::constant(self.unimodular), |acc, &a| &acc * &Poly::linear(-a, one));
        let den = self
            .zeros
            .iter()
            .fold(Poly::one(), |acc, &a| &acc * &Poly::linear(one, -a.conj()));
        RationalFn::new(num, den).expect("Blaschke denominator is nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_on_circle() {
        let b = BlaschkeProduct::new(
            vec![Cplx::new(0.3, 0.4), Cplx::new(-0.5, 0.1), Cplx::new(0.0, 0.0)],
            Cplx::from_polar(1.0, 0.7),
            1e-12,
        )
        .unwrap();
        let r = b.to_rational();
        for j in 0..64 {
            let w = Cplx::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / 64.0);
            assert!((b.eval(w).norm() - 1.0).abs() < 1e-9);
            assert!((r.eval(w) - b.eval(w)).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_boundary_zero() {
        assert!(BlaschkeProduct::new(vec![Cplx::new(1.0, 0.0)], Cplx::new(1.0, 0.0), 1e-9).is_err());
    }
}
