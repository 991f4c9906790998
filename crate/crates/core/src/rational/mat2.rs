use super::poly::Poly;
use super::rational_fn::RationalFn;
use crate::{Cplx, Error, Result, Tolerances};

/// Row-major 2×2 matrix of rational functions `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2RF {
    pub a: RationalFn,
    pub b: RationalFn,
    pub c: RationalFn,
    pub d: RationalFn,
}

/// Constant 2×2 complex matrix, row-major.
pub type Mat2 = [[Cplx; 2]; 2];

impl Mat2RF {
    pub fn new(a: RationalFn, b: RationalFn, c: RationalFn, d: RationalFn) -> Self {
        Mat2RF { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::from_constants([
            [Cplx::new(1.0, 0.0), Cplx::new(0.0, 0.0)],
            [Cplx::new(0.0, 0.0), Cplx::new(1.0, 0.0)],
        ])
    }

    pub fn from_constants(m: Mat2) -> Self {
        Mat2RF {
            a: RationalFn::constant(m[0][0]),
            b: RationalFn::constant(m[0][1]),
            c: RationalFn::constant(m[1][0]),
            d: RationalFn::constant(m[1][1]),
        }
    }

    pub fn entries(&self) -> [&RationalFn; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn eval(&self, z: Cplx) -> Mat2 {
        [[self.a.eval(z), self.b.eval(z)], [self.c.eval(z), self.d.eval(z)]]
    }

    /// Numerator polynomials over a shared denominator:
    /// `M = [[A, B], [C, D]] / common`.
    pub fn polynomial_form(&self) -> ([Poly; 4], Poly) {
        let entries = self.entries();
        let mut distinct: Vec<&Poly> = Vec::new();
        for e in entries {
            if !distinct.iter().any(|d| d.approx_eq(e.den(), 1e-14)) {
                distinct.push(e.den());
            }
        }
        let common = distinct.iter().fold(Poly::one(), |acc, d| &acc * d);
        let lift = |e: &RationalFn| {
            distinct
                .iter()
                .filter(|d| !d.approx_eq(e.den(), 1e-14))
                .fold(e.num().clone(), |acc, d| &acc * d)
        };
        ([lift(&self.a), lift(&self.b), lift(&self.c), lift(&self.d)], common)
    }

    /// `ad - bc` as a rational function over `common²`.
    pub fn det(&self) -> RationalFn {
        let ([a, b, c, d], common) = self.polynomial_form();
        let num = &(&a * &d) - &(&b * &c);
        RationalFn::new(num, &common * &common).expect("nonzero common denominator")
    }

    /// Constant value of the determinant, if it is constant within `rel`.
    pub fn constant_det(&self, rel: f64) -> Result<Cplx> {
        let ([a, b, c, d], common) = self.polynomial_form();
        let ad = &a * &d;
        let bc = &b * &c;
        let num = &ad - &bc;
        let den = &common * &common;
        let scale = ad.max_abs().max(bc.max_abs()).max(f64::MIN_POSITIVE);
        if num.max_abs() <= rel * scale {
            return Err(Error::NonConstantDeterminant(0.0));
        }
        if num.degree() != den.degree() {
            return Err(Error::NonConstantDeterminant(f64::INFINITY));
        }
        let delta = num.leading().unwrap() / den.leading().unwrap();
        let resid = (&num - &den.scale(delta)).max_abs() / scale;
        if resid > rel {
            return Err(Error::NonConstantDeterminant(resid));
        }
        Ok(delta)
    }

    pub fn mul(&self, rhs: &Mat2RF) -> Mat2RF {
        Mat2RF {
            a: &(&self.a * &rhs.a) + &(&self.b * &rhs.c),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.d),
            c: &(&self.c * &rhs.a) + &(&self.d * &rhs.c),
            d: &(&self.c * &rhs.b) + &(&self.d * &rhs.d),
        }
    }

    /// `T_M(s) = (a s + b) / (c s + d)`, reduced.
    pub fn lft_apply(&self, s: &RationalFn, tol: &Tolerances) -> Result<RationalFn> {
        let ([a, b, c, d], _) = self.polynomial_form();
        let (sn, sd) = (s.num(), s.den());
        let top = &(&a * sn) + &(&b * sd);
        let bot = &(&c * sn) + &(&d * sd);
        if bot.is_zero() {
            return Err(Error::DegenerateLft);
        }
        RationalFn::new(top, bot)?.reduced(tol)
    }

    /// Inverse transform: the adjugate `[[d, -b], [-c, a]]`, valid when the
    /// determinant is a nonzero constant.
    pub fn lft_invert(&self, tol: &Tolerances) -> Result<Mat2RF> {
        self.constant_det(tol.root)?;
        Ok(Mat2RF {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        })
    }
}

/// `T_M(x)` for a constant matrix and a scalar.
pub fn lft_scalar(m: &Mat2, x: Cplx) -> Cplx {
    (m[0][0] * x + m[0][1]) / (m[1][0] * x + m[1][1])
}

pub fn mat2_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let mut out = [[Cplx::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

/// `M J M* - J` in max-abs norm, with `J = diag(1, -1)`.
pub fn j_unitarity_residual(m: &Mat2) -> f64 {
    let j = [1.0, -1.0];
    let mut worst: f64 = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            let v: Cplx = (0..2).map(|k| m[r][k] * j[k] * m[c][k].conj()).sum();
            let target = if r == c { j[r] } else { 0.0 };
            worst = worst.max((v - Cplx::new(target, 0.0)).norm());
        }
    }
    worst
}
