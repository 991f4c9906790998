use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Poly;
use super::roots::{self, RootCluster};
use crate::matrix::{least_squares, residual_sq};
use crate::{Cplx, Error, Result, Tolerances, MAX_DEGREE};

/// Order of contact of a function with zero at a point: positive for zeros,
/// negative for poles, `Infinite` for the zero function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(i64),
    Infinite,
}

impl Order {
    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }

    pub fn at_least(self, k: i64) -> bool {
        self >= Order::Finite(k)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// Limit of a rational function at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryValue {
    Finite(Cplx),
    Pole(usize),
}

/// Quotient `num / den` of complex polynomials with a monic denominator.
///
/// Arithmetic does not cancel common factors; call [`RationalFn::reduced`]
/// for the canonical coprime form.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    /// Builds `num / den`, normalizing the denominator to be monic.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        let lead = den.leading().ok_or(Error::ZeroDenominator)?;
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let inv = lead.inv();
        Ok(RationalFn {
            num: num.scale(inv),
            den: den.scale(inv),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Cplx) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn z() -> Self {
        Self::from_poly(Poly::z())
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn eval(&self, z: Cplx) -> Cplx {
        self.num.eval(z) / self.den.eval(z)
    }

    pub fn scale(&self, c: Cplx) -> RationalFn {
        if c == Cplx::new(0.0, 0.0) {
            return Self::zero();
        }
        RationalFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse; fails for the zero function.
    pub fn recip(&self) -> Result<RationalFn> {
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFn) -> Result<RationalFn> {
        RationalFn::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Cancels common roots of numerator and denominator and normalizes the
    /// denominator to be monic.
    pub fn reduced(&self, tol: &Tolerances) -> Result<RationalFn> {
        if self.num.is_zero() {
            return Ok(Self::zero());
        }
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let mut cancelled = false;
        for cl in roots::clusters(&self.den, tol.root) {
            let common = num.multiplicity_at(cl.center, tol.root).min(cl.multiplicity);
            for _ in 0..common {
                num = num.div_linear(cl.center).0;
                den = den.div_linear(cl.center).0;
                cancelled = true;
            }
        }
        let mut out = RationalFn::new(num, den)?;
        if cancelled {
            out = refine_cofactors(&self.num, &self.den, out);
        }
        let d = out.degree();
        if d > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(d));
        }
        Ok(out)
    }

    /// Poles (roots of the denominator) grouped with multiplicity. Assumes a
    /// reduced function.
    pub fn poles(&self, tol: &Tolerances) -> Vec<RootCluster> {
        roots::clusters(&self.den, tol.root)
    }

    /// Zeros of the numerator grouped with multiplicity.
    pub fn zeros(&self, tol: &Tolerances) -> Vec<RootCluster> {
        roots::clusters(&self.num, tol.root)
    }

    /// Taylor coefficients `c₀ … c_order` at `z1`, computed by shifting both
    /// polynomials to powers of `(z - z1)` and dividing power series.
    pub fn taylor_at(&self, z1: Cplx, order: usize, tol: &Tolerances) -> Result<Vec<Cplx>> {
        let n = self.num.taylor_shift(z1);
        let d = self.den.taylor_shift(z1);
        let d_scale = self.den.taylor_scale(z1);
        if d[0].norm() <= tol.root * d_scale[0] {
            return Err(Error::PoleAtExpansionPoint(z1));
        }
        let at = |v: &[Cplx], i: usize| v.get(i).copied().unwrap_or(Cplx::new(0.0, 0.0));
        let mut c: Vec<Cplx> = Vec::with_capacity(order + 1);
        for j in 0..=order {
            let mut acc = at(&n, j);
            for i in 1..=j {
                acc -= at(&d, i) * c[j - i];
            }
            c.push(acc / d[0]);
        }
        Ok(c)
    }

    /// Order of the zero (positive) or pole (negative) at `z1`; `Infinite`
    /// for the zero function. Common factors need not be cancelled first.
    pub fn vanishing_order(&self, z1: Cplx, tol: &Tolerances) -> Order {
        if self.num.is_zero() {
            return Order::Infinite;
        }
        let mn = self.num.multiplicity_at(z1, tol.order) as i64;
        let md = self.den.multiplicity_at(z1, tol.order) as i64;
        Order::Finite(mn - md)
    }

    /// Limit at `z1` (finite value or pole order).
    pub fn boundary_value(&self, z1: Cplx, tol: &Tolerances) -> BoundaryValue {
        if self.num.is_zero() {
            return BoundaryValue::Finite(Cplx::new(0.0, 0.0));
        }
        let mn = self.num.multiplicity_at(z1, tol.order);
        let md = self.den.multiplicity_at(z1, tol.order);
        match mn.cmp(&md) {
            Ordering::Greater => BoundaryValue::Finite(Cplx::new(0.0, 0.0)),
            Ordering::Less => BoundaryValue::Pole(md - mn),
            Ordering::Equal => {
                let tn = self.num.taylor_shift(z1);
                let td = self.den.taylor_shift(z1);
                BoundaryValue::Finite(tn[mn] / td[md])
            }
        }
    }

    /// Relative size of `self.num * other.den - other.num * self.den`.
    /// Zero exactly when the two functions coincide.
    pub fn distance(&self, other: &RationalFn) -> f64 {
        let a = &self.num * &other.den;
        let b = &other.num * &self.den;
        let scale = a.max_abs().max(b.max_abs());
        if scale == 0.0 {
            return 0.0;
        }
        let n = a.coeffs().len().max(b.coeffs().len());
        let diff = (0..n).map(|i| (a.coeff(i) - b.coeff(i)).norm()).fold(0.0, f64::max);
        diff / scale
    }

    pub fn approx_eq(&self, other: &RationalFn, rel: f64) -> bool {
        self.distance(other) <= rel
    }

    /// Largest coefficient difference between two canonical (reduced, monic
    /// denominator) forms; infinite when the degrees differ.
    pub fn coeff_error(&self, other: &RationalFn) -> f64 {
        let pe = |p: &Poly, q: &Poly| {
            if p.degree() != q.degree() {
                return f64::INFINITY;
            }
            p.coeffs()
                .iter()
                .zip(q.coeffs())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max)
        };
        pe(&self.num, &other.num).max(pe(&self.den, &other.den))
    }

    /// Maximum modulus on `n` equispaced points of the unit circle.
    pub fn circle_sup(&self, n: usize, exec: crate::Execution) -> f64 {
        exec.map_range(n, |j| {
            let t = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            self.eval(Cplx::from_polar(1.0, t)).norm()
        })
        .into_iter()
        .fold(0.0, |m, v| if v.is_nan() { f64::INFINITY } else { m.max(v) })
    }
}

/// Least-squares polish of a reduced form `u / v` of `n / d`: minimizes
/// `‖n v - d u‖` over `u` and monic `v` of the same degrees, keeping the
/// starting point when the polish does not lower the residual.
fn refine_cofactors(n: &Poly, d: &Poly, start: RationalFn) -> RationalFn {
    let (Some(du), Some(dv)) = (start.num.degree(), start.den.degree()) else {
        return start;
    };
    let rows = n.coeffs().len().max(d.coeffs().len()) + du.max(dv) + 1;
    let cols = du + 1 + dv;
    let zero = Cplx::new(0.0, 0.0);
    // columns: u_0..u_du, then v_0..v_{dv-1}; v_dv = 1 goes to the right side
    let mut a = vec![vec![zero; cols]; rows];
    let mut b = vec![zero; rows];
    for (i, &dc) in d.coeffs().iter().enumerate() {
        for j in 0..=du {
            a[i + j][j] -= dc;
        }
    }
    for (i, &nc) in n.coeffs().iter().enumerate() {
        for j in 0..dv {
            a[i + j][du + 1 + j] += nc;
        }
        b[i + dv] -= nc;
    }
    let x0: Vec<Cplx> = (0..=du)
        .map(|j| start.num.coeff(j))
        .chain((0..dv).map(|j| start.den.coeff(j)))
        .collect();
    let Some(x) = least_squares(&a, &b, &x0) else {
        return start;
    };
    if residual_sq(&a, &b, &x) >= residual_sq(&a, &b, &x0) {
        return start;
    }
    let mut den = x[du + 1..].to_vec();
    den.push(Cplx::new(1.0, 0.0));
    RationalFn::new(Poly::new(x[..=du].to_vec()), Poly::new(den)).unwrap_or(start)
}

fn add_sub(f: &RationalFn, g: &RationalFn, sign: f64) -> RationalFn {
    let (num, den) = if f.den.approx_eq(&g.den, 1e-14) {
        let g_num = if sign < 0.0 { -&g.num } else { g.num.clone() };
        (&f.num + &g_num, f.den.clone())
    } else {
        let a = &f.num * &g.den;
        let b = &g.num * &f.den;
        let b = if sign < 0.0 { -&b } else { b };
        (&a + &b, &f.den * &g.den)
    };
    RationalFn::new(num, den).expect("product of nonzero denominators")
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        add_sub(self, rhs, 1.0)
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        add_sub(self, rhs, -1.0)
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl From<Poly> for RationalFn {
    fn from(p: Poly) -> Self {
        RationalFn::from_poly(p)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}
