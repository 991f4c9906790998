//! Boundary interpolation at a point `z1` of the unit circle.
//!
//! Given `z1`, `k ≥ 1`, a unimodular `τ0` and `τ_k, …, τ_{2k-1}` with
//! `τ_k ≠ 0`, the generalized Schur functions with
//!
//! ```text
//! s(z) = τ0 + Σ_{i=k}^{2k-1} τ_i (z - z1)^i + O((z - z1)^{2k})
//! ```
//!
//! are exactly `s = T_Θ(s1) = (a s1 + b) / (c s1 + d)` where `s1` ranges over
//! generalized Schur functions whose nontangential limit at `z1` differs
//! from `τ0`, provided the Pick-type matrix `P = conj(τ0) T B` is Hermitian.
//! Then `sq₋(s) = sq₋(s1) + ev₋(P)`.
//!
//! `Θ = I - θ u u* J` with `u = (1, conj(τ0))`, `J = diag(1, -1)` and
//! `θ(z) = (1 - z conj(z0)) p(z) / (1 - z conj(z1))^k`, where `z0 ≠ z1` is a
//! normalization point on the circle and `p` is the polynomial
//! `(1 - z conj(z1))^k R(z) P⁻¹ R(z0)*` built from the row
//! `R(z) = (z^{j-1} / (1 - z conj(z1))^j)_{j=1..k}`.

use log::warn;

use crate::kernel::{estimate_sq_minus, inertia, Inertia, SamplePlan};
use crate::matrix::CMatrix;
use crate::rational::roots::roots;
use crate::rational::{j_unitarity_residual, mat2_mul, BoundaryValue, Mat2, Mat2RF, Poly, RationalFn};
use crate::{Cplx, Error, Result, Tolerances, MAX_DEGREE};

/// Largest supported `k`.
pub const MAX_K: usize = 8;

/// Condition number of `P` above which a warning is logged.
pub const COND_WARN: f64 = 1e8;

/// Number of circle points used to sample J-unitarity.
pub const J_SAMPLES: usize = 32;

/// Interpolation datum `(z1, k, τ0, τ_k..τ_{2k-1}, z0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpData {
    z1: Cplx,
    tau0: Cplx,
    tau: Vec<Cplx>,
    z0: Cplx,
}

impl InterpData {
    /// Validates the datum. `k` is `tau.len()`; `z0` defaults to `-z1`.
    pub fn new(z1: Cplx, tau0: Cplx, tau: Vec<Cplx>, z0: Option<Cplx>, tol: &Tolerances) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidData(m.to_string()));
        let finite = |c: &Cplx| c.re.is_finite() && c.im.is_finite();
        if !finite(&z1) || !finite(&tau0) || !tau.iter().all(finite) || !z0.iter().all(finite) {
            return bad("non-finite input");
        }
        if (z1.norm() - 1.0).abs() > tol.circle {
            return bad("z1 not unimodular");
        }
        if (tau0.norm() - 1.0).abs() > tol.circle {
            return bad("tau0 not unimodular");
        }
        if tau.is_empty() || tau.len() > MAX_K {
            return bad("k must be between 1 and 8");
        }
        if tau[0].norm() <= tol.root {
            return bad("tau_k must be nonzero");
        }
        let z0 = z0.unwrap_or(-z1);
        if (z0.norm() - 1.0).abs() > tol.circle {
            return bad("z0 not unimodular");
        }
        if (z0 - z1).norm() <= tol.root {
            return bad("z0 must differ from z1");
        }
        Ok(InterpData { z1, tau0, tau, z0 })
    }

    pub fn z1(&self) -> Cplx {
        self.z1
    }

    pub fn k(&self) -> usize {
        self.tau.len()
    }

    pub fn tau0(&self) -> Cplx {
        self.tau0
    }

    /// `τ_k, …, τ_{2k-1}`.
    pub fn tau(&self) -> &[Cplx] {
        &self.tau
    }

    pub fn z0(&self) -> Cplx {
        self.z0
    }

    /// Same problem with another normalization point.
    pub fn with_z0(&self, z0: Cplx, tol: &Tolerances) -> Result<Self> {
        InterpData::new(self.z1, self.tau0, self.tau.clone(), Some(z0), tol)
    }

    /// Expected Taylor coefficients `c_0 … c_{2k-1}` at `z1`.
    pub fn expected_coefficients(&self) -> Vec<Cplx> {
        let k = self.k();
        let mut out = vec![Cplx::new(0.0, 0.0); 2 * k];
        out[0] = self.tau0;
        out[k..].copy_from_slice(&self.tau);
        out
    }
}

/// Lower-triangular Toeplitz matrix with first column `τ_k, …, τ_{2k-1}`.
pub fn build_t(data: &InterpData) -> CMatrix {
    let tau = data.tau();
    CMatrix::from_fn(data.k(), |i, j| if i >= j { tau[i - j] } else { Cplx::new(0.0, 0.0) })
}

/// Right-lower-triangular matrix of signed binomial multiples of powers of
/// `z1`. With 1-based indices, column `j` is nonzero from row `k - j + 1`
/// down, and the entry `t` rows below that is
/// `(-1)^{j-1} C(j-1, t) z1^{2j-1-t}`.
pub fn build_b(data: &InterpData) -> CMatrix {
    let k = data.k();
    let z1 = data.z1();
    CMatrix::from_fn(k, |i, j| {
        // zero-based i, j; first nonzero row of column j is k - 1 - j
        let start = k - 1 - j;
        if i < start {
            return Cplx::new(0.0, 0.0);
        }
        let t = i - start;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        z1.powu((2 * j + 1 - t) as u32) * (sign * binomial(j, t))
    })
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// The Pick-type matrix `P = conj(τ0) T B` with its diagnostics.
#[derive(Clone, Debug)]
pub struct PickMatrix {
    pub matrix: CMatrix,
    pub inverse: CMatrix,
    /// 1-norm condition number.
    pub condition: f64,
    pub inertia: Inertia,
}

/// Builds `P`, requiring it to be Hermitian and invertible.
pub fn build_pick_matrix(data: &InterpData, tol: &Tolerances) -> Result<PickMatrix> {
    let p = build_t(data).mul(&build_b(data)).scale(data.tau0().conj());
    let norm = p.max_abs();
    let asym = p.asymmetry();
    if asym > tol.herm * norm {
        return Err(Error::NonHermitianP(asym / norm));
    }
    let p = p.symmetrized();
    let inverse = p.lu()?.inverse();
    let condition = p.norm_1() * inverse.norm_1();
    if !(condition < 1.0 / f64::EPSILON) {
        return Err(Error::SingularP);
    }
    if condition > COND_WARN {
        warn!("Pick matrix is ill-conditioned (cond = {condition:e})");
    }
    let inertia = inertia(&p, tol)?;
    Ok(PickMatrix {
        matrix: p,
        inverse,
        condition,
        inertia,
    })
}

/// `(1 - z conj(z1))^k`.
fn boundary_power(data: &InterpData) -> Poly {
    Poly::linear(Cplx::new(1.0, 0.0), -data.z1().conj()).pow(data.k() as u32)
}

/// The polynomial `p(z) = (1 - z conj(z1))^k R(z) P⁻¹ R(z0)*`, of degree
/// at most `k - 1`.
pub fn build_p(data: &InterpData, pick: &PickMatrix, tol: &Tolerances) -> Result<Poly> {
    let k = data.k();
    let one = Cplx::new(1.0, 0.0);
    let w = one - data.z0() * data.z1().conj();
    let r0: Vec<Cplx> = (1..=k)
        .map(|j| (data.z0().powu(j as u32 - 1) / w.powu(j as u32)).conj())
        .collect();
    let v = pick.inverse.mul_vec(&r0);
    let factor = Poly::linear(one, -data.z1().conj());
    let mut p = Poly::zero();
    for (j, vj) in v.iter().enumerate() {
        // z^j (1 - z conj(z1))^{k-1-j}, expanded exactly
        let mut e = factor.pow((k - 1 - j) as u32);
        for _ in 0..j {
            e = &e * &Poly::z();
        }
        p = &p + &e.scale(*vj);
    }
    let at = p.eval(data.z1()).norm();
    if at <= tol.root * p.eval_abs(data.z1()).max(f64::MIN_POSITIVE) {
        return Err(Error::PVanishesAtZ1(at));
    }
    Ok(p)
}

/// The coefficient matrix function `Θ` and its building blocks.
#[derive(Clone, Debug)]
pub struct ThetaFn {
    data: InterpData,
    pick: PickMatrix,
    p: Poly,
    theta: RationalFn,
    mat: Mat2RF,
    j_residual: f64,
}

/// Builds `Θ` and checks `det Θ ≡ 1` and J-unitarity on the circle.
pub fn build_theta(data: &InterpData, tol: &Tolerances) -> Result<ThetaFn> {
    let pick = build_pick_matrix(data, tol)?;
    let p = build_p(data, &pick, tol)?;
    let one = Cplx::new(1.0, 0.0);
    let q = boundary_power(data);
    let n = &Poly::linear(one, -data.z0().conj()) * &p;
    let tau0 = data.tau0();
    let theta = RationalFn::new(n.clone(), q.clone())?;
    let mat = Mat2RF::new(
        RationalFn::new(&q - &n, q.clone())?,
        RationalFn::new(n.scale(tau0), q.clone())?,
        RationalFn::new(n.scale(-tau0.conj()), q.clone())?,
        RationalFn::new(&q + &n, q.clone())?,
    );

    let det = mat.constant_det(tol.root)?;
    if (det - one).norm() > tol.root {
        return Err(Error::InvalidData(format!("det Theta = {det}, expected 1")));
    }
    let out = ThetaFn {
        data: data.clone(),
        pick,
        p,
        theta,
        mat,
        j_residual: 0.0,
    };
    let j_residual = out.j_unitarity_residual(J_SAMPLES);
    if j_residual > 1e-9 {
        return Err(Error::InvalidData(format!(
            "Theta is not J-unitary on the circle (residual {j_residual:e})"
        )));
    }
    Ok(ThetaFn { j_residual, ..out })
}

impl ThetaFn {
    pub fn data(&self) -> &InterpData {
        &self.data
    }

    pub fn pick(&self) -> &PickMatrix {
        &self.pick
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    /// The scalar `θ`.
    pub fn theta(&self) -> &RationalFn {
        &self.theta
    }

    pub fn mat(&self) -> &Mat2RF {
        &self.mat
    }

    /// The vector `u = (1, conj(τ0))`.
    pub fn u(&self) -> [Cplx; 2] {
        [Cplx::new(1.0, 0.0), self.data.tau0().conj()]
    }

    pub fn eval(&self, z: Cplx) -> Mat2 {
        self.mat.eval(z)
    }

    /// Number of negative eigenvalues of `P`.
    pub fn ev_neg(&self) -> usize {
        self.pick.inertia.n_neg
    }

    /// J-unitarity residual recorded at construction.
    pub fn j_residual(&self) -> f64 {
        self.j_residual
    }

    /// `max ‖Θ(w) J Θ(w)* - J‖ / max(1, ‖Θ(w)‖²)` over `n` circle points
    /// avoiding `z1`.
    pub fn j_unitarity_residual(&self, n: usize) -> f64 {
        let z1 = self.data.z1();
        (0..n)
            .map(|j| {
                let w = z1 * Cplx::from_polar(1.0, 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / n as f64);
                let m = self.eval(w);
                let norm2 = m.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>();
                j_unitarity_residual(&m) / norm2.max(1.0)
            })
            .fold(0.0, f64::max)
    }

    pub fn admissible(&self, s1: &RationalFn, tol: &Tolerances) -> Admissibility {
        admissible_parameter(s1, &self.data, tol)
    }

    /// `s = T_Θ(s1)`. A failed expansion check is logged; use
    /// [`ThetaFn::solve_checked`] to get the report.
    pub fn solve(&self, s1: &RationalFn, tol: &Tolerances) -> Result<RationalFn> {
        let (s, report) = self.solve_checked(s1, tol)?;
        if !report.passed {
            warn!(
                "expansion check failed: largest residual {:e}, nearest pole at distance {:e}",
                report.max_residual(),
                report.nearest_pole
            );
        }
        Ok(s)
    }

    /// `s = T_Θ(s1)` together with its expansion report.
    pub fn solve_checked(&self, s1: &RationalFn, tol: &Tolerances) -> Result<(RationalFn, ExpansionReport)> {
        let adm = self.admissible(s1, tol);
        if !adm.admissible {
            return Err(Error::InadmissibleParameter(adm.distance));
        }
        let s = transform(&self.mat, &s1.reduced(tol)?, &self.data)?;
        let report = verify_expansion(&s, &self.data, tol)?;
        Ok((s, report))
    }

    /// `s1 = T_{Θ⁻¹}(s)`, checked by mapping back.
    pub fn recover_parameter(&self, s: &RationalFn, tol: &Tolerances) -> Result<RationalFn> {
        let inv = self.mat.lft_invert(tol)?;
        let s1 = transform(&inv, s, &self.data)?.reduced(tol)?;
        let d = transform(&self.mat, &s1, &self.data)?.distance(s);
        if d > tol.root {
            return Err(Error::RoundTripMismatch(d));
        }
        Ok(s1)
    }

    /// Compares `c s1 + d` with the closed form
    /// `((1 - z conj(z1))^k - conj(τ0)(1 - z conj(z0)) p(z)(s1 - τ0)) / (1 - z conj(z1))^k`.
    pub fn denominator_closed_form(&self, s1: &RationalFn, tol: &Tolerances) -> Result<DenominatorCheck> {
        let data = &self.data;
        let one = Cplx::new(1.0, 0.0);
        let q = boundary_power(data);
        let n = &Poly::linear(one, -data.z0().conj()) * &self.p;
        let (sn, sd) = (s1.num(), s1.den());
        let shifted = sn - &sd.scale(data.tau0());
        let num = &(&q * sd) - &(&n * &shifted).scale(data.tau0().conj());
        let numerator_at_z1 = num.eval(data.z1()).norm();
        let closed_form = RationalFn::new(num, &q * sd)?;
        let direct = &(&self.mat.c * s1) + &self.mat.d;
        let agree = closed_form.approx_eq(&direct, tol.root);
        Ok(DenominatorCheck {
            closed_form: closed_form.reduced(tol)?,
            direct,
            agree,
            numerator_at_z1,
        })
    }
}

/// Taylor coefficients at `z1` below this fraction of their natural scale
/// count as zero when measuring the common factor.
const KNOWN_FACTOR_REL: f64 = 1e-6;

/// `T_M(s)` for `M = Θ` or its adjugate. Both have polynomial determinant
/// `(1 - z conj(z1))^{2k}`, so for reduced `s` the only common roots of the
/// numerator and denominator sit at `z1`. A generic cluster reduction would
/// also merge nearby zero/pole pairs that are not common factors.
fn transform(m: &Mat2RF, s: &RationalFn, data: &InterpData) -> Result<RationalFn> {
    let ([a, b, c, d], _) = m.polynomial_form();
    let (sn, sd) = (s.num(), s.den());
    let top = &(&a * sn) + &(&b * sd);
    let bot = &(&c * sn) + &(&d * sd);
    if bot.is_zero() {
        return Err(Error::DegenerateLft);
    }
    let (top, bot) = cancel_root(top, bot, data.z1(), 2 * data.k());
    let out = RationalFn::new(top, bot)?;
    if out.degree() > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(out.degree()));
    }
    Ok(out)
}

/// Removes the common factor `(z - c)^m`, `m ≤ max`. A multiple root splits
/// into a ring under rounding, so `m` is read off the Taylor coefficients at
/// `c` and the factor is removed by dropping them.
fn cancel_root(num: Poly, den: Poly, c: Cplx, max: usize) -> (Poly, Poly) {
    if num.is_zero() {
        return (num, den);
    }
    let m = num
        .multiplicity_at(c, KNOWN_FACTOR_REL)
        .min(den.multiplicity_at(c, KNOWN_FACTOR_REL))
        .min(max);
    if m == 0 {
        return (num, den);
    }
    let strip = |p: &Poly| {
        let shifted = p.taylor_shift(c);
        Poly::new(shifted[m.min(shifted.len())..].to_vec()).taylor_shift(-c)
    };
    (Poly::new(strip(&num)), Poly::new(strip(&den)))
}

/// Outcome of the admissibility test for a parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Admissibility {
    pub admissible: bool,
    pub limit: BoundaryValue,
    /// `|s1(z1) - τ0|`, infinite at a pole.
    pub distance: f64,
}

/// A rational `s1` is admissible when its limit at `z1` is a pole or stays
/// away from `τ0` by more than `tol.admissible`.
pub fn admissible_parameter(s1: &RationalFn, data: &InterpData, tol: &Tolerances) -> Admissibility {
    let limit = s1.boundary_value(data.z1(), tol);
    let distance = match limit {
        BoundaryValue::Pole(_) => f64::INFINITY,
        BoundaryValue::Finite(v) => (v - data.tau0()).norm(),
    };
    Admissibility {
        admissible: distance > tol.admissible,
        limit,
        distance,
    }
}

/// Builds `Θ` for `data` and returns `T_Θ(s1)`.
pub fn solve(data: &InterpData, s1: &RationalFn, tol: &Tolerances) -> Result<RationalFn> {
    build_theta(data, tol)?.solve(s1, tol)
}

pub fn recover_parameter(data: &InterpData, s: &RationalFn, tol: &Tolerances) -> Result<RationalFn> {
    build_theta(data, tol)?.recover_parameter(s, tol)
}

/// Per-coefficient comparison of the Taylor expansion at `z1` with the data.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionReport {
    pub coefficients: Vec<Cplx>,
    pub expected: Vec<Cplx>,
    pub residuals: Vec<f64>,
    pub passed: bool,
    /// Distance from `z1` to the nearest root of the denominator. Rounding
    /// in coefficient `i` grows roughly like `nearest_pole^-(i+1)`.
    pub nearest_pole: f64,
}

impl ExpansionReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Index of the first coefficient that fails, if any.
    pub fn first_failure(&self, tol: &Tolerances) -> Option<usize> {
        self.residuals
            .iter()
            .zip(&self.expected)
            .position(|(r, e)| *r > tol.order * e.norm().max(1.0))
    }
}

/// Checks `c_0 = τ0`, `c_1 … c_{k-1} = 0` and `c_i = τ_i` for
/// `k ≤ i ≤ 2k - 1`, each within `tol.order · max(1, |expected|)`.
pub fn verify_expansion(s: &RationalFn, data: &InterpData, tol: &Tolerances) -> Result<ExpansionReport> {
    let expected = data.expected_coefficients();
    let coefficients = s.taylor_at(data.z1(), expected.len() - 1, tol)?;
    let residuals: Vec<f64> = coefficients
        .iter()
        .zip(&expected)
        .map(|(c, e)| (c - e).norm())
        .collect();
    let nearest_pole = roots(s.den())
        .into_iter()
        .map(|r| (r - data.z1()).norm())
        .fold(f64::INFINITY, f64::min);
    let passed = residuals
        .iter()
        .zip(&expected)
        .all(|(r, e)| *r <= tol.order * e.norm().max(1.0));
    Ok(ExpansionReport {
        coefficients,
        expected,
        residuals,
        passed,
        nearest_pole,
    })
}

#[derive(Clone, Debug)]
pub struct DenominatorCheck {
    pub closed_form: RationalFn,
    pub direct: RationalFn,
    pub agree: bool,
    /// Modulus of the closed-form numerator at `z1`.
    pub numerator_at_z1: f64,
}

/// `Θ̂` for a new normalization point and the constant J-unitary `U` with
/// `Θ = Θ̂ U`.
#[derive(Clone, Debug)]
pub struct Renormalized {
    pub theta_hat: ThetaFn,
    pub u: Mat2,
    /// Largest entrywise mismatch of `Θ(z) - Θ̂(z) U` on the check points.
    pub residual: f64,
}

pub fn renormalize(data: &InterpData, new_z0: Cplx, tol: &Tolerances) -> Result<Renormalized> {
    let theta = build_theta(data, tol)?;
    let hat_data = data.with_z0(new_z0, tol)?;
    let theta_hat = build_theta(&hat_data, tol)?;
    let t = theta_hat.theta().eval(data.z0());
    let tau0 = data.tau0();
    let one = Cplx::new(1.0, 0.0);
    let u = [[one + t, -tau0 * t], [tau0.conj() * t, one - t]];

    let mut residual: f64 = 0.0;
    for j in 0..16 {
        let z = Cplx::from_polar(0.5, 2.0 * std::f64::consts::PI * j as f64 / 16.0);
        let lhs = theta.eval(z);
        let rhs = mat2_mul(&theta_hat.eval(z), &u);
        let scale = lhs.iter().flatten().map(|x| x.norm()).fold(1.0, f64::max);
        for r in 0..2 {
            for c in 0..2 {
                residual = residual.max((lhs[r][c] - rhs[r][c]).norm() / scale);
            }
        }
    }
    let ju = j_unitarity_residual(&u);
    if residual > tol.root || ju > tol.root * (1.0 + t.norm_sqr()) {
        return Err(Error::RoundTripMismatch(residual.max(ju)));
    }
    Ok(Renormalized { theta_hat, u, residual })
}

/// Predicted and observed negative squares of `s = T_Θ(s1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NegativeSquares {
    pub parameter: usize,
    pub ev_neg_p: usize,
    pub predicted: usize,
    pub observed: usize,
}

impl NegativeSquares {
    pub fn agree(&self) -> bool {
        self.predicted == self.observed
    }
}

/// `sq₋(s1) + ev₋(P)` against the sampled `sq₋(T_Θ(s1))`.
pub fn solution_negative_squares(
    theta: &ThetaFn,
    s1: &RationalFn,
    plan: &SamplePlan,
    tol: &Tolerances,
) -> Result<NegativeSquares> {
    let s = theta.solve(s1, tol)?;
    let parameter = estimate_sq_minus(s1, plan, tol)?;
    let ev_neg_p = theta.ev_neg();
    let observed = estimate_sq_minus(&s, plan, tol)?;
    Ok(NegativeSquares {
        parameter,
        ev_neg_p,
        predicted: parameter + ev_neg_p,
        observed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::re;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn data(tau: &[Cplx]) -> InterpData {
        InterpData::new(re(1.0), re(1.0), tau.to_vec(), None, &tol()).unwrap()
    }

    fn lin(a: f64, b: f64) -> Poly {
        Poly::from_real(&[a, b])
    }

    #[test]
    fn toeplitz_examples() {
        assert_eq!(build_t(&data(&[re(1.0)])).rows(), vec![vec![re(1.0)]]);
        let t = build_t(&data(&[re(1.0), re(0.0)]));
        assert_eq!(t.rows(), vec![vec![re(1.0), re(0.0)], vec![re(0.0), re(1.0)]]);
        let i = Cplx::new(0.0, 1.0);
        let t = build_t(&data(&[i, -i]));
        assert_eq!(t.rows(), vec![vec![i, re(0.0)], vec![-i, i]]);
    }

    #[test]
    fn b_examples() {
        assert_eq!(build_b(&data(&[re(1.0)])).rows(), vec![vec![re(1.0)]]);
        let b = build_b(&data(&[re(1.0), re(0.0)]));
        assert_eq!(b.rows(), vec![vec![re(0.0), re(-1.0)], vec![re(1.0), re(-1.0)]]);
        let i = Cplx::new(0.0, 1.0);
        let d = InterpData::new(i, re(1.0), vec![re(1.0)], None, &tol()).unwrap();
        assert_eq!(build_b(&d).rows(), vec![vec![i]]);
    }

    #[test]
    fn b_three_by_three_pattern() {
        // z1 = 1, k = 3: columns (0,0,1), (0,-1,-1), (1,2,1)
        let b = build_b(&data(&[re(1.0), re(0.0), re(0.0)]));
        let want = [[0.0, 0.0, 1.0], [0.0, -1.0, 2.0], [1.0, -1.0, 1.0]];
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(b[(r, c)], re(want[r][c]));
            }
        }
    }

    #[test]
    fn pick_matrix_examples() {
        let t = tol();
        assert_eq!(
            build_pick_matrix(&data(&[re(1.0)]), &t).unwrap().matrix.rows(),
            vec![vec![re(1.0)]]
        );
        let p = build_pick_matrix(&data(&[re(-1.0)]), &t).unwrap();
        assert_eq!(p.matrix.rows(), vec![vec![re(-1.0)]]);
        assert_eq!(p.inertia.n_neg, 1);
        let i = Cplx::new(0.0, 1.0);
        let p = build_pick_matrix(&data(&[i, -i]), &t).unwrap();
        assert_eq!(p.matrix.rows(), vec![vec![re(0.0), -i], vec![i, re(0.0)]]);
        assert_eq!(p.inertia.n_neg, 1);
        assert_eq!(p.inertia.n_pos, 1);
    }

    #[test]
    fn non_hermitian_pick_rejected() {
        let d = data(&[Cplx::new(0.0, 1.0)]);
        assert!(matches!(build_pick_matrix(&d, &tol()), Err(Error::NonHermitianP(_))));
    }

    #[test]
    fn p_is_constant_in_scalar_cases() {
        let t = tol();
        for (tau1, want) in [(1.0, 0.5), (-1.0, -0.5), (0.25, 2.0), (0.75, 1.0 / 1.5)] {
            let d = data(&[re(tau1)]);
            let pick = build_pick_matrix(&d, &t).unwrap();
            let p = build_p(&d, &pick, &t).unwrap();
            assert_eq!(p.degree(), Some(0));
            assert!((p.coeff(0) - re(want)).norm() < 1e-14);
        }
    }

    #[test]
    fn theta_for_tau1_one() {
        let t = tol();
        let th = build_theta(&data(&[re(1.0)]), &t).unwrap();
        let den = lin(2.0, -2.0);
        let want = [lin(1.0, -3.0), lin(1.0, 1.0), lin(-1.0, -1.0), lin(3.0, -1.0)];
        for (e, w) in th.mat().entries().iter().zip(want) {
            let w = RationalFn::new(w, den.clone()).unwrap();
            assert!(e.coeff_error(&w) < 1e-12, "{e} vs {w}");
        }
    }

    #[test]
    fn theta_for_tau1_minus_one() {
        let t = tol();
        let th = build_theta(&data(&[re(-1.0)]), &t).unwrap();
        let den = lin(2.0, -2.0);
        let want = [lin(3.0, -1.0), lin(-1.0, -1.0), lin(1.0, 1.0), lin(1.0, -3.0)];
        for (e, w) in th.mat().entries().iter().zip(want) {
            assert!(e.coeff_error(&RationalFn::new(w, den.clone()).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn theta_alpha_family() {
        // 2α(1-z)Θ = [[2α-1-(2α+1)z, 1+z], [-1-z, 2α+1-(2α-1)z]]
        let t = tol();
        for alpha in [0.25, 0.5, 0.75] {
            let th = build_theta(&data(&[re(alpha)]), &t).unwrap();
            let den = lin(2.0 * alpha, -2.0 * alpha);
            let want = [
                lin(2.0 * alpha - 1.0, -(2.0 * alpha + 1.0)),
                lin(1.0, 1.0),
                lin(-1.0, -1.0),
                lin(2.0 * alpha + 1.0, -(2.0 * alpha - 1.0)),
            ];
            for (e, w) in th.mat().entries().iter().zip(want) {
                assert!(e.coeff_error(&RationalFn::new(w, den.clone()).unwrap()) < 1e-12);
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        let t = tol();
        let d = data(&[re(1.0)]);
        assert!(admissible_parameter(&RationalFn::constant(re(-1.0)), &d, &t).admissible);
        assert!(!admissible_parameter(&RationalFn::constant(re(1.0)), &d, &t).admissible);
        assert!(!admissible_parameter(&RationalFn::z(), &d, &t).admissible);
        let pole = RationalFn::new(Poly::one(), lin(-1.0, 1.0)).unwrap();
        assert!(admissible_parameter(&pole, &d, &t).admissible);
    }

    #[test]
    fn solve_examples() {
        let t = tol();
        let s = solve(&data(&[re(1.0)]), &RationalFn::constant(re(-1.0)), &t).unwrap();
        assert!(s.coeff_error(&RationalFn::z()) < 1e-12);
        let s = solve(&data(&[re(-1.0)]), &RationalFn::constant(re(-1.0)), &t).unwrap();
        assert!(s.coeff_error(&RationalFn::z().recip().unwrap()) < 1e-12);
        for alpha in [0.3, 0.5, 0.8] {
            let s = solve(&data(&[re(alpha)]), &RationalFn::constant(re(1.0 - 2.0 * alpha)), &t).unwrap();
            assert!(s.coeff_error(&RationalFn::from_poly(lin(1.0 - alpha, alpha))) < 1e-12);
        }
        assert!(matches!(
            solve(&data(&[re(1.0)]), &RationalFn::one(), &t),
            Err(Error::InadmissibleParameter(_))
        ));
    }

    #[test]
    fn verify_expansion_examples() {
        let t = tol();
        assert!(
            verify_expansion(&RationalFn::z(), &data(&[re(1.0)]), &t)
                .unwrap()
                .passed
        );
        let daum = RationalFn::from_poly(&lin(0.5, 0.5) + &lin(-1.0, 1.0).pow(4).scale(re(0.05)));
        assert!(verify_expansion(&daum, &data(&[re(0.5)]), &t).unwrap().passed);
        let r = verify_expansion(&RationalFn::z(), &data(&[re(-1.0)]), &t).unwrap();
        assert!(!r.passed);
        assert_eq!(r.first_failure(&t), Some(1));
        assert!((r.residuals[1] - 2.0).abs() < 1e-14);
        let pole = RationalFn::new(Poly::one(), lin(-1.0, 1.0)).unwrap();
        assert!(verify_expansion(&pole, &data(&[re(1.0)]), &t).is_err());
    }

    #[test]
    fn recover_examples() {
        let t = tol();
        let s1 = recover_parameter(&data(&[re(1.0)]), &RationalFn::z(), &t).unwrap();
        assert!(s1.coeff_error(&RationalFn::constant(re(-1.0))) < 1e-12);
        let s1 = recover_parameter(&data(&[re(-1.0)]), &RationalFn::z().recip().unwrap(), &t).unwrap();
        assert!(s1.coeff_error(&RationalFn::constant(re(-1.0))) < 1e-12);
    }

    #[test]
    fn recover_daumesnil_parameter() {
        // s1 = (2s - 1 - z) / ((1 + z)s - 2z) = 2(z-1)^2 / (z^3 - z^2 - z + 11)
        let t = tol();
        let daum = RationalFn::from_poly(&lin(0.5, 0.5) + &lin(-1.0, 1.0).pow(4).scale(re(0.05)));
        let s1 = recover_parameter(&data(&[re(0.5)]), &daum, &t).unwrap();
        let want = RationalFn::new(
            lin(-1.0, 1.0).pow(2).scale(re(2.0)),
            Poly::from_real(&[11.0, -1.0, -1.0, 1.0]),
        )
        .unwrap();
        assert!(s1.coeff_error(&want) < 1e-9, "{s1}");
    }

    #[test]
    fn denominator_closed_form_examples() {
        let t = tol();
        let th = build_theta(&data(&[re(1.0)]), &t).unwrap();
        let chk = th.denominator_closed_form(&RationalFn::constant(re(-1.0)), &t).unwrap();
        assert!(chk.agree);
        assert!(chk.numerator_at_z1 > 0.5);
        let chk = th.denominator_closed_form(&RationalFn::one(), &t).unwrap();
        assert!(chk.agree);
        assert!(chk.closed_form.coeff_error(&RationalFn::one()) < 1e-14);
        let th = build_theta(&data(&[re(0.3)]), &t).unwrap();
        assert!(
            th.denominator_closed_form(&RationalFn::constant(re(0.4)), &t)
                .unwrap()
                .agree
        );
    }

    #[test]
    fn renormalize_to_same_point_is_identity() {
        let t = tol();
        let r = renormalize(&data(&[re(1.0)]), re(-1.0), &t).unwrap();
        assert!(r.u[0][1].norm() < 1e-15 && (r.u[0][0] - re(1.0)).norm() < 1e-15);
    }

    #[test]
    fn renormalize_composition() {
        let t = tol();
        let i = Cplx::new(0.0, 1.0);
        for tau1 in [1.0, -1.0] {
            let d = data(&[re(tau1)]);
            let r = renormalize(&d, i, &t).unwrap();
            assert!(j_unitarity_residual(&r.u) < 1e-12);
            let x = RationalFn::constant(re(-1.0));
            let direct = build_theta(&d, &t).unwrap().mat().lft_apply(&x, &t).unwrap();
            let via = r
                .theta_hat
                .mat()
                .lft_apply(&Mat2RF::from_constants(r.u).lft_apply(&x, &t).unwrap(), &t)
                .unwrap();
            assert!(direct.approx_eq(&via, 1e-12));
        }
    }

    #[test]
    fn negative_squares_bookkeeping() {
        let t = tol();
        let plan = SamplePlan::default();
        let th = build_theta(&data(&[re(1.0)]), &t).unwrap();
        let ns = solution_negative_squares(&th, &RationalFn::constant(re(-1.0)), &plan, &t).unwrap();
        assert_eq!((ns.predicted, ns.observed), (0, 0));
        let th = build_theta(&data(&[re(-1.0)]), &t).unwrap();
        let ns = solution_negative_squares(&th, &RationalFn::constant(re(-1.0)), &plan, &t).unwrap();
        assert_eq!((ns.predicted, ns.observed), (1, 1));
        let half_z = RationalFn::from_poly(lin(0.0, 0.5));
        let ns = solution_negative_squares(&th, &half_z, &plan, &t).unwrap();
        assert_eq!((ns.predicted, ns.observed), (1, 1));
    }

    #[test]
    fn invalid_data_messages() {
        let t = tol();
        let e = InterpData::new(re(0.9), re(1.0), vec![re(1.0)], None, &t).unwrap_err();
        assert_eq!(e, Error::InvalidData("z1 not unimodular".into()));
        assert!(InterpData::new(re(1.0), re(1.0), vec![re(0.0)], None, &t).is_err());
        assert!(InterpData::new(re(1.0), re(1.0), vec![re(1.0)], Some(re(1.0)), &t).is_err());
        assert!(InterpData::new(re(1.0), re(1.0), vec![re(1.0); 9], None, &t).is_err());
    }
}
