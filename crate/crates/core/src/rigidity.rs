//! Rigidity diagnostics at a boundary point.
//!
//! For rational inputs every order of contact is an exact Taylor valuation.
//! The path-based slope fit [`remainder_order_numeric`] exists for
//! black-box inputs and is reported as a heuristic.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::interp::{build_theta, verify_expansion, InterpData};
use crate::rational::{cayley_of_fn, check_schur, Order, Poly, RationalFn, CIRCLE_SAMPLES};
use crate::{Cplx, Error, Execution, Result, Tolerances};

/// Smallest admissible distance from a path point to its endpoint.
pub const MIN_STEP: f64 = 1e-12;

/// Geometric approach path `z_j = z1 (1 - r0 ratio^j e^{iφ})`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathSpec {
    pub z1: Cplx,
    pub angle: f64,
    pub r0: f64,
    pub ratio: f64,
    pub count: usize,
}

impl PathSpec {
    /// Radial path toward `z1` with the default step sizes.
    pub fn radial(z1: Cplx) -> Self {
        PathSpec {
            z1,
            angle: 0.0,
            r0: 0.2,
            ratio: 0.75,
            count: 10,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if (self.z1.norm() - 1.0).abs() > 1e-9 {
            return bad("path endpoint must be unimodular");
        }
        if !(self.angle.abs() < PI / 2.0) {
            return bad("path angle must satisfy |phi| < pi/2");
        }
        if !(self.r0 > 0.0 && self.r0 < 2.0 * self.angle.cos()) {
            return bad("r0 must lie in (0, 2 cos phi)");
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return bad("ratio must lie in (0, 1)");
        }
        if self.count == 0 {
            return bad("path needs at least one point");
        }
        if self.r0 * self.ratio.powi(self.count as i32 - 1) < MIN_STEP {
            return bad("path steps fall below floating-point resolution");
        }
        Ok(())
    }

    /// `K = 2 / (2 cos φ - r0)`: every path point satisfies
    /// `|z - z1| < K (1 - |z|)`.
    pub fn stolz_constant(&self) -> f64 {
        2.0 / (2.0 * self.angle.cos() - self.r0)
    }
}

pub fn nontangential_path(spec: &PathSpec) -> Result<Vec<Cplx>> {
    spec.validate()?;
    let dir = Cplx::from_polar(1.0, spec.angle);
    Ok((0..spec.count)
        .map(|j| {
            let r = spec.r0 * spec.ratio.powi(j as i32);
            spec.z1 * (Cplx::new(1.0, 0.0) - dir * r)
        })
        .collect())
}

/// Least-squares slope of `log|f(z_j)|` against `log|z_j - z1|`.
/// Returns `+∞` when `|f| < 1e-300` somewhere on the path.
pub fn remainder_order_numeric(f: impl Fn(Cplx) -> Cplx, path: &[Cplx], z1: Cplx) -> Result<f64> {
    if path.len() < 2 {
        return Err(Error::InvalidArgument("slope fit needs two or more points".into()));
    }
    let mut xs = Vec::with_capacity(path.len());
    let mut ys = Vec::with_capacity(path.len());
    for &z in path {
        let v = f(z).norm();
        if !v.is_finite() {
            return Err(Error::InvalidArgument(format!("function not finite at {z}")));
        }
        if v < 1e-300 {
            return Ok(f64::INFINITY);
        }
        xs.push((z - z1).norm().ln());
        ys.push(v.ln());
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("path points are equidistant from z1".into()));
    }
    Ok(sxy / sxx)
}

/// `|s(z) - x|² / (1 - |s(z)|²)`.
pub fn julia_quotient(s: &RationalFn, z: Cplx, x: Cplx, tol: &Tolerances) -> Result<f64> {
    let v = s.eval(z);
    let m = v.norm();
    if !(m < 1.0 - tol.circle) {
        return Err(Error::ModulusAtLeastOne(m));
    }
    Ok((v - x).norm_sqr() / (1.0 - m * m))
}

/// `|1 - z|² / (1 - |z|²)`, the right-hand side of Julia's inequality.
pub fn julia_reference(z: Cplx) -> f64 {
    (Cplx::new(1.0, 0.0) - z).norm_sqr() / (1.0 - z.norm_sqr())
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaProbe {
    /// Vanishing order of `σ - x` at the path endpoint.
    pub order: Order,
    /// `σ ≡ x`.
    pub identical: bool,
    /// Order at most 1, or `σ ≡ x`.
    pub consistent: bool,
    /// Heuristic slope along the path; `None` when `σ ≡ x`.
    pub numeric_order: Option<f64>,
}

/// For Schur `σ` and unimodular `x`, `σ - x = O((z - z1)²)` forces `σ ≡ x`.
pub fn lemma_rl_probe(sigma: &RationalFn, x: Cplx, path: &PathSpec, tol: &Tolerances) -> Result<LemmaProbe> {
    if (x.norm() - 1.0).abs() > tol.circle {
        return Err(Error::InvalidArgument("x must be unimodular".into()));
    }
    check_schur(sigma, tol)?;
    let diff = sigma - &RationalFn::constant(x);
    let order = diff.vanishing_order(path.z1, tol);
    let identical = order.is_infinite();
    let consistent = identical || !order.at_least(2);
    let numeric_order = if identical {
        None
    } else {
        let pts = nontangential_path(path)?;
        Some(remainder_order_numeric(|z| diff.eval(z), &pts, path.z1)?)
    };
    Ok(LemmaProbe {
        order,
        identical,
        consistent,
        numeric_order,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RigidityVerdict {
    /// `2k + 2`.
    pub required_order: i64,
    /// Vanishing order of `s - b` at `z1`, `b = T_Θ(x)`.
    pub observed_order: Order,
    pub forced_identity: bool,
    /// `s ≡ b` within tolerance.
    pub identity_holds: bool,
    /// `forced_identity == identity_holds`.
    pub consistent: bool,
    /// Vanishing order of `s1 - x` for the recovered parameter `s1`.
    pub parameter_deviation_order: Option<Order>,
    /// Heuristic slope of `|s - b|` on a radial path.
    pub numeric_order: Option<f64>,
    pub residual_report: String,
}

/// Compares a verified solution `s` with `b = T_Θ(x)` at `z1`: contact of
/// order at least `2k + 2` forces `s ≡ b`.
pub fn rigidity_check(data: &InterpData, x: Cplx, s: &RationalFn, tol: &Tolerances) -> Result<RigidityVerdict> {
    if (x.norm() - 1.0).abs() > tol.circle {
        return Err(Error::InvalidArgument("x must be unimodular".into()));
    }
    if (x - data.tau0()).norm() <= tol.admissible {
        return Err(Error::InvalidContactPoint);
    }
    let theta = build_theta(data, tol)?;
    let expansion = verify_expansion(s, data, tol)?;
    if !expansion.passed {
        return Err(Error::ExpansionMismatch(format!(
            "candidate fails the prescribed expansion (largest residual {:e})",
            expansion.max_residual()
        )));
    }
    let xf = RationalFn::constant(x);
    let b = theta.solve(&xf, tol)?;
    let diff = s - &b;
    let observed_order = diff.vanishing_order(data.z1(), tol);
    let required_order = 2 * data.k() as i64 + 2;
    let forced_identity = observed_order.at_least(required_order);
    let identity_holds = s.approx_eq(&b, tol.root);

    let (parameter_deviation_order, numeric_order) = if identity_holds {
        (None, None)
    } else {
        let s1 = theta.recover_parameter(s, tol)?;
        let dev = (&s1 - &xf).vanishing_order(data.z1(), tol);
        let pts = nontangential_path(&PathSpec::radial(data.z1()))?;
        let slope = remainder_order_numeric(|z| diff.eval(z), &pts, data.z1()).ok();
        (Some(dev), slope)
    };

    let mut residual_report = String::new();
    let _ = write!(
        residual_report,
        "expansion residual {:.3e}; order of s - b at z1: {observed_order} (required {required_order})",
        expansion.max_residual()
    );
    if let Some(d) = parameter_deviation_order {
        let _ = write!(residual_report, "; order of s1 - x: {d}");
    }
    if let Some(n) = numeric_order {
        let _ = write!(residual_report, "; path slope {n:.3} (heuristic)");
    }

    Ok(RigidityVerdict {
        required_order,
        observed_order,
        forced_identity,
        identity_holds,
        consistent: forced_identity == identity_holds,
        parameter_deviation_order,
        numeric_order,
        residual_report,
    })
}

/// Data for `s(1) = 1`, `s'(1) = tau1` with `z0 = -1`.
pub fn angular_derivative_data(tau1: f64, tol: &Tolerances) -> Result<InterpData> {
    InterpData::new(
        Cplx::new(1.0, 0.0),
        Cplx::new(1.0, 0.0),
        vec![Cplx::new(tau1, 0.0)],
        None,
        tol,
    )
}

/// Polar grid with radii `r_max (i + 1) / n_radii` and angles
/// `2π j / n_angles`.
pub fn polar_grid(n_radii: usize, n_angles: usize, r_max: f64) -> Vec<Cplx> {
    let mut grid = Vec::with_capacity(n_radii * n_angles);
    for i in 0..n_radii {
        let r = r_max * (i + 1) as f64 / n_radii as f64;
        for j in 0..n_angles {
            grid.push(Cplx::from_polar(r, 2.0 * PI * j as f64 / n_angles as f64));
        }
    }
    grid
}

/// 40×40 polar grid with radii up to 0.995.
pub fn default_grid() -> Vec<Cplx> {
    polar_grid(40, 40, 0.995)
}

/// [`default_grid`] plus dense rings at radii `1 - 10^{-m}`, `m = 3, 4, 5`.
pub fn boundary_grid() -> Vec<Cplx> {
    let mut grid = default_grid();
    for m in 3..=5 {
        let r = 1.0 - 10f64.powi(-m);
        grid.extend((0..720).map(|j| Cplx::from_polar(r, 2.0 * PI * j as f64 / 720.0)));
    }
    grid
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HorocycleResult {
    pub holds: bool,
    /// First grid point where the quotient reaches `α / (1 - α)`.
    pub witness: Option<Cplx>,
    pub max_quotient: f64,
}

/// Tests `|1 - s(z)|² / (1 - |s(z)|²) < α / (1 - α)` on the grid, i.e.
/// whether `s` maps the grid into the horocycle at 1.
pub fn horocycle_check(
    s: &RationalFn,
    alpha: f64,
    grid: &[Cplx],
    exec: Execution,
    tol: &Tolerances,
) -> Result<HorocycleResult> {
    check_alpha(alpha)?;
    let bound = alpha / (1.0 - alpha);
    let one = Cplx::new(1.0, 0.0);
    let quotients = exec.map(grid, |&z| julia_quotient(s, z, one, tol));
    let mut witness = None;
    let mut max_quotient: f64 = 0.0;
    for (z, q) in grid.iter().zip(quotients) {
        let q = q?;
        max_quotient = max_quotient.max(q);
        if witness.is_none() && !(q < bound) {
            witness = Some(*z);
        }
    }
    Ok(HorocycleResult {
        holds: witness.is_none(),
        witness,
        max_quotient,
    })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument("alpha must lie in (0, 1)".into()))
    }
}

/// `αz + 1 - α`.
pub fn affine_solution(alpha: f64) -> RationalFn {
    RationalFn::from_poly(Poly::from_real(&[1.0 - alpha, alpha]))
}

/// `αz + 1 - α + β(1 - z)^4`, checked to be Schur on the circle.
pub fn make_daumesnil(alpha: f64, beta: f64, tol: &Tolerances) -> Result<RationalFn> {
    check_alpha(alpha)?;
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::InvalidArgument("beta must be finite and nonnegative".into()));
    }
    let quartic = Poly::from_real(&[1.0, -1.0]).pow(4).scale(Cplx::new(beta, 0.0));
    let s = RationalFn::from_poly(&Poly::from_real(&[1.0 - alpha, alpha]) + &quartic);
    check_schur(&s, tol)?;
    Ok(s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlphaEquivalences {
    /// (i) `s ≡ αz + 1 - α`.
    pub affine: bool,
    /// (ii) recovered parameter `≡ 1 - 2α`.
    pub constant_parameter: bool,
    /// (iii) `sup |s1| ≤ |1 - 2α|` on the closed disk.
    pub parameter_bound: bool,
    /// (v) horocycle inclusion on [`boundary_grid`].
    pub horocycle: bool,
    pub parameter: RationalFn,
    pub parameter_sup: f64,
    pub witness: Option<Cplx>,
}

impl AlphaEquivalences {
    pub fn all_agree(&self) -> bool {
        let v = [
            self.affine,
            self.constant_parameter,
            self.parameter_bound,
            self.horocycle,
        ];
        v.iter().all(|&b| b == v[0])
    }
}

/// Evaluates the equivalent conditions for a Schur function with
/// `s(z) = αz + 1 - α + O((1 - z)^4)`. Condition (iv) is the algebraic
/// restatement of (iii) through the inverse transform and is not evaluated
/// separately.
pub fn alpha_equivalences(s: &RationalFn, alpha: f64, exec: Execution, tol: &Tolerances) -> Result<AlphaEquivalences> {
    check_alpha(alpha)?;
    let data = angular_derivative_data(alpha, tol)?;
    let one = Cplx::new(1.0, 0.0);
    let lin = affine_solution(alpha);
    let expansion = verify_expansion(s, &data, tol)?;
    let contact = (s - &lin).vanishing_order(one, tol);
    if !expansion.passed || !contact.at_least(4) {
        return Err(Error::HypothesisNotMet(format!(
            "s - (alpha z + 1 - alpha) has order {contact} at 1, need 4"
        )));
    }

    let theta = build_theta(&data, tol)?;
    let parameter = theta.recover_parameter(s, tol)?;
    let c = Cplx::new(1.0 - 2.0 * alpha, 0.0);

    let affine = s.approx_eq(&lin, tol.root);
    let constant_parameter = parameter.approx_eq(&RationalFn::constant(c), tol.root);
    let disk_pole = parameter.poles(tol).iter().any(|p| p.center.norm() <= 1.0 + tol.root);
    let parameter_sup = if disk_pole {
        f64::INFINITY
    } else {
        parameter.circle_sup(CIRCLE_SAMPLES, exec)
    };
    let parameter_bound = parameter_sup <= c.norm() + tol.circle;
    let horo = horocycle_check(s, alpha, &boundary_grid(), exec, tol)?;

    Ok(AlphaEquivalences {
        affine,
        constant_parameter,
        parameter_bound,
        horocycle: horo.holds,
        parameter,
        parameter_sup,
        witness: horo.witness,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CayleyDecomposition {
    /// `f = (1 + s) / (1 - s)`.
    pub f: RationalFn,
    /// `f - (1 - α)/α`.
    pub f1: RationalFn,
    /// `f - C(z)/α - (1 - α)/α` with `C(z) = (1 + z)/(1 - z)`.
    pub r_f: RationalFn,
    /// Vanishing order of `r_f` at 1.
    pub r_f_order: Order,
    /// Smallest `Re r_f` over [`default_grid`].
    pub min_re_r_f: f64,
}

pub fn cayley_decomposition(
    s: &RationalFn,
    alpha: f64,
    exec: Execution,
    tol: &Tolerances,
) -> Result<CayleyDecomposition> {
    check_alpha(alpha)?;
    let f = cayley_of_fn(s, tol)?;
    let shift = RationalFn::constant(Cplx::new((1.0 - alpha) / alpha, 0.0));
    let f1 = (&f - &shift).reduced(tol)?;
    let cz = RationalFn::new(Poly::from_real(&[1.0, 1.0]), Poly::from_real(&[1.0, -1.0]))?;
    let r_f = (&f1 - &cz.scale(Cplx::new(1.0 / alpha, 0.0))).reduced(tol)?;
    let r_f_order = r_f.vanishing_order(Cplx::new(1.0, 0.0), tol);
    let min_re_r_f = exec
        .map(&default_grid(), |&z| r_f.eval(z).re)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok(CayleyDecomposition {
        f,
        f1,
        r_f,
        r_f_order,
        min_re_r_f,
    })
}
