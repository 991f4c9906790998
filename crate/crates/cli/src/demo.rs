//! End-to-end reruns of three worked examples against their golden values.

use schur_rigidity::interp::{build_pick_matrix, build_theta, solution_negative_squares, ThetaFn};
use schur_rigidity::rigidity::{
    affine_solution, alpha_equivalences, angular_derivative_data, default_grid, horocycle_check, make_daumesnil,
    rigidity_check,
};
use schur_rigidity::{Cplx, Poly, RationalFn};

use crate::commands::{describe_theta, run};
use crate::model::{Check, EquivalenceJson, NegativeSquaresJson, RationalJson, RigidityJson};
use crate::{CliError, CliResult, Report, Settings};

const GOLDEN: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Demo {
    /// `s(1) = 1`, `s'(1) = 1`: the boundary Schwarz lemma.
    BurnsKrantz,
    /// `s(1) = 1`, `s'(1) = -1`: an indefinite example solved by `1/z`.
    Inverse,
    /// `s(1) = 1`, `s'(1) = α`.
    Alpha(f64),
}

pub fn demo(which: Demo, settings: &Settings) -> Report {
    let name = match which {
        Demo::BurnsKrantz => "demo burns-krantz",
        Demo::Inverse => "demo inverse",
        Demo::Alpha(_) => "demo alpha",
    };
    run(name, settings, |report| {
        match which {
            Demo::BurnsKrantz => burns_krantz(report, settings)?,
            Demo::Inverse => inverse(report, settings)?,
            Demo::Alpha(alpha) => alpha_demo(report, alpha, settings)?,
        }
        if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
            return Err(CliError::failed(format!("golden value mismatch: {}", bad.name)));
        }
        Ok(())
    })
}

fn check(report: &mut Report, name: &str, passed: bool, detail: String) {
    report.checks.push(Check {
        name: name.to_string(),
        passed,
        detail,
    });
}

fn lin(a: f64, b: f64) -> Poly {
    Poly::from_real(&[a, b])
}

fn rf(num: Poly, den: Poly) -> CliResult<RationalFn> {
    Ok(RationalFn::new(num, den)?)
}

/// Largest coefficient error of the entries of `Θ` against
/// `[[a, b], [c, d]] / den`.
fn theta_error(theta: &ThetaFn, want: [Poly; 4], den: &Poly) -> CliResult<f64> {
    let mut err: f64 = 0.0;
    for (e, w) in theta.mat().entries().iter().zip(want) {
        err = err.max(e.coeff_error(&rf(w, den.clone())?));
    }
    Ok(err)
}

fn burns_krantz(report: &mut Report, settings: &Settings) -> CliResult<()> {
    let tol = &settings.tol;
    let data = angular_derivative_data(1.0, tol)?;
    let theta = build_theta(&data, tol)?;
    describe_theta(report, &theta);

    let want = [lin(1.0, -3.0), lin(1.0, 1.0), lin(-1.0, -1.0), lin(3.0, -1.0)];
    let err = theta_error(&theta, want, &lin(2.0, -2.0))?;
    check(
        report,
        "2(1-z) Theta = [[1-3z, 1+z], [-1-z, 3-z]]",
        err <= GOLDEN,
        format!("coefficient error {err:.1e}"),
    );

    let minus_one = RationalFn::constant(Cplx::new(-1.0, 0.0));
    let s = theta.solve(&minus_one, tol)?;
    let err = s.coeff_error(&RationalFn::z());
    report.solution = Some(RationalJson::from_fn(&s));
    check(
        report,
        "parameter -1 gives s = z",
        err <= GOLDEN,
        format!("coefficient error {err:.1e}"),
    );

    let x = Cplx::new(-1.0, 0.0);
    let v = rigidity_check(&data, x, &RationalFn::z(), tol)?;
    check(
        report,
        "candidate z at x = -1 is forced",
        v.forced_identity && v.consistent,
        format!("observed order {}, required {}", v.observed_order, v.required_order),
    );
    report.rigidity = Some(RigidityJson::from(&v));

    let other = theta.solve(&RationalFn::z().scale(x), tol)?;
    let v = rigidity_check(&data, x, &other, tol)?;
    check(
        report,
        "candidate from parameter -z is not forced",
        !v.forced_identity && v.consistent && v.observed_order.at_least(3) && !v.observed_order.at_least(4),
        format!("observed order {}, required {}", v.observed_order, v.required_order),
    );
    Ok(())
}

fn inverse(report: &mut Report, settings: &Settings) -> CliResult<()> {
    let tol = &settings.tol;
    let data = angular_derivative_data(-1.0, tol)?;
    let pick = build_pick_matrix(&data, tol)?;
    let p = pick.matrix[(0, 0)];
    check(
        report,
        "P = -1",
        (p - Cplx::new(-1.0, 0.0)).norm() <= GOLDEN,
        format!("P = {p}"),
    );
    let theta = build_theta(&data, tol)?;
    describe_theta(report, &theta);

    let want = [lin(3.0, -1.0), lin(-1.0, -1.0), lin(1.0, 1.0), lin(1.0, -3.0)];
    let err = theta_error(&theta, want, &lin(2.0, -2.0))?;
    check(
        report,
        "2(1-z) Theta = [[3-z, -1-z], [1+z, 1-3z]]",
        err <= GOLDEN,
        format!("coefficient error {err:.1e}"),
    );

    let minus_one = RationalFn::constant(Cplx::new(-1.0, 0.0));
    let s = theta.solve(&minus_one, tol)?;
    let err = s.coeff_error(&RationalFn::z().recip()?);
    report.solution = Some(RationalJson::from_fn(&s));
    check(
        report,
        "parameter -1 gives s = 1/z",
        err <= GOLDEN,
        format!("coefficient error {err:.1e}"),
    );

    let ns = solution_negative_squares(&theta, &minus_one, &settings.plan, tol)?;
    check(
        report,
        "negative squares (predicted, observed) = (1, 1)",
        (ns.predicted, ns.observed) == (1, 1),
        format!("({}, {})", ns.predicted, ns.observed),
    );
    report.negative_squares = Some(NegativeSquaresJson::from(&ns));
    Ok(())
}

fn alpha_demo(report: &mut Report, alpha: f64, settings: &Settings) -> CliResult<()> {
    let tol = &settings.tol;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CliError::invalid("alpha must lie in (0, 1)"));
    }
    let data = angular_derivative_data(alpha, tol)?;
    let theta = build_theta(&data, tol)?;
    describe_theta(report, &theta);

    let p_err = (theta.p() - &Poly::constant(Cplx::new(1.0 / (2.0 * alpha), 0.0))).max_abs();
    check(report, "p = 1/(2 alpha)", p_err <= GOLDEN, format!("error {p_err:.1e}"));

    let s = theta.solve(&RationalFn::constant(Cplx::new(1.0 - 2.0 * alpha, 0.0)), tol)?;
    let err = s.coeff_error(&affine_solution(alpha));
    report.solution = Some(RationalJson::from_fn(&s));
    check(
        report,
        "parameter 1 - 2 alpha gives s = alpha z + 1 - alpha",
        err <= GOLDEN,
        format!("coefficient error {err:.1e}"),
    );

    let exec = settings.plan.execution;
    let affine = alpha_equivalences(&affine_solution(alpha), alpha, exec, tol)?;
    check(
        report,
        "affine solution: all four conditions hold",
        affine.all_agree() && affine.affine,
        format!("parameter sup {:.3e}", affine.parameter_sup),
    );

    let quartic = make_daumesnil(alpha, alpha / 10.0, tol)?;
    let eq = alpha_equivalences(&quartic, alpha, exec, tol)?;
    check(
        report,
        "quartic perturbation: all four conditions fail",
        eq.all_agree() && !eq.affine,
        format!(
            "parameter sup {:.4} vs bound {:.4}",
            eq.parameter_sup,
            (1.0 - 2.0 * alpha).abs()
        ),
    );
    let horo = horocycle_check(&quartic, alpha, &default_grid(), exec, tol)?;
    check(
        report,
        "quartic perturbation leaves the horocycle",
        horo.witness.is_some(),
        match horo.witness {
            Some(w) => format!("witness {w:.4}"),
            None => format!("largest quotient {:.4}", horo.max_quotient),
        },
    );
    report.equivalences = Some(EquivalenceJson::from(&eq));
    Ok(())
}
