//! The `solve`, `negsq`, `rigidity` and `factor` pipelines.

use schur_rigidity::interp::{build_theta, solution_negative_squares, ThetaFn};
use schur_rigidity::kernel::estimate_sq_minus_detailed;
use schur_rigidity::rational::krein_langer_factor;
use schur_rigidity::rigidity::{alpha_equivalences, rigidity_check};
use schur_rigidity::{Cplx, InterpData};

use crate::model::{
    EquivalenceJson, EstimateJson, ExpansionJson, FactorJson, NegativeSquaresJson, PickJson, RationalJson,
    RigidityJson, ThetaJson,
};
use crate::{CliError, CliResult, ProblemFile, Report, Settings};

/// Runs `body` on a fresh report; an early error sets the status and message.
pub fn run(command: &str, settings: &Settings, body: impl FnOnce(&mut Report) -> CliResult<()>) -> Report {
    let mut report = Report::new(command, &settings.tol, settings.plan.seed);
    if let Err(e) = settings.validate().and_then(|_| body(&mut report)) {
        report.status = e.status;
        report.error = Some(e.message);
    }
    report
}

/// Records `P`, `p` and the entries of `Θ`.
pub fn describe_theta(report: &mut Report, theta: &ThetaFn) {
    report.pick = Some(PickJson::from(theta.pick()));
    report.p = Some(theta.p().coeffs().to_vec());
    let [a, b, c, d] = theta.mat().entries().map(RationalJson::from_fn);
    report.theta = Some(ThetaJson { a, b, c, d });
}

pub fn solve(problem: &ProblemFile, settings: &Settings) -> Report {
    run("solve", settings, |report| {
        let tol = &settings.tol;
        let data = problem.data(tol)?;
        let s1 = problem
            .parameter
            .as_ref()
            .ok_or_else(|| CliError::invalid("parameter missing"))?
            .to_fn()?;
        let theta = build_theta(&data, tol)?;
        describe_theta(report, &theta);
        let (s, expansion) = theta.solve_checked(&s1, tol)?;
        report.solution = Some(RationalJson::from_fn(&s));
        report.expansion = Some(ExpansionJson::from(&expansion));
        let ns = solution_negative_squares(&theta, &s1, &settings.plan, tol)?;
        report.negative_squares = Some(NegativeSquaresJson::from(&ns));
        if !expansion.passed {
            return Err(CliError::failed(format!(
                "solution misses the prescribed expansion (largest residual {:e})",
                expansion.max_residual()
            )));
        }
        if !ns.agree() {
            return Err(CliError::failed(format!(
                "negative squares: predicted {}, observed {}",
                ns.predicted, ns.observed
            )));
        }
        Ok(())
    })
}

pub fn negsq(function: &RationalJson, settings: &Settings) -> Report {
    run("negsq", settings, |report| {
        let s = function.to_fn()?;
        let est = estimate_sq_minus_detailed(&s, &settings.plan, &settings.tol)?;
        let factor = krein_langer_factor(&s, &settings.tol);
        let pole_count = factor.as_ref().ok().map(|(_, b)| b.order());
        report.estimate = Some(EstimateJson {
            estimate: est.kappa,
            rounds: est.rounds.iter().map(|r| (r.points, r.inertia.n_neg)).collect(),
            pole_count,
        });
        match (factor, pole_count) {
            (Err(e), _) => Err(CliError::failed(format!(
                "no factorization to cross-check against: {e}"
            ))),
            (_, Some(n)) if n != est.kappa => Err(CliError::failed(format!(
                "estimate {} disagrees with {n} poles in the disk",
                est.kappa
            ))),
            _ => Ok(()),
        }
    })
}

pub fn rigidity(problem: &ProblemFile, x: Cplx, candidate: &RationalJson, settings: &Settings) -> Report {
    run("rigidity", settings, |report| {
        let tol = &settings.tol;
        let data = problem.data(tol)?;
        if !x.is_finite() || (x.norm() - 1.0).abs() > tol.circle {
            return Err(CliError::invalid("x not unimodular"));
        }
        let s = candidate.to_fn()?;
        let verdict = rigidity_check(&data, x, &s, tol)?;
        report.rigidity = Some(RigidityJson::from(&verdict));
        let mut consistent = verdict.consistent;
        if let Some(alpha) = angular_derivative(&data) {
            if let Ok(eq) = alpha_equivalences(&s, alpha, settings.plan.execution, tol) {
                consistent &= eq.all_agree();
                report.equivalences = Some(EquivalenceJson::from(&eq));
            }
        }
        if !consistent {
            return Err(CliError::failed("internal consistency checks disagree"));
        }
        Ok(())
    })
}

/// `α` when the data prescribe `s(1) = 1`, `s'(1) = α` with `0 < α < 1`.
fn angular_derivative(data: &InterpData) -> Option<f64> {
    let one = Cplx::new(1.0, 0.0);
    let close = |a: Cplx, b: Cplx| (a - b).norm() <= 1e-12;
    if data.k() != 1 || !close(data.z1(), one) || !close(data.tau0(), one) || !close(data.z0(), -one) {
        return None;
    }
    let t = data.tau()[0];
    (t.im.abs() <= 1e-12 && t.re > 0.0 && t.re < 1.0).then_some(t.re)
}

pub fn factor(function: &RationalJson, settings: &Settings) -> Report {
    run("factor", settings, |report| {
        let s = function.to_fn()?;
        let (s0, b) = krein_langer_factor(&s, &settings.tol).map_err(|e| CliError::failed(e.to_string()))?;
        report.factor = Some(FactorJson {
            s0: RationalJson::from_fn(&s0),
            zeros: b.zeros().to_vec(),
            constant: b.unimodular_const(),
        });
        Ok(())
    })
}

/// Parses `re,im` (or a bare real number).
pub fn parse_complex(text: &str) -> Result<Cplx, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().map_err(|e| format!("{s:?}: {e}"));
    let z = match parts.as_slice() {
        [r] => Cplx::new(num(r)?, 0.0),
        [r, i] => Cplx::new(num(r)?, num(i)?),
        _ => return Err(format!("expected re,im but got {text:?}")),
    };
    if !z.is_finite() {
        return Err("non-finite value".into());
    }
    Ok(z)
}
