//! JSON input files and the report schema. Complex numbers are `[re, im]`
//! arrays and polynomials are ascending coefficient arrays.

use schur_rigidity::interp::{ExpansionReport, NegativeSquares, PickMatrix};
use schur_rigidity::rigidity::{AlphaEquivalences, RigidityVerdict};
use schur_rigidity::{Cplx, InterpData, Poly, RationalFn, Tolerances};
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalJson {
    pub num: Vec<Cplx>,
    pub den: Vec<Cplx>,
}

impl RationalJson {
    pub fn from_fn(f: &RationalFn) -> Self {
        RationalJson {
            num: f.num().coeffs().to_vec(),
            den: f.den().coeffs().to_vec(),
        }
    }

    pub fn to_fn(&self) -> CliResult<RationalFn> {
        check_finite(&self.num, "num")?;
        check_finite(&self.den, "den")?;
        let f = RationalFn::new(Poly::new(self.num.clone()), Poly::new(self.den.clone()))
            .map_err(|e| CliError::invalid(format!("rational function: {e}")))?;
        if f.degree() > schur_rigidity::MAX_DEGREE {
            return Err(CliError::invalid(format!(
                "degree {} exceeds {}",
                f.degree(),
                schur_rigidity::MAX_DEGREE
            )));
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub z1: Cplx,
    pub k: usize,
    pub tau0: Cplx,
    pub tau: Vec<Cplx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z0: Option<Cplx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<RationalJson>,
}

impl ProblemFile {
    pub fn data(&self, tol: &Tolerances) -> CliResult<InterpData> {
        let scalars = [Some(self.z1), Some(self.tau0), self.z0];
        if scalars.iter().flatten().any(|c| !c.is_finite()) {
            return Err(CliError::invalid("non-finite input"));
        }
        check_finite(&self.tau, "tau")?;
        if self.tau.len() != self.k {
            return Err(CliError::invalid(format!(
                "k = {} but {} tau coefficients were given",
                self.k,
                self.tau.len()
            )));
        }
        InterpData::new(self.z1, self.tau0, self.tau.clone(), self.z0, tol).map_err(CliError::from_core)
    }
}

fn check_finite(v: &[Cplx], what: &str) -> CliResult<()> {
    if v.iter().any(|c| !c.is_finite()) {
        return Err(CliError::invalid(format!("non-finite value in {what}")));
    }
    Ok(())
}

/// Non-finite floats become `None`, since JSON has no representation for them.
pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceJson {
    pub trim: f64,
    pub root: f64,
    pub circle: f64,
    pub order: f64,
    pub herm: f64,
    pub admissible: f64,
    pub inertia: f64,
}

impl From<&Tolerances> for ToleranceJson {
    fn from(t: &Tolerances) -> Self {
        ToleranceJson {
            trim: t.trim,
            root: t.root,
            circle: t.circle,
            order: t.order,
            herm: t.herm,
            admissible: t.admissible,
            inertia: t.inertia,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InertiaJson {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PickJson {
    pub matrix: Vec<Vec<Cplx>>,
    pub inertia: InertiaJson,
    pub condition: f64,
}

impl From<&PickMatrix> for PickJson {
    fn from(p: &PickMatrix) -> Self {
        PickJson {
            matrix: p.matrix.rows(),
            inertia: InertiaJson {
                positive: p.inertia.n_pos,
                negative: p.inertia.n_neg,
                zero: p.inertia.n_zero,
            },
            condition: p.condition,
        }
    }
}

/// Entries of `Θ`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaJson {
    pub a: RationalJson,
    pub b: RationalJson,
    pub c: RationalJson,
    pub d: RationalJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionJson {
    pub coefficients: Vec<Cplx>,
    pub expected: Vec<Cplx>,
    pub residuals: Vec<f64>,
    pub passed: bool,
    pub nearest_pole: Option<f64>,
}

impl From<&ExpansionReport> for ExpansionJson {
    fn from(r: &ExpansionReport) -> Self {
        ExpansionJson {
            coefficients: r.coefficients.clone(),
            expected: r.expected.clone(),
            residuals: r.residuals.clone(),
            passed: r.passed,
            nearest_pole: finite(r.nearest_pole),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NegativeSquaresJson {
    pub parameter: usize,
    pub ev_neg_p: usize,
    pub predicted: usize,
    pub observed: usize,
}

impl From<&NegativeSquares> for NegativeSquaresJson {
    fn from(n: &NegativeSquares) -> Self {
        NegativeSquaresJson {
            parameter: n.parameter,
            ev_neg_p: n.ev_neg_p,
            predicted: n.predicted,
            observed: n.observed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateJson {
    /// Largest negative count seen: a lower bound for the number of negative squares.
    pub estimate: usize,
    /// `(points, negative eigenvalues)` per sampling round.
    pub rounds: Vec<(usize, usize)>,
    /// Number of poles in the disk, from the Krein–Langer factorization.
    pub pole_count: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorJson {
    pub s0: RationalJson,
    pub zeros: Vec<Cplx>,
    pub constant: Cplx,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RigidityJson {
    pub required_order: i64,
    /// Integer or `"inf"`.
    pub observed_order: String,
    pub forced_identity: bool,
    pub identity_holds: bool,
    pub consistent: bool,
    pub parameter_deviation_order: Option<String>,
    pub numeric_order: Option<f64>,
    pub residual_report: String,
}

impl From<&RigidityVerdict> for RigidityJson {
    fn from(v: &RigidityVerdict) -> Self {
        RigidityJson {
            required_order: v.required_order,
            observed_order: v.observed_order.to_string(),
            forced_identity: v.forced_identity,
            identity_holds: v.identity_holds,
            consistent: v.consistent,
            parameter_deviation_order: v.parameter_deviation_order.map(|o| o.to_string()),
            numeric_order: v.numeric_order.and_then(finite),
            residual_report: v.residual_report.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceJson {
    pub affine: bool,
    pub constant_parameter: bool,
    pub parameter_bound: bool,
    pub horocycle: bool,
    pub parameter: RationalJson,
    pub parameter_sup: f64,
    pub witness: Option<Cplx>,
}

impl From<&AlphaEquivalences> for EquivalenceJson {
    fn from(r: &AlphaEquivalences) -> Self {
        EquivalenceJson {
            affine: r.affine,
            constant_parameter: r.constant_parameter,
            parameter_bound: r.parameter_bound,
            horocycle: r.horocycle,
            parameter: RationalJson::from_fn(&r.parameter),
            parameter_sup: r.parameter_sup,
            witness: r.witness,
        }
    }
}

/// One row of a demo's golden-value table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pick: Option<PickJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<Cplx>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<ThetaJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<RationalJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expansion: Option<ExpansionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negative_squares: Option<NegativeSquaresJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimate: Option<EstimateJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<FactorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rigidity: Option<RigidityJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equivalences: Option<EquivalenceJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    pub tolerances: ToleranceJson,
    pub seed: u64,
}

impl Report {
    pub fn new(command: &str, tol: &Tolerances, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            status: Status::Pass,
            error: None,
            pick: None,
            p: None,
            theta: None,
            solution: None,
            expansion: None,
            negative_squares: None,
            estimate: None,
            factor: None,
            rigidity: None,
            equivalences: None,
            checks: Vec::new(),
            tolerances: tol.into(),
            seed,
        }
    }

    /// Checks the structural invariants a parsed report must satisfy.
    pub fn validate(&self) -> Result<(), String> {
        let finite_c = |v: &[Cplx]| v.iter().all(|c| c.is_finite());
        if let Some(p) = &self.pick {
            let n = p.matrix.len();
            if p.matrix.iter().any(|r| r.len() != n || !finite_c(r)) {
                return Err("pick matrix must be square and finite".into());
            }
            if p.inertia.positive + p.inertia.negative + p.inertia.zero != n {
                return Err("inertia does not add up to the matrix size".into());
            }
        }
        if let Some(e) = &self.expansion {
            if e.coefficients.len() != e.expected.len() || e.residuals.len() != e.expected.len() {
                return Err("expansion arrays differ in length".into());
            }
        }
        if self.status == Status::Invalid && self.error.is_none() {
            return Err("invalid status without an error message".into());
        }
        for f in [&self.solution, &self.factor.as_ref().map(|f| f.s0.clone())]
            .into_iter()
            .flatten()
        {
            if f.den.is_empty() || !finite_c(&f.num) || !finite_c(&f.den) {
                return Err("rational function must have a finite, nonempty denominator".into());
            }
        }
        Ok(())
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Invalid => 2,
        }
    }
}
