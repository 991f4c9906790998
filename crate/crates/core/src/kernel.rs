//! The kernel `k_s(z, w) = (1 - s(z) conj(s(w))) / (1 - z conj(w))`, its
//! sampled Gram matrices, Hermitian inertia and a negative-squares
//! estimator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{hermitian_eigenvalues, CMatrix};
use crate::{Cplx, Error, Execution, RationalFn, Result, Tolerances};

/// Counts of positive, negative and (numerically) zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Inertia {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.n_pos + self.n_neg + self.n_zero
    }
}

/// Point-sampling plan for [`estimate_sq_minus`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplePlan {
    pub max_points: usize,
    /// Points are drawn from the disk `|z| < radius`.
    pub radius: f64,
    /// Minimum distance from every pole.
    pub pole_clearance: f64,
    pub seed: u64,
    pub stabilization_rounds: usize,
    pub initial_points: usize,
    pub execution: Execution,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            max_points: 128,
            radius: 0.95,
            pole_clearance: 0.05,
            seed: 0x5eed_2024,
            stabilization_rounds: 3,
            initial_points: 4,
            execution: Execution::default(),
        }
    }
}

impl SamplePlan {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "sample radius {} must lie in (0, 1)",
                self.radius
            )));
        }
        if !(self.pole_clearance > 0.0) {
            return Err(Error::InvalidArgument("pole clearance must be positive".into()));
        }
        if self.max_points == 0 || self.initial_points == 0 {
            return Err(Error::InvalidArgument("point counts must be positive".into()));
        }
        Ok(())
    }
}

/// A function together with its poles, ready for repeated kernel evaluation.
#[derive(Clone, Debug)]
pub struct Kernel {
    s: RationalFn,
    poles: Vec<Cplx>,
    clearance: f64,
    eps: f64,
}

impl Kernel {
    pub fn new(s: &RationalFn, clearance: f64, tol: &Tolerances) -> Result<Self> {
        let s = s.reduced(tol)?;
        let poles = s.poles(tol).into_iter().map(|c| c.center).collect();
        Ok(Kernel {
            s,
            poles,
            clearance,
            eps: tol.root,
        })
    }

    pub fn function(&self) -> &RationalFn {
        &self.s
    }

    pub fn poles(&self) -> &[Cplx] {
        &self.poles
    }

    /// True when `z` keeps the required distance from every pole.
    pub fn is_clear(&self, z: Cplx) -> bool {
        self.poles.iter().all(|p| (z - p).norm() > self.clearance)
    }

    fn value(&self, z: Cplx) -> Result<Cplx> {
        if !self.is_clear(z) {
            return Err(Error::PoleProximity(z));
        }
        Ok(self.s.eval(z))
    }

    pub fn eval(&self, z: Cplx, w: Cplx) -> Result<Cplx> {
        let sz = self.value(z)?;
        let sw = self.value(w)?;
        entry(sz, sw, z, w, self.eps)
    }
}

fn entry(sz: Cplx, sw: Cplx, z: Cplx, w: Cplx, eps: f64) -> Result<Cplx> {
    let one = Cplx::new(1.0, 0.0);
    let den = one - z * w.conj();
    if den.norm() <= eps {
        return Err(Error::DiagonalSingularity);
    }
    Ok((one - sz * sw.conj()) / den)
}

/// `k_s(z, w)` for a single pair of points.
pub fn kernel_eval(s: &RationalFn, z: Cplx, w: Cplx, clearance: f64, tol: &Tolerances) -> Result<Cplx> {
    Kernel::new(s, clearance, tol)?.eval(z, w)
}

/// Gram matrix of the kernel on a point set, symmetrized.
#[derive(Clone, Debug)]
pub struct HermitianSample {
    pub points: Vec<Cplx>,
    pub entries: CMatrix,
    /// `max |M - M*|` before symmetrization.
    pub asymmetry: f64,
    /// `max (1 + |s(z)| |s(w)|) / |1 - z conj(w)|`, the size of the terms
    /// that cancel in each entry.
    pub magnitude: f64,
}

pub fn gram_matrix(kernel: &Kernel, points: &[Cplx]) -> Result<HermitianSample> {
    gram_matrix_with(kernel, points, Execution::default())
}

pub fn gram_matrix_with(kernel: &Kernel, points: &[Cplx], exec: Execution) -> Result<HermitianSample> {
    let values: Vec<Cplx> = points.iter().map(|&z| kernel.value(z)).collect::<Result<_>>()?;
    let n = points.len();
    let rows: Vec<Result<Vec<Cplx>>> = exec.map_range(n, |l| {
        (0..n)
            .map(|j| entry(values[l], values[j], points[l], points[j], kernel.eps))
            .collect()
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let raw = CMatrix::from_rows(rows);
    let asymmetry = raw.asymmetry();
    let mut magnitude: f64 = 0.0;
    for (l, z) in points.iter().enumerate() {
        for (j, w) in points.iter().enumerate() {
            let den = (Cplx::new(1.0, 0.0) - z * w.conj()).norm();
            magnitude = magnitude.max((1.0 + values[l].norm() * values[j].norm()) / den);
        }
    }
    Ok(HermitianSample {
        points: points.to_vec(),
        entries: raw.symmetrized(),
        asymmetry,
        magnitude,
    })
}

/// Eigenvalue sign counts. Eigenvalues within `tol.inertia · n · max|entry|`
/// of zero are counted as zero.
pub fn inertia(h: &CMatrix, tol: &Tolerances) -> Result<Inertia> {
    inertia_with_floor(h, 0.0, tol)
}

/// [`inertia`] with the band measured against `max(max|entry|, floor)`.
/// For a Gram matrix pass [`HermitianSample::magnitude`], so that entries
/// made only of cancellation error count as zero.
pub fn inertia_with_floor(h: &CMatrix, floor: f64, tol: &Tolerances) -> Result<Inertia> {
    let n = h.dim();
    let scale = h.max_abs().max(floor);
    let asym = h.asymmetry();
    if asym > tol.herm * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NotHermitian(asym));
    }
    let band = tol.inertia * n as f64 * scale;
    let ev = hermitian_eigenvalues(h);
    let mut out = Inertia::default();
    for v in ev {
        if v > band {
            out.n_pos += 1;
        } else if v < -band {
            out.n_neg += 1;
        } else {
            out.n_zero += 1;
        }
    }
    Ok(out)
}

/// Seeded points in `|z| < radius`, clear of poles.
pub fn sample_points(kernel: &Kernel, plan: &SamplePlan) -> Result<Vec<Cplx>> {
    plan.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut pts = Vec::with_capacity(plan.max_points);
    let mut attempts = 0usize;
    while pts.len() < plan.max_points && attempts < 100 * plan.max_points {
        attempts += 1;
        let r = plan.radius * rng.random::<f64>().sqrt();
        let t = 2.0 * std::f64::consts::PI * rng.random::<f64>();
        let z = Cplx::from_polar(r, t);
        if kernel.is_clear(z) {
            pts.push(z);
        }
    }
    if pts.is_empty() {
        return Err(Error::NoAnalyticPoints);
    }
    Ok(pts)
}

/// One sampling round of the estimator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Round {
    pub points: usize,
    pub inertia: Inertia,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SqMinusEstimate {
    /// Largest negative count observed: a lower bound for `sq₋(s)`.
    pub kappa: usize,
    pub rounds: Vec<Round>,
}

/// Lower-bound estimate of the number of negative squares of `k_s`.
///
/// The point count doubles each round over a nested sequence of seeded
/// points; the estimate is returned once the running maximum of negative
/// eigenvalue counts has not changed for `stabilization_rounds` rounds (or
/// the point budget is spent).
pub fn estimate_sq_minus(s: &RationalFn, plan: &SamplePlan, tol: &Tolerances) -> Result<usize> {
    Ok(estimate_sq_minus_detailed(s, plan, tol)?.kappa)
}

pub fn estimate_sq_minus_detailed(s: &RationalFn, plan: &SamplePlan, tol: &Tolerances) -> Result<SqMinusEstimate> {
    let kernel = Kernel::new(s, plan.pole_clearance, tol)?;
    let pts = sample_points(&kernel, plan)?;
    let mut rounds = Vec::new();
    let mut best = 0usize;
    let mut stable = 0usize;
    let mut n = plan.initial_points.min(pts.len());
    loop {
        let g = gram_matrix_with(&kernel, &pts[..n], plan.execution)?;
        let inert = inertia_with_floor(&g.entries, g.magnitude, tol)?;
        rounds.push(Round {
            points: n,
            inertia: inert,
        });
        if rounds.len() > 1 && inert.n_neg <= best {
            stable += 1;
        } else {
            stable = 0;
        }
        best = best.max(inert.n_neg);
        if stable >= plan.stabilization_rounds || n == pts.len() {
            break;
        }
        n = (2 * n).min(pts.len());
    }
    Ok(SqMinusEstimate { kappa: best, rounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{re, Poly};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn inv_z() -> RationalFn {
        RationalFn::z().recip().unwrap()
    }

    #[test]
    fn kernel_of_unimodular_constant_vanishes() {
        let s = RationalFn::constant(Cplx::from_polar(1.0, 0.3));
        let k = kernel_eval(&s, Cplx::new(0.2, 0.1), Cplx::new(-0.4, 0.3), 0.05, &tol()).unwrap();
        assert!(k.norm() < 1e-15);
    }

    #[test]
    fn kernel_of_identity_is_one() {
        let k = kernel_eval(
            &RationalFn::z(),
            Cplx::new(0.2, 0.1),
            Cplx::new(-0.4, 0.3),
            0.05,
            &tol(),
        )
        .unwrap();
        assert!((k - re(1.0)).norm() < 1e-15);
    }

    #[test]
    fn kernel_of_reciprocal() {
        let k = kernel_eval(&inv_z(), re(0.5), re(0.5), 0.05, &tol()).unwrap();
        assert!((k - re(-4.0)).norm() < 1e-13);
    }

    #[test]
    fn kernel_errors() {
        let t = tol();
        assert_eq!(
            kernel_eval(&RationalFn::z(), re(1.0), re(1.0), 0.05, &t),
            Err(Error::DiagonalSingularity)
        );
        assert!(matches!(
            kernel_eval(&inv_z(), re(0.01), re(0.5), 0.05, &t),
            Err(Error::PoleProximity(_))
        ));
    }

    #[test]
    fn gram_examples() {
        let t = tol();
        let pts = [re(0.1), Cplx::new(0.2, -0.3), Cplx::new(-0.5, 0.5)];
        let g = gram_matrix(&Kernel::new(&RationalFn::z(), 0.05, &t).unwrap(), &pts).unwrap();
        assert!(g.entries.rows().iter().flatten().all(|x| (x - re(1.0)).norm() < 1e-15));
        let g = gram_matrix(&Kernel::new(&RationalFn::one(), 0.05, &t).unwrap(), &pts).unwrap();
        assert_eq!(g.entries.max_abs(), 0.0);
        let g = gram_matrix(&Kernel::new(&inv_z(), 0.05, &t).unwrap(), &[re(0.5), re(1.0 / 3.0)]).unwrap();
        let want = [[-4.0, -6.0], [-6.0, -9.0]];
        for (i, row) in want.iter().enumerate() {
            for (j, w) in row.iter().enumerate() {
                assert!((g.entries[(i, j)] - re(*w)).norm() < 1e-12);
            }
        }
        assert_eq!(g.asymmetry, 0.0);
    }

    #[test]
    fn inertia_examples() {
        let t = tol();
        let d = CMatrix::from_rows(vec![vec![re(1.0), re(0.0)], vec![re(0.0), re(-1.0)]]);
        assert_eq!(
            inertia(&d, &t).unwrap(),
            Inertia {
                n_pos: 1,
                n_neg: 1,
                n_zero: 0
            }
        );
        assert_eq!(
            inertia(&CMatrix::zeros(3), &t).unwrap(),
            Inertia {
                n_pos: 0,
                n_neg: 0,
                n_zero: 3
            }
        );
        let y = CMatrix::from_rows(vec![
            vec![re(0.0), Cplx::new(0.0, -1.0)],
            vec![Cplx::new(0.0, 1.0), re(0.0)],
        ]);
        assert_eq!(
            inertia(&y, &t).unwrap(),
            Inertia {
                n_pos: 1,
                n_neg: 1,
                n_zero: 0
            }
        );
        let bad = CMatrix::from_rows(vec![vec![re(0.0), re(1.0)], vec![re(0.0), re(0.0)]]);
        assert!(matches!(inertia(&bad, &t), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn estimator_examples() {
        let t = tol();
        let plan = SamplePlan::default();
        assert_eq!(estimate_sq_minus(&RationalFn::z(), &plan, &t).unwrap(), 0);
        assert_eq!(estimate_sq_minus(&inv_z(), &plan, &t).unwrap(), 1);
        let inv_z2 = RationalFn::new(Poly::one(), Poly::z().pow(2)).unwrap();
        assert_eq!(estimate_sq_minus(&inv_z2, &plan, &t).unwrap(), 2);
    }

    #[test]
    fn unimodular_constant_has_no_negative_squares() {
        let t = tol();
        for c in [0.3, 1.3374689550522263, 2.9] {
            let s = RationalFn::constant(Cplx::from_polar(1.0, c));
            assert_eq!(estimate_sq_minus(&s, &SamplePlan::default(), &t).unwrap(), 0);
        }
    }

    #[test]
    fn no_points_when_clearance_covers_disk() {
        let plan = SamplePlan {
            pole_clearance: 5.0,
            ..SamplePlan::default()
        };
        assert_eq!(estimate_sq_minus(&inv_z(), &plan, &tol()), Err(Error::NoAnalyticPoints));
    }
}
