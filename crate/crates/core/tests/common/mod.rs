//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use proptest::test_runner::{Config, RngSeed};
use schur_rigidity::interp::{build_b, InterpData};
use schur_rigidity::matrix::CMatrix;
use schur_rigidity::{Cplx, ThetaFn, Tolerances};

pub fn config(seed: u64) -> Config {
    Config {
        cases: 100,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn tol() -> Tolerances {
    Tolerances::default()
}

pub fn unit(t: f64) -> Cplx {
    Cplx::from_polar(1.0, t)
}

/// `conj(τ0) T(τ) B` computed directly from the Toeplitz definition.
fn pick_of(z1: Cplx, tau0: Cplx, tau: &[Cplx]) -> DMatrix<nalgebra::Complex<f64>> {
    let k = tau.len();
    let dummy = InterpData::new(z1, tau0, vec![Cplx::new(1.0, 0.0); k], None, &tol()).unwrap();
    let b = build_b(&dummy);
    DMatrix::from_fn(k, k, |i, j| {
        let mut acc = Cplx::new(0.0, 0.0);
        for m in 0..=i {
            acc += tau[i - m] * b[(m, j)];
        }
        acc * tau0.conj()
    })
}

/// Basis (over the reals) of the `τ` vectors for which the Pick matrix is
/// Hermitian, from the null space of `τ ↦ P - P*`.
pub fn hermitian_basis(z1: Cplx, tau0: Cplx, k: usize) -> Vec<Vec<Cplx>> {
    let n = 2 * k;
    let direction = |d: usize| -> Vec<Cplx> {
        let mut v = vec![Cplx::new(0.0, 0.0); k];
        v[d / 2] = if d.is_multiple_of(2) {
            Cplx::new(1.0, 0.0)
        } else {
            Cplx::new(0.0, 1.0)
        };
        v
    };
    let rows = 2 * k * k;
    let mut a = DMatrix::<f64>::zeros(rows, n);
    for d in 0..n {
        let p = pick_of(z1, tau0, &direction(d));
        let skew = &p - p.adjoint();
        for (idx, v) in skew.iter().enumerate() {
            a[(2 * idx, d)] = v.re;
            a[(2 * idx + 1, d)] = v.im;
        }
    }
    let svd = a.svd(false, true);
    let vt = svd.v_t.unwrap();
    let smax = svd.singular_values.max().max(1.0);
    let mut out = Vec::new();
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s <= 1e-10 * smax {
            let row = vt.row(i);
            out.push((0..k).map(|j| Cplx::new(row[2 * j], row[2 * j + 1])).collect());
        }
    }
    out
}

/// Hermitian-compatible `τ` from real weights on [`hermitian_basis`].
pub fn hermitian_tau(z1: Cplx, tau0: Cplx, k: usize, weights: &[f64]) -> Vec<Cplx> {
    let basis = hermitian_basis(z1, tau0, k);
    let mut tau = vec![Cplx::new(0.0, 0.0); k];
    for (b, w) in basis.iter().zip(weights.iter().cycle()) {
        for (t, v) in tau.iter_mut().zip(b) {
            *t += v * *w;
        }
    }
    tau
}

/// Eigenvalues of a Hermitian matrix via nalgebra, ascending.
pub fn oracle_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let n = m.dim();
    let h = DMatrix::from_fn(n, n, |i, j| {
        let v = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        nalgebra::Complex::new(v.re, v.im)
    });
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Largest `‖Θ(z)‖²` (Frobenius) on the unit circle outside the arc of
/// half-width 0.6 around `z1`. Recovering a parameter from a solution loses
/// roughly this factor in relative accuracy.
pub fn circle_gain(theta: &ThetaFn) -> f64 {
    let z1 = theta.data().z1();
    let span = std::f64::consts::TAU - 1.2;
    (0..64)
        .map(|j| {
            let m = theta.eval(z1 * Cplx::from_polar(1.0, 0.6 + span * (j as f64 + 0.5) / 64.0));
            m.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>()
        })
        .fold(0.0, f64::max)
}
