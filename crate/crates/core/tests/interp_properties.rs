mod common;

use common::{circle_gain, config, hermitian_tau, tol, unit};
use proptest::prelude::*;
use schur_rigidity::interp::{build_theta, renormalize, solution_negative_squares, InterpData, ThetaFn};
use schur_rigidity::kernel::SamplePlan;
use schur_rigidity::rational::lft_scalar;
use schur_rigidity::{Cplx, Poly, RationalFn};

fn build(
    z1_angle: f64,
    tau0_angle: f64,
    k: usize,
    weights: &[f64],
    z0_angle: Option<f64>,
) -> Option<(InterpData, ThetaFn)> {
    let t = tol();
    let z1 = unit(z1_angle);
    let tau0 = unit(tau0_angle);
    let tau = hermitian_tau(z1, tau0, k, weights);
    let z0 = z0_angle.map(unit);
    let data = InterpData::new(z1, tau0, tau, z0, &t).ok()?;
    let theta = build_theta(&data, &t).ok()?;
    if theta.pick().condition > 1e6 {
        return None;
    }
    Some((data, theta))
}

fn angle() -> impl Strategy<Value = f64> {
    0.0..std::f64::consts::TAU
}

fn weights() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![-2.0..-0.3, 0.3..2.0], 4)
}

fn z0_choice() -> impl Strategy<Value = Option<f64>> {
    prop_oneof![Just(None), (0.3..6.0f64).prop_map(Some)]
}

fn cplx(r: f64) -> impl Strategy<Value = Cplx> {
    (0.0..r, angle()).prop_map(|(m, a)| Cplx::from_polar(m, a))
}

/// `(a + b z) / (1 + c z)` with `|c| < 0.9`.
fn parameter() -> impl Strategy<Value = RationalFn> {
    (cplx(1.5), cplx(1.0), cplx(0.9))
        .prop_map(|(a, b, c)| RationalFn::new(Poly::new(vec![a, b]), Poly::new(vec![Cplx::new(1.0, 0.0), c])).unwrap())
}

proptest! {
    #![proptest_config(config(11))]

    #[test]
    fn determinant_is_identically_one(
        a1 in angle(), a0 in angle(), k in 1usize..=4, w in weights(), z0 in z0_choice()
    ) {
        let built = build(a1, a0, k, &w, z0.map(|d| a1 + d));
        prop_assume!(built.is_some());
        let (_, theta) = built.unwrap();
        let det = theta.mat().constant_det(1e-8).unwrap();
        prop_assert!((det - Cplx::new(1.0, 0.0)).norm() <= 1e-9);
    }

    #[test]
    fn theta_is_j_unitary_on_circle(
        a1 in angle(), a0 in angle(), k in 1usize..=4, w in weights(), z0 in z0_choice()
    ) {
        let built = build(a1, a0, k, &w, z0.map(|d| a1 + d));
        prop_assume!(built.is_some());
        let (_, theta) = built.unwrap();
        prop_assert!(theta.j_unitarity_residual(32) <= 1e-9);
    }

    #[test]
    fn recover_inverts_solve(
        a1 in angle(), a0 in angle(), k in 1usize..=4, w in weights(), s1 in parameter()
    ) {
        let t = tol();
        let built = build(a1, a0, k, &w, None);
        prop_assume!(built.is_some());
        let (_, theta) = built.unwrap();
        prop_assume!(circle_gain(&theta) <= 1e6);
        prop_assume!(theta.admissible(&s1, &t).distance > 1e-2);
        let s = theta.solve(&s1, &t).unwrap();
        let back = theta.recover_parameter(&s, &t).unwrap();
        prop_assert!(back.distance(&s1) <= 1e-9, "distance {}", back.distance(&s1));
    }

    #[test]
    fn solutions_match_prescribed_expansion(
        a1 in angle(), a0 in angle(), k in 1usize..=3, w in weights(), s1 in parameter()
    ) {
        let t = tol();
        let built = build(a1, a0, k, &w, None);
        prop_assume!(built.is_some());
        let (data, theta) = built.unwrap();
        prop_assume!(theta.admissible(&s1, &t).distance > 1e-2);
        let s = theta.solve(&s1, &t).unwrap();
        let report = schur_rigidity::interp::verify_expansion(&s, &data, &t).unwrap();
        prop_assert!(report.passed);
    }

    #[test]
    fn renormalization_composes(
        a1 in angle(), a0 in angle(), k in 1usize..=3, w in weights(), d in 0.3..6.0f64, x in cplx(0.95)
    ) {
        let t = tol();
        let built = build(a1, a0, k, &w, None);
        prop_assume!(built.is_some());
        let (data, theta) = built.unwrap();
        let r = renormalize(&data, unit(a1 + d), &t);
        prop_assume!(r.is_ok());
        let r = r.unwrap();
        let ux = lft_scalar(&r.u, x);
        for j in 0..16 {
            let z = Cplx::from_polar(0.6, std::f64::consts::TAU * j as f64 / 16.0);
            let direct = lft_scalar(&theta.eval(z), x);
            let via = lft_scalar(&r.theta_hat.eval(z), ux);
            prop_assert!((direct - via).norm() <= 1e-9 * direct.norm().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn negative_squares_add_up(
        a1 in angle(), a0 in angle(), k in 1usize..=2, w in weights(),
        kind in 0usize..3, c in cplx(0.8), u in angle()
    ) {
        let t = tol();
        let built = build(a1, a0, k, &w, None);
        prop_assume!(built.is_some());
        let (_, theta) = built.unwrap();
        let s1 = match kind {
            0 => RationalFn::constant(c),
            1 => RationalFn::from_poly(Poly::new(vec![Cplx::new(0.0, 0.0), c])),
            _ => RationalFn::z().recip().unwrap().scale(unit(u)),
        };
        prop_assume!(theta.admissible(&s1, &t).distance > 1e-2);
        let ns = solution_negative_squares(&theta, &s1, &SamplePlan::default(), &t);
        prop_assume!(ns.is_ok());
        let ns = ns.unwrap();
        prop_assert_eq!(ns.predicted, ns.observed, "{:?}", ns);
    }
}
