mod common;

use common::{config, tol, unit};
use proptest::prelude::*;
use schur_rigidity::interp::solve;
use schur_rigidity::rigidity::{
    affine_solution, alpha_equivalences, angular_derivative_data, julia_quotient, julia_reference, lemma_rl_probe,
    make_daumesnil, nontangential_path, remainder_order_numeric, rigidity_check, PathSpec,
};
use schur_rigidity::{BlaschkeProduct, Cplx, Execution, Order, Poly, RationalFn};

fn cplx(r: f64) -> impl Strategy<Value = Cplx> {
    (0.0..r, 0.0..std::f64::consts::TAU).prop_map(|(m, a)| Cplx::from_polar(m, a))
}

fn one() -> Cplx {
    Cplx::new(1.0, 0.0)
}

/// `x + c (z - 1)^m`.
fn perturbed(x: Cplx, c: Cplx, m: u32) -> RationalFn {
    let bump = Poly::from_real(&[-1.0, 1.0]).pow(m).scale(c);
    RationalFn::from_poly(&Poly::constant(x) + &bump)
}

proptest! {
    #![proptest_config(config(41))]

    #[test]
    fn paths_stay_in_their_stolz_region(
        t in 0.0..std::f64::consts::TAU, phi in -1.4..1.4f64, frac in 0.05..0.95f64, ratio in 0.1..0.95f64, count in 1usize..30
    ) {
        let spec = PathSpec { z1: unit(t), angle: phi, r0: frac * 2.0 * phi.cos(), ratio, count };
        prop_assume!(spec.validate().is_ok());
        let k = spec.stolz_constant();
        for z in nontangential_path(&spec).unwrap() {
            prop_assert!(z.norm() < 1.0);
            prop_assert!((z - spec.z1).norm() < k * (1.0 - z.norm()));
        }
    }

    #[test]
    fn slope_agrees_with_exact_order(
        m in 0u32..6, rs in prop::collection::vec(cplx(0.5), 0..3), t in 0.0..std::f64::consts::TAU, phi in -0.8..0.8f64
    ) {
        let z1 = unit(t);
        let num = &Poly::linear(-z1, one()).pow(m) * &Poly::from_roots(&rs);
        let f = RationalFn::new(num, Poly::from_real(&[4.0, 1.0])).unwrap();
        let exact = match f.vanishing_order(z1, &tol()) {
            Order::Finite(k) => k as f64,
            Order::Infinite => f64::INFINITY,
        };
        let spec = PathSpec { z1, angle: phi, r0: 0.05, ratio: 0.75, count: 10 };
        let slope = remainder_order_numeric(|z| f.eval(z), &nontangential_path(&spec).unwrap(), z1).unwrap();
        prop_assert!((slope - exact).abs() <= 0.2, "slope {} exact {}", slope, exact);
    }

    #[test]
    fn blaschke_contact_with_boundary_value_is_simple(
        zs in prop::collection::vec(cplx(0.9), 1..=3), c in 0.0..std::f64::consts::TAU
    ) {
        let t = tol();
        let b = BlaschkeProduct::new(zs, unit(c), 1e-12).unwrap().to_rational();
        let x = b.eval(one());
        let probe = lemma_rl_probe(&b, x, &PathSpec::radial(one()), &t).unwrap();
        prop_assert_eq!(probe.order, Order::Finite(1));
        prop_assert!(probe.consistent);
    }

    #[test]
    fn contact_order_two_k_plus_two_iff_parameter_is_x(
        tau1 in prop_oneof![Just(1.0), Just(-1.0)], xa in 0.3..5.98f64,
        c in cplx(0.9), a in 0.05..0.95f64, kind in 0usize..3
    ) {
        // Schur parameters: x itself, an interior constant (contact 0), or
        // x (a + (1 - a) z) (contact 1)
        let t = tol();
        let data = angular_derivative_data(tau1, &t).unwrap();
        let x = unit(xa);
        let s1 = match kind {
            0 => RationalFn::constant(x),
            1 => RationalFn::constant(c),
            _ => RationalFn::from_poly(Poly::from_real(&[a, 1.0 - a]).scale(x)),
        };
        prop_assume!((s1.eval(one()) - one()).norm() > 0.05);
        let s = solve(&data, &s1, &t).unwrap();
        let v = rigidity_check(&data, x, &s, &t).unwrap();
        prop_assert!(v.consistent);
        prop_assert_eq!(v.forced_identity, kind == 0);
        if kind > 0 {
            prop_assert_eq!(v.observed_order, Order::Finite(2 + kind as i64 - 1));
        }
    }

    #[test]
    fn julia_inequality_holds_on_paths(
        alpha in 0.1..2.0f64, c in cplx(0.9), phi in -1.2..1.2f64
    ) {
        let t = tol();
        let data = angular_derivative_data(alpha, &t).unwrap();
        prop_assume!((c - one()).norm() > 0.05);
        let h = solve(&data, &RationalFn::constant(c), &t).unwrap();
        let spec = PathSpec { z1: one(), angle: phi, r0: 0.5 * phi.cos(), ratio: 0.7, count: 25 };
        for z in nontangential_path(&spec).unwrap() {
            let q = julia_quotient(&h, z, one(), &t).unwrap();
            prop_assert!(q <= alpha * julia_reference(z) * (1.0 + 1e-9), "{} at {}", q, z);
        }
    }
}

proptest! {
    #![proptest_config(config(42))]

    #[test]
    fn alpha_conditions_agree(
        alpha in 0.2..0.8f64, kind in 0usize..3, beta_frac in 0.01..1.0f64, c in 0.02..0.09f64, u in 0.0..std::f64::consts::TAU
    ) {
        let t = tol();
        let s = match kind {
            0 => affine_solution(alpha),
            1 => {
                let d = make_daumesnil(alpha, beta_frac * alpha / 10.0, &t);
                prop_assume!(d.is_ok());
                d.unwrap()
            }
            _ => {
                let data = angular_derivative_data(alpha, &t).unwrap();
                let s1 = perturbed(Cplx::new(1.0 - 2.0 * alpha, 0.0), unit(u) * c, 2);
                solve(&data, &s1, &t).unwrap()
            }
        };
        let r = alpha_equivalences(&s, alpha, Execution::default(), &t).unwrap();
        prop_assert!(r.all_agree(), "{:?}", r);
        prop_assert_eq!(r.affine, kind == 0);
    }
}
