//! Randomised invariants.

use fracbound_core::functionals::chebyshev_T;
use fracbound_core::kernels::capital_k;
use fracbound_core::{rl_integral, rl_integral_of, Family, FunctionSpec, QuadratureSettings};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        prop::collection::vec(-2.0..2.0f64, 1..6).prop_map(|coeffs| Family::Polynomial { coeffs }),
        (0.1..2.0f64, 0.2..6.0f64, -3.0..3.0f64)
            .prop_map(|(amplitude, frequency, phase)| Family::Trig { amplitude, frequency, phase }),
        (0.1..2.0f64, -2.0..2.0f64).prop_map(|(scale, rate)| Family::Exponential { scale, rate }),
        (0.2..0.8f64, 1.0..60.0f64).prop_map(|(center, steepness)| Family::Sigmoid { center, steepness }),
    ]
}

fn interval() -> impl Strategy<Value = (f64, f64)> {
    (-2.0..2.0f64, 0.25..3.0f64).prop_map(|(a, len)| (a, a + len))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_matches_finite_difference(fam in family(), t in -1.0..1.0f64) {
        let f = FunctionSpec::new("f", fam);
        let h = 1e-5;
        let fd = (f.eval(t + h) - f.eval(t - h)) / (2.0 * h);
        let d = f.eval_deriv(t);
        prop_assert!((fd - d).abs() <= 1e-5 * (1.0 + d.abs()), "{fd} vs {d}");
    }

    #[test]
    fn deriv_bounds_bracket_scan(fam in family(), (a, b) in interval()) {
        let f = FunctionSpec::new("f", fam);
        let db = f.deriv_bounds(a, b).unwrap();
        for i in 0..=4096 {
            let t = a + (b - a) * i as f64 / 4096.0;
            let d = f.eval_deriv(t);
            prop_assert!(d >= db.lower - 1e-9 * (1.0 + d.abs()) && d <= db.upper + 1e-9 * (1.0 + d.abs()));
            prop_assert!(d.abs() <= db.sup_abs + 1e-9 * (1.0 + d.abs()));
        }
    }

    #[test]
    fn k_is_constant_at_order_one((a, b) in interval(), u in 0.0..1.0f64) {
        let x = a + (b - a) * u;
        let k = capital_k(x, a, b, 1.0).unwrap();
        prop_assert!((k - 1.0 / 12.0).abs() <= 1e-12);
    }

    #[test]
    fn k_is_nonnegative((a, b) in interval(), u in 0.0..0.95f64, alpha in 1.0..4.0f64) {
        let x = a + (b - a) * u;
        prop_assert!(capital_k(x, a, b, alpha).unwrap() >= -1e-12);
    }

    #[test]
    fn rl_integral_is_linear(f1 in family(), f2 in family(), c in -2.0..2.0f64,
                             alpha in 0.5..3.0f64, u in 0.1..1.0f64) {
        let s = QuadratureSettings::default();
        let (f, g) = (FunctionSpec::new("f", f1), FunctionSpec::new("g", f2));
        let x = u * 1.5;
        let lhs = rl_integral_of(|t| f.eval(t) + c * g.eval(t), 0.0, alpha, x, &s).unwrap().value;
        let rhs = rl_integral(&f, 0.0, alpha, x, &s).unwrap().value
            + c * rl_integral(&g, 0.0, alpha, x, &s).unwrap().value;
        prop_assert!((lhs - rhs).abs() <= 1e-8 * (1.0 + lhs.abs()));
    }

    #[test]
    fn chebyshev_functional_symmetric_and_shift_invariant(f1 in family(), f2 in family(),
                                                          c in -3.0..3.0f64, (a, b) in interval()) {
        let s = QuadratureSettings::default();
        let (f, g) = (FunctionSpec::new("f", f1.clone()), FunctionSpec::new("g", f2));
        let t_fg = chebyshev_T(&f, &g, a, b, &s).unwrap().value;
        let t_gf = chebyshev_T(&g, &f, a, b, &s).unwrap().value;
        prop_assert!((t_fg - t_gf).abs() <= 1e-12 * (1.0 + t_fg.abs()));
        let shifted = match f1 {
            Family::Polynomial { mut coeffs } => { coeffs[0] += c; Some(Family::Polynomial { coeffs }) }
            _ => None,
        };
        if let Some(fam) = shifted {
            let fs = FunctionSpec::new("fs", fam);
            let t_shift = chebyshev_T(&fs, &g, a, b, &s).unwrap().value;
            prop_assert!((t_shift - t_fg).abs() <= 1e-8 * (1.0 + t_fg.abs() + c.abs()));
        }
    }
}

#[test]
fn semigroup_of_first_orders() {
    let s = QuadratureSettings::default();
    let f = FunctionSpec::new("exp", Family::Exponential { scale: 1.0, rate: 1.0 });
    for x in [0.3, 0.9, 1.7] {
        let once = |y: f64| rl_integral(&f, 0.0, 1.0, y, &s).unwrap().value;
        let twice = rl_integral_of(once, 0.0, 1.0, x, &s).unwrap().value;
        let direct = rl_integral(&f, 0.0, 2.0, x, &s).unwrap().value;
        assert!((twice - direct).abs() < 1e-10);
    }
}
