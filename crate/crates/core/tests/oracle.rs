//! Quadrature against closed forms.

use fracbound_core::kernels::{capital_k, jalpha_p2_closed, kernel_variance, FractionalKernel};
use fracbound_core::{exact_rl_poly, gamma, rl_integral, rl_integral_of, Family, FunctionSpec, QuadratureSettings};

const ALPHAS: [f64; 6] = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0];

fn polys() -> Vec<Vec<f64>> {
    vec![
        vec![1.0],
        vec![0.0, 1.0],
        vec![0.0, 0.0, 1.0],
        vec![0.0, -1.0, 0.0, 1.0],
        vec![2.0, -3.0, 0.5, 0.0, 1.0],
        vec![-0.25, 0.0, 4.0, -1.0, 0.0, 0.3],
    ]
}

#[test]
fn rl_integral_matches_polynomial_oracle() {
    // Relative accuracy on values as small as 1e-6 needs an absolute target
    // well below the default.
    let settings = QuadratureSettings {
        abs_tol: 1e-15,
        rel_tol: 1e-11,
        ..QuadratureSettings::default()
    };
    let mut worst: f64 = 0.0;
    for (a, b) in [(0.0, 1.0), (-1.0, 2.0)] {
        for coeffs in polys() {
            let f = FunctionSpec::new("p", Family::Polynomial { coeffs: coeffs.clone() });
            for alpha in ALPHAS {
                for k in 1..=9 {
                    let x = a + (b - a) * k as f64 / 9.0;
                    let exact = exact_rl_poly(&coeffs, a, alpha, x).unwrap();
                    let got = rl_integral(&f, a, alpha, x, &settings).unwrap().value;
                    let rel = (got - exact).abs() / exact.abs().max(1e-300);
                    let err = if exact.abs() < 1e-12 { (got - exact).abs() } else { rel };
                    assert!(err <= 1e-8, "{coeffs:?} a={a} alpha={alpha} x={x}: {got} vs {exact}");
                    worst = worst.max(err);
                }
            }
        }
    }
    assert!(worst <= 1e-8);
}

#[test]
fn order_zero_is_identity_and_order_one_is_plain_integral() {
    let s = QuadratureSettings::default();
    let f = FunctionSpec::new("sine", Family::Trig { amplitude: 1.0, frequency: 1.0, phase: 0.0 });
    assert_eq!(rl_integral(&f, 0.0, 0.0, 0.7, &s).unwrap().value, 0.7f64.sin());
    let one = rl_integral(&f, 0.0, 1.0, 0.7, &s).unwrap().value;
    assert!((one - (1.0 - 0.7f64.cos())).abs() < 1e-12);
}

#[test]
fn half_order_of_constant() {
    // J^{1/2} 1 (x) = 2 sqrt(x / pi)
    let s = QuadratureSettings::default();
    let got = rl_integral_of(|_| 1.0, 0.0, 0.5, 0.81, &s).unwrap().value;
    assert!((got - 2.0 * (0.81 / std::f64::consts::PI).sqrt()).abs() < 1e-12);
}

#[test]
fn gamma_reference_values() {
    assert_eq!(gamma(5.0).unwrap(), 24.0);
    assert!((gamma(0.5).unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    assert!((gamma(2.5).unwrap() - 1.329_340_388_179_137).abs() < 1e-13);
}

fn kernel_grid() -> Vec<(f64, f64, f64, f64)> {
    let mut out = Vec::new();
    for (a, b) in [(0.0, 1.0), (1.0, 3.0)] {
        for alpha in [1.0, 1.5, 2.0, 3.0] {
            for k in 0..7 {
                out.push((a + (b - a) * k as f64 / 8.0, a, b, alpha));
            }
        }
    }
    out
}

#[test]
fn closed_kernel_integral_matches_quadrature() {
    let s = QuadratureSettings::default();
    for (x, a, b, alpha) in kernel_grid() {
        let closed = jalpha_p2_closed(x, a, b, alpha).unwrap();
        let kernel = FractionalKernel::new(x, a, b, alpha).unwrap();
        let quad = rl_integral_of(|t| kernel.p2(t), a, alpha, b, &s.with_breakpoints(vec![x]))
            .unwrap()
            .value;
        let scale = closed.abs().max(1e-12);
        assert!((closed - quad).abs() / scale <= 1e-8, "x={x} alpha={alpha}: {closed} vs {quad}");
    }
    let hand = jalpha_p2_closed(0.5, 0.0, 1.0, 2.0).unwrap();
    assert!((hand - 1.0 / 12.0).abs() < 1e-12);
}

#[test]
fn k_matches_kernel_variance() {
    let s = QuadratureSettings::default();
    for (x, a, b, alpha) in kernel_grid() {
        let k = capital_k(x, a, b, alpha).unwrap();
        let v = kernel_variance(x, a, b, alpha, &s).unwrap();
        assert!((k - v).abs() <= 1e-8, "x={x} alpha={alpha}: {k} vs {v}");
        assert!(k >= -1e-12 && v >= -1e-12);
    }
    let k = capital_k(0.5, 0.0, 1.0, 2.0).unwrap();
    assert!((k - 61.0 / 720.0).abs() < 1e-14);
}
