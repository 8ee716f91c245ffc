#[path = "support/quadrature.rs"]
mod quadrature;

use std::f64::consts::PI;

use quadrature::integrate;
use symres::asymptotics::{
    avg_thermo, avg_thermo_j0, beta_prime, beta_second, exact_logdomain_average,
    exact_logdomain_variance, laplace_expand, var_thermo, Jet, LaplaceProblem, ThermoPoint,
};
use symres::TwiceSpin;

fn point(n: u64, f: f64, s: f64) -> ThermoPoint {
    ThermoPoint::from_fractions(n, f, s).unwrap()
}

fn exact(p: &ThermoPoint) -> f64 {
    exact_logdomain_average(p.n(), p.n_a(), p.j()).unwrap()
}

#[test]
fn quarter_system_error_shrinks() {
    let errs: Vec<f64> = [128u64, 256, 512, 1024]
        .iter()
        .map(|&n| {
            let p = point(n, 0.25, 0.5);
            let e = (exact(&p) - avg_thermo(&p).unwrap()).abs();
            assert!(e <= 5.0 / (n as f64).sqrt(), "N = {n}: {e}");
            e
        })
        .collect();
    for w in errs.windows(2) {
        assert!(w[1] < w[0], "{errs:?}");
    }
}

#[test]
fn three_quarter_system_order_one_term() {
    for n in [256u64, 1024] {
        let p = point(n, 0.75, 0.5);
        let e = (exact(&p) - avg_thermo(&p).unwrap()).abs();
        assert!(e <= 5.0 / (n as f64).sqrt(), "N = {n}: {e}");
    }
}

#[test]
fn half_system_square_root_term() {
    let s = 0.5;
    let want = -beta_prime(s).unwrap().abs() / (2.0 * PI * beta_second(s).unwrap().abs()).sqrt();
    // fit exact − (non-√N part of the expansion) against √N
    let ns = [256u64, 512, 1024, 2048];
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .map(|&n| {
            let p = point(n, 0.5, s);
            let rest = avg_thermo(&p).unwrap() - want * (n as f64).sqrt();
            ((n as f64).sqrt(), exact(&p) - rest)
        })
        .collect();
    let k = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (sxx, sxy) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x * x, b + x * y));
    let slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    assert!(((slope - want) / want).abs() < 0.15, "{slope} vs {want}");
}

#[test]
fn spin_zero_expansion() {
    for n in [200u64, 400, 800] {
        for n_a in [n / 4, n / 2] {
            let e = exact_logdomain_average(n, n_a, TwiceSpin::ZERO).unwrap();
            let a = avg_thermo_j0(n, n_a).unwrap();
            assert!(
                (e - a).abs() <= 5.0 / n as f64,
                "N = {n}, N_A = {n_a}: {e} vs {a}"
            );
        }
    }
}

#[test]
fn variance_quarter_system() {
    for n in [64u64, 128] {
        let p = point(n, 0.25, 0.5);
        let v = exact_logdomain_variance(n, p.n_a(), p.j()).unwrap();
        let r = v / var_thermo(&p).unwrap();
        assert!((r - 1.0).abs() <= 15.0 / n as f64, "N = {n}: ratio {r}");
    }
}

#[test]
fn laplace_gaussian_polynomials() {
    // ∫ x^{2k} e^{−N x²/2} = √(2π/N) (2k−1)!! / N^k; only k ≤ 1 is inside
    // the NLO truncation, higher powers test that the error stays O(N^{-2})
    for n in [10.0f64, 100.0, 1000.0] {
        let g = [-1.0, 0.0, 0.0];
        for (h, closed) in [
            (Jet::constant(1.0), 1.0),
            (Jet::new(1.0, 0.0, 2.0), 1.0 + 1.0 / n),
            (Jet::new(2.0, 3.0, -4.0), 2.0 - 2.0 / n),
        ] {
            let p = LaplaceProblem::smooth(h, g).unwrap();
            let want = (2.0 * PI / n).sqrt() * closed;
            let got = laplace_expand(&p, n).unwrap().nlo();
            assert!(((got - want) / want).abs() <= 10.0 / (n * n), "{n}");
        }
        // quartic perturbation of the exponent, checked by quadrature
        let p = LaplaceProblem::smooth(Jet::constant(1.0), [-1.0, 0.0, -6.0]).unwrap();
        let want = integrate(
            |x| (n * (-x * x / 2.0 - x.powi(4) / 4.0)).exp(),
            -5.0,
            5.0,
            1e-14,
        );
        let got = laplace_expand(&p, n).unwrap().nlo();
        assert!(
            ((got - want) / want).abs() <= 10.0 / (n * n),
            "{n}: {got} vs {want}"
        );
    }
}

#[test]
fn laplace_kink_against_quadrature() {
    let p = LaplaceProblem::kinked(
        Jet::new(1.0, -1.0, 0.0),
        Jet::new(1.0, 1.0, 0.0),
        [-1.0, 0.0, 0.0],
    )
    .unwrap();
    for n in [1e2f64, 1e3, 1e4] {
        let f = |x: f64| (1.0 + x.abs()) * (-n * x * x / 2.0).exp();
        let want = integrate(f, -1.0, 0.0, 1e-14) + integrate(f, 0.0, 1.0, 1e-14);
        let got = laplace_expand(&p, n).unwrap().nlo();
        assert!(((got - want) / want).abs() <= 1.0 / n, "{n}");
    }
}
