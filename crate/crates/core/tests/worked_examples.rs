use num_complex::Complex64;
use symres::recoupling::{entropy_ga_fullspace, entropy_ka, example_state, FullStateVector};
use symres::TwiceSpin;

const TOL: f64 = 1e-12;

fn h2(p: f64) -> f64 {
    [p, 1.0 - p]
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|x| -x * x.ln())
        .sum()
}

fn mix(p: f64, a: &FullStateVector, b: &FullStateVector) -> FullStateVector {
    let c = |w: f64| Complex64::new(w.sqrt(), 0.0);
    FullStateVector::superpose(&[(c(1.0 - p), a), (c(p), b)]).unwrap()
}

#[test]
fn two_sites() {
    let s = example_state("singlet").unwrap();
    assert!((entropy_ka(&s, 1).unwrap() - 2f64.ln()).abs() < TOL);
    assert!(entropy_ga_fullspace(&s, 1, TwiceSpin::ZERO).unwrap().abs() < TOL);
    for (name, ka) in [
        ("triplet(+1)", 0.0),
        ("triplet(0)", 2f64.ln()),
        ("triplet(-1)", 0.0),
    ] {
        let t = example_state(name).unwrap();
        assert!((entropy_ka(&t, 1).unwrap() - ka).abs() < TOL, "{name}");
        assert!(
            entropy_ga_fullspace(&t, 1, TwiceSpin::ONE).unwrap().abs() < TOL,
            "{name}"
        );
    }
}

#[test]
fn four_sites() {
    let psi1 = example_state("psi1_N4").unwrap();
    assert!((entropy_ka(&psi1, 2).unwrap() - 3f64.ln()).abs() < TOL);
    assert!(
        entropy_ga_fullspace(&psi1, 2, TwiceSpin::ZERO)
            .unwrap()
            .abs()
            < TOL
    );

    let eta1 = example_state("eta1_N4").unwrap();
    let eta2 = example_state("eta2_N4").unwrap();
    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let psi = mix(p, &eta1, &eta2);
        let ka = entropy_ka(&psi, 2).unwrap();
        let ga = entropy_ga_fullspace(&psi, 2, TwiceSpin::ONE).unwrap();
        assert!((ka - h2(p / 2.0)).abs() < TOL, "p = {p}: {ka}");
        assert!((ga - h2(p)).abs() < TOL, "p = {p}: {ga}");
    }
}

#[test]
fn six_sites() {
    let a = example_state("psi1_N6").unwrap();
    let b = example_state("psi2_N6").unwrap();
    let psi = mix(0.5, &a, &b);
    let ga = entropy_ga_fullspace(&psi, 3, TwiceSpin::ONE).unwrap();
    let ka = entropy_ka(&psi, 3).unwrap();
    assert!((ga - 2f64.ln()).abs() < TOL);
    assert!((ka - h2(3.0 / 8.0)).abs() < TOL);
    // the B side sees no G-local entanglement
    let gb = entropy_ga_fullspace(&psi.reversed(), 3, TwiceSpin::ONE).unwrap();
    assert!(gb.abs() < TOL, "{gb}");
    // endpoints
    assert!(entropy_ga_fullspace(&a, 3, TwiceSpin::ONE).unwrap().abs() < TOL);
    assert!(entropy_ga_fullspace(&b, 3, TwiceSpin::ONE).unwrap().abs() < TOL);
    assert!(entropy_ka(&b, 3).unwrap() > entropy_ga_fullspace(&b, 3, TwiceSpin::ONE).unwrap());
}
