mod common;

use common::{psi_and_c, random_system, Rng};
use hssolve::spectral::{
    max_sorted_deviation, preconditioned_operator, presb_predicted_spectrum, spectral_radius,
};
use hssolve::{
    compute_mu, empirical_spectrum, predicted_spectrum, psi_spectrum, spectral_report, Complex64 as C,
    SpectralMethod,
};

#[test]
fn pmhss_spectrum_matches_formula_on_random_pairs() {
    let mut rng = Rng::new(41);
    for _ in 0..5 {
        let sys = random_system(&mut rng, 20);
        let mu = compute_mu(sys.a(), sys.b()).unwrap();
        assert!(mu.iter().all(|&m| m >= -1e-10));
        let predicted = predicted_spectrum(&mu).unwrap();
        let empirical = empirical_spectrum(&sys, SpectralMethod::PmhssGmres).unwrap();
        assert!(max_sorted_deviation(&predicted, &empirical).unwrap() <= 1e-8);
    }
}

#[test]
fn presb_spectrum_is_real_and_bounded() {
    let mut rng = Rng::new(42);
    for _ in 0..5 {
        let sys = random_system(&mut rng, 20);
        let eig = empirical_spectrum(&sys, SpectralMethod::Presb).unwrap();
        assert_eq!(eig.len(), 40);
        for l in &eig {
            assert!(l.im.abs() <= 1e-8, "{l}");
            assert!(l.re >= 0.5 - 1e-8 && l.re <= 1.0 + 1e-8, "{l}");
        }
        let mu = compute_mu(sys.a(), sys.b()).unwrap();
        let predicted = presb_predicted_spectrum(&mu).unwrap();
        assert!(max_sorted_deviation(&predicted, &eig).unwrap() <= 1e-8);
    }
}

#[test]
fn psi_radius_matches_dense_psi() {
    let mut rng = Rng::new(43);
    for n in [3usize, 30, 100] {
        let sys = random_system(&mut rng, n);
        let mu = compute_mu(sys.a(), sys.b()).unwrap();
        let rho = psi_spectrum(&mu).unwrap().iter().map(|z| z.norm()).fold(0.0, f64::max);
        let (psi, _) = psi_and_c(&sys);
        let dense = spectral_radius(&psi).unwrap();
        assert!((rho - dense).abs() <= 1e-8, "n={n}: {rho} vs {dense}");
        assert!(rho <= 0.5f64.sqrt() + 1e-10);

        let mut lam = psi_spectrum(&mu).unwrap();
        let mut eig = hssolve::linalg::dense_eig_general(&psi, 512).unwrap();
        // every lambda_psi has real part 1/2; pair by imaginary part
        lam.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        eig.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        let dev = lam.iter().zip(&eig).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(dev <= 1e-8, "n={n}: {dev:e}");
    }
}

#[test]
fn operator_spectrum_and_fixed_point_spectrum_coincide() {
    // I - Psi is the PMHSS-GMRES operator up to the (1-i)/2 factor
    let mut rng = Rng::new(44);
    let sys = random_system(&mut rng, 12);
    let op = preconditioned_operator(&sys, SpectralMethod::PmhssGmres).unwrap();
    let (psi, _) = psi_and_c(&sys);
    let n = sys.n();
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) };
            let lhs = (id - psi[(i, j)]) * C::new(1.0, 1.0);
            assert!((lhs - op[(i, j)]).norm() < 1e-10);
        }
    }
    let p = predicted_spectrum(&compute_mu(sys.a(), sys.b()).unwrap()).unwrap();
    for l in p {
        assert!((C::new(1.0, 1.0) - C::i() * l.conj() - l).norm() < 1e-12);
    }
}

#[test]
fn report_fields_consistent() {
    let mut rng = Rng::new(45);
    let sys = random_system(&mut rng, 16);
    let rep = spectral_report(&sys, SpectralMethod::PmhssGmres).unwrap();
    assert_eq!(rep.mu.len(), 16);
    assert!(rep.mu.windows(2).all(|w| w[0] <= w[1]));
    assert!(rep.max_deviation <= 1e-8);
    assert!(rep.rho_psi <= 0.5f64.sqrt() + 1e-10);
    let (lo, hi) = (rep.mu[0].max(0.0), *rep.mu.last().unwrap());
    for l in &rep.predicted_lambda {
        assert!(l.re >= 1.0 / (1.0 + hi) - 1e-12 && l.re <= 1.0 / (1.0 + lo) + 1e-12);
        assert!(l.im >= lo / (1.0 + lo) - 1e-12 && l.im <= hi / (1.0 + hi) + 1e-12);
    }
    let rep = spectral_report(&sys, SpectralMethod::Presb).unwrap();
    assert_eq!(rep.empirical_lambda.len(), 32);
    assert!(rep.max_deviation <= 1e-8);
}

#[test]
fn generators_have_contractive_psi() {
    let pi = std::f64::consts::PI;
    for m in [3usize, 8, 15] {
        for sys in [
            hssolve::gen_pade::<f64>(m, 1).unwrap(),
            hssolve::gen_shifted_omega::<f64>(m, 0.0, 0.01, 1).unwrap(),
            hssolve::gen_eq_motion::<f64>(m, pi, 0.02, 1).unwrap(),
        ] {
            let (psi, _) = psi_and_c(&sys);
            assert!(spectral_radius(&psi).unwrap() <= 0.5f64.sqrt() + 1e-10);
        }
    }
}
