mod common;

use common::{psi_and_c, random_system, rel_err, Rng};
use hssolve::inner::complex_direct_solve;
use hssolve::linalg::{spectral_norm, DenseMatrix};
use hssolve::splitting::{aa_lsq_step, aa_pmhss_solve_from, pmhss_solve_from, Anderson, PmhssMap};
use hssolve::{
    aa_pmhss_solve, gmres_solve, pmhss_solve, pmhss_step, Complex64 as C, CsrMatrix, InnerSolverConfig,
    SolverConfig, SplitSystem, StopReason,
};

fn exact_inner() -> SolverConfig {
    SolverConfig {
        inner: InnerSolverConfig::direct(),
        ..SolverConfig::default()
    }
}

fn oracle(sys: &SplitSystem<f64>) -> Vec<C> {
    complex_direct_solve(sys.a(), sys.b(), sys.rhs(), 4096).unwrap()
}

#[test]
fn pmhss_step_fixes_the_solution() {
    let mut rng = Rng::new(1);
    let sys = random_system(&mut rng, 12);
    let xs = oracle(&sys);
    let cfg = InnerSolverConfig::cg(1e-14, None);
    let (next, _) = pmhss_step(&sys, &xs, &cfg, &xs).unwrap();
    assert!(rel_err(&next, &xs) < 1e-10);
}

#[test]
fn pmhss_step_scalar_case() {
    let sys = SplitSystem::new(CsrMatrix::identity(1), CsrMatrix::zeros(1, 1), vec![C::new(1.0, 1.0)]).unwrap();
    let (x1, _) = pmhss_step(&sys, &[C::new(0.0, 0.0)], &InnerSolverConfig::default(), &[C::new(0.0, 0.0)]).unwrap();
    assert!((x1[0] - C::new(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn pmhss_step_matches_dense_psi_and_c() {
    let mut rng = Rng::new(2);
    for _ in 0..5 {
        let sys = random_system(&mut rng, 4);
        let (psi, c) = psi_and_c(&sys);
        let x = rng.vector(4);
        let expect: Vec<C> = psi.mul_vec(&x).iter().zip(&c).map(|(p, q)| p + q).collect();
        let (got, _) = pmhss_step(&sys, &x, &InnerSolverConfig::direct(), &x).unwrap();
        assert!(rel_err(&got, &expect) < 1e-10);
    }
}

#[test]
fn pmhss_with_zero_b_contracts_by_sqrt_half() {
    let mut rng = Rng::new(3);
    let a = common::symmetrize(&common::random_spd(&mut rng, 10, 1.0));
    let sys = SplitSystem::new(CsrMatrix::from_dense(&a), CsrMatrix::zeros(10, 10), rng.vector(10)).unwrap();
    let xs = oracle(&sys);
    let rep = pmhss_solve(&sys, &exact_inner()).unwrap();
    assert!(rep.converged);
    // ln(1e8) / ln(sqrt 2) = 53.15
    assert_eq!(rep.outer_iterations, 54);

    // the error after k steps is exactly (sqrt2/2)^k ||x*||
    let map = PmhssMap::new(&sys, InnerSolverConfig::direct()).unwrap();
    let mut x = vec![C::new(0.0, 0.0); 10];
    for k in 1..=20 {
        x = map.step(&x, None).unwrap().0;
        let expect = 0.5f64.sqrt().powi(k);
        assert!((rel_err(&x, &xs) - expect).abs() < 1e-12 * expect.max(1e-3), "k={k}");
    }
}

#[test]
fn pmhss_report_invariants() {
    let mut rng = Rng::new(4);
    let sys = random_system(&mut rng, 30);
    for cfg in [SolverConfig::default(), exact_inner()] {
        let rep = pmhss_solve(&sys, &cfg).unwrap();
        assert_eq!(rep.residual_history.len(), rep.outer_iterations + 1);
        assert_eq!(rep.inner_iterations_per_outer.len(), rep.outer_iterations);
        assert_eq!(rep.total_inner_iterations, rep.inner_iterations_per_outer.iter().sum::<usize>());
        assert!(rep.converged);
        assert_eq!(rep.stop_reason, StopReason::Tolerance);
        assert!(*rep.residual_history.last().unwrap() <= 1e-8);
        assert!(rel_err(&rep.solution, &oracle(&sys)) < 1e-6);
    }
}

#[test]
fn pmhss_respects_max_outer() {
    let mut rng = Rng::new(5);
    let sys = random_system(&mut rng, 8);
    let cfg = SolverConfig {
        max_outer: 3,
        ..SolverConfig::default()
    };
    let rep = pmhss_solve(&sys, &cfg).unwrap();
    assert!(!rep.converged);
    assert_eq!(rep.stop_reason, StopReason::MaxOuter);
    assert_eq!(rep.outer_iterations, 3);
}

#[test]
fn lsq_step_examples() {
    let mut rng = Rng::new(6);
    let n = 7;
    let zero = vec![C::new(0.0, 0.0); n];
    let d = rng.vector(n);
    let sol = aa_lsq_step(&[&d[..]], &zero).unwrap();
    assert_eq!(sol.coeffs, vec![C::new(0.0, 0.0)]);

    let g = rng.vector(n);
    let sol = aa_lsq_step(&[&d[..]], &g).unwrap();
    let num: C = d.iter().zip(&g).map(|(a, b)| a.conj() * b).sum();
    let den: f64 = d.iter().map(|a| a.norm_sqr()).sum();
    assert!((sol.coeffs[0] - num / den).norm() < 1e-12);

    assert!(aa_lsq_step::<C>(&[], &g).unwrap().coeffs.is_empty());

    // three columns against the normal equations G^H G a = G^H g
    let cols: Vec<Vec<C>> = (0..3).map(|_| rng.vector(n)).collect();
    let refs: Vec<&[C]> = cols.iter().map(Vec::as_slice).collect();
    let sol = aa_lsq_step(&refs, &g).unwrap();
    let gm = DenseMatrix::from_columns(n, &refs);
    let gh = gm.conj_transpose();
    let normal = gh.matmul(&gm);
    let rhs = gh.mul_vec(&g);
    let a = hssolve::linalg::Lu::factor(&normal).unwrap().solve(&rhs);
    for (x, y) in sol.coeffs.iter().zip(&a) {
        assert!((x - y).norm() < 1e-10);
    }
}

#[test]
fn aa_from_exact_solution_stops_after_one_step() {
    let mut rng = Rng::new(7);
    let sys = random_system(&mut rng, 9);
    let xs = oracle(&sys);
    let rep = aa_pmhss_solve_from(&sys, &exact_inner(), &xs).unwrap();
    assert!(rep.converged);
    assert_eq!(rep.outer_iterations, 1);
}

#[test]
fn aa_finite_termination_in_three_dimensions() {
    let mut rng = Rng::new(8);
    let cfg = SolverConfig {
        outer_tol: 1e-12,
        ..exact_inner()
    };
    for _ in 0..20 {
        let sys = random_system(&mut rng, 3);
        let rep = aa_pmhss_solve(&sys, &cfg).unwrap();
        assert!(rep.converged, "{:?}", rep.residual_history);
        assert!(rep.outer_iterations <= 4, "{} outer", rep.outer_iterations);
        assert!(*rep.residual_history.last().unwrap() <= 1e-12);
    }
}

#[test]
fn aa_report_invariants_and_oracle() {
    let mut rng = Rng::new(9);
    for n in [5usize, 20, 40] {
        let sys = random_system(&mut rng, n);
        for cfg in [SolverConfig::default(), exact_inner()] {
            let rep = aa_pmhss_solve(&sys, &cfg).unwrap();
            assert!(rep.converged);
            assert_eq!(rep.residual_history.len(), rep.outer_iterations + 1);
            assert_eq!(rep.monitor_history.len(), rep.outer_iterations);
            assert!(*rep.residual_history.last().unwrap() <= cfg.outer_tol);
            assert!(rel_err(&rep.solution, &oracle(&sys)) < 1e-6);
            let plain = pmhss_solve(&sys, &cfg).unwrap();
            assert!(rep.outer_iterations <= plain.outer_iterations);
        }
    }
}

#[test]
fn aa_window_limits_history() {
    let mut rng = Rng::new(10);
    let mut aa = Anderson::<C>::new(Some(2));
    for _ in 0..6 {
        let x = rng.vector(5);
        let g = rng.vector(5);
        let u = aa.update(&x, &g).unwrap();
        assert!(u.coeffs.len() <= 2);
    }
    assert_eq!(aa.depth(), 2);

    let sys = random_system(&mut rng, 30);
    let cfg = SolverConfig {
        aa_window: Some(3),
        ..SolverConfig::default()
    };
    let rep = aa_pmhss_solve(&sys, &cfg).unwrap();
    assert!(rep.converged);
}

#[test]
fn psi_spectral_radius_bounded() {
    let mut rng = Rng::new(11);
    for n in [2usize, 10, 40] {
        let sys = random_system(&mut rng, n);
        let (psi, _) = psi_and_c(&sys);
        let rho = hssolve::spectral::spectral_radius(&psi).unwrap();
        assert!(rho <= 0.5f64.sqrt() + 1e-12, "rho = {rho}");
    }
}

#[test]
fn warm_start_distance_bounded_by_psi_powers() {
    let mut rng = Rng::new(12);
    for n in [6usize, 25, 50] {
        let sys = random_system(&mut rng, n);
        let (psi, c) = psi_and_c(&sys);
        let cnorm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let map = PmhssMap::new(&sys, InnerSolverConfig::direct()).unwrap();
        let mut x = vec![C::new(0.0, 0.0); n];
        let mut power = DenseMatrix::<C>::identity(n);
        for k in 0..=20 {
            let next = map.step(&x, None).unwrap().0;
            if k >= 1 {
                let step: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
                let bound = spectral_norm(&power).unwrap() * cnorm;
                assert!(step <= bound * (1.0 + 1e-8) + 1e-14, "n={n} k={k}: {step} > {bound}");
            }
            power = power.matmul(&psi);
            x = next;
        }
    }
}

#[test]
fn warm_start_reduces_inner_work() {
    let sys = hssolve::gen_pade::<f64>(20, 1).unwrap();
    let cfg = SolverConfig::default();
    let warm = pmhss_solve(&sys, &cfg).unwrap();
    // the same iteration with cold inner solves
    let map = PmhssMap::new(&sys, cfg.inner).unwrap();
    let mut x = vec![C::new(0.0, 0.0); sys.n()];
    let mut cold_total = 0;
    for _ in 0..warm.outer_iterations {
        let (next, its) = map.step(&x, None).unwrap();
        cold_total += its;
        x = next;
    }
    assert!(warm.total_inner_iterations < cold_total);
    assert!(rel_err(&x, &warm.solution) < 1e-8);
}

/// Real SPD fixed-point map `x -> C x + c` with spectrum in `(0, 0.7]`,
/// the contraction regime of the PMHSS map.
pub fn real_map(rng: &mut Rng, n: usize) -> (DenseMatrix<f64>, Vec<f64>) {
    let m = common::symmetrize(&common::random_spd(rng, n, 0.3));
    let top = *hssolve::linalg::dense_eig_sym(&m).unwrap().last().unwrap();
    let c_mat = DenseMatrix::from_fn(n, n, |i, j| 0.7 * m[(i, j)] / top);
    (c_mat, rng.real_vector(n))
}

#[test]
fn anderson_matches_gmres_on_real_maps() {
    let mut rng = Rng::new(13);
    for n in [1usize, 5, 20, 35, 50] {
        let (cm, c) = real_map(&mut rng, n);
        let cnorm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
        let i_minus_c = CsrMatrix::from_dense(&DenseMatrix::from_fn(n, n, |i, j| {
            let id = if i == j { 1.0 } else { 0.0 };
            id - cm[(i, j)]
        }));
        let cfg = SolverConfig {
            outer_tol: 1e-13,
            max_outer: n + 5,
            ..SolverConfig::default()
        };
        let gm = gmres_solve(&i_minus_c, &c, None, &cfg).unwrap();

        let mut aa = Anderson::<f64>::new(None);
        let mut x = vec![0.0; n];
        for (k, &g_res) in gm.monitor_history.iter().enumerate() {
            let fx: Vec<f64> = cm.mul_vec(&x).iter().zip(&c).map(|(a, b)| a + b).collect();
            let g: Vec<f64> = fx.iter().zip(&x).map(|(a, b)| a - b).collect();
            let upd = aa.update(&x, &g).unwrap();
            let aa_res = upd.lsq_residual / cnorm;
            assert!((aa_res - g_res).abs() <= 1e-8, "n={n} k={k}: AA {aa_res:e} GMRES {g_res:e}");
            x = upd.next;
        }
    }
}

#[test]
fn complex_anderson_gmres_agreement_is_informational() {
    // printed, not asserted
    let mut rng = Rng::new(14);
    let sys = random_system(&mut rng, 20);
    let aa = aa_pmhss_solve(&sys, &exact_inner()).unwrap();
    let gm = hssolve::pmhss_gmres_solve(&sys, &exact_inner()).unwrap();
    println!(
        "complex case: AA-PMHSS {} outer, PMHSS-GMRES {} outer",
        aa.outer_iterations, gm.outer_iterations
    );
}

#[test]
fn pmhss_from_solution_needs_no_steps() {
    let mut rng = Rng::new(15);
    let sys = random_system(&mut rng, 6);
    let xs = oracle(&sys);
    let rep = pmhss_solve_from(&sys, &exact_inner(), &xs).unwrap();
    assert!(rep.converged);
    assert_eq!(rep.outer_iterations, 0);
}
