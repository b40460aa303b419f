mod common;

use std::f64::consts::PI;

use common::{random_state, random_unitary, with_spectrum};
use hhl_core::hhl::{run_hhl, success_probability_closed_form, HhlConfig, LinearSystem};
use hhl_core::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random representable instance: A = V diag(2πℓ/t0) V† with ℓ on the clock.
fn representable(seed: u64, m: usize, n_clock: usize, t0: f64) -> LinearSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = 1 << m;
    let v = random_unitary(&mut rng, dim);
    let spectrum: Vec<f64> = (0..dim)
        .map(|_| 2.0 * PI * rng.gen_range(1..(1usize << n_clock)) as f64 / t0)
        .collect();
    let a = with_spectrum(&v, &spectrum);
    LinearSystem::new(a, random_state(&mut rng, dim)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_mode_is_exact(seed in any::<u64>(), m in 1usize..=3, n_clock in 1usize..=4,
                           t0 in prop_oneof![Just(2.0 * PI), 1.0f64..8.0]) {
        let sys = representable(seed, m, n_clock, t0);
        let config = HhlConfig::exact(n_clock, t0, None);
        let res = run_hhl(&sys, &config).unwrap();
        let closed = success_probability_closed_form(&sys, &config).unwrap();
        prop_assert!((res.fidelity - 1.0).abs() < 1e-8, "fidelity {}", res.fidelity);
        prop_assert!((res.success_probability - closed).abs() < 1e-8);
        prop_assert!(res.clock_residual < 1e-10);
        prop_assert!((res.clock_histogram.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        prop_assert!(res.clock_histogram[0] < 1e-10);
    }

    #[test]
    fn small_angle_probability_matches_closed_form(seed in any::<u64>(), m in 1usize..=2,
                                                   n_clock in 2usize..=3, r in 2.0f64..9.0) {
        let sys = representable(seed, m, n_clock, 2.0 * PI);
        let config = HhlConfig::small_angle(n_clock, 2.0 * PI, r);
        let res = run_hhl(&sys, &config).unwrap();
        let closed = success_probability_closed_form(&sys, &config).unwrap();
        prop_assert!((res.success_probability - closed).abs() < 1e-8);
    }

    #[test]
    fn probability_scales_as_c_squared(seed in any::<u64>(), m in 1usize..=2, f1 in 0.05f64..1.0, f2 in 0.05f64..1.0) {
        let n_clock = 3;
        let sys = representable(seed, m, n_clock, 2.0 * PI);
        let p = |c: f64| run_hhl(&sys, &HhlConfig::exact(n_clock, 2.0 * PI, Some(c))).unwrap().success_probability;
        let ratio = p(f1) / p(f2);
        prop_assert!((ratio - (f1 / f2).powi(2)).abs() < 1e-8 * ratio.max(1.0));
    }

    #[test]
    fn global_phase_is_invisible(seed in any::<u64>(), phi in -PI..PI) {
        let sys = representable(seed, 1, 2, 2.0 * PI);
        let phased = LinearSystem::new(sys.a().clone(), sys.b().scale(Complex64::from_polar(1.0, phi))).unwrap();
        for config in [HhlConfig::exact(2, 2.0 * PI, Some(0.7)), HhlConfig::small_angle(2, 2.0 * PI, 4.0)] {
            let a = run_hhl(&sys, &config).unwrap();
            let b = run_hhl(&phased, &config).unwrap();
            prop_assert!((a.fidelity - b.fidelity).abs() < 1e-10);
            prop_assert!((a.success_probability - b.success_probability).abs() < 1e-10);
        }
    }
}

#[test]
fn uncompute_clears_clock_before_postselection() {
    use hhl_core::hhl::{build_hhl_circuit, Layout};
    use hhl_core::{ComplexVector, QuantumState};
    for seed in 0..10 {
        let sys = representable(seed, 2, 3, 2.0 * PI);
        let config = HhlConfig::exact(3, 2.0 * PI, None);
        let c = build_hhl_circuit(&sys, &config).unwrap();
        let layout = Layout::new(3, 2);
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << layout.n_qubits()];
        amps[..4].copy_from_slice(sys.b().as_slice());
        let s = QuantumState::init_with_amplitudes(layout.n_qubits(), &ComplexVector::new(amps).unwrap()).unwrap();
        let out = c.run(&s).unwrap();
        let clock = out.register_distribution(&layout.clock).unwrap();
        assert!(1.0 - clock[0] < 1e-10);
    }
}

#[test]
fn example_small_angle_matches_hardwired_circuit() {
    use hhl_core::example2x2;
    let b = hhl_core::ComplexVector::from_real(&[1.0, 0.0]).unwrap();
    let sys = LinearSystem::new(example2x2::example_matrix(), b.clone()).unwrap();
    for r in [2.0, 4.0, 6.5] {
        let general = run_hhl(&sys, &HhlConfig::small_angle(2, 2.0 * PI, r)).unwrap();
        let hardwired = example2x2::run_example(r, &b).unwrap();
        assert!((general.fidelity - hardwired.fidelity).abs() < 1e-8);
        assert!((general.success_probability - hardwired.probability).abs() < 1e-8);
    }
}
