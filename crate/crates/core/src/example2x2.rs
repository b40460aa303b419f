//! The four-qubit circuit for `A = ½[[3, 1], [1, 3]]` and its `r` sweep.
//!
//! Wires, top to bottom: `x1` is the rotation ancilla, `x2 x3` the two-qubit
//! clock and `x4` holds `|b⟩`. `A` has eigenvalues 1 and 2, which phase
//! estimation with `t0 = 2π` writes exactly as clock values `|01⟩` and `|10⟩`.
//! A SWAP of the clock qubits then turns `|λ⟩` into `|2/λ⟩`, and two singly
//! controlled rotations `Ry(2π/2^r)` (on `x2`) and `Ry(π/2^r)` (on `x3`) put
//! `sin(C/λ)` with `C = 2^{-r}π` on the ancilla's `|1⟩` branch.
//!
//! After postselecting `x1 = 1` the `x4` register holds
//! `x′ ∝ β₁ sin(π/2^r) u₁ + β₂ sin(π/2^{r+1}) u₂`, which tends to the exact
//! solution direction `β₁ u₁ + (β₂/2) u₂` as `r` grows while the success
//! probability `|β₁|² sin²(π/2^r) + |β₂|² sin²(π/2^{r+1})` falls off as `4^{-r}`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{validation, Result};
use crate::gates::Gate;
use crate::linalg::{classical_solve, fidelity, ComplexMatrix, ComplexVector};
use crate::state::{QuantumState, INPUT_NORM_TOL};

pub const X1: usize = 0;
pub const X2: usize = 1;
pub const X3: usize = 2;
pub const X4: usize = 3;
pub const N_QUBITS: usize = 4;
pub const T0: f64 = 2.0 * PI;

/// `½[[3, 1], [1, 3]]`
pub fn example_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[1.5, 0.5], &[0.5, 1.5]])
}

/// Eigenvectors of [`example_matrix`] for eigenvalues 1 and 2.
pub fn eigenvectors() -> [ComplexVector; 2] {
    [
        ComplexVector::from_real(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]).expect("2 entries"),
        ComplexVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).expect("2 entries"),
    ]
}

/// Smallest `r` that keeps `C = 2^{-r}π` at or below the smallest eigenvalue.
pub fn recommended_min_r() -> f64 {
    (2.0 * PI).log2()
}

/// Phase estimation followed by the SWAP that inverts the clock encoding.
/// These are the nine ops the final uncompute undoes.
pub fn pre_rotation_segment() -> Result<Circuit> {
    let a = example_matrix();
    let mut c = Circuit::new(N_QUBITS);
    c.push(Gate::h(), &[X2], &[])?
        .push(Gate::h(), &[X3], &[])?
        .push(Gate::exp_iat(&a, T0 / 4.0)?, &[X4], &[X3])?
        .push(Gate::exp_iat(&a, T0 / 2.0)?, &[X4], &[X2])?
        .push(Gate::swap(), &[X2, X3], &[])?
        .push(Gate::h(), &[X3], &[])?
        .push(Gate::sdag(), &[X3], &[X2])?
        .push(Gate::h(), &[X2], &[])?
        .push(Gate::swap(), &[X2, X3], &[])?;
    Ok(c)
}

/// The two controlled rotations on the ancilla.
pub fn rotation_segment(r: f64) -> Result<Circuit> {
    check_r(r)?;
    let mut c = Circuit::new(N_QUBITS);
    c.push(Gate::ry(2.0 * PI / r.exp2()), &[X1], &[X2])?
        .push(Gate::ry(PI / r.exp2()), &[X1], &[X3])?;
    Ok(c)
}

/// The full 20-op circuit: pre-rotation segment, rotations, then the dagger
/// of the pre-rotation segment.
pub fn build_fig2_circuit(r: f64) -> Result<Circuit> {
    let pre = pre_rotation_segment()?;
    let mut c = pre.clone();
    c.append(&rotation_segment(r)?)?.append(&pre.dagger())?;
    Ok(c)
}

fn check_r(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return validation(format!("r must be positive, got {r}"));
    }
    Ok(())
}

fn check_b(b: &ComplexVector) -> Result<ComplexVector> {
    if b.dim() != 2 {
        return validation(format!("b must have 2 entries, got {}", b.dim()));
    }
    if (b.norm() - 1.0).abs() > INPUT_NORM_TOL {
        return validation(format!("b must be normalized, has norm {}", b.norm()));
    }
    b.normalized()
}

/// `|000⟩ ⊗ |b⟩` on `x1 x2 x3 x4`.
pub fn initial_state(b: &ComplexVector) -> Result<QuantumState> {
    let b = check_b(b)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << N_QUBITS];
    amps[..2].copy_from_slice(b.as_slice());
    QuantumState::init_with_amplitudes(N_QUBITS, &ComplexVector::new(amps)?)
}

#[derive(Clone, Debug)]
pub struct ExampleOutcome {
    pub fidelity: f64,
    pub probability: f64,
    /// `|x′⟩` read from `x4` after postselecting `x1 = 1`.
    pub solution: ComplexVector,
}

/// Runs the circuit on `|000⟩|b⟩`, postselects `x1 = 1` and compares `x4`
/// with the normalized classical solution.
pub fn run_example(r: f64, b: &ComplexVector) -> Result<ExampleOutcome> {
    let circuit = build_fig2_circuit(r)?;
    let b = check_b(b)?;
    let out = circuit.run(&initial_state(&b)?)?;
    let (post, probability) = out.postselect(X1, 1)?;
    let solution = post.extract_subregister(&[(X1, 1), (X2, 0), (X3, 0)], &[X4])?;
    let expected = classical_solve(&example_matrix(), &b)?.normalized()?;
    let fidelity = fidelity(&expected, &solution)?;
    Ok(ExampleOutcome { fidelity, probability, solution })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleValues {
    pub fidelity: f64,
    pub probability: f64,
}

/// Analytic fidelity and success probability, from the eigen-expansion of `b`.
pub fn closed_form_oracle(r: f64, b: &ComplexVector) -> Result<OracleValues> {
    check_r(r)?;
    let b = check_b(b)?;
    let [u1, u2] = eigenvectors();
    let beta1 = u1.inner(&b)?;
    let beta2 = u2.inner(&b)?;
    let s1 = (PI / r.exp2()).sin();
    let s2 = (PI / (r + 1.0).exp2()).sin();

    // coordinates in the orthonormal eigenbasis
    let approx = [beta1 * s1, beta2 * s2];
    let exact = [beta1, beta2 * 0.5];
    let probability = approx.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let exact_norm = exact.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let overlap: Complex64 = exact.iter().zip(&approx).map(|(e, a)| e.conj() * a).sum();
    let fidelity = (overlap.norm() / (exact_norm * probability.sqrt())).min(1.0);
    Ok(OracleValues { fidelity, probability })
}

/// One point of the fidelity/probability curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub r: f64,
    pub fidelity: f64,
    pub probability: f64,
}

/// Uniform grid in `r` with both endpoints, `steps` points, each simulated.
pub fn sweep_r(r_min: f64, r_max: f64, steps: usize, b: &ComplexVector) -> Result<Vec<SweepRecord>> {
    if !(r_min.is_finite() && r_max.is_finite()) || r_min >= r_max {
        return validation(format!("need r_min < r_max, got {r_min} and {r_max}"));
    }
    if r_min <= 0.0 {
        return validation(format!("r must be positive, got r_min = {r_min}"));
    }
    if steps < 2 {
        return validation(format!("need at least 2 steps, got {steps}"));
    }
    let width = r_max - r_min;
    (0..steps)
        .map(|i| {
            let r = if i == steps - 1 { r_max } else { r_min + width * i as f64 / (steps - 1) as f64 };
            let out = run_example(r, b)?;
            Ok(SweepRecord { r, fidelity: out.fidelity, probability: out.probability })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hhl::{build_phase_estimation, Layout};

    fn b0() -> ComplexVector {
        ComplexVector::from_real(&[1.0, 0.0]).unwrap()
    }

    #[test]
    fn op_count_and_angles() {
        let c = build_fig2_circuit(4.0).unwrap();
        assert_eq!(c.len(), 20);
        let rot = &c.ops()[9..11];
        assert!((rot[0].gate.param().unwrap() - PI / 8.0).abs() < 1e-15);
        assert!((rot[1].gate.param().unwrap() - PI / 16.0).abs() < 1e-15);
        assert!(build_fig2_circuit(0.0).is_err());
        assert!(build_fig2_circuit(-1.0).is_err());
        assert!(build_fig2_circuit(f64::NAN).is_err());
    }

    #[test]
    fn phase_estimation_matches_general_builder() {
        let layout = Layout::new(2, 1);
        let general = build_phase_estimation(4, &example_matrix(), T0, &layout.clock, &layout.system).unwrap();
        let pre = pre_rotation_segment().unwrap();
        assert_eq!(general.ops(), &pre.ops()[..8]);
    }

    #[test]
    fn half_period_exponential_is_cnot() {
        let pre = pre_rotation_segment().unwrap();
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!(pre.ops()[3].gate.matrix().max_abs_diff(&x) < 1e-10);
    }

    #[test]
    fn eigenvector_input_is_exact() {
        let [_, u2] = eigenvectors();
        for r in [2.0, 3.3, 6.0] {
            let out = run_example(r, &u2).unwrap();
            assert!((out.fidelity - 1.0).abs() < 1e-10);
            assert!((closed_form_oracle(r, &u2).unwrap().fidelity - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn small_angle_limit() {
        let o = closed_form_oracle(10.0, &b0()).unwrap();
        let limit = 5.0 * PI * PI / 8.0 * 4f64.powf(-10.0);
        assert!((o.probability - limit).abs() < 1e-9);
        assert!((o.fidelity - 1.0).abs() < 1e-9);
    }

    #[test]
    fn input_validation() {
        let long = ComplexVector::from_real(&[1.0, 0.0, 0.0]).unwrap();
        assert!(run_example(4.0, &long).is_err());
        let unnormalized = ComplexVector::from_real(&[1.0, 1.0]).unwrap();
        assert!(run_example(4.0, &unnormalized).is_err());
        assert!(sweep_r(8.0, 2.0, 25, &b0()).is_err());
        assert!(sweep_r(2.0, 8.0, 1, &b0()).is_err());
        assert!(sweep_r(-1.0, 8.0, 3, &b0()).is_err());
    }

    #[test]
    fn two_step_sweep_hits_endpoints() {
        let s = sweep_r(2.0, 8.0, 2, &b0()).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].r, 2.0);
        assert_eq!(s[1].r, 8.0);
    }
}
