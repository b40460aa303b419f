//! The HHL pipeline: phase estimation, eigenvalue inversion by controlled
//! `Ry` rotations on an ancilla, uncompute, and postselection on the ancilla.
//!
//! Register layout for a system of `m` qubits and `n_clock` clock qubits:
//! qubit 0 is the rotation ancilla, qubits `1..=n_clock` are the clock (most
//! significant first) and the last `m` qubits hold `|b⟩`.
//!
//! A clock reading `ℓ` stands for the eigenvalue `λ(ℓ) = 2πℓ / t0`. Spectra
//! whose eigenvalues all land on `{1, …, 2^n_clock − 1}` this way are called
//! representable: phase estimation is exact for them and the output state is
//! exactly proportional to `A⁻¹b`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::circuit::{inverse_qft, Circuit};
use crate::error::{validation, Error, Result};
use crate::gates::Gate;
use crate::linalg::{classical_solve, fidelity, hermitian_eig, ComplexMatrix, ComplexVector, NORM_TOL};
use crate::state::{QuantumState, INPUT_NORM_TOL, PRODUCT_TOL};

/// Largest total register `run_hhl` will simulate.
pub const MAX_QUBITS: usize = 20;
/// How close `λ·t0/2π` must be to an integer to count as representable.
pub const REPRESENTABLE_TOL: f64 = 1e-9;

/// A Hermitian `A` of dimension `2^m` and a normalized right-hand side.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    a: ComplexMatrix,
    b: ComplexVector,
}

impl LinearSystem {
    pub fn new(a: ComplexMatrix, b: ComplexVector) -> Result<Self> {
        a.require_hermitian("A")?;
        let dim = a.rows();
        if dim < 2 || !dim.is_power_of_two() {
            return validation(format!("A must have dimension 2^m with m ≥ 1, got {dim}"));
        }
        if b.dim() != dim {
            return validation(format!("b has dimension {}, expected {dim}", b.dim()));
        }
        if (b.norm() - 1.0).abs() > INPUT_NORM_TOL {
            return validation(format!("b must be normalized, has norm {}", b.norm()));
        }
        let b = b.normalized()?;
        Ok(Self { a, b })
    }

    /// Like [`LinearSystem::new`] but scales `b` to unit norm first.
    pub fn normalizing(a: ComplexMatrix, b: ComplexVector) -> Result<Self> {
        let b = b.normalized()?;
        Self::new(a, b)
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexVector {
        &self.b
    }

    pub fn system_qubits(&self) -> usize {
        self.a.rows().trailing_zeros() as usize
    }

    /// Normalized classical solution `A⁻¹b / ‖A⁻¹b‖`.
    pub fn classical_solution(&self) -> Result<ComplexVector> {
        classical_solve(&self.a, &self.b)?.normalized()
    }
}

/// How clock readings are turned into ancilla rotation angles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Inversion {
    /// `θ(ℓ) = 2·arcsin(C/λ(ℓ))`, giving ancilla amplitude exactly `C/λ`.
    ExactArcsin { c: f64 },
    /// `θ(ℓ) = 2C/λ(ℓ)` with `C = 2^{-r}π`, the small-angle stand-in.
    SmallAngle { r: f64 },
}

impl Inversion {
    /// The rotation constant `C`.
    pub fn constant(&self) -> f64 {
        match *self {
            Inversion::ExactArcsin { c } => c,
            Inversion::SmallAngle { r } => PI * (-r).exp2(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HhlConfig {
    pub n_clock: usize,
    pub t0: f64,
    pub inversion: Inversion,
}

impl HhlConfig {
    /// Exact-arcsin inversion. `c` defaults to `λ(1) = 2π/t0`, the largest
    /// constant valid for every representable eigenvalue.
    pub fn exact(n_clock: usize, t0: f64, c: Option<f64>) -> Self {
        let c = c.unwrap_or(2.0 * PI / t0);
        Self { n_clock, t0, inversion: Inversion::ExactArcsin { c } }
    }

    pub fn small_angle(n_clock: usize, t0: f64, r: f64) -> Self {
        Self { n_clock, t0, inversion: Inversion::SmallAngle { r } }
    }

    /// Eigenvalue encoded by clock reading `ell`.
    pub fn eigenvalue_of(&self, ell: usize) -> f64 {
        2.0 * PI * ell as f64 / self.t0
    }

    /// Ancilla rotation angle for clock reading `ell`; `None` for `ℓ = 0`.
    pub fn rotation_angle(&self, ell: usize) -> Option<f64> {
        if ell == 0 {
            return None;
        }
        let ratio = self.inversion.constant() / self.eigenvalue_of(ell);
        Some(match self.inversion {
            // validate() bounds the ratio by 1 up to rounding
            Inversion::ExactArcsin { .. } => 2.0 * ratio.min(1.0).asin(),
            Inversion::SmallAngle { .. } => 2.0 * ratio,
        })
    }

    /// Small-angle mode below `r = log2(2π)` is accepted but no longer keeps
    /// `C ≤ min λ` for the eigenvalue 1.
    pub fn below_recommended_r(&self) -> bool {
        matches!(self.inversion, Inversion::SmallAngle { r } if r < (2.0 * PI).log2())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_clock == 0 || self.n_clock > MAX_QUBITS {
            return validation(format!("clock size {} out of range", self.n_clock));
        }
        if !(self.t0.is_finite() && self.t0 > 0.0) {
            return validation(format!("t0 must be positive, got {}", self.t0));
        }
        match self.inversion {
            Inversion::ExactArcsin { c } => {
                if !(c.is_finite() && c >= 0.0) {
                    return validation(format!("C must be non-negative, got {c}"));
                }
                let lambda_min = self.eigenvalue_of(1);
                if c > lambda_min * (1.0 + 1e-12) {
                    return Err(Error::Domain(format!(
                        "C = {c} exceeds the smallest clock eigenvalue {lambda_min}; arcsin(C/λ) is undefined"
                    )));
                }
            }
            Inversion::SmallAngle { r } => {
                if !(r.is_finite() && r > 0.0) {
                    return validation(format!("r must be positive, got {r}"));
                }
            }
        }
        Ok(())
    }
}

/// Qubit indices of the three registers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub ancilla: usize,
    pub clock: Vec<usize>,
    pub system: Vec<usize>,
}

impl Layout {
    pub fn new(n_clock: usize, system_qubits: usize) -> Self {
        Self {
            ancilla: 0,
            clock: (1..=n_clock).collect(),
            system: (n_clock + 1..n_clock + 1 + system_qubits).collect(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        1 + self.clock.len() + self.system.len()
    }
}

/// Phase estimation of `exp(iA·t0)` into `clock`: Walsh–Hadamard on the
/// clock, controlled powers of the evolution (least significant clock qubit
/// first), then the inverse QFT. An eigenvalue `λ = 2πℓ/t0` lands on `|ℓ⟩`.
pub fn build_phase_estimation(
    n_qubits: usize,
    a: &ComplexMatrix,
    t0: f64,
    clock: &[usize],
    system: &[usize],
) -> Result<Circuit> {
    if a.rows() != 1 << system.len() {
        return validation(format!(
            "A has dimension {} but the system register has {} qubit(s)",
            a.rows(),
            system.len()
        ));
    }
    if clock.is_empty() {
        return validation("phase estimation needs at least one clock qubit");
    }
    let n_clock = clock.len();
    let mut c = Circuit::new(n_qubits);
    for &q in clock {
        c.push(Gate::h(), &[q], &[])?;
    }
    for (i, &q) in clock.iter().enumerate().rev() {
        let significance = n_clock - 1 - i;
        let t = t0 * (1u64 << significance) as f64 / (1u64 << n_clock) as f64;
        c.push(Gate::exp_iat(a, t)?, system, &[q])?;
    }
    c.append(&inverse_qft(n_qubits, clock)?)?;
    Ok(c)
}

/// One multi-controlled `Ry(θ(ℓ))` on the ancilla per nonzero clock value,
/// with 0-controls realized by X conjugation.
pub fn build_inversion(n_qubits: usize, clock: &[usize], ancilla: usize, config: &HhlConfig) -> Result<Circuit> {
    config.validate()?;
    if clock.len() != config.n_clock {
        return validation(format!(
            "config expects {} clock qubits, got {}",
            config.n_clock,
            clock.len()
        ));
    }
    let n_clock = clock.len();
    let mut c = Circuit::new(n_qubits);
    for ell in 1usize..1 << n_clock {
        let theta = config.rotation_angle(ell).expect("ℓ > 0");
        let zeros: Vec<usize> = clock
            .iter()
            .enumerate()
            .filter(|&(i, _)| ell & (1 << (n_clock - 1 - i)) == 0)
            .map(|(_, &q)| q)
            .collect();
        for &q in &zeros {
            c.push(Gate::x(), &[q], &[])?;
        }
        c.push(Gate::ry(theta), &[ancilla], clock)?;
        for &q in &zeros {
            c.push(Gate::x(), &[q], &[])?;
        }
    }
    Ok(c)
}

#[derive(Clone, Debug)]
pub struct HhlResult {
    /// The postselected system register `|x′⟩`.
    pub solution: ComplexVector,
    /// Probability of reading the ancilla as 1.
    pub success_probability: f64,
    /// `|⟨x̂|x′⟩|` against the normalized classical solution. When the clock
    /// fails to uncompute this is `√⟨x̂|ρ|x̂⟩` for the reduced system state.
    pub fidelity: f64,
    /// Clock weights after phase estimation, indexed by the clock value.
    pub clock_histogram: Vec<f64>,
    /// Mass left on nonzero clock values after postselection.
    pub clock_residual: f64,
}

/// The whole circuit: phase estimation, inversion, and the uncompute.
pub fn build_hhl_circuit(instance: &LinearSystem, config: &HhlConfig) -> Result<Circuit> {
    let layout = Layout::new(config.n_clock, instance.system_qubits());
    let pe = build_phase_estimation(layout.n_qubits(), instance.a(), config.t0, &layout.clock, &layout.system)?;
    let mut c = pe.clone();
    c.append(&build_inversion(layout.n_qubits(), &layout.clock, layout.ancilla, config)?)?;
    c.append(&pe.dagger())?;
    Ok(c)
}

pub fn run_hhl(instance: &LinearSystem, config: &HhlConfig) -> Result<HhlResult> {
    config.validate()?;
    let layout = Layout::new(config.n_clock, instance.system_qubits());
    let n = layout.n_qubits();
    if n > MAX_QUBITS {
        return Err(Error::Resource(format!("{n} qubits exceed the simulator limit of {MAX_QUBITS}")));
    }
    let expected = instance.classical_solution()?;

    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[..instance.b().dim()].copy_from_slice(instance.b().as_slice());
    let initial = QuantumState::init_with_amplitudes(n, &ComplexVector::new(amps)?)?;

    let pe = build_phase_estimation(n, instance.a(), config.t0, &layout.clock, &layout.system)?;
    let after_pe = pe.run(&initial)?;
    let clock_histogram = after_pe.register_distribution(&layout.clock)?;

    let rotated = build_inversion(n, &layout.clock, layout.ancilla, config)?.run(&after_pe)?;
    let uncomputed = pe.dagger().run(&rotated)?;
    let (post, success_probability) = uncomputed.postselect(layout.ancilla, 1)?;

    let clock_residual = (1.0 - post.register_distribution(&layout.clock)?[0]).max(0.0);
    let (solution, fidelity) = if clock_residual < PRODUCT_TOL {
        let mut fixed = vec![(layout.ancilla, 1u8)];
        fixed.extend(layout.clock.iter().map(|&q| (q, 0u8)));
        let solution = post.extract_subregister(&fixed, &layout.system)?;
        let f = fidelity(&expected, &solution)?;
        (solution, f)
    } else {
        let rho = post.reduced_density_matrix(&layout.system)?;
        let overlap = rho.mul_vec(&expected)?;
        let f = expected.inner(&overlap)?.re.clamp(0.0, 1.0).sqrt();
        let eig = hermitian_eig(&rho)?;
        (eig.vector(eig.dim() - 1), f)
    };

    Ok(HhlResult { solution, success_probability, fidelity, clock_histogram, clock_residual })
}

/// `⟨x|M|x⟩` for a normalized `x` and Hermitian `M`.
pub fn expectation_value(x: &ComplexVector, m: &ComplexMatrix) -> Result<f64> {
    m.require_hermitian("observable")?;
    if m.rows() != x.dim() {
        return validation(format!("observable has dimension {}, state has {}", m.rows(), x.dim()));
    }
    if !x.is_normalized(NORM_TOL) {
        return validation("expectation value needs a normalized state");
    }
    let value = x.inner(&m.mul_vec(x)?)?;
    if value.im.abs() >= 1e-10 {
        return validation(format!("expectation value has imaginary part {}", value.im));
    }
    Ok(value.re)
}

/// Closed-form success probability for a representable spectrum:
/// `Σ|β_j|²(C/λ_j)²` in exact mode and `Σ|β_j|² sin²(C/λ_j)` in small-angle mode.
pub fn success_probability_closed_form(instance: &LinearSystem, config: &HhlConfig) -> Result<f64> {
    config.validate()?;
    let eig = hermitian_eig(instance.a())?;
    let betas = eig.coefficients(instance.b())?;
    let max_ell = (1u64 << config.n_clock) - 1;
    let c = config.inversion.constant();
    let mut total = 0.0;
    for (&lambda, beta) in eig.values.iter().zip(&betas) {
        let ell = lambda * config.t0 / (2.0 * PI);
        let rounded = ell.round();
        if (ell - rounded).abs() > REPRESENTABLE_TOL || rounded < 1.0 || rounded > max_ell as f64 {
            return Err(Error::Unsupported(format!(
                "eigenvalue {lambda} is not representable on a {}-qubit clock with t0 = {}",
                config.n_clock, config.t0
            )));
        }
        let amplitude = match config.inversion {
            Inversion::ExactArcsin { .. } => c / lambda,
            Inversion::SmallAngle { .. } => (c / lambda).sin(),
        };
        total += beta.norm_sqr() * amplitude * amplitude;
    }
    Ok(total)
}
