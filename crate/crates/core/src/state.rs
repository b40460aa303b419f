//! The n-qubit state-vector engine.
//!
//! Qubit `i` of an `n`-qubit register owns bit `n - 1 - i` of the basis-state
//! index, so qubit 0 is the most significant bit (the top wire of a circuit
//! diagram). For four qubits `|x1 x2 x3 x4⟩` sits at index `8·x1 + 4·x2 + 2·x3 + x4`.

use num_complex::Complex64;

use crate::error::{validation, Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector, UNITARY_TOL};

/// Outcomes with probability below this are treated as impossible.
pub const POSTSELECT_TOL: f64 = 1e-12;
/// Largest amplitude mass `extract_subregister` tolerates on violating basis states.
pub const PRODUCT_TOL: f64 = 1e-8;
/// How far from unit norm an input amplitude vector may be before it is rejected.
pub const INPUT_NORM_TOL: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Bit mask of qubit `q` in an `n`-qubit basis index.
#[inline]
pub fn qubit_mask(n_qubits: usize, q: usize) -> usize {
    1 << (n_qubits - 1 - q)
}

/// A normalized state of `n_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl QuantumState {
    /// The computational basis state `|index⟩`.
    pub fn init_basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return validation(format!("basis index {index} out of range for {n_qubits} qubits"));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Loads `v` directly as the amplitude vector, renormalizing away rounding.
    pub fn init_with_amplitudes(n_qubits: usize, v: &ComplexVector) -> Result<Self> {
        check_size(n_qubits)?;
        if v.dim() != 1usize << n_qubits {
            return validation(format!(
                "amplitude vector has dimension {}, expected {}",
                v.dim(),
                1usize << n_qubits
            ));
        }
        let norm_sqr = v.norm_sqr();
        if norm_sqr == 0.0 {
            return validation("cannot load the zero vector as a state");
        }
        if (norm_sqr.sqrt() - 1.0).abs() > INPUT_NORM_TOL {
            return validation(format!("amplitude vector has norm {}, expected 1", norm_sqr.sqrt()));
        }
        let amps = v.normalized()?.into_inner();
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn to_vector(&self) -> ComplexVector {
        ComplexVector::new(self.amps.clone()).expect("non-empty")
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Applies `u` to `targets` (targets[0] is the most significant local bit),
    /// conditioned on every qubit in `controls` being 1.
    pub fn apply_gate(&mut self, u: &ComplexMatrix, targets: &[usize], controls: &[usize]) -> Result<()> {
        apply_unitary(&mut self.amps, self.n_qubits, u, targets, controls)
    }

    /// Probability that measuring `qubit` yields `outcome`.
    pub fn prob_of_outcome(&self, qubit: usize, outcome: u8) -> Result<f64> {
        self.check_qubit(qubit)?;
        check_outcome(outcome)?;
        let mask = qubit_mask(self.n_qubits, qubit);
        let want = if outcome == 1 { mask } else { 0 };
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask == want)
            .map(|(_, z)| z.norm_sqr())
            .sum())
    }

    /// Projects onto `qubit = outcome` and renormalizes. Returns the projected
    /// state and the probability of the outcome before projection.
    pub fn postselect(&self, qubit: usize, outcome: u8) -> Result<(Self, f64)> {
        let probability = self.prob_of_outcome(qubit, outcome)?;
        if probability < POSTSELECT_TOL {
            return Err(Error::ImpossibleOutcome { probability });
        }
        let mask = qubit_mask(self.n_qubits, qubit);
        let want = if outcome == 1 { mask } else { 0 };
        let scale = 1.0 / probability.sqrt();
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, &z)| if i & mask == want { z * scale } else { ZERO })
            .collect();
        Ok((Self { n_qubits: self.n_qubits, amps }, probability))
    }

    /// Reads off the factor on `keep` when every other qubit is pinned by
    /// `fixed`. Every qubit must appear in exactly one of the two lists.
    pub fn extract_subregister(&self, fixed: &[(usize, u8)], keep: &[usize]) -> Result<ComplexVector> {
        let fixed_qubits: Vec<usize> = fixed.iter().map(|&(q, _)| q).collect();
        check_indices(self.n_qubits, &fixed_qubits, keep)?;
        if fixed.len() + keep.len() != self.n_qubits {
            return validation("every qubit must be either fixed or kept");
        }
        for &(_, bit) in fixed {
            check_outcome(bit)?;
        }
        let fixed_mask: usize = fixed.iter().map(|&(q, _)| qubit_mask(self.n_qubits, q)).sum();
        let fixed_value: usize = fixed
            .iter()
            .filter(|&&(_, b)| b == 1)
            .map(|&(q, _)| qubit_mask(self.n_qubits, q))
            .sum();

        let total = self.norm_sqr();
        let mut out = vec![ZERO; 1 << keep.len()];
        let mut violating = 0.0;
        for (i, z) in self.amps.iter().enumerate() {
            if i & fixed_mask == fixed_value {
                out[self.local_index(i, keep)] = *z;
            } else {
                violating += z.norm_sqr();
            }
        }
        let mass = violating / total;
        if mass >= PRODUCT_TOL {
            return Err(Error::NotProductState { mass });
        }
        ComplexVector::new(out)?.normalized()
    }

    /// Marginal distribution of the register `qubits`, indexed with qubits[0]
    /// as the most significant bit.
    pub fn register_distribution(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        check_indices(self.n_qubits, qubits, &[])?;
        let mut out = vec![0.0; 1 << qubits.len()];
        for (i, z) in self.amps.iter().enumerate() {
            out[self.local_index(i, qubits)] += z.norm_sqr();
        }
        Ok(out)
    }

    /// Reduced density matrix of the register `keep`, tracing out the rest.
    pub fn reduced_density_matrix(&self, keep: &[usize]) -> Result<ComplexMatrix> {
        check_indices(self.n_qubits, keep, &[])?;
        let keep_mask: usize = keep.iter().map(|&q| qubit_mask(self.n_qubits, q)).sum();
        let dim = 1 << keep.len();
        let mut rho = ComplexMatrix::zeros(dim, dim);
        for (i, zi) in self.amps.iter().enumerate() {
            if *zi == ZERO {
                continue;
            }
            let li = self.local_index(i, keep);
            let env = i & !keep_mask;
            for (j, zj) in self.amps.iter().enumerate() {
                if j & !keep_mask == env {
                    rho[(li, self.local_index(j, keep))] += zi * zj.conj();
                }
            }
        }
        Ok(rho)
    }

    fn local_index(&self, global: usize, qubits: &[usize]) -> usize {
        qubits.iter().fold(0, |acc, &q| {
            (acc << 1) | usize::from(global & qubit_mask(self.n_qubits, q) != 0)
        })
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return validation(format!("qubit {qubit} out of range for {} qubits", self.n_qubits));
        }
        Ok(())
    }
}

/// Applies a controlled unitary directly to a raw amplitude buffer of
/// `2^n_qubits` entries. The buffer need not be normalized.
pub fn apply_unitary(
    amps: &mut [Complex64],
    n_qubits: usize,
    u: &ComplexMatrix,
    targets: &[usize],
    controls: &[usize],
) -> Result<()> {
    if amps.len() != 1usize << n_qubits {
        return validation("amplitude buffer does not match the qubit count");
    }
    if targets.is_empty() {
        return validation("a gate needs at least one target");
    }
    check_indices(n_qubits, targets, controls)?;
    let k = targets.len();
    let local_dim = 1usize << k;
    if u.rows() != local_dim || u.cols() != local_dim {
        return validation(format!(
            "{}x{} matrix cannot act on {k} target qubit(s)",
            u.rows(),
            u.cols()
        ));
    }
    if !u.is_unitary(UNITARY_TOL) {
        return validation("gate matrix is not unitary");
    }

    let target_masks: Vec<usize> = targets.iter().map(|&t| qubit_mask(n_qubits, t)).collect();
    let target_mask: usize = target_masks.iter().sum();
    let control_mask: usize = controls.iter().map(|&c| qubit_mask(n_qubits, c)).sum();
    let offsets: Vec<usize> = (0..local_dim)
        .map(|j| {
            (0..k)
                .filter(|&t| j & (1 << (k - 1 - t)) != 0)
                .map(|t| target_masks[t])
                .sum()
        })
        .collect();

    let mut scratch = vec![ZERO; local_dim];
    for base in 0..amps.len() {
        if base & target_mask != 0 || base & control_mask != control_mask {
            continue;
        }
        for (s, &off) in scratch.iter_mut().zip(&offsets) {
            *s = amps[base | off];
        }
        for (i, &off) in offsets.iter().enumerate() {
            amps[base | off] = (0..local_dim).map(|j| u[(i, j)] * scratch[j]).sum();
        }
    }
    Ok(())
}

fn check_size(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > 30 {
        return validation(format!("unsupported qubit count {n_qubits}"));
    }
    Ok(())
}

fn check_outcome(outcome: u8) -> Result<()> {
    if outcome > 1 {
        return validation(format!("measurement outcome must be 0 or 1, got {outcome}"));
    }
    Ok(())
}

/// Checks that every index is in range and that the two lists are pairwise
/// distinct, both internally and across.
pub(crate) fn check_indices(n_qubits: usize, a: &[usize], b: &[usize]) -> Result<()> {
    let mut seen = 0usize;
    for &q in a.iter().chain(b) {
        if q >= n_qubits {
            return validation(format!("qubit {q} out of range for {n_qubits} qubits"));
        }
        if seen & (1 << q) != 0 {
            return validation(format!("qubit {q} used more than once"));
        }
        seen |= 1 << q;
    }
    Ok(())
}
