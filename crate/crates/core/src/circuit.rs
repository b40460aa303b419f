//! Circuits: ordered gate lists with controls, inversion, the inverse QFT
//! builder and a dense full-unitary oracle.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{validation, Error, Result};
use crate::gates::Gate;
use crate::linalg::ComplexMatrix;
use crate::state::{check_indices, qubit_mask, QuantumState};

/// Largest register `to_unitary` will materialize.
pub const MAX_UNITARY_QUBITS: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct CircuitOp {
    pub gate: Gate,
    pub targets: Vec<usize>,
    pub controls: Vec<usize>,
}

impl CircuitOp {
    pub fn adjoint(&self) -> Self {
        Self { gate: self.gate.adjoint(), targets: self.targets.clone(), controls: self.controls.clone() }
    }
}

impl fmt::Display for CircuitOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} targets={} controls={}", self.gate, fmt_list(&self.targets), fmt_list(&self.controls))
    }
}

fn fmt_list(qs: &[usize]) -> String {
    let items: Vec<String> = qs.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(","))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<CircuitOp>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, ops: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Appends `gate` on `targets`, controlled on `controls` all being 1.
    pub fn push(&mut self, gate: Gate, targets: &[usize], controls: &[usize]) -> Result<&mut Self> {
        if targets.len() != gate.arity() {
            return validation(format!(
                "{} acts on {} qubit(s) but {} target(s) were given",
                gate.name(),
                gate.arity(),
                targets.len()
            ));
        }
        check_indices(self.n_qubits, targets, controls)?;
        self.ops.push(CircuitOp { gate, targets: targets.to_vec(), controls: controls.to_vec() });
        Ok(self)
    }

    /// Appends every op of `other`, which must live on the same register.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.n_qubits != self.n_qubits {
            return validation(format!(
                "cannot append a {}-qubit circuit to a {}-qubit circuit",
                other.n_qubits, self.n_qubits
            ));
        }
        self.ops.extend(other.ops.iter().cloned());
        Ok(self)
    }

    /// The inverse circuit: ops reversed, each gate replaced by its adjoint.
    pub fn dagger(&self) -> Self {
        Self { n_qubits: self.n_qubits, ops: self.ops.iter().rev().map(CircuitOp::adjoint).collect() }
    }

    /// Runs the circuit gate by gate on `state`.
    pub fn run(&self, state: &QuantumState) -> Result<QuantumState> {
        if state.n_qubits() != self.n_qubits {
            return validation(format!(
                "circuit has {} qubits but the state has {}",
                self.n_qubits,
                state.n_qubits()
            ));
        }
        let mut out = state.clone();
        for op in &self.ops {
            out.apply_gate(op.gate.matrix(), &op.targets, &op.controls)?;
        }
        Ok(out)
    }

    /// Multiplies out the full `2^n × 2^n` unitary, later ops on the left.
    pub fn to_unitary(&self) -> Result<ComplexMatrix> {
        if self.n_qubits > MAX_UNITARY_QUBITS {
            return Err(Error::Resource(format!(
                "refusing to build a {}-qubit unitary (limit {MAX_UNITARY_QUBITS})",
                self.n_qubits
            )));
        }
        let mut u = ComplexMatrix::identity(1 << self.n_qubits);
        for op in &self.ops {
            u = embed(self.n_qubits, op).matmul(&u)?;
        }
        Ok(u)
    }
}

impl fmt::Display for Circuit {
    /// One op per line: `<name>[(θ=<value>)] targets=[..] controls=[..]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

/// Full-register matrix of a single op, built entry by entry: `⟨i|E|j⟩` is
/// the local gate element when `i` and `j` agree off the targets and every
/// control bit of `j` is set, and `δ_ij` otherwise.
fn embed(n_qubits: usize, op: &CircuitOp) -> ComplexMatrix {
    let dim = 1usize << n_qubits;
    let target_mask: usize = op.targets.iter().map(|&t| qubit_mask(n_qubits, t)).sum();
    let control_mask: usize = op.controls.iter().map(|&c| qubit_mask(n_qubits, c)).sum();
    let local = |i: usize| {
        op.targets
            .iter()
            .fold(0, |acc, &t| (acc << 1) | usize::from(i & qubit_mask(n_qubits, t) != 0))
    };
    let g = op.gate.matrix();
    let mut m = ComplexMatrix::zeros(dim, dim);
    for j in 0..dim {
        if j & control_mask != control_mask {
            m[(j, j)] = Complex64::new(1.0, 0.0);
            continue;
        }
        for i in 0..dim {
            if i & !target_mask == j & !target_mask {
                m[(i, j)] = g[(local(i), local(j))];
            }
        }
    }
    m
}

/// Inverse quantum Fourier transform on `qubits` (qubits[0] most significant)
/// inside an `n_qubits` register. Maps `Σ_k e^{2πi·ℓk/2^m}|k⟩/√2^m` to `|ℓ⟩`.
///
/// For two qubits the ops are `SWAP(q0,q1); H(q1); Sdag(q1 | q0); H(q0)`.
pub fn inverse_qft(n_qubits: usize, qubits: &[usize]) -> Result<Circuit> {
    if qubits.is_empty() {
        return validation("inverse QFT needs at least one qubit");
    }
    check_indices(n_qubits, qubits, &[])?;
    let m = qubits.len();
    let mut c = Circuit::new(n_qubits);
    for i in 0..m / 2 {
        c.push(Gate::swap(), &[qubits[i], qubits[m - 1 - i]], &[])?;
    }
    for j in (0..m).rev() {
        for k in (j + 1..m).rev() {
            let gate = match k - j + 1 {
                2 => Gate::sdag(),
                d => Gate::phase(-2.0 * PI / (1u64 << d) as f64),
            };
            c.push(gate, &[qubits[k]], &[qubits[j]])?;
        }
        c.push(Gate::h(), &[qubits[j]], &[])?;
    }
    Ok(c)
}

/// Forward QFT, the dagger of [`inverse_qft`].
pub fn qft(n_qubits: usize, qubits: &[usize]) -> Result<Circuit> {
    Ok(inverse_qft(n_qubits, qubits)?.dagger())
}
