#![allow(dead_code)]

use std::path::PathBuf;

use hhl_core::{Circuit, Complex64, ComplexVector, Gate};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn hhl(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hhl").chain(args.iter().copied());
    let code = hhl_cli::run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).expect("utf-8 stdout"),
        stderr: String::from_utf8(err).expect("utf-8 stderr"),
    }
}

pub fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> ComplexVector {
    let amps = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexVector::new(amps).unwrap().normalized().unwrap()
}

/// A random circuit of up to `max_ops` catalog gates with up to two controls.
pub fn random_circuit(rng: &mut ChaCha8Rng, n_qubits: usize, max_ops: usize) -> Circuit {
    let mut c = Circuit::new(n_qubits);
    let n_ops = rng.gen_range(0..=max_ops);
    for _ in 0..n_ops {
        let gate = match rng.gen_range(0..7) {
            0 => Gate::h(),
            1 => Gate::s(),
            2 => Gate::sdag(),
            3 => Gate::x(),
            4 => Gate::y(),
            5 if n_qubits >= 2 => Gate::swap(),
            _ => Gate::ry(rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)),
        };
        let mut qubits: Vec<usize> = (0..n_qubits).collect();
        qubits.shuffle(rng);
        let k = gate.arity();
        let n_controls = rng.gen_range(0..=(n_qubits - k).min(2));
        let targets = qubits[..k].to_vec();
        let controls = qubits[k..k + n_controls].to_vec();
        c.push(gate, &targets, &controls).unwrap();
    }
    c
}
