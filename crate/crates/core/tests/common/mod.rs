#![allow(dead_code)]

use hhl_core::{Complex64, ComplexMatrix, ComplexVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let data = (0..n * n).map(|_| complex(rng)).collect();
    ComplexMatrix::new(n, n, data).unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let m = random_matrix(rng, n);
    let mut h = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    h
}

pub fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> ComplexVector {
    ComplexVector::new((0..dim).map(|_| complex(rng)).collect())
        .unwrap()
        .normalized()
        .unwrap()
}

/// Random unitary by modified Gram–Schmidt on the columns of a random matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let m = random_matrix(rng, n);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<Complex64> = (0..n).map(|i| m[(i, j)]).collect();
        for q in &cols {
            let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= proj * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut u = ComplexMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

/// `V diag(values) V†`
pub fn with_spectrum(v: &ComplexMatrix, values: &[f64]) -> ComplexMatrix {
    let d = ComplexMatrix::diagonal(&values.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>());
    let mut a = v.matmul(&d).unwrap().matmul(&v.adjoint()).unwrap();
    // exact Hermitian symmetry
    let n = a.rows();
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            a[(j, i)] = a[(i, j)].conj();
        }
    }
    a
}

/// A random circuit of up to `max_ops` catalog gates with up to two controls.
pub fn random_circuit(rng: &mut ChaCha8Rng, n_qubits: usize, max_ops: usize) -> hhl_core::Circuit {
    use hhl_core::Gate;
    use rand::seq::SliceRandom;
    let mut c = hhl_core::Circuit::new(n_qubits);
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
