//! Gate catalog.
//!
//! Matrices follow the usual conventions:
//!
//! ```text
//! H  = 1/√2 [[1, 1], [1, -1]]      Y     = [[0, -i], [i, 0]]
//! S  = diag(1, i)                  Ry(θ) = [[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]]
//! ```

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{validation, Result};
use crate::format::format_sig;
use crate::linalg::{exp_iat, ComplexMatrix, UNITARY_TOL};

#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    H,
    S,
    Sdag,
    X,
    Y,
    Swap,
    /// `Ry(θ) = exp(-iθY/2)`
    Ry(f64),
    /// `diag(1, e^{iθ})`
    Phase(f64),
    /// `exp(iAt)` for some Hermitian `A`; the parameter is `t`.
    ExpIAt(f64),
    Custom(String),
}

/// A named unitary acting on `arity` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    kind: GateKind,
    matrix: ComplexMatrix,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl Gate {
    /// Looks a catalog gate up by name. `theta` is required for `Ry` and
    /// ignored otherwise.
    pub fn standard(name: &str, theta: Option<f64>) -> Result<Self> {
        match name {
            "H" => Ok(Self::h()),
            "S" => Ok(Self::s()),
            "Sdag" => Ok(Self::sdag()),
            "X" => Ok(Self::x()),
            "Y" => Ok(Self::y()),
            "SWAP" => Ok(Self::swap()),
            "Ry" => match theta {
                Some(t) if t.is_finite() => Ok(Self::ry(t)),
                _ => validation("Ry needs a finite angle"),
            },
            other => validation(format!("unknown gate {other:?}")),
        }
    }

    pub fn h() -> Self {
        let r = FRAC_1_SQRT_2;
        Self::known(GateKind::H, &[&[c(r, 0.0), c(r, 0.0)], &[c(r, 0.0), c(-r, 0.0)]])
    }

    pub fn s() -> Self {
        Self::known(GateKind::S, &[&[c(1.0, 0.0), c(0.0, 0.0)], &[c(0.0, 0.0), c(0.0, 1.0)]])
    }

    pub fn sdag() -> Self {
        Self::known(GateKind::Sdag, &[&[c(1.0, 0.0), c(0.0, 0.0)], &[c(0.0, 0.0), c(0.0, -1.0)]])
    }

    pub fn x() -> Self {
        Self::known(GateKind::X, &[&[c(0.0, 0.0), c(1.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)]])
    }

    pub fn y() -> Self {
        Self::known(GateKind::Y, &[&[c(0.0, 0.0), c(0.0, -1.0)], &[c(0.0, 1.0), c(0.0, 0.0)]])
    }

    pub fn swap() -> Self {
        let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
        Self::known(GateKind::Swap, &[&[l, o, o, o], &[o, o, l, o], &[o, l, o, o], &[o, o, o, l]])
    }

    pub fn ry(theta: f64) -> Self {
        let (s, co) = (theta / 2.0).sin_cos();
        Self::known(GateKind::Ry(theta), &[&[c(co, 0.0), c(-s, 0.0)], &[c(s, 0.0), c(co, 0.0)]])
    }

    pub fn phase(theta: f64) -> Self {
        let o = c(0.0, 0.0);
        Self::known(GateKind::Phase(theta), &[&[c(1.0, 0.0), o], &[o, Complex64::from_polar(1.0, theta)]])
    }

    /// `exp(iAt)` for a Hermitian `A` of dimension `2^k`.
    pub fn exp_iat(a: &ComplexMatrix, t: f64) -> Result<Self> {
        let matrix = exp_iat(a, t)?;
        Self::checked(GateKind::ExpIAt(t), matrix)
    }

    /// Wraps an arbitrary unitary under a label.
    pub fn custom(name: impl Into<String>, matrix: ComplexMatrix) -> Result<Self> {
        Self::checked(GateKind::Custom(name.into()), matrix)
    }

    fn known(kind: GateKind, rows: &[&[Complex64]]) -> Self {
        Self { kind, matrix: ComplexMatrix::from_rows(rows) }
    }

    fn checked(kind: GateKind, matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.rows();
        if !matrix.is_square() || !dim.is_power_of_two() || dim < 2 {
            return validation(format!(
                "gate matrix must be 2^k x 2^k, got {}x{}",
                matrix.rows(),
                matrix.cols()
            ));
        }
        if !matrix.is_unitary(UNITARY_TOL) {
            return validation("gate matrix is not unitary");
        }
        Ok(Self { kind, matrix })
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Number of qubits the gate acts on.
    pub fn arity(&self) -> usize {
        self.matrix.rows().trailing_zeros() as usize
    }

    pub fn name(&self) -> &str {
        match &self.kind {
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdag => "Sdag",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Swap => "SWAP",
            GateKind::Ry(_) => "Ry",
            GateKind::Phase(_) => "P",
            GateKind::ExpIAt(_) => "exp_iAt",
            GateKind::Custom(name) => name,
        }
    }

    /// The angle (or evolution time for `exp_iAt`) carried by the gate.
    pub fn param(&self) -> Option<f64> {
        match self.kind {
            GateKind::Ry(t) | GateKind::Phase(t) | GateKind::ExpIAt(t) => Some(t),
            _ => None,
        }
    }

    /// The inverse gate, labelled as such.
    pub fn adjoint(&self) -> Self {
        match &self.kind {
            GateKind::H | GateKind::X | GateKind::Y | GateKind::Swap => self.clone(),
            GateKind::S => Self::sdag(),
            GateKind::Sdag => Self::s(),
            GateKind::Ry(t) => Self::ry(-t),
            GateKind::Phase(t) => Self::phase(-t),
            GateKind::ExpIAt(t) => Self { kind: GateKind::ExpIAt(-t), matrix: self.matrix.adjoint() },
            GateKind::Custom(name) => {
                let name = match name.strip_suffix("_dag") {
                    Some(base) => base.to_string(),
                    None => format!("{name}_dag"),
                };
                Self { kind: GateKind::Custom(name), matrix: self.matrix.adjoint() }
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            Some(t) => write!(f, "{}(θ={})", self.name(), format_sig(t, 9)),
            None => f.write_str(self.name()),
        }
    }
}
