//! Dense-matrix oracle: matrix images of Pauli sums, the `|n±⟩` basis,
//! block restriction, spectra and piecewise-exact time evolution.
//!
//! Everything here is brute force and capped at [`DEFAULT_CAP`] qubits.

mod basis;
mod evolve;
mod spectrum;
mod state;

pub use basis::{basis_map, check_decoupling, gate_unitary, restrict, BasisMap, Sign};
pub use evolve::{evolve, evolve_sampled, format_trajectory, EvolutionSpec, Trajectory};
pub use spectrum::{
    format_spectrum, ground_state, min_gap, spectrum, spectrum_of, GapReport,
    DEGENERACY_TOLERANCE,
};
pub use state::{bits_to_index, format_bits, index_to_bits, StateVector};

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::embedding::ControlledGate;
use crate::pauli::{Hamiltonian, PauliAxis};
use crate::Real;

/// Largest register the oracle will build (4096-dimensional).
pub const DEFAULT_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DenseError {
    #[error("{n} qubits exceeds the dense cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("schedule value is not finite at t = {t}")]
    NonFinite { t: f64 },
    #[error("evolution needs at least one step")]
    NoSteps,
}

/// Square complex matrix on `n_qubits`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator<T: Real> {
    pub n_qubits: usize,
    pub matrix: DMatrix<Complex<T>>,
}

impl<T: Real> DenseOperator<T> {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Largest elementwise `|A_ij − B_ij|`.
    pub fn max_deviation(&self, other: &DenseOperator<T>) -> T {
        max_abs(&(&self.matrix - &other.matrix))
    }

    /// Largest elementwise deviation from the conjugate transpose.
    pub fn hermiticity_defect(&self) -> T {
        max_abs(&(&self.matrix - self.matrix.adjoint()))
    }

    pub fn identity(n_qubits: usize) -> Self {
        DenseOperator {
            n_qubits,
            matrix: DMatrix::identity(1 << n_qubits, 1 << n_qubits),
        }
    }
}

pub(crate) fn max_abs<T: Real>(m: &DMatrix<Complex<T>>) -> T {
    m.iter()
        .map(|z| z.norm_sqr().sqrt())
        .fold(T::zero(), |a, b| if b > a { b } else { a })
}

/// Phase `(re, im)` picked up by basis index `j` under a Pauli string with
/// the given Z mask and Y count: `i^{#Y} (−1)^{popcount(j & z)}`.
pub(crate) fn pauli_phase(j: u64, z: u64, ny: usize) -> (i8, i8) {
    let sign: i8 = if (j & z).count_ones().is_multiple_of(2) { 1 } else { -1 };
    match ny % 4 {
        0 => (sign, 0),
        1 => (0, sign),
        2 => (-sign, 0),
        _ => (0, -sign),
    }
}

pub fn to_matrix<T: Real>(h: &Hamiltonian<T>) -> Result<DenseOperator<T>, DenseError> {
    to_matrix_capped(h, DEFAULT_CAP)
}

/// `Σ c · (σ^{a_0} ⊗ … ⊗ σ^{a_{n-1}})`.
pub fn to_matrix_capped<T: Real>(
    h: &Hamiltonian<T>,
    cap: usize,
) -> Result<DenseOperator<T>, DenseError> {
    let n = h.n_qubits();
    if n > cap {
        return Err(DenseError::CapExceeded { n, cap });
    }
    let dim = 1usize << n;
    let mut m = DMatrix::<Complex<T>>::zeros(dim, dim);
    for t in h.terms() {
        let (x, z) = t.string.xz_masks();
        let ny = t.string.y_count();
        let c = t.coefficient;
        for j in 0..dim {
            let (re, im) = pauli_phase(j as u64, z, ny);
            let v = Complex::new(c * T::lit(re as f64), c * T::lit(im as f64));
            m[(j ^ x as usize, j)] += v;
        }
    }
    Ok(DenseOperator {
        n_qubits: n,
        matrix: m,
    })
}

/// Apply one controlled Pauli in place. `n_qubits` is the physical register;
/// the target index is relative to the register without the control qubit.
pub(crate) fn apply_controlled_gate<T: Real>(
    amps: &mut nalgebra::DVector<Complex<T>>,
    n_qubits: usize,
    gate: &ControlledGate,
) -> Result<(), DenseError> {
    let target = if gate.target < gate.control {
        gate.target
    } else {
        gate.target + 1
    };
    if gate.control >= n_qubits || target >= n_qubits {
        return Err(DenseError::Dimension {
            expected: n_qubits,
            found: gate.control.max(target) + 1,
        });
    }
    let cbit = 1usize << (n_qubits - 1 - gate.control);
    let tbit = 1usize << (n_qubits - 1 - target);
    let i = Complex::new(T::zero(), T::one());
    for j in 0..amps.len() {
        if j & cbit == 0 || j & tbit != 0 {
            continue;
        }
        let k = j | tbit;
        let (a0, a1) = (amps[j], amps[k]);
        match gate.axis {
            PauliAxis::I => {}
            PauliAxis::X => {
                amps[j] = a1;
                amps[k] = a0;
            }
            PauliAxis::Y => {
                amps[j] = -(i * a1);
                amps[k] = i * a0;
            }
            PauliAxis::Z => {
                amps[k] = -a1;
            }
        }
    }
    Ok(())
}
