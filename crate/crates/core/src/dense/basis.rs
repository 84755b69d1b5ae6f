use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use super::{max_abs, to_matrix, DenseError, DenseOperator, StateVector};
use crate::embedding::ControlledGateSequence;
use crate::pauli::Hamiltonian;
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Columns `|n₊⟩ = U(|+⟩⊗|n⟩)` and `|n₋⟩ = U(|−⟩⊗|n⟩)` for every system
/// basis state `n`. Ancilla is physical qubit 0.
#[derive(Debug, Clone)]
pub struct BasisMap<T: Real> {
    pub n_system: usize,
    pub plus: DMatrix<Complex<T>>,
    pub minus: DMatrix<Complex<T>>,
}

impl<T: Real> BasisMap<T> {
    pub fn block(&self, sign: Sign) -> &DMatrix<Complex<T>> {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    pub fn projector(&self, sign: Sign) -> DMatrix<Complex<T>> {
        let v = self.block(sign);
        v * v.adjoint()
    }

    /// Largest deviation of the full Gram matrix from the identity.
    pub fn orthonormality_defect(&self) -> T {
        let dim = self.plus.nrows();
        let half = self.plus.ncols();
        let mut all = DMatrix::<Complex<T>>::zeros(dim, dim);
        all.columns_mut(0, half).copy_from(&self.plus);
        all.columns_mut(half, half).copy_from(&self.minus);
        let gram = all.adjoint() * &all;
        max_abs(&(gram - DMatrix::identity(dim, dim)))
    }

    /// Coordinates `⟨n_sign|ψ̃⟩` of a physical state.
    pub fn coordinates(&self, psi: &StateVector<T>, sign: Sign) -> StateVector<T> {
        let c: DVector<Complex<T>> = self.block(sign).adjoint() * psi.amplitudes();
        StateVector::from_dvector(self.n_system, c)
    }

    /// Population of the `sign` block.
    pub fn population(&self, psi: &StateVector<T>, sign: Sign) -> T {
        self.coordinates(psi, sign).norm_squared()
    }
}

impl<T: Real> StateVector<T> {
    pub(crate) fn norm_squared(&self) -> T {
        self.amplitudes().norm_squared()
    }
}

/// Matrix of the controlled-gate product on `n_system + 1` qubits.
pub fn gate_unitary<T: Real>(
    gates: &ControlledGateSequence,
    n_system: usize,
) -> Result<DenseOperator<T>, DenseError> {
    let n = n_system + 1;
    let dim = 1usize << n;
    let mut m = DMatrix::<Complex<T>>::zeros(dim, dim);
    for j in 0..dim {
        let col = StateVector::<T>::basis(n, j).apply_gates(gates)?;
        m.set_column(j, col.amplitudes());
    }
    Ok(DenseOperator {
        n_qubits: n,
        matrix: m,
    })
}

pub fn basis_map<T: Real>(
    gates: &ControlledGateSequence,
    n_system: usize,
) -> Result<BasisMap<T>, DenseError> {
    if gates.gates().iter().any(|g| g.control != 0) {
        return Err(DenseError::Dimension {
            expected: 0,
            found: gates.gates().iter().map(|g| g.control).max().unwrap_or(0),
        });
    }
    let half = 1usize << n_system;
    let dim = 2 * half;
    let r = T::one() / T::lit(2.0).sqrt();
    let mut plus = DMatrix::<Complex<T>>::zeros(dim, half);
    let mut minus = DMatrix::<Complex<T>>::zeros(dim, half);
    for n in 0..half {
        for (sign, target) in [(T::one(), &mut plus), (-T::one(), &mut minus)] {
            let mut v = DVector::<Complex<T>>::zeros(dim);
            v[n] = Complex::new(r, T::zero());
            v[half + n] = Complex::new(sign * r, T::zero());
            let v = StateVector::from_dvector(n_system + 1, v).apply_gates(gates)?;
            target.set_column(n, v.amplitudes());
        }
    }
    Ok(BasisMap {
        n_system,
        plus,
        minus,
    })
}

fn physical_matrix<T: Real>(
    h_tilde: &Hamiltonian<T>,
    map: &BasisMap<T>,
) -> Result<DMatrix<Complex<T>>, DenseError> {
    if h_tilde.n_qubits() != map.n_system + 1 {
        return Err(DenseError::Dimension {
            expected: map.n_system + 1,
            found: h_tilde.n_qubits(),
        });
    }
    Ok(to_matrix(h_tilde)?.matrix)
}

/// `max |⟨k₊|H̃|n₋⟩|, |⟨k₋|H̃|n₊⟩|` over all `k, n`.
pub fn check_decoupling<T: Real>(h_tilde: &Hamiltonian<T>, map: &BasisMap<T>) -> Result<T, DenseError> {
    let m = physical_matrix(h_tilde, map)?;
    let pm = map.plus.adjoint() * &m * &map.minus;
    let mp = map.minus.adjoint() * &m * &map.plus;
    let a = max_abs(&pm);
    let b = max_abs(&mp);
    Ok(if a > b { a } else { b })
}

/// The block `⟨k_s|H̃|n_s⟩` as an `n_system`-qubit operator.
pub fn restrict<T: Real>(
    h_tilde: &Hamiltonian<T>,
    map: &BasisMap<T>,
    sign: Sign,
) -> Result<DenseOperator<T>, DenseError> {
    let m = physical_matrix(h_tilde, map)?;
    let v = map.block(sign);
    Ok(DenseOperator {
        n_qubits: map.n_system,
        matrix: v.adjoint() * m * v,
    })
}
