use nalgebra::SymmetricEigen;

use super::evolve::PieceMatrices;
use super::{to_matrix, DenseError, DenseOperator, EvolutionSpec, StateVector};
use crate::pauli::Hamiltonian;
use crate::Real;

/// Gaps at or below this are treated as a degenerate ground level.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

/// Ascending eigenvalues of a Hermitian operator, with multiplicity.
pub fn spectrum_of<T: Real>(op: &DenseOperator<T>) -> Vec<T> {
    let eig = SymmetricEigen::new(op.matrix.clone());
    let mut v: Vec<T> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).expect("Hermitian eigenvalues are finite"));
    v
}

pub fn spectrum<T: Real>(h: &Hamiltonian<T>) -> Result<Vec<T>, DenseError> {
    Ok(spectrum_of(&to_matrix(h)?))
}

/// Lowest eigenpair. The flag is set when the first gap is within
/// [`DEGENERACY_TOLERANCE`].
pub fn ground_state<T: Real>(op: &DenseOperator<T>) -> (T, StateVector<T>, bool) {
    let eig = SymmetricEigen::new(op.matrix.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .expect("finite")
    });
    let e0 = eig.eigenvalues[order[0]];
    let degenerate = order.len() > 1
        && eig.eigenvalues[order[1]] - e0 <= T::lit(DEGENERACY_TOLERANCE);
    let v = eig.eigenvectors.column(order[0]).into_owned();
    (e0, StateVector::from_dvector(op.n_qubits, v), degenerate)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport<T> {
    /// `E₁ − E₀` at the minimizing sample; 0 when the ground level is degenerate.
    pub gap: T,
    pub time: T,
    pub degenerate: bool,
}

/// Minimum of `E₁ − E₀` over `samples` equally spaced times in `[0, τ]`.
pub fn min_gap<T: Real>(spec: &EvolutionSpec<T>, samples: usize) -> Result<GapReport<T>, DenseError> {
    if samples == 0 {
        return Err(DenseError::NoSteps);
    }
    let mats = PieceMatrices::new(&spec.hamiltonian)?;
    let n = spec.hamiltonian.n_qubits();
    let dim = 1usize << n;
    let mut best: Option<GapReport<T>> = None;
    for j in 0..samples {
        let t = if samples == 1 {
            T::zero()
        } else {
            spec.duration * T::lit(j as f64) / T::lit((samples - 1) as f64)
        };
        let w = PieceMatrices::weights(&spec.hamiltonian, t)?;
        let op = DenseOperator {
            n_qubits: n,
            matrix: mats.combine(&w, dim),
        };
        let ev = spectrum_of(&op);
        let raw = ev[1] - ev[0];
        let degenerate = raw <= T::lit(DEGENERACY_TOLERANCE);
        let gap = if degenerate { T::zero() } else { raw };
        if best.is_none_or(|b| gap < b.gap) {
            best = Some(GapReport {
                gap,
                time: t,
                degenerate,
            });
        }
    }
    Ok(best.expect("samples > 0"))
}

/// One eigenvalue per line, 17 significant digits.
pub fn format_spectrum<T: Real>(values: &[T]) -> String {
    values.iter().map(|v| format!("{v:.16e}\n")).collect()
}
