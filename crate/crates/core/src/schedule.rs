//! Time-dependent Hamiltonians as sums of scalar envelopes times static pieces.

use std::fmt;
use std::sync::Arc;

use crate::pauli::{Hamiltonian, PauliError, PauliString};
use crate::Coefficient;

/// Scalar envelope of one Hamiltonian piece.
#[derive(Clone)]
pub enum ScheduleFn<T> {
    Constant(T),
    /// Straight line from `start` at `t = 0` to `end` at `t = duration`.
    Linear { start: T, end: T, duration: T },
    Custom(Arc<dyn Fn(T) -> T + Send + Sync>),
}

impl<T: Coefficient> ScheduleFn<T> {
    pub fn ramp_down(duration: T) -> Self {
        ScheduleFn::Linear {
            start: T::one(),
            end: T::zero(),
            duration,
        }
    }

    pub fn ramp_up(duration: T) -> Self {
        ScheduleFn::Linear {
            start: T::zero(),
            end: T::one(),
            duration,
        }
    }

    pub fn value(&self, t: T) -> T {
        match self {
            ScheduleFn::Constant(c) => c.clone(),
            ScheduleFn::Linear {
                start,
                end,
                duration,
            } => {
                if duration.is_zero() {
                    // a zero-length ramp has already arrived
                    return end.clone();
                }
                start.clone() + (end.clone() - start.clone()) * t / duration.clone()
            }
            ScheduleFn::Custom(f) => f(t),
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for ScheduleFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleFn::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            ScheduleFn::Linear {
                start,
                end,
                duration,
            } => f
                .debug_struct("Linear")
                .field("start", start)
                .field("end", end)
                .field("duration", duration)
                .finish(),
            ScheduleFn::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// `H(t) = Σ_k f_k(t) H_k`.
#[derive(Debug, Clone)]
pub struct ScheduledHamiltonian<T> {
    n_qubits: usize,
    pieces: Vec<(ScheduleFn<T>, Hamiltonian<T>)>,
}

impl<T: Coefficient> ScheduledHamiltonian<T> {
    pub fn new(
        n_qubits: usize,
        pieces: Vec<(ScheduleFn<T>, Hamiltonian<T>)>,
    ) -> Result<Self, PauliError> {
        for (_, h) in &pieces {
            if h.n_qubits() != n_qubits {
                return Err(PauliError::LengthMismatch {
                    left: n_qubits,
                    right: h.n_qubits(),
                });
            }
        }
        Ok(ScheduledHamiltonian { n_qubits, pieces })
    }

    pub fn constant(h: Hamiltonian<T>) -> Self {
        ScheduledHamiltonian {
            n_qubits: h.n_qubits(),
            pieces: vec![(ScheduleFn::Constant(T::one()), h)],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn pieces(&self) -> &[(ScheduleFn<T>, Hamiltonian<T>)] {
        &self.pieces
    }

    /// Instantaneous Hamiltonian, normalized.
    pub fn at(&self, t: T) -> Hamiltonian<T> {
        let mut terms = Vec::new();
        for (f, h) in &self.pieces {
            let w = f.value(t.clone());
            terms.extend(h.scaled(w).into_terms());
        }
        Hamiltonian::new(self.n_qubits, terms)
            .expect("pieces share the register")
            .normalized()
    }

    /// Apply `map` to every piece, keeping the envelopes.
    pub fn map_pieces<E>(
        &self,
        mut map: impl FnMut(&Hamiltonian<T>) -> Result<Hamiltonian<T>, E>,
    ) -> Result<Self, E> {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        let mut n = self.n_qubits;
        for (f, h) in &self.pieces {
            let mapped = map(h)?;
            n = mapped.n_qubits();
            pieces.push((f.clone(), mapped));
        }
        Ok(ScheduledHamiltonian {
            n_qubits: n,
            pieces,
        })
    }

    /// Largest locality over all pieces.
    pub fn locality(&self) -> usize {
        self.pieces.iter().map(|(_, h)| h.locality()).max().unwrap_or(0)
    }

    /// Whether any piece carries a nonzero term on `string`.
    pub fn contains(&self, string: &PauliString) -> bool {
        self.pieces.iter().any(|(_, h)| {
            h.coefficient_of(string)
                .map(|c| !c.is_zero())
                .unwrap_or(false)
        })
    }
}
