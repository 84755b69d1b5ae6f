//! Exact Pauli-string algebra and sparse Pauli-sum Hamiltonians.

mod hamiltonian;
mod string;
pub mod text;

pub use hamiltonian::{hamiltonian_locality, normalize, Hamiltonian, PauliTerm};
pub use string::{
    commutes, locality, multiply, parse_pauli_string, PauliAxis, PauliString, Phase,
    ProductResult,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PauliError {
    #[error("empty Pauli string")]
    Empty,
    #[error("invalid Pauli character {character:?} at position {position}")]
    InvalidCharacter { position: usize, character: char },
    #[error("length mismatch: {left} vs {right} qubits")]
    LengthMismatch { left: usize, right: usize },
}
