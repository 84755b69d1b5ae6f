//! Elimination of a many-body Pauli term with one ancilla.
//!
//! Given `H = H* + h_χ O^χ` and a factorization `O^χ = O^χ′ O^χ″`, the
//! physical Hamiltonian on `N + 1` qubits is
//!
//! ```text
//! H̃ = 𝟙⊗H*_comm + σᶻ⊗H*_anti + h_χ σˣ⊗O^χ″
//! ```
//!
//! where `H*_comm`/`H*_anti` collect the terms commuting/anticommuting with
//! `O^χ′`, and the ancilla is qubit 0. On the subspace spanned by
//! `U(|+⟩⊗|n⟩)` with `U = |0⟩⟨0|⊗𝟙 + |1⟩⟨1|⊗O^χ′`, `H̃` acts exactly as `H`;
//! on the `|−⟩` half it acts as `H* − H^χ`.

mod choose;
mod embed;
mod factor;
mod gates;
mod multi;
pub mod report;

pub use choose::{
    choose_factorization, choose_factorization_scheduled, score_mask, FactorScore,
    DEFAULT_BUDGET,
};
pub use embed::{
    embed_case1, embed_case2, embed_scheduled, find_term, irrelevant_hamiltonian,
    irrelevant_scheduled, split_commuting, Embedding, Factorization, ScheduledEmbedding,
    SplitRecord,
};
pub use factor::FactorMask;
pub use gates::{build_gate_sequence, ControlledGate, ControlledGateSequence};
pub use multi::{embed_all, MultiEmbedding, Round};

use crate::pauli::PauliError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmbedError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("the eliminated term must act on at least one qubit")]
    IdentityChi,
    #[error("term {0} is not present in the Hamiltonian")]
    ChiAbsent(String),
    #[error("term {string} has coefficient {expected} in the Hamiltonian, not {given}")]
    CoefficientMismatch {
        string: String,
        expected: String,
        given: String,
    },
    #[error("invalid factor mask: {0}")]
    InvalidMask(String),
    #[error("round {round}: term {string} no longer present")]
    Vanished { round: usize, string: String },
    #[error("round {round}: term {string} matches several terms")]
    Ambiguous { round: usize, string: String },
}
