//! Exact ancilla embeddings that lower the locality of qubit Hamiltonians.
//!
//! A Hamiltonian `H = H* + h·O` with a many-body Pauli term `O` is rewritten
//! on one extra ancilla qubit so that the term becomes a single-qubit field
//! (or a small coupling), while a designated subspace of the enlarged system
//! evolves exactly as `H`. The [`dense`] module checks every structural claim
//! of the construction with brute-force matrices at small sizes.
//!
//! The symbolic layers ([`pauli`], [`embedding`]) are generic over any
//! [`Coefficient`], including exact rationals. Numerical layers require a
//! [`Real`] (`f32` or `f64`). Concrete `f64` aliases live at the crate root.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

pub mod adiabatic;
pub mod dense;
pub mod embedding;
pub mod pauli;
pub mod protocol;
pub mod schedule;

pub use pauli::text::{format_hamiltonian, parse_hamiltonian, TextCoefficient};
pub use pauli::{PauliAxis, PauliError, PauliString, PauliTerm, Phase, ProductResult};

/// Scalar usable as a Hamiltonian coefficient in the symbolic layers.
pub trait Coefficient:
    num_traits::Num + Neg<Output = Self> + Clone + PartialEq + fmt::Debug + Send + Sync + 'static
{
}

impl<T> Coefficient for T where
    T: num_traits::Num + Neg<Output = T> + Clone + PartialEq + fmt::Debug + Send + Sync + 'static
{
}

/// Floating-point scalar for dense simulation.
pub trait Real:
    Coefficient + nalgebra::RealField + Copy + fmt::LowerExp + FromStr + TextCoefficient
{
    /// Lossy conversion from an `f64` literal.
    fn lit(v: f64) -> Self {
        nalgebra::convert(v)
    }

    fn to_f64(self) -> f64;
}

impl Real for f64 {
    fn to_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    fn to_f64(self) -> f64 {
        self as f64
    }
}

pub use pauli::Hamiltonian;

pub type HamiltonianF64 = pauli::Hamiltonian<f64>;
pub type HamiltonianF32 = pauli::Hamiltonian<f32>;
pub type PauliTermF64 = pauli::PauliTerm<f64>;
pub type ScheduledHamiltonianF64 = schedule::ScheduledHamiltonian<f64>;
pub type EmbeddingF64 = embedding::Embedding<f64>;
pub type StateVectorF64 = dense::StateVector<f64>;
pub type StateVectorF32 = dense::StateVector<f32>;
pub type DenseOperatorF64 = dense::DenseOperator<f64>;
pub type SpinGlassF64 = adiabatic::SpinGlassInstance<f64>;
