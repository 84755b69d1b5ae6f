use std::collections::BTreeMap;
use std::fmt;

use super::{PauliError, PauliString};
use crate::Coefficient;

/// A real coefficient times a Pauli string.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm<T> {
    pub coefficient: T,
    pub string: PauliString,
}

impl<T: Coefficient> PauliTerm<T> {
    pub fn new(coefficient: T, string: PauliString) -> Self {
        PauliTerm {
            coefficient,
            string,
        }
    }

    pub fn locality(&self) -> usize {
        self.string.locality()
    }

    pub fn n_qubits(&self) -> usize {
        self.string.len()
    }
}

impl<T: fmt::Display> fmt::Display for PauliTerm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.coefficient, self.string)
    }
}

/// Sum of Pauli terms on a fixed number of qubits.
///
/// Construction only checks string lengths. Call [`Hamiltonian::normalized`]
/// to merge duplicates, drop zeros and sort; every operation in the embedding
/// engine works on normalized values.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian<T> {
    n_qubits: usize,
    terms: Vec<PauliTerm<T>>,
}

impl<T: Coefficient> Hamiltonian<T> {
    pub fn new(n_qubits: usize, terms: Vec<PauliTerm<T>>) -> Result<Self, PauliError> {
        if n_qubits == 0 {
            return Err(PauliError::Empty);
        }
        for t in &terms {
            if t.string.len() != n_qubits {
                return Err(PauliError::LengthMismatch {
                    left: n_qubits,
                    right: t.string.len(),
                });
            }
        }
        Ok(Hamiltonian { n_qubits, terms })
    }

    pub fn empty(n_qubits: usize) -> Self {
        assert!(n_qubits >= 1);
        Hamiltonian {
            n_qubits,
            terms: Vec::new(),
        }
    }

    /// Build from `(coefficient, string)` pairs, normalizing the result.
    pub fn from_pairs<S: AsRef<str>>(
        n_qubits: usize,
        pairs: impl IntoIterator<Item = (T, S)>,
    ) -> Result<Self, PauliError> {
        let terms = pairs
            .into_iter()
            .map(|(c, s)| Ok(PauliTerm::new(c, s.as_ref().parse()?)))
            .collect::<Result<Vec<_>, PauliError>>()?;
        Ok(Self::new(n_qubits, terms)?.normalized())
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn terms(&self) -> &[PauliTerm<T>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<PauliTerm<T>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, term: PauliTerm<T>) -> Result<(), PauliError> {
        if term.string.len() != self.n_qubits {
            return Err(PauliError::LengthMismatch {
                left: self.n_qubits,
                right: term.string.len(),
            });
        }
        self.terms.push(term);
        Ok(())
    }

    /// Coefficient of `string`, summed over duplicates; `None` if absent.
    pub fn coefficient_of(&self, string: &PauliString) -> Option<T> {
        let mut found: Option<T> = None;
        for t in self.terms.iter().filter(|t| &t.string == string) {
            found = Some(match found {
                None => t.coefficient.clone(),
                Some(c) => c + t.coefficient.clone(),
            });
        }
        found
    }

    /// Merge duplicate strings, drop zero coefficients, sort by string.
    pub fn normalized(&self) -> Self {
        let mut merged: BTreeMap<&PauliString, T> = BTreeMap::new();
        for t in &self.terms {
            merged
                .entry(&t.string)
                .and_modify(|c| *c = c.clone() + t.coefficient.clone())
                .or_insert_with(|| t.coefficient.clone());
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| PauliTerm::new(c, s.clone()))
            .collect();
        Hamiltonian {
            n_qubits: self.n_qubits,
            terms,
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.terms.iter().all(|t| !t.coefficient.is_zero())
            && self.terms.windows(2).all(|w| w[0].string < w[1].string)
    }

    /// Largest term locality, ignoring zero coefficients; 0 when empty.
    pub fn locality(&self) -> usize {
        self.terms
            .iter()
            .filter(|t| !t.coefficient.is_zero())
            .map(PauliTerm::locality)
            .max()
            .unwrap_or(0)
    }

    pub fn scaled(&self, factor: T) -> Self {
        Hamiltonian {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|t| PauliTerm::new(t.coefficient.clone() * factor.clone(), t.string.clone()))
                .collect(),
        }
    }

    /// Normalized sum of two Hamiltonians on the same register.
    pub fn add(&self, other: &Self) -> Result<Self, PauliError> {
        if self.n_qubits != other.n_qubits {
            return Err(PauliError::LengthMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Hamiltonian {
            n_qubits: self.n_qubits,
            terms,
        }
        .normalized())
    }

    /// Normalized copy without the terms on `string`.
    pub fn without(&self, string: &PauliString) -> Self {
        Hamiltonian {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .filter(|t| &t.string != string)
                .cloned()
                .collect(),
        }
        .normalized()
    }

    /// True when every string is built from `I` and `Z` only.
    pub fn is_diagonal(&self) -> bool {
        use super::PauliAxis;
        self.terms
            .iter()
            .all(|t| t.string.only_axes(&[PauliAxis::Z]))
    }
}

pub fn normalize<T: Coefficient>(h: &Hamiltonian<T>) -> Hamiltonian<T> {
    h.normalized()
}

pub fn hamiltonian_locality<T: Coefficient>(h: &Hamiltonian<T>) -> usize {
    h.locality()
}
