use super::{build_gate_sequence, ControlledGateSequence, EmbedError, FactorMask};
use crate::pauli::{Hamiltonian, PauliAxis, PauliString, PauliTerm};
use crate::schedule::ScheduledHamiltonian;
use crate::Coefficient;

/// `H*` split by commutation with `χ′`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitRecord<T> {
    pub comm: Hamiltonian<T>,
    pub anti: Hamiltonian<T>,
}

pub fn split_commuting<T: Coefficient>(
    h_star: &Hamiltonian<T>,
    chi_prime: &PauliString,
) -> Result<SplitRecord<T>, EmbedError> {
    let n = h_star.n_qubits();
    if chi_prime.len() != n {
        return Err(crate::pauli::PauliError::LengthMismatch {
            left: n,
            right: chi_prime.len(),
        }
        .into());
    }
    let mut comm = Vec::new();
    let mut anti = Vec::new();
    for t in h_star.terms() {
        if t.string.commutes(chi_prime)? {
            comm.push(t.clone());
        } else {
            anti.push(t.clone());
        }
    }
    Ok(SplitRecord {
        comm: Hamiltonian::new(n, comm)?,
        anti: Hamiltonian::new(n, anti)?,
    })
}

/// A chosen decomposition `χ = χ′·χ″` and the term-wise map it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub chi: PauliString,
    pub mask: FactorMask,
    pub chi_prime: PauliString,
    pub chi_double_prime: PauliString,
}

impl Factorization {
    pub fn new(chi: &PauliString, mask: FactorMask) -> Result<Self, EmbedError> {
        if chi.is_identity() {
            return Err(EmbedError::IdentityChi);
        }
        let (chi_prime, chi_double_prime) = mask.factor(chi)?;
        Ok(Factorization {
            chi: chi.clone(),
            mask,
            chi_prime,
            chi_double_prime,
        })
    }

    pub fn case1(chi: &PauliString) -> Result<Self, EmbedError> {
        Self::new(chi, FactorMask::full_support(chi))
    }

    pub fn gates(&self) -> ControlledGateSequence {
        build_gate_sequence(&self.chi_prime, 0)
    }

    /// Image of one term under `U(·)U†` with the ancilla prepended:
    /// `χ` itself goes to `σˣ⊗χ″`, commuting terms to `𝟙⊗s`, anticommuting
    /// ones to `σᶻ⊗s`.
    pub fn map_string(&self, s: &PauliString) -> Result<(PauliString, bool), EmbedError> {
        if s == &self.chi {
            return Ok((self.chi_double_prime.prepend(PauliAxis::X), false));
        }
        if s.commutes(&self.chi_prime)? {
            Ok((s.prepend(PauliAxis::I), false))
        } else {
            Ok((s.prepend(PauliAxis::Z), true))
        }
    }

    /// Map every term of `h` (normalized first). Terms on `χ` are not part of
    /// the returned split.
    pub fn embed_hamiltonian<T: Coefficient>(
        &self,
        h: &Hamiltonian<T>,
    ) -> Result<(Hamiltonian<T>, SplitRecord<T>), EmbedError> {
        let h = h.normalized();
        let n = h.n_qubits();
        if n != self.chi.len() {
            return Err(crate::pauli::PauliError::LengthMismatch {
                left: n,
                right: self.chi.len(),
            }
            .into());
        }
        let mut physical = Vec::with_capacity(h.len());
        let mut comm = Vec::new();
        let mut anti = Vec::new();
        for t in h.terms() {
            let (image, is_anti) = self.map_string(&t.string)?;
            if t.string != self.chi {
                if is_anti {
                    anti.push(t.clone());
                } else {
                    comm.push(t.clone());
                }
            }
            physical.push(PauliTerm::new(t.coefficient.clone(), image));
        }
        let physical = Hamiltonian::new(n + 1, physical)?.normalized();
        Ok((
            physical,
            SplitRecord {
                comm: Hamiltonian::new(n, comm)?,
                anti: Hamiltonian::new(n, anti)?,
            },
        ))
    }
}

/// Output of a single-term embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding<T> {
    /// `H̃` on `N + 1` qubits, ancilla first.
    pub physical: Hamiltonian<T>,
    pub ancilla_index: usize,
    /// The eliminated term, as it appeared in the input.
    pub chi: PauliTerm<T>,
    pub factorization: Factorization,
    pub split: SplitRecord<T>,
    pub gates: ControlledGateSequence,
}

impl<T: Coefficient> Embedding<T> {
    pub fn n_system(&self) -> usize {
        self.chi.string.len()
    }

    pub fn mask(&self) -> &FactorMask {
        &self.factorization.mask
    }

    pub fn chi_coefficient(&self) -> &T {
        &self.chi.coefficient
    }

    pub fn chi_prime(&self) -> &PauliString {
        &self.factorization.chi_prime
    }

    pub fn chi_double_prime(&self) -> &PauliString {
        &self.factorization.chi_double_prime
    }

    /// `H* = comm + anti`.
    pub fn h_star(&self) -> Hamiltonian<T> {
        self.split
            .comm
            .add(&self.split.anti)
            .expect("split blocks share the register")
    }

    /// The original `H = H* + H^χ`.
    pub fn original(&self) -> Hamiltonian<T> {
        let mut h = self.h_star();
        h.push(self.chi.clone()).expect("same register");
        h.normalized()
    }

    /// Locality of the input Hamiltonian.
    pub fn locality_before(&self) -> usize {
        self.split
            .comm
            .locality()
            .max(self.split.anti.locality())
            .max(self.chi.locality())
    }

    pub fn locality_after(&self) -> usize {
        self.physical.locality()
    }
}

/// Find `chi` in `h` (normalized) and check its coefficient.
pub(crate) fn locate_chi<T: Coefficient>(
    h: &Hamiltonian<T>,
    chi: &PauliTerm<T>,
) -> Result<(), EmbedError> {
    if chi.string.is_identity() {
        return Err(EmbedError::IdentityChi);
    }
    if chi.string.len() != h.n_qubits() {
        return Err(crate::pauli::PauliError::LengthMismatch {
            left: h.n_qubits(),
            right: chi.string.len(),
        }
        .into());
    }
    match h.coefficient_of(&chi.string) {
        None => Err(EmbedError::ChiAbsent(chi.string.to_string())),
        Some(c) if c != chi.coefficient => Err(EmbedError::CoefficientMismatch {
            string: chi.string.to_string(),
            expected: format!("{c:?}"),
            given: format!("{:?}", chi.coefficient),
        }),
        Some(_) => Ok(()),
    }
}

/// The term of `h` on `string`, for callers that only know the string.
pub fn find_term<T: Coefficient>(
    h: &Hamiltonian<T>,
    string: &PauliString,
) -> Result<PauliTerm<T>, EmbedError> {
    let h = h.normalized();
    h.terms()
        .iter()
        .find(|t| &t.string == string)
        .cloned()
        .ok_or_else(|| EmbedError::ChiAbsent(string.to_string()))
}

/// Single-field elimination: `χ′ = χ`,
/// `H̃ = 𝟙⊗H*_comm + σᶻ⊗H*_anti + h_χ σˣ⊗𝟙`.
pub fn embed_case1<T: Coefficient>(
    h: &Hamiltonian<T>,
    chi: &PauliTerm<T>,
) -> Result<Embedding<T>, EmbedError> {
    embed_case2(h, chi, &FactorMask::full_support(&chi.string))
}

/// Factorized elimination: `H̃ = 𝟙⊗H*_comm + σᶻ⊗H*_anti + h_χ σˣ⊗χ″`, with
/// the split taken against `χ′`.
pub fn embed_case2<T: Coefficient>(
    h: &Hamiltonian<T>,
    chi: &PauliTerm<T>,
    mask: &FactorMask,
) -> Result<Embedding<T>, EmbedError> {
    let h = h.normalized();
    locate_chi(&h, chi)?;
    let factorization = Factorization::new(&chi.string, mask.clone())?;
    let (physical, split) = factorization.embed_hamiltonian(&h)?;
    let gates = factorization.gates();
    Ok(Embedding {
        physical,
        ancilla_index: 0,
        chi: chi.clone(),
        factorization,
        split,
        gates,
    })
}

/// `H^irr = H* − H^χ`: the input with `χ`'s sign reversed.
pub fn irrelevant_hamiltonian<T: Coefficient>(
    h: &Hamiltonian<T>,
    chi: &PauliTerm<T>,
) -> Result<Hamiltonian<T>, EmbedError> {
    let h = h.normalized();
    if chi.coefficient.is_zero() {
        return Ok(h);
    }
    locate_chi(&h, chi)?;
    Ok(negate_string(&h, &chi.string))
}

fn negate_string<T: Coefficient>(h: &Hamiltonian<T>, s: &PauliString) -> Hamiltonian<T> {
    let terms = h
        .terms()
        .iter()
        .map(|t| {
            if &t.string == s {
                PauliTerm::new(-t.coefficient.clone(), t.string.clone())
            } else {
                t.clone()
            }
        })
        .collect();
    Hamiltonian::new(h.n_qubits(), terms)
        .expect("same register")
        .normalized()
}

/// Embedding of a time-dependent Hamiltonian. Every occurrence of `χ`'s
/// string, in any piece, is treated as part of `H^χ(t)`.
#[derive(Debug, Clone)]
pub struct ScheduledEmbedding<T> {
    pub physical: ScheduledHamiltonian<T>,
    pub factorization: Factorization,
    pub gates: ControlledGateSequence,
    /// One split per piece, in piece order.
    pub splits: Vec<SplitRecord<T>>,
}

pub fn embed_scheduled<T: Coefficient>(
    h: &ScheduledHamiltonian<T>,
    chi: &PauliString,
    mask: &FactorMask,
) -> Result<ScheduledEmbedding<T>, EmbedError> {
    if chi.len() != h.n_qubits() {
        return Err(crate::pauli::PauliError::LengthMismatch {
            left: h.n_qubits(),
            right: chi.len(),
        }
        .into());
    }
    if !h.contains(chi) {
        return Err(EmbedError::ChiAbsent(chi.to_string()));
    }
    let factorization = Factorization::new(chi, mask.clone())?;
    let mut splits = Vec::new();
    let physical = h.map_pieces(|piece| {
        let (image, split) = factorization.embed_hamiltonian(piece)?;
        splits.push(split);
        Ok::<_, EmbedError>(image)
    })?;
    let gates = factorization.gates();
    Ok(ScheduledEmbedding {
        physical,
        factorization,
        gates,
        splits,
    })
}

/// `H^irr(t)`: every piece with `χ`'s sign reversed.
pub fn irrelevant_scheduled<T: Coefficient>(
    h: &ScheduledHamiltonian<T>,
    chi: &PauliString,
) -> ScheduledHamiltonian<T> {
    h.map_pieces(|piece| Ok::<_, std::convert::Infallible>(negate_string(&piece.normalized(), chi)))
        .expect("infallible")
}
