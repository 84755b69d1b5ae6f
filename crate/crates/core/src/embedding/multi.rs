use super::{choose_factorization, embed_case2, EmbedError, Embedding};
use crate::pauli::{Hamiltonian, PauliString, PauliTerm};
use crate::Coefficient;

/// One elimination round of [`embed_all`].
#[derive(Debug, Clone, PartialEq)]
pub struct Round<T> {
    /// Embedding computed in this round. Its `physical` register has the new
    /// ancilla at index 0 and the ancillas of earlier rounds after it.
    pub embedding: Embedding<T>,
    /// Terms of the round's input that went from 2-local to 3-local.
    pub raised_to_three: Vec<PauliString>,
}

/// Result of eliminating several terms one after another.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiEmbedding<T> {
    pub physical: Hamiltonian<T>,
    pub rounds: Vec<Round<T>>,
    pub n_system: usize,
}

impl<T> MultiEmbedding<T> {
    pub fn ancilla_count(&self) -> usize {
        self.rounds.len()
    }
}

impl<T: Coefficient> MultiEmbedding<T> {
    pub fn locality(&self) -> usize {
        self.physical.locality()
    }
}

/// Eliminate `chis` in the given order, one ancilla per round.
///
/// Each listed term is looked up in the current Hamiltonian by its string
/// padded with identities on the ancillas added so far; failing that, by a
/// unique term whose system part equals the string and whose ancilla part is
/// made of `I`/`Z` (a term that an earlier round decorated with ancilla `Z`s).
/// Images of eliminated terms carry an ancilla `X` and never match.
pub fn embed_all<T: Coefficient>(
    h: &Hamiltonian<T>,
    chis: &[PauliTerm<T>],
    budget: usize,
) -> Result<MultiEmbedding<T>, EmbedError> {
    let n_system = h.n_qubits();
    let mut current = h.normalized();
    let mut rounds = Vec::with_capacity(chis.len());
    for (round, chi) in chis.iter().enumerate() {
        if chi.string.len() != n_system {
            return Err(crate::pauli::PauliError::LengthMismatch {
                left: n_system,
                right: chi.string.len(),
            }
            .into());
        }
        let located = locate_in_round(&current, chi, n_system, round)?;
        let mask = choose_factorization(&current, &located, budget)?;
        let embedding = embed_case2(&current, &located, &mask)?;
        let raised_to_three = embedding
            .split
            .anti
            .terms()
            .iter()
            .filter(|t| t.locality() == 2)
            .map(|t| t.string.clone())
            .collect();
        current = embedding.physical.clone();
        rounds.push(Round {
            embedding,
            raised_to_three,
        });
    }
    Ok(MultiEmbedding {
        physical: current,
        rounds,
        n_system,
    })
}

fn locate_in_round<T: Coefficient>(
    current: &Hamiltonian<T>,
    chi: &PauliTerm<T>,
    n_system: usize,
    round: usize,
) -> Result<PauliTerm<T>, EmbedError> {
    let offset = current.n_qubits() - n_system;
    let mut padded = chi.string.clone();
    for _ in 0..offset {
        padded = padded.prepend(crate::pauli::PauliAxis::I);
    }
    let mut hits: Vec<&PauliTerm<T>> = current.terms().iter().filter(|t| t.string == padded).collect();
    if hits.is_empty() {
        hits = current
            .terms()
            .iter()
            .filter(|t| {
                let (anc, sys) = t.string.axes().split_at(offset);
                sys == chi.string.axes() && anc.iter().all(|a| !a.flips())
            })
            .collect();
    }
    match hits.as_slice() {
        [] => Err(EmbedError::Vanished {
            round,
            string: chi.string.to_string(),
        }),
        [t] => {
            if t.coefficient != chi.coefficient {
                return Err(EmbedError::CoefficientMismatch {
                    string: chi.string.to_string(),
                    expected: format!("{:?}", t.coefficient),
                    given: format!("{:?}", chi.coefficient),
                });
            }
            Ok((*t).clone())
        }
        _ => Err(EmbedError::Ambiguous {
            round,
            string: chi.string.to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::DEFAULT_BUDGET;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn single_round_matches_one_call() {
        let h = Hamiltonian::from_pairs(3, [(1.0, "ZZI"), (0.5, "ZII"), (0.2, "XXX")]).unwrap();
        let chi = PauliTerm::new(0.2, p("XXX"));
        let multi = embed_all(&h, std::slice::from_ref(&chi), DEFAULT_BUDGET).unwrap();
        let mask = choose_factorization(&h, &chi, DEFAULT_BUDGET).unwrap();
        let single = embed_case2(&h, &chi, &mask).unwrap();
        assert_eq!(multi.physical, single.physical);
        assert_eq!(multi.ancilla_count(), 1);
    }

    #[test]
    fn vanished_term_reports_round() {
        let h = Hamiltonian::from_pairs(2, [(1.0, "XX"), (0.5, "ZI")]).unwrap();
        let chi = PauliTerm::new(1.0, p("XX"));
        let err = embed_all(&h, &[chi.clone(), chi], DEFAULT_BUDGET).unwrap_err();
        assert_eq!(
            err,
            EmbedError::Vanished {
                round: 1,
                string: "XX".into()
            }
        );
    }
}
