//! Search for the factorization `χ = χ′·χ″` that keeps the physical
//! Hamiltonian least nonlocal.

use super::{EmbedError, FactorMask};
use crate::pauli::{Hamiltonian, PauliAxis, PauliString, PauliTerm};
use crate::schedule::ScheduledHamiltonian;
use crate::Coefficient;

/// Default qubit budget for exhaustive search.
pub const DEFAULT_BUDGET: usize = 16;

/// Lexicographic score; smaller is better.
///
/// `(physical locality, #anticommuting terms, locality of χ″, #off-support bits)`
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FactorScore {
    pub locality: usize,
    pub anti_terms: usize,
    pub chi_double_prime_locality: usize,
    pub extension_bits: usize,
}

/// Score a mask without building the physical Hamiltonian.
pub fn score_mask(
    others: &[PauliString],
    chi: &PauliString,
    mask: &FactorMask,
) -> Result<FactorScore, EmbedError> {
    let (prime, second) = mask.factor(chi)?;
    let mut locality = 1 + second.locality();
    let mut anti_terms = 0;
    for s in others {
        if s.commutes(&prime)? {
            locality = locality.max(s.locality());
        } else {
            anti_terms += 1;
            locality = locality.max(s.locality() + 1);
        }
    }
    let extension_bits = mask
        .bits()
        .iter()
        .zip(chi.axes())
        .filter(|(&b, a)| b && a.is_identity())
        .count();
    Ok(FactorScore {
        locality,
        anti_terms,
        chi_double_prime_locality: second.locality(),
        extension_bits,
    })
}

/// Pick the mask minimizing [`FactorScore`] for eliminating `chi` from `h`.
///
/// With `n ≤ budget` qubits every support subset is combined with every
/// subset of the remaining qubits under each extension axis. With only the
/// support within budget, support subsets are enumerated. Otherwise a greedy
/// pass grows `χ′` one support qubit at a time, and the result is compared
/// against the full-support mask. Ties keep the first candidate in
/// enumeration order (lowest bit pattern first).
pub fn choose_factorization<T: Coefficient>(
    h: &Hamiltonian<T>,
    chi: &PauliTerm<T>,
    budget: usize,
) -> Result<FactorMask, EmbedError> {
    let h = h.normalized();
    super::embed::locate_chi(&h, chi)?;
    let others: Vec<PauliString> = h
        .terms()
        .iter()
        .filter(|t| t.string != chi.string)
        .map(|t| t.string.clone())
        .collect();
    choose_for_strings(&others, &chi.string, budget)
}

/// As [`choose_factorization`], scoring the union of strings over all pieces.
pub fn choose_factorization_scheduled<T: Coefficient>(
    h: &ScheduledHamiltonian<T>,
    chi: &PauliString,
    budget: usize,
) -> Result<FactorMask, EmbedError> {
    if chi.is_identity() {
        return Err(EmbedError::IdentityChi);
    }
    if !h.contains(chi) {
        return Err(EmbedError::ChiAbsent(chi.to_string()));
    }
    let mut others: Vec<PauliString> = h
        .pieces()
        .iter()
        .flat_map(|(_, piece)| piece.normalized().into_terms())
        .map(|t| t.string)
        .filter(|s| s != chi)
        .collect();
    others.sort();
    others.dedup();
    choose_for_strings(&others, chi, budget)
}

pub(crate) fn choose_for_strings(
    others: &[PauliString],
    chi: &PauliString,
    budget: usize,
) -> Result<FactorMask, EmbedError> {
    if chi.is_identity() {
        return Err(EmbedError::IdentityChi);
    }
    let n = chi.len();
    let support = chi.support();
    let off: Vec<usize> = (0..n).filter(|q| !support.contains(q)).collect();

    let mut best: Option<(FactorScore, FactorMask)> = None;
    let mut consider = |mask: FactorMask| -> Result<(), EmbedError> {
        let score = score_mask(others, chi, &mask)?;
        if best.as_ref().is_none_or(|(b, _)| score < *b) {
            best = Some((score, mask));
        }
        Ok(())
    };

    if n <= budget {
        for sub in 0u64..(1u64 << support.len()) {
            let base = bits_from(n, &support, sub);
            consider(FactorMask::new(chi, base, None)?)?;
        }
        for ext in [PauliAxis::X, PauliAxis::Y, PauliAxis::Z] {
            for extra in 1u64..(1u64 << off.len()) {
                let ext_bits = bits_from(n, &off, extra);
                for sub in 0u64..(1u64 << support.len()) {
                    let mut bits = bits_from(n, &support, sub);
                    for (b, e) in bits.iter_mut().zip(&ext_bits) {
                        *b |= *e;
                    }
                    consider(FactorMask::new(chi, bits, Some(ext))?)?;
                }
            }
        }
    } else if support.len() <= budget {
        for sub in 0u64..(1u64 << support.len()) {
            consider(FactorMask::new(chi, bits_from(n, &support, sub), None)?)?;
        }
    } else {
        let greedy = greedy_mask(others, chi, &support)?;
        consider(greedy)?;
        consider(FactorMask::full_support(chi))?;
    }
    Ok(best.expect("at least one candidate").1)
}

fn bits_from(n: usize, qubits: &[usize], pattern: u64) -> Vec<bool> {
    let mut bits = vec![false; n];
    for (i, &q) in qubits.iter().enumerate() {
        bits[q] = pattern >> i & 1 == 1;
    }
    bits
}

/// Grow `χ′` from the identity, each step adding the support qubit whose
/// inclusion gives the best score (lowest index on ties), while the score
/// strictly improves.
fn greedy_mask(
    others: &[PauliString],
    chi: &PauliString,
    support: &[usize],
) -> Result<FactorMask, EmbedError> {
    let n = chi.len();
    let mut bits = vec![false; n];
    let mut current = score_mask(others, chi, &FactorMask::new(chi, bits.clone(), None)?)?;
    loop {
        let mut step: Option<(FactorScore, usize)> = None;
        for &q in support.iter().filter(|&&q| !bits[q]) {
            let mut trial = bits.clone();
            trial[q] = true;
            let s = score_mask(others, chi, &FactorMask::new(chi, trial, None)?)?;
            if step.is_none_or(|(b, _)| s < b) {
                step = Some((s, q));
            }
        }
        match step {
            Some((s, q)) if s < current => {
                bits[q] = true;
                current = s;
            }
            _ => break,
        }
    }
    FactorMask::new(chi, bits, None)
}
