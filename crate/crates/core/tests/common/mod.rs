#![allow(dead_code)]

use hamembed::adiabatic::SpinGlassInstance;
use hamembed::embedding::FactorMask;
use hamembed::pauli::{Hamiltonian, PauliAxis, PauliString, PauliTerm};
use rand::Rng;

pub const AXES: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

pub fn random_axis<R: Rng>(rng: &mut R) -> PauliAxis {
    AXES[rng.random_range(0..3)]
}

/// Uniform random string with exactly `k` non-identity axes.
pub fn random_string<R: Rng>(rng: &mut R, n: usize, k: usize) -> PauliString {
    let mut qubits: Vec<usize> = (0..n).collect();
    for i in 0..n {
        let j = rng.random_range(i..n);
        qubits.swap(i, j);
    }
    let mut s = PauliString::identity(n);
    for &q in &qubits[..k] {
        s = s.with_axis(q, random_axis(rng));
    }
    s
}

pub fn coefficient<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(-1.0..1.0)
}

/// Random Hamiltonian with at most `max_terms` terms and one designated
/// term of locality at least 3.
pub fn random_instance<R: Rng>(rng: &mut R, n: usize, max_terms: usize) -> (Hamiltonian<f64>, PauliTerm<f64>) {
    loop {
        let count = rng.random_range(2..=max_terms);
        let mut terms = Vec::with_capacity(count);
        let k = rng.random_range(3..=n);
        terms.push(PauliTerm::new(coefficient(rng), random_string(rng, n, k)));
        for _ in 1..count {
            let k = rng.random_range(0..=n);
            terms.push(PauliTerm::new(coefficient(rng), random_string(rng, n, k)));
        }
        let h = Hamiltonian::new(n, terms).unwrap().normalized();
        let candidates: Vec<&PauliTerm<f64>> = h.terms().iter().filter(|t| t.locality() >= 3).collect();
        if candidates.is_empty() {
            continue;
        }
        let chi = candidates[rng.random_range(0..candidates.len())].clone();
        return (h, chi);
    }
}

/// Full-support mask half of the time; otherwise a random support subset,
/// sometimes extended off the support.
pub fn random_mask<R: Rng>(rng: &mut R, chi: &PauliString) -> FactorMask {
    if rng.random_bool(0.5) {
        return FactorMask::full_support(chi);
    }
    let mut bits: Vec<bool> = chi
        .axes()
        .iter()
        .map(|a| !a.is_identity() && rng.random_bool(0.5))
        .collect();
    let mut ext = None;
    if rng.random_bool(0.3) {
        for (b, a) in bits.iter_mut().zip(chi.axes()) {
            if a.is_identity() && rng.random_bool(0.5) {
                *b = true;
            }
        }
        ext = Some(random_axis(rng));
    }
    FactorMask::new(chi, bits, ext).unwrap()
}

/// Fields and couplings uniform in `[-1, 1]`, every pair coupled.
pub fn random_spin_glass<R: Rng>(rng: &mut R, n: usize) -> SpinGlassInstance<f64> {
    let mut g = SpinGlassInstance::new(n);
    for i in 0..n {
        g.set_field(i, coefficient(rng)).unwrap();
        for j in 0..i {
            g.set_coupling(i, j, coefficient(rng)).unwrap();
        }
    }
    g
}
