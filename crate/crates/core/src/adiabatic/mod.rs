//! Adiabatic optimization on top of the embedding: spin-glass problems,
//! transverse-field drivers, linear interpolation, success probabilities
//! and the closed-form embedded Hamiltonians for flip-all style drivers.

mod instance;

pub use instance::{format_instance, parse_instance, InstanceError};

use std::collections::BTreeMap;

use crate::dense::{
    format_bits, ground_state, index_to_bits, min_gap, to_matrix, DenseError, EvolutionSpec,
    GapReport, StateVector,
};
use crate::embedding::{build_gate_sequence, EmbedError};
use crate::pauli::{Hamiltonian, PauliAxis, PauliError, PauliString, PauliTerm};
use crate::schedule::{ScheduleFn, ScheduledHamiltonian};
use crate::{Coefficient, Real};

/// Bitstrings within this energy of the minimum count as ground states.
pub const GROUND_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_TAU: f64 = 10.0;
pub const DEFAULT_STEPS: usize = 1000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnnealError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Dense(#[from] DenseError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error("problem Hamiltonian is not diagonal: term {0}")]
    NotDiagonal(String),
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("schedule violates its boundary conditions: {0}")]
    Schedule(String),
}

/// Ising problem `Σ h_i Z_i + Σ_{i>j} J_ij Z_i Z_j` on qubits `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinGlassInstance<T> {
    n: usize,
    fields: Vec<T>,
    couplings: BTreeMap<(usize, usize), T>,
}

impl<T: Coefficient> SpinGlassInstance<T> {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        SpinGlassInstance {
            n,
            fields: vec![T::zero(); n],
            couplings: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fields(&self) -> &[T] {
        &self.fields
    }

    /// Couplings keyed by `(i, j)` with `i > j`.
    pub fn couplings(&self) -> &BTreeMap<(usize, usize), T> {
        &self.couplings
    }

    pub fn field(&self, i: usize) -> T {
        self.fields[i].clone()
    }

    pub fn coupling(&self, i: usize, j: usize) -> T {
        let key = if i > j { (i, j) } else { (j, i) };
        self.couplings.get(&key).cloned().unwrap_or_else(T::zero)
    }

    pub fn set_field(&mut self, i: usize, value: T) -> Result<(), AnnealError> {
        if i >= self.n {
            return Err(AnnealError::Instance(format!("field index {i} out of range")));
        }
        self.fields[i] = value;
        Ok(())
    }

    /// Set `J_ij`; requires `i > j`.
    pub fn set_coupling(&mut self, i: usize, j: usize, value: T) -> Result<(), AnnealError> {
        if i >= self.n || j >= self.n {
            return Err(AnnealError::Instance(format!("coupling ({i}, {j}) out of range")));
        }
        if i <= j {
            return Err(AnnealError::Instance(format!(
                "coupling ({i}, {j}) must have i > j"
            )));
        }
        if value.is_zero() {
            self.couplings.remove(&(i, j));
        } else {
            self.couplings.insert((i, j), value);
        }
        Ok(())
    }
}

pub fn spin_glass<T: Coefficient>(instance: &SpinGlassInstance<T>) -> Hamiltonian<T> {
    let n = instance.n;
    let mut terms = Vec::new();
    for (i, h) in instance.fields.iter().enumerate() {
        terms.push(PauliTerm::new(
            h.clone(),
            PauliString::from_support(n, &[i], PauliAxis::Z),
        ));
    }
    for (&(i, j), v) in &instance.couplings {
        terms.push(PauliTerm::new(
            v.clone(),
            PauliString::from_support(n, &[i, j], PauliAxis::Z),
        ));
    }
    Hamiltonian::new(n, terms).expect("strings sized to n").normalized()
}

/// `Σ_i B_i X_i`.
pub fn standard_driver<T: Coefficient>(b: &[T]) -> Result<Hamiltonian<T>, AnnealError> {
    if b.is_empty() {
        return Err(AnnealError::Instance("driver needs at least one field".into()));
    }
    let n = b.len();
    let terms = b
        .iter()
        .enumerate()
        .map(|(i, v)| PauliTerm::new(v.clone(), PauliString::from_support(n, &[i], PauliAxis::X)))
        .collect();
    Ok(Hamiltonian::new(n, terms)?.normalized())
}

/// `B₀ X⊗X⊗…⊗X` on `n` qubits.
pub fn flip_all_term<T: Coefficient>(b0: T, n: usize) -> PauliTerm<T> {
    PauliTerm::new(b0, PauliString::uniform(n, PauliAxis::X))
}

/// `B₀ X` on every qubit except `skip`.
pub fn flip_all_but_term<T: Coefficient>(b0: T, n: usize, skip: usize) -> PauliTerm<T> {
    PauliTerm::new(
        b0,
        PauliString::uniform(n, PauliAxis::X).with_axis(skip, PauliAxis::I),
    )
}

/// Envelopes `f` (driver) and `g` (problem) on `[0, τ]`.
#[derive(Debug, Clone)]
pub struct Schedule<T> {
    pub f: ScheduleFn<T>,
    pub g: ScheduleFn<T>,
    pub duration: T,
}

impl<T: Real> Schedule<T> {
    /// `f = 1 − t/τ`, `g = t/τ`.
    pub fn linear(duration: T) -> Self {
        Schedule {
            f: ScheduleFn::ramp_down(duration),
            g: ScheduleFn::ramp_up(duration),
            duration,
        }
    }

    /// Check `f(0) = g(τ) = 1` and `f(τ) = g(0) = 0` within 1e−12.
    pub fn validate(&self) -> Result<(), AnnealError> {
        let tol = T::lit(1e-12);
        let one = T::one();
        let zero = T::zero();
        let checks = [
            ("f(0)", self.f.value(zero), one),
            ("g(tau)", self.g.value(self.duration), one),
            ("f(tau)", self.f.value(self.duration), zero),
            ("g(0)", self.g.value(zero), zero),
        ];
        for (name, got, want) in checks {
            if !got.is_finite() || (got - want).abs() > tol {
                return Err(AnnealError::Schedule(format!(
                    "{name} = {got}, expected {want}"
                )));
            }
        }
        Ok(())
    }
}

/// `H(t) = f(t) H⁰ + g(t) Hᴾ`.
pub fn interpolate<T: Real>(
    h0: &Hamiltonian<T>,
    hp: &Hamiltonian<T>,
    schedule: &Schedule<T>,
) -> Result<ScheduledHamiltonian<T>, AnnealError> {
    if h0.n_qubits() != hp.n_qubits() {
        return Err(PauliError::LengthMismatch {
            left: h0.n_qubits(),
            right: hp.n_qubits(),
        }
        .into());
    }
    Ok(ScheduledHamiltonian::new(
        h0.n_qubits(),
        vec![
            (schedule.f.clone(), h0.clone()),
            (schedule.g.clone(), hp.clone()),
        ],
    )?)
}

/// Closed form of the flip-all embedding, built directly.
///
/// Returns `(driver, problem)` on `N + 1` qubits with the ancilla as qubit 0:
/// driver `B₀X₀ + Σ B_i X_{i+1}`, problem `Σ J_ij Z_{i+1}Z_{j+1} + Σ h_j Z₀Z_{j+1}`.
pub fn flip_all_embedded<T: Coefficient>(
    instance: &SpinGlassInstance<T>,
    b: &[T],
    b0: T,
) -> Result<(Hamiltonian<T>, Hamiltonian<T>), AnnealError> {
    let n = instance.n();
    if b.len() != n {
        return Err(AnnealError::Instance(format!(
            "{} driver fields for {n} qubits",
            b.len()
        )));
    }
    let m = n + 1;
    let mut driver = vec![PauliTerm::new(b0, PauliString::from_support(m, &[0], PauliAxis::X))];
    for (i, v) in b.iter().enumerate() {
        driver.push(PauliTerm::new(
            v.clone(),
            PauliString::from_support(m, &[i + 1], PauliAxis::X),
        ));
    }
    let mut problem = Vec::new();
    for (&(i, j), v) in instance.couplings() {
        problem.push(PauliTerm::new(
            v.clone(),
            PauliString::from_support(m, &[i + 1, j + 1], PauliAxis::Z),
        ));
    }
    for (j, h) in instance.fields().iter().enumerate() {
        problem.push(PauliTerm::new(
            h.clone(),
            PauliString::from_support(m, &[0, j + 1], PauliAxis::Z),
        ));
    }
    Ok((
        Hamiltonian::new(m, driver)?.normalized(),
        Hamiltonian::new(m, problem)?.normalized(),
    ))
}

/// Outcome statistics of an anneal.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnealReport<T> {
    pub success_probability: T,
    pub ground_energy: T,
    /// Ground bitstrings, qubit 0 first, ascending.
    pub ground_states: Vec<String>,
    pub min_gap: Option<GapReport<T>>,
    pub tau: Option<T>,
    pub steps: Option<usize>,
}

/// Diagonal energies `E(n)` of a z-only Hamiltonian.
pub fn diagonal_energies<T: Real>(hp: &Hamiltonian<T>) -> Result<Vec<T>, AnnealError> {
    if let Some(t) = hp.terms().iter().find(|t| !t.string.only_axes(&[PauliAxis::Z])) {
        return Err(AnnealError::NotDiagonal(t.string.to_string()));
    }
    let n = hp.n_qubits();
    let dim = 1usize << n;
    let mut e = vec![T::zero(); dim];
    for t in hp.terms() {
        let (_, z) = t.string.xz_masks();
        for (j, ej) in e.iter_mut().enumerate() {
            if (j as u64 & z).count_ones().is_multiple_of(2) {
                *ej += t.coefficient;
            } else {
                *ej -= t.coefficient;
            }
        }
    }
    Ok(e)
}

/// Indices of the ground manifold (within [`GROUND_TOLERANCE`]) and its energy.
pub fn ground_indices<T: Real>(hp: &Hamiltonian<T>) -> Result<(T, Vec<usize>), AnnealError> {
    let e = diagonal_energies(hp)?;
    let min = e
        .iter()
        .copied()
        .fold(e[0], |a, b| if b < a { b } else { a });
    let tol = T::lit(GROUND_TOLERANCE);
    let idx = e
        .iter()
        .enumerate()
        .filter(|(_, &v)| v - min <= tol)
        .map(|(i, _)| i)
        .collect();
    Ok((min, idx))
}

/// Total population on the ground bitstrings of the diagonal `hp`.
pub fn success_probability<T: Real>(
    final_state: &StateVector<T>,
    hp: &Hamiltonian<T>,
) -> Result<AnnealReport<T>, AnnealError> {
    if final_state.n_qubits() != hp.n_qubits() {
        return Err(DenseError::Dimension {
            expected: 1usize << hp.n_qubits(),
            found: final_state.dim(),
        }
        .into());
    }
    let (ground_energy, idx) = ground_indices(hp)?;
    let probs = final_state.probabilities();
    let p = idx.iter().fold(T::zero(), |acc, &i| acc + probs[i]);
    let n = hp.n_qubits();
    Ok(AnnealReport {
        success_probability: p,
        ground_energy,
        ground_states: idx
            .iter()
            .map(|&i| format_bits(&index_to_bits(i, n)))
            .collect(),
        min_gap: None,
        tau: None,
        steps: None,
    })
}

/// Run `f H⁰ + g Hᴾ` from `initial` and score against `Hᴾ`.
pub fn anneal_from<T: Real>(
    h0: &Hamiltonian<T>,
    hp: &Hamiltonian<T>,
    schedule: &Schedule<T>,
    steps: usize,
    initial: &StateVector<T>,
    gap_samples: Option<usize>,
) -> Result<(AnnealReport<T>, StateVector<T>), AnnealError> {
    let spec = EvolutionSpec::new(interpolate(h0, hp, schedule)?, schedule.duration, steps);
    let final_state = crate::dense::evolve(&spec, initial)?;
    let mut report = success_probability(&final_state, hp)?;
    report.tau = Some(schedule.duration);
    report.steps = Some(steps);
    if let Some(samples) = gap_samples {
        report.min_gap = Some(min_gap(&spec, samples)?);
    }
    Ok((report, final_state))
}

/// Anneal starting in the exact ground state of `h0`.
pub fn anneal<T: Real>(
    h0: &Hamiltonian<T>,
    hp: &Hamiltonian<T>,
    schedule: &Schedule<T>,
    steps: usize,
    gap_samples: Option<usize>,
) -> Result<(AnnealReport<T>, StateVector<T>), AnnealError> {
    let (_, psi0, _) = ground_state(&to_matrix(h0)?);
    anneal_from(h0, hp, schedule, steps, &psi0, gap_samples)
}

/// Side-by-side result of the flip-all anneal and its embedded counterpart.
#[derive(Debug, Clone)]
pub struct PairedAnneal<T: Real> {
    pub original: AnnealReport<T>,
    pub embedded: AnnealReport<T>,
    pub original_final: StateVector<T>,
    pub embedded_final: StateVector<T>,
}

/// Anneal `f(H⁰_std + B₀X…X) + g Hᴾ` on `N` qubits and the closed-form
/// `N + 1` qubit equivalent from `U(|+⟩⊗ψ₀)`, where `ψ₀` is the ground state
/// of the original driver.
pub fn paired_flip_all<T: Real>(
    instance: &SpinGlassInstance<T>,
    b: &[T],
    b0: T,
    schedule: &Schedule<T>,
    steps: usize,
    gap_samples: Option<usize>,
) -> Result<PairedAnneal<T>, AnnealError> {
    let n = instance.n();
    let mut h0 = standard_driver(b)?;
    h0.push(flip_all_term(b0, n))?;
    let h0 = h0.normalized();
    let hp = spin_glass(instance);
    let (_, psi0, _) = ground_state(&to_matrix(&h0)?);
    let (original, original_final) = anneal_from(&h0, &hp, schedule, steps, &psi0, gap_samples)?;

    let (d, p) = flip_all_embedded(instance, b, b0)?;
    let gates = build_gate_sequence(&PauliString::uniform(n, PauliAxis::X), 0);
    let plus = StateVector::<T>::uniform(1);
    let encoded = plus.tensor(&psi0).apply_gates(&gates)?;
    let (embedded, embedded_final) = anneal_from(&d, &p, schedule, steps, &encoded, gap_samples)?;
    Ok(PairedAnneal {
        original,
        embedded,
        original_final,
        embedded_final,
    })
}

/// Structured text form of a report.
pub fn format_report<T: Real>(r: &AnnealReport<T>) -> String {
    let mut out = String::new();
    out.push_str("schema 1\n");
    out.push_str(&format!("success_probability {:.16e}\n", r.success_probability));
    out.push_str(&format!("ground_energy {:.16e}\n", r.ground_energy));
    out.push_str(&format!("ground_states {}\n", r.ground_states.join(",")));
    match &r.min_gap {
        Some(g) => {
            out.push_str(&format!("min_gap {:.16e}\n", g.gap));
            out.push_str(&format!("min_gap_time {:.16e}\n", g.time));
            out.push_str(&format!("min_gap_degenerate {}\n", g.degenerate));
        }
        None => out.push_str("min_gap none\n"),
    }
    match r.tau {
        Some(t) => out.push_str(&format!("tau {t:.16e}\n")),
        None => out.push_str("tau none\n"),
    }
    match r.steps {
        Some(s) => out.push_str(&format!("steps {s}\n")),
        None => out.push_str("steps none\n"),
    }
    out
}
