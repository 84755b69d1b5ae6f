//! Simulated state preparation: encode with `U`, evolve under `H̃`, then
//! either decode with `U` and read the ancilla in the `|±⟩` basis, or
//! measure the ancilla in the computational basis and undo `O^χ′` on the
//! system with single-qubit gates.
//!
//! `U` is self-inverse, so encode and decode apply the same gate sequence.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dense::{format_bits, index_to_bits, DenseError, EvolutionSpec, StateVector};
use crate::embedding::ControlledGateSequence;
use crate::pauli::{PauliAxis, PauliString};
use crate::Real;

/// `‖O^χ ψ₀ − ψ₀‖` at or below this counts as invariant.
pub const INVARIANCE_TOLERANCE: f64 = 1e-10;
/// Leakage above this is a protocol error.
pub const DEFAULT_LEAKAGE_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProtocolError {
    #[error(transparent)]
    Dense(#[from] DenseError),
    #[error("leakage {leakage:e} exceeds threshold {threshold:e}; the preparation is not trusted")]
    Leakage { leakage: f64, threshold: f64 },
    #[error("initial state is not invariant under {string}: deviation {deviation:e}")]
    NotInvariant { string: String, deviation: f64 },
    #[error("{0} is not an X/I string; bits cannot be reinterpreted")]
    NotFlipOnly(String),
    #[error("bitstring has {found} bits, expected {expected}")]
    BitLength { expected: usize, found: usize },
    #[error("state has zero norm in the requested branch")]
    EmptyBranch,
}

/// `‖O^χ ψ₀ − ψ₀‖`.
pub fn invariance_defect<T: Real>(psi0: &StateVector<T>, chi: &PauliString) -> Result<T, ProtocolError> {
    let moved = psi0.apply_pauli(chi)?;
    Ok(moved.sub(psi0).norm())
}

pub fn check_invariance<T: Real>(psi0: &StateVector<T>, chi: &PauliString) -> Result<bool, ProtocolError> {
    Ok(invariance_defect(psi0, chi)? <= T::lit(INVARIANCE_TOLERANCE))
}

/// `U(|+⟩ ⊗ ψ₀)`.
pub fn encode<T: Real>(
    psi0: &StateVector<T>,
    gates: &ControlledGateSequence,
) -> Result<StateVector<T>, ProtocolError> {
    Ok(StateVector::uniform(1).tensor(psi0).apply_gates(gates)?)
}

#[derive(Debug, Clone)]
pub struct Decoded<T: Real> {
    /// System state conditioned on ancilla `|+⟩`, renormalized; zero when
    /// that branch is empty.
    pub state: StateVector<T>,
    /// Population of ancilla `|−⟩` after applying `U`.
    pub leakage: T,
}

/// Apply `U` and project the ancilla onto `|+⟩`, without a threshold check.
pub fn decode_unchecked<T: Real>(
    psi_tilde: &StateVector<T>,
    gates: &ControlledGateSequence,
) -> Result<Decoded<T>, ProtocolError> {
    if psi_tilde.n_qubits() < 1 {
        return Err(DenseError::Dimension { expected: 2, found: psi_tilde.dim() }.into());
    }
    let (a0, a1) = psi_tilde.apply_gates(gates)?.split_leading();
    let r = Complex::new(T::one() / T::lit(2.0).sqrt(), T::zero());
    let plus = a0.add(&a1).scaled(r);
    let minus = a0.sub(&a1).scaled(r);
    let leakage = minus.norm() * minus.norm();
    let state = if plus.norm() == T::zero() { plus } else { plus.normalized() };
    Ok(Decoded {
        state,
        leakage,
    })
}

/// [`decode_unchecked`], failing when the leakage exceeds `threshold`.
pub fn decode<T: Real>(
    psi_tilde: &StateVector<T>,
    gates: &ControlledGateSequence,
    threshold: T,
) -> Result<Decoded<T>, ProtocolError> {
    let d = decode_unchecked(psi_tilde, gates)?;
    if d.leakage > threshold {
        return Err(ProtocolError::Leakage {
            leakage: d.leakage.to_f64(),
            threshold: threshold.to_f64(),
        });
    }
    Ok(d)
}

/// One branch of the computational-basis ancilla measurement.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome<T: Real> {
    pub ancilla_bit: u8,
    pub probability: T,
    /// Normalized system state after the branch correction.
    pub state: StateVector<T>,
}

/// Both branches with their Born probabilities. Branch 1 applies `O^χ′`
/// (one single-qubit gate per support qubit). Empty branches are omitted.
pub fn shortcut_ensemble<T: Real>(
    psi_tilde: &StateVector<T>,
    chi_prime: &PauliString,
) -> Result<Vec<MeasurementOutcome<T>>, ProtocolError> {
    if psi_tilde.n_qubits() != chi_prime.len() + 1 {
        return Err(DenseError::Dimension {
            expected: 1usize << (chi_prime.len() + 1),
            found: psi_tilde.dim(),
        }
        .into());
    }
    let (a0, a1) = psi_tilde.split_leading();
    let mut out = Vec::new();
    for (bit, branch) in [(0u8, a0), (1u8, a1)] {
        let p = branch.norm() * branch.norm();
        if p == T::zero() {
            continue;
        }
        let mut state = branch.normalized();
        if bit == 1 {
            state = state.apply_pauli(chi_prime)?;
        }
        out.push(MeasurementOutcome {
            ancilla_bit: bit,
            probability: p,
            state,
        });
    }
    Ok(out)
}

/// Sample one branch of [`shortcut_ensemble`] with a seeded generator.
pub fn shortcut_measure<T: Real>(
    psi_tilde: &StateVector<T>,
    chi_prime: &PauliString,
    seed: u64,
) -> Result<MeasurementOutcome<T>, ProtocolError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_branch(shortcut_ensemble(psi_tilde, chi_prime)?, &mut rng)
}

fn sample_branch<T: Real, R: Rng>(
    mut branches: Vec<MeasurementOutcome<T>>,
    rng: &mut R,
) -> Result<MeasurementOutcome<T>, ProtocolError> {
    let total = branches
        .iter()
        .fold(0.0, |acc, b| acc + b.probability.to_f64());
    let u: f64 = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let last = branches.len().checked_sub(1).ok_or(ProtocolError::EmptyBranch)?;
    for k in 0..branches.len() {
        acc += branches[k].probability.to_f64();
        if u < acc || k == last {
            return Ok(branches.swap_remove(k));
        }
    }
    unreachable!("loop returns on the last branch")
}

/// Flip `bits` on the support of an X/I string when the ancilla reads 1.
pub fn reinterpret_bits(bits: &[bool], ancilla_bit: u8, chi: &PauliString) -> Result<Vec<bool>, ProtocolError> {
    if !chi.only_axes(&[PauliAxis::X]) {
        return Err(ProtocolError::NotFlipOnly(chi.to_string()));
    }
    if bits.len() != chi.len() {
        return Err(ProtocolError::BitLength {
            expected: chi.len(),
            found: bits.len(),
        });
    }
    if ancilla_bit == 0 {
        return Ok(bits.to_vec());
    }
    Ok(bits
        .iter()
        .zip(chi.axes())
        .map(|(&b, a)| b ^ a.flips())
        .collect())
}

/// Distribution over system bitstrings when every qubit of `psi_tilde` is
/// measured and the system bits are reinterpreted by the ancilla bit.
pub fn reinterpreted_distribution<T: Real>(
    psi_tilde: &StateVector<T>,
    chi_prime: &PauliString,
) -> Result<Vec<T>, ProtocolError> {
    let n = chi_prime.len();
    if psi_tilde.n_qubits() != n + 1 {
        return Err(DenseError::Dimension {
            expected: 1usize << (n + 1),
            found: psi_tilde.dim(),
        }
        .into());
    }
    let probs = psi_tilde.probabilities();
    let half = 1usize << n;
    let mut out = vec![T::zero(); half];
    for (idx, p) in probs.into_iter().enumerate() {
        let ancilla = (idx >= half) as u8;
        let bits = index_to_bits(idx % half, n);
        let mapped = reinterpret_bits(&bits, ancilla, chi_prime)?;
        out[crate::dense::bits_to_index(&mapped)] += p;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Full,
    Shortcut,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::Shortcut => "shortcut",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "full" => Ok(Mode::Full),
            "shortcut" => Ok(Mode::Shortcut),
            other => Err(format!("unknown mode `{other}` (expected full or shortcut)")),
        }
    }
}

/// One execution of the preparation pipeline.
#[derive(Debug, Clone)]
pub struct PreparationRun<T: Real> {
    /// `N`-qubit initial state.
    pub initial: StateVector<T>,
    /// Gate sequence realizing `U`; its target string is `χ′`.
    pub gates: ControlledGateSequence,
    /// Evolution under `H̃` on `N + 1` qubits.
    pub evolution: EvolutionSpec<T>,
    pub mode: Mode,
    pub reference: Option<StateVector<T>>,
    pub seed: u64,
    pub leakage_threshold: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolReport<T> {
    pub mode: Mode,
    pub chi_prime: String,
    pub leakage: Option<T>,
    pub invariance_defect: Option<T>,
    /// `(bit, probability)` of the sampled ancilla outcome in shortcut mode.
    pub outcome: Option<(u8, T)>,
    /// Born probabilities of ancilla 0 and 1 before measurement (shortcut).
    pub branch_probabilities: Option<(T, T)>,
    pub fidelity: Option<T>,
    pub encode_two_qubit_gates: usize,
    pub decode_two_qubit_gates: usize,
    pub correction_single_qubit_gates: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct ProtocolOutput<T: Real> {
    pub state: StateVector<T>,
    pub report: ProtocolReport<T>,
}

pub fn run_protocol<T: Real>(run: &PreparationRun<T>) -> Result<ProtocolOutput<T>, ProtocolError> {
    let n = run.initial.n_qubits();
    if run.evolution.hamiltonian.n_qubits() != n + 1 {
        return Err(DenseError::Dimension {
            expected: 1usize << (n + 1),
            found: 1usize << run.evolution.hamiltonian.n_qubits(),
        }
        .into());
    }
    let chi_prime = run.gates.target_string(n);
    let mut report = ProtocolReport {
        mode: run.mode,
        chi_prime: chi_prime.to_string(),
        leakage: None,
        invariance_defect: None,
        outcome: None,
        branch_probabilities: None,
        fidelity: None,
        encode_two_qubit_gates: 0,
        decode_two_qubit_gates: 0,
        correction_single_qubit_gates: 0,
        seed: run.seed,
    };
    let state = match run.mode {
        Mode::Full => {
            let psi = encode(&run.initial, &run.gates)?;
            let psi = crate::dense::evolve(&run.evolution, &psi)?;
            let d = decode(&psi, &run.gates, run.leakage_threshold)?;
            report.encode_two_qubit_gates = run.gates.two_qubit_count();
            report.decode_two_qubit_gates = run.gates.two_qubit_count();
            report.leakage = Some(d.leakage);
            d.state
        }
        Mode::Shortcut => {
            let defect = invariance_defect(&run.initial, &chi_prime)?;
            report.invariance_defect = Some(defect);
            if defect > T::lit(INVARIANCE_TOLERANCE) {
                return Err(ProtocolError::NotInvariant {
                    string: chi_prime.to_string(),
                    deviation: defect.to_f64(),
                });
            }
            let psi = StateVector::uniform(1).tensor(&run.initial);
            let psi = crate::dense::evolve(&run.evolution, &psi)?;
            let branches = shortcut_ensemble(&psi, &chi_prime)?;
            let p = |bit: u8| {
                branches
                    .iter()
                    .find(|b| b.ancilla_bit == bit)
                    .map_or(T::zero(), |b| b.probability)
            };
            report.branch_probabilities = Some((p(0), p(1)));
            let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
            let chosen = sample_branch(branches, &mut rng)?;
            report.outcome = Some((chosen.ancilla_bit, chosen.probability));
            if chosen.ancilla_bit == 1 {
                report.correction_single_qubit_gates = chi_prime.locality();
            }
            chosen.state
        }
    };
    if let Some(r) = &run.reference {
        report.fidelity = Some(state.fidelity(r));
    }
    Ok(ProtocolOutput { state, report })
}

fn opt<T: Real>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |x| format!("{x:.16e}"))
}

pub fn format_protocol_report<T: Real>(r: &ProtocolReport<T>) -> String {
    let mut out = String::from("schema 1\n");
    out.push_str(&format!("mode {}\n", r.mode.as_str()));
    out.push_str(&format!("chi_prime {}\n", r.chi_prime));
    out.push_str(&format!("seed {}\n", r.seed));
    out.push_str(&format!("leakage {}\n", opt(r.leakage)));
    out.push_str(&format!("invariance_defect {}\n", opt(r.invariance_defect)));
    match r.outcome {
        Some((bit, p)) => out.push_str(&format!("outcome {bit} {p:.16e}\n")),
        None => out.push_str("outcome none\n"),
    }
    match r.branch_probabilities {
        Some((p0, p1)) => out.push_str(&format!("branch_probabilities {p0:.16e} {p1:.16e}\n")),
        None => out.push_str("branch_probabilities none\n"),
    }
    out.push_str(&format!("fidelity {}\n", opt(r.fidelity)));
    out.push_str(&format!(
        "gates encode_two_qubit {} decode_two_qubit {} correction_single_qubit {}\n",
        r.encode_two_qubit_gates, r.decode_two_qubit_gates, r.correction_single_qubit_gates
    ));
    out
}

/// Amplitudes as `bits re im` lines.
pub fn format_state<T: Real>(psi: &StateVector<T>) -> String {
    let n = psi.n_qubits();
    (0..psi.dim())
        .map(|i| {
            let a = psi.amplitude(i);
            format!("{} {:.16e} {:.16e}\n", format_bits(&index_to_bits(i, n)), a.re, a.im)
        })
        .collect()
}
