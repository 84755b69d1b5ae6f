//! Config-driven preparation runs.
//!
//! ```text
//! # paths are relative to this file
//! driver driver.ham          # or: hamiltonian static.ham
//! problem problem.ham
//! chi XXX                    # Pauli string or term index
//! mask auto                  # or bits[:axis]
//! initial ground             # ground | plus | zero | a bitstring
//! tau 5
//! steps 500
//! mode full
//! seed 7
//! ```

use std::path::{Path, PathBuf};

use anyhow::anyhow;
use hamembed::adiabatic::{interpolate, Schedule};
use hamembed::dense::{evolve, ground_state, to_matrix, EvolutionSpec, StateVector};
use hamembed::embedding::{
    choose_factorization_scheduled, embed_scheduled, FactorMask,
    DEFAULT_BUDGET,
};
use hamembed::protocol::{
    format_protocol_report, format_state, run_protocol, Mode, PreparationRun, ProtocolError,
    DEFAULT_LEAKAGE_THRESHOLD,
};
use hamembed::schedule::ScheduledHamiltonian;
use hamembed::PauliTerm;

use super::{check_cap, load_hamiltonian, resolve_chi};
use crate::{io, CliError, ProtocolArgs};

enum Initial {
    Ground,
    Plus,
    Bits(Vec<bool>),
}

enum Source {
    Static(PathBuf),
    Interpolated { driver: PathBuf, problem: PathBuf },
}

struct Config {
    source: Source,
    chi: String,
    mask: Option<String>,
    budget: usize,
    initial: Initial,
    tau: f64,
    steps: usize,
    mode: Mode,
    seed: u64,
    leakage_threshold: f64,
}

fn config_error(path: &Path, line: usize, message: impl std::fmt::Display) -> CliError {
    CliError::usage(anyhow!("{}: line {line}: {message}", path.display()))
}

fn parse_config(path: &Path, text: &str) -> Result<Config, CliError> {
    let base = path.parent().unwrap_or(Path::new(""));
    let mut hamiltonian = None;
    let mut driver = None;
    let mut problem = None;
    let mut chi = None;
    let mut mask = None;
    let mut budget = DEFAULT_BUDGET;
    let mut initial = Initial::Ground;
    let mut tau = hamembed::adiabatic::DEFAULT_TAU;
    let mut steps = hamembed::adiabatic::DEFAULT_STEPS;
    let mut mode = Mode::Full;
    let mut seed = 0;
    let mut leakage_threshold = DEFAULT_LEAKAGE_THRESHOLD;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let [key, value] = fields[..] else {
            return Err(config_error(path, line, format!("expected `key value`, found {} fields", fields.len())));
        };
        let bad = |what: &str| config_error(path, line, format!("invalid {what} `{value}`"));
        match key {
            "hamiltonian" => hamiltonian = Some(base.join(value)),
            "driver" => driver = Some(base.join(value)),
            "problem" => problem = Some(base.join(value)),
            "chi" => chi = Some(value.to_string()),
            "mask" => mask = (value != "auto").then(|| value.to_string()),
            "budget" => budget = value.parse().map_err(|_| bad("budget"))?,
            "initial" => {
                initial = match value {
                    "ground" => Initial::Ground,
                    "plus" => Initial::Plus,
                    "zero" => Initial::Bits(Vec::new()),
                    bits if bits.chars().all(|c| c == '0' || c == '1') => {
                        Initial::Bits(bits.chars().map(|c| c == '1').collect())
                    }
                    _ => return Err(bad("initial state")),
                }
            }
            "tau" => {
                tau = value.parse().map_err(|_| bad("tau"))?;
                if !(tau >= 0.0 && f64::is_finite(tau)) {
                    return Err(bad("tau"));
                }
            }
            "steps" => {
                steps = value.parse().map_err(|_| bad("steps"))?;
                if steps == 0 {
                    return Err(bad("steps"));
                }
            }
            "mode" => mode = value.parse().map_err(|e: String| config_error(path, line, e))?,
            "seed" => seed = value.parse().map_err(|_| bad("seed"))?,
            "leakage_threshold" => {
                leakage_threshold = value.parse().map_err(|_| bad("leakage threshold"))?
            }
            other => return Err(config_error(path, line, format!("unknown key `{other}`"))),
        }
    }
    let source = match (hamiltonian, driver, problem) {
        (Some(h), None, None) => Source::Static(h),
        (None, Some(driver), Some(problem)) => Source::Interpolated { driver, problem },
        _ => {
            return Err(config_error(
                path,
                0,
                "give either `hamiltonian` or both `driver` and `problem`",
            ))
        }
    };
    let chi = chi.ok_or_else(|| config_error(path, 0, "missing `chi`"))?;
    Ok(Config {
        source,
        chi,
        mask,
        budget,
        initial,
        tau,
        steps,
        mode,
        seed,
        leakage_threshold,
    })
}

pub fn run(args: &ProtocolArgs) -> Result<(), CliError> {
    let text = io::read(&args.input)?;
    let mut config = parse_config(&args.input, &text)?;
    if let Some(mode) = args.mode {
        config.mode = mode;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(tol) = args.tol {
        config.leakage_threshold = tol;
    }
    if config.leakage_threshold.is_nan() || config.leakage_threshold <= 0.0 {
        return Err(CliError::usage(anyhow!("leakage threshold must be positive")));
    }

    let schedule = Schedule::linear(config.tau);
    let h = match &config.source {
        Source::Static(p) => ScheduledHamiltonian::constant(load_hamiltonian(p)?),
        Source::Interpolated { driver, problem } => {
            let d = load_hamiltonian(driver)?;
            let p = load_hamiltonian(problem)?;
            interpolate(&d, &p, &schedule).map_err(CliError::usage)?
        }
    };
    let n = h.n_qubits();
    check_cap(n + 1, args.cap)?;

    // index selectors count through the pieces in order, skipping repeats
    let mut candidates: Vec<PauliTerm<f64>> = Vec::new();
    for (_, piece) in h.pieces() {
        for t in piece.normalized().into_terms() {
            if !candidates.iter().any(|c| c.string == t.string) {
                candidates.push(t);
            }
        }
    }
    let chi = resolve_chi(&candidates, &config.chi)?.string;
    let mask = match &config.mask {
        Some(text) => FactorMask::parse(text, &chi),
        None => choose_factorization_scheduled(&h, &chi, config.budget),
    }
    .map_err(CliError::usage)?;
    let embedding = embed_scheduled(&h, &chi, &mask).map_err(CliError::usage)?;

    let initial = match &config.initial {
        Initial::Ground => {
            let (_, psi, _) = ground_state(&to_matrix(&h.at(0.0)).map_err(CliError::usage)?);
            psi
        }
        Initial::Plus => StateVector::uniform(n),
        Initial::Bits(bits) if bits.is_empty() => StateVector::basis(n, 0),
        Initial::Bits(bits) if bits.len() == n => StateVector::from_bits(bits),
        Initial::Bits(bits) => {
            return Err(CliError::usage(anyhow!(
                "initial bitstring has {} bits for {n} qubits",
                bits.len()
            )))
        }
    };
    let reference = evolve(&EvolutionSpec::new(h.clone(), config.tau, config.steps), &initial)
        .map_err(CliError::usage)?;
    let run = PreparationRun {
        initial,
        gates: embedding.gates,
        evolution: EvolutionSpec::new(embedding.physical, config.tau, config.steps),
        mode: config.mode,
        reference: Some(reference),
        seed: config.seed,
        leakage_threshold: config.leakage_threshold,
    };
    let output = run_protocol(&run).map_err(|e| match e {
        ProtocolError::Leakage { .. } | ProtocolError::NotInvariant { .. } | ProtocolError::EmptyBranch => {
            CliError::failure(e)
        }
        other => CliError::usage(other),
    })?;
    if let Some(path) = &args.state {
        io::write_atomic(path, &format_state(&output.state)).map_err(CliError::Usage)?;
    }
    io::emit(args.output.as_deref(), &format_protocol_report(&output.report))
}
