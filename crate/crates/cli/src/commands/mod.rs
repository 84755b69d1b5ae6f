pub mod anneal;
pub mod embed;
pub mod protocol;
pub mod verify;

use std::path::Path;

use anyhow::anyhow;
use hamembed::{parse_hamiltonian, Hamiltonian, PauliString, PauliTerm};

use crate::CliError;

pub fn load_hamiltonian(path: &Path) -> Result<Hamiltonian<f64>, CliError> {
    let text = crate::io::read(path)?;
    parse_hamiltonian(&text).map_err(|e| CliError::usage(anyhow!("{}: {e}", path.display())))
}

/// Resolve a term selector: a 0-based index into `candidates`, or a Pauli
/// string that must be one of them.
pub fn resolve_chi(candidates: &[PauliTerm<f64>], selector: &str) -> Result<PauliTerm<f64>, CliError> {
    if let Ok(k) = selector.parse::<usize>() {
        return candidates.get(k).cloned().ok_or_else(|| {
            CliError::usage(anyhow!("term index {k} out of range ({} terms)", candidates.len()))
        });
    }
    let string: PauliString = selector
        .parse()
        .map_err(|e| CliError::usage(anyhow!("invalid term selector `{selector}`: {e}")))?;
    candidates
        .iter()
        .find(|t| t.string == string)
        .cloned()
        .ok_or_else(|| CliError::usage(anyhow!("term {string} is not present in the Hamiltonian")))
}

pub fn check_cap(n_physical: usize, cap: usize) -> Result<(), CliError> {
    if n_physical > cap {
        return Err(CliError::usage(anyhow!(
            "refusing to simulate {n_physical} qubits densely (cap {cap})"
        )));
    }
    Ok(())
}
