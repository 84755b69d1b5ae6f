//! Line-oriented Hamiltonian text format.
//!
//! ```text
//! # comment
//! qubits 3
//! 1.5 XIZ
//! -0.25 zzi
//! ```
//!
//! Emission always uses normalized order and 17 significant digits, so a
//! written file parses back to the identical `f64` Hamiltonian.

use std::fmt::Write as _;

use super::{Hamiltonian, PauliError, PauliTerm};
use crate::Coefficient;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Pauli {
        line: usize,
        #[source]
        source: PauliError,
    },
    #[error("missing `qubits N` header")]
    MissingHeader,
}

impl TextError {
    pub fn line(&self) -> Option<usize> {
        match self {
            TextError::Syntax { line, .. } | TextError::Pauli { line, .. } => Some(*line),
            TextError::MissingHeader => None,
        }
    }
}

/// Scalars that have a textual coefficient representation.
pub trait TextCoefficient: Coefficient {
    fn parse_coefficient(text: &str) -> Result<Self, String>;
    fn format_coefficient(&self) -> String;
}

macro_rules! float_text {
    ($t:ty) => {
        impl TextCoefficient for $t {
            fn parse_coefficient(text: &str) -> Result<Self, String> {
                let lower = text.to_ascii_lowercase();
                if lower.ends_with('i') || lower.ends_with('j') {
                    if !matches!(lower.trim_start_matches(['+', '-']), "inf" | "infinity") {
                        return Err(format!("complex coefficient `{text}` is not supported"));
                    }
                }
                let v: $t = text
                    .parse()
                    .map_err(|_| format!("invalid coefficient `{text}`"))?;
                if !v.is_finite() {
                    return Err(format!("coefficient `{text}` is not finite"));
                }
                Ok(v)
            }

            fn format_coefficient(&self) -> String {
                format!("{:.16e}", self)
            }
        }
    };
}

float_text!(f64);
float_text!(f32);

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parse the text format and return the normalized Hamiltonian.
pub fn parse_hamiltonian<T: TextCoefficient>(text: &str) -> Result<Hamiltonian<T>, TextError> {
    let mut n_qubits: Option<usize> = None;
    let mut terms = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(TextError::Syntax {
                line,
                message: format!("expected two fields, found {}", fields.len()),
            });
        }
        if fields[0] == "qubits" {
            if n_qubits.is_some() {
                return Err(TextError::Syntax {
                    line,
                    message: "duplicate `qubits` header".into(),
                });
            }
            let n: usize = fields[1].parse().map_err(|_| TextError::Syntax {
                line,
                message: format!("invalid qubit count `{}`", fields[1]),
            })?;
            if n == 0 {
                return Err(TextError::Syntax {
                    line,
                    message: "qubit count must be positive".into(),
                });
            }
            n_qubits = Some(n);
            continue;
        }
        let n = n_qubits.ok_or(TextError::MissingHeader)?;
        let coefficient =
            T::parse_coefficient(fields[0]).map_err(|message| TextError::Syntax { line, message })?;
        let string = fields[1]
            .parse()
            .map_err(|source| TextError::Pauli { line, source })?;
        let term = PauliTerm::new(coefficient, string);
        if term.n_qubits() != n {
            return Err(TextError::Syntax {
                line,
                message: format!("string has {} qubits, header says {n}", term.n_qubits()),
            });
        }
        terms.push(term);
    }
    let n = n_qubits.ok_or(TextError::MissingHeader)?;
    Ok(Hamiltonian::new(n, terms)
        .expect("lengths checked per line")
        .normalized())
}

/// Emit the normalized form of `h`.
pub fn format_hamiltonian<T: TextCoefficient>(h: &Hamiltonian<T>) -> String {
    let h = h.normalized();
    let mut out = String::new();
    writeln!(out, "qubits {}", h.n_qubits()).unwrap();
    for t in h.terms() {
        writeln!(out, "{} {}", t.coefficient.format_coefficient(), t.string).unwrap();
    }
    out
}
