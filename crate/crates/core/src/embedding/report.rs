//! Structured text serialization of an [`Embedding`].
//!
//! Header lines are `key value...`; the remaining content is split into
//! `[gates]`, `[comm]`, `[anti]` and `[physical]` sections. Gate lines read
//! `C<control> T<target> <axis>`; Hamiltonian sections use the plain
//! Hamiltonian text format.

use std::fmt::Write as _;

use super::{ControlledGate, ControlledGateSequence, Embedding, Factorization, FactorMask, SplitRecord};
use crate::pauli::text::{format_hamiltonian, parse_hamiltonian, TextCoefficient};
use crate::pauli::{PauliAxis, PauliString, PauliTerm};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("embedding report line {line}: {message}")]
pub struct ReportError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ReportError {
    ReportError {
        line,
        message: message.into(),
    }
}

pub fn format_report<T: TextCoefficient>(e: &Embedding<T>) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "# hamembed embedding report").unwrap();
    writeln!(w, "schema {SCHEMA_VERSION}").unwrap();
    writeln!(w, "ancilla {}", e.ancilla_index).unwrap();
    writeln!(w, "chi {}", e.chi.string).unwrap();
    writeln!(w, "chi_coefficient {}", e.chi.coefficient.format_coefficient()).unwrap();
    writeln!(w, "mask {}", e.mask()).unwrap();
    writeln!(w, "chi_prime {}", e.chi_prime()).unwrap();
    writeln!(w, "chi_double_prime {}", e.chi_double_prime()).unwrap();
    writeln!(w, "locality_before {}", e.locality_before()).unwrap();
    writeln!(w, "locality_after {}", e.locality_after()).unwrap();
    writeln!(
        w,
        "census comm {} anti {}",
        e.split.comm.len(),
        e.split.anti.len()
    )
    .unwrap();
    writeln!(w, "[gates]").unwrap();
    for g in e.gates.gates() {
        writeln!(w, "{g}").unwrap();
    }
    writeln!(w, "[comm]").unwrap();
    w.push_str(&format_hamiltonian(&e.split.comm));
    writeln!(w, "[anti]").unwrap();
    w.push_str(&format_hamiltonian(&e.split.anti));
    writeln!(w, "[physical]").unwrap();
    w.push_str(&format_hamiltonian(&e.physical));
    out
}

#[derive(Default)]
struct Section {
    start: usize,
    body: String,
}

pub fn parse_report<T: TextCoefficient>(text: &str) -> Result<Embedding<T>, ReportError> {
    let mut header: Vec<(usize, Vec<&str>)> = Vec::new();
    let mut sections: Vec<(String, Section)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if let Some(name) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            sections.push((
                name.to_string(),
                Section {
                    start: line,
                    body: String::new(),
                },
            ));
            continue;
        }
        match sections.last_mut() {
            Some((_, sec)) => {
                sec.body.push_str(raw);
                sec.body.push('\n');
            }
            None => {
                let body = raw.split('#').next().unwrap_or("").trim();
                if !body.is_empty() {
                    header.push((line, body.split_whitespace().collect()));
                }
            }
        }
    }

    let get = |key: &str| -> Result<(usize, &Vec<&str>), ReportError> {
        header
            .iter()
            .find(|(_, f)| f[0] == key)
            .map(|(l, f)| (*l, f))
            .ok_or_else(|| err(0, format!("missing `{key}`")))
    };
    let single = |key: &str| -> Result<(usize, String), ReportError> {
        let (l, f) = get(key)?;
        if f.len() != 2 {
            return Err(err(l, format!("`{key}` takes one value")));
        }
        Ok((l, f[1].to_string()))
    };

    let (l, schema) = single("schema")?;
    if schema != SCHEMA_VERSION.to_string() {
        return Err(err(l, format!("unsupported schema {schema}")));
    }
    let (l, anc) = single("ancilla")?;
    let ancilla_index: usize = anc.parse().map_err(|_| err(l, "invalid ancilla index"))?;
    let (l, chi_text) = single("chi")?;
    let chi: PauliString = chi_text.parse().map_err(|e| err(l, format!("{e}")))?;
    let (l, coef) = single("chi_coefficient")?;
    let coefficient = T::parse_coefficient(&coef).map_err(|m| err(l, m))?;
    let (l, mask_text) = single("mask")?;
    let mask = FactorMask::parse(&mask_text, &chi).map_err(|e| err(l, e.to_string()))?;
    let factorization = Factorization::new(&chi, mask).map_err(|e| err(l, e.to_string()))?;
    let (l, cp) = single("chi_prime")?;
    if cp != factorization.chi_prime.to_string() {
        return Err(err(l, "chi_prime does not match mask"));
    }
    let (l, cpp) = single("chi_double_prime")?;
    if cpp != factorization.chi_double_prime.to_string() {
        return Err(err(l, "chi_double_prime does not match mask"));
    }

    let section = |name: &str| -> Result<&Section, ReportError> {
        sections
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| err(0, format!("missing [{name}] section")))
    };
    let hamiltonian = |name: &str| {
        let sec = section(name)?;
        parse_hamiltonian::<T>(&sec.body).map_err(|e| {
            let line = e.line().map(|l| l + sec.start).unwrap_or(sec.start);
            err(line, e.to_string())
        })
    };

    let gates_sec = section("gates")?;
    let mut gates = Vec::new();
    for (i, raw) in gates_sec.body.lines().enumerate() {
        let line = gates_sec.start + i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        gates.push(parse_gate(body).ok_or_else(|| err(line, format!("invalid gate `{body}`")))?);
    }
    let gates = ControlledGateSequence::new(gates);
    if gates != factorization.gates() {
        return Err(err(gates_sec.start, "gate list does not match chi_prime"));
    }

    let comm = hamiltonian("comm")?;
    let anti = hamiltonian("anti")?;
    let physical = hamiltonian("physical")?;

    let (l, census) = get("census")?;
    let expected = format!("census comm {} anti {}", comm.len(), anti.len());
    if census.join(" ") != expected {
        return Err(err(l, "census counts do not match split sections"));
    }

    Ok(Embedding {
        physical,
        ancilla_index,
        chi: PauliTerm::new(coefficient, chi),
        factorization,
        split: SplitRecord { comm, anti },
        gates,
    })
}

fn parse_gate(body: &str) -> Option<ControlledGate> {
    let mut it = body.split_whitespace();
    let control = it.next()?.strip_prefix('C')?.parse().ok()?;
    let target = it.next()?.strip_prefix('T')?.parse().ok()?;
    let mut axis_chars = it.next()?.chars();
    let axis = PauliAxis::from_char(axis_chars.next()?)?;
    if axis_chars.next().is_some() || it.next().is_some() || axis.is_identity() {
        return None;
    }
    Some(ControlledGate {
        control,
        target,
        axis,
    })
}
