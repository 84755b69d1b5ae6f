//! Spin-glass instance files.
//!
//! ```text
//! # comment
//! n 3
//! h 0 0.5
//! J 2 1 -1.0
//! ```

use super::SpinGlassInstance;
use crate::Real;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct InstanceError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> InstanceError {
    InstanceError {
        line,
        message: message.into(),
    }
}

fn index(line: usize, text: &str) -> Result<usize, InstanceError> {
    text.parse()
        .map_err(|_| err(line, format!("invalid qubit index `{text}`")))
}

pub fn parse_instance<T: Real>(text: &str) -> Result<SpinGlassInstance<T>, InstanceError> {
    let mut instance: Option<SpinGlassInstance<T>> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match (fields[0], fields.len()) {
            ("n", 2) => {
                if instance.is_some() {
                    return Err(err(line, "duplicate `n` line"));
                }
                let n = index(line, fields[1])?;
                if n == 0 {
                    return Err(err(line, "n must be at least 1"));
                }
                instance = Some(SpinGlassInstance::new(n));
            }
            ("h", 3) => {
                let g = instance.as_mut().ok_or_else(|| err(line, "`h` before `n`"))?;
                let i = index(line, fields[1])?;
                let v = T::parse_coefficient(fields[2]).map_err(|m| err(line, m))?;
                g.set_field(i, v).map_err(|e| err(line, e.to_string()))?;
            }
            ("J", 4) => {
                let g = instance.as_mut().ok_or_else(|| err(line, "`J` before `n`"))?;
                let i = index(line, fields[1])?;
                let j = index(line, fields[2])?;
                let v = T::parse_coefficient(fields[3]).map_err(|m| err(line, m))?;
                g.set_coupling(i, j, v).map_err(|e| err(line, e.to_string()))?;
            }
            _ => return Err(err(line, format!("unrecognized line `{content}`"))),
        }
    }
    instance.ok_or_else(|| err(0, "missing `n N` line"))
}

/// Writes zero fields too, so the register size is explicit.
pub fn format_instance<T: Real>(g: &SpinGlassInstance<T>) -> String {
    let mut out = format!("n {}\n", g.n());
    for (i, h) in g.fields().iter().enumerate() {
        out.push_str(&format!("h {i} {}\n", h.format_coefficient()));
    }
    for (&(i, j), v) in g.couplings() {
        out.push_str(&format!("J {i} {j} {}\n", v.format_coefficient()));
    }
    out
}
