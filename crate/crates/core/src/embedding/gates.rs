use std::fmt;

use crate::pauli::{PauliAxis, PauliString};

/// Controlled single-qubit Pauli. `control` indexes the physical register,
/// `target` indexes the system register (the physical register without the
/// ancilla).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ControlledGate {
    pub control: usize,
    pub target: usize,
    pub axis: PauliAxis,
}

impl fmt::Display for ControlledGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{} T{} {}", self.control, self.target, self.axis)
    }
}

/// Product of controlled Paulis realizing
/// `U = |0⟩⟨0| ⊗ 𝟙 + |1⟩⟨1| ⊗ χ′`.
///
/// All gates share the control and act on distinct targets, so they
/// commute and `U² = 𝟙`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ControlledGateSequence {
    gates: Vec<ControlledGate>,
}

impl ControlledGateSequence {
    pub fn new(gates: Vec<ControlledGate>) -> Self {
        ControlledGateSequence { gates }
    }

    pub fn gates(&self) -> &[ControlledGate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Two-qubit gate count (one per entry).
    pub fn two_qubit_count(&self) -> usize {
        self.gates.len()
    }

    /// The string applied on the system register when the control is `|1⟩`.
    pub fn target_string(&self, n_system: usize) -> PauliString {
        let mut s = PauliString::identity(n_system);
        for g in &self.gates {
            s = s.with_axis(g.target, g.axis);
        }
        s
    }

    /// Gate order concatenated with `other`'s (as applied after `self`).
    pub fn concat(&self, other: &ControlledGateSequence) -> ControlledGateSequence {
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        ControlledGateSequence { gates }
    }

    /// Cancel adjacent identical gates until none remain.
    ///
    /// Gates with a common control commute, so `U·U` reduces to the empty
    /// sequence.
    pub fn reduced(&self) -> ControlledGateSequence {
        let mut out: Vec<ControlledGate> = Vec::new();
        for g in &self.gates {
            if let Some(pos) = out.iter().position(|h| h == g) {
                out.remove(pos);
            } else {
                out.push(*g);
            }
        }
        ControlledGateSequence { gates: out }
    }
}

pub fn build_gate_sequence(chi_prime: &PauliString, ancilla: usize) -> ControlledGateSequence {
    ControlledGateSequence {
        gates: chi_prime
            .axes()
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_identity())
            .map(|(target, &axis)| ControlledGate {
                control: ancilla,
                target,
                axis,
            })
            .collect(),
    }
}
