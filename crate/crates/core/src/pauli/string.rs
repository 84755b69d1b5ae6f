use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use super::PauliError;

/// Single-qubit Pauli axis. `I` is the identity.
///
/// The derived ordering `I < X < Y < Z` drives the lexicographic term order
/// used when normalizing Hamiltonians.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 4] = [PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(PauliAxis::I),
            'X' => Some(PauliAxis::X),
            'Y' => Some(PauliAxis::Y),
            'Z' => Some(PauliAxis::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliAxis::I => 'I',
            PauliAxis::X => 'X',
            PauliAxis::Y => 'Y',
            PauliAxis::Z => 'Z',
        }
    }

    #[inline]
    pub fn is_identity(self) -> bool {
        self == PauliAxis::I
    }

    /// Whether the axis flips the computational basis state (X or Y).
    #[inline]
    pub fn flips(self) -> bool {
        matches!(self, PauliAxis::X | PauliAxis::Y)
    }

    /// Whether the axis carries a Z component (Y or Z).
    #[inline]
    pub fn has_z(self) -> bool {
        matches!(self, PauliAxis::Y | PauliAxis::Z)
    }

    /// Product of two single-qubit Paulis: `a * b = phase * c`.
    pub fn product(self, other: PauliAxis) -> (Phase, PauliAxis) {
        use PauliAxis::*;
        match (self, other) {
            (I, b) => (Phase::One, b),
            (a, I) => (Phase::One, a),
            (a, b) if a == b => (Phase::One, I),
            (X, Y) => (Phase::PlusI, Z),
            (Y, Z) => (Phase::PlusI, X),
            (Z, X) => (Phase::PlusI, Y),
            (Y, X) => (Phase::MinusI, Z),
            (Z, Y) => (Phase::MinusI, X),
            (X, Z) => (Phase::MinusI, Y),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A fourth root of unity, kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    One,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    /// Power of `i` this phase represents, in `0..4`.
    pub fn exponent(self) -> u8 {
        match self {
            Phase::One => 0,
            Phase::PlusI => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn from_exponent(e: u8) -> Self {
        match e % 4 {
            0 => Phase::One,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Phase::One | Phase::MinusOne)
    }

    /// `(re, im)` as integers in `{-1, 0, 1}`.
    pub fn components(self) -> (i8, i8) {
        match self {
            Phase::One => (1, 0),
            Phase::PlusI => (0, 1),
            Phase::MinusOne => (-1, 0),
            Phase::MinusI => (0, -1),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    // powers of i add under multiplication
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_exponent(self.exponent() + rhs.exponent())
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Phase::One => "+1",
            Phase::PlusI => "+i",
            Phase::MinusOne => "-1",
            Phase::MinusI => "-i",
        };
        f.write_str(s)
    }
}

/// Tensor product of single-qubit Paulis. Qubit 0 is the leftmost character.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    axes: Vec<PauliAxis>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductResult {
    pub phase: Phase,
    pub string: PauliString,
}

impl PauliString {
    pub fn new(axes: Vec<PauliAxis>) -> Result<Self, PauliError> {
        if axes.is_empty() {
            return Err(PauliError::Empty);
        }
        Ok(PauliString { axes })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "a Pauli string needs at least one qubit");
        PauliString {
            axes: vec![PauliAxis::I; n],
        }
    }

    /// `axis` on every qubit in `support`, identity elsewhere.
    pub fn from_support(n: usize, support: &[usize], axis: PauliAxis) -> Self {
        let mut s = Self::identity(n);
        for &q in support {
            s.axes[q] = axis;
        }
        s
    }

    pub fn uniform(n: usize, axis: PauliAxis) -> Self {
        assert!(n >= 1, "a Pauli string needs at least one qubit");
        PauliString {
            axes: vec![axis; n],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.axes.len()
    }

    /// Always false; present for clippy's `len_without_is_empty`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }

    #[inline]
    pub fn axes(&self) -> &[PauliAxis] {
        &self.axes
    }

    #[inline]
    pub fn axis(&self, qubit: usize) -> PauliAxis {
        self.axes[qubit]
    }

    /// Copy with one axis replaced.
    pub fn with_axis(&self, qubit: usize, axis: PauliAxis) -> Self {
        let mut axes = self.axes.clone();
        axes[qubit] = axis;
        PauliString { axes }
    }

    /// Copy with `axis` inserted as a new qubit 0.
    pub fn prepend(&self, axis: PauliAxis) -> Self {
        let mut axes = Vec::with_capacity(self.axes.len() + 1);
        axes.push(axis);
        axes.extend_from_slice(&self.axes);
        PauliString { axes }
    }

    pub fn is_identity(&self) -> bool {
        self.axes.iter().all(|a| a.is_identity())
    }

    /// Qubits carrying a non-identity axis, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.axes
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_identity())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn locality(&self) -> usize {
        self.axes.iter().filter(|a| !a.is_identity()).count()
    }

    /// True when only `allowed` axes (and identities) appear.
    pub fn only_axes(&self, allowed: &[PauliAxis]) -> bool {
        self.axes
            .iter()
            .all(|a| a.is_identity() || allowed.contains(a))
    }

    /// Bit masks `(x, z)` with qubit 0 at the most significant of `len()` bits.
    ///
    /// Requires `len() <= 64`.
    pub fn xz_masks(&self) -> (u64, u64) {
        let n = self.len();
        debug_assert!(n <= 64);
        let mut x = 0u64;
        let mut z = 0u64;
        for (q, a) in self.axes.iter().enumerate() {
            let bit = 1u64 << (n - 1 - q);
            if a.flips() {
                x |= bit;
            }
            if a.has_z() {
                z |= bit;
            }
        }
        (x, z)
    }

    pub fn y_count(&self) -> usize {
        self.axes.iter().filter(|&&a| a == PauliAxis::Y).count()
    }

    pub fn multiply(&self, other: &PauliString) -> Result<ProductResult, PauliError> {
        check_len(self, other)?;
        let mut phase = Phase::One;
        let axes = self
            .axes
            .iter()
            .zip(&other.axes)
            .map(|(&a, &b)| {
                let (p, c) = a.product(b);
                phase = phase * p;
                c
            })
            .collect();
        Ok(ProductResult {
            phase,
            string: PauliString { axes },
        })
    }

    /// Pauli strings either commute or anticommute; they commute iff the number
    /// of positions where both act nontrivially with different axes is even.
    pub fn commutes(&self, other: &PauliString) -> Result<bool, PauliError> {
        check_len(self, other)?;
        Ok(self.clashes(other).is_multiple_of(2))
    }

    fn clashes(&self, other: &PauliString) -> usize {
        self.axes
            .iter()
            .zip(&other.axes)
            .filter(|(a, b)| !a.is_identity() && !b.is_identity() && a != b)
            .count()
    }
}

fn check_len(a: &PauliString, b: &PauliString) -> Result<(), PauliError> {
    if a.len() != b.len() {
        return Err(PauliError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Parse a Pauli string, case-insensitive. Qubit 0 is the first character.
pub fn parse_pauli_string(text: &str) -> Result<PauliString, PauliError> {
    if text.is_empty() {
        return Err(PauliError::Empty);
    }
    let axes = text
        .chars()
        .enumerate()
        .map(|(position, c)| {
            PauliAxis::from_char(c).ok_or(PauliError::InvalidCharacter {
                position,
                character: c,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PauliString { axes })
}

impl FromStr for PauliString {
    type Err = PauliError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pauli_string(s)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.axes {
            write!(f, "{}", a.as_char())?;
        }
        Ok(())
    }
}

pub fn multiply(a: &PauliString, b: &PauliString) -> Result<ProductResult, PauliError> {
    a.multiply(b)
}

pub fn commutes(a: &PauliString, b: &PauliString) -> Result<bool, PauliError> {
    a.commutes(b)
}

pub fn locality(s: &PauliString) -> usize {
    s.locality()
}
