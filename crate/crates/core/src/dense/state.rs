use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::Rng;

use super::{apply_controlled_gate, pauli_phase, DenseError};
use crate::embedding::ControlledGateSequence;
use crate::pauli::PauliString;
use crate::Real;

/// `2^n` complex amplitudes. Basis index bits read qubit 0 as the most
/// significant bit, so `|q0 q1 … q_{n-1}⟩` has index `q0·2^{n-1} + …`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    n_qubits: usize,
    amps: DVector<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex<T>>) -> Result<Self, DenseError> {
        if amps.len() != 1usize << n_qubits {
            return Err(DenseError::Dimension {
                expected: 1usize << n_qubits,
                found: amps.len(),
            });
        }
        Ok(StateVector {
            n_qubits,
            amps: DVector::from_vec(amps),
        })
    }

    pub(crate) fn from_dvector(n_qubits: usize, amps: DVector<Complex<T>>) -> Self {
        debug_assert_eq!(amps.len(), 1usize << n_qubits);
        StateVector { n_qubits, amps }
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amps = DVector::zeros(1usize << n_qubits);
        amps[index] = Complex::new(T::one(), T::zero());
        StateVector { n_qubits, amps }
    }

    /// Basis state from bits, qubit 0 first.
    pub fn from_bits(bits: &[bool]) -> Self {
        Self::basis(bits.len(), bits_to_index(bits))
    }

    /// `|+⟩^{⊗n}`.
    pub fn uniform(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let a = T::one() / T::lit(dim as f64).sqrt();
        StateVector {
            n_qubits,
            amps: DVector::from_element(dim, Complex::new(a, T::zero())),
        }
    }

    /// Haar-ish random state from Gaussian amplitudes.
    pub fn random<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Self {
        let dim = 1usize << n_qubits;
        let amps: Vec<Complex<T>> = (0..dim)
            .map(|_| {
                let (a, b) = box_muller(rng);
                Complex::new(T::lit(a), T::lit(b))
            })
            .collect();
        StateVector {
            n_qubits,
            amps: DVector::from_vec(amps),
        }
        .normalized()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex<T>> {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amps[index]
    }

    pub fn norm(&self) -> T {
        self.amps.norm()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        StateVector {
            n_qubits: self.n_qubits,
            amps: self.amps.map(|a| a / Complex::new(n, T::zero())),
        }
    }

    pub fn scaled(&self, factor: Complex<T>) -> Self {
        StateVector {
            n_qubits: self.n_qubits,
            amps: self.amps.map(|a| a * factor),
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps.dotc(&other.amps)
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> T {
        self.inner(other).norm_sqr()
    }

    /// Largest elementwise `|a_i − b_i|`.
    pub fn max_deviation(&self, other: &Self) -> T {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm_sqr().sqrt())
            .fold(T::zero(), |m, d| if d > m { d } else { m })
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &Self) -> Self {
        let amps = self.amps.kronecker(&other.amps);
        StateVector {
            n_qubits: self.n_qubits + other.n_qubits,
            amps,
        }
    }

    pub fn apply_pauli(&self, s: &PauliString) -> Result<Self, DenseError> {
        if s.len() != self.n_qubits {
            return Err(DenseError::Dimension {
                expected: self.n_qubits,
                found: s.len(),
            });
        }
        let (x, z) = s.xz_masks();
        let ny = s.y_count();
        let mut out = DVector::zeros(self.dim());
        for j in 0..self.dim() {
            let (re, im) = pauli_phase(j as u64, z, ny);
            let ph = Complex::new(T::lit(re as f64), T::lit(im as f64));
            out[j ^ x as usize] = self.amps[j] * ph;
        }
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amps: out,
        })
    }

    /// Apply each controlled gate in order. The register is the physical one.
    pub fn apply_gates(&self, gates: &ControlledGateSequence) -> Result<Self, DenseError> {
        let mut out = self.clone();
        for g in gates.gates() {
            apply_controlled_gate(&mut out.amps, self.n_qubits, g)?;
        }
        Ok(out)
    }

    pub fn apply_operator(&self, op: &DMatrix<Complex<T>>) -> Self {
        StateVector {
            n_qubits: self.n_qubits,
            amps: op * &self.amps,
        }
    }

    /// Split off qubit 0: returns the unnormalized system amplitudes for
    /// qubit 0 in `|0⟩` and in `|1⟩`.
    pub fn split_leading(&self) -> (Self, Self) {
        let half = self.dim() / 2;
        let n = self.n_qubits - 1;
        (
            StateVector {
                n_qubits: n,
                amps: self.amps.rows(0, half).into_owned(),
            },
            StateVector {
                n_qubits: n,
                amps: self.amps.rows(half, half).into_owned(),
            },
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        StateVector {
            n_qubits: self.n_qubits,
            amps: &self.amps + &other.amps,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        StateVector {
            n_qubits: self.n_qubits,
            amps: &self.amps - &other.amps,
        }
    }
}

/// Qubit-0-first bits to a basis index.
pub fn bits_to_index(bits: &[bool]) -> usize {
    bits.iter().fold(0usize, |acc, &b| acc << 1 | b as usize)
}

/// Basis index to qubit-0-first bits.
pub fn index_to_bits(index: usize, n_qubits: usize) -> Vec<bool> {
    (0..n_qubits)
        .map(|q| index >> (n_qubits - 1 - q) & 1 == 1)
        .collect()
}

pub fn format_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn box_muller<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    let r = (-2.0 * u1.ln()).sqrt();
    let th = std::f64::consts::TAU * u2;
    (r * th.cos(), r * th.sin())
}
