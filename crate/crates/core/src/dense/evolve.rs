use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;

use super::{to_matrix, DenseError, StateVector};
use crate::schedule::ScheduledHamiltonian;
use crate::Real;

/// Schrödinger evolution over `[0, duration]` in `steps` slices (ħ = 1).
#[derive(Debug, Clone)]
pub struct EvolutionSpec<T: Real> {
    pub hamiltonian: ScheduledHamiltonian<T>,
    pub duration: T,
    pub steps: usize,
}

impl<T: Real> EvolutionSpec<T> {
    pub fn new(hamiltonian: ScheduledHamiltonian<T>, duration: T, steps: usize) -> Self {
        EvolutionSpec {
            hamiltonian,
            duration,
            steps,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory<T: Real> {
    pub final_state: StateVector<T>,
    /// `(t, state)` pairs, starting at `t = 0` and ending at `duration`.
    pub samples: Vec<(T, StateVector<T>)>,
}

pub(crate) struct PieceMatrices<T: Real> {
    pieces: Vec<DMatrix<Complex<T>>>,
}

impl<T: Real> PieceMatrices<T> {
    pub(crate) fn new(h: &ScheduledHamiltonian<T>) -> Result<Self, DenseError> {
        let pieces = h
            .pieces()
            .iter()
            .map(|(_, piece)| to_matrix(piece).map(|m| m.matrix))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PieceMatrices { pieces })
    }

    pub(crate) fn weights(h: &ScheduledHamiltonian<T>, t: T) -> Result<Vec<T>, DenseError> {
        h.pieces()
            .iter()
            .map(|(f, _)| {
                let w = f.value(t);
                if w.is_finite() {
                    Ok(w)
                } else {
                    Err(DenseError::NonFinite { t: t.to_f64() })
                }
            })
            .collect()
    }

    pub(crate) fn combine(&self, weights: &[T], dim: usize) -> DMatrix<Complex<T>> {
        let mut m = DMatrix::<Complex<T>>::zeros(dim, dim);
        for (w, p) in weights.iter().zip(&self.pieces) {
            m += p * Complex::new(*w, T::zero());
        }
        m
    }
}

/// `exp(−i H dt)` through the eigendecomposition of the Hermitian `H`.
fn propagator<T: Real>(h: DMatrix<Complex<T>>, dt: T) -> DMatrix<Complex<T>> {
    let eig = SymmetricEigen::new(h);
    let phases = eig
        .eigenvalues
        .map(|lambda| {
            let theta = lambda * dt;
            Complex::new(theta.cos(), -theta.sin())
        });
    let v = &eig.eigenvectors;
    let mut scaled = v.clone();
    for (mut col, ph) in scaled.column_iter_mut().zip(phases.iter()) {
        col *= *ph;
    }
    scaled * v.adjoint()
}

pub fn evolve<T: Real>(spec: &EvolutionSpec<T>, psi0: &StateVector<T>) -> Result<StateVector<T>, DenseError> {
    Ok(run(spec, psi0, None)?.final_state)
}

/// As [`evolve`], recording the state every `every` steps (and at the end).
pub fn evolve_sampled<T: Real>(
    spec: &EvolutionSpec<T>,
    psi0: &StateVector<T>,
    every: usize,
) -> Result<Trajectory<T>, DenseError> {
    run(spec, psi0, Some(every.max(1)))
}

/// Midpoint-frozen piecewise propagation: on slice `k` the Hamiltonian is
/// fixed at `t = (k + ½)·dt` and applied as its exact exponential.
fn run<T: Real>(
    spec: &EvolutionSpec<T>,
    psi0: &StateVector<T>,
    every: Option<usize>,
) -> Result<Trajectory<T>, DenseError> {
    if spec.steps == 0 {
        return Err(DenseError::NoSteps);
    }
    let n = spec.hamiltonian.n_qubits();
    if psi0.n_qubits() != n {
        return Err(DenseError::Dimension {
            expected: 1usize << n,
            found: psi0.dim(),
        });
    }
    let mats = PieceMatrices::new(&spec.hamiltonian)?;
    let dim = 1usize << n;
    let dt = spec.duration / T::lit(spec.steps as f64);
    let half = T::lit(0.5);

    let mut psi = psi0.clone();
    let mut samples = Vec::new();
    if every.is_some() {
        samples.push((T::zero(), psi.clone()));
    }
    let mut cached: Option<(Vec<T>, DMatrix<Complex<T>>)> = None;
    for k in 0..spec.steps {
        let t_mid = (T::lit(k as f64) + half) * dt;
        let w = PieceMatrices::weights(&spec.hamiltonian, t_mid)?;
        let reuse = matches!(&cached, Some((cw, _)) if *cw == w);
        if !reuse {
            let u = propagator(mats.combine(&w, dim), dt);
            cached = Some((w, u));
        }
        let (_, u) = cached.as_ref().expect("propagator computed");
        psi = psi.apply_operator(u);
        if let Some(e) = every {
            if (k + 1) % e == 0 || k + 1 == spec.steps {
                samples.push((T::lit((k + 1) as f64) * dt, psi.clone()));
            }
        }
    }
    Ok(Trajectory {
        final_state: psi,
        samples,
    })
}

/// One JSON object per line: `{"t":…,"re":[…],"im":[…]}`.
pub fn format_trajectory<T: Real>(traj: &Trajectory<T>) -> String {
    let mut out = String::new();
    for (t, psi) in &traj.samples {
        let re: Vec<f64> = psi.amplitudes().iter().map(|a| a.re.to_f64()).collect();
        let im: Vec<f64> = psi.amplitudes().iter().map(|a| a.im.to_f64()).collect();
        let rec = serde_json::json!({ "t": t.to_f64(), "re": re, "im": im });
        out.push_str(&rec.to_string());
        out.push('\n');
    }
    out
}
