//! Oracle checks of an embedding report against the Hamiltonian it claims
//! to embed.

use std::fmt::Write as _;

use anyhow::anyhow;
use hamembed::dense::{
    basis_map, check_decoupling, gate_unitary, restrict, spectrum, to_matrix, DenseOperator, Sign,
};
use hamembed::embedding::report::parse_report;
use hamembed::{Hamiltonian, PauliTerm};

use super::{check_cap, load_hamiltonian};
use crate::{io, CliError, VerifyArgs};

struct Check {
    name: &'static str,
    deviation: f64,
    tolerance: f64,
}

impl Check {
    fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

pub fn run(args: &VerifyArgs) -> Result<(), CliError> {
    let h = load_hamiltonian(&args.input)?;
    let text = io::read(&args.embedding)?;
    let embedding = parse_report::<f64>(&text)
        .map_err(|e| CliError::usage(anyhow!("{}: {e}", args.embedding.display())))?;
    let n = embedding.n_system();
    if h.n_qubits() != n {
        return Err(CliError::usage(anyhow!(
            "original has {} qubits, embedding report has {n}",
            h.n_qubits()
        )));
    }
    check_cap(n + 1, args.cap)?;

    let chi = &embedding.chi.string;
    // H^irr flips the sign of χ as it appears in the original
    let mut irr = h.without(chi);
    if let Some(c) = h.coefficient_of(chi) {
        irr.push(PauliTerm::new(-c, chi.clone())).map_err(CliError::usage)?;
    }
    let checks = run_checks(&h, &irr, &embedding.physical, &embedding.gates, n, args)
        .map_err(CliError::usage)?;

    let mut out = String::from("schema 1\n");
    writeln!(out, "qubits {n}").unwrap();
    writeln!(out, "chi {chi}").unwrap();
    for c in &checks {
        let verdict = if c.passed() { "pass" } else { "FAIL" };
        writeln!(out, "{} {:.3e} tol {:.1e} {verdict}", c.name, c.deviation, c.tolerance).unwrap();
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
    writeln!(out, "result {}", if failed.is_empty() { "pass" } else { "fail" }).unwrap();
    io::emit(args.output.as_deref(), &out)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::failure(anyhow!("checks failed: {}", failed.join(", "))))
    }
}

fn run_checks(
    h: &Hamiltonian<f64>,
    irr: &Hamiltonian<f64>,
    physical: &Hamiltonian<f64>,
    gates: &hamembed::embedding::ControlledGateSequence,
    n: usize,
    args: &VerifyArgs,
) -> anyhow::Result<Vec<Check>> {
    let map = basis_map::<f64>(gates, n)?;
    let decoupling = check_decoupling(physical, &map)?;
    let plus = restrict(physical, &map, Sign::Plus)?.max_deviation(&to_matrix(h)?);
    let minus = restrict(physical, &map, Sign::Minus)?.max_deviation(&to_matrix(irr)?);

    let mut union = spectrum(h)?;
    union.extend(spectrum(irr)?);
    union.sort_by(f64::total_cmp);
    let physical_spectrum = spectrum(physical)?;
    let spectrum_dev = physical_spectrum
        .iter()
        .zip(&union)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let u = gate_unitary::<f64>(gates, n)?;
    let square = DenseOperator {
        n_qubits: n + 1,
        matrix: &u.matrix * &u.matrix,
    };
    let unitary = square.max_deviation(&DenseOperator::identity(n + 1));

    let check = |name, deviation, tolerance| Check {
        name,
        deviation,
        tolerance,
    };
    Ok(vec![
        check("decoupling", decoupling, args.tol),
        check("plus_block", plus, args.tol),
        check("minus_block", minus, args.tol),
        check("spectrum_union", spectrum_dev, args.spectrum_tol),
        check("unitary_square", unitary, args.tol),
    ])
}
