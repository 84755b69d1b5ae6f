use anyhow::anyhow;
use hamembed::adiabatic::{
    anneal, flip_all_term, format_report, paired_flip_all, parse_instance, spin_glass,
    standard_driver, Schedule,
};

use super::check_cap;
use crate::{io, AnnealArgs, CliError, ScheduleArg};

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::usage(anyhow!("--{name} must be a positive number, got {v}")))
    }
}

pub fn run(args: &AnnealArgs) -> Result<(), CliError> {
    if !args.tau.is_finite() || args.tau < 0.0 {
        return Err(CliError::usage(anyhow!("--tau must be finite and non-negative")));
    }
    if args.steps == 0 {
        return Err(CliError::usage(anyhow!("--steps must be at least 1")));
    }
    if !args.field.is_finite() || args.field == 0.0 {
        return Err(CliError::usage(anyhow!("--field must be finite and nonzero")));
    }
    if let Some(b0) = args.flip_all {
        if !b0.is_finite() {
            return Err(CliError::usage(anyhow!("--flip-all must be finite")));
        }
    }
    positive("tol", args.tol)?;
    let text = io::read(&args.input)?;
    let instance = parse_instance::<f64>(&text)
        .map_err(|e| CliError::usage(anyhow!("{}: {e}", args.input.display())))?;
    let n = instance.n();
    check_cap(if args.paired { n + 1 } else { n }, args.cap)?;

    let schedule = match args.schedule {
        ScheduleArg::Linear => Schedule::linear(args.tau),
    };
    // a zero-length linear schedule has no interior to check
    if args.tau > 0.0 {
        schedule.validate().map_err(CliError::usage)?;
    }
    let b = vec![args.field; n];
    let gap_samples = (args.gap_samples > 0).then_some(args.gap_samples);

    if args.paired {
        let b0 = args.flip_all.expect("clap enforces --flip-all with --paired");
        let run = paired_flip_all(&instance, &b, b0, &schedule, args.steps, gap_samples)
            .map_err(CliError::usage)?;
        let diff = (run.original.success_probability - run.embedded.success_probability).abs();
        let mut out = String::from("schema 1\nmode paired\n");
        out.push_str(&format!("difference {diff:.16e}\n"));
        for (name, r) in [("original", &run.original), ("embedded", &run.embedded)] {
            out.push_str(&format!("[{name}]\n"));
            // drop the per-report schema line
            out.extend(format_report(r).lines().skip(1).map(|l| format!("{l}\n")));
        }
        io::emit(args.output.as_deref(), &out)?;
        if diff > args.tol {
            return Err(CliError::failure(anyhow!(
                "paired success probabilities differ by {diff:.3e} (tol {:.1e})",
                args.tol
            )));
        }
        return Ok(());
    }

    let mut h0 = standard_driver(&b).map_err(CliError::usage)?;
    if let Some(b0) = args.flip_all {
        h0.push(flip_all_term(b0, n)).map_err(CliError::usage)?;
    }
    let (report, _) = anneal(&h0.normalized(), &spin_glass(&instance), &schedule, args.steps, gap_samples)
        .map_err(CliError::usage)?;
    io::emit(args.output.as_deref(), &format_report(&report))
}
