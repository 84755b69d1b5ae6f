use anyhow::anyhow;
use hamembed::embedding::report::format_report;
use hamembed::embedding::{choose_factorization, embed_case1, embed_case2, FactorMask};
use hamembed::format_hamiltonian;

use super::{load_hamiltonian, resolve_chi};
use crate::{io, CaseArg, CliError, EmbedArgs};

pub fn run(args: &EmbedArgs) -> Result<(), CliError> {
    let h = load_hamiltonian(&args.input)?;
    let chi = resolve_chi(h.terms(), &args.chi)?;
    let embedding = match (args.case, &args.mask) {
        (CaseArg::One, None) => embed_case1(&h, &chi),
        (CaseArg::Two, Some(text)) => {
            let mask = FactorMask::parse(text, &chi.string).map_err(CliError::usage)?;
            embed_case2(&h, &chi, &mask)
        }
        (CaseArg::Auto, None) => {
            let mask = choose_factorization(&h, &chi, args.budget).map_err(CliError::usage)?;
            embed_case2(&h, &chi, &mask)
        }
        (CaseArg::Two, None) => return Err(CliError::usage(anyhow!("--case 2 needs --mask"))),
        (_, Some(_)) => return Err(CliError::usage(anyhow!("--mask is only valid with --case 2"))),
    }
    .map_err(CliError::usage)?;
    if let Some(path) = &args.physical {
        io::write_atomic(path, &format_hamiltonian(&embedding.physical)).map_err(CliError::Usage)?;
    }
    io::emit(args.output.as_deref(), &format_report(&embedding))
}
