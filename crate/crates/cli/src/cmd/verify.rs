use std::io::Write;

use spinvol::identities::{exhaustive_params, random_params, run_suite, IdentityId};

use crate::error::CliError;

#[derive(clap::Args)]
pub struct Args {
    /// orthonormality, racah, triple, be or all.
    identity: String,

    /// Largest twice-spin among the parameters.
    #[arg(long, default_value_t = 4)]
    max_twice: i64,

    /// Every parameter tuple up to `--max-twice` instead of random draws.
    #[arg(long)]
    exhaustive: bool,

    /// Number of random draws.
    #[arg(long, default_value_t = 100)]
    count: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Print only the summary, not one JSON record per check.
    #[arg(long)]
    quiet: bool,
}

pub fn run(args: Args) -> Result<(), CliError> {
    if args.max_twice < 0 {
        return Err(CliError::Usage("--max-twice must be non-negative".into()));
    }
    let ids: Vec<IdentityId> =
        if args.identity == "all" { IdentityId::ALL.to_vec() } else { vec![args.identity.parse()?] };
    let mut failed = 0;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for id in ids {
        let params = if args.exhaustive {
            exhaustive_params(id, args.max_twice)
        } else {
            random_params(id, args.max_twice, args.count, args.seed)
        };
        let reports = run_suite(id, &params);
        let mut vacuous = 0;
        for r in &reports {
            if !args.quiet {
                serde_json::to_writer(&mut out, r)?;
                writeln!(out).map_err(CliError::io("<stdout>"))?;
            }
            vacuous += usize::from(r.vacuous);
            if !r.holds {
                failed += 1;
                eprintln!("FAILED {id} {:?}: lhs = {}, rhs = {}", r.params, r.lhs, r.rhs);
            }
        }
        eprintln!("{id}: {} checked, {} non-vacuous", reports.len(), reports.len() - vacuous);
    }
    if failed > 0 {
        return Err(CliError::Verification(format!("{failed} identity check(s) failed")));
    }
    Ok(())
}
