use spinvol::identities::fano_incidence;
use spinvol::regge::canonicalize;

use crate::error::CliError;
use crate::spins;

#[derive(clap::Args)]
pub struct Args {
    /// Sides `a b c d`.
    #[arg(num_args = 4, required = true)]
    spins: Vec<String>,

    #[arg(long)]
    twice: bool,
}

pub fn run(args: Args) -> Result<(), CliError> {
    let q = spins::parse_quad(&args.spins, args.twice)?;
    let n = canonicalize(&q)?;
    let plane = fano_incidence(&n);
    print!("{plane}");
    match plane.validate() {
        Ok(()) => Ok(()),
        Err(e) => Err(CliError::Verification(format!("Fano axioms fail: {e}"))),
    }
}
