use spinvol::wigner::{sixj_exact, sixj_float, sixj_sweep, SixJ};
use spinvol::HalfInt;

use crate::error::CliError;
use crate::output::{num, Table};
use crate::spins;

#[derive(clap::Args)]
pub struct Args {
    /// The six entries `j1 j2 j3 j4 j5 j6` of `{j1 j2 j3; j4 j5 j6}`; with
    /// `--sweep`, one entry is `.`.
    #[arg(num_args = 6, required = true, allow_negative_numbers = true)]
    spins: Vec<String>,

    /// Entries are twice the spin (`3` means 3/2).
    #[arg(long)]
    twice: bool,

    /// Sweep the `.` entry over its admissible range; the value names the column.
    #[arg(long, value_name = "NAME")]
    sweep: Option<String>,
}

pub fn run(args: Args) -> Result<(), CliError> {
    if let Some(name) = &args.sweep {
        return sweep(&args, name);
    }
    let j: Vec<HalfInt> = args.spins.iter().map(|s| spins::parse(s, args.twice)).collect::<Result<_, _>>()?;
    let s = SixJ::new(j[0], j[1], j[2], j[3], j[4], j[5]);
    if s.is_trivial_zero() {
        println!("0 (trivial zero)");
        return Ok(());
    }
    println!("{}", sixj_exact(&s).exact);
    println!("{}", sixj_float(&s));
    Ok(())
}

fn sweep(args: &Args, name: &str) -> Result<(), CliError> {
    let holes = args.spins.iter().filter(|s| *s == ".").count();
    if holes != 1 {
        return Err(CliError::Usage(format!("--sweep needs exactly one `.` entry, got {holes}")));
    }
    let mut template = [None; 6];
    for (slot, s) in template.iter_mut().zip(&args.spins) {
        if s != "." {
            *slot = Some(spins::parse(s, args.twice)?);
        }
    }
    let rows = sixj_sweep(template).ok_or_else(|| CliError::Usage("no admissible sweep template".into()))?;
    let mut t = Table::stdout(&[name, "value"])?;
    for (x, v) in rows {
        t.row([num(x.to_f64()), num(v)])?;
    }
    t.finish()
}
