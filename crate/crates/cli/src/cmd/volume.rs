use std::path::PathBuf;

use clap::ValueEnum;
use serde_json::json;
use spinvol::regge::{canonicalize, Diagonal};
use spinvol::volume::{build_k_matrix, diagonalize, geometric_volume, oracle_k_matrix, potentials};

use crate::error::CliError;
use crate::output::{num, OutDir, Table};
use crate::spins;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Spectrum,
    Potentials,
    Eigenfunctions,
}

impl Emit {
    fn file(self) -> &'static str {
        match self {
            Emit::Spectrum => "spectrum.csv",
            Emit::Potentials => "potentials.csv",
            Emit::Eigenfunctions => "eigenfunctions.csv",
        }
    }
}

#[derive(clap::Args)]
pub struct Args {
    /// Sides `a b c d`.
    #[arg(num_args = 4, required = true)]
    spins: Vec<String>,

    #[arg(long)]
    twice: bool,

    /// Diagonal whose eigenbasis carries the matrix: x, y or z.
    #[arg(long, default_value = "x")]
    basis: Diagonal,

    /// What to write; repeat for several. Several need `--out`.
    #[arg(long, value_enum, default_values_t = [Emit::Spectrum])]
    emit: Vec<Emit>,

    /// Added to every spin to get a length.
    #[arg(long, default_value_t = 0.5)]
    shift: f64,

    /// Points on the potential curves.
    #[arg(long, default_value_t = 2001)]
    samples: usize,

    /// Compare against the spin-matrix construction (spins up to 2).
    #[arg(long)]
    oracle: bool,

    /// Directory for CSV files and the manifest; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> Result<(), CliError> {
    let q = spins::parse_quad(&args.spins, args.twice)?;
    let n = canonicalize(&q)?;
    if args.out.is_none() && args.emit.len() > 1 {
        return Err(CliError::Usage("several --emit values need --out".into()));
    }
    if !(args.shift.is_finite() && args.shift >= 0.0) {
        return Err(CliError::Usage("--shift must be a non-negative number".into()));
    }
    let oracle = if args.oracle { Some(oracle_k_matrix(&q)?) } else { None };

    let t = build_k_matrix(&n, args.basis);
    let spec = diagonalize(&t)?;
    let b = args.basis.label().to_string();

    let mut dir = args.out.as_deref().map(OutDir::create).transpose()?;
    for &e in &args.emit {
        let header: Vec<&str> = match e {
            Emit::Spectrum => vec!["k", "eigenvalue", "volume"],
            Emit::Potentials => vec!["x", "u_plus", "u_minus"],
            Emit::Eigenfunctions => vec!["k", "eigenvalue", &b, "component"],
        };
        let mut table = match dir.as_mut() {
            Some(d) => d.table(e.file(), &header)?,
            None => Table::stdout(&header)?,
        };
        match e {
            Emit::Spectrum => {
                for (k, &l) in spec.eigenvalues.iter().enumerate() {
                    table.row([k.to_string(), num(l), num(geometric_volume(l))])?;
                }
            }
            Emit::Potentials => {
                let p = potentials(&n, args.samples, args.shift);
                for i in 0..p.x.len() {
                    table.row([num(p.x[i]), num(p.u_plus[i]), num(p.u_minus[i])])?;
                }
            }
            Emit::Eigenfunctions => {
                for (k, (l, v)) in spec.eigenvalues.iter().zip(&spec.eigenvectors).enumerate() {
                    for (x, c) in t.labels.iter().zip(v) {
                        table.row([k.to_string(), num(*l), num(x.to_f64()), num(*c)])?;
                    }
                }
            }
        }
        table.finish()?;
    }

    let ev = &spec.eigenvalues;
    let summary =
        format!("{}: {} eigenvalues in the {b} basis, max {}", n.quad, ev.len(), ev.last().copied().unwrap_or(0.0));
    let mut oracle_json = serde_json::Value::Null;
    let mut oracle_line = None;
    if let Some(r) = &oracle {
        if r.dim != ev.len() {
            return Err(CliError::Verification(format!(
                "oracle subspace has dimension {}, tridiagonal form {}",
                r.dim,
                ev.len()
            )));
        }
        let dev = ev.iter().zip(&r.eigenvalues).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        let scale = ev.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let rel = if scale > 0.0 { dev / scale } else { dev };
        oracle_line = Some(format!(
            "oracle: dimension {}, max spectral deviation {dev:e} ({rel:e} relative), leakage {:e}",
            r.dim, r.leakage
        ));
        oracle_json = json!({ "dim": r.dim, "max_deviation": dev, "relative_deviation": rel });
    }

    match dir {
        Some(d) => {
            println!("{summary}");
            if let Some(l) = &oracle_line {
                println!("{l}");
            }
            let params = json!({
                "basis": b,
                "emit": args.emit.iter().map(|e| e.file()).collect::<Vec<_>>(),
                "shift": args.shift,
                "samples": args.samples,
                "canonical_twice": spins::quad_twice(&n.quad),
                "oracle": oracle_json,
            });
            d.finish("volume", params, spins::quad_twice(&q))?;
        }
        None => {
            eprintln!("{summary}");
            if let Some(l) = &oracle_line {
                eprintln!("{l}");
            }
        }
    }
    Ok(())
}
