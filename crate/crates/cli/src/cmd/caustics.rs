use std::path::PathBuf;

use serde_json::json;
use spinvol::geometry::{caustic_scan, egg_surface, render_screen, Polyline, ScreenGrid, DEFAULT_SHIFT};
use spinvol::regge::{canonicalize, Screen};

use crate::error::CliError;
use crate::output::{num, OutDir};
use crate::spins;

#[derive(clap::Args)]
pub struct Args {
    /// Sides `a b c d`.
    #[arg(num_args = 4, required = true)]
    spins: Vec<String>,

    #[arg(long)]
    twice: bool,

    /// xz, xy or yz.
    #[arg(long, default_value = "xz", conflicts_with = "all")]
    screen: Screen,

    /// All three screens plus the xyz shells.
    #[arg(long)]
    all: bool,

    /// Samples per axis.
    #[arg(short = 'r', long, default_value_t = 256)]
    resolution: usize,

    /// Added to every spin to get a length.
    #[arg(long, default_value_t = DEFAULT_SHIFT)]
    shift: f64,

    #[arg(long, default_value = ".")]
    out: PathBuf,

    /// Also render each screen as SVG.
    #[arg(long)]
    svg: bool,
}

fn write_curves<'a>(
    t: &mut crate::output::Table,
    prefix: &[String],
    first_id: usize,
    curves: impl IntoIterator<Item = &'a Polyline>,
) -> Result<usize, CliError> {
    let mut id = first_id;
    for c in curves {
        for (k, &(u, v)) in c.points.iter().enumerate() {
            let mut row = prefix.to_vec();
            row.extend([id.to_string(), u8::from(c.closed).to_string(), k.to_string(), num(u), num(v)]);
            t.row(row)?;
        }
        id += 1;
    }
    Ok(id)
}

fn write_screen(out: &mut OutDir, g: &ScreenGrid, svg: bool) -> Result<(), CliError> {
    let name = g.screen.name();
    let (du, dv) = g.screen.axes();
    let (u, v) = (du.label().to_string(), dv.label().to_string());
    let (ul, vl) = (format!("{u}_len"), format!("{v}_len"));

    let mut t = out.table(&format!("{name}_grid.csv"), &["i", "j", &u, &v, &ul, &vl, "v2"])?;
    for (j, row) in g.v2.iter().enumerate() {
        let vv = g.v_at(j);
        for (i, &val) in row.iter().enumerate() {
            let uu = g.u_at(i);
            t.row([i.to_string(), j.to_string(), num(uu), num(vv), num(uu + g.shift), num(vv + g.shift), num(val)])?;
        }
    }
    t.finish()?;

    let mut t = out.table(&format!("{name}_caustic.csv"), &["curve", "closed", "point", &u, &v])?;
    write_curves(&mut t, &[], 0, &g.caustic)?;
    t.finish()?;

    let mut t = out.table(&format!("{name}_ridges.csv"), &["stationary_in", "curve", "closed", "point", &u, &v])?;
    let next = write_curves(&mut t, std::slice::from_ref(&u), 0, &g.u_ridges)?;
    write_curves(&mut t, std::slice::from_ref(&v), next, &g.v_ridges)?;
    t.finish()?;

    if svg {
        out.text(&format!("{name}.svg"), &render_screen(g))?;
    }

    let closed = g.caustic.iter().filter(|c| c.closed).count();
    println!(
        "{name} {}: {}x{} grid, {} caustic curve(s) ({closed} closed), {} {u}-ridge(s), {} {v}-ridge(s)",
        g.symbol,
        g.resolution,
        g.resolution,
        g.caustic.len(),
        g.u_ridges.len(),
        g.v_ridges.len()
    );
    if g.empty_allowed_region {
        eprintln!("warning: {name}: V² <= 0 everywhere on the screen (degenerate network)");
    }
    Ok(())
}

pub fn run(args: Args) -> Result<(), CliError> {
    let q = spins::parse_quad(&args.spins, args.twice)?;
    let n = canonicalize(&q)?;
    if !(args.shift.is_finite() && args.shift >= 0.0) {
        return Err(CliError::Usage("--shift must be a non-negative number".into()));
    }
    let screens = if args.all { Screen::ALL.to_vec() } else { vec![args.screen] };
    let mut out = OutDir::create(&args.out)?;
    for s in &screens {
        let g = caustic_scan(&n, *s, args.resolution, args.shift)?;
        write_screen(&mut out, &g, args.svg)?;
    }
    if args.all {
        let egg = egg_surface(&n, args.resolution, args.shift)?;
        let mut t = out.table("xyz_shells.csv", &["fraction", "volume", "curve", "x", "y", "z"])?;
        for s in &egg.samples {
            t.row([num(s.fraction), num(s.volume), s.curve.to_string(), num(s.x), num(s.y), num(s.z)])?;
        }
        t.finish()?;
        println!("xyz: {} shells, V_max = {}", egg.shells.len(), egg.v_max);
    }
    let params = json!({
        "screens": screens.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "resolution": args.resolution,
        "shift": args.shift,
        "svg": args.svg,
        "canonical_twice": spins::quad_twice(&n.quad),
        "regge_applied": n.regge_applied,
    });
    out.finish("caustics", params, spins::quad_twice(&q))?;
    Ok(())
}
