use std::fmt::Write;

use super::contour::Polyline;
use super::screen::ScreenGrid;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;

/// Schematic SVG of a screen: allowed region shading, caustic, ridges.
pub fn render_screen(g: &ScreenGrid) -> String {
    let sx = |u: f64| MARGIN + (u - g.u.lo) / (g.u.hi - g.u.lo) * SIZE;
    let sy = |v: f64| MARGIN + SIZE - (v - g.v.lo) / (g.v.hi - g.v.lo) * SIZE;
    let total = SIZE + 2.0 * MARGIN;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{total}" height="{total}" fill="white"/>"#);

    let n = g.resolution;
    let cell = SIZE / (n - 1) as f64;
    for (j, row) in g.allowed.iter().enumerate() {
        for (i, &v) in row.iter().enumerate() {
            if v > 0.0 {
                let _ = writeln!(
                    s,
                    r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#dde8f5"/>"##,
                    sx(g.u_at(i)) - cell / 2.0,
                    sy(g.v_at(j)) - cell / 2.0,
                    cell,
                    cell
                );
            }
        }
    }

    let path = |s: &mut String, p: &Polyline, colour: &str, width: f64| {
        let mut d = String::new();
        for (k, &(u, v)) in p.points.iter().enumerate() {
            let _ = write!(d, "{}{:.2},{:.2} ", if k == 0 { "M" } else { "L" }, sx(u), sy(v));
        }
        if p.closed {
            d.push('Z');
        }
        let _ = writeln!(s, r#"<path d="{d}" fill="none" stroke="{colour}" stroke-width="{width}"/>"#);
    };
    for p in &g.u_ridges {
        path(&mut s, p, "#c0392b", 1.0);
    }
    for p in &g.v_ridges {
        path(&mut s, p, "#27ae60", 1.0);
    }
    for p in &g.caustic {
        path(&mut s, p, "black", 2.0);
    }

    let _ =
        writeln!(s, r#"<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="none" stroke="gray"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="14" text-anchor="middle">{}</text>"#,
        MARGIN + SIZE / 2.0,
        MARGIN / 2.0 + 5.0,
        g.symbol
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
        MARGIN + SIZE / 2.0,
        total - 10.0,
        g.u.diagonal
    );
    let _ = writeln!(
        s,
        r#"<text x="12" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
        MARGIN + SIZE / 2.0,
        g.v.diagonal
    );
    s.push_str("</svg>\n");
    s
}
