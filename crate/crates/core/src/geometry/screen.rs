use rayon::prelude::*;
use serde::Serialize;

use super::contour::{marching_squares, Polyline};
use super::{cayley_menger_gradient_sq, cayley_menger_v2, heron_16_area_sq, EdgeLengths};
use crate::numeric::HalfInt;
use crate::regge::{Diagonal, Screen, ScreenSymbol, SevenSpinNetwork};
use crate::Error;

/// Semiclassical length `j + 1/2`.
pub const DEFAULT_SHIFT: f64 = 0.5;

/// One screen axis. Samples run over the quantum range widened by one unit on
/// each side (never below zero length) so the classical region, which pokes
/// out of the quantum range by up to `shift`, is sampled whole.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Axis {
    pub diagonal: Diagonal,
    pub range: (HalfInt, HalfInt),
    pub lo: f64,
    pub hi: f64,
}

impl Axis {
    fn new(diagonal: Diagonal, range: (HalfInt, HalfInt), shift: f64) -> Self {
        Axis { diagonal, range, lo: (range.0.to_f64() - 1.0).max(-shift), hi: range.1.to_f64() + 1.0 }
    }

    /// Coordinate at fractional sample index `t` of `n`.
    pub fn at(&self, t: f64, n: usize) -> f64 {
        self.lo + (self.hi - self.lo) * t / (n - 1) as f64
    }
}

/// `V²` sampled over one screen, with its caustic and ridges. Curves are in
/// quantum-number coordinates `(u, v)`; add `shift` for lengths.
#[derive(Clone, Debug)]
pub struct ScreenGrid {
    pub screen: Screen,
    pub symbol: ScreenSymbol,
    pub u: Axis,
    pub v: Axis,
    pub resolution: usize,
    pub shift: f64,
    /// `v2[j][i]` at `(u_i, v_j)`.
    pub v2: Vec<Vec<f64>>,
    /// `V²` where all four faces close and `-|V²|` elsewhere. Outside the
    /// face region two broken triangles can make `V²` positive again; this
    /// field removes those lobes and is continuous, since `V² ≤ 0` wherever a
    /// face degenerates.
    pub allowed: Vec<Vec<f64>>,
    /// Zero level of `allowed`.
    pub caustic: Vec<Polyline>,
    /// `∂V²/∂u = 0` inside the allowed region.
    pub u_ridges: Vec<Polyline>,
    /// `∂V²/∂v = 0` inside the allowed region.
    pub v_ridges: Vec<Polyline>,
    /// Set when `V² ≤ 0` on every sample.
    pub empty_allowed_region: bool,
}

impl ScreenGrid {
    pub fn u_at(&self, i: usize) -> f64 {
        self.u.at(i as f64, self.resolution)
    }

    pub fn v_at(&self, j: usize) -> f64 {
        self.v.at(j as f64, self.resolution)
    }

    pub fn edges(&self, u: f64, v: f64) -> EdgeLengths {
        EdgeLengths::from_symbol_layout(self.symbol.lengths(u, v, self.shift))
    }

    pub fn v2_at(&self, u: f64, v: f64) -> f64 {
        cayley_menger_v2(&self.edges(u, v))
    }

    /// Whether every face satisfies the triangle inequalities.
    pub fn faces_close(&self, u: f64, v: f64) -> bool {
        self.edges(u, v).faces().iter().all(|&[a, b, c]| heron_16_area_sq(a, b, c) >= 0.0)
    }

    /// The [`Self::allowed`] field at a point.
    pub fn allowed_at(&self, u: f64, v: f64) -> f64 {
        let v2 = self.v2_at(u, v);
        if self.faces_close(u, v) {
            v2
        } else {
            -v2.abs()
        }
    }

    /// `(∂V²/∂u, ∂V²/∂v)`. The free diagonals sit on the opposite edges `AB`
    /// and `CD`.
    pub fn gradient(&self, u: f64, v: f64) -> (f64, f64) {
        let e = self.edges(u, v);
        let g = cayley_menger_gradient_sq(&e);
        (2.0 * e.ab * g[0], 2.0 * e.cd * g[5])
    }

    pub fn max_abs_v2(&self) -> f64 {
        self.v2.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    fn to_coords(&self, mut p: Polyline) -> Polyline {
        let n = self.resolution;
        for q in &mut p.points {
            *q = (self.u.at(q.0, n), self.v.at(q.1, n));
        }
        p
    }
}

/// Sample `V²` over a screen and extract the caustic `V² = 0` and both
/// families of ridges.
pub fn caustic_scan(n: &SevenSpinNetwork, screen: Screen, resolution: usize, shift: f64) -> Result<ScreenGrid, Error> {
    if resolution < 16 {
        return Err(Error::Invalid(format!("resolution {resolution} is below 16")));
    }
    let (du, dv) = screen.axes();
    let mut grid = ScreenGrid {
        screen,
        symbol: n.screen_symbol(screen),
        u: Axis::new(du, n.range(du), shift),
        v: Axis::new(dv, n.range(dv), shift),
        resolution,
        shift,
        v2: Vec::new(),
        allowed: Vec::new(),
        caustic: Vec::new(),
        u_ridges: Vec::new(),
        v_ridges: Vec::new(),
        empty_allowed_region: false,
    };
    let g = &grid;
    let (v2, allowed): (Vec<Vec<f64>>, Vec<Vec<f64>>) = (0..resolution)
        .into_par_iter()
        .map(|j| {
            (0..resolution)
                .map(|i| {
                    let (u, v) = (g.u_at(i), g.v_at(j));
                    let v2 = g.v2_at(u, v);
                    (v2, if g.faces_close(u, v) { v2 } else { -v2.abs() })
                })
                .unzip()
        })
        .unzip();
    let empty = allowed.iter().flatten().all(|&v| v <= 0.0);

    let caustic: Vec<Polyline> = if empty {
        Vec::new()
    } else {
        marching_squares(&allowed, 0.0, None).into_iter().map(|p| g.to_coords(p)).collect()
    };

    let ridge = |component: fn((f64, f64)) -> f64| -> Vec<Polyline> {
        let field: Vec<Vec<f64>> = (0..resolution)
            .into_par_iter()
            .map(|j| (0..resolution).map(|i| component(g.gradient(g.u_at(i), g.v_at(j)))).collect())
            .collect();
        let at = |p: (f64, f64)| component(g.gradient(g.u.at(p.0, resolution), g.v.at(p.1, resolution)));
        let locate = |p0: (usize, usize), p1: (usize, usize)| {
            let pt =
                |t: f64| (p0.0 as f64 + t * (p1.0 as f64 - p0.0 as f64), p0.1 as f64 + t * (p1.1 as f64 - p0.1 as f64));
            bisect(|t| at(pt(t)), 0.0, 1.0)
        };
        marching_squares(&field, 0.0, Some(&locate))
            .into_iter()
            .flat_map(|p| clip(g.to_coords(p), |(u, v)| g.allowed_at(u, v) > 0.0))
            .collect()
    };
    let u_ridges = ridge(|d| d.0);
    let v_ridges = ridge(|d| d.1);

    grid.v2 = v2;
    grid.allowed = allowed;
    grid.caustic = caustic;
    grid.u_ridges = u_ridges;
    grid.v_ridges = v_ridges;
    grid.empty_allowed_region = empty;
    Ok(grid)
}

/// The runs of `p` whose points satisfy `keep`. A closed curve kept whole
/// stays closed.
fn clip(p: Polyline, keep: impl Fn((f64, f64)) -> bool) -> Vec<Polyline> {
    let flags: Vec<bool> = p.points.iter().map(|&q| keep(q)).collect();
    if flags.iter().all(|&f| f) {
        return vec![p];
    }
    let mut runs: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut current = Vec::new();
    for (q, f) in p.points.iter().zip(&flags) {
        if *f {
            current.push(*q);
        } else if !current.is_empty() {
            runs.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        // A closed curve wraps: its last run continues into the first.
        if p.closed && flags[0] && !runs.is_empty() {
            current.extend(runs.remove(0));
        }
        runs.push(current);
    }
    runs.into_iter().filter(|r| r.len() >= 2).map(|points| Polyline { points, closed: false }).collect()
}

/// Root of `f` in `[lo, hi]` given a sign change, to about 1e-14.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A point on a constant-volume shell of the xyz view.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EggSample {
    pub fraction: f64,
    pub curve: usize,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub volume: f64,
}

/// Contours of one volume level over the xz screen.
#[derive(Clone, Debug)]
pub struct EggShell {
    pub fraction: f64,
    pub volume: f64,
    pub curves: Vec<Polyline>,
}

#[derive(Clone, Debug)]
pub struct EggSurface {
    pub v_max: f64,
    pub shells: Vec<EggShell>,
    pub samples: Vec<EggSample>,
}

/// Shell fractions of `V_max`.
pub const EGG_FRACTIONS: [f64; 4] = [0.0, 0.25, 0.5, 0.75];

/// Constant-volume shells in diagonal coordinates. Each `(x, z)` point is
/// lifted to `y` through `x² + y² + z² = a² + b² + c² + d²` (shifted
/// lengths), which holds for every closed quadrilateral of vectors.
pub fn egg_surface(n: &SevenSpinNetwork, resolution: usize, shift: f64) -> Result<EggSurface, Error> {
    let grid = caustic_scan(n, Screen::Xz, resolution, shift)?;
    let v_max = grid.allowed.iter().flatten().fold(0.0f64, |m, &v| m.max(v)).sqrt();

    let mut shells = Vec::new();
    let mut samples = Vec::new();
    let mut curve_id = 0;
    for fraction in EGG_FRACTIONS {
        let volume = fraction * v_max;
        let curves = if fraction == 0.0 {
            grid.caustic.clone()
        } else if v_max > 0.0 {
            marching_squares(&grid.allowed, volume * volume, None).into_iter().map(|p| grid.to_coords(p)).collect()
        } else {
            Vec::new()
        };
        for c in &curves {
            for &(x, z) in &c.points {
                let y = closing_y(n, x, z, shift);
                samples.push(EggSample { fraction, curve: curve_id, x, y, z, volume });
            }
            curve_id += 1;
        }
        shells.push(EggShell { fraction, volume, curves });
    }
    Ok(EggSurface { v_max, shells, samples })
}

/// The y diagonal (quantum coordinate) that closes the quadrilateral with
/// the given x and z.
pub fn closing_y(n: &SevenSpinNetwork, x: f64, z: f64, shift: f64) -> f64 {
    let sum_sq: f64 = n.quad.sides().iter().map(|j| (j.to_f64() + shift).powi(2)).sum();
    let (xl, zl) = (x + shift, z + shift);
    (sum_sq - xl * xl - zl * zl).max(0.0).sqrt() - shift
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regge::{canonicalize, QuadSpins};

    fn net(q: [i64; 4]) -> SevenSpinNetwork {
        canonicalize(&QuadSpins::from_int(q)).unwrap()
    }

    #[test]
    fn generic_case_has_one_closed_caustic() {
        let g = caustic_scan(&net([30, 45, 55, 60]), Screen::Xz, 256, DEFAULT_SHIFT).unwrap();
        assert!(!g.empty_allowed_region);
        assert_eq!(g.caustic.len(), 1);
        assert!(g.caustic[0].closed);
        // Inside the rectangle of classical lengths, up to interpolation error
        // at the four tangencies.
        for &(x, z) in &g.caustic[0].points {
            assert!((14.499..=75.501).contains(&x) && (29.499..=90.501).contains(&z), "{x} {z}");
        }
        // Interior point.
        let (cx, cz) = g.caustic[0].points.iter().fold((0.0, 0.0), |s, p| (s.0 + p.0, s.1 + p.1));
        let k = g.caustic[0].points.len() as f64;
        assert!(g.v2_at(cx / k, cz / k) > 0.0);
    }

    #[test]
    fn every_screen_has_one_closed_caustic() {
        // Corners where two faces break at once carry V² > 0 lobes that must
        // not show up as caustics.
        for q in [[30, 45, 55, 60], [100, 110, 130, 140], [20, 20, 30, 30]] {
            for s in Screen::ALL {
                let g = caustic_scan(&net(q), s, 128, DEFAULT_SHIFT).unwrap();
                assert_eq!(g.caustic.len(), 1, "{q:?} {s:?}");
                assert!(g.caustic[0].closed, "{q:?} {s:?}");
                for r in g.u_ridges.iter().chain(&g.v_ridges) {
                    assert!(r.points.iter().all(|&(u, v)| g.allowed_at(u, v) > 0.0));
                }
            }
        }
    }

    #[test]
    fn caustic_error_shrinks_with_resolution() {
        let n = net([30, 45, 55, 60]);
        let worst = |r: usize| {
            let g = caustic_scan(&n, Screen::Xz, r, DEFAULT_SHIFT).unwrap();
            let scale = g.max_abs_v2();
            g.caustic.iter().flat_map(|c| c.points.iter()).map(|&(u, v)| g.v2_at(u, v).abs()).fold(0.0, f64::max)
                / scale
        };
        let (coarse, fine) = (worst(64), worst(256));
        assert!(fine < coarse / 3.0, "{coarse} {fine}");
        assert!(fine < 1e-3);
    }

    #[test]
    fn symmetric_case_is_symmetric() {
        let g = caustic_scan(&net([100; 4]), Screen::Xz, 128, DEFAULT_SHIFT).unwrap();
        let scale = g.max_abs_v2();
        for j in 0..g.resolution {
            for i in 0..g.resolution {
                assert!((g.v2[j][i] - g.v2[i][j]).abs() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn ridges_end_on_the_caustic() {
        let g = caustic_scan(&net([30, 45, 55, 60]), Screen::Xz, 128, DEFAULT_SHIFT).unwrap();
        assert!(!g.u_ridges.is_empty() && !g.v_ridges.is_empty());
        let cell = (g.u.hi - g.u.lo).max(g.v.hi - g.v.lo) / (g.resolution - 1) as f64;
        let mut ends = 0;
        for r in g.u_ridges.iter().chain(&g.v_ridges).filter(|r| !r.closed) {
            for &(u, v) in [r.points[0], *r.points.last().unwrap()].iter() {
                let d = g.caustic[0]
                    .points
                    .iter()
                    .map(|&(cu, cv)| ((cu - u).powi(2) + (cv - v).powi(2)).sqrt())
                    .fold(f64::INFINITY, f64::min);
                assert!(d <= 2.0 * cell, "ridge end ({u}, {v}) is {d} from the caustic");
                ends += 1;
            }
        }
        assert!(ends >= 4);
    }

    #[test]
    fn ridge_points_are_stationary() {
        let g = caustic_scan(&net([30, 45, 55, 60]), Screen::Xz, 64, DEFAULT_SHIFT).unwrap();
        let scale = g.max_abs_v2() / (g.u.hi - g.u.lo);
        for r in &g.u_ridges {
            for &(u, v) in &r.points {
                assert!(g.gradient(u, v).0.abs() <= 1e-9 * scale);
            }
        }
    }

    #[test]
    fn degenerate_network_warns() {
        // Zero-length side: every tetrahedron is flat.
        let n = canonicalize(&QuadSpins::from_int([0, 3, 3, 0])).unwrap();
        let g = caustic_scan(&n, Screen::Xz, 32, 0.0).unwrap();
        assert!(g.empty_allowed_region);
        assert!(g.caustic.is_empty());
        assert!(caustic_scan(&n, Screen::Xz, 8, 0.0).is_err());
    }

    #[test]
    fn egg_shells_are_nested() {
        let n = net([30, 45, 55, 60]);
        let egg = egg_surface(&n, 128, DEFAULT_SHIFT).unwrap();
        assert!(egg.v_max > 0.0);
        assert_eq!(egg.shells.len(), 4);
        for w in egg.shells.windows(2) {
            assert_eq!(w[0].curves.len(), 1);
            assert_eq!(w[1].curves.len(), 1);
            let (outer, inner) = (&w[0].curves[0], &w[1].curves[0]);
            assert!(inner.closed && outer.closed);
            for &p in &inner.points {
                assert!(outer.contains(p));
            }
            assert!(inner.area().abs() < outer.area().abs());
        }
    }

    #[test]
    fn the_three_tetrahedra_share_a_volume() {
        let n = net([30, 45, 55, 60]);
        let s = DEFAULT_SHIFT;
        let xz = n.screen_symbol(Screen::Xz);
        let xy = n.screen_symbol(Screen::Xy);
        let yz = n.screen_symbol(Screen::Yz);
        for (x, z) in [(40.0, 60.0), (30.0, 50.0), (55.0, 70.0)] {
            let y = closing_y(&n, x, z, s);
            let v_xz = cayley_menger_v2(&EdgeLengths::from_symbol_layout(xz.lengths(x, z, s)));
            let v_xy = cayley_menger_v2(&EdgeLengths::from_symbol_layout(xy.lengths(x, y, s)));
            let v_yz = cayley_menger_v2(&EdgeLengths::from_symbol_layout(yz.lengths(y, z, s)));
            assert!(v_xz > 0.0);
            assert!((v_xz - v_xy).abs() <= 1e-9 * v_xz, "{v_xz} {v_xy}");
            assert!((v_xz - v_yz).abs() <= 1e-9 * v_xz, "{v_xz} {v_yz}");
        }
    }

    #[test]
    fn zero_shell_is_the_caustic() {
        let n = net([100, 110, 130, 140]);
        let egg = egg_surface(&n, 64, DEFAULT_SHIFT).unwrap();
        let g = caustic_scan(&n, Screen::Xz, 64, DEFAULT_SHIFT).unwrap();
        assert_eq!(egg.shells[0].curves, g.caustic);
    }
}
