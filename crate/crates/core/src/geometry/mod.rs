//! Classical tetrahedra behind 6j symbols: volumes from edge lengths,
//! caustics, ridges and constant-volume sections over the diagonal screens.

mod contour;
mod screen;
mod svg;

use nalgebra::{DMatrix, Matrix4};
use serde::Serialize;

use crate::wigner::SixJ;

pub use contour::{marching_squares, EdgeLocator, Polyline};
pub use screen::{
    caustic_scan, closing_y, egg_surface, Axis, EggSample, EggShell, EggSurface, ScreenGrid, DEFAULT_SHIFT,
    EGG_FRACTIONS,
};
pub use svg::render_screen;

/// Edge lengths of a tetrahedron `ABCD`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EdgeLengths {
    pub ab: f64,
    pub ac: f64,
    pub bc: f64,
    pub ad: f64,
    pub bd: f64,
    pub cd: f64,
}

impl EdgeLengths {
    pub fn new(ab: f64, ac: f64, bc: f64, ad: f64, bd: f64, cd: f64) -> Self {
        EdgeLengths { ab, ac, bc, ad, bd, cd }
    }

    /// Lengths from symbol entries `[j1..j6]` of `{j1 j2 j3; j4 j5 j6}`,
    /// placed so the faces are the four triads and each column is a pair of
    /// opposite edges.
    pub fn from_symbol_layout(j: [f64; 6]) -> Self {
        EdgeLengths { ab: j[2], ac: j[0], bc: j[1], ad: j[4], bd: j[3], cd: j[5] }
    }

    pub fn scale(&self, s: f64) -> Self {
        let e = self.to_matrix();
        Self::from_matrix(|i, k| s * e[i][k])
    }

    /// Squared-distance table indexed by vertex (A=0 .. D=3).
    pub fn to_matrix(&self) -> [[f64; 4]; 4] {
        let EdgeLengths { ab, ac, bc, ad, bd, cd } = *self;
        [[0.0, ab, ac, ad], [ab, 0.0, bc, bd], [ac, bc, 0.0, cd], [ad, bd, cd, 0.0]]
    }

    fn from_matrix(m: impl Fn(usize, usize) -> f64) -> Self {
        EdgeLengths { ab: m(0, 1), ac: m(0, 2), bc: m(1, 2), ad: m(0, 3), bd: m(1, 3), cd: m(2, 3) }
    }

    /// The same tetrahedron with vertex `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: [usize; 4]) -> Self {
        let m = self.to_matrix();
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for k in 0..4 {
                out[perm[i]][perm[k]] = m[i][k];
            }
        }
        Self::from_matrix(|i, k| out[i][k])
    }

    /// Faces `ABC, ABD, ACD, BCD` as edge triples.
    pub fn faces(&self) -> [[f64; 3]; 4] {
        let EdgeLengths { ab, ac, bc, ad, bd, cd } = *self;
        [[ab, bc, ac], [ab, bd, ad], [ac, cd, ad], [bc, cd, bd]]
    }
}

/// Tetrahedron for `{j1 j2 j3; j4 j5 j6}` with `shift` added to every
/// entry. In `{a b x; c d z}` layout: `AB=x, AC=a, BC=b, AD=d, BD=c, CD=z`.
pub fn edges_for_sixj(s: &SixJ, shift: f64) -> EdgeLengths {
    EdgeLengths::from_symbol_layout(s.j.map(|j| j.to_f64() + shift))
}

/// Squared edges at `A` and their opposites, `(u², v², w², U², V², W²)` with
/// `u=AB, v=AC, w=AD, U=CD, V=BD, W=BC`.
fn squared(e: &EdgeLengths) -> [f64; 6] {
    [e.ab, e.ac, e.ad, e.cd, e.bd, e.bc].map(|l| l * l)
}

/// `144·V²` from squared edges (Piero's formula).
fn piero(s: [f64; 6]) -> f64 {
    let [p, q, r, pp, qq, rr] = s;
    let a = q + r - pp;
    let b = r + p - qq;
    let c = p + q - rr;
    4.0 * p * q * r - p * a * a - q * b * b - r * c * c + a * b * c
}

/// `V²` of the tetrahedron. Negative when no such tetrahedron exists in
/// Euclidean space.
pub fn cayley_menger_v2(e: &EdgeLengths) -> f64 {
    piero(squared(e)) / 144.0
}

/// `∂V²/∂(ℓ²)` for each edge, in field order `ab, ac, bc, ad, bd, cd`.
pub fn cayley_menger_gradient_sq(e: &EdgeLengths) -> [f64; 6] {
    let [p, q, r, pp, qq, rr] = squared(e);
    let a = q + r - pp;
    let b = r + p - qq;
    let c = p + q - rr;
    let dp = 4.0 * q * r - a * a - 2.0 * q * b - 2.0 * r * c + a * (b + c);
    let dq = 4.0 * r * p - b * b - 2.0 * r * c - 2.0 * p * a + b * (c + a);
    let dr = 4.0 * p * q - c * c - 2.0 * p * a - 2.0 * q * b + c * (a + b);
    let dpp = 2.0 * p * a - b * c;
    let dqq = 2.0 * q * b - c * a;
    let drr = 2.0 * r * c - a * b;
    // u=ab, v=ac, w=ad, U=cd, V=bd, W=bc
    [dp, dq, drr, dr, dqq, dpp].map(|g| g / 144.0)
}

/// Determinant of the bordered squared-distance matrix of `n` points.
pub fn bordered_determinant(sq_dist: &[Vec<f64>]) -> f64 {
    let n = sq_dist.len();
    let m = DMatrix::from_fn(n + 1, n + 1, |i, k| match (i, k) {
        (0, 0) => 0.0,
        (0, _) | (_, 0) => 1.0,
        _ => sq_dist[i - 1][k - 1],
    });
    m.determinant()
}

/// `V²` from the 5×5 Cayley-Menger determinant, `288·V² = det`.
pub fn cayley_menger_det_v2(e: &EdgeLengths) -> f64 {
    let m = e.to_matrix();
    let sq: Vec<Vec<f64>> = m.iter().map(|row| row.iter().map(|l| l * l).collect()).collect();
    bordered_determinant(&sq) / 288.0
}

/// `16·Area²` by Heron's formula in product form.
pub fn heron_16_area_sq(a: f64, b: f64, c: f64) -> f64 {
    (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c)
}

/// The 4×4 Cayley-Menger minor of a triangle; equals `-16·Area²`.
pub fn triangle_minor(a: f64, b: f64, c: f64) -> f64 {
    let (a2, b2, c2) = (a * a, b * b, c * c);
    Matrix4::new(
        0.0, 1.0, 1.0, 1.0, //
        1.0, 0.0, c2, b2, //
        1.0, c2, 0.0, a2, //
        1.0, b2, a2, 0.0,
    )
    .determinant()
}

/// Triangle area, zero when the sides do not close.
pub fn heron_area(a: f64, b: f64, c: f64) -> f64 {
    heron_16_area_sq(a, b, c).max(0.0).sqrt() / 4.0
}
