//! The volume operator `K = J_a·(J_b×J_c)` on the closure subspace of four
//! coupled spins.
//!
//! In any of the three diagonal bases `K` is tridiagonal with zero diagonal
//! and purely imaginary couplings `⟨x|K|x-1⟩ = i·α(x)`. After the phase change
//! `|x_k⟩ -> i^k |x_k⟩` it is the real symmetric matrix with off-diagonal `α`,
//! and that real form is what [`TridiagonalOperator`] stores.

mod eigen;
mod oracle;

use serde::Serialize;

use crate::geometry::heron_area;
use crate::numeric::{half_int_range, HalfInt};
use crate::regge::{Diagonal, SevenSpinNetwork};

pub use eigen::{diagonalize, eigenvalues, VolumeSpectrum};
pub use oracle::{oracle_k_matrix, OracleReport, ORACLE_MAX_TWICE};

/// Real symmetric tridiagonal form of `K` with zero diagonal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TridiagonalOperator {
    pub basis: Diagonal,
    pub labels: Vec<HalfInt>,
    /// `offdiag[k]` couples `labels[k]` and `labels[k+1]`.
    pub offdiag: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// `T·v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n];
        for k in 0..n.saturating_sub(1) {
            out[k] += self.offdiag[k] * v[k + 1];
            out[k + 1] += self.offdiag[k] * v[k];
        }
        out
    }

    /// Upper bound on the spectral radius.
    pub fn norm_bound(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|k| {
                let left = if k > 0 { self.offdiag[k - 1] } else { 0.0 };
                let right = if k + 1 < n { self.offdiag[k] } else { 0.0 };
                left + right
            })
            .fold(0.0, f64::max)
    }
}

/// `α(x)` for the coupling `(p1 p2)x (p3 p4)x`, grouping factors in pairs so
/// spins up to 10⁴ stay far from overflow.
fn alpha(x: f64, p: [f64; 4]) -> f64 {
    let [p1, p2, p3, p4] = p;
    let left = (x * x - (p1 - p2) * (p1 - p2)) * ((p1 + p2 + 1.0) * (p1 + p2 + 1.0) - x * x);
    let right = (x * x - (p3 - p4) * (p3 - p4)) * ((p3 + p4 + 1.0) * (p3 + p4 + 1.0) - x * x);
    let den = (2.0 * x - 1.0) * (2.0 * x + 1.0);
    0.25 * left.max(0.0).sqrt() * (right.max(0.0) / den).sqrt()
}

/// The sides coupled by `basis`: x pairs `(a b|c d)`, y `(a c|b d)`, z `(a d|b c)`.
fn paired_sides(n: &SevenSpinNetwork, basis: Diagonal) -> [HalfInt; 4] {
    let s = n.quad.sides();
    let [[i, j], [k, l]] = basis.pairing();
    [s[i], s[j], s[k], s[l]]
}

/// `K` in the `basis` diagonal's eigenbasis.
pub fn build_k_matrix(n: &SevenSpinNetwork, basis: Diagonal) -> TridiagonalOperator {
    let p = paired_sides(n, basis);
    let lo = (p[0] - p[1]).abs().max((p[2] - p[3]).abs());
    let hi = (p[0] + p[1]).min(p[2] + p[3]);
    let labels: Vec<HalfInt> = half_int_range(lo, hi).collect();
    let pf = p.map(|j| j.to_f64());
    let offdiag = labels.iter().skip(1).map(|x| alpha(x.to_f64(), pf)).collect();
    TridiagonalOperator { basis, labels, offdiag }
}

/// Classical extremes `U± = ±4·A_ab·A_cd/x` of the triple product at fixed
/// diagonal `x`, over the classical interval of `x`. Coordinates are
/// reported in quantum numbers (`x = length - shift`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PotentialCurve {
    pub shift: f64,
    pub x: Vec<f64>,
    pub u_plus: Vec<f64>,
    pub u_minus: Vec<f64>,
}

impl PotentialCurve {
    pub fn max_plus(&self) -> f64 {
        self.u_plus.iter().copied().fold(0.0, f64::max)
    }

    pub fn min_minus(&self) -> f64 {
        self.u_minus.iter().copied().fold(0.0, f64::min)
    }
}

/// `U⁺` at diagonal length `len` for shifted sides.
fn u_plus_at(len: f64, s: [f64; 4]) -> f64 {
    if len <= 0.0 {
        return 0.0;
    }
    4.0 * heron_area(s[0], s[1], len) * heron_area(s[2], s[3], len) / len
}

/// Shifted-length interval on which both triangles of the x coupling close.
fn classical_interval(n: &SevenSpinNetwork, shift: f64) -> (f64, [f64; 4], f64) {
    let s = n.quad.sides().map(|j| j.to_f64() + shift);
    let lo = (s[0] - s[1]).abs().max((s[2] - s[3]).abs());
    let hi = (s[0] + s[1]).min(s[2] + s[3]);
    (lo, s, hi)
}

/// `U±` on `samples` evenly spaced points covering the classical interval.
/// Both ends are degenerate triangles and carry exact zeros.
pub fn potentials(n: &SevenSpinNetwork, samples: usize, shift: f64) -> PotentialCurve {
    let samples = samples.max(2);
    let (lo, s, hi) = classical_interval(n, shift);
    let mut x = Vec::with_capacity(samples);
    let mut u_plus = Vec::with_capacity(samples);
    for k in 0..samples {
        let len = lo + (hi - lo) * k as f64 / (samples - 1) as f64;
        let u = if k == 0 || k == samples - 1 { 0.0 } else { u_plus_at(len, s) };
        x.push(len - shift);
        u_plus.push(u);
    }
    let u_minus = u_plus.iter().map(|u| -u).collect();
    PotentialCurve { shift, x, u_plus, u_minus }
}

/// `U⁺` at a quantum-number diagonal value.
pub fn u_plus(n: &SevenSpinNetwork, x: f64, shift: f64) -> f64 {
    let (lo, s, hi) = classical_interval(n, shift);
    let len = x + shift;
    if len <= lo || len >= hi {
        return 0.0;
    }
    u_plus_at(len, s)
}

/// Phase-space estimate of the number of eigenvalues in `[0, v]`:
/// `(1/2π) ∫ 2·arcsin(min(v/U⁺, 1)) dx`, trapezoidal on `samples` points.
pub fn phase_space_count(n: &SevenSpinNetwork, v: f64, samples: usize, shift: f64) -> f64 {
    let pc = potentials(n, samples, shift);
    let f: Vec<f64> = pc
        .u_plus
        .iter()
        .map(|&u| if u <= 0.0 || v >= u { std::f64::consts::PI } else { 2.0 * (v / u).asin() })
        .collect();
    let f: Vec<f64> = if v <= 0.0 { vec![0.0; f.len()] } else { f };
    let h = pc.x[1] - pc.x[0];
    let integral: f64 = f.windows(2).map(|w| 0.5 * h * (w[0] + w[1])).sum();
    integral / (2.0 * std::f64::consts::PI)
}

/// `|v_k(x)|` with rows ordered by eigenvalue.
pub fn eigenfunction_grid(spec: &VolumeSpectrum) -> Vec<Vec<f64>> {
    spec.eigenvectors.iter().map(|v| v.iter().map(|c| c.abs()).collect()).collect()
}

/// Candidate geometric volume `√(2|K|/9)` for an eigenvalue of `K`.
pub fn geometric_volume(k: f64) -> f64 {
    (2.0 * k.abs() / 9.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regge::{canonicalize, QuadSpins};

    fn net_twice(t: [i64; 4]) -> SevenSpinNetwork {
        canonicalize(&QuadSpins::from_twice(t)).unwrap()
    }

    #[test]
    fn four_halves() {
        let t = build_k_matrix(&net_twice([1; 4]), Diagonal::X);
        assert_eq!(t.dim(), 2);
        assert!((t.offdiag[0] - 3f64.sqrt() / 4.0).abs() < 1e-15);
        let ev = eigenvalues(&t).unwrap();
        assert!((ev[1] - 3f64.sqrt() / 4.0).abs() < 1e-15);
        assert_eq!(ev[0], -ev[1]);
    }

    #[test]
    fn dims_follow_the_smallest_side() {
        let n = net_twice([200; 4]);
        for d in Diagonal::ALL {
            assert_eq!(build_k_matrix(&n, d).dim(), 201);
        }
        let n = net_twice([60, 90, 110, 120]);
        for d in Diagonal::ALL {
            let t = build_k_matrix(&n, d);
            assert_eq!(t.dim(), 61);
            assert!(t.offdiag.iter().all(|&a| a > 0.0));
        }
    }

    #[test]
    fn apply_matches_dense() {
        let t = build_k_matrix(&net_twice([3, 5, 6, 8]), Diagonal::Y);
        let v: Vec<f64> = (0..t.dim()).map(|k| (k as f64 + 1.0).sin()).collect();
        let w = t.apply(&v);
        for i in 0..t.dim() {
            let mut s = 0.0;
            if i > 0 {
                s += t.offdiag[i - 1] * v[i - 1];
            }
            if i + 1 < t.dim() {
                s += t.offdiag[i] * v[i + 1];
            }
            assert!((w[i] - s).abs() < 1e-14);
        }
    }

    #[test]
    fn potentials_are_odd_and_vanish_at_the_ends() {
        for q in [[30, 45, 55, 60], [100, 110, 130, 140]] {
            let n = canonicalize(&QuadSpins::from_int(q)).unwrap();
            let p = potentials(&n, 301, 0.5);
            for (u, v) in p.u_plus.iter().zip(&p.u_minus) {
                assert_eq!(*v, -*u);
            }
            assert_eq!(p.u_plus[0], 0.0);
            assert_eq!(*p.u_plus.last().unwrap(), 0.0);
            // Near the ends the curve falls continuously towards zero.
            let m = p.max_plus();
            assert!(m > 0.0 && m.is_finite());
            assert!(p.u_plus[1] < 0.2 * m && p.u_plus[299] < 0.2 * m);
            let (lo, s, hi) = classical_interval(&n, 0.5);
            assert!(u_plus_at(lo + 1e-12, s) < 1e-3 * m);
            assert!(u_plus_at(hi - 1e-12, s) < 1e-3 * m);
        }
    }

    #[test]
    fn isosceles_potential_closed_form() {
        // a=b=c=d: U⁺ = x(4a² - x²)/4 in lengths.
        let n = net_twice([200; 4]);
        let a = 100.5;
        for x in [10.0, 57.3, 120.0, 199.0] {
            let want = (x + 0.5) * (4.0 * a * a - (x + 0.5) * (x + 0.5)) / 4.0;
            assert!((u_plus(&n, x, 0.5) - want).abs() < 1e-9 * want);
        }
    }

    #[test]
    fn phase_space_count_is_monotone_and_saturates() {
        let n = net_twice([60, 90, 110, 120]);
        let p = potentials(&n, 401, 0.5);
        let top = p.max_plus();
        let mut last = -1.0;
        for k in 0..=20 {
            let c = phase_space_count(&n, top * k as f64 / 20.0, 401, 0.5);
            assert!(c >= last);
            last = c;
        }
        // At the top the count is half the classical interval width.
        let width = p.x.last().unwrap() - p.x[0];
        assert!((last - width / 2.0).abs() < 1e-9);
    }

    #[test]
    fn conversion_helper() {
        assert!((geometric_volume(-4.5) - 1.0).abs() < 1e-15);
    }
}
