//! `K` built from explicit spin matrices on the four-spin tensor product.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::numeric::HalfInt;
use crate::regge::QuadSpins;
use crate::Error;

/// Largest `2j` the oracle accepts.
pub const ORACLE_MAX_TWICE: i64 = 4;

/// Result of the brute-force construction.
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    /// Dimension of the total-spin-zero subspace.
    pub dim: usize,
    /// Sorted spectrum of `J_a·(J_b×J_c)` on that subspace.
    pub eigenvalues: Vec<f64>,
    /// Largest entry of `K_i - K_1` for `K_2 = J_b·(J_c×J_d)`,
    /// `K_3 = J_a·(J_d×J_c)`, `K_4 = J_a·(J_b×J_d)` against
    /// `K_1 = J_a·(J_b×J_c)`, all restricted to the subspace.
    pub equal_deviation: [f64; 3],
    /// Largest entry of `K_i + K_1`, same order.
    pub opposite_deviation: [f64; 3],
    /// Largest component of `K_1 v` outside the subspace, over basis vectors `v`.
    pub leakage: f64,
}

struct Site {
    dim: usize,
    // Jx, Jy, Jz
    ops: [DMatrix<Complex64>; 3],
}

fn spin_site(j: HalfInt) -> Site {
    let n = j.dim() as usize;
    let jf = j.to_f64();
    let m = |i: usize| jf - i as f64;
    let mut plus = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        // |m_i⟩ -> |m_i + 1⟩ = |m_{i-1}⟩
        let mi = m(i);
        plus[(i - 1, i)] = (jf * (jf + 1.0) - mi * (mi + 1.0)).sqrt();
    }
    let minus = plus.transpose();
    let c = |x: f64| Complex64::new(x, 0.0);
    let jx = (&plus + &minus).map(|x| c(x / 2.0));
    let jy = (&plus - &minus).map(|x| Complex64::new(0.0, -x / 2.0));
    let jz = DMatrix::from_fn(n, n, |a, b| if a == b { c(m(a)) } else { c(0.0) });
    Site { dim: n, ops: [jx, jy, jz] }
}

struct Space {
    sites: Vec<Site>,
    strides: [usize; 4],
    dim: usize,
}

impl Space {
    fn new(q: &QuadSpins) -> Self {
        let sites: Vec<Site> = q.sides().iter().map(|&j| spin_site(j)).collect();
        let mut strides = [1usize; 4];
        for s in (0..3).rev() {
            strides[s] = strides[s + 1] * sites[s + 1].dim;
        }
        let dim = strides[0] * sites[0].dim;
        Space { sites, strides, dim }
    }

    fn digit(&self, index: usize, site: usize) -> usize {
        index / self.strides[site] % self.sites[site].dim
    }

    /// Twice the total magnetic number of a product state.
    fn twice_m(&self, index: usize) -> i64 {
        (0..4)
            .map(|s| {
                let n = self.sites[s].dim as i64;
                (n - 1) - 2 * self.digit(index, s) as i64
            })
            .sum()
    }

    fn apply(&self, site: usize, comp: usize, v: &[Complex64]) -> Vec<Complex64> {
        let op = &self.sites[site].ops[comp];
        let stride = self.strides[site];
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (idx, &amp) in v.iter().enumerate() {
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let d = self.digit(idx, site);
            let base = idx - d * stride;
            for r in 0..self.sites[site].dim {
                let e = op[(r, d)];
                if e != Complex64::new(0.0, 0.0) {
                    out[base + r * stride] += e * amp;
                }
            }
        }
        out
    }

    /// `J_p·(J_q×J_r) v`.
    fn triple(&self, p: usize, q: usize, r: usize, v: &[Complex64]) -> Vec<Complex64> {
        const TERMS: [([usize; 3], f64); 6] = [
            ([0, 1, 2], 1.0),
            ([1, 2, 0], 1.0),
            ([2, 0, 1], 1.0),
            ([0, 2, 1], -1.0),
            ([2, 1, 0], -1.0),
            ([1, 0, 2], -1.0),
        ];
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for ([i, j, k], sign) in TERMS {
            let w = self.apply(r, k, v);
            let w = self.apply(q, j, &w);
            let w = self.apply(p, i, &w);
            for (o, x) in out.iter_mut().zip(w) {
                *o += x * sign;
            }
        }
        out
    }
}

/// Orthonormal basis of the total-spin-zero subspace: the kernel of `J_+`
/// restricted to `M = 0`.
fn closure_basis(space: &Space) -> Vec<Vec<f64>> {
    let m0: Vec<usize> = (0..space.dim).filter(|&i| space.twice_m(i) == 0).collect();
    let m1: Vec<usize> = (0..space.dim).filter(|&i| space.twice_m(i) == 2).collect();
    if m0.is_empty() {
        return Vec::new();
    }
    let row_of = |idx: usize| m1.binary_search(&idx).ok();
    let mut jp = DMatrix::<f64>::zeros(m1.len().max(1), m0.len());
    for (col, &idx) in m0.iter().enumerate() {
        for s in 0..4 {
            let site = &space.sites[s];
            let d = space.digit(idx, s);
            if d == 0 {
                continue;
            }
            let amp = plus_entry(site, d);
            let target = idx - space.strides[s];
            if let Some(row) = row_of(target) {
                jp[(row, col)] += amp;
            }
        }
    }
    let gram = jp.transpose() * &jp;
    let eig = SymmetricEigen::new(gram);
    let scale = eig.eigenvalues.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut basis = Vec::new();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() <= 1e-10 * scale {
            let col = eig.eigenvectors.column(k);
            let mut full = vec![0.0; space.dim];
            for (c, &idx) in m0.iter().enumerate() {
                full[idx] = col[c];
            }
            basis.push(full);
        }
    }
    basis
}

/// `⟨m+1|J_+|m⟩` at digit `d`, recovered from `Jx + i·Jy`.
fn plus_entry(site: &Site, d: usize) -> f64 {
    let jx = site.ops[0][(d - 1, d)];
    let jy = site.ops[1][(d - 1, d)];
    (jx + Complex64::new(0.0, 1.0) * jy).re
}

fn to_complex(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

fn max_entry(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// Build `K` on the closure subspace from spin matrices and diagonalize it
/// densely. Spins above 2 are refused.
pub fn oracle_k_matrix(q: &QuadSpins) -> Result<OracleReport, Error> {
    let max = q.max_spin();
    if max.twice() > ORACLE_MAX_TWICE {
        return Err(Error::SpinBound {
            what: "the volume oracle",
            limit: HalfInt::from_twice(ORACLE_MAX_TWICE),
            found: max,
        });
    }
    if !q.closes() {
        return Err(Error::Closure(*q));
    }
    let space = Space::new(q);
    let basis = closure_basis(&space);
    let k = basis.len();
    let cb: Vec<Vec<Complex64>> = basis.iter().map(|v| to_complex(v)).collect();

    let project = |p: usize, qq: usize, r: usize| -> (DMatrix<Complex64>, f64) {
        let mut m = DMatrix::<Complex64>::zeros(k, k);
        let mut leak = 0.0f64;
        for (col, v) in cb.iter().enumerate() {
            let w = space.triple(p, qq, r, v);
            let mut rest = w.clone();
            for (row, u) in cb.iter().enumerate() {
                let c: Complex64 = u.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
                m[(row, col)] = c;
                for (x, y) in rest.iter_mut().zip(u) {
                    *x -= c * y;
                }
            }
            leak = leak.max(rest.iter().fold(0.0f64, |acc, z| acc.max(z.norm())));
        }
        (m, leak)
    };

    let (k1, leakage) = project(0, 1, 2);
    let others = [project(1, 2, 3).0, project(0, 3, 2).0, project(0, 1, 3).0];
    let equal_deviation = others.clone().map(|m| max_entry(&(m - &k1)));
    let opposite_deviation = others.map(|m| max_entry(&(m + &k1)));

    let mut eigenvalues: Vec<f64> =
        if k == 0 { Vec::new() } else { SymmetricEigen::new(k1).eigenvalues.iter().copied().collect() };
    eigenvalues.sort_by(f64::total_cmp);
    Ok(OracleReport { dim: k, eigenvalues, equal_deviation, opposite_deviation, leakage })
}
