use serde::Serialize;

use super::TridiagonalOperator;
use crate::Error;

const MAX_SWEEPS: usize = 60;

/// Sorted eigenvalues with unit eigenvectors (`eigenvectors[k]` belongs to
/// `eigenvalues[k]`), in the real phase convention of [`TridiagonalOperator`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
}

/// Implicit-shift QL on a symmetric tridiagonal matrix, eigenvalues only.
/// `e[k]` couples `d[k]` and `d[k+1]`.
fn ql_implicit(d: &mut [f64], e: &[f64]) -> Result<(), Error> {
    let n = d.len();
    if n < 2 {
        return Ok(());
    }
    let mut e: Vec<f64> = e.iter().copied().chain(std::iter::once(0.0)).collect();
    let norm = e.iter().fold(0.0f64, |m, x| m.max(x.abs())) + d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let floor = f64::EPSILON * f64::EPSILON * norm;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::NoConvergence { iterations: MAX_SWEEPS, index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Sorted spectrum with the `±` pairing imposed: entry `k` is the exact
/// negation of entry `n-1-k`, and the middle entry of an odd spectrum is 0.
pub fn eigenvalues(t: &TridiagonalOperator) -> Result<Vec<f64>, Error> {
    let n = t.dim();
    let mut d = vec![0.0; n];
    ql_implicit(&mut d, &t.offdiag)?;
    d.sort_by(f64::total_cmp);
    for k in 0..n / 2 {
        let m = 0.5 * (d[n - 1 - k].abs() + d[k].abs());
        d[k] = -m;
        d[n - 1 - k] = m;
    }
    if n % 2 == 1 {
        d[n / 2] = 0.0;
    }
    Ok(d)
}

/// Solve `(T - λ) y = b` in place by Gaussian elimination with partial
/// pivoting; a zero final pivot is nudged to `tiny`.
fn shifted_solve(off: &[f64], lambda: f64, b: &mut [f64], tiny: f64) {
    let n = b.len();
    // Row k of the upper factor: u0 on the diagonal, u1 and u2 to its right.
    let mut u0 = vec![0.0; n];
    let mut u1 = vec![0.0; n];
    let mut u2 = vec![0.0; n];

    let mut diag = -lambda;
    let mut sup = if n > 1 { off[0] } else { 0.0 };
    for k in 0..n - 1 {
        let below = off[k];
        let next_diag = -lambda;
        let next_sup = if k + 2 < n { off[k + 1] } else { 0.0 };
        let m;
        if below.abs() > diag.abs() {
            m = diag / below;
            (u0[k], u1[k], u2[k]) = (below, next_diag, next_sup);
            diag = sup - m * next_diag;
            sup = -m * next_sup;
            b.swap(k, k + 1);
        } else {
            m = below / diag;
            (u0[k], u1[k], u2[k]) = (diag, sup, 0.0);
            diag = next_diag - m * sup;
            sup = next_sup;
        }
        b[k + 1] -= m * b[k];
    }
    u0[n - 1] = if diag == 0.0 { tiny } else { diag };
    for k in (0..n).rev() {
        let mut s = b[k];
        if k + 1 < n {
            s -= u1[k] * b[k + 1];
        }
        if k + 2 < n {
            s -= u2[k] * b[k + 2];
        }
        b[k] = s / u0[k];
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v {
        *x /= norm;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Kernel vector of a zero-diagonal tridiagonal matrix of odd size:
/// odd components vanish and `v[k+1] = -α_k v[k-1] / α_{k+1}`.
fn null_vector(off: &[f64]) -> Vec<f64> {
    let n = off.len() + 1;
    let mut log = vec![f64::NEG_INFINITY; n];
    let mut sign = vec![0.0; n];
    log[0] = 0.0;
    sign[0] = 1.0;
    let mut k = 1;
    while k + 1 < n {
        log[k + 1] = log[k - 1] + off[k - 1].ln() - off[k].ln();
        sign[k + 1] = -sign[k - 1];
        k += 2;
    }
    let top = log.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut v: Vec<f64> = log.iter().zip(&sign).map(|(l, s)| s * (l - top).exp()).collect();
    normalize(&mut v);
    v
}

/// First component above `1e-10` of the largest one made positive.
fn fix_sign(v: &mut [f64]) {
    let big = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-10 * big).copied() {
        if first < 0.0 {
            for x in v {
                *x = -*x;
            }
        }
    }
}

/// Full spectrum and eigenvectors.
///
/// Eigenvalues come from [`eigenvalues`]. Eigenvectors for `λ > 0` come from
/// inverse iteration, re-orthogonalized within clusters closer than
/// `1e-3·‖T‖`; the `-λ` partner is the same vector with alternating signs,
/// and the zero mode of an odd spectrum is built directly.
pub fn diagonalize(t: &TridiagonalOperator) -> Result<VolumeSpectrum, Error> {
    let n = t.dim();
    let values = eigenvalues(t)?;
    let mut vectors = vec![Vec::new(); n];
    if n == 1 {
        vectors[0] = vec![1.0];
        return Ok(VolumeSpectrum { eigenvalues: values, eigenvectors: vectors });
    }
    let norm = t.norm_bound();
    let tiny = f64::EPSILON * norm;
    let cluster = 1e-3 * norm;

    let first_pos = n.div_ceil(2);
    let mut cluster_start = first_pos;
    for k in first_pos..n {
        let lambda = values[k];
        if k > first_pos && lambda - values[k - 1] > cluster {
            cluster_start = k;
        }
        // Deterministic, generic start vector.
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * ((i * 7 + k * 13) % 17) as f64 / 17.0).collect();
        for _ in 0..3 {
            normalize(&mut v);
            shifted_solve(&t.offdiag, lambda, &mut v, tiny);
            for prev in &vectors[cluster_start..k] {
                let c = dot(&v, prev);
                for (x, p) in v.iter_mut().zip(prev) {
                    *x -= c * p;
                }
            }
        }
        normalize(&mut v);
        vectors[k] = v;
    }
    if n % 2 == 1 {
        vectors[n / 2] = null_vector(&t.offdiag);
    }
    for k in 0..n / 2 {
        vectors[k] = vectors[n - 1 - k].iter().enumerate().map(|(i, x)| if i % 2 == 0 { *x } else { -*x }).collect();
    }
    for v in &mut vectors {
        fix_sign(v);
    }
    Ok(VolumeSpectrum { eigenvalues: values, eigenvectors: vectors })
}
