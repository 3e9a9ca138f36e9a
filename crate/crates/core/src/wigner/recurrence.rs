//! Three-term recurrence in one entry of the symbol (Schulten-Gordon).
//!
//! For `f(j1) = {j1 j2 j3; l1 l2 l3}`:
//!
//! ```text
//! j1·E(j1+1)·f(j1+1) + F(j1)·f(j1) + (j1+1)·E(j1)·f(j1-1) = 0
//! ```
//!
//! Forward iteration is stable out of the classically forbidden region at the
//! low end, backward iteration out of the one at the high end. Both run into
//! the allowed interior and are matched there.

use super::SixJ;
use crate::numeric::{half_int_range, HalfInt};

const RESCALE: f64 = 1e150;

struct Coeffs {
    j2: f64,
    j3: f64,
    l1: f64,
    l2: f64,
    l3: f64,
}

impl Coeffs {
    fn e(&self, j1: f64) -> f64 {
        let (j2, j3, l2, l3) = (self.j2, self.j3, self.l2, self.l3);
        let p = (j1 * j1 - (j2 - j3) * (j2 - j3))
            * ((j2 + j3 + 1.0) * (j2 + j3 + 1.0) - j1 * j1)
            * (j1 * j1 - (l2 - l3) * (l2 - l3))
            * ((l2 + l3 + 1.0) * (l2 + l3 + 1.0) - j1 * j1);
        p.max(0.0).sqrt()
    }

    fn f(&self, j1: f64) -> f64 {
        let jj = |j: f64| j * (j + 1.0);
        let (a, b, c) = (jj(j1), jj(self.j2), jj(self.j3));
        (2.0 * j1 + 1.0)
            * (a * (-a + b + c - 2.0 * jj(self.l1)) + jj(self.l2) * (a + b - c) + jj(self.l3) * (a - b + c))
    }
}

/// `{a b x; c d z}` for every admissible `x`, ascending.
///
/// Returns an empty list when no `x` gives a nonzero symbol (the fixed
/// triads `(a,d,z)`, `(c,b,z)` fail, or the `x` range is empty).
pub fn sixj_sweep_x(a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt, z: HalfInt) -> Vec<(HalfInt, f64)> {
    use crate::numeric::triangle_ok;
    if !triangle_ok(a, d, z) || !triangle_ok(c, b, z) {
        return Vec::new();
    }
    let lo = (a - b).abs().max((c - d).abs());
    let hi = (a + b).min(c + d);
    if lo > hi || !(a + b + lo).is_integer() || !(c + d + lo).is_integer() {
        return Vec::new();
    }
    let xs: Vec<HalfInt> = half_int_range(lo, hi).collect();

    // {a b x; c d z} = {x a b; z c d}
    let k = Coeffs { j2: a.to_f64(), j3: b.to_f64(), l1: z.to_f64(), l2: c.to_f64(), l3: d.to_f64() };
    let values = solve(&k, &xs);

    let zdim = z.dim() as f64;
    let norm: f64 = xs.iter().zip(&values).map(|(x, v)| x.dim() as f64 * zdim * v * v).sum();
    let mut scale = 1.0 / norm.sqrt();
    // The symbol at the top of the range has sign (-1)^(j2+j3+l2+l3).
    let parity = (a + b + c + d).to_integer().expect("integer perimeter");
    let want = if parity % 2 == 0 { 1.0 } else { -1.0 };
    if values[values.len() - 1].signum() != want {
        scale = -scale;
    }
    xs.into_iter().zip(values).map(|(x, v)| (x, v * scale)).collect()
}

/// Unnormalized solution of the recurrence over `xs`.
fn solve(k: &Coeffs, xs: &[HalfInt]) -> Vec<f64> {
    let n = xs.len();
    if n == 1 {
        return vec![1.0];
    }
    let x = |i: usize| xs[i].to_f64();

    // Forward from the bottom until the first local maximum.
    let mut fwd = vec![0.0f64; n];
    fwd[0] = 1.0;
    let x0 = x(0);
    fwd[1] = if x0 == 0.0 {
        // The j1 = 0 equation is vacuous; take the ratio from the closed
        // forms of {0 j2 j2; l1 l2 l2} and {1 j2 j2; l1 l2 l2}.
        let (j2, l2, l1) = (k.j2, k.l2, k.l1);
        -(j2 * (j2 + 1.0) + l2 * (l2 + 1.0) - l1 * (l1 + 1.0)) / (2.0 * (j2 * (j2 + 1.0) * l2 * (l2 + 1.0)).sqrt())
    } else {
        -k.f(x0) * fwd[0] / (x0 * k.e(x0 + 1.0))
    };
    let peak;
    let mut fwd_last = 1;
    if fwd[1].abs() < fwd[0].abs() {
        peak = 0;
    } else {
        let mut i = 1;
        while i + 1 < n {
            let xi = x(i);
            fwd[i + 1] = -(k.f(xi) * fwd[i] + (xi + 1.0) * k.e(xi) * fwd[i - 1]) / (xi * k.e(xi + 1.0));
            fwd_last = i + 1;
            if fwd[i + 1].abs() > RESCALE {
                for v in &mut fwd[..=i + 1] {
                    *v /= RESCALE;
                }
            }
            if fwd[i + 1].abs() < fwd[i].abs() {
                break;
            }
            i += 1;
        }
        peak = i;
    }

    // Backward from the top down to one below the peak.
    let stop = peak.saturating_sub(1);
    let mut bwd = vec![0.0f64; n];
    bwd[n - 1] = 1.0;
    let mut i = n - 1;
    while i > stop {
        let xi = x(i);
        let up = if i + 1 < n { xi * k.e(xi + 1.0) * bwd[i + 1] } else { 0.0 };
        bwd[i - 1] = -(up + k.f(xi) * bwd[i]) / ((xi + 1.0) * k.e(xi));
        if bwd[i - 1].abs() > RESCALE {
            for v in &mut bwd[i - 1..] {
                *v /= RESCALE;
            }
        }
        i -= 1;
    }

    // Least-squares match where both solutions are known.
    let (mut num, mut den) = (0.0, 0.0);
    for j in stop..=fwd_last {
        num += fwd[j] * bwd[j];
        den += bwd[j] * bwd[j];
    }
    let ratio = num / den;
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&fwd[..=peak]);
    out.extend(bwd[peak + 1..].iter().map(|v| v * ratio));
    out
}

/// Sweep the entry marked `None` of a symbol template over its admissible
/// range. Exactly one entry must be `None`.
pub fn sixj_sweep(template: [Option<HalfInt>; 6]) -> Option<Vec<(HalfInt, f64)>> {
    if template.iter().filter(|e| e.is_none()).count() != 1 {
        return None;
    }
    // Place the free entry at position 3 using a symmetry of the symbol.
    let marker = HalfInt::from_twice(-1);
    let probe = SixJ { j: template.map(|e| e.unwrap_or(marker)) };
    let moved = probe.symmetry_images().into_iter().find(|s| s.j[2] == marker)?;
    debug_assert!(moved.j.iter().filter(|&&e| e == marker).count() == 1);
    let [a, b, _, c, d, z] = moved.j;
    Some(sixj_sweep_x(a, b, c, d, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wigner::sixj_exact;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn check(a: i64, b: i64, c: i64, d: i64, z: i64, rel: f64) {
        let sweep = sixj_sweep_x(h(a), h(b), h(c), h(d), h(z));
        for (x, v) in sweep {
            let exact = sixj_exact(&SixJ::new(h(a), h(b), x, h(c), h(d), h(z))).float_hint;
            // Nontrivial zeros of the symbol come out as roundoff.
            let tol = if exact == 0.0 { 1e-14 } else { rel * exact.abs() };
            assert!((v - exact).abs() <= tol, "{{{a} {b} {x}; {c} {d} {z}}}/2: {v} vs {exact}");
        }
    }

    #[test]
    fn matches_exact_for_all_ones() {
        check(2, 2, 2, 2, 2, 1e-12);
        let sweep = sixj_sweep_x(h(2), h(2), h(2), h(2), h(2));
        assert_eq!(sweep.len(), 3);
        let norm: f64 = sweep.iter().map(|(x, v)| x.dim() as f64 * 3.0 * v * v).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matches_exact_on_small_grid() {
        for a in 0..=5 {
            for b in 0..=5 {
                for c in 0..=5 {
                    for d in 0..=5 {
                        for z in 0..=6 {
                            check(a, b, c, d, z, 1e-11);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn range_width_is_2a_plus_1_for_canonical_sides() {
        let sweep = sixj_sweep_x(h(60), h(90), h(110), h(120), h(80));
        assert_eq!(sweep.len(), 61);
    }

    #[test]
    fn empty_when_fixed_triads_fail() {
        assert!(sixj_sweep_x(h(2), h(2), h(2), h(2), h(10)).is_empty());
    }

    #[test]
    fn template_sweep_matches_direct() {
        let t = [Some(h(60)), Some(h(90)), None, Some(h(110)), Some(h(120)), Some(h(80))];
        let a = sixj_sweep(t).unwrap();
        let b = sixj_sweep_x(h(60), h(90), h(110), h(120), h(80));
        assert_eq!(a, b);
        // Sweeping z of {a b x; c d z} by moving it to position 3.
        let t = [Some(h(4)), Some(h(6)), Some(h(6)), Some(h(5)), Some(h(7)), None];
        for (z, v) in sixj_sweep(t).unwrap() {
            let exact = sixj_exact(&SixJ::new(h(4), h(6), h(6), h(5), h(7), z)).float_hint;
            assert!((v - exact).abs() <= 1e-12 * exact.abs());
        }
        assert!(sixj_sweep([None; 6]).is_none());
    }
}
