use std::sync::{OnceLock, RwLock};

use super::{RacahBounds, SixJ};
use crate::numeric::ScaledFloat;

fn factorials() -> &'static RwLock<Vec<ScaledFloat>> {
    static TABLE: OnceLock<RwLock<Vec<ScaledFloat>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![ScaledFloat::ONE]))
}

fn factorial(n: u64) -> ScaledFloat {
    let n = n as usize;
    if let Some(&f) = factorials().read().unwrap().get(n) {
        return f;
    }
    let mut t = factorials().write().unwrap();
    while t.len() <= n {
        let k = t.len();
        let next = t[k - 1] * ScaledFloat::from_f64(k as f64);
        t.push(next);
    }
    t[n]
}

fn delta(twice: [i64; 3]) -> ScaledFloat {
    let [a, b, c] = twice;
    let num = factorial(((a + b - c) / 2) as u64)
        * factorial(((a - b + c) / 2) as u64)
        * factorial(((-a + b + c) / 2) as u64);
    (num / factorial(((a + b + c) / 2 + 1) as u64)).sqrt()
}

/// Floating Racah sum with exponent-tracked terms.
///
/// Overflow is impossible for any realistic spin, but the alternating sum
/// cancels: expect roughly `eps · max|term| / |result|` relative error, which
/// is fine for spins up to a few tens and poor beyond. Use [`super::sixj_exact`]
/// or the recurrence for large spins.
pub fn sixj_float(s: &SixJ) -> f64 {
    if s.is_trivial_zero() {
        return 0.0;
    }
    let b = RacahBounds::of(s);
    let (t_min, t_max) = b.t_range();

    let mut term = factorial((t_min + 1) as u64);
    for a in b.alpha {
        term = term / factorial((t_min - a) as u64);
    }
    for k in b.beta {
        term = term / factorial((k - t_min) as u64);
    }
    if t_min % 2 != 0 {
        term = -term;
    }

    let mut sum = ScaledFloat::ZERO;
    for t in t_min..=t_max {
        sum = sum + term;
        if t == t_max {
            break;
        }
        let mut num = (t + 2) as f64;
        let mut den = 1.0;
        for k in b.beta {
            num *= (k - t) as f64;
        }
        for a in b.alpha {
            den *= (t + 1 - a) as f64;
        }
        term = -(term * ScaledFloat::from_f64(num / den));
    }

    let tw = s.j.map(|j| j.twice());
    let [j1, j2, j3, j4, j5, j6] = tw;
    let prefactor = delta([j1, j2, j3]) * delta([j1, j5, j6]) * delta([j4, j2, j6]) * delta([j4, j5, j3]);
    (sum * prefactor).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wigner::sixj_exact;

    #[test]
    fn agrees_with_exact_on_small_symbols() {
        let mut checked = 0;
        for t in 0..4096u32 {
            let s = SixJ::from_twice(std::array::from_fn(|k| i64::from((t >> (2 * k)) & 3) + 1));
            let exact = sixj_exact(&s).float_hint;
            let approx = sixj_float(&s);
            assert!((exact - approx).abs() <= 1e-13 * exact.abs().max(1e-300), "{s}: {exact} vs {approx}");
            if exact != 0.0 {
                checked += 1;
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn moderate_spins() {
        for s in [
            SixJ::from_int([10, 12, 14, 11, 13, 9]),
            SixJ::from_twice([21, 17, 12, 19, 15, 10]),
            SixJ::from_int([20, 20, 20, 20, 20, 20]),
        ] {
            let exact = sixj_exact(&s).float_hint;
            let approx = sixj_float(&s);
            assert!((exact - approx).abs() <= 1e-9 * exact.abs(), "{s}: {exact} vs {approx}");
        }
    }
}
