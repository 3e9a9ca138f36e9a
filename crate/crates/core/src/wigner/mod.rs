//! Wigner 6j symbols.
//!
//! Three backends share the [`SixJ`] type: the exact Racah single sum
//! ([`sixj_exact`]), a floating Racah sum with tracked exponents
//! ([`sixj_float`]) and three-term recurrence sweeps ([`sixj_sweep_x`]).
//! [`sixj_oracle_cg`] rebuilds small symbols from Clebsch-Gordan
//! coefficients and exists to check the others.

mod float;
mod oracle;
mod recurrence;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::numeric::{FactorialProduct, HalfInt, RadicalValue, Triad};

pub use float::sixj_float;
pub use oracle::{sixj_oracle_cg, OracleValue, ORACLE_MAX_TWICE};
pub use recurrence::{sixj_sweep, sixj_sweep_x};

/// `{j1 j2 j3; j4 j5 j6}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SixJ {
    pub j: [HalfInt; 6],
}

impl SixJ {
    pub fn new(j1: HalfInt, j2: HalfInt, j3: HalfInt, j4: HalfInt, j5: HalfInt, j6: HalfInt) -> Self {
        SixJ { j: [j1, j2, j3, j4, j5, j6] }
    }

    pub fn from_twice(t: [i64; 6]) -> Self {
        SixJ { j: t.map(HalfInt::from_twice) }
    }

    pub fn from_int(t: [i64; 6]) -> Self {
        SixJ { j: t.map(HalfInt::from_int) }
    }

    /// `(j1,j2,j3), (j1,j5,j6), (j4,j2,j6), (j4,j5,j3)`.
    pub fn triads(&self) -> [Triad; 4] {
        let [j1, j2, j3, j4, j5, j6] = self.j;
        [Triad::new(j1, j2, j3), Triad::new(j1, j5, j6), Triad::new(j4, j2, j6), Triad::new(j4, j5, j3)]
    }

    /// True when some triad breaks the triangle rule and the symbol vanishes
    /// identically.
    pub fn is_trivial_zero(&self) -> bool {
        !self.triads().iter().all(Triad::is_valid)
    }

    pub fn max_spin(&self) -> HalfInt {
        *self.j.iter().max().unwrap()
    }

    /// The images under the 24 column permutations and upper/lower swaps in
    /// pairs of columns. The symbol's value is invariant under all of them.
    pub fn symmetry_images(&self) -> Vec<SixJ> {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        // Swap masks with an even number of flipped columns.
        const FLIPS: [[bool; 3]; 4] =
            [[false, false, false], [true, true, false], [true, false, true], [false, true, true]];
        let cols = [(self.j[0], self.j[3]), (self.j[1], self.j[4]), (self.j[2], self.j[5])];
        let mut out = Vec::with_capacity(24);
        for p in PERMS {
            for f in FLIPS {
                let mut j = [HalfInt::ZERO; 6];
                for (k, &src) in p.iter().enumerate() {
                    let (up, down) = cols[src];
                    let (up, down) = if f[k] { (down, up) } else { (up, down) };
                    j[k] = up;
                    j[k + 3] = down;
                }
                out.push(SixJ { j });
            }
        }
        out
    }

    /// Regge image keeping column 3 fixed:
    /// `{a b x; c d z} -> {s-a s-b x; s-c s-d z}` with `s = (a+b+c+d)/2`.
    /// `None` when `a+b+c+d` is odd.
    pub fn regge_image(&self) -> Option<SixJ> {
        let [a, b, x, c, d, z] = self.j;
        let s = (a + b + c + d).halve()?;
        Some(SixJ::new(s - a, s - b, x, s - c, s - d, z))
    }
}

impl fmt::Display for SixJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e, g] = self.j;
        write!(f, "{{{a} {b} {c}; {d} {e} {g}}}")
    }
}

/// Accepts the display form `{a b c; d e f}` or six spins separated by
/// whitespace or commas. Every entry must be a non-negative spin.
impl std::str::FromStr for SixJ {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || crate::Error::Invalid(format!("malformed 6j symbol `{s}`"));
        let t = s.trim();
        let body = match t.strip_prefix('{') {
            Some(rest) => {
                let inner = rest.strip_suffix('}').ok_or_else(bad)?;
                let (top, bottom) = inner.split_once(';').ok_or_else(bad)?;
                if top.contains(';') || bottom.contains(';') {
                    return Err(bad());
                }
                format!("{top} {bottom}")
            }
            None if t.contains(['}', ';']) => return Err(bad()),
            None => t.to_string(),
        };
        let parts: Vec<&str> = body.split(|c: char| c.is_whitespace() || c == ',').filter(|p| !p.is_empty()).collect();
        if parts.len() != 6 {
            return Err(bad());
        }
        let mut j = [HalfInt::ZERO; 6];
        for (slot, p) in j.iter_mut().zip(parts) {
            *slot = HalfInt::parse_spin(p)?;
        }
        Ok(SixJ { j })
    }
}

/// An exactly evaluated symbol with a floating approximation alongside.
#[derive(Clone, Debug, PartialEq)]
pub struct SixJValue {
    pub exact: RadicalValue,
    pub float_hint: f64,
}

impl SixJValue {
    pub fn zero() -> Self {
        SixJValue { exact: RadicalValue::zero(), float_hint: 0.0 }
    }
}

/// Bounds of the Racah sum: triad sums `α` and quadrangle sums `β`.
pub(crate) struct RacahBounds {
    pub alpha: [i64; 4],
    pub beta: [i64; 3],
}

impl RacahBounds {
    pub fn of(s: &SixJ) -> Self {
        let t = s.j.map(|j| j.twice());
        let [j1, j2, j3, j4, j5, j6] = t;
        RacahBounds {
            alpha: [(j1 + j2 + j3) / 2, (j1 + j5 + j6) / 2, (j4 + j2 + j6) / 2, (j4 + j5 + j3) / 2],
            beta: [(j1 + j2 + j4 + j5) / 2, (j2 + j3 + j5 + j6) / 2, (j3 + j1 + j6 + j4) / 2],
        }
    }

    pub fn t_range(&self) -> (i64, i64) {
        (*self.alpha.iter().max().unwrap(), *self.beta.iter().min().unwrap())
    }
}

/// Exact value via the Racah single sum
///
/// ```text
/// Π Δ(triads) · Σ_t (-1)^t (t+1)! / [Π_i (t-α_i)! · Π_k (β_k-t)!]
/// ```
///
/// Terms are held as factored factorial ratios; the common factor is pulled
/// out so the sum itself runs over integers.
pub fn sixj_exact(s: &SixJ) -> SixJValue {
    if s.is_trivial_zero() {
        return SixJValue::zero();
    }
    let bounds = RacahBounds::of(s);
    let (t_min, t_max) = bounds.t_range();
    let terms: Vec<FactorialProduct> = (t_min..=t_max)
        .map(|t| {
            let mut f = FactorialProduct::factorial((t + 1) as u64);
            for a in bounds.alpha {
                f.div_factorial((t - a) as u64);
            }
            for b in bounds.beta {
                f.div_factorial((b - t) as u64);
            }
            f
        })
        .collect();
    let common = terms[1..].iter().fold(terms[0].clone(), |g, f| g.gcd(f));
    let mut sum = BigInt::zero();
    for (k, term) in terms.iter().enumerate() {
        let n = (term / &common).to_bigint().expect("divided by the common factor");
        if (t_min + k as i64) % 2 == 0 {
            sum += n;
        } else {
            sum -= n;
        }
    }
    let coeff = BigRational::from_integer(sum) * common.to_rational();
    let exact = RadicalValue::with_radicals(coeff, s.triads()).expect("triads checked above");
    let float_hint = exact.to_f64();
    SixJValue { exact, float_hint }
}
