//! Exact checks of the defining sum rules of 6j symbols, and the Fano-plane
//! incidence of the seven-spin network.

mod fano;
mod suite;

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::numeric::{radical_eq, radical_mul, triangle_ok, HalfInt, RadicalValue};
use crate::wigner::{sixj_exact, SixJ};

pub use fano::{fano_incidence, FanoPlane, FANO_LABELS};
pub use suite::{exhaustive_params, random_params, run_suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    Orthonormality,
    RacahSum,
    TripleSum,
    BiedenharnElliott,
}

impl IdentityId {
    pub const ALL: [IdentityId; 4] =
        [IdentityId::Orthonormality, IdentityId::RacahSum, IdentityId::TripleSum, IdentityId::BiedenharnElliott];

    /// Number of spin parameters.
    pub fn arity(self) -> usize {
        match self {
            IdentityId::BiedenharnElliott => 9,
            _ => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Orthonormality => "orthonormality",
            IdentityId::RacahSum => "racah_sum",
            IdentityId::TripleSum => "triple_sum",
            IdentityId::BiedenharnElliott => "biedenharn_elliott",
        }
    }

    /// Parameter names in call order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            IdentityId::Orthonormality => &["a", "b", "c", "d", "y", "y'"],
            IdentityId::RacahSum => &["a", "b", "c", "d", "y", "z"],
            IdentityId::TripleSum => &["a", "b", "c", "d", "z", "z'"],
            IdentityId::BiedenharnElliott => &["a", "b", "c", "d", "e", "f", "p", "q", "r"],
        }
    }

    /// Dispatch on a twice-encoded parameter list of length [`Self::arity`].
    pub fn check(self, params: &[i64], cache: &SixJCache) -> IdentityReport {
        let h: Vec<HalfInt> = params.iter().map(|&t| HalfInt::from_twice(t)).collect();
        match self {
            IdentityId::Orthonormality => check_orthonormality_with(h[0], h[1], h[2], h[3], h[4], h[5], cache),
            IdentityId::RacahSum => check_racah_sum_with(h[0], h[1], h[2], h[3], h[4], h[5], cache),
            IdentityId::TripleSum => check_triple_sum_with(h[0], h[1], h[2], h[3], h[4], h[5], cache),
            IdentityId::BiedenharnElliott => {
                check_biedenharn_elliott_with([h[0], h[1], h[2], h[3], h[4], h[5], h[6], h[7], h[8]], cache)
            }
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for IdentityId {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "orthonormality" | "ortho" => Ok(IdentityId::Orthonormality),
            "racah" | "racah_sum" => Ok(IdentityId::RacahSum),
            "triple" | "triple_sum" => Ok(IdentityId::TripleSum),
            "be" | "biedenharn_elliott" => Ok(IdentityId::BiedenharnElliott),
            _ => Err(crate::Error::Invalid(format!("unknown identity `{s}`"))),
        }
    }
}

/// Outcome of one identity check; both sides are kept exactly.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: IdentityId,
    /// Twice-encoded parameters in [`IdentityId::param_names`] order.
    pub params: Vec<i64>,
    pub holds: bool,
    /// Every term and the right side vanish identically.
    pub vacuous: bool,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip)]
    pub lhs_value: RadicalValue,
    #[serde(skip)]
    pub rhs_value: RadicalValue,
}

impl IdentityReport {
    fn new(identity: IdentityId, params: &[HalfInt], lhs: RadicalValue, rhs: RadicalValue, all_zero: bool) -> Self {
        let holds = radical_eq(&lhs, &rhs);
        IdentityReport {
            identity,
            params: params.iter().map(|j| j.twice()).collect(),
            holds,
            vacuous: all_zero && rhs.is_zero(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            lhs_value: lhs,
            rhs_value: rhs,
        }
    }
}

/// Memoized exact 6j values, keyed by the least image under the 24
/// tetrahedral symmetries. Safe to share across threads.
pub struct SixJCache {
    shards: Vec<Mutex<HashMap<SixJ, RadicalValue>>>,
}

impl Default for SixJCache {
    fn default() -> Self {
        SixJCache { shards: (0..32).map(|_| Mutex::new(HashMap::new())).collect() }
    }
}

impl SixJCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, s: &SixJ) -> RadicalValue {
        if s.is_trivial_zero() {
            return RadicalValue::zero();
        }
        let key = s.symmetry_images().into_iter().min().expect("24 images");
        let shard = &self.shards[key.j.iter().map(|j| j.twice() as usize).sum::<usize>() % self.shards.len()];
        if let Some(v) = shard.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = sixj_exact(&key).exact;
        shard.lock().unwrap().insert(key, v.clone());
        v
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn phase(twice_exponent: i64) -> Option<i64> {
    (twice_exponent % 2 == 0).then_some(if (twice_exponent / 2) % 2 == 0 { 1 } else { -1 })
}

/// Every `x` with the parity of `p + q` in the union of `[|p-q|, p+q]` over
/// the given pairs.
fn x_values(pairs: &[(HalfInt, HalfInt)]) -> Vec<HalfInt> {
    let lo = pairs.iter().map(|&(p, q)| (p - q).abs()).min().unwrap();
    let hi = pairs.iter().map(|&(p, q)| p + q).max().unwrap();
    let (p, q) = pairs[0];
    let parity = (p + q).twice().rem_euclid(2);
    let start = if lo.twice().rem_euclid(2) == parity { lo } else { lo + HalfInt::HALF };
    crate::numeric::half_int_range(start, hi).collect()
}

fn accumulate(terms: impl Iterator<Item = RadicalValue>) -> (RadicalValue, bool) {
    let mut sum = RadicalValue::zero();
    let mut all_zero = true;
    for t in terms {
        if t.is_zero() {
            continue;
        }
        all_zero = false;
        sum = sum.checked_add(&t).expect("terms of a sum rule share their radicals");
    }
    (sum, all_zero)
}

/// `Σ_x (2x+1) {a b x; c d y}{c d x; a b y'} = δ_{yy'}/(2y+1)` when the
/// triads `(a,d,y)`, `(b,c,y)` hold, and 0 otherwise.
pub fn check_orthonormality(a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt, y: HalfInt, y2: HalfInt) -> IdentityReport {
    check_orthonormality_with(a, b, c, d, y, y2, &SixJCache::new())
}

fn check_orthonormality_with(
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
    d: HalfInt,
    y: HalfInt,
    y2: HalfInt,
    cache: &SixJCache,
) -> IdentityReport {
    let xs = x_values(&[(a, b), (c, d)]);
    let (lhs, all_zero) = accumulate(xs.into_iter().map(|x| {
        let s1 = cache.get(&SixJ::new(a, b, x, c, d, y));
        let s2 = cache.get(&SixJ::new(c, d, x, a, b, y2));
        radical_mul(&s1, &s2).scale(&int(x.dim()))
    }));
    let rhs = if y == y2 && triangle_ok(a, d, y) && triangle_ok(b, c, y) {
        RadicalValue::rational(BigRational::new(1.into(), y.dim().into()))
    } else {
        RadicalValue::zero()
    };
    IdentityReport::new(IdentityId::Orthonormality, &[a, b, c, d, y, y2], lhs, rhs, all_zero)
}

/// `Σ_x (-1)^(x+y+z) (2x+1) {a b x; c d z}{c d x; b a y} = {c a y; d b z}`.
pub fn check_racah_sum(a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt, y: HalfInt, z: HalfInt) -> IdentityReport {
    check_racah_sum_with(a, b, c, d, y, z, &SixJCache::new())
}

fn check_racah_sum_with(
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
    d: HalfInt,
    y: HalfInt,
    z: HalfInt,
    cache: &SixJCache,
) -> IdentityReport {
    let xs = x_values(&[(a, b), (c, d)]);
    let (lhs, all_zero) = accumulate(xs.into_iter().map(|x| {
        let s1 = cache.get(&SixJ::new(a, b, x, c, d, z));
        let s2 = cache.get(&SixJ::new(c, d, x, b, a, y));
        let term = radical_mul(&s1, &s2);
        if term.is_zero() {
            return term;
        }
        let sign = phase((x + y + z).twice()).expect("nonzero terms have integer phase");
        term.scale(&int(sign * x.dim()))
    }));
    let rhs = cache.get(&SixJ::new(c, a, y, d, b, z));
    IdentityReport::new(IdentityId::RacahSum, &[a, b, c, d, y, z], lhs, rhs, all_zero)
}

/// `Σ_{x,y} (-1)^(x+y+z) (2x+1)(2y+1) {a b x; c d z}{a c y; d b x}{a d z'; b c y}
///  = δ_{zz'}/(2z+1)` when `(a,d,z)`, `(b,c,z)` hold, and 0 otherwise.
pub fn check_triple_sum(a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt, z: HalfInt, z2: HalfInt) -> IdentityReport {
    check_triple_sum_with(a, b, c, d, z, z2, &SixJCache::new())
}

fn check_triple_sum_with(
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
    d: HalfInt,
    z: HalfInt,
    z2: HalfInt,
    cache: &SixJCache,
) -> IdentityReport {
    let xs = x_values(&[(a, b), (c, d)]);
    let ys = x_values(&[(a, c), (b, d)]);
    let (lhs, all_zero) = accumulate(xs.iter().flat_map(|&x| {
        ys.iter().map(move |&y| {
            let s1 = cache.get(&SixJ::new(a, b, x, c, d, z));
            if s1.is_zero() {
                return s1;
            }
            let s2 = cache.get(&SixJ::new(a, c, y, d, b, x));
            let s3 = cache.get(&SixJ::new(a, d, z2, b, c, y));
            let term = radical_mul(&radical_mul(&s1, &s2), &s3);
            if term.is_zero() {
                return term;
            }
            let sign = phase((x + y + z).twice()).expect("nonzero terms have integer phase");
            term.scale(&int(sign * x.dim() * y.dim()))
        })
    }));
    let rhs = if z == z2 && triangle_ok(a, d, z) && triangle_ok(b, c, z) {
        RadicalValue::rational(BigRational::new(1.into(), z.dim().into()))
    } else {
        RadicalValue::zero()
    };
    IdentityReport::new(IdentityId::TripleSum, &[a, b, c, d, z, z2], lhs, rhs, all_zero)
}

/// `Σ_x (-1)^(R+x) (2x+1) {a b x; c d p}{c d x; e f q}{e f x; b a r}
///  = {p q r; e a d}{p q r; f b c}` with `R` the sum of all nine spins.
pub fn check_biedenharn_elliott(j: [HalfInt; 9]) -> IdentityReport {
    check_biedenharn_elliott_with(j, &SixJCache::new())
}

fn check_biedenharn_elliott_with(j: [HalfInt; 9], cache: &SixJCache) -> IdentityReport {
    let [a, b, c, d, e, f, p, q, r] = j;
    let big_r = j.iter().fold(HalfInt::ZERO, |s, &v| s + v);
    let xs = x_values(&[(a, b), (c, d), (e, f)]);
    let (lhs, all_zero) = accumulate(xs.into_iter().map(|x| {
        let s1 = cache.get(&SixJ::new(a, b, x, c, d, p));
        if s1.is_zero() {
            return s1;
        }
        let s2 = cache.get(&SixJ::new(c, d, x, e, f, q));
        let s3 = cache.get(&SixJ::new(e, f, x, b, a, r));
        let term = radical_mul(&radical_mul(&s1, &s2), &s3);
        if term.is_zero() {
            return term;
        }
        let sign = phase((big_r + x).twice()).expect("nonzero terms have integer phase");
        term.scale(&int(sign * x.dim()))
    }));
    let rhs = radical_mul(&cache.get(&SixJ::new(p, q, r, e, a, d)), &cache.get(&SixJ::new(p, q, r, f, b, c)));
    IdentityReport::new(IdentityId::BiedenharnElliott, &j, lhs, rhs, all_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn orthonormality_examples() {
        let r = check_orthonormality(h(1), h(1), h(1), h(1), h(0), h(0));
        assert!(r.holds && !r.vacuous);
        assert_eq!(r.lhs_value.coeff(), &q(1, 1));

        let r = check_orthonormality(h(2), h(2), h(2), h(2), h(2), h(4));
        assert!(r.holds);
        assert!(r.lhs_value.is_zero());

        let r = check_orthonormality(h(2), h(4), h(4), h(6), h(4), h(4));
        assert!(r.holds);
        assert_eq!(r.lhs_value.coeff(), &q(1, 5));
        assert!(r.lhs_value.is_rational());
    }

    #[test]
    fn racah_sum_examples() {
        let r = check_racah_sum(h(1), h(1), h(1), h(1), h(0), h(2));
        assert!(r.holds && !r.vacuous, "{} vs {}", r.lhs, r.rhs);
        // z out of range: both sides vanish.
        let r = check_racah_sum(h(2), h(4), h(4), h(6), h(2), h(20));
        assert!(r.holds && r.vacuous);
        for t in [[2, 3, 3, 4, 3, 4], [3, 3, 3, 3, 2, 4], [2, 4, 6, 4, 6, 4]] {
            let r = check_racah_sum(h(t[0]), h(t[1]), h(t[2]), h(t[3]), h(t[4]), h(t[5]));
            assert!(r.holds && !r.vacuous, "{t:?}: {} vs {}", r.lhs, r.rhs);
        }
    }

    #[test]
    fn racah_sum_with_y_in_both_factors_is_not_an_identity() {
        // Σ_x (-1)^(x+y+z)(2x+1){a b x; c d y}{c d x; b a y} against {c a y; d b z}
        // fails: the left side does not depend on z beyond a sign.
        let cache = SixJCache::new();
        let (a, b, c, d, y) = (h(2), h(2), h(2), h(2), h(2));
        let mismatches = [h(0), h(2), h(4)]
            .into_iter()
            .filter(|&z| {
                let (lhs, _) = accumulate(x_values(&[(a, b), (c, d)]).into_iter().map(|x| {
                    let t =
                        radical_mul(&cache.get(&SixJ::new(a, b, x, c, d, y)), &cache.get(&SixJ::new(c, d, x, b, a, y)));
                    if t.is_zero() {
                        return t;
                    }
                    t.scale(&int(phase((x + y + z).twice()).unwrap() * x.dim()))
                }));
                !radical_eq(&lhs, &cache.get(&SixJ::new(c, a, y, d, b, z)))
            })
            .count();
        assert!(mismatches > 0);
    }

    #[test]
    fn triple_sum_examples() {
        let r = check_triple_sum(h(2), h(2), h(2), h(2), h(2), h(2));
        assert!(r.holds);
        assert_eq!(r.lhs_value.coeff(), &q(1, 3));
        let r = check_triple_sum(h(2), h(2), h(2), h(2), h(2), h(4));
        assert!(r.holds && r.lhs_value.is_zero());
        let r = check_triple_sum(h(6), h(8), h(10), h(12), h(8), h(8));
        assert!(r.holds);
        assert_eq!(r.lhs_value.coeff(), &q(1, 9));
    }

    #[test]
    fn biedenharn_elliott_examples() {
        let r = check_biedenharn_elliott([h(2); 9]);
        assert!(r.holds && !r.vacuous, "{} vs {}", r.lhs, r.rhs);
        let r = check_biedenharn_elliott([h(1), h(1), h(2), h(2), h(1), h(3), h(1), h(2), h(2)]);
        assert!(r.holds, "{} vs {}", r.lhs, r.rhs);
        // Broken triads everywhere.
        let r = check_biedenharn_elliott([h(2), h(2), h(2), h(2), h(2), h(2), h(20), h(2), h(2)]);
        assert!(r.holds && r.vacuous);
    }

    #[test]
    fn report_serializes_without_values() {
        let r = check_orthonormality(h(1), h(1), h(1), h(1), h(0), h(0));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["identity"], "orthonormality");
        assert_eq!(json["params"], serde_json::json!([1, 1, 1, 1, 0, 0]));
        assert_eq!(json["holds"], true);
        assert!(json.get("lhs_value").is_none());
    }

    #[test]
    fn cache_agrees_with_direct_evaluation() {
        let cache = SixJCache::new();
        let s = SixJ::from_twice([2, 4, 4, 3, 5, 3]);
        for img in s.symmetry_images() {
            assert!(radical_eq(&cache.get(&img), &sixj_exact(&img).exact));
        }
    }
}
