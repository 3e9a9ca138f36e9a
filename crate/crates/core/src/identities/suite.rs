//! Parameter enumeration and parallel evaluation of identity suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{IdentityId, IdentityReport, SixJCache};

/// Triads (as parameter indices) that must hold for the right side to be
/// nonzero. Random suites only draw parameters satisfying them.
fn required_triads(id: IdentityId) -> &'static [[usize; 3]] {
    match id {
        // a b c d y y'
        IdentityId::Orthonormality => &[[0, 3, 4], [1, 2, 4], [0, 3, 5], [1, 2, 5]],
        // a b c d y z
        IdentityId::RacahSum => &[[2, 0, 4], [2, 1, 5], [3, 0, 5], [3, 1, 4]],
        // a b c d z z'
        IdentityId::TripleSum => &[[0, 3, 4], [1, 2, 4], [0, 3, 5], [1, 2, 5]],
        // a b c d e f p q r
        IdentityId::BiedenharnElliott => &[[6, 7, 8], [6, 0, 3], [4, 7, 3], [4, 0, 8], [6, 1, 2], [5, 7, 2], [5, 1, 8]],
    }
}

fn triad_ok(t: [i64; 3]) -> bool {
    let [a, b, c] = t;
    (a + b + c) % 2 == 0 && (a - b).abs() <= c && c <= a + b
}

/// Every parameter tuple with entries in `0..=max_twice`, in lexicographic order.
pub fn exhaustive_params(id: IdentityId, max_twice: i64) -> Vec<Vec<i64>> {
    let n = id.arity();
    let base = (max_twice + 1) as usize;
    let total = base.pow(n as u32);
    (0..total)
        .map(|mut k| {
            let mut p = vec![0i64; n];
            for slot in p.iter_mut().rev() {
                *slot = (k % base) as i64;
                k /= base;
            }
            p
        })
        .collect()
}

/// `count` seeded random tuples with entries in `0..=max_twice` whose right
/// side does not vanish by a triangle rule. For the two identities carrying
/// a Kronecker delta, half the draws set the last two parameters equal.
pub fn random_params(id: IdentityId, max_twice: i64, count: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triads = required_triads(id);
    let n = id.arity();
    let delta = matches!(id, IdentityId::Orthonormality | IdentityId::TripleSum);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let tie = delta && rng.gen_bool(0.5);
        let mut p: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max_twice)).collect();
        if tie {
            p[n - 1] = p[n - 2];
        }
        if triads.iter().all(|t| triad_ok(t.map(|i| p[i]))) {
            out.push(p);
        }
    }
    out
}

/// Check every tuple in parallel with one shared 6j cache. Reports keep the
/// input order.
pub fn run_suite(id: IdentityId, params: &[Vec<i64>]) -> Vec<IdentityReport> {
    let cache = SixJCache::new();
    params.par_iter().map(|p| id.check(p, &cache)).collect()
}
