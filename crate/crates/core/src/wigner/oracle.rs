//! Brute-force 6j symbols from Clebsch-Gordan recoupling.
//!
//! ```text
//! ⟨(j1 j2)j12, j3; J M | j1, (j2 j3)j23; J M⟩
//!     = (-1)^(j1+j2+j3+J) √((2j12+1)(2j23+1)) {j1 j2 j12; j3 J j23}
//! ```
//!
//! The overlap is summed over magnetic quantum numbers with each CG
//! coefficient taken from its own single-sum formula. Nothing here shares
//! code with the Racah evaluation in the parent module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::SixJ;
use crate::numeric::HalfInt;
use crate::Error;

/// Largest `2j` the oracle accepts.
pub const ORACLE_MAX_TWICE: i64 = 5;

/// Sign and exact square of a symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleValue {
    /// `-1`, `0` or `1`.
    pub sign: i8,
    pub square: BigRational,
}

struct Factorials(Vec<BigInt>);

impl Factorials {
    fn new() -> Self {
        Factorials(vec![BigInt::one()])
    }

    /// `n!` with `n` given as a twice-encoded integer.
    fn of_twice(&mut self, twice: i64) -> BigInt {
        assert!(twice >= 0 && twice % 2 == 0, "factorial of {twice}/2");
        let n = (twice / 2) as usize;
        while self.0.len() <= n {
            let k = self.0.len();
            let next = &self.0[k - 1] * BigInt::from(k);
            self.0.push(next);
        }
        self.0[n].clone()
    }
}

fn triangle(a: i64, b: i64, c: i64) -> bool {
    (a + b + c) % 2 == 0 && c >= (a - b).abs() && c <= a + b
}

/// `⟨j1 m1 j2 m2 | J M⟩ = sum · √prefactor`, all arguments twice-encoded.
fn clebsch_gordan(
    f: &mut Factorials,
    j1: i64,
    m1: i64,
    j2: i64,
    m2: i64,
    jj: i64,
    mm: i64,
) -> (BigRational, BigRational) {
    let zero = (BigRational::zero(), BigRational::one());
    if m1 + m2 != mm || m1.abs() > j1 || m2.abs() > j2 || mm.abs() > jj || !triangle(j1, j2, jj) {
        return zero;
    }
    let mut pre_num =
        BigInt::from(jj + 1) * f.of_twice(j1 + j2 - jj) * f.of_twice(j1 - j2 + jj) * f.of_twice(-j1 + j2 + jj);
    pre_num *= f.of_twice(j1 + m1) * f.of_twice(j1 - m1) * f.of_twice(j2 + m2) * f.of_twice(j2 - m2);
    pre_num *= f.of_twice(jj + mm) * f.of_twice(jj - mm);
    let pre_den = f.of_twice(j1 + j2 + jj + 2);
    let prefactor = BigRational::new(pre_num, pre_den);

    let mut sum = BigRational::zero();
    let mut k = 0;
    loop {
        let args = [k, j1 + j2 - jj - k, j1 - m1 - k, j2 + m2 - k, jj - j2 + m1 + k, jj - j1 - m2 + k];
        if args[1] < 0 || args[2] < 0 || args[3] < 0 {
            break;
        }
        if args.iter().all(|&a| a >= 0) {
            let den = args.iter().fold(BigInt::one(), |acc, &a| acc * f.of_twice(a));
            let term = BigRational::new(BigInt::one(), den);
            if (k / 2) % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        k += 2;
    }
    (sum, prefactor)
}

fn delta_sq(f: &mut Factorials, a: i64, b: i64, c: i64) -> BigRational {
    BigRational::new(f.of_twice(a + b - c) * f.of_twice(a - b + c) * f.of_twice(-a + b + c), f.of_twice(a + b + c + 2))
}

fn exact_sqrt(r: &BigRational) -> BigRational {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    assert!(&n * &n == *r.numer() && &d * &d == *r.denom(), "m-dependent factors must pair up");
    BigRational::new(n, d)
}

/// Sign and square of `s` from four-CG recoupling sums. Refuses spins above
/// 5/2: the magnetic sums grow quickly.
pub fn sixj_oracle_cg(s: &SixJ) -> Result<OracleValue, Error> {
    let max = s.max_spin();
    if max.twice() > ORACLE_MAX_TWICE {
        return Err(Error::SpinBound {
            what: "the Clebsch-Gordan oracle",
            limit: HalfInt::from_twice(ORACLE_MAX_TWICE),
            found: max,
        });
    }
    let [j1, j2, j12, j3, jj, j23] = s.j.map(|j| j.twice());
    let ok = triangle(j1, j2, j12) && triangle(j12, j3, jj) && triangle(j2, j3, j23) && triangle(j1, j23, jj);
    if !ok {
        return Ok(OracleValue { sign: 0, square: BigRational::zero() });
    }

    let mut f = Factorials::new();
    let mm = jj;
    let q = BigRational::from_integer(BigInt::from((j12 + 1) * (jj + 1) * (j23 + 1) * (jj + 1)))
        * delta_sq(&mut f, j1, j2, j12)
        * delta_sq(&mut f, j12, j3, jj)
        * delta_sq(&mut f, j2, j3, j23)
        * delta_sq(&mut f, j1, j23, jj);

    let mut r = BigRational::zero();
    for m1 in (-j1..=j1).step_by(2) {
        for m2 in (-j2..=j2).step_by(2) {
            let m12 = m1 + m2;
            let m3 = mm - m12;
            let m23 = m2 + m3;
            if m12.abs() > j12 || m3.abs() > j3 || m23.abs() > j23 {
                continue;
            }
            let c1 = clebsch_gordan(&mut f, j1, m1, j2, m2, j12, m12);
            let c2 = clebsch_gordan(&mut f, j12, m12, j3, m3, jj, mm);
            let c3 = clebsch_gordan(&mut f, j2, m2, j3, m3, j23, m23);
            let c4 = clebsch_gordan(&mut f, j1, m1, j23, m23, jj, mm);
            let sums = &c1.0 * &c2.0 * &c3.0 * &c4.0;
            if sums.is_zero() {
                continue;
            }
            let radicand = &c1.1 * &c2.1 * &c3.1 * &c4.1 / &q;
            r += sums * exact_sqrt(&radicand);
        }
    }

    let phase = (j1 + j2 + j3 + jj) / 2;
    let mut sign: i8 = if phase % 2 == 0 { 1 } else { -1 };
    if r.is_negative() {
        sign = -sign;
    }
    if r.is_zero() {
        sign = 0;
    }
    let square = &r * &r * q / BigRational::from_integer(BigInt::from((j12 + 1) * (j23 + 1)));
    Ok(OracleValue { sign, square })
}
