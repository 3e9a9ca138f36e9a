use std::ops::{Div, DivAssign, Mul, MulAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Factorials whose argument is at most this are cached as exponent vectors.
const CACHED_FACTORIALS: usize = 4096;

struct Table {
    /// All primes `<= bound`.
    primes: Vec<u64>,
    bound: u64,
    /// `factorials[n]` holds the exponent vector of `n!`.
    factorials: Vec<Arc<[u32]>>,
}

fn table() -> &'static RwLock<Table> {
    static TABLE: OnceLock<RwLock<Table>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(Table { primes: Vec::new(), bound: 1, factorials: vec![Arc::from(Vec::new())] }))
}

fn sieve(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut k = i * i;
            while k <= n {
                composite[k] = true;
                k += i;
            }
        }
    }
    primes
}

/// Exponent of `p` in `n!` (Legendre).
fn legendre(n: u64, p: u64) -> u64 {
    let mut e = 0;
    let mut q = n / p;
    while q > 0 {
        e += q;
        q /= p;
    }
    e
}

fn ensure_primes(n: u64) {
    if table().read().unwrap().bound >= n {
        return;
    }
    let mut t = table().write().unwrap();
    if t.bound < n {
        let bound = n.max(2 * t.bound).max(64);
        t.primes = sieve(bound);
        t.bound = bound;
    }
}

/// Number of primes `<= n`, and the primes themselves up to that point.
fn primes_up_to(n: u64) -> Vec<u64> {
    ensure_primes(n);
    let t = table().read().unwrap();
    let k = t.primes.partition_point(|&p| p <= n);
    t.primes[..k].to_vec()
}

fn factorial_exponents(n: u64) -> Arc<[u32]> {
    if (n as usize) < CACHED_FACTORIALS {
        {
            let t = table().read().unwrap();
            if let Some(v) = t.factorials.get(n as usize) {
                return v.clone();
            }
        }
        ensure_primes(n);
        let mut t = table().write().unwrap();
        while t.factorials.len() <= n as usize {
            let m = t.factorials.len() as u64;
            let mut next: Vec<u32> = t.factorials[m as usize - 1].to_vec();
            // m! = (m-1)! * m
            let mut rest = m;
            for (i, &p) in t.primes.iter().enumerate() {
                if p * p > rest {
                    break;
                }
                while rest.is_multiple_of(p) {
                    bump(&mut next, i);
                    rest /= p;
                }
            }
            if rest > 1 {
                let i = t.primes.partition_point(|&p| p < rest);
                bump(&mut next, i);
            }
            t.factorials.push(Arc::from(next));
        }
        return t.factorials[n as usize].clone();
    }
    let primes = primes_up_to(n);
    primes.iter().map(|&p| legendre(n, p) as u32).collect::<Vec<_>>().into()
}

fn bump(v: &mut Vec<u32>, i: usize) {
    if v.len() <= i {
        v.resize(i + 1, 0);
    }
    v[i] += 1;
}

/// `Π p_i^{e_i}` over the primes in ascending order: a ratio of products of
/// factorials kept in factored form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FactorialProduct {
    exps: Vec<i64>,
}

impl FactorialProduct {
    pub fn one() -> Self {
        FactorialProduct::default()
    }

    pub fn factorial(n: u64) -> Self {
        let mut f = FactorialProduct::one();
        f.mul_factorial(n);
        f
    }

    /// Factor a positive integer.
    pub fn from_u64(n: u64) -> Self {
        assert!(n > 0, "cannot factor zero");
        let mut f = FactorialProduct::one();
        f.mul_u64(n);
        f
    }

    /// Exponent vector indexed by prime rank (2, 3, 5, ...).
    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn add_exps(&mut self, other: &[i64], sign: i64) {
        if self.exps.len() < other.len() {
            self.exps.resize(other.len(), 0);
        }
        for (a, &b) in self.exps.iter_mut().zip(other) {
            *a += sign * b;
        }
    }

    fn add_factorial(&mut self, n: u64, sign: i64) {
        let e = factorial_exponents(n);
        if self.exps.len() < e.len() {
            self.exps.resize(e.len(), 0);
        }
        for (a, &b) in self.exps.iter_mut().zip(e.iter()) {
            *a += sign * i64::from(b);
        }
    }

    pub fn mul_factorial(&mut self, n: u64) {
        self.add_factorial(n, 1);
    }

    pub fn div_factorial(&mut self, n: u64) {
        self.add_factorial(n, -1);
    }

    pub fn mul_u64(&mut self, n: u64) {
        let other = Self::factor(n);
        self.add_exps(&other, 1);
    }

    pub fn div_u64(&mut self, n: u64) {
        let other = Self::factor(n);
        self.add_exps(&other, -1);
    }

    fn factor(n: u64) -> Vec<i64> {
        assert!(n > 0, "cannot factor zero");
        let mut rest = n;
        let mut out = Vec::new();
        // Only primes up to sqrt(n) are needed for trial division.
        let limit = (n as f64).sqrt() as u64 + 1;
        let primes = primes_up_to(limit.max(2));
        for (i, &p) in primes.iter().enumerate() {
            if p * p > rest {
                break;
            }
            while rest.is_multiple_of(p) {
                if out.len() <= i {
                    out.resize(i + 1, 0);
                }
                out[i] += 1;
                rest /= p;
            }
        }
        if rest > 1 {
            ensure_primes(rest);
            let t = table().read().unwrap();
            let i = t.primes.partition_point(|&p| p < rest);
            debug_assert_eq!(t.primes[i], rest);
            if out.len() <= i {
                out.resize(i + 1, 0);
            }
            out[i] += 1;
        }
        out
    }

    /// Elementwise minimum of exponents: the largest common divisor of a
    /// family of factored values.
    pub fn gcd(&self, other: &Self) -> Self {
        let n = self.exps.len().max(other.exps.len());
        let exps = (0..n)
            .map(|i| {
                let a = self.exps.get(i).copied().unwrap_or(0);
                let b = other.exps.get(i).copied().unwrap_or(0);
                a.min(b)
            })
            .collect();
        FactorialProduct { exps }
    }

    fn prime_list(&self) -> Vec<u64> {
        let n = self.exps.len();
        if n == 0 {
            return Vec::new();
        }
        let mut bound = 64;
        loop {
            ensure_primes(bound);
            let t = table().read().unwrap();
            if t.primes.len() >= n {
                return t.primes[..n].to_vec();
            }
            bound = t.bound * 2;
        }
    }

    /// Split into (numerator, denominator) integers.
    pub fn to_parts(&self) -> (BigInt, BigInt) {
        let primes = self.prime_list();
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (&p, &e) in primes.iter().zip(&self.exps) {
            if e > 0 {
                num.push((p, e as u32));
            } else if e < 0 {
                den.push((p, (-e) as u32));
            }
        }
        (product_of_powers(&num), product_of_powers(&den))
    }

    /// The value as an integer; `None` if any exponent is negative.
    pub fn to_bigint(&self) -> Option<BigInt> {
        if self.exps.iter().any(|&e| e < 0) {
            return None;
        }
        Some(self.to_parts().0)
    }

    pub fn to_rational(&self) -> BigRational {
        let (n, d) = self.to_parts();
        // Coprime by construction, so no reduction is needed.
        BigRational::new_raw(n, d)
    }
}

fn product_of_powers(factors: &[(u64, u32)]) -> BigInt {
    // Accumulate machine-word chunks first, then combine with a balanced tree.
    let mut words: Vec<BigInt> = Vec::new();
    let mut acc: u128 = 1;
    for &(p, e) in factors {
        for _ in 0..e {
            match acc.checked_mul(u128::from(p)) {
                Some(v) if v < (1u128 << 120) => acc = v,
                _ => {
                    words.push(BigInt::from(acc));
                    acc = u128::from(p);
                }
            }
        }
    }
    words.push(BigInt::from(acc));
    while words.len() > 1 {
        let mut next = Vec::with_capacity(words.len() / 2 + 1);
        let mut it = words.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a * b),
                None => next.push(a),
            }
        }
        words = next;
    }
    words.pop().unwrap_or_else(BigInt::one)
}

impl MulAssign<&FactorialProduct> for FactorialProduct {
    fn mul_assign(&mut self, rhs: &FactorialProduct) {
        self.add_exps(&rhs.exps, 1);
    }
}

impl DivAssign<&FactorialProduct> for FactorialProduct {
    fn div_assign(&mut self, rhs: &FactorialProduct) {
        self.add_exps(&rhs.exps, -1);
    }
}

impl Mul for &FactorialProduct {
    type Output = FactorialProduct;
    fn mul(self, rhs: &FactorialProduct) -> FactorialProduct {
        let mut out = self.clone();
        out *= rhs;
        out
    }
}

impl Div for &FactorialProduct {
    type Output = FactorialProduct;
    fn div(self, rhs: &FactorialProduct) -> FactorialProduct {
        let mut out = self.clone();
        out /= rhs;
        out
    }
}
