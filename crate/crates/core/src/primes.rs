//! Prime generation, smallest-prime-factor sieving and factorization of
//! 64-bit integers.
//!
//! Small integers are factored through an [`SpfTable`]; anything above the
//! table limit falls back to trial division by tiny primes, a deterministic
//! Miller-Rabin test and Brent's variant of Pollard's rho driven by a
//! fixed-seed generator, so results are reproducible run to run.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default sieve limit used by [`Factorizer::global`].
pub const DEFAULT_SIEVE_LIMIT: u64 = 10_000_000;

/// Largest sieve limit accepted by [`SpfTable::new`].
pub const MAX_SIEVE_LIMIT: u64 = 100_000_000;

const RHO_SEED: u64 = 0x746f_7765_7264_656e;

/// Smallest-prime-factor table on `0..=limit`; entries 0 and 1 are 0.
#[derive(Debug, Clone)]
pub struct SpfTable {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SpfTable {
    /// Linear sieve. Every composite is written exactly once.
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_ceiling(limit, MAX_SIEVE_LIMIT)
    }

    pub fn with_ceiling(limit: u64, ceiling: u64) -> Result<Self> {
        let ceiling = ceiling.min(u32::MAX as u64);
        if !(2..=ceiling).contains(&limit) {
            return Err(Error::capacity("sieve limit", limit, 2, ceiling));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > n {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(SpfTable { spf, primes })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Smallest prime factor of `n`, or `None` outside `2..=limit`.
    pub fn spf(&self, n: u64) -> Option<u64> {
        if n < 2 || n > self.limit() {
            return None;
        }
        Some(self.spf[n as usize] as u64)
    }

    /// Raw table, indexed by `n`.
    pub fn as_slice(&self) -> &[u32] {
        &self.spf
    }

    /// All primes up to the limit, increasing.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    fn factor_into(&self, mut n: u64, out: &mut BTreeMap<u64, u64>) {
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            *out.entry(p).or_insert(0) += e;
        }
    }
}

/// `n = p1^e1 * ... * pk^ek` with strictly increasing primes and `ei >= 1`.
///
/// Exponents are 64-bit so the type can also describe integers above
/// `u64::MAX` given in factored form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PrimeFactorization {
    pairs: Vec<(u64, u64)>,
}

impl PrimeFactorization {
    /// Validated constructor: primes must be prime and strictly increasing,
    /// exponents at least 1.
    pub fn from_pairs(pairs: Vec<(u64, u64)>) -> Result<Self> {
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Argument(format!(
                    "primes must be strictly increasing, got {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        for &(p, e) in &pairs {
            if !is_prime(p) {
                return Err(Error::Argument(format!("{p} is not prime")));
            }
            if e == 0 {
                return Err(Error::Argument(format!("exponent of {p} is zero")));
            }
        }
        Ok(PrimeFactorization { pairs })
    }

    /// Builds the factorization of `prod base_i^power_i` (bases need not be
    /// prime; each is factored and exponents are merged).
    pub fn from_powers(terms: &[(u64, u64)]) -> Result<Self> {
        let mut merged: BTreeMap<u64, u64> = BTreeMap::new();
        for &(base, power) in terms {
            if base == 0 {
                return Err(Error::Argument("base 0 has no factorization".into()));
            }
            for &(p, e) in factor(base)?.pairs() {
                let e = e
                    .checked_mul(power)
                    .ok_or_else(|| Error::Argument(format!("exponent of {p} overflows 64 bits")))?;
                let slot = merged.entry(p).or_insert(0);
                *slot = slot
                    .checked_add(e)
                    .ok_or_else(|| Error::Argument(format!("exponent of {p} overflows 64 bits")))?;
            }
        }
        Ok(PrimeFactorization {
            pairs: merged.into_iter().filter(|&(_, e)| e > 0).collect(),
        })
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The factored integer, or `None` if it does not fit in a `u64`.
    pub fn value(&self) -> Option<u64> {
        self.pairs.iter().try_fold(1u64, |acc, &(p, e)| {
            let e = u32::try_from(e).ok()?;
            acc.checked_mul(p.checked_pow(e)?)
        })
    }

    pub fn exponents(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(_, e)| e)
    }
}

/// Factors 64-bit integers, using a sieve below its limit.
#[derive(Debug, Clone, Default)]
pub struct Factorizer {
    table: Option<Arc<SpfTable>>,
}

impl Factorizer {
    pub fn new(sieve_limit: u64) -> Result<Self> {
        Ok(Factorizer {
            table: Some(Arc::new(SpfTable::new(sieve_limit)?)),
        })
    }

    /// Factorizer that never consults a sieve (trial division + rho only).
    pub fn without_sieve() -> Self {
        Factorizer { table: None }
    }

    pub fn from_table(table: Arc<SpfTable>) -> Self {
        Factorizer { table: Some(table) }
    }

    /// Shared instance backed by a lazily built table of [`DEFAULT_SIEVE_LIMIT`].
    pub fn global() -> &'static Factorizer {
        static GLOBAL: OnceLock<Factorizer> = OnceLock::new();
        GLOBAL.get_or_init(|| {
            Factorizer::new(DEFAULT_SIEVE_LIMIT).expect("default sieve limit is in range")
        })
    }

    pub fn table(&self) -> Option<&SpfTable> {
        self.table.as_deref()
    }

    /// Factorization of `n >= 1`; `n = 0` is rejected.
    pub fn factor(&self, n: u64) -> Result<PrimeFactorization> {
        if n == 0 {
            return Err(Error::Argument("0 has no prime factorization".into()));
        }
        let mut out = BTreeMap::new();
        match &self.table {
            Some(t) if n <= t.limit() => t.factor_into(n, &mut out),
            _ => factor_large(n, &mut out),
        }
        Ok(PrimeFactorization {
            pairs: out.into_iter().collect(),
        })
    }
}

/// Factorization through [`Factorizer::global`].
pub fn factor(n: u64) -> Result<PrimeFactorization> {
    Factorizer::global().factor(n)
}

const TRIAL_LIMIT: u64 = 1 << 10;

fn factor_large(mut n: u64, out: &mut BTreeMap<u64, u64>) {
    let mut d = 2;
    while d < TRIAL_LIMIT && d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.insert(d, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n == 1 {
        return;
    }
    if n < TRIAL_LIMIT * TRIAL_LIMIT {
        // Everything below d^2 with no factor below d is prime.
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RHO_SEED);
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = pollard_brent(m, &mut rng);
        stack.push(d);
        stack.push(m / d);
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Nontrivial divisor of an odd composite `n`.
fn pollard_brent(n: u64, rng: &mut ChaCha8Rng) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    const BATCH: u64 = 128;
    loop {
        let c = rng.gen_range(1..n);
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let mut y = rng.gen_range(0..n);
        let (mut x, mut ys) = (y, y);
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
}

/// Deterministic primality for every 64-bit integer.
///
/// Miller-Rabin with the first twelve primes as witnesses has no
/// counterexample below 3.3e24.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let r = (n - 1).trailing_zeros();
    let d = (n - 1) >> r;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `k` smallest primes, increasing.
pub fn first_k_primes(k: usize) -> Vec<u64> {
    if k == 0 {
        return Vec::new();
    }
    // p_k < k (ln k + ln ln k) for k >= 6.
    let kf = k.max(6) as f64;
    let bound = (kf * (kf.ln() + kf.ln().ln())).ceil() as usize + 16;
    let mut composite = vec![false; bound + 1];
    let mut out = Vec::with_capacity(k);
    for i in 2..=bound {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        if out.len() == k {
            break;
        }
        let mut j = i * i;
        while j <= bound {
            composite[j] = true;
            j += i;
        }
    }
    debug_assert_eq!(out.len(), k);
    out
}

/// The first `count` primes with `exclude` removed (if it occurs among them).
pub fn first_primes_excluding(count: usize, exclude: u64) -> Vec<u64> {
    first_k_primes(count)
        .into_iter()
        .filter(|&p| p != exclude)
        .collect()
}
