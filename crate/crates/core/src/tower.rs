//! Tower factorizations and membership in `M(q)`.
//!
//! The tower of `n > 1` replaces every exponent of the ordinary factorization
//! by its own tower; the tower of 1 is empty. An exponent equal to 1 is
//! therefore encoded by the empty tower.
//!
//! Membership satisfies the recursion `n ∈ M(q)` iff `q | n` or some
//! exponent `e` of `n` lies in `M(q)`. Exponents are strictly smaller than
//! `n`, so a table on `0..=cutoff` is filled in increasing order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::{is_prime, Factorizer, PrimeFactorization, SpfTable};

/// Cutoff of the per-`q` membership tables shared by [`is_member`].
pub const MEMO_CUTOFF: u64 = 10_000;

/// Largest `hi` accepted by [`member_set`].
pub const MAX_ENUM_HI: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct TowerFactorization {
    factors: Vec<TowerFactor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TowerFactor {
    pub prime: u64,
    pub exponent: TowerFactorization,
}

impl TowerFactorization {
    /// The tower of 1 (also the exponent tower of a first power).
    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[TowerFactor] {
        &self.factors
    }

    /// Expands every exponent of `f` into its own tower.
    pub fn from_factorization(f: &PrimeFactorization, factorizer: &Factorizer) -> Result<Self> {
        let factors = f
            .pairs()
            .iter()
            .map(|&(prime, e)| {
                let exponent = if e == 1 {
                    TowerFactorization::one()
                } else {
                    TowerFactorization::from_factorization(&factorizer.factor(e)?, factorizer)?
                };
                Ok(TowerFactor { prime, exponent })
            })
            .collect::<Result<_>>()?;
        Ok(TowerFactorization { factors })
    }

    /// Evaluates the tower, or `None` when the value exceeds `u64`.
    pub fn value(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, f| {
            let e = u32::try_from(f.exponent.value()?).ok()?;
            acc.checked_mul(f.prime.checked_pow(e)?)
        })
    }

    /// Every prime appearing anywhere in the tower.
    pub fn primes(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        self.collect_primes(&mut out);
        out
    }

    fn collect_primes(&self, out: &mut BTreeSet<u64>) {
        for f in &self.factors {
            out.insert(f.prime);
            f.exponent.collect_primes(out);
        }
    }

    pub fn contains_prime(&self, q: u64) -> bool {
        self.factors
            .iter()
            .any(|f| f.prime == q || f.exponent.contains_prime(q))
    }

    /// Nesting depth: 0 for the tower of 1, 1 for squarefree `n > 1`.
    pub fn depth(&self) -> usize {
        self.factors
            .iter()
            .map(|f| 1 + f.exponent.depth())
            .max()
            .unwrap_or(0)
    }

    /// Checks ordering and primality at every level.
    pub fn validate(&self) -> Result<()> {
        for w in self.factors.windows(2) {
            if w[0].prime >= w[1].prime {
                return Err(Error::Argument("tower primes must increase".into()));
            }
        }
        for f in &self.factors {
            if !is_prime(f.prime) {
                return Err(Error::Argument(format!("{} is not prime", f.prime)));
            }
            f.exponent.validate()?;
        }
        Ok(())
    }
}

/// `"1"` for the empty tower; otherwise factors in increasing prime order
/// joined by `*`, each rendered `p` (exponent 1) or `p^(R)`.
impl fmt::Display for TowerFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{}", factor.prime)?;
            if !factor.exponent.is_one() {
                write!(f, "^({})", factor.exponent)?;
            }
        }
        Ok(())
    }
}

/// Parses the rendering produced by `Display` and validates the result.
impl FromStr for TowerFactorization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = RenderParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let tower = parser.tower()?;
        if parser.pos != s.len() {
            return Err(parser.error("trailing input"));
        }
        tower.validate()?;
        Ok(tower)
    }
}

struct RenderParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl RenderParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Argument(format!("malformed tower at byte {}: {what}", self.pos))
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| self.error("expected a number"))
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.src.get(self.pos) == Some(&b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn tower(&mut self) -> Result<TowerFactorization> {
        let mut factors = Vec::new();
        loop {
            let prime = self.number()?;
            if prime == 1
                && factors.is_empty()
                && !self
                    .src
                    .get(self.pos)
                    .is_some_and(|&b| b == b'^' || b == b'*')
            {
                return Ok(TowerFactorization::one());
            }
            let exponent = if self.eat(b'^') {
                if !self.eat(b'(') {
                    return Err(self.error("expected '('"));
                }
                let e = self.tower()?;
                if e.is_one() {
                    return Err(self.error("exponent 1 must be omitted"));
                }
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                e
            } else {
                TowerFactorization::one()
            };
            factors.push(TowerFactor { prime, exponent });
            if !self.eat(b'*') {
                return Ok(TowerFactorization { factors });
            }
        }
    }
}

/// Tower factorization of `1 <= n < 2^64`.
pub fn tower_factorize(n: u64) -> Result<TowerFactorization> {
    tower_factorize_with(n, Factorizer::global())
}

pub fn tower_factorize_with(n: u64, factorizer: &Factorizer) -> Result<TowerFactorization> {
    TowerFactorization::from_factorization(&factorizer.factor(n)?, factorizer)
}

/// All primes `q` with `n ∈ M(q)`.
pub fn tower_primes(n: u64) -> Result<BTreeSet<u64>> {
    Ok(tower_factorize(n)?.primes())
}

/// Characteristic array of `M(q)` on `0..=cutoff`.
#[derive(Debug, Clone)]
pub struct MembershipTable {
    q: u64,
    bits: Vec<bool>,
}

impl MembershipTable {
    pub fn new(q: u64, cutoff: u64) -> Result<Self> {
        check_prime(q)?;
        if !(1..=crate::primes::MAX_SIEVE_LIMIT).contains(&cutoff) {
            return Err(Error::capacity(
                "membership cutoff",
                cutoff,
                1,
                crate::primes::MAX_SIEVE_LIMIT,
            ));
        }
        let n = cutoff as usize;
        let mut bits = vec![false; n + 1];
        if cutoff >= 2 {
            let spf = SpfTable::new(cutoff)?;
            let spf = spf.as_slice();
            for m in 2..=n {
                let mut r = m;
                let mut member = false;
                while r > 1 && !member {
                    let p = spf[r] as usize;
                    let mut e = 0;
                    while r % p == 0 {
                        r /= p;
                        e += 1;
                    }
                    member = p as u64 == q || bits[e];
                }
                bits[m] = member;
            }
        }
        Ok(MembershipTable { q, bits })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn cutoff(&self) -> u64 {
        (self.bits.len() - 1) as u64
    }

    /// `Some(m ∈ M(q))` for `m <= cutoff`.
    pub fn get(&self, m: u64) -> Option<bool> {
        self.bits.get(usize::try_from(m).ok()?).copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    /// Members of `M(q)` in `lo..=hi` (clamped to the cutoff).
    pub fn members(&self, lo: u64, hi: u64) -> Vec<u64> {
        self.select(lo, hi, true)
    }

    /// Members of the complement `{0, 1, ...} \ M(q)` in `lo..=hi`.
    pub fn non_members(&self, lo: u64, hi: u64) -> Vec<u64> {
        self.select(lo, hi, false)
    }

    fn select(&self, lo: u64, hi: u64, want: bool) -> Vec<u64> {
        (lo..=hi.min(self.cutoff()))
            .filter(|&m| self.bits[m as usize] == want)
            .collect()
    }
}

/// Membership oracle for arbitrary 64-bit integers.
#[derive(Debug, Clone)]
pub struct Membership {
    table: Arc<MembershipTable>,
    factorizer: Factorizer,
}

impl Membership {
    pub fn new(table: Arc<MembershipTable>, factorizer: Factorizer) -> Result<Self> {
        if table.cutoff() < 64 {
            return Err(Error::Argument(
                "membership table must cover every 64-bit exponent (cutoff >= 64)".into(),
            ));
        }
        Ok(Membership { table, factorizer })
    }

    pub fn table(&self) -> &MembershipTable {
        &self.table
    }

    pub fn contains(&self, n: u64) -> bool {
        if let Some(bit) = self.table.get(n) {
            return bit;
        }
        let q = self.table.q();
        if n.is_multiple_of(q) {
            return true;
        }
        let f = self
            .factorizer
            .factor(n)
            .expect("n exceeds the table cutoff, so n > 0");
        // Exponents of a 64-bit integer are at most 63, inside the table.
        let member = f.exponents().any(|e| self.table.get(e) == Some(true));
        member
    }
}

fn check_prime(q: u64) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::Argument(format!("q = {q} is not prime")))
    }
}

/// Shared memoized table for `q` with cutoff [`MEMO_CUTOFF`].
pub fn membership_table(q: u64) -> Result<Arc<MembershipTable>> {
    check_prime(q)?;
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<MembershipTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("membership cache poisoned").get(&q) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(MembershipTable::new(q, MEMO_CUTOFF)?);
    cache
        .lock()
        .expect("membership cache poisoned")
        .entry(q)
        .or_insert_with(|| Arc::clone(&table));
    Ok(table)
}

/// Whether `n ∈ M(q)`; 0 and 1 are never members.
pub fn is_member(n: u64, q: u64) -> Result<bool> {
    let oracle = Membership::new(membership_table(q)?, Factorizer::global().clone())?;
    Ok(oracle.contains(n))
}

/// Ascending `m ∈ [lo, hi]` with `m ∈ M(q)`, or with `m ∉ M(q)` when
/// `complement` is set (so 0 and 1 are listed when in range).
pub fn member_set(q: u64, lo: u64, hi: u64, complement: bool) -> Result<Vec<u64>> {
    check_prime(q)?;
    if hi > MAX_ENUM_HI {
        return Err(Error::capacity("enumeration bound hi", hi, lo, MAX_ENUM_HI));
    }
    if lo > hi {
        return Err(Error::Argument(format!(
            "empty range: lo = {lo} > hi = {hi}"
        )));
    }
    let table = if hi <= MEMO_CUTOFF {
        membership_table(q)?
    } else {
        Arc::new(MembershipTable::new(q, hi)?)
    };
    Ok(if complement {
        table.non_members(lo, hi)
    } else {
        table.members(lo, hi)
    })
}
