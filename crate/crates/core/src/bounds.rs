//! Certified bounds on the density `d(q)` from truncated Euler products.
//!
//! With `P` a finite set of primes not containing `q`, `S ⊆ M(q)`,
//! `A ⊆ Mᶜ(q) ⊆ B`:
//!
//! ```text
//! d(q) >= 1 - (1 - 1/q) prod_P [1 - (1 - 1/p) sum_S p^-s]                        (S)
//! d(q) >= 1 - (1 - 1/q) prod_P [(1 - 1/p) sum_B p^-b]                            (B)
//! d(q) <= 1 - (q^q - q^(q-1))/(q^q - 1) / zeta(q) prod_P [(1 - 1/p)/(1 - p^-q) sum_A p^-a]     (A)
//! d(q) >= 1 - (q^(q+1) - q^q)/(q^(q+1) - 1) / zeta(q+1)
//!             prod_P [(1 - (1 - 1/p) sum_S p^-s) / (1 - p^-(q+1))]   when q ∈ S  (zeta)
//! ```
//!
//! The sets are cut at cutoffs: `S = M(q) ∩ [1, K_S]`, `A = Mᶜ(q) ∩ [0, K_A]`
//! and `B = (Mᶜ(q) ∩ [0, K_B]) ∪ (K_B, inf)`. Each per-prime factor is an
//! exact rational rounded once; every quantity later subtracted from 1 is
//! rounded up for lower bounds and down for upper bounds. Products run in
//! fixed-size chunks reduced in index order, so results do not depend on
//! the number of worker threads.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::primes::{first_primes_excluding, is_prime};
use crate::rigor::{
    zeta_enclosure_refined, DirectedDecimal, Direction, ZetaEnclosure, MIN_PRECISION,
};
use crate::tower::MembershipTable;

pub const DEFAULT_PRECISION: u32 = 128;
pub const MAX_PRECISION: u32 = 4096;

/// Extra digits carried internally; results are rounded to the requested
/// precision at the end.
pub const GUARD_DIGITS: u32 = 12;

pub const MAX_PRIMES: usize = 1_000_000;
pub const MAX_SET_CUTOFF: u64 = 10_000;

const CHUNK: usize = 256;

impl Serialize for DirectedDecimal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_plain_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundParams {
    pub q: u64,
    /// `P` is the first `num_primes` primes with `q` removed.
    pub num_primes: usize,
    pub s_cutoff: u64,
    pub a_cutoff: u64,
    /// `None` skips the B-type bound.
    pub b_cutoff: Option<u64>,
    pub precision: u32,
    pub zeta_terms: u64,
}

impl BoundParams {
    pub fn new(q: u64, num_primes: usize, s_cutoff: u64, a_cutoff: u64) -> Self {
        BoundParams {
            q,
            num_primes,
            s_cutoff,
            a_cutoff,
            b_cutoff: None,
            precision: DEFAULT_PRECISION,
            zeta_terms: crate::rigor::DEFAULT_ZETA_TERMS,
        }
    }

    pub fn with_b_cutoff(mut self, k: u64) -> Self {
        self.b_cutoff = Some(k);
        self
    }

    pub fn with_precision(mut self, digits: u32) -> Self {
        self.precision = digits;
        self
    }

    pub fn with_zeta_terms(mut self, terms: u64) -> Self {
        self.zeta_terms = terms;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.q) {
            return Err(Error::Argument(format!("q = {} is not prime", self.q)));
        }
        if self.num_primes > MAX_PRIMES {
            return Err(Error::capacity(
                "number of primes",
                self.num_primes as u64,
                0,
                MAX_PRIMES as u64,
            ));
        }
        for (what, k) in [
            ("S cutoff", Some(self.s_cutoff)),
            ("A cutoff", Some(self.a_cutoff)),
            ("B cutoff", self.b_cutoff),
        ] {
            if let Some(k) = k {
                if k > MAX_SET_CUTOFF {
                    return Err(Error::capacity(what, k, 0, MAX_SET_CUTOFF));
                }
            }
        }
        if !(MIN_PRECISION..=MAX_PRECISION).contains(&self.precision) {
            return Err(Error::capacity(
                "precision",
                self.precision as u64,
                MIN_PRECISION as u64,
                MAX_PRECISION as u64,
            ));
        }
        if self.zeta_terms < 2 || self.zeta_terms > crate::rigor::MAX_ZETA_TERMS {
            return Err(Error::capacity(
                "zeta terms",
                self.zeta_terms,
                2,
                crate::rigor::MAX_ZETA_TERMS,
            ));
        }
        Ok(())
    }

    fn working_precision(&self) -> u32 {
        self.precision + GUARD_DIGITS
    }
}

/// Exponent sets `S`, `A` and the finite part of `B` (plus its tail start).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSets {
    q: u64,
    s: Vec<u64>,
    a: Vec<u64>,
    b: Option<(Vec<u64>, u64)>,
}

impl ExponentSets {
    /// Sets induced by the cutoffs of `params`.
    pub fn from_params(params: &BoundParams) -> Result<Self> {
        let top = params
            .s_cutoff
            .max(params.a_cutoff)
            .max(params.b_cutoff.unwrap_or(0))
            .max(64);
        let table = MembershipTable::new(params.q, top)?;
        Ok(ExponentSets {
            q: params.q,
            s: table.members(1, params.s_cutoff),
            a: table.non_members(0, params.a_cutoff),
            b: params.b_cutoff.map(|k| (table.non_members(0, k), k)),
        })
    }

    /// Explicit sets, checked against the membership oracle: `S ⊆ M(q)`,
    /// `A ⊆ Mᶜ(q)`, and `B_finite ∪ (tail, inf) ⊇ Mᶜ(q)`.
    pub fn custom(q: u64, s: Vec<u64>, a: Vec<u64>, b: Option<(Vec<u64>, u64)>) -> Result<Self> {
        let mut s = s;
        let mut a = a;
        s.sort_unstable();
        s.dedup();
        a.sort_unstable();
        a.dedup();
        let top = s
            .iter()
            .chain(&a)
            .copied()
            .chain(b.as_ref().map(|(_, k)| *k))
            .max()
            .unwrap_or(0)
            .clamp(64, MAX_SET_CUTOFF);
        let table = MembershipTable::new(q, top)?;
        let member = |m: u64| -> Result<bool> {
            table
                .get(m)
                .ok_or(Error::capacity("exponent", m, 0, MAX_SET_CUTOFF))
        };
        for &m in &s {
            if !member(m)? {
                return Err(Error::InvalidSet {
                    set: "S",
                    value: m,
                    reason: "is not in M(q)",
                });
            }
        }
        for &m in &a {
            if member(m)? {
                return Err(Error::InvalidSet {
                    set: "A",
                    value: m,
                    reason: "is in M(q)",
                });
            }
        }
        let b = match b {
            Some((mut finite, tail)) => {
                finite.sort_unstable();
                finite.dedup();
                if let Some(&m) = finite.iter().find(|&&m| m > tail) {
                    return Err(Error::InvalidSet {
                        set: "B",
                        value: m,
                        reason: "lies inside the tail",
                    });
                }
                for m in table.non_members(0, tail) {
                    if finite.binary_search(&m).is_err() {
                        return Err(Error::InvalidSet {
                            set: "B",
                            value: m,
                            reason: "is in the complement of M(q) but missing",
                        });
                    }
                }
                Some((finite, tail))
            }
            None => None,
        };
        Ok(ExponentSets { q, s, a, b })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn s(&self) -> &[u64] {
        &self.s
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> Option<(&[u64], u64)> {
        self.b.as_ref().map(|(v, k)| (v.as_slice(), *k))
    }

    pub fn q_in_s(&self) -> bool {
        self.s.binary_search(&self.q).is_ok()
    }
}

/// `sum_{m ∈ exps} p^(K - m)` with `K = max(exps)`, i.e. the exponent sum
/// scaled by `p^K`, by Horner's rule. `exps` must be sorted.
fn scaled_power_sum(p: &BigInt, exps: &[u64], k: u64) -> BigInt {
    let mut acc = BigInt::zero();
    let mut next = exps.iter().peekable();
    for m in 0..=k {
        acc *= p;
        if next.peek() == Some(&&m) {
            acc += 1;
            next.next();
        }
    }
    acc
}

/// Exact `sum_{m ∈ exps} p^-m`, plus `sum_{m > tail_from} p^-m` when given.
pub fn exponent_sum_exact(p: u64, exps: &[u64], tail_from: Option<u64>) -> BigRational {
    let mut exps = exps.to_vec();
    exps.sort_unstable();
    exps.dedup();
    let k = exps
        .last()
        .copied()
        .unwrap_or(0)
        .max(tail_from.unwrap_or(0));
    let pb = BigInt::from(p);
    let pk = pb.pow(k as u32);
    let mut sum = BigRational::new(scaled_power_sum(&pb, &exps, k), pk.clone());
    if let Some(t) = tail_from {
        sum += BigRational::new(BigInt::one(), pb.pow(t as u32) * (&pb - 1));
    }
    sum
}

/// Directed value of `sum_{m ∈ exps} p^-m` (tail-extended above `tail_from`).
pub fn factor_sum(
    p: u64,
    exps: &[u64],
    tail_from: Option<u64>,
    precision: u32,
    dir: Direction,
) -> Result<DirectedDecimal> {
    if p < 2 {
        return Err(Error::Argument(format!("factor_sum needs p >= 2, got {p}")));
    }
    DirectedDecimal::from_ratio(&exponent_sum_exact(p, exps, tail_from), precision, dir)
}

/// The four inequalities, by the set that drives them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BoundKind {
    /// Lower bound from `S ⊆ M(q)`.
    #[serde(rename = "S")]
    SetS,
    /// Lower bound from `B ⊇ Mᶜ(q)`.
    #[serde(rename = "B")]
    SetB,
    /// Lower bound from `S` normalized by `zeta(q + 1)`.
    #[serde(rename = "zeta")]
    Zeta,
    /// Upper bound from `A ⊆ Mᶜ(q)` normalized by `zeta(q)`.
    #[serde(rename = "A")]
    SetA,
}

impl BoundKind {
    pub const ALL: [BoundKind; 4] = [
        BoundKind::SetS,
        BoundKind::SetB,
        BoundKind::Zeta,
        BoundKind::SetA,
    ];

    pub fn direction(self) -> Direction {
        match self {
            BoundKind::SetA => Direction::Up,
            _ => Direction::Down,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::SetS => "S",
            BoundKind::SetB => "B",
            BoundKind::Zeta => "zeta",
            BoundKind::SetA => "A",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    pub kind: BoundKind,
    pub value: DirectedDecimal,
}

/// Certified `[lower, upper]` enclosure of `d(q)`.
#[derive(Debug, Clone, Serialize)]
pub struct DensityInterval {
    pub q: u64,
    pub lower: DirectedDecimal,
    pub upper: DirectedDecimal,
    pub digits_agreed: u32,
    pub winner_lower: BoundKind,
    pub winner_upper: BoundKind,
    pub params: BoundParams,
    /// Every bound that was evaluated, in [`BoundKind::ALL`] order.
    pub candidates: Vec<Candidate>,
}

impl DensityInterval {
    pub fn candidate(&self, kind: BoundKind) -> Option<&DirectedDecimal> {
        self.candidates
            .iter()
            .find(|c| c.kind == kind)
            .map(|c| &c.value)
    }
}

/// Number of leading significant digits shared by the decimal expansions of
/// two values in `[0, 1]`, each rounded in its certified direction.
pub fn digits_agreed(lower: &DirectedDecimal, upper: &DirectedDecimal) -> u32 {
    let places = lower.precision().max(upper.precision()) + 8;
    let lo = lower.to_fixed_string(places);
    let hi = upper.to_fixed_string(places);
    let (Some((li, lf)), Some((hi_i, hf))) = (lo.split_once('.'), hi.split_once('.')) else {
        return 0;
    };
    if li != hi_i {
        return 0;
    }
    let mut count = if li == "0" { 0 } else { li.len() as u32 };
    let mut leading = li == "0";
    for (a, b) in lf.bytes().zip(hf.bytes()) {
        if a != b {
            break;
        }
        if leading && a == b'0' {
            continue;
        }
        leading = false;
        count += 1;
    }
    count
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `(q^q - q^(q-1)) / (q^q - 1)` with exponent `e = q`, or the `q + 1`
/// variant with `e = q + 1`: `(q^e - q^(e-1)) / (q^e - 1)`.
fn normalizer(q: u64, e: u32) -> BigRational {
    let qb = BigInt::from(q);
    let top = qb.pow(e);
    ratio(&top - qb.pow(e - 1), top - 1)
}

/// Evaluates the bounds for one parameter set.
#[derive(Debug, Clone)]
pub struct BoundEngine {
    params: BoundParams,
    sets: ExponentSets,
    primes: Vec<u64>,
    zeta_q: ZetaEnclosure,
    zeta_q1: ZetaEnclosure,
}

impl BoundEngine {
    pub fn new(params: BoundParams) -> Result<Self> {
        params.validate()?;
        let sets = ExponentSets::from_params(&params)?;
        Self::with_sets(params, sets)
    }

    /// Engine over explicit (validated) exponent sets; the cutoffs in
    /// `params` are ignored.
    pub fn with_sets(params: BoundParams, sets: ExponentSets) -> Result<Self> {
        params.validate()?;
        if sets.q != params.q {
            return Err(Error::Argument(
                "exponent sets were built for another q".into(),
            ));
        }
        let primes = first_primes_excluding(params.num_primes, params.q);
        let work = params.working_precision();
        let s = u32::try_from(params.q).map_err(|_| Error::Argument("q too large".into()))?;
        let zeta_q = zeta_enclosure_refined(s, params.zeta_terms, work)?;
        let zeta_q1 = zeta_enclosure_refined(s + 1, params.zeta_terms, work)?;
        Ok(BoundEngine {
            params,
            sets,
            primes,
            zeta_q,
            zeta_q1,
        })
    }

    pub fn params(&self) -> &BoundParams {
        &self.params
    }

    pub fn sets(&self) -> &ExponentSets {
        &self.sets
    }

    /// The primes of `P`, increasing.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Enclosure of `zeta(q)` used by the A-bound (its high end).
    pub fn zeta_q(&self) -> &ZetaEnclosure {
        &self.zeta_q
    }

    /// Enclosure of `zeta(q + 1)` used by the zeta-normalized bound (its low end).
    pub fn zeta_q1(&self) -> &ZetaEnclosure {
        &self.zeta_q1
    }

    /// Exact per-prime factor of the product for `kind`.
    pub fn exact_factor(&self, kind: BoundKind, p: u64) -> Option<BigRational> {
        let q = self.params.q;
        let pb = BigInt::from(p);
        let one_minus_s = || {
            let k = self.params.s_cutoff;
            let n = scaled_power_sum(&pb, &self.sets.s, k);
            let den = pb.pow(k as u32 + 1);
            ratio(&den - (&pb - 1) * n, den)
        };
        Some(match kind {
            BoundKind::SetS => one_minus_s(),
            BoundKind::Zeta => {
                let pe = pb.pow(q as u32 + 1);
                one_minus_s() * ratio(pe.clone(), pe - 1)
            }
            BoundKind::SetB => {
                let (finite, k) = self.sets.b()?;
                let n = scaled_power_sum(&pb, finite, k);
                ratio(n * (&pb - 1) + 1, pb.pow(k as u32 + 1))
            }
            BoundKind::SetA => {
                let k = self.params.a_cutoff;
                let n = scaled_power_sum(&pb, &self.sets.a, k);
                let pq = pb.pow(q as u32);
                ratio(
                    (&pb - 1) * pb.pow(q as u32 - 1) * n,
                    (pq - 1) * pb.pow(k as u32),
                )
            }
        })
    }

    /// Directed product over `P` of the `kind` factors, at working precision.
    fn product(&self, kind: BoundKind, dir: Direction) -> Result<DirectedDecimal> {
        let work = self.params.working_precision();
        let partials = self
            .primes
            .par_chunks(CHUNK)
            .map(|chunk| {
                chunk
                    .iter()
                    .try_fold(DirectedDecimal::one(work)?, |acc, &p| {
                        let f = self
                            .exact_factor(kind, p)
                            .expect("factor is defined for requested kind");
                        acc.mul(&DirectedDecimal::from_ratio(&f, work, dir)?, dir)
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        partials
            .iter()
            .try_fold(DirectedDecimal::one(work)?, |acc, x| acc.mul(x, dir))
    }

    fn finish(&self, value: DirectedDecimal, dir: Direction) -> Result<DirectedDecimal> {
        value.round(self.params.precision, dir)
    }

    /// `1 - c * prod` as a lower bound, where `c` is an exact constant.
    fn lower_from(
        &self,
        c: &BigRational,
        prod_up: &DirectedDecimal,
        zeta_low: Option<&DirectedDecimal>,
    ) -> Result<DirectedDecimal> {
        let work = self.params.working_precision();
        let mut t =
            DirectedDecimal::from_ratio(c, work, Direction::Up)?.mul(prod_up, Direction::Up)?;
        if let Some(z) = zeta_low {
            t = t.div(z, Direction::Up)?;
        }
        let l = DirectedDecimal::one(work)?.sub(&t, Direction::Down)?;
        self.finish(l, Direction::Down)
    }

    pub fn lower_s(&self) -> Result<DirectedDecimal> {
        let prod = self.product(BoundKind::SetS, Direction::Up)?;
        self.lower_from(&ratio(self.params.q - 1, self.params.q), &prod, None)
    }

    pub fn lower_b(&self) -> Result<DirectedDecimal> {
        if self.sets.b().is_none() {
            return Err(Error::Argument("B-type bound needs a B cutoff".into()));
        }
        let prod = self.product(BoundKind::SetB, Direction::Up)?;
        self.lower_from(&ratio(self.params.q - 1, self.params.q), &prod, None)
    }

    pub fn lower_zeta(&self) -> Result<DirectedDecimal> {
        if !self.sets.q_in_s() {
            return Err(Error::InvalidSet {
                set: "S",
                value: self.params.q,
                reason: "(q itself) must belong to S for the zeta-normalized bound",
            });
        }
        self.lower_zeta_unchecked()
    }

    fn lower_zeta_unchecked(&self) -> Result<DirectedDecimal> {
        let prod = self.product(BoundKind::Zeta, Direction::Up)?;
        let c = normalizer(self.params.q, self.params.q as u32 + 1);
        self.lower_from(&c, &prod, Some(&self.zeta_q1.low))
    }

    pub fn upper_a(&self) -> Result<DirectedDecimal> {
        let work = self.params.working_precision();
        let prod = self.product(BoundKind::SetA, Direction::Down)?;
        let c = normalizer(self.params.q, self.params.q as u32);
        let t = DirectedDecimal::from_ratio(&c, work, Direction::Down)?
            .mul(&prod, Direction::Down)?
            .div(&self.zeta_q.high, Direction::Down)?;
        let u = DirectedDecimal::one(work)?.sub(&t, Direction::Up)?;
        self.finish(u, Direction::Up)
    }

    pub fn bound(&self, kind: BoundKind) -> Result<DirectedDecimal> {
        match kind {
            BoundKind::SetS => self.lower_s(),
            BoundKind::SetB => self.lower_b(),
            BoundKind::Zeta => self.lower_zeta(),
            BoundKind::SetA => self.upper_a(),
        }
    }

    /// Kinds whose preconditions hold for this engine.
    pub fn applicable(&self) -> Vec<BoundKind> {
        BoundKind::ALL
            .into_iter()
            .filter(|k| match k {
                BoundKind::SetB => self.sets.b().is_some(),
                BoundKind::Zeta => self.sets.q_in_s(),
                _ => true,
            })
            .collect()
    }

    /// Tightest interval over every applicable inequality.
    pub fn best_interval(&self) -> Result<DensityInterval> {
        let candidates = self
            .applicable()
            .into_iter()
            .map(|kind| {
                Ok(Candidate {
                    kind,
                    value: self.bound(kind)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        assemble(self.params.q, self.params.clone(), candidates)
    }
}

fn assemble(q: u64, params: BoundParams, candidates: Vec<Candidate>) -> Result<DensityInterval> {
    let pick = |dir: Direction| {
        candidates
            .iter()
            .filter(|c| c.kind.direction() == dir)
            .reduce(|best, c| {
                let ord = c.value.cmp_value(&best.value);
                let better = match dir {
                    Direction::Down => ord.is_gt(),
                    Direction::Up => ord.is_lt(),
                };
                if better {
                    c
                } else {
                    best
                }
            })
            .cloned()
            .ok_or_else(|| Error::Invariant(format!("no {dir:?} bound available")))
    };
    let lower = pick(Direction::Down)?;
    let upper = pick(Direction::Up)?;
    let zero = BigRational::zero();
    let one = BigRational::one();
    for lo in candidates
        .iter()
        .filter(|c| c.kind.direction() == Direction::Down)
    {
        for hi in candidates
            .iter()
            .filter(|c| c.kind.direction() == Direction::Up)
        {
            if lo.value.cmp_value(&hi.value).is_gt() {
                return Err(Error::Invariant(format!(
                    "lower bound {} ({}) exceeds upper bound {} ({})",
                    lo.kind, lo.value, hi.kind, hi.value
                )));
            }
        }
    }
    if upper.value.to_rational() > one || upper.value.to_rational() < zero {
        return Err(Error::Invariant(format!(
            "upper bound {} outside [0, 1]",
            upper.value
        )));
    }
    let lower_value = if lower.value.is_negative() {
        DirectedDecimal::from_integer(0, params.precision, Direction::Down)?
    } else {
        lower.value.clone()
    };
    Ok(DensityInterval {
        q,
        digits_agreed: digits_agreed(&lower_value, &upper.value),
        lower: lower_value,
        upper: upper.value,
        winner_lower: lower.kind,
        winner_upper: upper.kind,
        params,
        candidates,
    })
}

pub fn bound_lower_s(params: &BoundParams) -> Result<DirectedDecimal> {
    BoundEngine::new(params.clone())?.lower_s()
}

pub fn bound_lower_b(params: &BoundParams) -> Result<DirectedDecimal> {
    BoundEngine::new(params.clone())?.lower_b()
}

pub fn bound_upper_a(params: &BoundParams) -> Result<DirectedDecimal> {
    BoundEngine::new(params.clone())?.upper_a()
}

pub fn bound_lower_zeta(params: &BoundParams) -> Result<DirectedDecimal> {
    BoundEngine::new(params.clone())?.lower_zeta()
}

pub fn best_interval(params: &BoundParams) -> Result<DensityInterval> {
    BoundEngine::new(params.clone())?.best_interval()
}

/// `[2^-(q+1) (1 - 1/q) - q^-q, 2^-q (1 + 1/q)]`, the window that contains
/// `d(q) - 1/q`.
pub fn additive_window(q: u64) -> (BigRational, BigRational) {
    let qb = BigInt::from(q);
    let two = BigInt::from(2u8);
    let low = ratio(&qb - 1, two.pow(q as u32 + 1) * &qb) - ratio(1, qb.pow(q as u32));
    let high = ratio(&qb + 1, two.pow(q as u32) * &qb);
    (low, high)
}

/// Closed-form interval (the bounds with `P` empty) and its position
/// relative to the additive window around `1/q`.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticInterval {
    pub interval: DensityInterval,
    /// `lower - 1/q >= window low`, checked exactly on the rounded value.
    pub lower_in_window: bool,
    /// `upper - 1/q <= window high`.
    pub upper_in_window: bool,
}

pub fn asymptotic_interval(q: u64, precision: u32, zeta_terms: u64) -> Result<AsymptoticInterval> {
    let params = BoundParams::new(q, 0, 0, 0)
        .with_precision(precision)
        .with_zeta_terms(zeta_terms);
    let engine = BoundEngine::new(params.clone())?;
    let candidates = vec![
        Candidate {
            kind: BoundKind::Zeta,
            value: engine.lower_zeta_unchecked()?,
        },
        Candidate {
            kind: BoundKind::SetA,
            value: engine.upper_a()?,
        },
    ];
    let interval = assemble(q, params, candidates)?;
    let (wl, wh) = additive_window(q);
    let inv_q = ratio(1, q);
    Ok(AsymptoticInterval {
        lower_in_window: interval.lower.to_rational() - &inv_q >= wl,
        upper_in_window: interval.upper.to_rational() - &inv_q <= wh,
        interval,
    })
}
