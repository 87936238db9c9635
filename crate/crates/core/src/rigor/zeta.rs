//! Certified enclosures of `zeta(s)` for integers `s >= 2`.
//!
//! The partial sum `sum_{n <= M} n^-s` is accumulated in fixed point with
//! separate floor and ceiling accumulators. The tail is then bounded either
//! by integrals, `int_{M+1}^inf x^-s dx <= tail <= int_M^inf x^-s dx`, or by
//! an Euler-Maclaurin expansion whose remainder is bounded by the magnitude
//! of its last Bernoulli term.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::decimal::{decimal_digits, pow10, DirectedDecimal, Direction};
use crate::error::{Error, Result};

pub const DEFAULT_ZETA_TERMS: u64 = 100_000;

/// Upper limit on the number of summed terms.
pub const MAX_ZETA_TERMS: u64 = 100_000_000;

/// Bernoulli terms used by the Euler-Maclaurin tail.
pub const EULER_MACLAURIN_ORDER: usize = 20;

#[derive(Debug, Clone)]
pub struct ZetaEnclosure {
    pub s: u32,
    pub terms: u64,
    pub low: DirectedDecimal,
    pub high: DirectedDecimal,
}

impl ZetaEnclosure {
    pub fn width(&self) -> BigRational {
        self.high.to_rational() - self.low.to_rational()
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.low.to_rational() <= *x && *x <= self.high.to_rational()
    }
}

fn check_args(s: u32, terms: u64) -> Result<()> {
    if s < 2 {
        return Err(Error::Argument(format!("zeta(s) needs s >= 2, got {s}")));
    }
    if terms < 2 {
        return Err(Error::Argument(format!(
            "zeta needs at least 2 terms, got {terms}"
        )));
    }
    if terms > MAX_ZETA_TERMS {
        return Err(Error::capacity("zeta terms", terms, 2, MAX_ZETA_TERMS));
    }
    Ok(())
}

/// Floor and ceiling of `10^w * sum_{n=1}^{m} n^-s`.
///
/// Once `n^s > 10^w` every remaining term lies in `(0, 10^-w)`, so the
/// ceiling accumulator gains exactly one unit per term and the loop stops.
fn partial_sum_scaled(s: u32, m: u64, w: u32) -> (BigInt, BigInt) {
    let scale = pow10(w).to_biguint().expect("positive");
    let mut lo = BigUint::zero();
    let mut hi = BigUint::zero();
    for n in 1..=m {
        let d = BigUint::from(n).pow(s);
        if d > scale {
            hi += m - n + 1;
            break;
        }
        let (q, r) = scale.div_rem(&d);
        if !r.is_zero() {
            hi += 1u32;
        }
        hi += &q;
        lo += q;
    }
    (lo.into(), hi.into())
}

fn guard_digits(terms: u64) -> u32 {
    10 + decimal_digits(&BigInt::from(terms))
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `1 / ((s - 1) x^(s - 1))`, the integral of `t^-s` over `[x, inf)`.
fn integral_tail(s: u32, x: u64) -> BigRational {
    ratio(1, BigInt::from(s - 1) * BigInt::from(x).pow(s - 1))
}

/// Directed rounding of `partial / 10^w + tail`.
fn combine(
    partial: &BigInt,
    w: u32,
    tail: &BigRational,
    precision: u32,
    dir: Direction,
) -> Result<DirectedDecimal> {
    let value = ratio(partial.clone(), pow10(w)) + tail;
    DirectedDecimal::from_ratio(&value, precision, dir)
}

/// `1 + 2^-s <= zeta(s) <= 1 + (s + 1) / (2^s (s - 1))`, each end rounded
/// outward.
pub fn zeta_elementary_bounds(
    s: u32,
    precision: u32,
) -> Result<(DirectedDecimal, DirectedDecimal)> {
    if s < 2 {
        return Err(Error::Argument(format!("zeta(s) needs s >= 2, got {s}")));
    }
    let two_s = BigInt::from(2u8).pow(s);
    let low = BigRational::one() + ratio(1, two_s.clone());
    let high = BigRational::one() + ratio(s + 1, two_s * BigInt::from(s - 1));
    Ok((
        DirectedDecimal::from_ratio(&low, precision, Direction::Down)?,
        DirectedDecimal::from_ratio(&high, precision, Direction::Up)?,
    ))
}

/// Partial sum of `terms` terms plus integral tail bounds, intersected with
/// the elementary bounds.
pub fn zeta_enclosure(s: u32, terms: u64, precision: u32) -> Result<ZetaEnclosure> {
    check_args(s, terms)?;
    let w = precision + guard_digits(terms);
    let (lo, hi) = partial_sum_scaled(s, terms, w);
    let low = combine(
        &lo,
        w,
        &integral_tail(s, terms + 1),
        precision,
        Direction::Down,
    )?;
    let high = combine(&hi, w, &integral_tail(s, terms), precision, Direction::Up)?;
    let (elem_low, elem_high) = zeta_elementary_bounds(s, precision)?;
    Ok(ZetaEnclosure {
        s,
        terms,
        low: low.max_of(elem_low),
        high: high.min_of(elem_high),
    })
}

/// Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`).
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    static CACHE: OnceLock<Vec<BigRational>> = OnceLock::new();
    const CACHED: usize = 2 * EULER_MACLAURIN_ORDER + 2;
    if n <= CACHED {
        return CACHE.get_or_init(|| compute_bernoulli(CACHED))[..=n].to_vec();
    }
    compute_bernoulli(n)
}

fn compute_bernoulli(n: usize) -> Vec<BigRational> {
    // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        let mut binom = BigInt::one(); // C(m+1, 0)
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * &binom;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Euler-Maclaurin expansion of `sum_{n >= m} n^-s` truncated after
/// `order` Bernoulli terms, and a bound on the absolute remainder.
///
/// With `f(x) = x^-s`, `f^(j)(x) = (-1)^j (s)_j x^(-s-j)` where `(s)_j` is the
/// rising factorial, so the `k`-th correction is
/// `B_2k / (2k)! * (s)_(2k-1) * m^(-(s+2k-1))`. The remainder is at most
/// `|B_2K| / (2K)! * int_m^inf |f^(2K)|`, which is the magnitude of the
/// last included correction.
pub fn euler_maclaurin_tail(s: u32, m: u64, order: usize) -> (BigRational, BigRational) {
    let b = bernoulli_numbers(2 * order);
    let mb = BigInt::from(m);
    let mut main = integral_tail(s, m) + ratio(1, BigInt::from(2u8) * mb.pow(s));
    let mut rising = BigInt::from(s); // (s)_1
    let mut fact = BigInt::from(2u8); // (2k)! at k = 1
    let mut last = BigRational::zero();
    for k in 1..=order {
        let power = s + 2 * k as u32 - 1;
        let term = &b[2 * k] * BigRational::new(rising.clone(), &fact * mb.pow(power));
        last = term.abs();
        main += term;
        // (s)_(2k+1) and (2k+2)!
        rising *= BigInt::from(s + 2 * k as u32 - 1) * BigInt::from(s + 2 * k as u32);
        fact *= BigInt::from((2 * k + 1) * (2 * k + 2));
    }
    (main, last)
}

/// Euler-Maclaurin enclosure intersected with [`zeta_enclosure`]; both are
/// rigorous, so the intersection is too.
pub fn zeta_enclosure_refined(s: u32, terms: u64, precision: u32) -> Result<ZetaEnclosure> {
    let coarse = zeta_enclosure(s, terms, precision)?;
    let w = precision + guard_digits(terms);
    // Sum n < terms explicitly; the expansion covers n >= terms.
    let (lo, hi) = partial_sum_scaled(s, terms - 1, w);
    let (tail, remainder) = euler_maclaurin_tail(s, terms, EULER_MACLAURIN_ORDER);
    let low = combine(&lo, w, &(&tail - &remainder), precision, Direction::Down)?;
    let high = combine(&hi, w, &(&tail + &remainder), precision, Direction::Up)?;
    Ok(ZetaEnclosure {
        s,
        terms,
        low: low.max_of(coarse.low),
        high: high.min_of(coarse.high),
    })
}
