use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest precision (significant decimal digits) accepted anywhere.
pub const MIN_PRECISION: u32 = 8;

/// Which side of the exact quantity a value certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// A lower bound: value <= exact.
    Down,
    /// An upper bound: value >= exact.
    Up,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Down => Direction::Up,
            Direction::Up => Direction::Down,
        }
    }
}

/// `mantissa * 10^exponent`, carrying at most `precision` significant digits
/// and bounding some exact quantity from `direction`.
///
/// Values marked exact equal the quantity they represent and certify either
/// direction. Every operation rounds its exact result once, toward the
/// requested direction, so it adds at most one unit in the last place.
#[derive(Debug, Clone)]
pub struct DirectedDecimal {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
    direction: Direction,
    exact: bool,
}

pub(crate) fn pow10(k: u32) -> BigInt {
    BigInt::from(10u8).pow(k)
}

/// Number of decimal digits of `|n|` (0 for zero).
pub(crate) fn decimal_digits(n: &BigInt) -> u32 {
    if n.is_zero() {
        return 0;
    }
    let mag = n.magnitude();
    let bits = mag.bits();
    let mut d = ((bits - 1) as f64 * std::f64::consts::LOG10_2) as u32 + 1;
    let ten = BigUint::from(10u8);
    while *mag >= ten.pow(d) {
        d += 1;
    }
    while d > 1 && *mag < ten.pow(d - 1) {
        d -= 1;
    }
    d
}

fn div_directed(num: &BigInt, den: &BigInt, dir: Direction) -> (BigInt, bool) {
    let (q, r) = num.div_mod_floor(den);
    let exact = r.is_zero();
    match dir {
        Direction::Down => (q, exact),
        Direction::Up if exact => (q, true),
        Direction::Up => (q + 1, false),
    }
}

/// Rounds `num / den * 10^exp` (with `den > 0`) to `precision` digits.
fn round_scaled(
    num: &BigInt,
    den: &BigInt,
    exp: i64,
    precision: u32,
    dir: Direction,
) -> (BigInt, i64, bool) {
    debug_assert!(den.is_positive());
    if num.is_zero() {
        return (BigInt::zero(), 0, true);
    }
    // The quotient has `est` or `est + 1` digits before scaling.
    let est = decimal_digits(num) as i64 - decimal_digits(den) as i64;
    let k = precision as i64 - est;
    let (mut m, mut exact) = if k >= 0 {
        div_directed(&(num * pow10(k as u32)), den, dir)
    } else {
        div_directed(num, &(den * pow10((-k) as u32)), dir)
    };
    let mut e = exp - k;
    // floor(floor(x) / 10) = floor(x / 10), likewise for ceil, so a second
    // shift still rounds the exact value only once.
    while decimal_digits(&m) > precision {
        let (m2, ex2) = div_directed(&m, &BigInt::from(10u8), dir);
        m = m2;
        exact &= ex2;
        e += 1;
    }
    (m, e, exact)
}

impl DirectedDecimal {
    fn build(
        num: &BigInt,
        den: &BigInt,
        exp: i64,
        precision: u32,
        dir: Direction,
        exact_in: bool,
    ) -> Self {
        let (mantissa, exponent, exact) = round_scaled(num, den, exp, precision, dir);
        DirectedDecimal {
            mantissa,
            exponent,
            precision,
            direction: dir,
            exact: exact && exact_in,
        }
    }

    fn check_precision(precision: u32) -> Result<()> {
        if precision < MIN_PRECISION {
            return Err(Error::Argument(format!(
                "precision {precision} below minimum {MIN_PRECISION}"
            )));
        }
        Ok(())
    }

    /// `num / den` rounded toward `dir`.
    pub fn from_rational(
        num: &BigInt,
        den: &BigInt,
        precision: u32,
        dir: Direction,
    ) -> Result<Self> {
        Self::check_precision(precision)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        Ok(Self::build(&num, &den, 0, precision, dir, true))
    }

    pub fn from_ratio(r: &BigRational, precision: u32, dir: Direction) -> Result<Self> {
        Self::from_rational(r.numer(), r.denom(), precision, dir)
    }

    pub fn from_integer(n: impl Into<BigInt>, precision: u32, dir: Direction) -> Result<Self> {
        Self::from_rational(&n.into(), &BigInt::one(), precision, dir)
    }

    pub fn one(precision: u32) -> Result<Self> {
        Self::from_integer(1, precision, Direction::Down)
    }

    /// Parses a plain decimal literal such as `-0.0125` or `42`.
    pub fn parse(s: &str, precision: u32, dir: Direction) -> Result<Self> {
        let bad = || Error::Argument(format!("not a decimal literal: {s:?}"));
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty()
            || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let mut m: BigInt = digits.parse().map_err(|_| bad())?;
        if neg {
            m = -m;
        }
        Self::check_precision(precision)?;
        Ok(Self::build(
            &m,
            &BigInt::one(),
            -(frac.len() as i64),
            precision,
            dir,
            true,
        ))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Whether this value may stand in for its quantity on side `dir`.
    pub fn certifies(&self, dir: Direction) -> bool {
        self.exact || self.direction == dir
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// The represented value as an exact rational.
    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa * pow10(self.exponent as u32))
        } else {
            BigRational::new(self.mantissa.clone(), pow10((-self.exponent) as u32))
        }
    }

    /// One unit in the last place at this value's precision.
    pub fn ulp(&self) -> BigRational {
        let lead = decimal_digits(&self.mantissa).max(1) as i64 + self.exponent;
        let e = lead - self.precision as i64;
        if e >= 0 {
            BigRational::from_integer(pow10(e as u32))
        } else {
            BigRational::new(BigInt::one(), pow10((-e) as u32))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa * pow10((self.exponent - e) as u32);
        let b = &other.mantissa * pow10((other.exponent - e) as u32);
        a.cmp(&b)
    }

    fn require(&self, dir: Direction, role: &str) -> Result<()> {
        if self.certifies(dir) {
            Ok(())
        } else {
            Err(Error::Direction(format!(
                "{role} certifies {:?} but {dir:?} is required",
                self.direction
            )))
        }
    }

    fn require_nonnegative(&self, role: &str) -> Result<()> {
        if self.is_negative() {
            Err(Error::Argument(format!("{role} must be nonnegative")))
        } else {
            Ok(())
        }
    }

    /// Re-rounds to `precision` digits toward `dir`.
    pub fn round(&self, precision: u32, dir: Direction) -> Result<Self> {
        Self::check_precision(precision)?;
        self.require(dir, "operand")?;
        Ok(Self::build(
            &self.mantissa,
            &BigInt::one(),
            self.exponent,
            precision,
            dir,
            self.exact,
        ))
    }

    fn aligned_sum(&self, other: &Self, negate_other: bool) -> (BigInt, i64) {
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa * pow10((self.exponent - e) as u32);
        let mut b = &other.mantissa * pow10((other.exponent - e) as u32);
        if negate_other {
            b = -b;
        }
        (a + b, e)
    }

    pub fn add(&self, other: &Self, dir: Direction) -> Result<Self> {
        self.require(dir, "left operand")?;
        other.require(dir, "right operand")?;
        let (m, e) = self.aligned_sum(other, false);
        let prec = self.precision.max(other.precision);
        Ok(Self::build(
            &m,
            &BigInt::one(),
            e,
            prec,
            dir,
            self.exact && other.exact,
        ))
    }

    /// `self - other`; `other` must certify the opposite side of `dir`.
    pub fn sub(&self, other: &Self, dir: Direction) -> Result<Self> {
        self.require(dir, "minuend")?;
        other.require(dir.flip(), "subtrahend")?;
        let (m, e) = self.aligned_sum(other, true);
        let prec = self.precision.max(other.precision);
        Ok(Self::build(
            &m,
            &BigInt::one(),
            e,
            prec,
            dir,
            self.exact && other.exact,
        ))
    }

    /// Product of nonnegative operands that both certify `dir`.
    pub fn mul(&self, other: &Self, dir: Direction) -> Result<Self> {
        self.require(dir, "left factor")?;
        other.require(dir, "right factor")?;
        self.require_nonnegative("left factor")?;
        other.require_nonnegative("right factor")?;
        let m = &self.mantissa * &other.mantissa;
        let prec = self.precision.max(other.precision);
        Ok(Self::build(
            &m,
            &BigInt::one(),
            self.exponent + other.exponent,
            prec,
            dir,
            self.exact && other.exact,
        ))
    }

    /// `self / other` for `self >= 0`; `other` must certify the opposite
    /// side of `dir` and be strictly positive.
    pub fn div(&self, other: &Self, dir: Direction) -> Result<Self> {
        self.require(dir, "dividend")?;
        other.require(dir.flip(), "divisor")?;
        self.require_nonnegative("dividend")?;
        if !other.mantissa.is_positive() {
            return Err(Error::DivisionByZero);
        }
        let prec = self.precision.max(other.precision);
        Ok(Self::build(
            &self.mantissa,
            &other.mantissa,
            self.exponent - other.exponent,
            prec,
            dir,
            self.exact && other.exact,
        ))
    }

    /// `self^n` for `self >= 0`, rounded once from the exact power when the
    /// exact power is of manageable size.
    pub fn pow_int(&self, n: u32, dir: Direction) -> Result<Self> {
        self.require(dir, "base")?;
        self.require_nonnegative("base")?;
        const EXACT_DIGIT_BUDGET: u64 = 20_000;
        if decimal_digits(&self.mantissa) as u64 * n as u64 <= EXACT_DIGIT_BUDGET {
            let m = self.mantissa.pow(n);
            return Ok(Self::build(
                &m,
                &BigInt::one(),
                self.exponent * n as i64,
                self.precision,
                dir,
                self.exact,
            ));
        }
        // Directed square-and-multiply with guard digits; every step rounds
        // the same way, so the result still bounds the power from `dir`.
        let work = self.precision + 20;
        let mut base = self.round(work, dir)?;
        let mut acc = Self::from_integer(1, work, dir)?;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, dir)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, dir)?;
            }
        }
        acc.round(self.precision, dir)
    }

    /// The larger value (lower bounds combine by maximum).
    pub fn max_of(self, other: Self) -> Self {
        if other.cmp_value(&self) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn min_of(self, other: Self) -> Self {
        if other.cmp_value(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }

    /// Exact plain decimal rendering without exponent notation; trailing
    /// fractional zeros are dropped.
    pub fn to_plain_string(&self) -> String {
        plain_string(&self.mantissa, self.exponent, true)
    }

    /// Rendering with `digits` significant digits, rounded so the printed
    /// value still certifies the stored direction (lower bounds truncate
    /// toward -inf, upper bounds round toward +inf). Exact values round
    /// toward -inf.
    pub fn to_significant_string(&self, digits: u32) -> String {
        if self.mantissa.is_zero() {
            return "0".to_string();
        }
        let dir = if self.exact {
            Direction::Down
        } else {
            self.direction
        };
        let (m, e, _) = round_scaled(
            &self.mantissa,
            &BigInt::one(),
            self.exponent,
            digits.max(1),
            dir,
        );
        plain_string(&m, e, true)
    }

    /// Rendering with exactly `places` digits after the decimal point,
    /// rounded in the certified direction.
    pub fn to_fixed_string(&self, places: u32) -> String {
        let dir = if self.exact {
            Direction::Down
        } else {
            self.direction
        };
        let (num, den) = if self.exponent >= 0 {
            (
                &self.mantissa * pow10(self.exponent as u32 + places),
                BigInt::one(),
            )
        } else {
            (
                &self.mantissa * pow10(places),
                pow10((-self.exponent) as u32),
            )
        };
        let (m, _) = div_directed(&num, &den, dir);
        plain_string(&m, -(places as i64), false)
    }
}

fn plain_string(m: &BigInt, e: i64, trim: bool) -> String {
    let sign = if m.sign() == Sign::Minus { "-" } else { "" };
    let digits = m.magnitude().to_string();
    if e >= 0 {
        if m.is_zero() {
            return "0".into();
        }
        return format!("{sign}{digits}{}", "0".repeat(e as usize));
    }
    let places = (-e) as usize;
    let (int, frac) = if digits.len() > places {
        let (a, b) = digits.split_at(digits.len() - places);
        (a.to_string(), b.to_string())
    } else {
        (
            "0".to_string(),
            format!("{}{}", "0".repeat(places - digits.len()), digits),
        )
    };
    let frac = if trim {
        frac.trim_end_matches('0')
    } else {
        frac.as_str()
    };
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl fmt::Display for DirectedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain_string())
    }
}
