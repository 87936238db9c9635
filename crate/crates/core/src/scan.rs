//! Empirical density of `M(q)` on `[1, N]`.
//!
//! `n ∈ M(q)` iff `q | n` or some exponent of `n` lies in `M(q)`; exponents
//! of `n < 2^64` never exceed 63, so one small [`MembershipTable`] is enough.
//! Numbers are factored by a segmented sieve: each segment divides out the
//! base primes up to `sqrt(N)`, and whatever remains above 1 is a prime to the
//! first power.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::{is_prime, Factorizer, SpfTable};
use crate::tower::{tower_factorize_with, MembershipTable};

pub const MAX_SCAN: u64 = 100_000_000;
pub const MAX_BRUTE_FORCE: u64 = 1_000_000;
pub const MAX_CHECKPOINTS: usize = 1_000_000;
pub const SEGMENT_LEN: u64 = 1 << 20;

/// Which `N` get a row in the output. `n_max` is always included.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum CheckpointSchedule {
    EveryK(u64),
    #[default]
    PowersOfTen,
    Explicit(Vec<u64>),
}

impl CheckpointSchedule {
    /// Sorted, deduplicated checkpoints in `1..=n_max`, ending at `n_max`.
    pub fn points(&self, n_max: u64) -> Result<Vec<u64>> {
        let mut pts: Vec<u64> = match self {
            CheckpointSchedule::EveryK(k) => {
                if *k == 0 {
                    return Err(Error::Argument("checkpoint step must be positive".into()));
                }
                let rows = n_max / k;
                if rows > MAX_CHECKPOINTS as u64 {
                    return Err(Error::capacity(
                        "checkpoints",
                        rows,
                        1,
                        MAX_CHECKPOINTS as u64,
                    ));
                }
                (1..=rows).map(|i| i * k).collect()
            }
            CheckpointSchedule::PowersOfTen => {
                std::iter::successors(Some(1u64), |x| x.checked_mul(10))
                    .take_while(|&x| x <= n_max)
                    .collect()
            }
            CheckpointSchedule::Explicit(list) => {
                if list.len() > MAX_CHECKPOINTS {
                    return Err(Error::capacity(
                        "checkpoints",
                        list.len() as u64,
                        1,
                        MAX_CHECKPOINTS as u64,
                    ));
                }
                if let Some(&bad) = list.iter().find(|&&n| n == 0 || n > n_max) {
                    return Err(Error::Argument(format!(
                        "checkpoint {bad} is outside 1..={n_max}"
                    )));
                }
                list.clone()
            }
        };
        pts.push(n_max);
        pts.sort_unstable();
        pts.dedup();
        Ok(pts)
    }
}

/// Accepts `pow10`, `every:K` and `list:N1,N2,...`.
impl FromStr for CheckpointSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Argument(format!(
                "bad checkpoint schedule {s:?} (expected pow10, every:K or list:N,...)"
            ))
        };
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        match s.split_once(':') {
            None if s == "pow10" => Ok(CheckpointSchedule::PowersOfTen),
            Some(("every", k)) => Ok(CheckpointSchedule::EveryK(num(k)?)),
            Some(("list", xs)) => Ok(CheckpointSchedule::Explicit(
                xs.split(',').map(num).collect::<Result<_>>()?,
            )),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for CheckpointSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckpointSchedule::EveryK(k) => write!(f, "every:{k}"),
            CheckpointSchedule::PowersOfTen => f.write_str("pow10"),
            CheckpointSchedule::Explicit(xs) => {
                let xs: Vec<String> = xs.iter().map(u64::to_string).collect();
                write!(f, "list:{}", xs.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanCheckpoint {
    pub n: u64,
    pub count: u64,
    /// `count / n` to 10 places, ties to even.
    pub density: String,
}

/// `count / n` with exactly 10 decimals, rounding half to even.
pub fn format_density(count: u64, n: u64) -> String {
    assert!(n > 0 && count <= n);
    let scaled = count as u128 * 10_000_000_000;
    let n = n as u128;
    let (mut q, r) = (scaled / n, scaled % n);
    if 2 * r > n || (2 * r == n && q % 2 == 1) {
        q += 1;
    }
    format!("{}.{:010}", q / 10_000_000_000, q % 10_000_000_000)
}

fn check_prime(q: u64) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::Argument(format!("q = {q} is not prime")))
    }
}

/// Membership flags for `lo..hi` (`lo >= 1`).
fn segment_members(lo: u64, hi: u64, q: u64, base: &[u32], table: &MembershipTable) -> Vec<bool> {
    let len = (hi - lo) as usize;
    let mut rem: Vec<u32> = (lo..hi).map(|n| n as u32).collect();
    let mut member = vec![false; len];
    for &p in base {
        let p64 = p as u64;
        if p64 * p64 >= hi {
            break;
        }
        let mut i = (lo.div_ceil(p64) * p64 - lo) as usize;
        while i < len {
            let mut r = rem[i];
            let mut e = 0u64;
            while r.is_multiple_of(p) {
                r /= p;
                e += 1;
            }
            rem[i] = r;
            if !member[i] && (p64 == q || table.get(e) == Some(true)) {
                member[i] = true;
            }
            i += p as usize;
        }
    }
    for (m, &r) in member.iter_mut().zip(&rem) {
        if r as u64 == q {
            *m = true;
        }
    }
    member
}

/// `|M(q) ∩ [1, N]|` at every checkpoint `N`.
///
/// Segments run in parallel on the current rayon pool and are merged in
/// index order, so the output does not depend on the thread count.
pub fn density_scan(
    q: u64,
    n_max: u64,
    schedule: &CheckpointSchedule,
) -> Result<Vec<ScanCheckpoint>> {
    check_prime(q)?;
    if !(1..=MAX_SCAN).contains(&n_max) {
        return Err(Error::capacity("scan limit", n_max, 1, MAX_SCAN));
    }
    let points = schedule.points(n_max)?;
    let table = MembershipTable::new(q, 64)?;
    let base = SpfTable::new(n_max.isqrt().max(2))?;
    let base = base.primes();

    let segments = n_max.div_ceil(SEGMENT_LEN);
    // Per segment: (counts at the checkpoints inside it, segment total).
    let partial: Vec<(Vec<u64>, u64)> = (0..segments)
        .into_par_iter()
        .map(|s| {
            let lo = 1 + s * SEGMENT_LEN;
            let hi = (lo + SEGMENT_LEN).min(n_max + 1);
            let flags = segment_members(lo, hi, q, base, &table);
            let start = points.partition_point(|&n| n < lo);
            let end = points.partition_point(|&n| n < hi);
            let mut at = Vec::with_capacity(end - start);
            let mut count = 0u64;
            let mut next = start;
            for (i, &f) in flags.iter().enumerate() {
                count += f as u64;
                while next < end && points[next] == lo + i as u64 {
                    at.push(count);
                    next += 1;
                }
            }
            (at, count)
        })
        .collect();

    let mut out = Vec::with_capacity(points.len());
    let mut before = 0u64;
    let mut pts = points.iter();
    for (at, total) in partial {
        for c in at {
            let n = *pts.next().expect("one count per checkpoint");
            let count = before + c;
            out.push(ScanCheckpoint {
                n,
                count,
                density: format_density(count, n),
            });
        }
        before += total;
    }
    Ok(out)
}

/// Independent count: builds the full tower of every `n <= n_max` by trial
/// division and Pollard rho, sharing no sieve state with [`density_scan`].
pub fn brute_force_count(q: u64, n_max: u64) -> Result<u64> {
    check_prime(q)?;
    if n_max > MAX_BRUTE_FORCE {
        return Err(Error::capacity(
            "brute-force limit",
            n_max,
            0,
            MAX_BRUTE_FORCE,
        ));
    }
    let f = Factorizer::without_sieve();
    let mut count = 0;
    for n in 1..=n_max {
        if tower_factorize_with(n, &f)?.contains_prime(q) {
            count += 1;
        }
    }
    Ok(count)
}

pub const CSV_HEADER: &str = "N,count,density";

pub fn write_csv<W: Write>(mut w: W, rows: &[ScanCheckpoint]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{},{}", r.n, r.count, r.density)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last(q: u64, n: u64) -> ScanCheckpoint {
        density_scan(q, n, &CheckpointSchedule::Explicit(vec![n]))
            .unwrap()
            .pop()
            .unwrap()
    }

    #[test]
    fn small_scans() {
        let one = last(2, 1);
        assert_eq!((one.count, one.density.as_str()), (0, "0.0000000000"));
        let ten = last(2, 10);
        assert_eq!((ten.count, ten.density.as_str()), (6, "0.6000000000"));
        assert_eq!(brute_force_count(2, 10).unwrap(), 6);
        assert_eq!(brute_force_count(5, 1).unwrap(), 0);
        assert_eq!(brute_force_count(3, 100).unwrap(), last(3, 100).count);
    }

    #[test]
    fn crosses_segment_boundaries() {
        let n = 3 * SEGMENT_LEN + 17;
        let pts = vec![
            SEGMENT_LEN - 1,
            SEGMENT_LEN,
            SEGMENT_LEN + 1,
            2 * SEGMENT_LEN,
        ];
        let rows = density_scan(3, n, &CheckpointSchedule::Explicit(pts.clone())).unwrap();
        let ns: Vec<u64> = rows.iter().map(|r| r.n).collect();
        assert_eq!(ns, [pts, vec![n]].concat());
        assert!(rows.windows(2).all(|w| w[0].count <= w[1].count));
        assert_eq!(rows[1].count, last(3, SEGMENT_LEN).count);
        assert_eq!(rows[4].count, last(3, n).count);
    }

    #[test]
    fn large_prime_remainders() {
        // 2 * 1000003 has a cofactor above sqrt(N); 1000003 itself is a prime
        let base = last(1000003, 2_000_006);
        assert_eq!(base.count, 2);
    }

    #[test]
    fn schedules() {
        let s: CheckpointSchedule = "pow10".parse().unwrap();
        assert_eq!(s.points(250).unwrap(), vec![1, 10, 100, 250]);
        let s: CheckpointSchedule = "every:100".parse().unwrap();
        assert_eq!(s.points(250).unwrap(), vec![100, 200, 250]);
        let s: CheckpointSchedule = "list:5,3,5".parse().unwrap();
        assert_eq!(s.points(10).unwrap(), vec![3, 5, 10]);
        assert_eq!(s.to_string(), "list:5,3,5");
        assert!("list:0"
            .parse::<CheckpointSchedule>()
            .unwrap()
            .points(10)
            .is_err());
        assert!("list:11"
            .parse::<CheckpointSchedule>()
            .unwrap()
            .points(10)
            .is_err());
        assert!("every:0"
            .parse::<CheckpointSchedule>()
            .unwrap()
            .points(10)
            .is_err());
        assert!("every:x".parse::<CheckpointSchedule>().is_err());
        assert!("daily".parse::<CheckpointSchedule>().is_err());
        assert!(matches!(
            CheckpointSchedule::EveryK(1).points(MAX_SCAN),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn densities_round_half_even() {
        assert_eq!(format_density(1, 3), "0.3333333333");
        assert_eq!(format_density(2, 3), "0.6666666667");
        assert_eq!(format_density(7, 7), "1.0000000000");
        // 1/2^11 = 0.00048828125: the dropped digit is exactly 5 after an even digit
        assert_eq!(format_density(1, 2048), "0.0004882812");
        // 3/2^11 = 0.00146484375: ... after an odd digit
        assert_eq!(format_density(3, 2048), "0.0014648438");
    }

    #[test]
    fn limits() {
        assert!(matches!(
            density_scan(2, 0, &CheckpointSchedule::PowersOfTen),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            density_scan(2, MAX_SCAN + 1, &CheckpointSchedule::PowersOfTen),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            brute_force_count(2, MAX_BRUTE_FORCE + 1),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            density_scan(4, 10, &CheckpointSchedule::PowersOfTen),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(
            &mut buf,
            &density_scan(2, 10, &CheckpointSchedule::PowersOfTen).unwrap(),
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "N,count,density\n1,0,0.0000000000\n10,6,0.6000000000\n"
        );
    }
}
