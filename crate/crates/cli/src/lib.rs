//! The `towerdens` command line: tower factorizations, membership queries,
//! empirical density scans and certified density bounds.
//!
//! Data goes to standard output, diagnostics to standard error. Exit codes:
//! 0 success, 2 usage or argument error, 3 capacity exceeded, 4 internal
//! invariant violated.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use towerdens::bounds::{BoundEngine, BoundKind, BoundParams, DensityInterval, DEFAULT_PRECISION};
use towerdens::primes::{is_prime, Factorizer, PrimeFactorization};
use towerdens::rigor::{DirectedDecimal, Direction, DEFAULT_ZETA_TERMS};
use towerdens::scan::{density_scan, write_csv, CheckpointSchedule};
use towerdens::tower::{is_member, member_set, TowerFactorization};

pub mod reference;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "TOWERDENS_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "towerdens",
    version,
    about = "Tower factorizations and the densities of M(q)"
)]
pub struct Cli {
    /// Worker threads for scans and bound products (output does not depend on it).
    #[arg(long, global = true, env = THREADS_ENV, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tower factorization of N (a number or a product like 37349*11^669921875).
    Tower { n: String },
    /// Primes q with N in M(q), as a JSON array.
    Primes { n: String },
    /// Whether N belongs to M(Q).
    Member { n: String, q: u64 },
    /// Elements of M(Q) (or of its complement) in [LO, HI].
    Enum {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[arg(long)]
        complement: bool,
    },
    /// Empirical density of M(Q) on [1, N] at a schedule of checkpoints.
    Scan {
        #[arg(long)]
        q: u64,
        #[arg(long = "max")]
        n_max: u64,
        /// pow10, every:K or list:N1,N2,...
        #[arg(long, default_value = "pow10")]
        checkpoints: CheckpointSchedule,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certified lower and upper bounds on d(Q).
    Bound {
        #[arg(long)]
        q: u64,
        /// Number of smallest primes in P (Q itself is dropped).
        #[arg(long)]
        primes: usize,
        #[arg(long)]
        s_cutoff: u64,
        #[arg(long)]
        a_cutoff: u64,
        #[arg(long)]
        b_cutoff: Option<u64>,
        /// Significant decimal digits.
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
        #[arg(long, default_value_t = DEFAULT_ZETA_TERMS)]
        zeta_terms: u64,
    },
    /// Recompute a table of bounds from (q, p, a, s) rows.
    Table {
        /// `default` for the built-in reference rows, or a file of `q,p,a,s` lines.
        #[arg(long, default_value = "default")]
        rows: String,
        /// Only rows for these q (comma separated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u64>,
        #[arg(long, default_value_t = 80)]
        precision: u32,
        #[arg(long, default_value_t = DEFAULT_ZETA_TERMS)]
        zeta_terms: u64,
    },
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Lib(#[from] towerdens::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Failure {
    fn code(&self) -> i32 {
        use towerdens::Error as E;
        match self {
            Failure::Lib(E::Capacity { .. }) => EXIT_CAPACITY,
            Failure::Lib(E::Argument(_) | E::InvalidSet { .. }) => EXIT_USAGE,
            Failure::Lib(E::Direction(_) | E::DivisionByZero | E::Invariant(_)) => EXIT_INVARIANT,
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(e) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
            Failure::Io(_) => EXIT_USAGE,
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return e.exit_code();
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t as usize);
    }
    let pool = match pool.build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot start worker threads: {e}");
            return EXIT_INVARIANT;
        }
    };
    let mut buf = Vec::new();
    let result = pool
        .install(|| dispatch(&cli, &mut buf))
        .and_then(|()| Ok(stdout.write_all(&buf).and_then(|()| stdout.flush())?));
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code()
        }
    }
}

fn format_for(
    cli: &Cli,
    default: Format,
    allowed: &[Format],
) -> std::result::Result<Format, Failure> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Usage(
            format!("--format {f:?} is not supported by this command").to_lowercase(),
        ))
    }
}

/// `N`, `b^e` or a `*`-separated product of those.
pub fn parse_product(s: &str) -> Result<PrimeFactorization, towerdens::Error> {
    let bad =
        |what: &str| towerdens::Error::Argument(format!("cannot read {s:?} as a number: {what}"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad(t.trim()));
    let mut terms = Vec::new();
    for term in s.split('*') {
        let (b, e) = match term.split_once('^') {
            Some((b, e)) => (num(b)?, num(e)?),
            None => (num(term)?, 1),
        };
        if b == 0 {
            return Err(bad("zero has no tower factorization"));
        }
        terms.push((b, e));
    }
    PrimeFactorization::from_powers(&terms)
}

fn tower_of(s: &str) -> Result<TowerFactorization, towerdens::Error> {
    TowerFactorization::from_factorization(&parse_product(s)?, Factorizer::global())
}

fn json_line(out: &mut dyn Write, v: &impl Serialize) -> Outcome {
    serde_json::to_writer(&mut *out, v).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Tower { n } => {
            let fmt = format_for(cli, Format::Text, &[Format::Text, Format::Json])?;
            let t = tower_of(n)?;
            if fmt == Format::Json {
                json_line(out, &json!({ "render": t.to_string(), "tower": t }))?;
            } else {
                writeln!(out, "{t}")?;
                json_line(out, &t)?;
            }
        }
        Command::Primes { n } => {
            format_for(cli, Format::Json, &[Format::Text, Format::Json])?;
            json_line(out, &tower_of(n)?.primes())?;
        }
        Command::Member { n, q } => {
            format_for(cli, Format::Text, &[Format::Text, Format::Json])?;
            let member = match n.trim().parse::<u64>() {
                Ok(n) => is_member(n, *q)?,
                Err(_) if !is_prime(*q) => {
                    return Err(Failure::Lib(towerdens::Error::Argument(format!(
                        "q = {q} is not prime"
                    ))))
                }
                Err(_) => tower_of(n)?.contains_prime(*q),
            };
            writeln!(out, "{member}")?;
        }
        Command::Enum {
            q,
            lo,
            hi,
            complement,
        } => {
            let fmt = format_for(cli, Format::Text, &[Format::Text, Format::Json])?;
            let set = member_set(*q, *lo, *hi, *complement)?;
            if fmt == Format::Json {
                json_line(out, &set)?;
            } else {
                let words: Vec<String> = set.iter().map(u64::to_string).collect();
                writeln!(out, "{}", words.join(" "))?;
            }
        }
        Command::Scan {
            q,
            n_max,
            checkpoints,
            out: path,
        } => {
            let fmt = format_for(cli, Format::Csv, &[Format::Csv, Format::Json])?;
            let rows = density_scan(*q, *n_max, checkpoints)?;
            let mut buf = Vec::new();
            if fmt == Format::Json {
                json_line(&mut buf, &rows)?;
            } else {
                write_csv(&mut buf, &rows)?;
            }
            match path {
                Some(p) => fs::write(p, buf)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?,
                None => out.write_all(&buf)?,
            }
        }
        Command::Bound {
            q,
            primes,
            s_cutoff,
            a_cutoff,
            b_cutoff,
            precision,
            zeta_terms,
        } => {
            let fmt = format_for(cli, Format::Json, &[Format::Text, Format::Json])?;
            let mut params = BoundParams::new(*q, *primes, *s_cutoff, *a_cutoff)
                .with_precision(*precision)
                .with_zeta_terms(*zeta_terms);
            params.b_cutoff = *b_cutoff;
            let interval = BoundEngine::new(params)?.best_interval()?;
            if fmt == Format::Json {
                json_line(out, &bound_json(&interval))?;
            } else {
                write_bound_text(out, &interval)?;
            }
        }
        Command::Table {
            rows,
            only,
            precision,
            zeta_terms,
        } => {
            let fmt = format_for(
                cli,
                Format::Text,
                &[Format::Text, Format::Json, Format::Csv],
            )?;
            let mut specs = load_rows(rows)?;
            if !only.is_empty() {
                specs.retain(|r| only.contains(&r.q));
            }
            let results = specs
                .iter()
                .map(|r| table_row(r, *precision, *zeta_terms))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            write_table(out, fmt, &results)?;
        }
    }
    Ok(())
}

fn bound_json(i: &DensityInterval) -> Value {
    let by_kind = |k| i.candidate(k).map(DirectedDecimal::to_plain_string);
    json!({
        "q": i.q,
        "lower": i.lower,
        "upper": i.upper,
        "digits_agreed": i.digits_agreed,
        "winner_lower": i.winner_lower,
        "winner_upper": i.winner_upper,
        "params": i.params,
        "bounds": {
            "lower_s": by_kind(BoundKind::SetS),
            "lower_b": by_kind(BoundKind::SetB),
            "lower_zeta": by_kind(BoundKind::Zeta),
            "upper_a": by_kind(BoundKind::SetA),
        },
    })
}

fn write_bound_text(out: &mut dyn Write, i: &DensityInterval) -> io::Result<()> {
    writeln!(out, "q        {}", i.q)?;
    writeln!(out, "lower    {}  ({})", i.lower, i.winner_lower)?;
    writeln!(out, "upper    {}  ({})", i.upper, i.winner_upper)?;
    writeln!(out, "agreed   {} digits", i.digits_agreed)?;
    for c in &i.candidates {
        writeln!(out, "  {:<5} {}", c.kind.name(), c.value)?;
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct RowSpec {
    q: u64,
    primes: usize,
    a: u64,
    s: u64,
    reference: Option<&'static reference::ReferenceRow>,
}

fn load_rows(source: &str) -> std::result::Result<Vec<RowSpec>, Failure> {
    if source == "default" {
        return Ok(reference::ROWS
            .iter()
            .map(|r| RowSpec {
                q: r.q,
                primes: r.primes,
                a: r.a,
                s: r.s,
                reference: Some(r),
            })
            .collect());
    }
    let text = fs::read_to_string(source)
        .map_err(|e| Failure::Usage(format!("cannot read {source}: {e}")))?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty()
            || line.starts_with('#')
            || line.starts_with(|c: char| c.is_ascii_alphabetic())
        {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        let bad = || Failure::Usage(format!("{source}:{}: expected q,p,a,s", lineno + 1));
        if fields.len() != 4 {
            return Err(bad());
        }
        let nums: Vec<u64> = fields
            .iter()
            .map(|f| f.parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        rows.push(RowSpec {
            q: nums[0],
            primes: nums[1] as usize,
            a: nums[2],
            s: nums[3],
            reference: None,
        });
    }
    Ok(rows)
}

#[derive(Debug, Serialize)]
struct TableRow {
    q: u64,
    p: usize,
    a: u64,
    s: u64,
    lower: String,
    upper: String,
    digits_agreed: u32,
    winner_lower: BoundKind,
    winner_upper: BoundKind,
    /// `None` without reference values; otherwise whether the reference
    /// interval intersects the certified one.
    consistent: Option<bool>,
}

const TABLE_DIGITS: u32 = 35;

fn table_row(
    r: &RowSpec,
    precision: u32,
    zeta_terms: u64,
) -> std::result::Result<TableRow, Failure> {
    let params = BoundParams::new(r.q, r.primes, r.s, r.a)
        .with_precision(precision)
        .with_zeta_terms(zeta_terms);
    let i = BoundEngine::new(params)?.best_interval()?;
    let consistent = match r.reference {
        Some(p) => {
            let lo = DirectedDecimal::parse(
                p.lower,
                precision.max(p.lower.len() as u32),
                Direction::Down,
            )?;
            let hi = DirectedDecimal::parse(
                p.upper,
                precision.max(p.upper.len() as u32),
                Direction::Up,
            )?;
            Some(lo.cmp_value(&i.upper).is_le() && hi.cmp_value(&i.lower).is_ge())
        }
        None => None,
    };
    Ok(TableRow {
        q: r.q,
        p: r.primes,
        a: r.a,
        s: r.s,
        lower: i.lower.to_significant_string(TABLE_DIGITS),
        upper: i.upper.to_significant_string(TABLE_DIGITS),
        digits_agreed: i.digits_agreed,
        winner_lower: i.winner_lower,
        winner_upper: i.winner_upper,
        consistent,
    })
}

fn status(row: &TableRow) -> &'static str {
    match row.consistent {
        None => "-",
        Some(true) => "consistent",
        Some(false) => "MISMATCH",
    }
}

fn write_table(out: &mut dyn Write, fmt: Format, rows: &[TableRow]) -> Outcome {
    match fmt {
        Format::Json => json_line(out, &rows)?,
        Format::Csv => {
            writeln!(out, "q,p,a,s,lower,upper,digits_agreed,reference")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.q,
                    r.p,
                    r.a,
                    r.s,
                    r.lower,
                    r.upper,
                    r.digits_agreed,
                    status(r)
                )?;
            }
        }
        Format::Text => {
            writeln!(
                out,
                "{:>4} {:>6} {:>4} {:>4}  {:<40} {:>6}  reference",
                "q", "p", "a", "s", "bounds", "digits"
            )?;
            for r in rows {
                writeln!(
                    out,
                    "{:>4} {:>6} {:>4} {:>4}  {:<40} {:>6}  {}",
                    r.q,
                    r.p,
                    r.a,
                    r.s,
                    r.lower,
                    r.digits_agreed,
                    status(r)
                )?;
                writeln!(out, "{:>21}  {}", "", r.upper)?;
            }
            let flagged: Vec<String> = rows
                .iter()
                .filter(|r| r.consistent == Some(false))
                .map(|r| r.q.to_string())
                .collect();
            if !flagged.is_empty() {
                writeln!(
                    out,
                    "reference rows disjoint from the certified interval: q = {}",
                    flagged.join(", ")
                )?;
            }
        }
    }
    Ok(())
}
