//! Tower factorizations of integers and the densities of the sets `M(q)`.
//!
//! An integer's tower factorization writes `n = p1^(f1) * ... * pk^(fk)` where
//! each exponent tower `fi` is itself the tower factorization of the ordinary
//! exponent. `M(q)` is the set of positive integers whose tower contains the
//! prime `q` anywhere; `d(q)` is its natural density.
//!
//! The crate is organised bottom-up:
//!
//! * [`primes`]: sieves, deterministic 64-bit primality, factorization.
//! * [`tower`]: tower trees, membership in `M(q)`, enumeration.
//! * [`rigor`]: decimal arithmetic with directed rounding and certified
//!   enclosures of `zeta(s)`.
//! * [`bounds`]: certified lower/upper bounds on `d(q)` from truncated Euler
//!   products.
//! * [`scan`]: empirical densities `|M(q) ∩ [1, N]| / N`.

pub mod bounds;
pub mod error;
pub mod primes;
pub mod rigor;
pub mod scan;
pub mod tower;

pub use error::{Error, Result};
