//! Directed-rounding decimal arithmetic and certified `zeta(s)` enclosures.

mod decimal;
mod zeta;

pub use decimal::{DirectedDecimal, Direction, MIN_PRECISION};
pub use zeta::{
    bernoulli_numbers, euler_maclaurin_tail, zeta_elementary_bounds, zeta_enclosure,
    zeta_enclosure_refined, ZetaEnclosure, DEFAULT_ZETA_TERMS, EULER_MACLAURIN_ORDER,
    MAX_ZETA_TERMS,
};
