//! Shared inputs for the benchmarks in `benches/`.

use kostant_core::{Family, LieType};

/// `family` at `rank`; panics on ranks the family does not have.
pub fn lie(family: Family, rank: u32) -> LieType {
    LieType::new(family, rank).expect("benchmark ranks are valid")
}

/// Ranks exercised by the oracle benchmarks, kept small enough to finish
/// in well under a second each.
pub const ORACLE_RANKS: [(Family, u32); 4] = [
    (Family::A, 12),
    (Family::B, 8),
    (Family::C, 8),
    (Family::D, 8),
];
