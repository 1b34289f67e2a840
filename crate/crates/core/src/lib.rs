//! Subgroup counts of `Z_m x Z_n` and their summatory functions.
//!
//! The crate has three layers:
//!
//! * exact integer machinery: sieved arithmetic tables ([`arith`]),
//!   the subgroup-count formulas and the enumeration oracle ([`counts`]),
//!   and the summatory functions over the region `mn <= x` ([`summatory`]);
//! * high-precision analysis: Stieltjes constants and zeta derivatives
//!   ([`constants`]) feeding truncated Laurent series arithmetic that
//!   extracts the degree-4 main-term polynomials ([`residue`]);
//! * empirical error-term scans comparing the two ([`analysis`]), exposed
//!   through the `subgroup-sums` command-line tool ([`cli`]).
//!
//! See the `examples/` directory for a runnable tour of each capability.

pub mod analysis;
pub mod arith;
pub mod cli;
pub mod constants;
pub mod counts;
pub mod error;
pub mod hp;
pub mod residue;
pub mod summatory;

pub use error::{Error, Result};

/// Which subgroup count a computation refers to: all subgroups (`S`) or
/// cyclic subgroups only (`C`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    S,
    C,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Variant::S => write!(f, "s"),
            Variant::C => write!(f, "c"),
        }
    }
}
