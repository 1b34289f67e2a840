//! Exhaustive subgroup enumeration against the divisor-sum formulas.
//!
//! The oracle knows nothing about divisors: it generates the cyclic
//! subgroup of every element and closes pairs of generators under
//! addition. Agreement with the formulas is therefore a real test.
//!
//! ```text
//! cargo run --release --example oracle_vs_formulas
//! ```

use subgroup_sums::arith::build_tables;
use subgroup_sums::counts::{c_count, enumerate_subgroups, s_count, CFormula, SFormula};

fn main() -> subgroup_sums::Result<()> {
    let tables = build_tables(1_000)?;
    let limit = 24u64;
    let mut pairs = 0u64;
    for m in 1..=limit {
        for n in 1..=limit {
            let (total, cyclic) = enumerate_subgroups(m, n)?;
            let s = s_count(m, n, SFormula::F3, &tables)?;
            let c = c_count(m, n, CFormula::C4, &tables)?;
            assert_eq!((total, cyclic), (s, c), "mismatch at ({m}, {n})");
            pairs += 1;
        }
    }
    println!("oracle agrees with the formulas on all {pairs} pairs up to ({limit}, {limit})");

    for (m, n) in [(3, 3), (4, 6), (8, 12), (24, 24)] {
        let (total, cyclic) = enumerate_subgroups(m, n)?;
        println!(
            "Z_{m} x Z_{n}: {total} subgroups, {cyclic} cyclic, {} of rank two",
            total - cyclic
        );
    }
    Ok(())
}
