//! Count subgroups of Z_m x Z_n with every closed formula.
//!
//! ```text
//! cargo run --release --example count_subgroups
//! ```

use subgroup_sums::arith::build_tables;
use subgroup_sums::counts::{c_count, s_count, CFormula, SFormula};

fn main() -> subgroup_sums::Result<()> {
    let tables = build_tables(10_000)?;

    println!("{:>6} {:>6} | {:>8} {:>8}", "m", "n", "s(m,n)", "c(m,n)");
    for (m, n) in [(1, 1), (2, 2), (3, 3), (4, 6), (12, 18), (60, 90), (720, 1080)] {
        let s = s_count(m, n, SFormula::F2, &tables)?;
        let c = c_count(m, n, CFormula::C2, &tables)?;
        println!("{m:>6} {n:>6} | {s:>8} {c:>8}");
    }

    // all formulas compute the same values through different identities
    let (m, n) = (48, 36);
    println!("\nformula agreement at ({m}, {n}):");
    for f in [SFormula::F1, SFormula::F2, SFormula::F3] {
        println!("  s via {f:?} = {}", s_count(m, n, f, &tables)?);
    }
    for f in [CFormula::C1, CFormula::C2, CFormula::C3, CFormula::C4] {
        println!("  c via {f:?} = {}", c_count(m, n, f, &tables)?);
    }

    // coprime orders collapse to tau(m) tau(n)
    let (m, n) = (125, 81);
    println!(
        "\ncoprime ({m}, {n}): s = c = {} = tau({m}) tau({n}) = {}",
        s_count(m, n, SFormula::F1, &tables)?,
        tables.tau(m) * tables.tau(n)
    );
    Ok(())
}
