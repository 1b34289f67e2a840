//! Truncations of the double Dirichlet series against their closed values.
//!
//! For real z, w > 1 the series Σ s(m,n) m^{-z} n^{-w} equals
//! `zeta²(z) zeta²(w) zeta(z+w−1) / zeta(z+w)`, and the cyclic variant
//! divides by a second factor of zeta(z+w). Partial sums over mn <= N
//! approach the closed value from below.
//!
//! ```text
//! cargo run --release --example dirichlet_series_check
//! ```

use subgroup_sums::arith::build_tables;
use subgroup_sums::summatory::dirichlet_truncation;
use subgroup_sums::Variant;

fn main() -> subgroup_sums::Result<()> {
    let tables = build_tables(100_000)?;
    for variant in [Variant::S, Variant::C] {
        println!("variant {variant}, z = w = 2:");
        let mut prev_gap = f64::INFINITY;
        for n in [10, 100, 1_000, 10_000, 100_000] {
            let (partial, closed) = dirichlet_truncation(variant, 2.0, 2.0, n, 30, &tables)?;
            let gap = closed - partial;
            println!(
                "  N = {n:>6}: partial {partial:.12}  closed {closed:.12}  gap {gap:.3e}"
            );
            assert!(partial < closed && gap < prev_gap);
            prev_gap = gap;
        }
    }

    let (p, c) = dirichlet_truncation(Variant::S, 2.5, 3.5, 10_000, 30, &tables)?;
    println!("off-diagonal (z, w) = (2.5, 3.5): partial {p:.12} closed {c:.12}");
    Ok(())
}
