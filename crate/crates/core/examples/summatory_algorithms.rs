//! The two summatory algorithms, cross-checked and timed.
//!
//! `NAIVE` walks every pair of the region mn <= x; `REDUCED` collapses the
//! region to tau-square kernel sums over d <= sqrt(x) and scales to 10^8+.
//!
//! ```text
//! cargo run --release --example summatory_algorithms
//! ```

use subgroup_sums::arith::build_tables;
use subgroup_sums::summatory::{summatory, tau_square_sum, Algorithm, Value};
use subgroup_sums::Variant;

fn main() -> subgroup_sums::Result<()> {
    let tables = build_tables(100_000)?;

    println!("kernel: sum of tau(k)^2 up to y");
    for y in [10.0, 1e3, 1e6] {
        println!("  T({y:>9}) = {}", tau_square_sum(y)?);
    }

    println!("\nnaive vs reduced on mn <= x:");
    for x in [100.0, 1e4, 1e5] {
        for variant in [Variant::S, Variant::C] {
            let a = summatory(variant, false, x, Algorithm::Naive, &tables)?;
            let b = summatory(variant, false, x, Algorithm::Reduced, &tables)?;
            assert_eq!(a.value, b.value);
            let (Value::Exact(v), w) = (b.value, a.elapsed) else { unreachable!() };
            println!(
                "  D_{variant}({x:>8}) = {v:>12}   naive {:>9.2?}  reduced {:>9.2?}",
                w, b.elapsed
            );
        }
    }

    println!("\nweighted sums scale far beyond the naive cap:");
    for x in [1e6, 1e7, 1e8] {
        let r = summatory(Variant::S, true, x, Algorithm::Reduced, &tables)?;
        println!(
            "  D~_s({x:>9e}) = {:>18.8e}   in {:.2?}",
            r.value.as_f64(),
            r.elapsed
        );
    }
    Ok(())
}
