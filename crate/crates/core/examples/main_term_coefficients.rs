//! The degree-4 main-term polynomials for all four summatory functions.
//!
//! `D(x) ~ x P(log x)` with `P` of degree 4; the table prints `B_4 .. B_0`
//! for each variant and weight order. The leading coefficient depends only
//! on the variant: `1/(8 pi^2)` for s, `3/(4 pi^4)` for c.
//!
//! ```text
//! cargo run --release --example main_term_coefficients
//! ```

use subgroup_sums::constants::ConstantsBank;
use subgroup_sums::residue::{
    closed_form_weighted_s, main_term_coefficients, main_term_via_g, relative_gap,
};
use subgroup_sums::Variant;

fn main() -> subgroup_sums::Result<()> {
    let bank = ConstantsBank::build(40)?;

    for variant in [Variant::S, Variant::C] {
        for weight in [1u8, 2] {
            let p = main_term_coefficients(variant, weight, &bank)?;
            println!("variant {variant}, weight order {weight}:");
            for r in (0..=4).rev() {
                println!("  B_{r} = {}", p.coeff(r).to_decimal(32));
            }
        }
    }

    // the weighted s-variant has three independent routes; compare them
    let series = main_term_coefficients(Variant::S, 2, &bank)?;
    let closed = closed_form_weighted_s(&bank);
    let via_g = main_term_via_g(&bank);
    println!("route agreement for (s, weighted):");
    for r in (0..=4).rev() {
        println!(
            "  B_{r}: closed-form gap {:.2e}, g-derivative gap {:.2e}",
            relative_gap(closed.coeff(r), series.coeff(r)),
            relative_gap(via_g.coeff(r), series.coeff(r)),
        );
    }
    Ok(())
}
