//! The residue machinery, checked route against route.
//!
//! `zeta^4(s) zeta(2s-1)` has a pole of order 5 at s = 1; its principal
//! part has closed forms in the Stieltjes constants. The residue of
//! `f(s) g(s,x)` with `g = x^s s^{-2} zeta^{-1}(2s)` can be assembled
//! from the derivatives of g, or read off the product series. Both must
//! give the weighted s-variant main term.
//!
//! ```text
//! cargo run --release --example residue_cross_check
//! ```

use subgroup_sums::constants::ConstantsBank;
use subgroup_sums::hp::Real;
use subgroup_sums::residue::{
    f_coefficient_closed_forms, f_laurent, g_derivatives, main_term_coefficients, relative_gap,
    residue_via_g,
};
use subgroup_sums::Variant;

fn main() -> subgroup_sums::Result<()> {
    let bank = ConstantsBank::build(50)?;

    let f = f_laurent(&bank, 0)?;
    println!("f(s) = zeta^4(s) zeta(2s-1) at s = 1 (pole order {}):", f.pole_order());
    let anchors = f_coefficient_closed_forms(&bank);
    for (i, want) in anchors.iter().enumerate() {
        let pow = i as i64 - 5;
        println!(
            "  c_{pow:<2} = {:<28} closed-form gap {:.1e}",
            f.coeff(pow).to_decimal(20),
            relative_gap(&f.coeff(pow), want)
        );
    }

    let x = Real::from_u64(1_000_000, bank.bits());
    let g = g_derivatives(&x, &bank)?;
    println!("\ng-derivatives at x = 10^6 (display vs series verified internally):");
    for (i, v) in g.iter().enumerate() {
        println!("  g^({i})(1,x) = {}", v.to_decimal(20));
    }

    let res = residue_via_g(&x, &bank)?;
    let poly = main_term_coefficients(Variant::S, 2, &bank)?;
    let main = poly.eval(&x);
    println!("\nresidue via g:   {}", res.to_decimal(30));
    println!("series main term: {}", main.to_decimal(30));
    println!("relative gap:     {:.2e}", relative_gap(&res, &main));
    Ok(())
}
