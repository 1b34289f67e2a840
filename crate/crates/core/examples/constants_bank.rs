//! Build the validated constants bank and print it.
//!
//! Every Stieltjes constant is computed by Euler–Maclaurin summation and
//! re-derived through the alternating series Σ (−1)^{k−1} (log k)^j / k;
//! construction fails unless the two agree to `digits − 5` places.
//!
//! ```text
//! cargo run --release --example constants_bank
//! ```

use subgroup_sums::constants::{zeta_real, ConstantsBank};

fn main() -> subgroup_sums::Result<()> {
    let digits = 40;
    let bank = ConstantsBank::build(digits)?;

    println!("Stieltjes constants ({digits} digits):");
    for n in 0..=4 {
        println!("  gamma_{n} = {}", bank.gamma(n).to_decimal(digits));
    }
    println!("zeta derivatives at 2:");
    for j in 0..=4 {
        println!("  zeta^({j})(2) = {}", bank.zeta2_deriv(j).to_decimal(digits));
    }

    // the bank checks zeta(2) against pi^2/6 internally; show the match
    let pi2_6 = bank.pi().powi(2) / bank.real_from_i64(6);
    println!("\npi^2/6      = {}", pi2_6.to_decimal(digits));
    println!("zeta(2)     = {}", bank.zeta2_deriv(0).to_decimal(digits));

    println!("\nzeta at a few real points:");
    for t in [3.0, 4.0, 2.5] {
        println!("  zeta({t}) = {}", zeta_real(t, digits)?.to_decimal(digits));
    }
    Ok(())
}
