//! Estimate the second-main-term constants from window sweeps and compare
//! with their closed forms.
//!
//! ```text
//! cargo run --release --example fit_constants
//! ```

use zeta_moments::kernels::Constants;
use zeta_moments::moments::{fit_constant, second_moment_delta, second_moment_fixed_h};
use zeta_moments::psi::build_psi_table;

fn main() -> zeta_moments::Result<()> {
    let x = 1e6;
    let table = build_psi_table(1_040_000)?;
    let c = Constants::get();
    let exponents = [0.35, 0.40, 0.45, 0.50, 0.55, 0.60];

    let h_results: Vec<_> = exponents
        .iter()
        .map(|&e| second_moment_fixed_h(&table, x, x.powf(e)))
        .collect::<zeta_moments::Result<_>>()?;
    let (b_hat, b_se) = fit_constant(&h_results)?;
    println!("fixed-window sweep  h = X^e, e in {exponents:?}");
    println!("  fitted constant {b_hat:+.4} ± {b_se:.4}   (B = {:+.10})", c.b);

    let d_results: Vec<_> = exponents
        .iter()
        .map(|&e| second_moment_delta(&table, x, x.powf(-e)))
        .collect::<zeta_moments::Result<_>>()?;
    let (c_hat, c_se) = fit_constant(&d_results)?;
    println!("proportional sweep  δ = X^-e");
    println!("  fitted constant {c_hat:+.4} ± {c_se:.4}   (C = {:+.10})", c.c);

    println!("\nper-window normalized residuals (→ the constant being fitted):");
    for (e, r) in exponents.iter().zip(&h_results) {
        println!(
            "  h = X^{e:.2}: (value − main)/hX = {:+.4}",
            (r.value - r.main_term) / (r.window.parameter() * r.x)
        );
    }
    Ok(())
}
