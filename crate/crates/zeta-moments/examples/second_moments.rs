//! Exact second moments of ψ increments against their two-term asymptotic
//! predictions, plus the classical upper-bound ratios.
//!
//! ```text
//! cargo run --release --example second_moments
//! ```

use zeta_moments::moments::{
    second_moment_delta, second_moment_fixed_h, sv_bound_ratios, MomentResult, SvSample,
};
use zeta_moments::psi::build_psi_table;

fn main() -> zeta_moments::Result<()> {
    let x = 1e6;
    let table = build_psi_table(1_020_000)?;

    println!("{}", MomentResult::CSV_HEADER);
    for h in [100.0, 316.0, 1000.0, 3162.0, 10_000.0] {
        let r = second_moment_fixed_h(&table, x, h)?;
        println!("{}", r.to_csv_row());
    }
    for delta in [1e-4, 3.16e-4, 1e-3, 3.16e-3, 1e-2] {
        let r = second_moment_delta(&table, x, delta)?;
        println!("{}", r.to_csv_row());
    }

    let samples = [
        SvSample::FixedH { x, h: 1000.0 },
        SvSample::Delta { x, delta: 1e-3 },
    ];
    let ratios = sv_bound_ratios(&table, &samples)?;
    println!("\nupper-bound ratios (should stay well below 1):");
    println!("  fixed h=1000:   value / hX log²(2X/h)  = {:.4}", ratios[0]);
    println!("  delta=1e-3:     value / δX² log²(2/δ)  = {:.4}", ratios[1]);
    Ok(())
}
