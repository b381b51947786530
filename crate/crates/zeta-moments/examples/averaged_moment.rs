//! The δ-averaged double integral of the proportional-window moment against
//! its ¼Δ²X² log(1/Δ) + KΔ²X² prediction, K = 3/8 + B/4.
//!
//! ```text
//! cargo run --release --example averaged_moment
//! ```

use zeta_moments::moments::averaged_double_integral;
use zeta_moments::psi::build_psi_table;

fn main() -> zeta_moments::Result<()> {
    let x: f64 = 1e5;
    let table = build_psi_table(110_000)?;
    for cap in [1e-3, x.powf(-0.5), 1e-2] {
        let report = averaged_double_integral(&table, x, cap, 128)?;
        println!(
            "Delta = {cap:.3e}: value/Δ²X² = {:+.5}, predicted {:+.5}, residual {:+.4}, pass {}",
            report.computed,
            report.predicted,
            report.computed - report.predicted,
            report.pass
        );
    }
    Ok(())
}
