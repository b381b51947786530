//! The truncated zero-sum approximation to ψ((1+δ)x) − ψ(x) − δx: pointwise
//! samples against the sieve truth, then the mean-square comparison.
//!
//! ```text
//! cargo run --release --example explicit_formula
//! ```

use zeta_moments::explicit::{verify_zero_sum_moment, zero_sum_increment, ZeroSumConfig};
use zeta_moments::psi::build_psi_table;
use zeta_moments::zeros::ZeroList;

fn main() -> zeta_moments::Result<()> {
    let delta = 0.05;
    let zeros = ZeroList::compute(350.0)?;
    let table = build_psi_table(800)?;
    let cfg = ZeroSumConfig::new(delta, 330.0)?;

    println!("pointwise, x sampled away from integers (delta = {delta}):");
    println!("{:>8} {:>12} {:>12}", "x", "zero sum", "psi truth");
    for x in [50.3, 101.7, 203.4, 302.6] {
        let approx = zero_sum_increment(&zeros, &cfg, x)?;
        let truth =
            table.psi((1.0 + delta) * x)? - table.psi(x)? - delta * x;
        println!("{x:>8.1} {approx:>12.4} {truth:>12.4}");
    }

    let report = verify_zero_sum_moment(&table, &zeros, 300.0, delta, 330.0)?;
    println!(
        "\nmean square over [300, 600]: zero-sum {:.2}, psi {:.2}, |diff| {:.2} ≤ {:.2} → {}",
        report.report.computed,
        report.report.predicted,
        report.report.abs_error,
        report.report.tolerance,
        if report.report.pass { "ok" } else { "FAIL" }
    );
    println!(
        "Z used {}, error-negligible recommendation {:.1e}",
        report.z_used, report.z_recommended
    );
    Ok(())
}
