//! The kernel/Tauberian verifier battery with one line per report.
//!
//! ```text
//! cargo run --release --example lemma_suite
//! ```

use zeta_moments::kernels::verify::standard_suite;

fn main() -> zeta_moments::Result<()> {
    for report in standard_suite(0.1)? {
        println!(
            "[{}] {:28} computed {:+.6e}  predicted {:+.6e}  |err| {:.2e} ≤ {:.2e}",
            if report.pass { "pass" } else { "FAIL" },
            report.name,
            report.computed,
            report.predicted,
            report.abs_error,
            report.tolerance,
        );
    }
    Ok(())
}
