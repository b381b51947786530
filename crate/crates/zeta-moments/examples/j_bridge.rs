//! The smoothed integral J(X,T) against 2πF(X,T); the two agree up to a
//! log³T-sized slack.
//!
//! ```text
//! cargo run --release --example j_bridge
//! ```

use std::f64::consts::PI;

use zeta_moments::zeros::{compute_j, pair_correlation_f, PairCorrelationConfig, ZeroList};

fn main() -> zeta_moments::Result<()> {
    let list = ZeroList::compute(200.0)?;
    let cfg = PairCorrelationConfig::default();
    for (x, t) in [(std::f64::consts::E, 100.0), (10.0, 100.0), (40.0, 150.0)] {
        let j = compute_j(&list, x, t, 0.01)?;
        let f = pair_correlation_f(&list, x, t, &cfg)?;
        println!(
            "X = {x:6.3}, T = {t}: J = {:9.3} (±{:.2e}),  2πF = {:9.3},  gap = {:7.3}  \
             [slack 5log³T = {:.1}]",
            j.value,
            j.abs_error,
            2.0 * PI * f,
            (j.value - 2.0 * PI * f).abs(),
            5.0 * t.ln().powi(3)
        );
    }
    Ok(())
}
