//! The weighted pair-correlation statistic F(X,T) against both asymptotic
//! regimes, plus the zero-density check.
//!
//! ```text
//! cargo run --release --example pair_correlation
//! ```

use zeta_moments::zeros::{
    compare_f_asymptotics, pair_correlation_f_detailed, verify_zero_density,
    PairCorrelationConfig, ZeroList,
};

fn main() -> zeta_moments::Result<()> {
    let list = ZeroList::compute(1200.0)?;
    let t = list.t_max();
    let cfg = PairCorrelationConfig::default();

    println!("zeros to {t}: {} ordinates\n", list.len());
    for (label, x) in [
        ("X = T^0.5 (theorem range)", t.powf(0.5)),
        ("X = T      (crossover)", t),
        ("X = T^1.3 (conjecture range)", t.powf(1.3)),
    ] {
        let f = pair_correlation_f_detailed(&list, x, t, &cfg)?;
        let cmp = compare_f_asymptotics(&list, x, t)?;
        println!(
            "{label}: F = {:10.2}, prediction = {:10.2}, ratio = {:.4} (tail ≤ {:.1e})",
            f.value,
            cmp.predicted,
            f.value / cmp.predicted,
            f.tail_bound
        );
    }

    let density = verify_zero_density(&list, &[10.0, 100.0, 500.0, 1000.0])?;
    println!(
        "\ndensity check: max Σ 1/(1+(t−γ)²) / log(t+2) = {:.3} (pass ≤ {})",
        density.computed, density.tolerance
    );
    Ok(())
}
