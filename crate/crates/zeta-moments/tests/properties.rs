//! Property-based invariants over the exact integrators and the pair sum.

use proptest::prelude::*;

use zeta_moments::moments::{second_moment_delta_range, second_moment_fixed_h_range};
use zeta_moments::psi::{build_psi_table, von_mangoldt, PsiTable};
use zeta_moments::zeros::{
    oracle, pair_correlation_f, PairCorrelationConfig, ZeroList, ZeroSource,
};

fn table() -> &'static PsiTable {
    use std::sync::OnceLock;
    static T: OnceLock<PsiTable> = OnceLock::new();
    T.get_or_init(|| build_psi_table(40_000).expect("sieve"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_increments_are_von_mangoldt(n in 2u64..30_000) {
        let t = table();
        prop_assert_eq!(t.lambda(n).to_bits(), von_mangoldt(n).to_bits());
        // cumulative is non-decreasing
        prop_assert!(t.psi_at(n) >= t.psi_at(n - 1));
    }

    #[test]
    fn fixed_h_moment_is_additive(
        x in 50.0f64..9_000.0,
        y_frac in 0.05f64..0.95,
        h in 0.25f64..60.0,
    ) {
        let t = table();
        let y = 1.0 + (x - 1.0) * y_frac;
        let whole = second_moment_fixed_h_range(t, 1.0, x, h).unwrap();
        let left = second_moment_fixed_h_range(t, 1.0, y, h).unwrap();
        let right = second_moment_fixed_h_range(t, y, x, h).unwrap();
        let err = ((left + right) - whole).abs();
        prop_assert!(err <= 1e-12 * whole.max(1.0), "split {y}: err {err}");
        prop_assert!(whole >= 0.0 && left >= 0.0 && right >= 0.0);
    }

    #[test]
    fn delta_moment_is_additive(
        x in 50.0f64..9_000.0,
        y_frac in 0.05f64..0.95,
        delta in 0.001f64..0.2,
    ) {
        let t = table();
        let y = 1.0 + (x - 1.0) * y_frac;
        let whole = second_moment_delta_range(t, 1.0, x, delta).unwrap();
        let left = second_moment_delta_range(t, 1.0, y, delta).unwrap();
        let right = second_moment_delta_range(t, y, x, delta).unwrap();
        let err = ((left + right) - whole).abs();
        prop_assert!(err <= 1e-12 * whole.max(1.0), "split {y}: err {err}");
    }

    #[test]
    fn pair_correlation_matches_double_loop(
        seed in 0u64..1u64 << 48,
        n_zeros in 2usize..120,
        x_log in 0.0f64..8.0,
    ) {
        // synthetic ascending ordinates with GUE-ish jitter
        let mut ords = Vec::with_capacity(n_zeros);
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
        let mut t = 14.0;
        for _ in 0..n_zeros {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let u = (state >> 11) as f64 / (1u64 << 53) as f64;
            t += 0.3 + 2.0 * u;
            ords.push(t);
        }
        let t_max = *ords.last().unwrap() + 1.0;
        let zeros = ZeroList::from_ordinates(ords, ZeroSource::Imported, t_max).unwrap();
        let cfg = PairCorrelationConfig { weight_cutoff: 1e9, block_size: 17 };
        let x = x_log.exp();
        let f = pair_correlation_f(&zeros, x, t_max, &cfg).unwrap();
        let full = oracle::f_double_loop(&zeros, x, t_max);
        prop_assert!((f - full).abs() <= 1e-9 * full.abs().max(1.0),
            "blocked {f} vs loop {full}");
        // X = 1 dominates the diagonal
        let f1 = pair_correlation_f(&zeros, 1.0, t_max, &cfg).unwrap();
        prop_assert!(f1 >= n_zeros as f64);
    }
}

#[test]
fn scaling_null_case_is_exact() {
    // windows that never cover a prime power: value = h²(X−1) exactly
    let t = table();
    // (x, x+h] ⊂ (23, 25) \ {25}: x in [23.2, 24.2], h = 0.7 keeps the
    // window inside (23.2, 24.9], never touching 25
    let (a, b, h) = (23.2, 24.2, 0.7);
    assert!(t.breakpoints_in(a, b + h).unwrap().is_empty());
    let v = second_moment_fixed_h_range(t, a, b, h).unwrap();
    assert!((v - h * h * (b - a)).abs() < 1e-12);
}

#[test]
fn sv_bound_ratios_bounded_over_sweep() {
    use zeta_moments::moments::{sv_bound_ratios, SvSample};
    let t = table();
    let mut samples = Vec::new();
    for i in 1..=50 {
        let x = 200.0 * i as f64;
        samples.push(SvSample::FixedH { x, h: (x / 100.0).max(1.0) });
        samples.push(SvSample::Delta { x, delta: 0.01 });
    }
    let ratios = sv_bound_ratios(t, &samples).unwrap();
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    assert!(ratios.iter().all(|r| r.is_finite() && *r >= 0.0));
    assert!(max <= 10.0, "max ratio {max}");
}
