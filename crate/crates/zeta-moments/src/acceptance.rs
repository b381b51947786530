//! The acceptance checklist behind `verify-all`.
//!
//! Fourteen end-to-end checks with pinned tolerances: exactness of the
//! sieve and the moment integrators against independent oracles, the
//! constants, the reference integrals and kernel identities, certified zero
//! computation, pair-correlation consistency and asymptotics, the J–F
//! bridge, second-term fits, the verifier battery on synthetic inputs, the
//! zero-sum moment comparison, and determinism of the lot. Expensive
//! artifacts (zeros to 5000, the 10⁷ sieve) are built once and shared.

use std::f64::consts::{E, LN_2, PI};
use std::sync::OnceLock;
use std::time::Instant;

use serde::Serialize;

use crate::explicit;
use crate::kernels::verify as kverify;
use crate::kernels::{self, Constants, KernelParams};
use crate::moments;
use crate::psi::{self, build_psi_table, PsiTable};
use crate::sampled::SampledFunction;
use crate::zeros::{self, PairCorrelationConfig, ZeroList};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub runtime_ms: u128,
}

fn outcome(
    id: u32,
    name: &'static str,
    started: Instant,
    pass: bool,
    detail: String,
) -> CriterionOutcome {
    CriterionOutcome {
        id,
        name,
        pass,
        detail,
        runtime_ms: started.elapsed().as_millis(),
    }
}

use crate::rng::SplitMix;

fn table_1e6() -> &'static PsiTable {
    static T: OnceLock<PsiTable> = OnceLock::new();
    T.get_or_init(|| build_psi_table(1_001_000).expect("sieve to 1e6"))
}

fn table_1e7() -> &'static PsiTable {
    static T: OnceLock<PsiTable> = OnceLock::new();
    T.get_or_init(|| build_psi_table(10_040_000).expect("sieve to 1e7"))
}

fn zeros_5k() -> &'static ZeroList {
    static Z: OnceLock<ZeroList> = OnceLock::new();
    Z.get_or_init(|| ZeroList::compute(5000.0).expect("zeros to 5000"))
}

/// ψ table vs the per-n trial-division oracle, bit for bit.
pub fn criterion_01_psi_exactness() -> CriterionOutcome {
    let started = Instant::now();
    let limit = 1_000_000u64;
    let table = match build_psi_table(limit) {
        Ok(t) => t,
        Err(e) => return outcome(1, "psi-exactness", started, false, e.to_string()),
    };
    let oracle = psi::psi_oracle_cumulative(limit);
    let mut rng = SplitMix::new(0x01);
    let mut mismatches = 0usize;
    for _ in 0..10_000 {
        let n = 2 + (rng.next_u64() % (limit - 1));
        if table.psi_at(n).to_bits() != oracle[n as usize].to_bits() {
            mismatches += 1;
        }
    }
    // psi(10) = log(2^3 · 3^2 · 5 · 7) = log 2520
    let psi10 = table.psi_at(10);
    let psi10_ok = (psi10 - 7.8320141805054693).abs() <= 1e-9;
    let elapsed = started.elapsed().as_secs_f64();
    let pass = mismatches == 0 && psi10_ok && elapsed < 5.0;
    outcome(
        1,
        "psi-exactness",
        started,
        pass,
        format!(
            "10^4 sampled n: {mismatches} mismatches; psi(10) = {psi10:.10}; {elapsed:.2}s"
        ),
    )
}

/// Exact integrators vs midpoint Riemann sums at step 1e-2.
pub fn criterion_02_moment_oracle() -> CriterionOutcome {
    let started = Instant::now();
    let table = table_1e6();
    let mut rng = SplitMix::new(0x02);
    let mut worst = 0.0f64;
    let mut worst_case = String::new();
    for i in 0..50 {
        let x = rng.range(500.0, 10_000.0);
        let h = rng.range(0.5, 100.0);
        let exact = match moments::second_moment_fixed_h_range(table, 1.0, x, h) {
            Ok(v) => v,
            Err(e) => return outcome(2, "moment-oracle", started, false, e.to_string()),
        };
        let riemann = moments::oracle::riemann_fixed_h_stratified(table, x, h, 0.01, 0x51 + i);
        let rel = (exact - riemann).abs() / exact.abs().max(1e-30);
        if rel > worst {
            worst = rel;
            worst_case = format!("h-sample {i}: X={x:.1}, h={h:.2}");
        }
    }
    for i in 0..50 {
        let x = rng.range(500.0, 10_000.0);
        let delta = rng.range(1e-3, 0.05);
        let exact = match moments::second_moment_delta_range(table, 1.0, x, delta) {
            Ok(v) => v,
            Err(e) => return outcome(2, "moment-oracle", started, false, e.to_string()),
        };
        let riemann =
            moments::oracle::riemann_delta_stratified(table, x, delta, 0.01, 0xD1 + i);
        let rel = (exact - riemann).abs() / exact.abs().max(1e-30);
        if rel > worst {
            worst = rel;
            worst_case = format!("delta-sample {i}: X={x:.1}, delta={delta:.4}");
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    let pass = worst <= 1e-3 && elapsed < 60.0;
    outcome(
        2,
        "moment-oracle",
        started,
        pass,
        format!("worst relative difference {worst:.3e} ({worst_case}); {elapsed:.1}s"),
    )
}

/// The constants and their cross-relations.
pub fn criterion_03_constants() -> CriterionOutcome {
    let started = Instant::now();
    let c = Constants::get();
    let quoted = [
        (c.b, -2.4150927313, "B"),
        (c.c, -0.7075463657, "C"),
        (c.d, -2.8378770664, "D"),
        (c.c_prime, -1.0541199560, "C'"),
    ];
    let mut detail = String::new();
    let mut pass = true;
    for (got, want, name) in quoted {
        let ok = (got - want).abs() <= 5e-10;
        pass &= ok;
        detail.push_str(&format!("{name}={got:.10} "));
    }
    let rel1 = kernels::ulp_distance(c.c, 0.5 * (1.0 + c.b));
    let rel2 = kernels::ulp_distance(c.c, c.c_prime + 0.5 * LN_2);
    pass &= rel1 <= 2 && rel2 <= 2;
    detail.push_str(&format!("; relation ulps: {rel1}, {rel2}"));
    outcome(3, "constants", started, pass, detail)
}

/// The two sinc reference integrals by quadrature.
pub fn criterion_04_sinc_integrals() -> CriterionOutcome {
    let started = Instant::now();
    let (plain, logw) = match kverify::sinc_integrals() {
        Ok(v) => v,
        Err(e) => return outcome(4, "sinc-integrals", started, false, e.to_string()),
    };
    let c = Constants::get();
    let expect_log = -(PI / 2.0) * (c.euler_c0 + LN_2 - 1.0);
    let e1 = (plain - PI / 2.0).abs();
    let e2 = (logw - expect_log).abs();
    let pass = e1 <= 1e-8 && e2 <= 1e-8 && started.elapsed().as_secs_f64() < 1.0;
    outcome(
        4,
        "sinc-integrals",
        started,
        pass,
        format!("plain err {e1:.2e}, log-weighted err {e2:.2e} (≈ -0.4246850)"),
    )
}

/// K̂ = transform of K″ at 18 (η, t) pairs.
pub fn criterion_05_kernel_identity() -> CriterionOutcome {
    let started = Instant::now();
    let mut worst = 0.0f64;
    let mut all_pass = true;
    for eta in [0.05, 0.1, 0.2] {
        let params = KernelParams::new(eta).expect("valid eta");
        for t in [0.25, 0.5, 1.0 + eta / 2.0, 1.0 + eta, 2.0, 5.0] {
            match kverify::verify_khat_integral_identity(&params, t) {
                Ok(r) => {
                    worst = worst.max(r.abs_error);
                    all_pass &= r.abs_error <= 1e-6;
                }
                Err(e) => {
                    return outcome(5, "kernel-identity", started, false, e.to_string())
                }
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    let pass = all_pass && elapsed < 30.0;
    outcome(
        5,
        "kernel-identity",
        started,
        pass,
        format!("worst |quadrature − K̂| = {worst:.2e} over 18 pairs; {elapsed:.1}s"),
    )
}

/// K″ decay bound and finite-difference agreement.
pub fn criterion_06_kpp_bound() -> CriterionOutcome {
    let started = Instant::now();
    let grid = kverify::log_grid(1e-3, 1e3, 400);
    let mut worst_ratio = 0.0f64;
    let mut bound_ok = true;
    for eta in [0.05, 0.1, 0.2] {
        let params = KernelParams::new(eta).expect("valid eta");
        match kverify::verify_kpp_decay_bound(&params, &grid) {
            Ok(r) => {
                worst_ratio = worst_ratio.max(r.computed);
                bound_ok &= r.pass;
            }
            Err(e) => return outcome(6, "kpp-bound", started, false, e.to_string()),
        }
    }
    // finite differences at 50 random safe points
    let params = KernelParams::new(0.1).expect("valid eta");
    let x0 = params.pole_location();
    let mut rng = SplitMix::new(0x06);
    let mut fd_worst = 0.0f64;
    let mut checked = 0;
    while checked < 50 {
        let x = rng.range(2e-3, 30.0);
        if x.abs() < 1e-3 || (x - x0).abs() < 1e-3 {
            continue;
        }
        checked += 1;
        let h = 1e-5;
        let fd = (kernels::kernel_k(&params, x + h) - 2.0 * kernels::kernel_k(&params, x)
            + kernels::kernel_k(&params, x - h))
            / (h * h);
        fd_worst = fd_worst.max((fd - kernels::kernel_k_second_derivative(&params, x)).abs());
    }
    let pass = bound_ok && fd_worst <= 1e-4;
    outcome(
        6,
        "kpp-bound",
        started,
        pass,
        format!("max ratio {worst_ratio:.2}; max FD deviation {fd_worst:.2e}"),
    )
}

/// Zero computation with completeness certificates.
pub fn criterion_07_zero_computation() -> CriterionOutcome {
    let started = Instant::now();
    let z100 = match ZeroList::compute(100.0) {
        Ok(z) => z,
        Err(e) => return outcome(7, "zero-computation", started, false, e.to_string()),
    };
    let count_ok = z100.len() == 29;
    let first_ok = (z100.ordinates()[0] - 14.134725).abs() <= 1e-6;
    // the winding main term determines each count to within |S(t)| < 1
    let theta_ok = [50.0, 100.0].iter().all(|&t| {
        (z100.count_below(t) as f64 - zeros::zeta::theta_count_main_term(t)).abs() < 1.0
    }) && z100.count_below(100.0) == zeros::theta_zero_count(100.0);
    let z5k = zeros_5k();
    let tall_ok =
        (z5k.len() as f64 - zeros::zeta::theta_count_main_term(5000.0)).abs() < 1.0;
    let elapsed = started.elapsed().as_secs_f64();
    let pass = count_ok && first_ok && theta_ok && tall_ok && elapsed < 120.0;
    outcome(
        7,
        "zero-computation",
        started,
        pass,
        format!(
            "N(100)={} (want 29); gamma_1={:.9}; theta counts ok={theta_ok}; \
             N(5000)={} certified; {elapsed:.1}s",
            z100.len(),
            z100.ordinates()[0],
            z5k.len()
        ),
    )
}

/// Blocked/truncated F equals the full double loop within the certified
/// tail bound.
pub fn criterion_08_f_oracle() -> CriterionOutcome {
    let started = Instant::now();
    let z5k = zeros_5k();
    let mut rng = SplitMix::new(0x08);
    let cfg = PairCorrelationConfig::default();
    let w_cutoff = zeros::montgomery_weight(cfg.weight_cutoff);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut pass = w_cutoff <= 1e-6;
    for _ in 0..20 {
        let n = 2 + (rng.next_u64() % 1999) as usize;
        let t = z5k.ordinates()[n - 1] + 1e-6;
        let sub = z5k.truncated(t);
        let x = rng.range(0.0, 9.0).exp();
        let detailed = match zeros::pair_correlation_f_detailed(&sub, x, t, &cfg) {
            Ok(d) => d,
            Err(e) => return outcome(8, "f-oracle", started, false, e.to_string()),
        };
        let full = zeros::oracle::f_double_loop(&sub, x, t);
        let diff = (detailed.value - full).abs();
        // allow rounding noise when nothing was truncated
        let budget = detailed.tail_bound + 1e-7 * full.abs().max(1.0);
        worst_excess = worst_excess.max(diff - budget);
        pass &= diff <= budget;
    }
    let elapsed = started.elapsed().as_secs_f64();
    pass &= elapsed < 30.0;
    outcome(
        8,
        "f-oracle",
        started,
        pass,
        format!(
            "w(default cutoff) = {w_cutoff:.2e}; worst (diff − budget) = {worst_excess:.2e}; \
             {elapsed:.1}s"
        ),
    )
}

/// F against both asymptotic forms at T = 5000.
pub fn criterion_09_f_asymptotics() -> CriterionOutcome {
    let started = Instant::now();
    let z5k = zeros_5k();
    let t = z5k.t_max();
    let c = Constants::get();
    let cfg = PairCorrelationConfig::default();

    let x_conj = t.powf(1.3);
    let f_conj = match zeros::pair_correlation_f(z5k, x_conj, t, &cfg) {
        Ok(f) => f,
        Err(e) => return outcome(9, "f-asymptotics", started, false, e.to_string()),
    };
    let pred_conj = t / (2.0 * PI) * t.ln() + c.d / (2.0 * PI) * t;
    let ratio_conj = f_conj / pred_conj;

    let x_thm = t.powf(0.5);
    let f_thm = match zeros::pair_correlation_f(z5k, x_thm, t, &cfg) {
        Ok(f) => f,
        Err(e) => return outcome(9, "f-asymptotics", started, false, e.to_string()),
    };
    let pred_thm = t / (2.0 * PI) * (x_thm.ln() + t.ln().powi(2) / (x_thm * x_thm));
    let ratio_thm = f_thm / pred_thm;

    let elapsed = started.elapsed().as_secs_f64();
    let pass = (0.7..=1.3).contains(&ratio_conj)
        && (0.7..=1.3).contains(&ratio_thm)
        && elapsed < 120.0;
    outcome(
        9,
        "f-asymptotics",
        started,
        pass,
        format!(
            "X=T^1.3: F/pred = {ratio_conj:.4}; X=T^0.5: F/pred = {ratio_thm:.4}; {elapsed:.1}s"
        ),
    )
}

/// J(X,T) = 2πF(X,T) + O(log³T) at X = e, T = 100.
pub fn criterion_10_j_bridge() -> CriterionOutcome {
    let started = Instant::now();
    let z5k = zeros_5k();
    let t = 100.0;
    let j = match zeros::compute_j(z5k, E, t, 0.01) {
        Ok(j) => j,
        Err(e) => return outcome(10, "j-bridge", started, false, e.to_string()),
    };
    let f = match zeros::pair_correlation_f(z5k, E, t, &PairCorrelationConfig::default()) {
        Ok(f) => f,
        Err(e) => return outcome(10, "j-bridge", started, false, e.to_string()),
    };
    let gap = (j.value - 2.0 * PI * f).abs();
    let budget = 5.0 * t.ln().powi(3);
    let elapsed = started.elapsed().as_secs_f64();
    let pass = gap <= budget && elapsed < 60.0;
    outcome(
        10,
        "j-bridge",
        started,
        pass,
        format!(
            "J = {:.3} (±{:.2e}), 2πF = {:.3}, |J − 2πF| = {gap:.3} ≤ {budget:.1}; {elapsed:.1}s",
            j.value,
            j.abs_error,
            2.0 * PI * f
        ),
    )
}

fn fit_at_1e7(kind_h: bool) -> crate::error::Result<(f64, f64)> {
    let table = table_1e7();
    let x = 1e7;
    let exps = [0.35, 0.40, 0.45, 0.50, 0.55, 0.60];
    let mut results = Vec::with_capacity(exps.len());
    for &e in &exps {
        let r = if kind_h {
            moments::second_moment_fixed_h(table, x, x.powf(e))?
        } else {
            moments::second_moment_delta(table, x, x.powf(-e))?
        };
        results.push(r);
    }
    moments::fit_constant(&results)
}

/// Fitted second-term constants at X = 10⁷.
pub fn criterion_11_second_term_fit() -> CriterionOutcome {
    let started = Instant::now();
    let c = Constants::get();
    let (b_hat, b_se) = match fit_at_1e7(true) {
        Ok(v) => v,
        Err(e) => return outcome(11, "second-term-fit", started, false, e.to_string()),
    };
    let (c_hat, c_se) = match fit_at_1e7(false) {
        Ok(v) => v,
        Err(e) => return outcome(11, "second-term-fit", started, false, e.to_string()),
    };
    let elapsed = started.elapsed().as_secs_f64();
    let pass = (b_hat - c.b).abs() <= 1.0 && (c_hat - c.c).abs() <= 1.0 && elapsed < 180.0;
    outcome(
        11,
        "second-term-fit",
        started,
        pass,
        format!(
            "B̂ = {b_hat:.4} ± {b_se:.4} (B = {:.4}); Ĉ = {c_hat:.4} ± {c_se:.4} (C = {:.4}); \
             {elapsed:.1}s",
            c.b, c.c
        ),
    )
}

/// The Tauberian verifier battery on synthetic inputs.
pub fn criterion_12_lemma_suite() -> CriterionOutcome {
    let started = Instant::now();
    let c = Constants::get();

    let const_f = match SampledFunction::from_fn(|_| 1.0, 988.0, 1012.0, 4800) {
        Ok(f) => f,
        Err(e) => return outcome(12, "lemma-suite", started, false, e.to_string()),
    };
    let exp_window = match kverify::verify_exp_window_average(&const_f, 1000.0) {
        Ok(r) => r,
        Err(e) => return outcome(12, "lemma-suite", started, false, e.to_string()),
    };
    let exp_ok = exp_window.pass && (exp_window.computed - 1.5).abs() <= 1e-9;

    let d = c.d;
    let synth =
        match SampledFunction::from_fn_log(move |t| (t.ln() + d + 1.0).max(0.0), 1.0, 1e7, 4000) {
            Ok(f) => f,
            Err(e) => return outcome(12, "lemma-suite", started, false, e.to_string()),
        };
    let sinc_exp = match kverify::verify_sinc_moment_expansion(&synth, 1e-3, 2.0, d) {
        Ok(r) => r,
        Err(e) => return outcome(12, "lemma-suite", started, false, e.to_string()),
    };
    let cutoff = match kverify::verify_cutoff_integral_asymptotic(&synth, 1e3, d) {
        Ok(r) => r,
        Err(e) => return outcome(12, "lemma-suite", started, false, e.to_string()),
    };
    let zeros100 = zeros_5k().truncated(100.0);
    let swap = match kverify::verify_zero_weight_swap(&zeros100, 0.05, 40.0, 50.0) {
        Ok(r) => r,
        Err(e) => return outcome(12, "lemma-suite", started, false, e.to_string()),
    };

    let elapsed = started.elapsed().as_secs_f64();
    let pass = exp_ok && sinc_exp.pass && cutoff.pass && swap.pass && elapsed < 60.0;
    outcome(
        12,
        "lemma-suite",
        started,
        pass,
        format!(
            "exp-window err {:.2e}; sinc-expansion err {:.2e} (tol {:.2e}); cutoff err {:.2e} \
             (tol {:.2e}); weight-swap err {:.2e} (tol {:.2e}); {elapsed:.1}s",
            (exp_window.computed - 1.5).abs(),
            sinc_exp.abs_error,
            sinc_exp.tolerance,
            cutoff.abs_error,
            cutoff.tolerance,
            swap.abs_error,
            swap.tolerance
        ),
    )
}

/// Zero-sum mean square vs the exact ψ moment on [X, 2X].
pub fn criterion_13_zero_sum_moment() -> CriterionOutcome {
    let started = Instant::now();
    let table = match build_psi_table(2_200) {
        Ok(t) => t,
        Err(e) => return outcome(13, "zero-sum-moment", started, false, e.to_string()),
    };
    let zeros = zeros_5k().truncated(1_010.0);
    let (x, delta, z) = (1e3, 0.05, 1e3);
    let report = match explicit::verify_zero_sum_moment(&table, &zeros, x, delta, z) {
        Ok(r) => r,
        Err(e) => return outcome(13, "zero-sum-moment", started, false, e.to_string()),
    };
    // resolution check: halving the step
    let coarse = explicit::zero_sum_square_integral(&zeros, x, delta, z, 1.0);
    let fine = explicit::zero_sum_square_integral(&zeros, x, delta, z, 0.5);
    let (coarse, fine) = match (coarse, fine) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return outcome(13, "zero-sum-moment", started, false, "quadrature failed".into()),
    };
    let rel_shift = (fine - coarse).abs() / coarse.abs().max(1e-30);
    let elapsed = started.elapsed().as_secs_f64();
    let pass = report.report.pass && rel_shift <= 1e-3 && elapsed < 120.0;
    outcome(
        13,
        "zero-sum-moment",
        started,
        pass,
        format!(
            "|zero-sum − psi| = {:.4e} ≤ {:.4e}; step-halving shift {rel_shift:.2e}; {elapsed:.1}s",
            report.report.abs_error, report.report.tolerance
        ),
    )
}

/// Re-running criteria 1, 8, 11 reproduces bit-identical numbers.
pub fn criterion_14_determinism() -> CriterionOutcome {
    let started = Instant::now();
    // sieve determinism
    let a = build_psi_table(1_000_000).expect("sieve");
    let b = build_psi_table(1_000_000).expect("sieve");
    let mut sieve_ok = a.breakpoints().len() == b.breakpoints().len();
    for n in [2u64, 97, 6_561, 524_287, 1_000_000] {
        sieve_ok &= a.psi_at(n).to_bits() == b.psi_at(n).to_bits();
    }
    // pair-correlation determinism
    let z5k = zeros_5k();
    let cfg = PairCorrelationConfig::default();
    let f1 = zeros::pair_correlation_f(z5k, 123.456, 4_321.0, &cfg).expect("F");
    let f2 = zeros::pair_correlation_f(z5k, 123.456, 4_321.0, &cfg).expect("F");
    let f_ok = f1.to_bits() == f2.to_bits();
    // fit determinism
    let (fit1, _) = fit_at_1e7(true).expect("fit");
    let (fit2, _) = fit_at_1e7(true).expect("fit");
    let fit_ok = fit1.to_bits() == fit2.to_bits();
    let pass = sieve_ok && f_ok && fit_ok;
    outcome(
        14,
        "determinism",
        started,
        pass,
        format!("sieve {sieve_ok}, pair-correlation {f_ok}, fit {fit_ok}"),
    )
}

/// All criteria in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_01_psi_exactness(),
        criterion_02_moment_oracle(),
        criterion_03_constants(),
        criterion_04_sinc_integrals(),
        criterion_05_kernel_identity(),
        criterion_06_kpp_bound(),
        criterion_07_zero_computation(),
        criterion_08_f_oracle(),
        criterion_09_f_asymptotics(),
        criterion_10_j_bridge(),
        criterion_11_second_term_fit(),
        criterion_12_lemma_suite(),
        criterion_13_zero_sum_moment(),
        criterion_14_determinism(),
    ]
}
