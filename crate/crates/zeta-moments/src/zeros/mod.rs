//! Zeta-zero ordinates and the statistics built on them.
//!
//! A [`ZeroList`] holds ascending positive ordinates γ (zeros ρ = ½ + iγ,
//! stored with multiplicity 1). Lists come from plain-text tables
//! ([`ZeroList::import`]) or from the certified computation in [`zeta`]
//! ([`ZeroList::compute`]). On top of them: the weighted pair-correlation
//! sum F(X,T), the smoothed integral J(X,T) it approximates, a density
//! check, and asymptotic comparisons.

pub mod zeta;

use std::f64::consts::PI;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::Constants;
use crate::report::VerifierReport;
use crate::sum::KahanSum;

pub use zeta::{rs_theta, theta_zero_count, RS_SWITCH, ROOT_TOLERANCE};

/// Where a list came from; computed lists carry a completeness certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroSource {
    Imported,
    Computed,
}

#[derive(Debug, Clone)]
pub struct ZeroList {
    ordinates: Vec<f64>,
    source: ZeroSource,
    t_max: f64,
}

impl ZeroList {
    pub fn from_ordinates(ordinates: Vec<f64>, source: ZeroSource, t_max: f64) -> Result<Self> {
        if let Some(w) = ordinates.windows(2).find(|w| !(w[0] < w[1])) {
            return Err(Error::Input(format!(
                "ordinates must be strictly ascending (violation near {})",
                w[0]
            )));
        }
        if ordinates.first().is_some_and(|&g| g <= 0.0) {
            return Err(Error::Input("ordinates must be positive".to_string()));
        }
        if ordinates.last().is_some_and(|&g| g > t_max) {
            return Err(Error::Input(format!(
                "ordinate beyond stated completeness height {t_max}"
            )));
        }
        Ok(ZeroList {
            ordinates,
            source,
            t_max,
        })
    }

    /// Zeros to height `t_max`, computed and certified complete.
    pub fn compute(t_max: f64) -> Result<Self> {
        let ordinates = zeta::compute_zeros(t_max)?;
        Ok(ZeroList {
            ordinates,
            source: ZeroSource::Computed,
            t_max,
        })
    }

    /// Parses a plain-text table: one ascending positive ordinate per line,
    /// `#` comments and blank lines allowed.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut ordinates = Vec::new();
        let mut prev = 0.0f64;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let value: f64 = s.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("not a decimal ordinate: {s:?}"),
            })?;
            if !(value > 0.0) {
                return Err(Error::Parse {
                    line,
                    msg: format!("ordinate must be positive, got {value}"),
                });
            }
            if value <= prev {
                return Err(Error::Parse {
                    line,
                    msg: format!("ordinates must ascend: {value} after {prev}"),
                });
            }
            prev = value;
            ordinates.push(value);
        }
        if ordinates.is_empty() {
            return Err(Error::Input("no ordinates in input".to_string()));
        }
        let t_max = *ordinates.last().unwrap();
        Ok(ZeroList {
            ordinates,
            source: ZeroSource::Imported,
            t_max,
        })
    }

    pub fn import(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_str(&text)
    }

    /// Serializes in the same plain-text format the importer reads.
    pub fn export_string(&self) -> String {
        let mut out = String::with_capacity(self.ordinates.len() * 20 + 64);
        out.push_str(&format!(
            "# zeta zero ordinates: count={}, t_max={}\n",
            self.ordinates.len(),
            self.t_max
        ));
        for g in &self.ordinates {
            out.push_str(&format!("{g}\n"));
        }
        out
    }

    pub fn export(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.export_string())?;
        Ok(())
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    /// Height up to which the list is complete.
    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Number of ordinates ≤ t.
    pub fn count_below(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&g| g <= t)
    }

    /// The same list cut down to a smaller completeness height.
    pub fn truncated(&self, new_t_max: f64) -> Self {
        let keep = self.count_below(new_t_max);
        ZeroList {
            ordinates: self.ordinates[..keep].to_vec(),
            source: self.source,
            t_max: new_t_max.min(self.t_max),
        }
    }

    /// Largest number of ordinates in any unit interval, plus the
    /// asymptotic density margin; used for certified tail bounds.
    pub(crate) fn unit_density_bound(&self) -> f64 {
        let mut max_count = 0usize;
        let mut lo = 0usize;
        for hi in 0..self.ordinates.len() {
            while self.ordinates[hi] - self.ordinates[lo] > 1.0 {
                lo += 1;
            }
            max_count = max_count.max(hi - lo + 1);
        }
        let formula = (self.t_max.max(20.0) / (2.0 * PI)).ln() / (2.0 * PI) + 1.5;
        (max_count as f64).max(formula)
    }
}

/// Montgomery's weight w(u) = 4/(4 + u²).
#[inline]
pub fn montgomery_weight(u: f64) -> f64 {
    4.0 / (4.0 + u * u)
}

/// Truncation and blocking knobs for the pair sum.
#[derive(Debug, Clone, Copy)]
pub struct PairCorrelationConfig {
    /// Pairs with |γ − γ′| above this are skipped; each skipped term has
    /// weight at most w(cutoff), and the total skipped mass is reported.
    pub weight_cutoff: f64,
    pub block_size: usize,
}

impl Default for PairCorrelationConfig {
    fn default() -> Self {
        Self {
            weight_cutoff: 2000.0,
            block_size: 256,
        }
    }
}

impl PairCorrelationConfig {
    /// Picks the cutoff so the certified discarded tail is ≤ `eps_abs` for
    /// this list (may disable truncation entirely).
    pub fn with_tail_tolerance(zeros: &ZeroList, eps_abs: f64) -> Self {
        let n = zeros.len() as f64;
        let density = zeros.unit_density_bound();
        // tail ≤ 2·N·density·Σ_{k≥c} 4/k² ≤ 8·N·density/(c−1)
        let cutoff = (8.0 * n * density / eps_abs + 1.0).min(f64::MAX);
        Self {
            weight_cutoff: cutoff.max(embedded_min_cutoff()),
            block_size: 256,
        }
    }
}

fn embedded_min_cutoff() -> f64 {
    64.0
}

/// F(X,T) with its certified truncation bound.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PairCorrelation {
    pub value: f64,
    /// Upper bound on |exact − value| from the skipped far pairs.
    pub tail_bound: f64,
    pub pairs_evaluated: u64,
    pub zeros_used: usize,
}

/// The weighted pair-correlation statistic
/// F(X,T) = Σ_{0≤γ,γ′≤T} cos((γ−γ′) log X) · w(γ−γ′),
/// computed as the diagonal count plus twice the upper triangle, in fixed
/// block order.
pub fn pair_correlation_f_detailed(
    zeros: &ZeroList,
    x: f64,
    t: f64,
    cfg: &PairCorrelationConfig,
) -> Result<PairCorrelation> {
    if !(x >= 1.0) {
        return Err(Error::Range(format!("F needs X >= 1, got {x}")));
    }
    if !(t > 0.0) || t > zeros.t_max() {
        return Err(Error::Range(format!(
            "F needs 0 < T <= t_max = {} (list incomplete above), got {t}",
            zeros.t_max()
        )));
    }
    let n_t = zeros.count_below(t);
    let ords = &zeros.ordinates()[..n_t];
    let lx = x.ln();
    let cutoff = cfg.weight_cutoff;

    let block_size = cfg.block_size.max(1);
    let starts: Vec<usize> = (0..n_t).step_by(block_size).collect();
    let mut partials: Vec<(f64, u64, u64)> = Vec::new();
    starts
        .par_iter()
        .map(|&start| {
            let end = (start + block_size).min(n_t);
            let mut acc = KahanSum::new();
            let mut skipped: u64 = 0;
            let mut pairs: u64 = 0;
            for i in start..end {
                let gi = ords[i];
                let j0 = ords[..i].partition_point(|&g| g < gi - cutoff);
                skipped += j0 as u64;
                for &gj in &ords[j0..i] {
                    let u = gi - gj;
                    acc.add((u * lx).cos() * montgomery_weight(u));
                    pairs += 1;
                }
            }
            (acc.value(), skipped, pairs)
        })
        .collect_into_vec(&mut partials);

    let mut off_diag = KahanSum::new();
    let mut skipped: u64 = 0;
    let mut pairs: u64 = 0;
    for (v, s, p) in partials {
        off_diag.add(v);
        skipped += s;
        pairs += p;
    }
    Ok(PairCorrelation {
        value: n_t as f64 + 2.0 * off_diag.value(),
        tail_bound: 2.0 * skipped as f64 * montgomery_weight(cutoff),
        pairs_evaluated: pairs,
        zeros_used: n_t,
    })
}

/// See [`pair_correlation_f_detailed`]; this returns just the value.
pub fn pair_correlation_f(
    zeros: &ZeroList,
    x: f64,
    t: f64,
    cfg: &PairCorrelationConfig,
) -> Result<f64> {
    Ok(pair_correlation_f_detailed(zeros, x, t, cfg)?.value)
}

/// Slow reference implementations, kept independent of the blocked path.
pub mod oracle {
    use super::*;

    /// F by the full O(N²) double loop over ordered pairs, no truncation.
    pub fn f_double_loop(zeros: &ZeroList, x: f64, t: f64) -> f64 {
        let n_t = zeros.count_below(t);
        let ords = &zeros.ordinates()[..n_t];
        let lx = x.ln();
        let mut acc = KahanSum::new();
        for &gi in ords {
            for &gj in ords {
                let u = gi - gj;
                acc.add((u * lx).cos() * montgomery_weight(u));
            }
        }
        acc.value()
    }
}

/// J(X,T) value with a certified absolute error bound.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct JEstimate {
    pub value: f64,
    pub abs_error: f64,
}

/// Default Simpson step for [`compute_j`].
pub const DEFAULT_J_STEP: f64 = 0.01;

/// J(X,T) = 4 ∫₀^T |Σ_γ X^{iγ}/(1+(t−γ)²)|² dt by composite Simpson with
/// the given step (conventionally [`DEFAULT_J_STEP`]); the inner sum runs
/// over both ±γ within a window of 50, with the exterior bounded by the
/// list density.
pub fn compute_j(zeros: &ZeroList, x: f64, t: f64, quad_step: f64) -> Result<JEstimate> {
    if !(t > 0.0) || !(x >= 1.0) || !(quad_step > 0.0) {
        return Err(Error::Range(format!(
            "J needs T > 0, X >= 1, step > 0; got T={t}, X={x}, step={quad_step}"
        )));
    }
    if zeros.t_max() < t + 50.0 {
        return Err(Error::Range(format!(
            "J needs zeros up to T + 50 = {} (inner sum needs zeros above T), have {}",
            t + 50.0,
            zeros.t_max()
        )));
    }
    const WINDOW: f64 = 50.0;
    let ords = zeros.ordinates();
    let lx = x.ln();
    let phases: Vec<(f64, f64)> = ords.iter().map(|&g| (g * lx).sin_cos()).collect();

    let density = zeros.unit_density_bound();
    // Σ_{|s−γ|>W} 1/(1+(s−γ)²) ≤ 2·density·∫_{W−1}^∞ du/(1+u²)
    let tail_s = 2.0 * density * (PI / 2.0 - (WINDOW - 1.0).atan());

    let norm_sq = |s: f64| -> f64 {
        let lo = ords.partition_point(|&g| g < s - WINDOW);
        let hi = ords.partition_point(|&g| g <= s + WINDOW);
        let mut re = 0.0;
        let mut im = 0.0;
        for i in lo..hi {
            let k = 1.0 / (1.0 + (s - ords[i]) * (s - ords[i]));
            let (sg, cg) = phases[i];
            re += cg * k;
            im += sg * k;
        }
        // negative ordinates −γ contribute the conjugate phase at distance s+γ
        let neg_hi = ords.partition_point(|&g| g <= WINDOW - s);
        for i in 0..neg_hi {
            let k = 1.0 / (1.0 + (s + ords[i]) * (s + ords[i]));
            let (sg, cg) = phases[i];
            re += cg * k;
            im -= sg * k;
        }
        re * re + im * im
    };

    let simpson = |step: f64| -> f64 {
        let mut n = (t / step).ceil() as usize;
        if n % 2 == 1 {
            n += 1;
        }
        let h = t / n as f64;
        let mut acc = KahanSum::new();
        for i in 0..=n {
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc.add(w * norm_sq(i as f64 * h));
        }
        acc.value() * h / 3.0
    };

    let fine = simpson(quad_step);
    let coarse = simpson(quad_step * 2.0);
    let quad_err = (fine - coarse).abs() / 15.0;
    // dropping the tail perturbs |S|² by ≤ 2|S|·tail + tail²
    let integral_abs_bound = (t * fine).sqrt();
    let tail_err = 2.0 * tail_s * integral_abs_bound + t * tail_s * tail_s;
    Ok(JEstimate {
        value: 4.0 * fine,
        abs_error: 4.0 * (quad_err + tail_err),
    })
}

/// Max over the sample heights of Σ_γ 1/(1+(t−γ)²) / log(t+2), both signs
/// of γ included.
pub fn verify_zero_density(zeros: &ZeroList, t_samples: &[f64]) -> Result<VerifierReport> {
    let mut max_ratio = 0.0f64;
    let mut arg_max = 0.0f64;
    for &t in t_samples {
        if !(0.0..=zeros.t_max() - 50.0).contains(&t) && !zeros.is_empty() {
            return Err(Error::Range(format!(
                "density samples must satisfy 0 <= t <= t_max − 50, got {t}"
            )));
        }
        let mut acc = KahanSum::new();
        for &g in zeros.ordinates() {
            acc.add(1.0 / (1.0 + (t - g) * (t - g)));
            acc.add(1.0 / (1.0 + (t + g) * (t + g)));
        }
        let ratio = acc.value() / (t + 2.0).ln();
        if ratio > max_ratio {
            max_ratio = ratio;
            arg_max = t;
        }
    }
    let tail_note = if zeros.is_empty() {
        "empty list".to_string()
    } else {
        let d = zeros.unit_density_bound();
        let worst_gap = t_samples
            .iter()
            .fold(f64::INFINITY, |m, &t| m.min(zeros.t_max() - t));
        format!(
            "missing zeros above t_max add at most {:e} to any ratio",
            2.0 * d * (PI / 2.0 - (worst_gap - 1.0).atan()) / std::f64::consts::LN_2
        )
    };
    Ok(VerifierReport::new(
        "zero-density-log-bound",
        max_ratio,
        0.0,
        2.0,
        format!("max ratio at t={arg_max}; {} samples; {tail_note}", t_samples.len()),
    ))
}

/// Compares F(X,T) against the theorem-range form (X ≤ T) or the refined
/// strong-conjecture form (X > T); the report carries the ratio.
pub fn compare_f_asymptotics(zeros: &ZeroList, x: f64, t: f64) -> Result<VerifierReport> {
    let cfg = PairCorrelationConfig::default();
    let f = pair_correlation_f_detailed(zeros, x, t, &cfg)?;
    let consts = Constants::get();
    let (predicted, regime) = if x <= t {
        (
            t / (2.0 * PI) * x.ln() + t / (2.0 * PI) * t.ln().powi(2) / (x * x),
            "theorem form (T/2π)(log X + X^{-2} log² T)",
        )
    } else {
        (
            t / (2.0 * PI) * t.ln() + consts.d / (2.0 * PI) * t,
            "refined conjecture form (T/2π) log T + (D/2π) T",
        )
    };
    let mut report = VerifierReport::new(
        "pair-correlation-asymptotic",
        f.value,
        predicted,
        0.3 * predicted.abs(),
        format!("X={x:.6e}, T={t}; {regime}; ratio {:.4}", f.value / predicted),
    );
    if f.zeros_used == 0 {
        report.push_note("empty spectrum");
    }
    report.push_note(&format!("truncation tail bound {:e}", f.tail_bound));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(ords: &[f64]) -> ZeroList {
        let t_max = ords.last().copied().unwrap_or(0.0);
        ZeroList::from_ordinates(ords.to_vec(), ZeroSource::Imported, t_max).unwrap()
    }

    #[test]
    fn parses_simple_table() {
        let z = ZeroList::parse_str("14.134725\n21.022040\n").unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z.t_max(), 21.022040);
        assert_eq!(z.source(), ZeroSource::Imported);
    }

    #[test]
    fn parses_comments_and_blanks() {
        let z = ZeroList::parse_str("# header\n\n  14.134725  \n").unwrap();
        assert_eq!(z.len(), 1);
    }

    #[test]
    fn rejects_non_monotone_with_line_number() {
        let err = ZeroList::parse_str("21.0\n14.1\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn rejects_non_positive_and_garbage() {
        assert!(matches!(
            ZeroList::parse_str("-3.0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            ZeroList::parse_str("14.1\npotato\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(ZeroList::parse_str("# nothing\n"), Err(Error::Input(_))));
    }

    #[test]
    fn export_import_roundtrip() {
        let z = list(&[14.134725141734693, 21.022039638771555, 25.010857580145688]);
        let text = z.export_string();
        let back = ZeroList::parse_str(&text).unwrap();
        assert_eq!(back.len(), z.len());
        for (a, b) in back.ordinates().iter().zip(z.ordinates()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn f_on_empty_range_is_zero() {
        let z = list(&[30.0]);
        let cfg = PairCorrelationConfig::default();
        let f = pair_correlation_f(&z, 2.0, 20.0, &cfg).unwrap();
        assert_eq!(f, 0.0);
    }

    #[test]
    fn f_single_zero_is_one() {
        let z = ZeroList::from_ordinates(vec![14.13], ZeroSource::Imported, 20.0).unwrap();
        let cfg = PairCorrelationConfig::default();
        let f = pair_correlation_f(&z, 10.0, 20.0, &cfg).unwrap();
        assert_eq!(f, 1.0);
    }

    #[test]
    fn f_two_zeros_closed_form() {
        let (g1, g2) = (14.134725, 21.022040);
        let z = ZeroList::from_ordinates(vec![g1, g2], ZeroSource::Imported, 25.0).unwrap();
        let cfg = PairCorrelationConfig::default();
        let x = 7.5;
        let f = pair_correlation_f(&z, x, 25.0, &cfg).unwrap();
        let u = g2 - g1;
        let expect = 2.0 + 2.0 * (u * x.ln()).cos() * 4.0 / (4.0 + u * u);
        assert!((f - expect).abs() < 1e-12);
        let oracle = oracle::f_double_loop(&z, x, 25.0);
        assert!((f - oracle).abs() < 1e-12);
    }

    #[test]
    fn f_at_x_one_dominates_zero_count() {
        let z = ZeroList::from_ordinates(vec![14.1, 21.0, 25.0, 30.4, 32.9], ZeroSource::Imported, 33.0)
            .unwrap();
        let cfg = PairCorrelationConfig::default();
        let f = pair_correlation_f(&z, 1.0, 33.0, &cfg).unwrap();
        assert!(f >= 5.0);
    }

    #[test]
    fn f_order_independence_and_determinism() {
        let ords: Vec<f64> = (1..=400).map(|k| 14.0 + 1.37 * k as f64).collect();
        let z = list(&ords);
        let cfg = PairCorrelationConfig {
            weight_cutoff: 2000.0,
            block_size: 37,
        };
        let a = pair_correlation_f(&z, 55.0, z.t_max(), &cfg).unwrap();
        let b = pair_correlation_f(&z, 55.0, z.t_max(), &cfg).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        let c = pair_correlation_f(
            &z,
            55.0,
            z.t_max(),
            &PairCorrelationConfig {
                weight_cutoff: 2000.0,
                block_size: 256,
            },
        )
        .unwrap();
        assert!((a - c).abs() < 1e-9);
    }

    #[test]
    fn truncation_stays_within_reported_bound() {
        let ords: Vec<f64> = (1..=600).map(|k| 10.0 + 0.9 * k as f64).collect();
        let z = list(&ords);
        let cfg = PairCorrelationConfig {
            weight_cutoff: 100.0,
            block_size: 64,
        };
        let d = pair_correlation_f_detailed(&z, 3.0, z.t_max(), &cfg).unwrap();
        let full = oracle::f_double_loop(&z, 3.0, z.t_max());
        assert!(
            (d.value - full).abs() <= d.tail_bound,
            "diff {} vs bound {}",
            (d.value - full).abs(),
            d.tail_bound
        );
        assert!(d.tail_bound > 0.0);
    }

    #[test]
    fn j_on_empty_list_errors_or_zero() {
        // J with an empty effective sum: single faraway zero, T window empty
        let z = ZeroList::from_ordinates(vec![500.0], ZeroSource::Imported, 500.0).unwrap();
        let j = compute_j(&z, std::f64::consts::E, 10.0, 0.05).unwrap();
        // only the distant-zero leakage contributes; tiny but nonzero
        assert!(j.value >= 0.0 && j.value < 1.0);
    }

    #[test]
    fn j_single_central_zero_approximates_two_pi() {
        // 4∫|1/(1+(t−γ)²)|² dt → 4·π/2 = 2π over a wide window
        let z = ZeroList::from_ordinates(vec![100.0], ZeroSource::Imported, 200.0).unwrap();
        let j = compute_j(&z, 1.0, 150.0, 0.01).unwrap();
        assert!(
            (j.value - 2.0 * PI).abs() < 0.02,
            "J = {} vs 2π = {}",
            j.value,
            2.0 * PI
        );
    }

    #[test]
    fn density_report_on_empty_list() {
        let z = ZeroList::from_ordinates(vec![], ZeroSource::Imported, 0.0).unwrap();
        let r = verify_zero_density(&z, &[0.0]).unwrap();
        assert_eq!(r.computed, 0.0);
        assert!(r.pass);
    }

    #[test]
    fn truncated_preserves_completeness_semantics() {
        let z = list(&[10.0, 20.0, 30.0, 40.0]);
        let t = z.truncated(25.0);
        assert_eq!(t.len(), 2);
        assert_eq!(t.t_max(), 25.0);
    }

    #[test]
    fn tail_tolerance_config_certifies_its_cutoff() {
        let ords: Vec<f64> = (1..=500).map(|k| 12.0 + 1.1 * k as f64).collect();
        let z = list(&ords);
        let cfg = PairCorrelationConfig::with_tail_tolerance(&z, 1e-3);
        let d = pair_correlation_f_detailed(&z, 9.0, z.t_max(), &cfg).unwrap();
        assert!(d.tail_bound <= 1e-3, "bound {}", d.tail_bound);
        let full = oracle::f_double_loop(&z, 9.0, z.t_max());
        assert!((d.value - full).abs() <= 1e-3);
    }
}
