//! The von Mangoldt function Λ and the Chebyshev function ψ over large
//! integer ranges.
//!
//! [`PsiTable`] holds ψ(n) for every n up to a limit, built by a segmented
//! sieve of Eratosthenes with a prime-power post-pass. The Λ value of p^k is
//! stored as `ln(p)` computed once per prime, so every power of p carries a
//! bit-identical weight. Cumulative sums use compensated summation over the
//! nonzero Λ terms in ascending order; the accumulator state is a pure
//! function of the breakpoint sequence, which keeps fresh builds, cache
//! reloads and any re-derivation bit-identical.

use std::io::{Read as _, Write as _};
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sum::KahanSum;

/// Default sieve segment length (entries per segment).
pub const DEFAULT_SEGMENT_LEN: usize = 1 << 20;

/// Default construction budget for the dense cumulative array plus
/// breakpoints, in bytes.
pub const DEFAULT_MEMORY_BUDGET: u64 = 4 << 30;

const CACHE_MAGIC: &[u8; 4] = b"PSIT";
const CACHE_VERSION: u32 = 1;

/// Λ(n): `ln p` when n = p^k for a prime p and k ≥ 1, otherwise 0.
///
/// Total on positive integers; uses trial division, so it is meant for
/// oracles and spot checks rather than bulk table construction.
pub fn von_mangoldt(n: u64) -> f64 {
    assert!(n >= 1, "von_mangoldt needs n >= 1");
    if n == 1 {
        return 0.0;
    }
    let mut m = n;
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            p = d;
            while m % d == 0 {
                m /= d;
            }
            break;
        }
        d += 1;
    }
    if p == 0 {
        // n itself is prime.
        return (n as f64).ln();
    }
    if m != 1 {
        // A second distinct prime factor survived.
        return 0.0;
    }
    (p as f64).ln()
}

/// A prime power with its Λ weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakpoint {
    pub n: u64,
    pub lambda: f64,
}

/// Cumulative Chebyshev ψ over `1..=limit` with the prime-power jump points.
#[derive(Debug, Clone)]
pub struct PsiTable {
    limit: u64,
    /// cumulative[n] = ψ(n); index 0 unused (0.0).
    cumulative: Vec<f64>,
    breakpoints: Vec<Breakpoint>,
}

/// Construction knobs; the defaults match [`build_psi_table`].
#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub segment_len: usize,
    pub memory_budget: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            segment_len: DEFAULT_SEGMENT_LEN,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

/// Builds the ψ table for `2 <= n <= limit` with default options.
pub fn build_psi_table(limit: u64) -> Result<PsiTable> {
    PsiTable::build(limit, BuildOptions::default())
}

impl PsiTable {
    pub fn build(limit: u64, opts: BuildOptions) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Input(format!("limit must be >= 2, got {limit}")));
        }
        // Dense cumulative array + a generous breakpoint estimate.
        let needed = 8 * (limit + 1) + 16 * (estimate_breakpoints(limit) + 16);
        if needed > opts.memory_budget {
            return Err(Error::Resource {
                what: format!("psi table to {limit}"),
                needed,
                budget: opts.memory_budget,
            });
        }

        let primes = sieve_primes(limit, opts.segment_len.max(1 << 12));
        let breakpoints = breakpoints_from_primes(&primes, limit);
        let cumulative = cumulative_from_breakpoints(limit, &breakpoints);
        Ok(Self {
            limit,
            cumulative,
            breakpoints,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// All prime powers `<= limit` in ascending order with their Λ values.
    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    /// ψ at a real argument: ψ(x) = ψ(⌊x⌋), the right-continuous step value.
    pub fn psi(&self, x: f64) -> Result<f64> {
        if !(0.0..=self.limit as f64).contains(&x) {
            return Err(Error::Range(format!(
                "psi argument {x} outside [0, {}]",
                self.limit
            )));
        }
        Ok(self.psi_at(x.floor() as u64))
    }

    /// ψ(n) for an integer argument already known to be in range.
    #[inline]
    pub fn psi_at(&self, n: u64) -> f64 {
        self.cumulative[n.min(self.limit) as usize]
    }

    /// Λ(n) as stored in the table (0 for non-breakpoints).
    pub fn lambda(&self, n: u64) -> f64 {
        match self.breakpoints.binary_search_by(|b| b.n.cmp(&n)) {
            Ok(i) => self.breakpoints[i].lambda,
            Err(_) => 0.0,
        }
    }

    /// Prime powers n with `a < n <= b`, ascending.
    pub fn breakpoints_in(&self, a: f64, b: f64) -> Result<Vec<u64>> {
        if !(0.0 <= a && a <= b && b <= self.limit as f64) {
            return Err(Error::Range(format!(
                "breakpoint range ({a}, {b}] outside [0, {}]",
                self.limit
            )));
        }
        let lo = self.breakpoints.partition_point(|bp| (bp.n as f64) <= a);
        let hi = self.breakpoints.partition_point(|bp| (bp.n as f64) <= b);
        Ok(self.breakpoints[lo..hi].iter().map(|bp| bp.n).collect())
    }

    /// Index range of breakpoints with `a < n <= b` (same cut as
    /// [`Self::breakpoints_in`] but without materializing).
    pub(crate) fn breakpoint_range(&self, a: f64, b: f64) -> std::ops::Range<usize> {
        let lo = self.breakpoints.partition_point(|bp| (bp.n as f64) <= a);
        let hi = self.breakpoints.partition_point(|bp| (bp.n as f64) <= b);
        lo..hi
    }

    /// Writes the cache file: magic, version, limit, then (n, Λ) pairs,
    /// little-endian.
    pub fn write_cache(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::with_capacity(16 + 16 * self.breakpoints.len());
        buf.extend_from_slice(CACHE_MAGIC);
        buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
        buf.extend_from_slice(&self.limit.to_le_bytes());
        for bp in &self.breakpoints {
            buf.extend_from_slice(&bp.n.to_le_bytes());
            buf.extend_from_slice(&bp.lambda.to_le_bytes());
        }
        let mut f = std::fs::File::create(path)?;
        f.write_all(&buf)?;
        Ok(())
    }

    /// Loads a cache file and recomputes the cumulative array.
    pub fn read_cache(path: &Path) -> Result<Self> {
        let mut bytes = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut bytes)?;
        if bytes.len() < 16 || &bytes[0..4] != CACHE_MAGIC {
            return Err(Error::Input(format!(
                "{} is not a psi cache (bad magic)",
                path.display()
            )));
        }
        let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
        if version != CACHE_VERSION {
            return Err(Error::Input(format!(
                "unsupported psi cache version {version}"
            )));
        }
        let limit = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
        let body = &bytes[16..];
        if body.len() % 16 != 0 {
            return Err(Error::Input("truncated psi cache body".to_string()));
        }
        let mut breakpoints = Vec::with_capacity(body.len() / 16);
        let mut prev = 1u64;
        for chunk in body.chunks_exact(16) {
            let n = u64::from_le_bytes(chunk[0..8].try_into().unwrap());
            let lambda = f64::from_le_bytes(chunk[8..16].try_into().unwrap());
            if n <= prev || n > limit || !(lambda > 0.0) {
                return Err(Error::Input(format!("invalid cache entry n={n}")));
            }
            prev = n;
            breakpoints.push(Breakpoint { n, lambda });
        }
        let cumulative = cumulative_from_breakpoints(limit, &breakpoints);
        Ok(Self {
            limit,
            cumulative,
            breakpoints,
        })
    }
}

/// π(x) overestimate used only for the memory pre-check.
fn estimate_breakpoints(limit: u64) -> u64 {
    let x = limit.max(3) as f64;
    (1.3 * x / x.ln()) as u64 + (2.0 * x.sqrt()) as u64
}

/// All primes `<= limit` via a segmented sieve. Segments are sieved in
/// parallel and concatenated in ascending order.
fn sieve_primes(limit: u64, segment_len: usize) -> Vec<u64> {
    let root = (limit as f64).sqrt() as u64 + 1;
    // Base primes by simple sieve.
    let mut base_composite = vec![false; (root + 1) as usize];
    let mut base_primes = Vec::new();
    for p in 2..=root {
        if !base_composite[p as usize] {
            base_primes.push(p);
            let mut m = p * p;
            while m <= root {
                base_composite[m as usize] = true;
                m += p;
            }
        }
    }

    let seg_starts: Vec<u64> = (2..=limit).step_by(segment_len).collect();
    let mut segments: Vec<Vec<u64>> = Vec::new();
    seg_starts
        .par_iter()
        .map(|&start| {
            let end = (start + segment_len as u64 - 1).min(limit);
            let len = (end - start + 1) as usize;
            let mut composite = vec![false; len];
            for &p in &base_primes {
                if p * p > end {
                    break;
                }
                let mut m = (start.div_ceil(p)).max(p) * p;
                while m <= end {
                    composite[(m - start) as usize] = true;
                    m += p;
                }
            }
            let mut primes = Vec::new();
            for (i, &is_composite) in composite.iter().enumerate() {
                let n = start + i as u64;
                if n >= 2 && !is_composite {
                    primes.push(n);
                }
            }
            primes
        })
        .collect_into_vec(&mut segments);
    let mut out = Vec::with_capacity(segments.iter().map(Vec::len).sum());
    for seg in segments {
        out.extend(seg);
    }
    out
}

/// Merges the prime list with the higher prime powers into one ascending
/// breakpoint list. Λ(p^k) reuses the `ln p` of the base prime.
fn breakpoints_from_primes(primes: &[u64], limit: u64) -> Vec<Breakpoint> {
    let mut powers: Vec<Breakpoint> = Vec::new();
    for &p in primes {
        // Only p <= sqrt(limit) can contribute k >= 2.
        if p > limit / p {
            break;
        }
        let lambda = (p as f64).ln();
        let mut q = p * p;
        loop {
            powers.push(Breakpoint { n: q, lambda });
            if q > limit / p {
                break;
            }
            q *= p;
        }
    }
    powers.sort_unstable_by_key(|b| b.n);

    let mut out = Vec::with_capacity(primes.len() + powers.len());
    let mut pi = primes.iter().peekable();
    let mut qi = powers.iter().peekable();
    loop {
        match (pi.peek(), qi.peek()) {
            (Some(&&p), Some(&&q)) => {
                if p < q.n {
                    out.push(Breakpoint {
                        n: p,
                        lambda: (p as f64).ln(),
                    });
                    pi.next();
                } else {
                    out.push(q);
                    qi.next();
                }
            }
            (Some(&&p), None) => {
                out.push(Breakpoint {
                    n: p,
                    lambda: (p as f64).ln(),
                });
                pi.next();
            }
            (None, Some(&&q)) => {
                out.push(q);
                qi.next();
            }
            (None, None) => break,
        }
    }
    out
}

/// Sequential cumulative pass. The accumulator visits only the nonzero Λ
/// terms, ascending, so the result depends solely on the breakpoint sequence
/// (not on segment size or zero padding).
fn cumulative_from_breakpoints(limit: u64, breakpoints: &[Breakpoint]) -> Vec<f64> {
    let mut cumulative = vec![0.0; (limit + 1) as usize];
    let mut acc = KahanSum::new();
    let mut filled = 1u64; // cumulative[0..=1] = 0
    for bp in breakpoints {
        let value_before = acc.value();
        for n in (filled + 1)..bp.n {
            cumulative[n as usize] = value_before;
        }
        acc.add(bp.lambda);
        cumulative[bp.n as usize] = acc.value();
        filled = bp.n;
    }
    let tail_value = acc.value();
    for n in (filled + 1)..=limit {
        cumulative[n as usize] = tail_value;
    }
    cumulative
}

/// Reference ψ(limit) by per-n trial-division Λ, with the same accumulation
/// discipline as the table build (nonzero terms only, ascending). Used by
/// tests and the acceptance suite as an independent oracle.
pub fn psi_oracle_cumulative(limit: u64) -> Vec<f64> {
    let mut out = vec![0.0; (limit + 1) as usize];
    let mut acc = KahanSum::new();
    for n in 2..=limit {
        let l = von_mangoldt(n);
        if l != 0.0 {
            acc.add(l);
        }
        out[n as usize] = acc.value();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn von_mangoldt_basic_values() {
        assert_eq!(von_mangoldt(1), 0.0);
        assert_eq!(von_mangoldt(6), 0.0);
        assert_eq!(von_mangoldt(8), 2.0_f64.ln());
        assert_eq!(von_mangoldt(8), 0.6931471805599453);
        assert_eq!(von_mangoldt(2), 2.0_f64.ln());
        assert_eq!(von_mangoldt(9), 3.0_f64.ln());
        assert_eq!(von_mangoldt(97), 97.0_f64.ln());
        assert_eq!(von_mangoldt(91), 0.0); // 7 * 13
        assert_eq!(von_mangoldt(1024), 2.0_f64.ln());
    }

    #[test]
    fn table_matches_hand_values() {
        let t = build_psi_table(16).unwrap();
        assert_eq!(t.psi(1.9).unwrap(), 0.0);
        assert_eq!(t.psi(2.0).unwrap(), 2.0_f64.ln());
        // psi(10) = 3 log 2 + 2 log 3 + log 5 + log 7 = log 2520
        let expect = 3.0 * 2.0_f64.ln() + 2.0 * 3.0_f64.ln() + 5.0_f64.ln() + 7.0_f64.ln();
        assert!((t.psi(10.5).unwrap() - expect).abs() < 1e-12);
        assert!((t.psi(10.5).unwrap() - 2520.0_f64.ln()).abs() < 1e-12);
        assert!((t.psi(10.5).unwrap() - 7.8320141805054693).abs() < 1e-9);
    }

    #[test]
    fn limit_two_is_a_single_prime() {
        let t = build_psi_table(2).unwrap();
        assert!((t.psi_at(2) - 0.6931472).abs() < 1e-6);
        assert_eq!(t.breakpoints().len(), 1);
    }

    #[test]
    fn cumulative_matches_oracle_bit_for_bit() {
        let limit = 20_000;
        let t = build_psi_table(limit).unwrap();
        let oracle = psi_oracle_cumulative(limit);
        for n in 0..=limit {
            assert_eq!(
                t.psi_at(n).to_bits(),
                oracle[n as usize].to_bits(),
                "psi({n}) differs from oracle"
            );
        }
    }

    #[test]
    fn lambda_matches_von_mangoldt_exactly() {
        let t = build_psi_table(5_000).unwrap();
        for n in 2..=5_000 {
            assert_eq!(
                t.lambda(n).to_bits(),
                von_mangoldt(n).to_bits(),
                "lambda({n})"
            );
        }
    }

    #[test]
    fn independent_of_segment_size() {
        let limit = 50_000;
        let a = PsiTable::build(
            limit,
            BuildOptions {
                segment_len: 1 << 12,
                ..Default::default()
            },
        )
        .unwrap();
        let b = PsiTable::build(
            limit,
            BuildOptions {
                segment_len: 977, // deliberately odd
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(a.breakpoints().len(), b.breakpoints().len());
        for n in [2u64, 100, 9973, 49_999, 50_000] {
            assert_eq!(a.psi_at(n).to_bits(), b.psi_at(n).to_bits());
        }
    }

    #[test]
    fn breakpoints_in_examples() {
        let t = build_psi_table(100).unwrap();
        assert_eq!(
            t.breakpoints_in(1.0, 10.0).unwrap(),
            vec![2, 3, 4, 5, 7, 8, 9]
        );
        assert_eq!(t.breakpoints_in(24.0, 25.0).unwrap(), vec![25]);
        assert_eq!(t.breakpoints_in(89.0, 96.0).unwrap(), Vec::<u64>::new());
        assert!(t.breakpoints_in(-1.0, 5.0).is_err());
        assert!(t.breakpoints_in(5.0, 101.0).is_err());
    }

    #[test]
    fn breakpoint_count_matches_trial_division() {
        let limit = 100_000u64;
        let t = build_psi_table(limit).unwrap();
        let by_trial = (2..=limit).filter(|&n| von_mangoldt(n) != 0.0).count();
        assert_eq!(t.breakpoints().len(), by_trial);
    }

    #[test]
    fn psi_out_of_range_is_an_error() {
        let t = build_psi_table(10).unwrap();
        assert!(t.psi(-0.5).is_err());
        assert!(t.psi(10.0001).is_err());
    }

    #[test]
    fn memory_budget_enforced() {
        let err = PsiTable::build(
            10_000_000,
            BuildOptions {
                segment_len: DEFAULT_SEGMENT_LEN,
                memory_budget: 1 << 20,
            },
        )
        .unwrap_err();
        match err {
            Error::Resource { budget, .. } => assert_eq!(budget, 1 << 20),
            other => panic!("expected resource error, got {other}"),
        }
    }

    #[test]
    fn cache_roundtrip_is_bit_identical() {
        let dir = std::env::temp_dir().join("zeta_moments_psi_cache_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("psi_1e5.bin");
        let t = build_psi_table(100_000).unwrap();
        t.write_cache(&path).unwrap();
        let r = PsiTable::read_cache(&path).unwrap();
        assert_eq!(t.limit(), r.limit());
        assert_eq!(t.breakpoints().len(), r.breakpoints().len());
        for n in [2u64, 17, 1024, 99_991, 100_000] {
            assert_eq!(t.psi_at(n).to_bits(), r.psi_at(n).to_bits());
        }
        std::fs::remove_file(&path).ok();
    }
}
