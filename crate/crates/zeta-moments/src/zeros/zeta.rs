//! Critical-line evaluation of the zeta function and certified zero
//! location.
//!
//! Z(t) = e^{iθ(t)} ζ(½ + it) is computed two ways: Euler–Maclaurin below
//! [`RS_SWITCH`] (slow, near machine precision) and the Riemann–Siegel main
//! sum with the first two correction terms above it (fast, more than enough
//! accuracy at that height). Zeros are bracketed by sign changes across Gram
//! blocks and certified by the block count; a block that refuses to give up
//! its expected count after four 8× refinement rounds is a hard error.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::sum::KahanSum;

const TWO_PI: f64 = 2.0 * PI;

/// Height at which Z switches from Euler–Maclaurin to Riemann–Siegel.
pub const RS_SWITCH: f64 = 1000.0;

/// Bisection width for zero location.
pub const ROOT_TOLERANCE: f64 = 1e-9;

/// θ(t): the Riemann–Siegel theta function, asymptotic expansion through
/// t⁻⁵ (good far below the heights used here).
pub fn rs_theta(t: f64) -> f64 {
    let l = (t / TWO_PI).ln();
    0.5 * t * l - 0.5 * t - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
}

pub fn rs_theta_prime(t: f64) -> f64 {
    0.5 * (t / TWO_PI).ln() - 1.0 / (48.0 * t * t) - 21.0 / (5760.0 * t.powi(4))
        - 155.0 / (80640.0 * t.powi(6))
}

/// The theta-winding main term θ(t)/π + 1 of the Riemann–von Mangoldt
/// count. The true N(t) differs from it by the argument term S(t), which
/// stays below 1 in absolute value at desk heights.
pub fn theta_count_main_term(t: f64) -> f64 {
    if t < 10.0 {
        return 0.0;
    }
    rs_theta(t) / PI + 1.0
}

/// Riemann–von Mangoldt zero count up to t, rounding the theta winding.
/// Exact where |S(t)| < 1/2 (most heights, but not all: N(50) = 10 while
/// the main term is 9.42); use [`theta_count_main_term`] with a unit window
/// for certification.
pub fn theta_zero_count(t: f64) -> usize {
    theta_count_main_term(t).round().max(0.0) as usize
}

/// Gram point g_n: the solution of θ(g_n) = nπ, n ≥ −1.
pub fn gram_point(n: i64) -> f64 {
    // initial guess from θ(t) ≈ π(z log z − z − 1/8), t = 2πz
    let target = n as f64 + 0.125;
    let mut z = if n < 3 {
        1.5
    } else {
        let nf = n as f64;
        nf / (nf.ln().max(1.0)) + 1.0
    };
    for _ in 0..60 {
        let w = z * (z.ln() - 1.0) - target;
        let dz = w / z.ln().max(0.05);
        z -= dz;
        if z < 1.05 {
            z = 1.05;
        }
        if dz.abs() < 1e-12 * z {
            break;
        }
    }
    let mut t = (TWO_PI * z).max(9.0);
    let goal = n as f64 * PI;
    for _ in 0..30 {
        let dt = (rs_theta(t) - goal) / rs_theta_prime(t);
        t -= dt;
        if t < 8.0 {
            t = 8.0;
        }
        if dt.abs() < 1e-11 {
            break;
        }
    }
    t
}

/// Shared table of ln n.
pub struct LnCache {
    ln: Vec<f64>,
}

impl LnCache {
    pub fn up_to(n: usize) -> Self {
        let mut ln = vec![0.0; n + 1];
        for (k, slot) in ln.iter_mut().enumerate().skip(1) {
            *slot = (k as f64).ln();
        }
        LnCache { ln }
    }

    #[inline]
    fn get(&self, k: usize) -> f64 {
        if k < self.ln.len() {
            self.ln[k]
        } else {
            (k as f64).ln()
        }
    }
}

fn em_terms(t: f64) -> usize {
    // 4·t/(2π) keeps the Bernoulli tail ratio near 1/16
    (std::f64::consts::FRAC_2_PI * t).ceil() as usize + 16
}

/// ζ(m) for integer m ≥ 2 by direct summation with an analytic tail.
fn zeta_real_int(m: i32) -> f64 {
    let cut = 100u64;
    let mut acc = KahanSum::new();
    for n in 1..cut {
        acc.add((n as f64).powi(-m));
    }
    let j = cut as f64;
    let mf = m as f64;
    acc.add(j.powi(1 - m) / (mf - 1.0));
    acc.add(0.5 * j.powi(-m));
    acc.add(mf * j.powi(-m - 1) / 12.0);
    acc.add(-mf * (mf + 1.0) * (mf + 2.0) * j.powi(-m - 3) / 720.0);
    acc.value()
}

/// B_{2k}/(2k)! for k = 1..=14 via B_{2k}/(2k)! = (−1)^{k+1} 2 ζ(2k)/(2π)^{2k}.
fn bern_over_fact() -> &'static [f64; 15] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<[f64; 15]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [0.0; 15];
        for k in 1..15 {
            let two_k = (2 * k) as i32;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            out[k] = sign * 2.0 * zeta_real_int(two_k) / TWO_PI.powi(two_k);
        }
        out
    })
}

/// ζ(½ + it) by Euler–Maclaurin summation.
pub fn zeta_half_em(t: f64, cache: &LnCache) -> Complex64 {
    let n = em_terms(t).max(16);
    let s = Complex64::new(0.5, t);

    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    for k in 1..n {
        let (sk, ck) = (t * cache.get(k)).sin_cos();
        let w = 1.0 / (k as f64).sqrt();
        re.add(w * ck);
        im.add(-w * sk);
    }
    let mut total = Complex64::new(re.value(), im.value());

    let nf = n as f64;
    let (sn, cn) = (t * cache.get(n)).sin_cos();
    let n_pow_1ms = nf.sqrt() * Complex64::new(cn, -sn); // N^{1−s}
    let n_pow_ms = Complex64::new(cn, -sn) / nf.sqrt(); // N^{−s}
    total += n_pow_1ms / (s - 1.0);
    total += 0.5 * n_pow_ms;

    let bern = bern_over_fact();
    let n2 = nf * nf;
    let mut poch = s; // (s)_{2k−1} for k = 1
    let mut n_pow = n_pow_1ms;
    for (k, &b) in bern.iter().enumerate().take(13).skip(1) {
        n_pow /= n2; // N^{1−s−2k}
        total += b * poch * n_pow;
        let k2 = (2 * k) as f64;
        poch *= (s + (k2 - 1.0)) * (s + k2);
    }
    total
}

fn z_em(t: f64, cache: &LnCache) -> f64 {
    let zeta = zeta_half_em(t, cache);
    let (sth, cth) = rs_theta(t).sin_cos();
    cth * zeta.re - sth * zeta.im
}

/// Ψ(p) = cos(2π(p² − p − 1/16))/cos(2πp) and its third derivative,
/// evaluated through jets. Near the removable points p = 1/4, 3/4 the
/// common simple zero is divided out of a local expansion.
fn rs_correction_terms(p: f64) -> (f64, f64) {
    type J = Jet<14>;
    let c_96pi2 = 96.0 * PI * PI;
    if (TWO_PI * p).cos().abs() >= 0.1 {
        let pe = J::variable(p);
        let phase = pe
            .mul(&pe)
            .add(&pe.scale(-1.0))
            .add(&J::constant(-1.0 / 16.0))
            .scale(TWO_PI);
        let (_, num) = phase.sin_cos();
        let (_, den) = pe.scale(TWO_PI).sin_cos();
        let q = num.div(&den);
        (q.c[0], -6.0 * q.c[3] / c_96pi2)
    } else {
        let p0 = if (p - 0.25).abs() < (p - 0.75).abs() {
            0.25
        } else {
            0.75
        };
        let v = J::variable(0.0);
        // numerator: cos(phase) = sin(y), y = ±πv + 2πv²
        let lin = if p0 == 0.25 { -PI } else { PI };
        let y = v.scale(lin).add(&v.mul(&v).scale(TWO_PI));
        let (sin_y, _) = y.sin_cos();
        // denominator: cos(2π(p0+v)) = ∓sin(2πv)
        let (sin_2piv, _) = v.scale(TWO_PI).sin_cos();
        let den_sign = if p0 == 0.25 { -1.0 } else { 1.0 };
        // both have exact simple zeros; divide v out of each
        let num_hat = shift_down(&sin_y);
        let den_hat = shift_down(&sin_2piv).scale(den_sign);
        let q = num_hat.div(&den_hat);
        let dv = p - p0;
        (q.eval(dv), -q.eval_derivative(3, dv) / c_96pi2)
    }
}

fn shift_down(j: &Jet<14>) -> Jet<14> {
    debug_assert!(j.c[0] == 0.0);
    let mut out = Jet::<14>::zero();
    for k in 1..14 {
        out.c[k - 1] = j.c[k];
    }
    out
}

fn z_rs(t: f64, cache: &LnCache) -> f64 {
    let a = (t / TWO_PI).sqrt();
    let n = a.floor() as usize;
    let p = a - n as f64;
    let th = rs_theta(t);
    let mut main = KahanSum::new();
    for k in 1..=n {
        main.add((th - t * cache.get(k)).cos() / (k as f64).sqrt());
    }
    let (c0, c1) = rs_correction_terms(p);
    let root_inv = (TWO_PI / t).sqrt(); // (2π/t)^{1/2}
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 }; // (−1)^{N−1}
    2.0 * main.value() + sign * root_inv.sqrt() * (c0 + c1 * root_inv)
}

/// The Riemann–Siegel Z function: real, with sign changes exactly at the
/// ordinates of critical-line zeros.
pub fn z_function(t: f64, cache: &LnCache) -> f64 {
    if t < RS_SWITCH {
        z_em(t, cache)
    } else {
        z_rs(t, cache)
    }
}

fn ln_cache_for(t_max: f64) -> LnCache {
    // the gram scan may evaluate Z a batch of points past t_max
    let h_cap = (1.1 * t_max + 400.0).max(250.0);
    let em_cap = em_terms(h_cap.min(RS_SWITCH)) + 4;
    let rs_cap = (h_cap / TWO_PI).sqrt() as usize + 4;
    LnCache::up_to(em_cap.max(rs_cap).max(64))
}

#[derive(Debug, Clone, Copy)]
struct GramPt {
    n: i64,
    t: f64,
    z: f64,
}

impl GramPt {
    /// Gram's law: (−1)^n Z(g_n) > 0 at a "good" Gram point.
    fn is_good(&self) -> bool {
        let sign = if self.n % 2 == 0 { 1.0 } else { -1.0 };
        sign * self.z > 1e-12
    }
}

/// All zero ordinates in (0, t_max], certified complete.
///
/// Gram blocks between consecutive good Gram points must each contain
/// exactly their length in zeros; interior sampling refines by a factor of
/// 8 up to 4 rounds before giving up with a computation error naming the
/// block.
pub fn compute_zeros(t_max: f64) -> Result<Vec<f64>> {
    if !(10.0..=1e5).contains(&t_max) {
        return Err(Error::Range(format!(
            "zero computation supports 10 <= t_max <= 1e5, got {t_max}"
        )));
    }
    let cache = ln_cache_for(t_max);

    // Gram points with Z values, extended until a good point at or beyond
    // t_max closes the final block.
    let mut pts: Vec<GramPt> = Vec::new();
    let mut next_n: i64 = -1;
    let extend = |pts: &mut Vec<GramPt>, next_n: &mut i64, count: i64, cache: &LnCache| {
        let ns: Vec<i64> = (*next_n..*next_n + count).collect();
        let mut batch: Vec<GramPt> = Vec::new();
        ns.par_iter()
            .map(|&n| {
                let t = gram_point(n);
                GramPt {
                    n,
                    t,
                    z: z_function(t, cache),
                }
            })
            .collect_into_vec(&mut batch);
        pts.extend(batch);
        *next_n += count;
    };
    extend(&mut pts, &mut next_n, 64, &cache);
    if !pts[0].is_good() {
        return Err(Error::Computation(format!(
            "unexpected Z sign {} at scan start g_-1 = {}",
            pts[0].z, pts[0].t
        )));
    }

    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut last_good = 0usize;
    let mut i = 1usize;
    loop {
        if i >= pts.len() {
            extend(&mut pts, &mut next_n, 128, &cache);
        }
        if pts[i].is_good() {
            blocks.push((last_good, i));
            last_good = i;
            if pts[i].t >= t_max {
                break;
            }
        }
        i += 1;
        if next_n > 300_000 {
            return Err(Error::Computation(
                "gram scan failed to close final block".to_string(),
            ));
        }
    }

    let resolved: Vec<Result<Vec<f64>>> = blocks
        .par_iter()
        .map(|&(lo, hi)| resolve_block(&pts[lo..=hi], &cache))
        .collect();
    let mut zeros = Vec::with_capacity(theta_zero_count(t_max) + 8);
    for r in resolved {
        zeros.extend(r?);
    }
    zeros.retain(|&g| g <= t_max);
    for w in zeros.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::Computation(format!(
                "zero ordering violated near {}",
                w[0]
            )));
        }
    }
    Ok(zeros)
}

/// Finds exactly `len − 1` zeros between the good endpoints of one Gram
/// block, refining the interior grid 8× per round.
fn resolve_block(block: &[GramPt], cache: &LnCache) -> Result<Vec<f64>> {
    let expected = (block.last().unwrap().n - block[0].n) as usize;
    let mut xs: Vec<f64> = block.iter().map(|p| p.t).collect();
    let mut zs: Vec<f64> = block.iter().map(|p| p.z).collect();

    for round in 0..=4 {
        let changes: Vec<usize> = (0..xs.len() - 1)
            .filter(|&k| sign_of(zs[k]) != sign_of(zs[k + 1]))
            .collect();
        match changes.len().cmp(&expected) {
            std::cmp::Ordering::Equal => {
                let mut out = Vec::with_capacity(expected);
                for k in changes {
                    out.push(bisect(xs[k], xs[k + 1], sign_of(zs[k]), cache));
                }
                return Ok(out);
            }
            std::cmp::Ordering::Greater => {
                return Err(Error::Computation(format!(
                    "gram block [g_{}, g_{}] shows {} sign changes, expected {}",
                    block[0].n,
                    block.last().unwrap().n,
                    changes.len(),
                    expected
                )));
            }
            std::cmp::Ordering::Less if round < 4 => {
                // refine 8x
                let mut nxs = Vec::with_capacity(xs.len() * 8);
                let mut nzs = Vec::with_capacity(xs.len() * 8);
                for k in 0..xs.len() - 1 {
                    nxs.push(xs[k]);
                    nzs.push(zs[k]);
                    let w = (xs[k + 1] - xs[k]) / 8.0;
                    for j in 1..8 {
                        let x = xs[k] + w * j as f64;
                        nxs.push(x);
                        nzs.push(z_function(x, cache));
                    }
                }
                nxs.push(*xs.last().unwrap());
                nzs.push(*zs.last().unwrap());
                xs = nxs;
                zs = nzs;
            }
            _ => break,
        }
    }
    let found = (0..xs.len() - 1)
        .filter(|&k| sign_of(zs[k]) != sign_of(zs[k + 1]))
        .count();
    Err(Error::Computation(format!(
        "completeness certification failed in gram block [g_{}, g_{}]: found {} of {} zeros \
         after 4 refinement rounds",
        block[0].n,
        block.last().unwrap().n,
        found,
        expected
    )))
}

#[inline]
fn sign_of(z: f64) -> bool {
    z > 0.0
}

fn bisect(mut lo: f64, mut hi: f64, lo_positive: bool, cache: &LnCache) -> f64 {
    while hi - lo > ROOT_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        let zm = z_function(mid, cache);
        if zm == 0.0 {
            return mid;
        }
        if (zm > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
