//! Analytic constants, the smoothing weight a(s), and the Fourier kernel
//! pair K_η / K̂_η with its second derivative.
//!
//! K_η(x) = (sin 2πx + sin 2π(1+η)x) / (2πx(1 − 4η²x²)) has removable
//! singularities at x = 0 and x = ±1/(2η). Direct evaluation loses digits
//! there, so inside a small radius the value (and derivatives) come from a
//! local Taylor expansion in which the vanishing factor is divided out
//! symbolically. K″ suffers cubic cancellation, hence its wider branch
//! radius.

pub mod quad;
pub mod verify;

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Euler's constant C₀.
pub const EULER_C0: f64 = 0.577_215_664_901_532_9;

/// Taylor-branch radius around the removable points for K itself.
const K_TAYLOR_RADIUS: f64 = 1e-4;
/// Wider branch for K′ and K″, where direct evaluation cancels harder.
const KPP_TAYLOR_RADIUS: f64 = 1e-3;

/// The second-main-term constants and their defining relations.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Constants {
    pub euler_c0: f64,
    /// B = −C₀ − log 2π
    pub b: f64,
    /// C = (1 + B)/2
    pub c: f64,
    /// D = −log 2π − 1
    pub d: f64,
    /// C′ = D/2 − (C₀ + log 2)/2 + 1
    pub c_prime: f64,
}

static CONSTANTS: OnceLock<Constants> = OnceLock::new();

impl Constants {
    pub fn get() -> &'static Constants {
        CONSTANTS.get_or_init(|| {
            let log_2pi = (2.0 * std::f64::consts::PI).ln();
            let b = -EULER_C0 - log_2pi;
            let d = -log_2pi - 1.0;
            Constants {
                euler_c0: EULER_C0,
                b,
                c: 0.5 * (1.0 + b),
                d,
                c_prime: 0.5 * d - 0.5 * (EULER_C0 + std::f64::consts::LN_2) + 1.0,
            }
        })
    }

    /// C′ as a function of a caller-supplied D (the lemma verifiers take D
    /// as an input rather than assuming the canonical value).
    pub fn c_prime_of(d: f64) -> f64 {
        0.5 * d - 0.5 * (EULER_C0 + std::f64::consts::LN_2) + 1.0
    }
}

/// Number of representable doubles between a and b.
pub fn ulp_distance(a: f64, b: f64) -> u64 {
    let to_ordered = |x: f64| {
        let bits = x.to_bits() as i64;
        if bits < 0 {
            i64::MIN.wrapping_sub(bits) as u64
        } else {
            (bits as u64) ^ (1u64 << 63)
        }
    };
    to_ordered(a).abs_diff(to_ordered(b))
}

/// a(s) = ((1+δ)^s − 1)/s, with the removable singularity at s = 0 evaluated
/// by the series L + sL²/2! + s²L³/3! + s³L⁴/4!, L = log(1+δ).
pub fn a_of_s(delta: f64, s: Complex64) -> Complex64 {
    assert!(
        delta > 0.0 && delta < 1.0,
        "a_of_s needs 0 < delta < 1, got {delta}"
    );
    let l = delta.ln_1p();
    if s.norm_sqr() < 1e-8 {
        // |s| < 1e-4
        let mut acc = Complex64::new(l, 0.0);
        let mut term = Complex64::new(l, 0.0);
        let mut factorial = 1.0;
        for k in 2..=4 {
            term *= s * l;
            factorial *= k as f64;
            acc += term / factorial;
        }
        return acc;
    }
    ((s * l).exp() - 1.0) / s
}

/// Parameters of the kernel family; the Fourier side is supported on
/// [−(1+η), 1+η] and the hypotheses require 0 < η < 1/4.
#[derive(Debug, Clone, Copy)]
pub struct KernelParams {
    eta: f64,
}

impl KernelParams {
    pub fn new(eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta < 0.25) {
            return Err(Error::Input(format!(
                "kernel parameter eta must satisfy 0 < eta < 1/4, got {eta}"
            )));
        }
        Ok(KernelParams { eta })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Positive removable point 1/(2η).
    pub fn pole_location(&self) -> f64 {
        0.5 / self.eta
    }
}

const FACTORIALS: [f64; 11] = [
    1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0, 3628800.0,
];

/// Coefficients of K_η(u) = Σ c[m] u^{2m} around u = 0 (even function).
fn k_series_at_zero(eta: f64) -> [f64; 5] {
    let a = 2.0 * std::f64::consts::PI;
    let b = a * (1.0 + eta);
    // numerator/u: (sin(au) + sin(bu))/u
    let mut num = [0.0; 5];
    for (m, slot) in num.iter_mut().enumerate() {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        *slot = sign * (a.powi(2 * m as i32 + 1) + b.powi(2 * m as i32 + 1))
            / FACTORIALS[2 * m + 1];
    }
    // denominator/u: 2π(1 − 4η²u²)
    let d0 = a;
    let d1 = -4.0 * a * eta * eta;
    let mut c = [0.0; 5];
    c[0] = num[0] / d0;
    for m in 1..5 {
        c[m] = (num[m] - d1 * c[m - 1]) / d0;
    }
    c
}

/// Coefficients of K_η(x₀ + u) = Σ c[k] u^k around x₀ = 1/(2η), where the
/// simple zeros of numerator and denominator are divided out analytically.
fn k_series_at_pole(eta: f64) -> [f64; 10] {
    let a = 2.0 * std::f64::consts::PI;
    let b = a * (1.0 + eta);
    let big_a = std::f64::consts::PI / eta;
    let (sa, ca) = big_a.sin_cos();

    // numerator/u: sign pattern per k mod 4: [−cA, +sA, +cA, −sA]
    let mut num = [0.0; 10];
    for (k, slot) in num.iter_mut().enumerate() {
        let diff = b.powi(k as i32 + 1) - a.powi(k as i32 + 1);
        let t = match k % 4 {
            0 => -ca,
            1 => sa,
            2 => ca,
            _ => -sa,
        };
        *slot = t * diff / FACTORIALS[k + 1];
    }
    // denominator/u: −4π(1 + 3ηu + 2η²u²)
    let d0 = -2.0 * a;
    let d1 = -6.0 * a * eta;
    let d2 = -4.0 * a * eta * eta;
    let mut c = [0.0; 10];
    for k in 0..10 {
        let mut acc = num[k];
        if k >= 1 {
            acc -= d1 * c[k - 1];
        }
        if k >= 2 {
            acc -= d2 * c[k - 2];
        }
        c[k] = acc / d0;
    }
    c
}

/// Partial-fraction pieces of 1/(x(1 − 4η²x²)) and its derivatives.
#[inline]
fn partial_fractions(eta: f64, x: f64) -> (f64, f64, f64) {
    let m = 1.0 - 2.0 * eta * x;
    let p = 1.0 + 2.0 * eta * x;
    let e2 = eta * eta;
    let e3 = e2 * eta;
    let pf = 1.0 / x + eta / m - eta / p;
    let pf1 = -1.0 / (x * x) + 2.0 * e2 / (m * m) + 2.0 * e2 / (p * p);
    let pf2 = 2.0 / (x * x * x) + 8.0 * e3 / (m * m * m) - 8.0 * e3 / (p * p * p);
    (pf, pf1, pf2)
}

#[inline]
fn trig_parts(eta: f64, x: f64) -> (f64, f64, f64) {
    let a = 2.0 * std::f64::consts::PI * x;
    let b = a * (1.0 + eta);
    let (sa, ca) = a.sin_cos();
    let (sb, cb) = b.sin_cos();
    let s = sa + sb; // sin 2πx + sin 2π(1+η)x
    let s1 = ca + (1.0 + eta) * cb; // cos 2πx + (1+η) cos 2π(1+η)x
    let s2 = sa + (1.0 + eta) * (1.0 + eta) * sb; // sin 2πx + (1+η)² sin 2π(1+η)x
    (s, s1, s2)
}

enum Region {
    NearZero(f64),
    NearPole(f64),
    Direct,
}

fn classify(params: &KernelParams, ax: f64, radius: f64) -> Region {
    if ax < radius {
        Region::NearZero(ax)
    } else {
        let x0 = params.pole_location();
        if (ax - x0).abs() < radius {
            Region::NearPole(ax - x0)
        } else {
            Region::Direct
        }
    }
}

/// K_η(x); even, total on the reals.
pub fn kernel_k(params: &KernelParams, x: f64) -> f64 {
    let ax = x.abs();
    match classify(params, ax, K_TAYLOR_RADIUS) {
        Region::NearZero(u) => {
            let c = k_series_at_zero(params.eta);
            let u2 = u * u;
            c[0] + u2 * (c[1] + u2 * (c[2] + u2 * (c[3] + u2 * c[4])))
        }
        Region::NearPole(u) => {
            let c = k_series_at_pole(params.eta);
            let mut acc = 0.0;
            for k in (0..10).rev() {
                acc = acc * u + c[k];
            }
            acc
        }
        Region::Direct => {
            let eta = params.eta;
            let tp = 2.0 * std::f64::consts::PI;
            let s = (tp * ax).sin() + (tp * (1.0 + eta) * ax).sin();
            s / (tp * ax * (1.0 - 4.0 * eta * eta * ax * ax))
        }
    }
}

/// The Fourier transform side: 1 on [−1, 1], a raised-cosine rolloff on
/// 1 ≤ |t| ≤ 1+η, and 0 beyond.
pub fn kernel_k_hat(params: &KernelParams, t: f64) -> f64 {
    let at = t.abs();
    if at <= 1.0 {
        1.0
    } else if at < 1.0 + params.eta {
        let c = (std::f64::consts::PI * (at - 1.0) / (2.0 * params.eta)).cos();
        c * c
    } else {
        0.0
    }
}

/// K_η′(x); odd.
pub fn kernel_k_prime(params: &KernelParams, x: f64) -> f64 {
    let ax = x.abs();
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let v = match classify(params, ax, KPP_TAYLOR_RADIUS) {
        Region::NearZero(u) => {
            let c = k_series_at_zero(params.eta);
            let mut acc = 0.0;
            for m in (1..5).rev() {
                acc = acc * (u * u) + (2 * m) as f64 * c[m];
            }
            acc * u
        }
        Region::NearPole(u) => {
            let c = k_series_at_pole(params.eta);
            let mut acc = 0.0;
            for k in (1..10).rev() {
                acc = acc * u + k as f64 * c[k];
            }
            acc
        }
        Region::Direct => {
            let (pf, pf1, _) = partial_fractions(params.eta, ax);
            let (s, s1, _) = trig_parts(params.eta, ax);
            // K = s·pf/2π, so K' = s1·pf + s·pf1/2π
            s1 * pf + s * pf1 / (2.0 * std::f64::consts::PI)
        }
    };
    sign * v
}

/// K_η″(x) from the closed-form partial-fraction expression; the removable
/// points use the same local expansions as [`kernel_k`].
pub fn kernel_k_second_derivative(params: &KernelParams, x: f64) -> f64 {
    let ax = x.abs();
    match classify(params, ax, KPP_TAYLOR_RADIUS) {
        Region::NearZero(u) => {
            let c = k_series_at_zero(params.eta);
            let u2 = u * u;
            let mut acc = 0.0;
            for m in (1..5).rev() {
                let k = (2 * m) as f64;
                acc = acc * u2 + k * (k - 1.0) * c[m];
            }
            acc
        }
        Region::NearPole(u) => {
            let c = k_series_at_pole(params.eta);
            let mut acc = 0.0;
            for k in (2..10).rev() {
                acc = acc * u + (k * (k - 1)) as f64 * c[k];
            }
            acc
        }
        Region::Direct => {
            let pi = std::f64::consts::PI;
            let (pf, pf1, pf2) = partial_fractions(params.eta, ax);
            let (s, s1, s2) = trig_parts(params.eta, ax);
            // K = s·pf/2π ⇒ K″ = (−4π²·s2·pf + 4π·s1·pf1 + s·pf2)/2π
            -2.0 * pi * s2 * pf + 2.0 * s1 * pf1 + s * pf2 / (2.0 * pi)
        }
    }
}
