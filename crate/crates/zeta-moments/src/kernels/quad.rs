//! Adaptive quadrature with an absolute-tolerance target.
//!
//! Panels are integrated with 15-point Gauss–Legendre; the error estimate of
//! a panel is the disagreement between its one-shot value and the sum over
//! its two halves. The worst panel is split until the summed estimate meets
//! the target. Nodes and weights are generated at startup by Newton
//! iteration on P₁₅, and the final merge runs in ascending panel order, so
//! results are deterministic.

use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::sum::KahanSum;

const GAUSS_N: usize = 15;

struct GaussRule {
    nodes: [f64; GAUSS_N],
    weights: [f64; GAUSS_N],
}

static RULE: OnceLock<GaussRule> = OnceLock::new();

/// Legendre P_n(x) and its derivative by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn gauss_rule() -> &'static GaussRule {
    RULE.get_or_init(|| {
        let n = GAUSS_N;
        let mut nodes = [0.0; GAUSS_N];
        let mut weights = [0.0; GAUSS_N];
        for i in 0..n {
            // Tricomi-style initial guess, then Newton.
            let mut x =
                (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * d * d);
        }
        GaussRule { nodes, weights }
    })
}

/// One-panel Gauss–Legendre.
pub fn gauss15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let rule = gauss_rule();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for i in 0..GAUSS_N {
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    acc * half
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    /// Refined value: sum of Gauss over the two halves.
    value: f64,
    /// |one-shot − refined|.
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.a == other.a
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err
            .total_cmp(&other.err)
            .then(self.a.total_cmp(&other.a))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    /// Summed panel error estimates at termination.
    pub err_estimate: f64,
    pub evaluations: u64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Split [a, b] into this many equal panels before adapting; oscillatory
    /// integrands want roughly one panel per period.
    pub initial_panels: usize,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            initial_panels: 1,
            max_panels: 400_000,
        }
    }
}

fn make_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let coarse = gauss15(f, a, b);
    let mid = 0.5 * (a + b);
    let fine = gauss15(f, a, mid) + gauss15(f, mid, b);
    Panel {
        a,
        b,
        value: fine,
        err: (coarse - fine).abs(),
    }
}

/// Integrates `f` over [a, b] to absolute tolerance `abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    opts: QuadOptions,
) -> Result<QuadResult> {
    assert!(b >= a, "integrate needs a <= b");
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            err_estimate: 0.0,
            evaluations: 0,
            panels: 0,
        });
    }
    let mut evals: u64 = 0;
    let cells = opts.initial_panels.clamp(1, opts.max_panels);
    let width = (b - a) / cells as f64;
    let mut heap: BinaryHeap<Panel> = BinaryHeap::with_capacity(cells * 2);
    let mut err_total = 0.0;
    for i in 0..cells {
        let lo = a + i as f64 * width;
        let hi = if i + 1 == cells { b } else { lo + width };
        let p = make_panel(f, lo, hi);
        evals += 3 * GAUSS_N as u64;
        err_total += p.err;
        heap.push(p);
    }

    let min_width = 1e-14 * (a.abs() + b.abs() + 1.0);
    let mut stuck: Vec<Panel> = Vec::new();
    while err_total > abs_tol && heap.len() + stuck.len() < opts.max_panels {
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        if worst.b - worst.a < min_width {
            // Can't subdivide further; park it and keep its error.
            stuck.push(worst);
            continue;
        }
        err_total -= worst.err;
        let mid = 0.5 * (worst.a + worst.b);
        let left = make_panel(f, worst.a, mid);
        let right = make_panel(f, mid, worst.b);
        evals += 6 * GAUSS_N as u64;
        err_total += left.err + right.err;
        heap.push(left);
        heap.push(right);
    }

    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(stuck);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = KahanSum::sum_iter(panels.iter().map(|p| p.value));
    let err_estimate = KahanSum::sum_iter(panels.iter().map(|p| p.err));
    if err_estimate > abs_tol {
        return Err(Error::Numeric {
            what: "adaptive quadrature".to_string(),
            achieved: err_estimate,
            requested: abs_tol,
        });
    }
    Ok(QuadResult {
        value,
        err_estimate,
        evaluations: evals,
        panels: panels.len(),
    })
}
