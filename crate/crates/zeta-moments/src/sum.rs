//! Compensated summation.
//!
//! All long reductions in the crate go through [`KahanSum`] with a fixed
//! accumulation order, so results are reproducible bit-for-bit across runs
//! and thread counts.

/// Kahan–Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    /// Folds another accumulator in, preserving both compensations.
    pub fn merge(&mut self, other: &KahanSum) {
        self.add(other.sum);
        self.compensation += other.compensation;
    }

    pub fn sum_iter<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc.value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancellation_naive_sum_loses() {
        let big = 1e16;
        let vals = [big, 1.0, -big, 1.0];
        let naive: f64 = vals.iter().sum();
        let comp = KahanSum::sum_iter(vals.iter().copied());
        assert_ne!(naive, 2.0);
        assert_eq!(comp, 2.0);
    }

    #[test]
    fn deterministic_for_fixed_order() {
        let vals: Vec<f64> = (1..=100_000).map(|n| 1.0 / n as f64).collect();
        let a = KahanSum::sum_iter(vals.iter().copied());
        let b = KahanSum::sum_iter(vals.iter().copied());
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
