//! Fixed-order truncated Taylor arithmetic.
//!
//! A [`Jet`] carries the coefficients of a degree-`N-1` Taylor polynomial in
//! a local variable ε. Arithmetic on jets propagates derivatives exactly (up
//! to rounding), which lets removable singularities be handled by expanding
//! numerator and denominator around the singular point and dividing out the
//! common zero explicitly.

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Jet<const N: usize> {
    pub c: [f64; N],
}

impl<const N: usize> Jet<N> {
    pub fn zero() -> Self {
        Jet { c: [0.0; N] }
    }

    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        Jet { c }
    }

    /// x0 + ε
    pub fn variable(x0: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = x0;
        if N > 1 {
            c[1] = 1.0;
        }
        Jet { c }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut c = [0.0; N];
        for i in 0..N {
            c[i] = self.c[i] + rhs.c[i];
        }
        Jet { c }
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut c = [0.0; N];
        for i in 0..N {
            c[i] = self.c[i] * k;
        }
        Jet { c }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut c = [0.0; N];
        for i in 0..N {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..(N - i) {
                c[i + j] += self.c[i] * rhs.c[j];
            }
        }
        Jet { c }
    }

    /// Division; requires a nonzero constant term in the denominator.
    pub fn div(&self, rhs: &Self) -> Self {
        debug_assert!(rhs.c[0] != 0.0, "jet division by zero constant term");
        let mut c = [0.0; N];
        for k in 0..N {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= rhs.c[j] * c[k - j];
            }
            c[k] = acc / rhs.c[0];
        }
        Jet { c }
    }

    /// sin and cos of the jet, split as value + nilpotent part.
    pub fn sin_cos(&self) -> (Self, Self) {
        let (s0, c0) = self.c[0].sin_cos();
        let mut nil = *self;
        nil.c[0] = 0.0;

        // powers of the nilpotent part
        let mut sin_nil = Jet::<N>::zero(); // sin(nil) = nil - nil^3/3! + ...
        let mut cos_nil = Jet::<N>::constant(1.0);
        let mut term = Jet::<N>::constant(1.0);
        let mut factorial = 1.0;
        for k in 1..N {
            term = term.mul(&nil);
            factorial *= k as f64;
            if term.c.iter().all(|&v| v == 0.0) {
                break;
            }
            let coeff = match k % 4 {
                1 => (1.0 / factorial, true),   // + sin
                2 => (-1.0 / factorial, false), // - cos
                3 => (-1.0 / factorial, true),  // - sin
                _ => (1.0 / factorial, false),  // + cos
            };
            if coeff.1 {
                sin_nil = sin_nil.add(&term.scale(coeff.0));
            } else {
                cos_nil = cos_nil.add(&term.scale(coeff.0));
            }
        }
        // sin(a + n) = sin a cos n + cos a sin n; cos(a + n) = cos a cos n - sin a sin n
        let sin = cos_nil.scale(s0).add(&sin_nil.scale(c0));
        let cos = cos_nil.scale(c0).add(&sin_nil.scale(-s0));
        (sin, cos)
    }

    /// Evaluates the polynomial at displacement `v`.
    pub fn eval(&self, v: f64) -> f64 {
        let mut acc = 0.0;
        for k in (0..N).rev() {
            acc = acc * v + self.c[k];
        }
        acc
    }

    /// Evaluates the m-th derivative of the polynomial at displacement `v`.
    pub fn eval_derivative(&self, m: usize, v: f64) -> f64 {
        let mut out = 0.0;
        let mut vp = 1.0;
        for k in m..N {
            let mut fall = 1.0;
            for j in 0..m {
                fall *= (k - j) as f64;
            }
            out += fall * self.c[k] * vp;
            vp *= v;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type J8 = Jet<8>;

    #[test]
    fn product_rule() {
        // (x^2 sin x)' at x=0.7 via jets vs analytic
        let x = J8::variable(0.7);
        let x2 = x.mul(&x);
        let (s, _) = x.sin_cos();
        let f = x2.mul(&s);
        let x0 = 0.7_f64;
        let analytic = 2.0 * x0 * x0.sin() + x0 * x0 * x0.cos();
        assert!((f.c[1] - analytic).abs() < 1e-14);
    }

    #[test]
    fn division_inverts_multiplication() {
        let x = J8::variable(1.3);
        let (s, c) = x.sin_cos();
        let q = s.div(&c); // tan
        let back = q.mul(&c);
        for k in 0..8 {
            assert!((back.c[k] - s.c[k]).abs() < 1e-12, "coeff {k}");
        }
    }

    #[test]
    fn derivative_evaluation() {
        // f = cos(2x), f'''(x) = 8 sin(2x); expand at 0.4, evaluate at +0.01
        let x = J8::variable(0.4).scale(2.0);
        let (_, c) = x.sin_cos();
        let third = c.eval_derivative(3, 0.01);
        let x_eval: f64 = 2.0 * (0.4 + 0.01);
        assert!((third - 8.0 * x_eval.sin()).abs() < 1e-9);
        let value = c.eval(0.01);
        assert!((value - x_eval.cos()).abs() < 1e-12);
    }
}
