//! Truncated Taylor series ("jets") in one variable.
//!
//! A `Jet<N>` stores the first `N` Taylor coefficients `c[k] = f^(k)(x0) / k!`
//! of a function around an expansion point. Arithmetic on jets is exact
//! Taylor-mode differentiation, which is how every wave derivative stack in
//! this crate is produced. Nothing here uses finite differences.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<const N: usize> {
    pub c: [f64; N],
}

/// Jets carrying derivatives up to fourth order.
pub type Jet5 = Jet<5>;

impl<const N: usize> Jet<N> {
    pub fn constant(value: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = value;
        Self { c }
    }

    /// The identity function `x0 + h` expanded in `h`.
    pub fn variable(x0: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = x0;
        if N > 1 {
            c[1] = 1.0;
        }
        Self { c }
    }

    pub fn zero() -> Self {
        Self { c: [0.0; N] }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let mut fact = 1.0;
        for i in 2..=k {
            fact *= i as f64;
        }
        self.c[k] * fact
    }

    /// All derivatives `f, f', ..., f^(N-1)`.
    pub fn derivatives(&self) -> [f64; N] {
        let mut out = [0.0; N];
        let mut fact = 1.0;
        for k in 0..N {
            if k > 1 {
                fact *= k as f64;
            }
            out[k] = self.c[k] * fact;
        }
        out
    }

    /// Builds a jet from derivative values `f^(k)`.
    pub fn from_derivatives(d: [f64; N]) -> Self {
        let mut c = [0.0; N];
        let mut fact = 1.0;
        for k in 0..N {
            if k > 1 {
                fact *= k as f64;
            }
            c[k] = d[k] / fact;
        }
        Self { c }
    }

    /// d/dx of the series. The top coefficient becomes zero, so the result is
    /// exact to one order less than `self`.
    pub fn diff(&self) -> Self {
        let mut c = [0.0; N];
        for k in 1..N {
            c[k - 1] = self.c[k] * k as f64;
        }
        Self { c }
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut c = self.c;
        for x in c.iter_mut() {
            *x *= s;
        }
        Self { c }
    }

    pub fn offset(&self, s: f64) -> Self {
        let mut c = self.c;
        c[0] += s;
        Self { c }
    }

    /// Applies a scalar function given its derivatives at `self.value()`:
    /// `derivs[k] = f^(k)(a)`.
    pub fn compose(&self, derivs: [f64; N]) -> Self {
        let mut delta = *self;
        delta.c[0] = 0.0;
        let mut out = Self::constant(derivs[0]);
        let mut power = Self::constant(1.0);
        let mut fact = 1.0;
        for (k, &dk) in derivs.iter().enumerate().skip(1) {
            power = power * delta;
            fact *= k as f64;
            if dk != 0.0 {
                for i in 0..N {
                    out.c[i] += dk / fact * power.c[i];
                }
            }
        }
        out
    }

    /// Evaluates the polynomial with Taylor coefficients `coeffs` at `self`
    /// (which must have zero constant term for the result to be exact).
    pub fn substitute_into(&self, coeffs: &[f64; N]) -> Self {
        let mut out = Self::constant(coeffs[N - 1]);
        for k in (0..N - 1).rev() {
            out = out * *self;
            out.c[0] += coeffs[k];
        }
        out
    }

    pub fn powf(&self, p: f64) -> Self {
        let a = self.c[0];
        let mut d = [0.0; N];
        let mut coef = 1.0;
        for (k, dk) in d.iter_mut().enumerate() {
            *dk = coef * a.powf(p - k as f64);
            coef *= p - k as f64;
        }
        self.compose(d)
    }

    pub fn recip(&self) -> Self {
        self.powf(-1.0)
    }

    pub fn sqrt(&self) -> Self {
        self.powf(0.5)
    }

    pub fn exp(&self) -> Self {
        let e = self.c[0].exp();
        self.compose([e; N])
    }

    pub fn exp_m1(&self) -> Self {
        let a = self.c[0];
        let mut d = [a.exp(); N];
        d[0] = a.exp_m1();
        self.compose(d)
    }

    pub fn ln_1p(&self) -> Self {
        let a = self.c[0];
        let mut d = [0.0; N];
        d[0] = a.ln_1p();
        let base = 1.0 / (1.0 + a);
        let mut coef = 1.0;
        let mut pw = base;
        for (k, dk) in d.iter_mut().enumerate().skip(1) {
            *dk = coef * pw;
            coef *= -(k as f64);
            pw *= base;
        }
        self.compose(d)
    }

    /// `(base + incr)^p - base^p` without cancellation when `incr` is small
    /// relative to `base` (`base > 0`).
    pub fn pow_diff(base: Self, incr: Self, p: f64) -> Self {
        let ratio = incr / base;
        base.powf(p) * (ratio.ln_1p().scale(p)).exp_m1()
    }
}

/// Derivatives of `tanh` at `x` up to order 4, using `sech^2` directly so the
/// far tails keep full relative precision.
pub fn tanh_derivatives(x: f64) -> [f64; 5] {
    let t = x.tanh();
    let s = sech2(x);
    [
        t,
        s,
        -2.0 * t * s,
        s * (4.0 - 6.0 * s),
        s * t * (-8.0 + 24.0 * s),
    ]
}

/// Values below this are flushed to zero so tails never reach subnormals.
pub const TAIL_FLOOR: f64 = 1e-300;

/// Flushes `x` to zero when `|x| < TAIL_FLOOR`.
#[inline]
pub fn flush(x: f64) -> f64 {
    if x.abs() < TAIL_FLOOR {
        0.0
    } else {
        x
    }
}

/// `sech^2(x)` evaluated without forming `1 - tanh^2`.
pub fn sech2(x: f64) -> f64 {
    let e = (-2.0 * x.abs()).exp();
    flush(4.0 * e / ((1.0 + e) * (1.0 + e)))
}

/// `(b + d)^p - b^p` for scalars, stable for small `d / b`.
pub fn pow_diff(b: f64, d: f64, p: f64) -> f64 {
    b.powf(p) * (p * (d / b).ln_1p()).exp_m1()
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut c = self.c;
        for i in 0..N {
            c[i] += rhs.c[i];
        }
        Self { c }
    }
}

impl<const N: usize> AddAssign for Jet<N> {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..N {
            self.c[i] += rhs.c[i];
        }
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut c = self.c;
        for i in 0..N {
            c[i] -= rhs.c[i];
        }
        Self { c }
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut c = [0.0; N];
        for i in 0..N {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..N - i {
                c[i + j] += self.c[i] * rhs.c[j];
            }
        }
        Self { c }
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let mut q = [0.0; N];
        for k in 0..N {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= rhs.c[j] * q[k - j];
            }
            q[k] = acc / rhs.c[0];
        }
        Self { c: q }
    }
}

impl<const N: usize> Mul<f64> for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl<const N: usize> Add<f64> for Jet<N> {
    type Output = Self;
    fn add(self, rhs: f64) -> Self {
        self.offset(rhs)
    }
}

impl<const N: usize> Sub<f64> for Jet<N> {
    type Output = Self;
    fn sub(self, rhs: f64) -> Self {
        self.offset(-rhs)
    }
}
