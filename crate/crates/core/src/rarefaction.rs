//! Smooth approximate 1-rarefaction built from the exact Burgers solution
//! with `tanh` initial data.
//!
//! `w(t, x)` solves `w_t + w w_x = 0`, `w(0, x) = w_c + w_h tanh x` with
//! `w_c = (w_m + w_-)/2`, `w_h = (w_m - w_-)/2`. The rarefaction is
//! `v^R(t, x) = lambda_1^{-1}(w(1 + t, x))` with `u^R` fixed by the
//! 1-Riemann invariant. Derivatives come from Taylor-mode differentiation of
//! the implicit characteristic map `x = x0 + w_0(x0) t`.

use crate::error::{NskError, Result};
use crate::jet::{flush, sech2, tanh_derivatives, Jet5};
use crate::quadrature::integrate_panels;
use crate::riemann::{EndState, WavePattern};
use crate::thermo::GasModel;

const NEWTON_TOL: f64 = 1e-13;
const MAX_NEWTON: usize = 50;

/// Which end state a deviation is measured from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Minus,
    Mid,
}

#[derive(Debug, Clone)]
pub struct RarefactionWave {
    model: GasModel,
    pub left: EndState,
    pub mid: EndState,
    /// `lambda_1(v_-)`
    pub w_minus: f64,
    /// `lambda_1(v_m)`
    pub w_m: f64,
    pub delta_r: f64,
    z1: f64,
}

/// Values and x-derivatives up to fourth order: `v[k] = d^k v^R / dx^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RarefactionSample {
    pub v: [f64; 5],
    pub u: [f64; 5],
}

/// Jets in `x` of the rarefaction and of its deviations from an end state.
#[derive(Debug, Clone, Copy)]
pub struct RarefactionJets {
    pub v: Jet5,
    pub u: Jet5,
    /// `v^R - v_side`, accurate in the exponential tails.
    pub dv: Jet5,
    /// `u^R - u_side`
    pub du: Jet5,
}

/// Cheap first-order evaluation used in the time stepping loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RarefactionPoint {
    pub v: f64,
    pub u: f64,
    pub vx: f64,
    pub ux: f64,
    /// `v^R - v_m`
    pub dv_m: f64,
    /// `u^R - u_m`
    pub du_m: f64,
}

/// Lebesgue exponent for norm tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lp {
    Finite(f64),
    Infinity,
}

impl Lp {
    pub fn as_f64(&self) -> f64 {
        match self {
            Lp::Finite(p) => *p,
            Lp::Infinity => f64::INFINITY,
        }
    }
}

/// `||d^j v^R / dx^j||_{L^p}` and the same for `u^R`, for `j = 1..=4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormTable {
    pub t: f64,
    pub p: f64,
    pub v: [f64; 4],
    pub u: [f64; 4],
}

impl NormTable {
    /// Norm of the pair `(d^j v, d^j u)`, taken as the sum of the two norms.
    pub fn pair(&self, j: usize) -> f64 {
        self.v[j - 1] + self.u[j - 1]
    }
}

impl RarefactionWave {
    pub fn new(model: &GasModel, pattern: &WavePattern) -> Self {
        Self::from_states(model, pattern.left, pattern.mid)
    }

    pub fn from_states(model: &GasModel, left: EndState, mid: EndState) -> Self {
        Self {
            model: *model,
            left,
            mid,
            w_minus: model.lambda1(left.v),
            w_m: model.lambda1(mid.v),
            delta_r: (mid.u - left.u).abs(),
            z1: model.z1(mid.v, mid.u),
        }
    }

    pub fn model(&self) -> &GasModel {
        &self.model
    }

    pub fn is_degenerate(&self) -> bool {
        self.delta_r < crate::riemann::DEGENERATE_STRENGTH || self.w_m <= self.w_minus
    }

    fn half_jump(&self) -> f64 {
        0.5 * (self.w_m - self.w_minus)
    }

    fn center(&self) -> f64 {
        0.5 * (self.w_m + self.w_minus)
    }

    /// Initial Burgers datum `w_0(x)`.
    pub fn w0(&self, x: f64) -> f64 {
        self.center() + self.half_jump() * x.tanh()
    }

    /// Solves `x = x0 + w_0(x0) t` for `x0` and returns `(w, x0)`. Callers
    /// working with the rarefaction pass `1 + t` as the Burgers time.
    pub fn burgers_state(&self, t: f64, x: f64) -> Result<(f64, f64)> {
        if !t.is_finite() || !x.is_finite() || t < 0.0 {
            return Err(NskError::Domain(format!("burgers_state needs finite t >= 0, x (t = {t}, x = {x})")));
        }
        if self.is_degenerate() {
            return Ok((self.w_m, x - self.w_m * t));
        }
        let x0 = self.solve_foot(t, x);
        Ok((self.w0(x0), x0))
    }

    fn solve_foot(&self, t: f64, x: f64) -> f64 {
        let wh = self.half_jump();
        let wc = self.center();
        // w_0 takes values in (w_-, w_m), so the foot lies in this bracket
        let mut lo = x - self.w_m * t;
        let mut hi = x - self.w_minus * t;
        let mut x0 = (x - self.w0(x - wc * t) * t).clamp(lo, hi);
        let tol = NEWTON_TOL * (1.0 + x.abs());
        for _ in 0..MAX_NEWTON {
            let r = x0 + (wc + wh * x0.tanh()) * t - x;
            if r.abs() <= tol {
                return x0;
            }
            if r > 0.0 {
                hi = x0;
            } else {
                lo = x0;
            }
            let d = 1.0 + wh * sech2(x0) * t;
            let mut next = x0 - r / d;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if next == x0 {
                return x0;
            }
            x0 = next;
        }
        // bisection fallback
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let r = mid + (wc + wh * mid.tanh()) * t - x;
            if r > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= tol {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Taylor jet of `tanh(x0(x)) - shift` in `x`, where `shift` is `1` for
    /// deviations from the mid side and `-1` from the minus side.
    fn tanh_dev_jet(&self, tau: f64, x: f64, side: Side) -> Jet5 {
        let x0 = self.solve_foot(tau, x);
        let wh = self.half_jump();
        let mut d = tanh_derivatives(x0);
        d[0] = match side {
            Side::Mid => flush(-2.0 / (1.0 + (2.0 * x0).exp())),
            Side::Minus => flush(2.0 / (1.0 + (-2.0 * x0).exp())),
        };
        let mut taylor = [0.0; 5];
        let mut fact = 1.0;
        for k in 0..5 {
            if k > 1 {
                fact *= k as f64;
            }
            taylor[k] = d[k] / fact;
        }
        // series reversion of g(H) = H + tau w_h (tanh(x0 + H) - tanh(x0)) = eps
        let g1 = 1.0 + tau * wh * taylor[1];
        let mut rest = [0.0; 5];
        for k in 2..5 {
            rest[k] = tau * wh * taylor[k];
        }
        let eps = Jet5::variable(0.0);
        let mut h = eps.scale(1.0 / g1);
        for _ in 0..4 {
            h = (eps - h.substitute_into(&rest)).scale(1.0 / g1);
        }
        h.substitute_into(&taylor)
    }

    /// Jets of `(v^R, u^R)` at `(t, x)` together with deviations from the
    /// chosen end state.
    pub fn jets(&self, t: f64, x: f64, side: Side) -> RarefactionJets {
        let (vs, us, ws) = match side {
            Side::Mid => (self.mid.v, self.mid.u, self.w_m),
            Side::Minus => (self.left.v, self.left.u, self.w_minus),
        };
        if self.is_degenerate() {
            let (v, u) = (self.mid.v, self.mid.u);
            return RarefactionJets {
                v: Jet5::constant(v),
                u: Jet5::constant(u),
                dv: Jet5::constant(v - vs),
                du: Jet5::constant(u - us),
            };
        }
        let tau = 1.0 + t;
        let dw = self.tanh_dev_jet(tau, x, side).scale(self.half_jump());
        let g = self.model.gamma;
        // v / v_side = (w / w_side)^{-2/(gamma+1)}
        let dv = (dw.scale(1.0 / ws)).ln_1p().scale(-2.0 / (g + 1.0)).exp_m1().scale(vs);
        let c = 2.0 * g.sqrt() / (g - 1.0);
        let du = -Jet5::pow_diff(Jet5::constant(vs), dv, (1.0 - g) / 2.0).scale(c);
        RarefactionJets {
            v: dv.offset(vs),
            u: du.offset(us),
            dv,
            du,
        }
    }

    /// `(v^R, u^R)` and x-derivatives up to `order` (at most 4).
    pub fn eval(&self, t: f64, x: f64, order: usize) -> Result<RarefactionSample> {
        if order > 4 {
            return Err(NskError::UnsupportedOrder(order));
        }
        if !t.is_finite() || !x.is_finite() || t < 0.0 {
            return Err(NskError::Domain(format!("rarefaction eval needs finite t >= 0 (t = {t}, x = {x})")));
        }
        let j = self.jets(t, x, Side::Mid);
        let mut v = j.v.derivatives();
        let mut u = j.u.derivatives();
        for k in order + 1..5 {
            v[k] = 0.0;
            u[k] = 0.0;
        }
        Ok(RarefactionSample { v, u })
    }

    /// Value and first derivatives without jets.
    pub fn point(&self, t: f64, x: f64) -> RarefactionPoint {
        if self.is_degenerate() {
            return RarefactionPoint {
                v: self.mid.v,
                u: self.mid.u,
                vx: 0.0,
                ux: 0.0,
                dv_m: 0.0,
                du_m: 0.0,
            };
        }
        let tau = 1.0 + t;
        let x0 = self.solve_foot(tau, x);
        let wh = self.half_jump();
        let g = self.model.gamma;
        let dw = flush(wh * (-2.0 / (1.0 + (2.0 * x0).exp())));
        let w = self.w_m + dw;
        let dv_m = self.mid.v * ((-2.0 / (g + 1.0)) * (dw / self.w_m).ln_1p()).exp_m1();
        let v = self.mid.v + dv_m;
        let c = 2.0 * g.sqrt() / (g - 1.0);
        let du_m = -c * crate::jet::pow_diff(self.mid.v, dv_m, (1.0 - g) / 2.0);
        let s = wh * sech2(x0);
        let wx = s / (1.0 + tau * s);
        let ux = 2.0 * v * wx / (g + 1.0);
        let vx = -ux / w;
        RarefactionPoint {
            v,
            u: self.mid.u + du_m,
            vx,
            ux,
            dv_m,
            du_m,
        }
    }

    /// Self-similar (Lipschitz) rarefaction `(v^r, u^r)(x / t)`.
    pub fn self_similar(&self, t: f64, x: f64) -> (f64, f64) {
        let xi = x / t;
        if xi <= self.w_minus {
            (self.left.v, self.left.u)
        } else if xi >= self.w_m {
            (self.mid.v, self.mid.u)
        } else {
            let v = self.model.lambda1_inv(xi);
            (v, self.z1 - self.model.lambda1_antiderivative(v))
        }
    }

    /// Window outside of which every derivative is below roundoff.
    pub fn support(&self, t: f64, margin: f64) -> (f64, f64) {
        let tau = 1.0 + t;
        (self.w_minus * tau - margin, self.w_m * tau + margin)
    }

    /// Location of the fan edges `lambda_1(v_-)(1+t)` and `lambda_1(v_m)(1+t)`.
    pub fn fan_edges(&self, t: f64) -> (f64, f64) {
        ((1.0 + t) * self.w_minus, (1.0 + t) * self.w_m)
    }

    /// Lebesgue norms of the derivative stack at time `t`.
    pub fn derivative_norms(&self, t: f64, p: Lp) -> NormTable {
        let mut table = NormTable {
            t,
            p: p.as_f64(),
            v: [0.0; 4],
            u: [0.0; 4],
        };
        if self.is_degenerate() {
            return table;
        }
        let (a, b) = self.support(t, 40.0);
        match p {
            Lp::Infinity => {
                let n = ((b - a) / 0.005).ceil() as usize;
                let h = (b - a) / n as f64;
                for i in 0..=n {
                    let x = a + i as f64 * h;
                    let j = self.jets(t, x, Side::Mid);
                    let dv = j.v.derivatives();
                    let du = j.u.derivatives();
                    for k in 0..4 {
                        table.v[k] = table.v[k].max(dv[k + 1].abs());
                        table.u[k] = table.u[k].max(du[k + 1].abs());
                    }
                }
            }
            Lp::Finite(p) => {
                for k in 0..4 {
                    let fv = |x: f64| self.jets(t, x, Side::Mid).v.derivative(k + 1).abs().powf(p);
                    let fu = |x: f64| self.jets(t, x, Side::Mid).u.derivative(k + 1).abs().powf(p);
                    table.v[k] = integrate_panels(&fv, a, b, 1.0, 1e-11).powf(1.0 / p);
                    table.u[k] = integrate_panels(&fu, a, b, 1.0, 1e-11).powf(1.0 / p);
                }
            }
        }
        table
    }
}
