//! Viscous-dispersive 2-shock traveling wave.
//!
//! With `u' = -sigma v'` the momentum equation integrates once to
//!
//! ```text
//! sigma^2 (v - v_m) + p(v) - p(v_m) + sigma mu(v)/v v' + k k'(v) v'^2 + k(v)^2 v'' = 0
//! ```
//!
//! where `k(v) = sqrt(kappa(v)) / v^{5/2}`. The profile is the unstable
//! manifold of the saddle `(v_m, 0)`. Each half is integrated in the
//! deviation from its own end state so that the exponentially small tails
//! keep full relative precision.

use serde::{Deserialize, Serialize};

use crate::error::{NskError, Result};
use crate::jet::{flush, pow_diff, Jet5};
use crate::ode::{Control, Dp45, OdeError};
use crate::riemann::{WavePattern, DEGENERATE_STRENGTH};
use crate::thermo::GasModel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProfileOptions {
    /// Relative tolerance of the shooting integrator.
    pub rtol: f64,
    /// Ceiling on the once-integrated residual at the table nodes.
    pub residual_tol: f64,
    /// Largest admissible shock strength.
    pub max_strength: f64,
    /// Distance to the end states at which the table is cut off.
    pub tail_tol: f64,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-11,
            residual_tol: 1e-8,
            max_strength: 0.5,
            tail_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ShockProfile {
    model: GasModel,
    pub sigma: f64,
    pub v_m: f64,
    pub u_m: f64,
    pub v_plus: f64,
    pub delta_s: f64,
    /// Fitted decay exponent of `log|v^S - v_+|` on the right half of the table.
    pub tail_rate: f64,
    /// Strictly increasing node positions.
    pub xi: Vec<f64>,
    /// `v^S - v_m` at the nodes.
    pub dev: Vec<f64>,
    /// `v^S - v_+` at the nodes.
    pub dev_plus: Vec<f64>,
    pub v: Vec<f64>,
    pub vx: Vec<f64>,
    pub vxx: Vec<f64>,
    pub u: Vec<f64>,
    pub w: Vec<f64>,
    left_rate: f64,
    right_rate: f64,
}

/// Profile fields at one point: `(v, u, w)` and the derivatives used by the
/// composite wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub v: f64,
    pub u: f64,
    pub w: f64,
    pub vx: f64,
    pub ux: f64,
    pub wx: f64,
    pub vxx: f64,
    pub vxxx: f64,
}

/// Residual of the once-integrated profile equation.
pub fn profile_residual(model: &GasModel, pattern: &WavePattern, v: f64, v1: f64, v2: f64) -> Result<f64> {
    if !(v > 0.0) {
        return Err(NskError::Domain(format!("profile residual needs v > 0, got {v}")));
    }
    let s = pattern.sigma;
    let vm = pattern.mid.v;
    let k = model.cap_coef(v);
    Ok(s * s * (v - vm) + pow_diff(vm, v - vm, -model.gamma)
        + s * model.visc_coef(v) * v1
        + k * model.dcap_coef(v) * v1 * v1
        + k * k * v2)
}

/// Profile equation written in the deviation from an end state `anchor`.
/// The Rankine-Hugoniot condition makes the pressure term identical for
/// either end state, so each half of the profile can be integrated in the
/// variable that is small there.
struct Rhs<'a> {
    model: &'a GasModel,
    sigma: f64,
    anchor: f64,
}

impl Rhs<'_> {
    /// `d''` as a function of `(d, d')`.
    fn second(&self, d: f64, d1: f64) -> f64 {
        let m = self.model;
        let v = self.anchor + d;
        let k = m.cap_coef(v);
        let h = self.sigma * self.sigma * d + pow_diff(self.anchor, d, -m.gamma);
        -(h + self.sigma * m.visc_coef(v) * d1 + k * m.dcap_coef(v) * d1 * d1) / (k * k)
    }

    /// Taylor jet of `d` about a point where `(d, d')` are known.
    fn taylor(&self, d: f64, d1: f64) -> Jet5 {
        let m = self.model;
        let g = m.gamma;
        let mut c = [d, d1, 0.0, 0.0, 0.0];
        c[2] = 0.5 * self.second(d, d1);
        for _ in 0..2 {
            let dj = Jet5 { c };
            let vj = dj.offset(self.anchor);
            let d1j = dj.diff();
            let k2 = vj.powf(-m.beta - 5.0);
            let kk = vj.powf(-m.beta - 6.0).scale(-(m.beta + 5.0) / 2.0);
            let h = dj.scale(self.sigma * self.sigma) + Jet5::pow_diff(Jet5::constant(self.anchor), dj, -g);
            let num = h + m.visc_coef_jet(vj) * d1j.scale(self.sigma) + kk * d1j * d1j;
            let f = -(num / k2);
            for j in 0..3 {
                c[j + 2] = f.c[j] / ((j + 1) * (j + 2)) as f64;
            }
        }
        Jet5 { c }
    }
}

fn hermite(x0: f64, x1: f64, y0: f64, y1: f64, m0: f64, m1: f64, x: f64) -> (f64, f64) {
    let h = x1 - x0;
    let s = (x - x0) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    let val = h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1;
    let d00 = (6.0 * s2 - 6.0 * s) / h;
    let d10 = 3.0 * s2 - 4.0 * s + 1.0;
    let d01 = (-6.0 * s2 + 6.0 * s) / h;
    let d11 = 3.0 * s2 - 2.0 * s;
    (val, d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1)
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

/// Solves for the profile joining `v_m` to `v_+` at the pattern's shock speed.
pub fn solve_profile(pattern: &WavePattern, model: &GasModel, opts: &ProfileOptions) -> Result<ShockProfile> {
    let delta = pattern.right.v - pattern.mid.v;
    if delta.abs() < DEGENERATE_STRENGTH {
        return Err(NskError::ProfileSolveFailed(format!("degenerate shock strength {delta:e}, no profile")));
    }
    if delta < 0.0 {
        return Err(NskError::ProfileSolveFailed(format!("v_+ = {} below v_m = {}, not a 2-shock", pattern.right.v, pattern.mid.v)));
    }
    if delta >= opts.max_strength {
        return Err(NskError::ProfileSolveFailed(format!("shock strength {delta} exceeds cap {}", opts.max_strength)));
    }
    let sigma = pattern.sigma;
    let vm = pattern.mid.v;
    let vp = pattern.right.v;
    let lower = Rhs { model, sigma, anchor: vm };
    let upper = Rhs { model, sigma, anchor: vp };

    // linearization at the saddle v_m
    let km2 = model.cap_coef(vm).powi(2);
    let a = (-model.dp(vm) - sigma * sigma) / km2;
    let b = sigma * model.visc_coef(vm) / km2;
    if !(a > 0.0) {
        return Err(NskError::ProfileSolveFailed(format!("v_m is not a saddle (a = {a:e})")));
    }
    let r_plus = 2.0 * a / (b + (b * b + 4.0 * a).sqrt());
    // linearization at v_+: a focus would make the profile oscillate
    let kp2 = model.cap_coef(vp).powi(2);
    let c_plus = (sigma * sigma + model.dp(vp)) / kp2;
    let b_plus = sigma * model.visc_coef(vp) / kp2;
    if b_plus * b_plus < 4.0 * c_plus {
        return Err(NskError::MonotonicityViolated(format!(
            "end state v_+ = {vp} is a focus (b^2 = {:e} < 4c = {:e})",
            b_plus * b_plus,
            4.0 * c_plus
        )));
    }

    let eps = 1e-8 * delta;
    // dense enough that the difference check of the table stays near 1e-9
    let h_max = (1e-4 * delta.powf(-2.5)).min(0.1);
    let dp45 = Dp45 {
        rtol: opts.rtol,
        atol: 1e-30,
        h_init: 1e-2 * h_max,
        h_max,
        max_steps: 5_000_000,
    };
    let ode_err = |e: OdeError| {
        let msg = match e {
            OdeError::StepUnderflow { t, h } => format!("step underflow at xi = {t} (h = {h:e})"),
            OdeError::TooManySteps { t } => format!("no approach to v_+ by xi = {t}"),
            OdeError::NonFinite { t } => format!("non-finite state at xi = {t}"),
        };
        NskError::ProfileSolveFailed(format!("{msg}; bracket v in [{vm}, {vp}]"))
    };
    let mut bad: Option<String> = None;
    // lower half in v - v_m, up to the midpoint
    let lower_path = dp45
        .integrate(
            |_, y: &[f64; 2]| [y[1], lower.second(y[0], y[1])],
            0.0,
            [eps, r_plus * eps],
            |t, y| {
                if y[1] <= 0.0 {
                    bad = Some(format!("v' = {:e} at v - v_m = {:e}, xi = {t}", y[1], y[0]));
                    return Control::Stop;
                }
                if y[0] >= 0.5 * delta {
                    Control::Stop
                } else {
                    Control::Continue
                }
            },
        )
        .map_err(ode_err)?;
    if let Some(m) = bad {
        return Err(NskError::MonotonicityViolated(m));
    }
    let (t_mid, y_mid) = *lower_path.last().unwrap();
    // upper half in v - v_+
    let upper_path = dp45
        .integrate(
            |_, y: &[f64; 2]| [y[1], upper.second(y[0], y[1])],
            t_mid,
            [y_mid[0] - delta, y_mid[1]],
            |t, y| {
                if y[1] <= 0.0 || y[0] >= 0.0 {
                    bad = Some(format!("v' = {:e}, v - v_+ = {:e} at xi = {t}", y[1], y[0]));
                    return Control::Stop;
                }
                if -y[0] < opts.tail_tol {
                    Control::Stop
                } else {
                    Control::Continue
                }
            },
        )
        .map_err(ode_err)?;
    if let Some(m) = bad {
        return Err(NskError::MonotonicityViolated(m));
    }

    // analytic left tail along the unstable eigenvector
    let n_left = ((eps / (0.1 * opts.tail_tol)).ln() / (r_plus * h_max)).ceil().max(0.0) as usize;
    let cap = n_left + lower_path.len() + upper_path.len();
    let mut xi = Vec::with_capacity(cap);
    let mut dev = Vec::with_capacity(cap);
    let mut dev_plus = Vec::with_capacity(cap);
    let mut dev1 = Vec::with_capacity(cap);
    for i in (1..=n_left).rev() {
        let s = -(i as f64) * h_max;
        let d = eps * (r_plus * s).exp();
        xi.push(s);
        dev.push(d);
        dev_plus.push(d - delta);
        dev1.push(r_plus * d);
    }
    for (t, y) in &lower_path {
        xi.push(*t);
        dev.push(y[0]);
        dev_plus.push(y[0] - delta);
        dev1.push(y[1]);
    }
    let n_lower = xi.len();
    for (t, y) in upper_path.iter().skip(1) {
        xi.push(*t);
        dev.push(y[0] + delta);
        dev_plus.push(y[0]);
        dev1.push(y[1]);
    }

    // translate so that v(0) is the midpoint
    let half = 0.5 * delta;
    let j = dev.partition_point(|&d| d < half);
    if j == 0 || j >= dev.len() {
        return Err(NskError::ProfileSolveFailed("midpoint not bracketed by the table".into()));
    }
    let (x0, x1) = (xi[j - 1], xi[j]);
    let mut s = 0.5 * (x0 + x1);
    for _ in 0..60 {
        let (val, der) = hermite(x0, x1, dev[j - 1], dev[j], dev1[j - 1], dev1[j], s);
        let step = (val - half) / der;
        s = (s - step).clamp(x0, x1);
        if step.abs() < 1e-15 * (1.0 + s.abs()) {
            break;
        }
    }
    for x in xi.iter_mut() {
        *x -= s;
    }

    let n = xi.len();
    let mut v = Vec::with_capacity(n);
    let mut vxx = Vec::with_capacity(n);
    let mut u = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        let (vi, second) = if i < n_lower {
            (vm + dev[i], lower.second(dev[i], dev1[i]))
        } else {
            (vp + dev_plus[i], upper.second(dev_plus[i], dev1[i]))
        };
        v.push(vi);
        vxx.push(second);
        u.push(pattern.mid.u - sigma * dev[i]);
        w.push(-model.cap_coef(vi) * dev1[i]);
    }
    let last = n - 1;
    let left_rate = dev1[0] / dev[0];
    let right_rate = -dev1[last] / dev_plus[last];

    let l = xi[last];
    let (fx, fy): (Vec<f64>, Vec<f64>) = (0..n)
        .filter(|&i| xi[i] >= 0.5 * l)
        .map(|i| (xi[i], (-dev_plus[i]).ln()))
        .unzip();
    let tail_rate = if fx.len() >= 2 { fit_slope(&fx, &fy) } else { -right_rate };

    let profile = ShockProfile {
        model: *model,
        sigma,
        v_m: vm,
        u_m: pattern.mid.u,
        v_plus: vp,
        delta_s: delta,
        tail_rate,
        xi,
        dev,
        dev_plus,
        v,
        vx: dev1,
        vxx,
        u,
        w,
        left_rate,
        right_rate,
    };
    let res = profile.max_residual(pattern);
    if !(res < opts.residual_tol) {
        return Err(NskError::ProfileSolveFailed(format!("residual {res:e} above tolerance {:e}", opts.residual_tol)));
    }
    Ok(profile)
}

impl ShockProfile {
    pub fn model(&self) -> &GasModel {
        &self.model
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    /// First and last table positions.
    pub fn extent(&self) -> (f64, f64) {
        (self.xi[0], self.xi[self.xi.len() - 1])
    }

    fn rhs(&self, anchor: f64) -> Rhs<'_> {
        Rhs {
            model: &self.model,
            sigma: self.sigma,
            anchor,
        }
    }

    fn interp(&self, table: &[f64], xi: f64) -> (f64, f64) {
        let n = self.xi.len();
        let j = self.xi.partition_point(|&x| x <= xi).clamp(1, n - 1);
        hermite(self.xi[j - 1], self.xi[j], table[j - 1], table[j], self.vx[j - 1], self.vx[j], xi)
    }

    fn left_tail(&self, xi: f64) -> f64 {
        flush(self.dev[0] * (self.left_rate * (xi - self.xi[0])).exp())
    }

    /// `v^S - v_+` past the right end of the table (negative).
    fn right_tail(&self, xi: f64) -> f64 {
        let n = self.xi.len();
        flush(self.dev_plus[n - 1] * (-self.right_rate * (xi - self.xi[n - 1])).exp())
    }

    /// `(v^S - v_m, v^S_xi)` by cubic Hermite interpolation, with
    /// exponential continuation past the table.
    pub fn deviation(&self, xi: f64) -> (f64, f64) {
        let n = self.xi.len();
        if xi <= self.xi[0] {
            let d = self.left_tail(xi);
            (d, self.left_rate * d)
        } else if xi >= self.xi[n - 1] {
            let e = self.right_tail(xi);
            (self.delta_s + e, -self.right_rate * e)
        } else if xi <= 0.0 {
            self.interp(&self.dev, xi)
        } else {
            let (e, e1) = self.interp(&self.dev_plus, xi);
            (self.delta_s + e, e1)
        }
    }

    /// `v^S - v_+` at `xi`, accurate where the profile is close to `v_+`.
    pub fn deviation_plus(&self, xi: f64) -> f64 {
        let n = self.xi.len();
        if xi >= self.xi[n - 1] {
            self.right_tail(xi)
        } else if xi > 0.0 {
            self.interp(&self.dev_plus, xi).0
        } else {
            self.deviation(xi).0 - self.delta_s
        }
    }

    /// Taylor jet in `xi` of `v^S - v_m`.
    pub fn deviation_jet(&self, xi: f64) -> Jet5 {
        let n = self.xi.len();
        if xi <= self.xi[0] {
            let r = self.left_rate;
            let d = self.left_tail(xi);
            Jet5::from_derivatives([d, r * d, r * r * d, r.powi(3) * d, r.powi(4) * d])
        } else if xi >= self.xi[n - 1] {
            let r = -self.right_rate;
            let e = self.right_tail(xi);
            Jet5::from_derivatives([self.delta_s + e, r * e, r * r * e, r.powi(3) * e, r.powi(4) * e])
        } else if xi <= 0.0 {
            let (d, d1) = self.interp(&self.dev, xi);
            self.rhs(self.v_m).taylor(d, d1)
        } else {
            let (e, e1) = self.interp(&self.dev_plus, xi);
            self.rhs(self.v_plus).taylor(e, e1).offset(self.delta_s)
        }
    }

    /// Full sample of profile fields at `xi`.
    pub fn eval_profile(&self, xi: f64) -> ProfileSample {
        let d = self.deviation_jet(xi);
        let v = d.offset(self.v_m);
        let d1 = d.diff();
        let w = -(self.model.cap_coef_jet(v) * d1);
        let dv = d.derivatives();
        ProfileSample {
            v: v.value(),
            u: self.u_m - self.sigma * dv[0],
            w: w.value(),
            vx: dv[1],
            ux: -self.sigma * dv[1],
            wx: w.derivative(1),
            vxx: dv[2],
            vxxx: dv[3],
        }
    }

    /// Largest once-integrated residual over the interior nodes, with `v''`
    /// taken from nonuniform central differences of the tabulated `v'`.
    pub fn max_residual(&self, pattern: &WavePattern) -> f64 {
        let mut worst = 0.0f64;
        for i in 1..self.xi.len() - 1 {
            let h0 = self.xi[i] - self.xi[i - 1];
            let h1 = self.xi[i + 1] - self.xi[i];
            let v2 = (h0 * h0 * (self.vx[i + 1] - self.vx[i]) + h1 * h1 * (self.vx[i] - self.vx[i - 1]))
                / (h0 * h1 * (h0 + h1));
            let r = profile_residual(&self.model, pattern, self.v[i], self.vx[i], v2).unwrap_or(f64::INFINITY);
            worst = worst.max(r.abs());
        }
        worst
    }

    pub fn max_slope(&self) -> f64 {
        self.vx.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
    }

    /// `max |v''| / (delta_S |v'|)` over the nodes.
    pub fn curvature_ratio(&self) -> f64 {
        self.vx
            .iter()
            .zip(&self.vxx)
            .fold(0.0f64, |m, (&a, &b)| m.max(b.abs() / (self.delta_s * a.abs())))
    }

    pub fn is_monotone(&self) -> bool {
        self.vx.iter().all(|&x| x > 0.0) && self.v.windows(2).all(|p| p[1] > p[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riemann::EndState;

    fn pattern(v_m: f64) -> (GasModel, WavePattern) {
        let m = GasModel::gamma_law(1.4).unwrap();
        let right = EndState::new(1.0, 0.0).unwrap();
        (m, WavePattern::construct(&m, right, v_m, 0.0).unwrap())
    }

    fn solved(v_m: f64) -> (GasModel, WavePattern, ShockProfile) {
        let (m, p) = pattern(v_m);
        let prof = solve_profile(&p, &m, &ProfileOptions::default()).unwrap();
        (m, p, prof)
    }

    #[test]
    fn residual_vanishes_at_end_states() {
        let (m, p) = pattern(0.9);
        assert_eq!(profile_residual(&m, &p, 0.9, 0.0, 0.0).unwrap(), 0.0);
        assert!(profile_residual(&m, &p, 1.0, 0.0, 0.0).unwrap().abs() < 1e-12);
        assert!(profile_residual(&m, &p, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn solved_profile_meets_invariants() {
        let (_, p, prof) = solved(0.9);
        assert!(prof.is_monotone());
        assert!(prof.max_residual(&p) < 1e-8);
        assert!((prof.eval_profile(0.0).v - 0.95).abs() < 1e-10);
        let (a, b) = prof.extent();
        assert!((prof.v[0] - 0.9).abs() < 1e-10);
        assert!((prof.v[prof.len() - 1] - 1.0).abs() < 1e-10);
        assert!(a < 0.0 && b > 0.0);
    }

    #[test]
    fn degenerate_and_oversized_strengths_rejected() {
        let (m, p) = pattern(1.0);
        assert!(matches!(solve_profile(&p, &m, &ProfileOptions::default()), Err(NskError::ProfileSolveFailed(_))));
        let (m, p) = pattern(0.5);
        let opts = ProfileOptions {
            max_strength: 0.2,
            ..Default::default()
        };
        assert!(solve_profile(&p, &m, &opts).is_err());
    }

    #[test]
    fn strongly_dispersive_profile_is_rejected() {
        let m = GasModel::new(1.4, 0.0, 0.0).unwrap();
        let right = EndState::new(1.0, 0.0).unwrap();
        let p = WavePattern::construct(&m, right, 0.6, 0.0).unwrap();
        let r = solve_profile(&p, &m, &ProfileOptions::default());
        assert!(matches!(r, Err(NskError::MonotonicityViolated(_))), "{r:?}");
    }

    #[test]
    fn far_field_saturation() {
        let (_, _, prof) = solved(0.9);
        let (a, b) = prof.extent();
        let l = prof.eval_profile(a - 10.0);
        assert!((l.v - 0.9).abs() < 1e-10 && l.vx.abs() < 1e-10 && l.w.abs() < 1e-10);
        let r = prof.eval_profile(b + 10.0);
        assert!((r.v - 1.0).abs() < 1e-10 && r.vx.abs() < 1e-10);
    }

    #[test]
    fn mass_equation_and_w_definition() {
        let (m, _, prof) = solved(0.9);
        for i in 0..100 {
            let xi = -150.0 + 3.0 * i as f64;
            let s = prof.eval_profile(xi);
            assert!((s.ux + prof.sigma * s.vx).abs() < 1e-12);
            assert!((s.w + m.cap_coef(s.v) * s.vx).abs() < 1e-14);
        }
    }

    #[test]
    fn interpolated_slope_matches_differences() {
        let (_, _, prof) = solved(0.9);
        let h = 1e-4;
        for i in (1..prof.len() - 1).step_by(97) {
            let x = 0.5 * (prof.xi[i] + prof.xi[i + 1]);
            let fd = (prof.deviation(x + h).0 - prof.deviation(x - h).0) / (2.0 * h);
            assert!((fd - prof.deviation(x).1).abs() < 1e-6);
        }
    }

    #[test]
    fn jet_derivatives_match_differences() {
        let (_, _, prof) = solved(0.9);
        let h = 1e-3;
        for &x in &[-20.0, -3.0, 0.0, 5.0, 30.0] {
            let j = prof.deviation_jet(x).derivatives();
            let jp = prof.deviation_jet(x + h).derivatives();
            let jm = prof.deviation_jet(x - h).derivatives();
            for k in 1..4 {
                let fd = (jp[k] - jm[k]) / (2.0 * h);
                assert!((fd - j[k + 1]).abs() < 1e-8, "k={k} x={x}");
            }
        }
    }

    #[test]
    fn tail_is_exponential_with_strength_scaled_rate() {
        let (_, _, prof) = solved(0.95);
        assert!(prof.tail_rate < 0.0);
        let ratio = -prof.tail_rate / prof.delta_s;
        assert!(ratio > 1.0 / 3.0 && ratio < 3.0, "ratio {ratio}");
    }

    #[test]
    fn scalings_stable_across_strengths() {
        let mut slopes = Vec::new();
        let mut curv = Vec::new();
        for &d in &[0.025, 0.05, 0.1] {
            let (_, _, prof) = solved(1.0 - d);
            slopes.push(prof.max_slope() / (d * d));
            curv.push(prof.curvature_ratio());
        }
        let drift = |xs: &[f64]| xs.iter().cloned().fold(0.0, f64::max) / xs.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(drift(&slopes) < 2.0, "{slopes:?}");
        assert!(drift(&curv) < 2.0, "{curv:?}");
    }
}
