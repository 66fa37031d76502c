//! Wave-curve algebra for the 1-rarefaction / 2-shock Riemann pattern.

use crate::error::{NskError, Result};
use crate::thermo::GasModel;
use serde::{Deserialize, Serialize};

/// Strengths below this are treated as an absent wave.
pub const DEGENERATE_STRENGTH: f64 = 1e-10;

const ROOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndState {
    pub v: f64,
    pub u: f64,
}

impl EndState {
    pub fn new(v: f64, u: f64) -> Result<Self> {
        if !(v.is_finite() && v > 0.0) || !u.is_finite() {
            return Err(NskError::Domain(format!("invalid end state (v = {v}, u = {u})")));
        }
        Ok(Self { v, u })
    }
}

/// Far-field states, intermediate state and the derived constants of the
/// composite wave.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavePattern {
    pub left: EndState,
    pub mid: EndState,
    pub right: EndState,
    /// Shock speed from the Rankine-Hugoniot condition.
    pub sigma: f64,
    /// `|u_m - u_-|`
    pub delta_r: f64,
    /// `|v_+ - v_m|`
    pub delta_s: f64,
    /// `|v_m - v_-|`, reported only.
    pub delta_r_volume: f64,
    /// `|u_m - u_+|`, reported only.
    pub delta_s_velocity: f64,
    /// `sqrt(-p'(v_m))`
    pub sigma_m: f64,
    /// `(gamma+1) / (2 gamma sigma_m p(v_m))`
    pub alpha_m: f64,
    /// Shift gain `5 sigma_m^3 alpha_m / 4`.
    pub shift_gain: f64,
    /// Weighted-entropy constant
    /// `(1/sigma_m - sqrt(delta_s) (gamma+1)/(gamma p(v_m))) / 2`.
    pub c1: f64,
    /// Residual of the intermediate-state equation at `v_m`.
    pub residual: f64,
}

impl WavePattern {
    pub fn rarefaction_degenerate(&self) -> bool {
        self.delta_r < DEGENERATE_STRENGTH
    }

    pub fn shock_degenerate(&self) -> bool {
        self.delta_s < DEGENERATE_STRENGTH
    }

    /// Assembles a pattern from an already consistent triple of states.
    pub fn from_states(model: &GasModel, left: EndState, mid: EndState, right: EndState, residual: f64) -> Self {
        let delta_s = (right.v - mid.v).abs();
        let sigma = if delta_s < DEGENERATE_STRENGTH {
            (-model.dp(right.v)).sqrt()
        } else {
            hugoniot_speed(model, mid.v, right.v)
        };
        let sigma_m = (-model.dp(mid.v)).sqrt();
        let alpha_m = (model.gamma + 1.0) / (2.0 * model.gamma * sigma_m * model.p(mid.v));
        let shift_gain = 5.0 * sigma_m.powi(3) * alpha_m / 4.0;
        let c1 = 0.5 * (1.0 / sigma_m - delta_s.sqrt() * (model.gamma + 1.0) / model.gamma / model.p(mid.v));
        Self {
            left,
            mid,
            right,
            sigma,
            delta_r: (mid.u - left.u).abs(),
            delta_s,
            delta_r_volume: (mid.v - left.v).abs(),
            delta_s_velocity: (mid.u - right.u).abs(),
            sigma_m,
            alpha_m,
            shift_gain,
            c1,
            residual,
        }
    }

    /// Builds the pattern forward from the right state, the intermediate
    /// volume and the rarefaction strength `delta_r = u_m - u_-`.
    pub fn construct(model: &GasModel, right: EndState, v_m: f64, delta_r: f64) -> Result<Self> {
        if !(v_m > 0.0 && v_m <= right.v) {
            return Err(NskError::Domain(format!("intermediate volume must lie in (0, v_+], got {v_m}")));
        }
        if !(delta_r >= 0.0) {
            return Err(NskError::Domain(format!("rarefaction strength must be non-negative, got {delta_r}")));
        }
        let u_m = if right.v - v_m < DEGENERATE_STRENGTH {
            right.u
        } else {
            shock_curve(model, v_m, right)?.0
        };
        let mid = EndState::new(v_m, u_m)?;
        let u_minus = u_m - delta_r;
        // z1 is conserved: F(v_-) = z1(mid) - u_-
        let f_minus = model.z1(v_m, u_m) - u_minus;
        let c = 2.0 * model.gamma.sqrt() / (model.gamma - 1.0);
        let v_minus = (f_minus / c).powf(2.0 / (1.0 - model.gamma));
        let left = EndState::new(v_minus, u_minus)?;
        Ok(Self::from_states(model, left, mid, right, 0.0))
    }
}

fn hugoniot_speed(model: &GasModel, v: f64, v_right: f64) -> f64 {
    (-(model.p(v) - model.p(v_right)) / (v - v_right)).sqrt()
}

/// Velocity on the 1-rarefaction curve through `anchor`, for `v <= anchor.v`.
pub fn rarefaction_curve_u(model: &GasModel, v: f64, anchor: EndState) -> Result<f64> {
    if !(v > 0.0) {
        return Err(NskError::Domain(format!("specific volume must be positive, got {v}")));
    }
    if v > anchor.v {
        return Err(NskError::Domain(format!(
            "rarefaction side violated: v = {v} exceeds anchor volume {}",
            anchor.v
        )));
    }
    Ok(anchor.u - (model.lambda1_antiderivative(v) - model.lambda1_antiderivative(anchor.v)))
}

/// Point of the 2-shock curve through `right` at volume `v < right.v`:
/// returns `(u, sigma)`.
pub fn shock_curve(model: &GasModel, v: f64, right: EndState) -> Result<(f64, f64)> {
    if !(v > 0.0) || v >= right.v {
        return Err(NskError::Domain(format!(
            "shock curve requires 0 < v < v_+ = {}, got {v}",
            right.v
        )));
    }
    let sigma = hugoniot_speed(model, v, right.v);
    Ok((right.u + sigma * (right.v - v), sigma))
}

/// `g(v) = z1(v, u_S(v)) - z1(left)` and its derivative.
fn intermediate_residual(model: &GasModel, v: f64, right: EndState, z1_left: f64) -> (f64, f64) {
    let d = right.v - v;
    let n = model.p(v) - model.p(right.v);
    let sd = (n * d).sqrt();
    let g = right.u + sd + model.lambda1_antiderivative(v) - z1_left;
    let dsd = if sd > 0.0 { (model.dp(v) * d - n) / (2.0 * sd) } else { 0.0 };
    (g, dsd + model.lambda1(v))
}

/// Finds the intermediate state joining `left` (by a 1-rarefaction) and
/// `right` (by a 2-shock).
pub fn solve_intermediate_state(model: &GasModel, left: EndState, right: EndState) -> Result<WavePattern> {
    let z1_left = model.z1(left.v, left.u);
    let g_plus = model.z1(right.v, right.u) - z1_left;
    let scale = 1.0 + z1_left.abs();

    let v_m = if g_plus.abs() <= ROOT_TOL * scale {
        right.v
    } else if g_plus > 0.0 {
        return Err(NskError::PatternNotR1S2(format!(
            "z1(right) - z1(left) = {g_plus:.3e} > 0: no intermediate state in (0, v_+)"
        )));
    } else {
        // g decreases from +inf at v -> 0 to g_plus < 0 at v_+.
        let mut hi = right.v * (1.0 - 1e-12);
        let mut lo = 0.5 * right.v;
        let mut g_lo = intermediate_residual(model, lo, right, z1_left).0;
        while g_lo <= 0.0 {
            lo *= 0.5;
            if lo < 1e-12 {
                return Err(NskError::PatternNotR1S2("could not bracket the intermediate state".into()));
            }
            g_lo = intermediate_residual(model, lo, right, z1_left).0;
        }
        if intermediate_residual(model, hi, right, z1_left).0 > 0.0 {
            // root squeezed against v_+; the shock is weaker than the bracket resolution
            hi = right.v;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let g = intermediate_residual(model, mid, right, z1_left).0;
            if g > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-9 * right.v {
                break;
            }
        }
        let mut v = 0.5 * (lo + hi);
        for _ in 0..50 {
            let (g, dg) = intermediate_residual(model, v, right, z1_left);
            if dg == 0.0 {
                break;
            }
            let step = g / dg;
            let next = (v - step).clamp(lo, hi.min(right.v));
            let moved = (next - v).abs();
            v = next;
            if moved < 1e-15 * right.v || g.abs() < 1e-15 * scale {
                break;
            }
        }
        v
    };

    if left.v > v_m + 1e-10 * right.v {
        return Err(NskError::LeftStateNotRarefactionSide { v_minus: left.v, v_m });
    }
    let (u_m, residual) = if right.v - v_m < DEGENERATE_STRENGTH {
        (right.u, g_plus)
    } else {
        let u = shock_curve(model, v_m, right)?.0;
        (u, model.z1(v_m, u) - z1_left)
    };
    if residual.abs() > ROOT_TOL * scale {
        return Err(NskError::PatternNotR1S2(format!("root polish failed, residual {residual:.3e}")));
    }
    let mid = EndState { v: v_m, u: u_m };
    Ok(WavePattern::from_states(model, left, mid, right, residual))
}
