//! Shifted superposition of the smooth rarefaction and the shock profile,
//! with the error terms it leaves in the momentum and `w` equations.
//!
//! Everything is assembled from deviations `v^R - v_m` and `v^S - v_m`, so
//! that interaction terms stay accurate when the two waves are far apart and
//! the overlap is many orders of magnitude below the wave amplitudes.

use crate::error::{NskError, Result};
use crate::jet::Jet5;
use crate::quadrature::gauss_legendre;
use crate::rarefaction::{RarefactionWave, Side};
use crate::riemann::WavePattern;
use crate::shockprofile::{solve_profile, ProfileOptions, ShockProfile};
use crate::thermo::GasModel;

#[derive(Debug, Clone)]
pub struct CompositeWave {
    model: GasModel,
    pub pattern: WavePattern,
    pub rarefaction: RarefactionWave,
    /// `None` when the shock is degenerate.
    pub profile: Option<ShockProfile>,
}

/// `(v̄, ū, w̄)` and the derivatives the scheme and diagnostics use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositeSample {
    pub v: f64,
    pub u: f64,
    pub w: f64,
    pub vx: f64,
    pub ux: f64,
    pub wx: f64,
    pub vxx: f64,
}

/// Jets in `x` of the deviations of each wave from the intermediate state.
#[derive(Debug, Clone, Copy)]
pub struct WaveJets {
    pub dv_r: Jet5,
    pub du_r: Jet5,
    pub dv_s: Jet5,
    pub du_s: Jet5,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionNorms {
    pub t: f64,
    /// `||v^S_x (v^R - v_m)||_{L^1}`
    pub vsx_vr_l1: f64,
    /// `||v^S_x (v^R - v_m)||_{L^2}`
    pub vsx_vr_l2: f64,
    /// `||v^R_x v^S_x||_{L^1}`
    pub vrx_vsx_l1: f64,
    /// `||v^R_x v^S_x||_{L^2}`
    pub vrx_vsx_l2: f64,
    /// `||v^R_x (v^S - v_m)||_{L^2}`
    pub vrx_vs_l2: f64,
    pub q1i_l2: f64,
    /// `||Q_2||_{L^2}` for unit shift speed.
    pub q2_l2: f64,
}

impl InteractionNorms {
    pub const HEADER: &'static str = "t,vsx_vr_L1,vsx_vr_L2,vrx_vsx_L1,vrx_vsx_L2,vrx_vs_L2,Q1I_L2,Q2_L2";

    pub fn values(&self) -> [f64; 8] {
        [
            self.t,
            self.vsx_vr_l1,
            self.vsx_vr_l2,
            self.vrx_vsx_l1,
            self.vrx_vsx_l2,
            self.vrx_vs_l2,
            self.q1i_l2,
            self.q2_l2,
        ]
    }
}

fn pow_diff(base: Jet5, incr: Jet5, p: f64) -> Jet5 {
    Jet5::pow_diff(base, incr, p)
}

impl CompositeWave {
    pub fn new(model: &GasModel, pattern: &WavePattern, opts: &ProfileOptions) -> Result<Self> {
        let profile = if pattern.shock_degenerate() {
            None
        } else {
            Some(solve_profile(pattern, model, opts)?)
        };
        Ok(Self {
            model: *model,
            pattern: *pattern,
            rarefaction: RarefactionWave::new(model, pattern),
            profile,
        })
    }

    pub fn model(&self) -> &GasModel {
        &self.model
    }

    pub fn sigma(&self) -> f64 {
        self.pattern.sigma
    }

    /// Shock coordinate `x - sigma t - X`.
    pub fn xi(&self, t: f64, x: f64, shift: f64) -> f64 {
        x - self.pattern.sigma * t - shift
    }

    /// `(v^S - v_m, v^S_x)` at the shifted position.
    pub fn shock_deviation(&self, t: f64, x: f64, shift: f64) -> (f64, f64) {
        match &self.profile {
            Some(p) => p.deviation(self.xi(t, x, shift)),
            None => (0.0, 0.0),
        }
    }

    pub fn jets(&self, t: f64, x: f64, shift: f64) -> WaveJets {
        let r = self.rarefaction.jets(t, x, Side::Mid);
        let dv_s = match &self.profile {
            Some(p) => p.deviation_jet(self.xi(t, x, shift)),
            None => Jet5::zero(),
        };
        WaveJets {
            dv_r: r.dv,
            du_r: r.du,
            dv_s,
            du_s: dv_s.scale(-self.pattern.sigma),
        }
    }

    /// `(v̄, ū, w̄)` with first derivatives and `v̄_xx`.
    pub fn eval_bar(&self, t: f64, x: f64, shift: f64) -> Result<CompositeSample> {
        if !(t >= 0.0) || !x.is_finite() || !shift.is_finite() {
            return Err(NskError::Domain(format!("eval_bar needs t >= 0 and finite x, X (t = {t}, x = {x})")));
        }
        let j = self.jets(t, x, shift);
        let v = (j.dv_r + j.dv_s).offset(self.pattern.mid.v);
        if !(v.value() > 0.0) {
            return Err(NskError::CompositeVacuum { t, x, vbar: v.value() });
        }
        let u = (j.du_r + j.du_s).offset(self.pattern.mid.u);
        let w = -(self.model.cap_coef_jet(v) * v.diff());
        Ok(CompositeSample {
            v: v.value(),
            u: u.value(),
            w: w.value(),
            vx: v.derivative(1),
            ux: u.derivative(1),
            wx: w.derivative(1),
            vxx: v.derivative(2),
        })
    }

    /// Interaction and rarefaction errors `(Q_1^I, Q_1^R)`.
    pub fn q1(&self, t: f64, x: f64, shift: f64) -> Result<(f64, f64)> {
        let j = self.jets(t, x, shift);
        let vm = self.pattern.mid.v;
        let m = &self.model;
        let v_r = j.dv_r.offset(vm);
        let v_s = j.dv_s.offset(vm);
        let v_bar = v_r + j.dv_s;
        if !(v_bar.value() > 0.0) {
            return Err(NskError::CompositeVacuum { t, x, vbar: v_bar.value() });
        }
        let g = m.gamma;
        let (vr1, vs1) = (j.dv_r.diff(), j.dv_s.diff());
        let (vr2, vs2) = (vr1.diff(), vs1.diff());
        let (ur1, us1) = (j.du_r.diff(), j.du_s.diff());

        // (p(v̄) - p(v^R) - p(v^S))_x
        let dp = |base: Jet5, incr: Jet5| pow_diff(base, incr, -g - 1.0).scale(-g);
        let pressure = vr1 * dp(v_r, j.dv_s) + vs1 * dp(v_s, j.dv_r);

        // mu(v)/v u_x differences
        let a_visc = -m.alpha - 1.0;
        let visc = ur1 * pow_diff(v_r, j.dv_s, a_visc) + us1 * pow_diff(v_s, j.dv_r, a_visc);

        // capillary stress -A(v) v_xx + B(v) v_x^2 differences
        let ea = -m.beta - 5.0;
        let eb = -m.beta - 6.0;
        let cb = (m.beta + 5.0) / 2.0;
        let cap = -(vr2 * pow_diff(v_r, j.dv_s, ea)) - vs2 * pow_diff(v_s, j.dv_r, ea)
            + (vr1 * vr1 * pow_diff(v_r, j.dv_s, eb) + vs1 * vs1 * pow_diff(v_s, j.dv_r, eb)).scale(cb)
            + (vr1 * vs1 * v_bar.powf(eb)).scale(2.0 * cb);

        let q1i = pressure.value() - visc.derivative(1) - cap.derivative(1);

        let flux_r = m.visc_coef_jet(v_r) * ur1 + m.capillary_stress_jet(v_r);
        let q1r = -flux_r.derivative(1);
        Ok((q1i, q1r))
    }

    /// `Q_2 = -Xdot ((k(v^S) - k(v̄)) v^S_x)_x` with `k(v) = sqrt(kappa)/v^{5/2}`.
    pub fn q2(&self, t: f64, x: f64, shift: f64, shift_rate: f64) -> Result<f64> {
        if shift_rate == 0.0 || self.profile.is_none() {
            return Ok(0.0);
        }
        let j = self.jets(t, x, shift);
        let v_s = j.dv_s.offset(self.pattern.mid.v);
        let vb = v_s.value() + j.dv_r.value();
        if !(vb > 0.0) {
            return Err(NskError::CompositeVacuum { t, x, vbar: vb });
        }
        let diff = -pow_diff(v_s, j.dv_r, self.model.cap_exponent());
        let bracket = diff * j.dv_s.diff();
        Ok(-shift_rate * bracket.derivative(1))
    }

    /// Interval outside of which both waves are within roundoff of their
    /// end states.
    pub fn window(&self, t: f64, shift: f64) -> (f64, f64) {
        let (mut a, mut b) = self.rarefaction.support(t, 40.0);
        if let Some(p) = &self.profile {
            let (l, r) = p.extent();
            let c = self.pattern.sigma * t + shift;
            a = a.min(c + l);
            b = b.max(c + r);
        }
        (a, b)
    }

    /// Wave-interaction norms at time `t` for shift `X`.
    pub fn interaction_norms(&self, t: f64, shift: f64) -> Result<InteractionNorms> {
        let zero = InteractionNorms {
            t,
            vsx_vr_l1: 0.0,
            vsx_vr_l2: 0.0,
            vrx_vsx_l1: 0.0,
            vrx_vsx_l2: 0.0,
            vrx_vs_l2: 0.0,
            q1i_l2: 0.0,
            q2_l2: 0.0,
        };
        if self.rarefaction.is_degenerate() || self.profile.is_none() {
            return Ok(zero);
        }
        let (a, b) = self.window(t, shift);
        // the integrands vary on unit scales or slower
        let panel = 0.25;
        let vs = |x: f64| self.shock_deviation(t, x, shift);
        let vr = |x: f64| self.rarefaction.point(t, x);
        let int = |f: &dyn Fn(f64) -> f64| gauss_legendre(&f, a, b, panel);
        let vsx_vr = |x: f64| vs(x).1 * vr(x).dv_m;
        let vrx_vsx = |x: f64| vr(x).vx * vs(x).1;
        let vrx_vs = |x: f64| vr(x).vx * vs(x).0;
        let err = std::cell::RefCell::new(None);
        let q1i = |x: f64| match self.q1(t, x, shift) {
            Ok(q) => q.0,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                0.0
            }
        };
        let q1i_sq = int(&|x| q1i(x).powi(2));
        let q2_sq = int(&|x| self.q2(t, x, shift, 1.0).unwrap_or(f64::NAN).powi(2));
        if let Some(e) = err.into_inner() {
            return Err(e);
        }
        Ok(InteractionNorms {
            t,
            vsx_vr_l1: int(&|x| vsx_vr(x).abs()),
            vsx_vr_l2: int(&|x| vsx_vr(x).powi(2)).sqrt(),
            vrx_vsx_l1: int(&|x| vrx_vsx(x).abs()),
            vrx_vsx_l2: int(&|x| vrx_vsx(x).powi(2)).sqrt(),
            vrx_vs_l2: int(&|x| vrx_vs(x).powi(2)).sqrt(),
            q1i_l2: q1i_sq.sqrt(),
            q2_l2: q2_sq.sqrt(),
        })
    }
}
