//! Method-of-lines solver for the augmented `(v, u, w)` system on a truncated
//! line, coupled to the shift ODE.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::composite::CompositeWave;
use crate::diagnostics::{self, DiagnosticsRecord};
use crate::error::{NskError, Result};
use crate::quadrature::trapezoid;
use crate::rarefaction::RarefactionPoint;
use crate::thermo::GasModel;

/// Below this many nodes the right-hand side is evaluated serially.
const PARALLEL_MIN_NODES: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x_lo: f64,
    pub x_hi: f64,
    pub n: usize,
    pub dx: f64,
}

impl Grid {
    pub fn new(x_lo: f64, x_hi: f64, n: usize) -> Result<Self> {
        if !(x_lo.is_finite() && x_hi.is_finite() && x_lo < x_hi) {
            return Err(NskError::Config(format!("grid needs x_lo < x_hi, got [{x_lo}, {x_hi}]")));
        }
        if n < 16 {
            return Err(NskError::Config(format!("grid needs at least 16 nodes, got {n}")));
        }
        Ok(Self {
            x_lo,
            x_hi,
            n,
            dx: (x_hi - x_lo) / (n - 1) as f64,
        })
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.x_hi
        } else {
            self.x_lo + i as f64 * self.dx
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbationKind {
    None,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbedField {
    V,
    U,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Perturbation {
    pub kind: PerturbationKind,
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
    pub field: PerturbedField,
}

impl Default for Perturbation {
    fn default() -> Self {
        Self {
            kind: PerturbationKind::None,
            amplitude: 0.0,
            center: 0.0,
            width: 1.0,
            field: PerturbedField::Both,
        }
    }
}

impl Perturbation {
    pub fn gaussian(amplitude: f64, center: f64, width: f64, field: PerturbedField) -> Self {
        Self {
            kind: PerturbationKind::Gaussian,
            amplitude,
            center,
            width,
            field,
        }
    }

    /// `A exp(-(x - c)^2 / (2 width^2))`, so that its L2 norm is
    /// `A pi^{1/4} width^{1/2}`.
    pub fn profile(&self, x: f64) -> f64 {
        match self.kind {
            PerturbationKind::None => 0.0,
            PerturbationKind::Gaussian => {
                let z = (x - self.center) / self.width;
                self.amplitude * (-0.5 * z * z).exp()
            }
        }
    }

    fn applies_to_v(&self) -> bool {
        matches!(self.field, PerturbedField::V | PerturbedField::Both)
    }

    fn applies_to_u(&self) -> bool {
        matches!(self.field, PerturbedField::U | PerturbedField::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SchemeConfig {
    /// Parabolic CFL factor: `dt = cfl dx^2 / nu_max`.
    pub cfl: f64,
    pub t_end: f64,
    /// Steps between diagnostics records.
    pub output_stride: usize,
    /// Couple the shock position to the shift ODE.
    pub shift: bool,
    /// Runs abort when `v` drops below this.
    pub vacuum_floor: f64,
    /// Largest admissible perturbation amplitude.
    pub max_amplitude: f64,
    /// Ceiling on the `w` constraint defect reported by runs.
    pub constraint_ceiling: f64,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self {
            cfl: 0.4,
            t_end: 1.0,
            output_stride: 100,
            shift: true,
            vacuum_floor: 1e-6,
            max_amplitude: 0.1,
            constraint_ceiling: 1e-4,
        }
    }
}

impl SchemeConfig {
    pub fn validate(&self) -> Vec<String> {
        let mut errs = Vec::new();
        if !(self.cfl > 0.0 && self.cfl <= 0.5) {
            errs.push(format!("scheme.cfl must lie in (0, 0.5], got {}", self.cfl));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            errs.push(format!("scheme.t_end must be finite and non-negative, got {}", self.t_end));
        }
        if self.output_stride == 0 {
            errs.push("scheme.output_stride must be positive".into());
        }
        if !(self.vacuum_floor > 0.0) {
            errs.push(format!("scheme.vacuum_floor must be positive, got {}", self.vacuum_floor));
        }
        errs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub v: Vec<f64>,
    pub u: Vec<f64>,
    pub w: Vec<f64>,
    pub t: f64,
    /// Shock shift `X(t)`.
    pub shift: f64,
    /// Most recent `Xdot`.
    pub shift_rate: f64,
    /// Time-integrated boundary mass flux.
    pub mass_flux: f64,
    /// Trapezoid mass of `v` at the start of the run.
    pub mass0: f64,
    pub steps: usize,
}

/// Central first difference, one-sided at the ends.
pub fn first_difference(f: &[f64], dx: f64) -> Vec<f64> {
    let n = f.len();
    let mut d = vec![0.0; n];
    if n < 2 {
        return d;
    }
    d[0] = (f[1] - f[0]) / dx;
    d[n - 1] = (f[n - 1] - f[n - 2]) / dx;
    for i in 1..n - 1 {
        d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
    }
    d
}

/// `||w + k(v) D_0 v||_inf` over the interior nodes, where the central
/// difference is defined.
pub fn constraint_defect(model: &GasModel, grid: &Grid, state: &SimState) -> f64 {
    let v = &state.v;
    let mut worst = 0.0f64;
    for i in 1..v.len().saturating_sub(1) {
        let d = (v[i + 1] - v[i - 1]) / (2.0 * grid.dx);
        worst = worst.max((state.w[i] + model.cap_coef(v[i]) * d).abs());
    }
    worst
}

/// `|Delta M - F| / max(|Delta M|, |F|)` for the trapezoid mass of `v` and
/// the accumulated boundary flux `F`.
pub fn mass_defect(grid: &Grid, state: &SimState) -> f64 {
    let dm = trapezoid(&state.v, grid.dx) - state.mass0;
    let scale = dm.abs().max(state.mass_flux.abs());
    if scale == 0.0 {
        0.0
    } else {
        (dm - state.mass_flux).abs() / scale
    }
}

#[derive(Debug, Clone, Default)]
struct Fields {
    v: Vec<f64>,
    u: Vec<f64>,
    w: Vec<f64>,
}

impl Fields {
    fn zeros(n: usize) -> Self {
        Self {
            v: vec![0.0; n],
            u: vec![0.0; n],
            w: vec![0.0; n],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub u: Vec<f64>,
    pub w: Vec<f64>,
    pub vbar: Vec<f64>,
    pub ubar: Vec<f64>,
    pub wbar: Vec<f64>,
    pub a: Vec<f64>,
}

impl Snapshot {
    pub const HEADER: &'static str = "x,v,u,w,vbar,ubar,wbar,a";
}

/// Late-to-early ratios over a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecaySummary {
    /// `(W1inf(phi) + Linf(psi))` at the end over its initial value.
    pub sup_ratio: f64,
    /// Mean `|Xdot|` over the last quarter over the mean over the first.
    pub shift_rate_ratio: f64,
    /// `|X(T)|/T` over `|X(T/4)|/(T/4)`.
    pub drift_ratio: f64,
    /// Weighted relative entropy at the end over its initial value.
    pub entropy_ratio: f64,
    pub weight_min: f64,
    pub weight_max: f64,
    pub max_constraint_defect: f64,
    pub max_mass_defect: f64,
    pub min_volume: f64,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub records: Vec<DiagnosticsRecord>,
    pub snapshots: Vec<Snapshot>,
    pub summary: DecaySummary,
}

pub struct Solver<'a> {
    pub grid: Grid,
    pub composite: &'a CompositeWave,
    pub scheme: SchemeConfig,
    model: GasModel,
    rare_cache: Vec<(f64, Vec<RarefactionPoint>)>,
    nodes: Vec<f64>,
    coef: Fields,
    k: [Fields; 4],
    stage: Fields,
    warned: bool,
}

impl<'a> Solver<'a> {
    pub fn new(grid: Grid, composite: &'a CompositeWave, scheme: SchemeConfig) -> Result<Self> {
        let errs = scheme.validate();
        if !errs.is_empty() {
            return Err(NskError::Config(errs.join("; ")));
        }
        let n = grid.n;
        Ok(Self {
            grid,
            composite,
            scheme,
            model: *composite.model(),
            rare_cache: Vec::new(),
            nodes: grid.nodes(),
            coef: Fields::zeros(n),
            k: [Fields::zeros(n), Fields::zeros(n), Fields::zeros(n), Fields::zeros(n)],
            stage: Fields::zeros(n),
            warned: false,
        })
    }

    pub fn model(&self) -> &GasModel {
        &self.model
    }

    pub fn initial_data(&self, pert: &Perturbation) -> Result<SimState> {
        if pert.kind == PerturbationKind::Gaussian {
            if !(pert.amplitude.abs() <= self.scheme.max_amplitude) {
                return Err(NskError::Config(format!(
                    "perturbation amplitude {} exceeds cap {}",
                    pert.amplitude, self.scheme.max_amplitude
                )));
            }
            if !(pert.width > 0.0) {
                return Err(NskError::Config(format!("perturbation width must be positive, got {}", pert.width)));
            }
        }
        let n = self.grid.n;
        let mut v = Vec::with_capacity(n);
        let mut u = Vec::with_capacity(n);
        for i in 0..n {
            let x = self.grid.x(i);
            let bar = self.composite.eval_bar(0.0, x, 0.0)?;
            let bump = if i == 0 || i + 1 == n { 0.0 } else { pert.profile(x) };
            v.push(bar.v + if pert.applies_to_v() { bump } else { 0.0 });
            u.push(bar.u + if pert.applies_to_u() { bump } else { 0.0 });
        }
        if let Some((i, &vi)) = v.iter().enumerate().find(|(_, &x)| !(x > 0.0)) {
            return Err(NskError::Config(format!("initial volume non-positive at node {i}: {vi}")));
        }
        let dv = first_difference(&v, self.grid.dx);
        let w = v.iter().zip(&dv).map(|(&vi, &d)| -self.model.cap_coef(vi) * d).collect();
        let mass0 = trapezoid(&v, self.grid.dx);
        Ok(SimState {
            v,
            u,
            w,
            t: 0.0,
            shift: 0.0,
            shift_rate: 0.0,
            mass_flux: 0.0,
            mass0,
            steps: 0,
        })
    }

    /// Largest coefficient `max(mu/v, k(v))` over the state.
    pub fn nu_max(&self, v: &[f64]) -> f64 {
        v.iter()
            .fold(0.0f64, |m, &x| m.max(self.model.visc_coef(x)).max(self.model.cap_coef(x)))
    }

    pub fn stable_dt(&self, v: &[f64]) -> f64 {
        self.scheme.cfl * self.grid.dx * self.grid.dx / self.nu_max(v)
    }

    fn check_state(&self, v: &[f64], u: &[f64], w: &[f64], t: f64) -> Result<()> {
        for (i, &x) in v.iter().enumerate() {
            if !x.is_finite() {
                return Err(NskError::NonFinite { field: "v", node: i, t });
            }
            if x < self.scheme.vacuum_floor {
                return Err(NskError::Vacuum { node: i, v: x, t });
            }
        }
        if let Some(i) = u.iter().position(|x| !x.is_finite()) {
            return Err(NskError::NonFinite { field: "u", node: i, t });
        }
        if let Some(i) = w.iter().position(|x| !x.is_finite()) {
            return Err(NskError::NonFinite { field: "w", node: i, t });
        }
        Ok(())
    }

    /// Tendencies `(v_t, u_t, w_t)`; boundary nodes get zero.
    pub fn spatial_rhs(&mut self, v: &[f64], u: &[f64], w: &[f64], out_v: &mut [f64], out_u: &mut [f64], out_w: &mut [f64]) {
        let m = self.model;
        let n = v.len();
        let (cp, cm, ck) = (&mut self.coef.v, &mut self.coef.u, &mut self.coef.w);
        let fill = |(i, ((p, mu), k)): (usize, ((&mut f64, &mut f64), &mut f64))| {
            *p = m.p(v[i]);
            *mu = m.visc_coef(v[i]);
            *k = m.cap_coef(v[i]);
        };
        if n >= PARALLEL_MIN_NODES && rayon::current_num_threads() > 1 {
            cp.par_iter_mut().zip(cm.par_iter_mut()).zip(ck.par_iter_mut()).enumerate().for_each(fill);
        } else {
            cp.iter_mut().zip(cm.iter_mut()).zip(ck.iter_mut()).enumerate().for_each(fill);
        }
        let (cp, cm, ck) = (&self.coef.v, &self.coef.u, &self.coef.w);
        let inv2dx = 0.5 / self.grid.dx;
        let invdx2 = 1.0 / (self.grid.dx * self.grid.dx);
        let body = |i: usize| -> (f64, f64, f64) {
            if i == 0 || i + 1 == n {
                return (0.0, 0.0, 0.0);
            }
            let mu_r = 0.5 * (cm[i] + cm[i + 1]);
            let mu_l = 0.5 * (cm[i - 1] + cm[i]);
            let k_r = 0.5 * (ck[i] + ck[i + 1]);
            let k_l = 0.5 * (ck[i - 1] + ck[i]);
            let du_r = u[i + 1] - u[i];
            let du_l = u[i] - u[i - 1];
            let vt = (u[i + 1] - u[i - 1]) * inv2dx;
            let ut = -(cp[i + 1] - cp[i - 1]) * inv2dx
                + (mu_r * du_r - mu_l * du_l) * invdx2
                + (k_r * (w[i + 1] - w[i]) - k_l * (w[i] - w[i - 1])) * invdx2;
            let wt = -(k_r * du_r - k_l * du_l) * invdx2;
            (vt, ut, wt)
        };
        let write = |(i, ((a, b), c)): (usize, ((&mut f64, &mut f64), &mut f64))| {
            let (x, y, z) = body(i);
            *a = x;
            *b = y;
            *c = z;
        };
        if n >= PARALLEL_MIN_NODES && rayon::current_num_threads() > 1 {
            out_v.par_iter_mut().zip(out_u.par_iter_mut()).zip(out_w.par_iter_mut()).enumerate().for_each(write);
        } else {
            out_v.iter_mut().zip(out_u.iter_mut()).zip(out_w.iter_mut()).enumerate().for_each(write);
        }
    }

    fn rarefaction_at(&mut self, t: f64) -> usize {
        if let Some(i) = self.rare_cache.iter().position(|(s, _)| *s == t) {
            return i;
        }
        let r = &self.composite.rarefaction;
        let pts: Vec<RarefactionPoint> = self.nodes.iter().map(|&x| r.point(t, x)).collect();
        if self.rare_cache.len() >= 3 {
            self.rare_cache.remove(0);
        }
        self.rare_cache.push((t, pts));
        self.rare_cache.len() - 1
    }

    /// Rarefaction values on the grid at time `t`.
    pub fn rarefaction_points(&mut self, t: f64) -> &[RarefactionPoint] {
        let i = self.rarefaction_at(t);
        &self.rare_cache[i].1
    }

    /// Weight `a = 1 + (u_m - u^S)/sqrt(delta_S)` and `a_x` at one point.
    pub fn weight(&self, x: f64, t: f64, shift: f64) -> (f64, f64) {
        weight(self.composite, x, t, shift)
    }

    /// Right-hand side of the shift ODE for velocity `u` at `(t, X)`.
    pub fn shift_rhs(&mut self, t: f64, shift: f64, u: &[f64]) -> f64 {
        let c = self.composite;
        if !self.scheme.shift || c.profile.is_none() {
            if !self.warned && self.scheme.shift {
                log::warn!("shock strength below degeneracy threshold, shift disabled");
                self.warned = true;
            }
            return 0.0;
        }
        let pat = &c.pattern;
        let (sigma, ds) = (pat.sigma, pat.delta_s);
        let sq = ds.sqrt();
        let model = self.model;
        let idx = self.rarefaction_at(t);
        let rare = &self.rare_cache[idx].1;
        let n = self.grid.n;
        let integrand = |i: usize| -> f64 {
            let (dvs, vsx) = c.shock_deviation(t, self.nodes[i], shift);
            if vsx == 0.0 {
                return 0.0;
            }
            let ubar = pat.mid.u + rare[i].du_m - sigma * dvs;
            let a = 1.0 + sigma * dvs / sq;
            let vs = pat.mid.v + dvs;
            a * vsx * (u[i] - ubar) * (-sigma + model.dp(vs) / sigma)
        };
        let mut s = 0.5 * (integrand(0) + integrand(n - 1));
        for i in 1..n - 1 {
            s += integrand(i);
        }
        -(pat.shift_gain / ds) * s * self.grid.dx
    }

    fn boundary_flux(u: &[f64]) -> f64 {
        let n = u.len();
        0.5 * (u[n - 1] + u[n - 2] - u[0] - u[1])
    }

    /// One classical RK4 step of `(v, u, w, X)`.
    pub fn step(&mut self, state: &mut SimState, dt: f64) -> Result<()> {
        self.step_forced(state, dt, None)
    }

    /// RK4 step with an optional source `(t, x) -> (S_v, S_u, S_w)` added at
    /// the interior nodes.
    pub fn step_forced(&mut self, state: &mut SimState, dt: f64, source: Option<&dyn Fn(f64, f64) -> [f64; 3]>) -> Result<()> {
        let limit = self.stable_dt(&state.v);
        if !(dt > 0.0) || dt > limit * (1.0 + 1e-12) {
            return Err(NskError::Cfl { dt, limit });
        }
        let n = self.grid.n;
        let t = state.t;
        let mut k = std::mem::take(&mut self.k);
        let mut st = std::mem::take(&mut self.stage);
        let mut xdot = [0.0; 4];
        let mut flux = [0.0; 4];
        let offsets = [0.0, 0.5 * dt, 0.5 * dt, dt];
        for s in 0..4 {
            let (sv, su, sw, sx) = if s == 0 {
                (&state.v[..], &state.u[..], &state.w[..], state.shift)
            } else {
                let h = offsets[s];
                let prev = &k[s - 1];
                for i in 0..n {
                    st.v[i] = state.v[i] + h * prev.v[i];
                    st.u[i] = state.u[i] + h * prev.u[i];
                    st.w[i] = state.w[i] + h * prev.w[i];
                }
                (&st.v[..], &st.u[..], &st.w[..], state.shift + h * xdot[s - 1])
            };
            if s > 0 {
                self.check_state(sv, su, sw, t + offsets[s])?;
            }
            let ts = if s == 0 { t } else { t + offsets[s] };
            xdot[s] = self.shift_rhs(ts, sx, su);
            flux[s] = Self::boundary_flux(su);
            let (kv, ku, kw) = {
                let ks = &mut k[s];
                (&mut ks.v, &mut ks.u, &mut ks.w)
            };
            self.spatial_rhs(sv, su, sw, kv, ku, kw);
            if let Some(f) = source {
                for i in 1..n - 1 {
                    let [a, b, c] = f(ts, self.nodes[i]);
                    kv[i] += a;
                    ku[i] += b;
                    kw[i] += c;
                }
            }
        }
        let c = dt / 6.0;
        for i in 0..n {
            state.v[i] += c * (k[0].v[i] + 2.0 * k[1].v[i] + 2.0 * k[2].v[i] + k[3].v[i]);
            state.u[i] += c * (k[0].u[i] + 2.0 * k[1].u[i] + 2.0 * k[2].u[i] + k[3].u[i]);
            state.w[i] += c * (k[0].w[i] + 2.0 * k[1].w[i] + 2.0 * k[2].w[i] + k[3].w[i]);
        }
        state.shift += c * (xdot[0] + 2.0 * xdot[1] + 2.0 * xdot[2] + xdot[3]);
        state.mass_flux += c * (flux[0] + 2.0 * flux[1] + 2.0 * flux[2] + flux[3]);
        state.t = t + dt;
        state.steps += 1;
        self.k = k;
        self.stage = st;
        self.check_state(&state.v, &state.u, &state.w, state.t)
    }

    /// Refreshes `state.shift_rate` from the current fields.
    pub fn update_shift_rate(&mut self, state: &mut SimState) {
        state.shift_rate = self.shift_rhs(state.t, state.shift, &state.u);
    }

    pub fn snapshot(&mut self, state: &SimState) -> Result<Snapshot> {
        let bar = diagnostics::BarFields::new(self.composite, &self.grid, state.t, state.shift)?;
        Ok(Snapshot {
            t: state.t,
            x: self.nodes.clone(),
            v: state.v.clone(),
            u: state.u.clone(),
            w: state.w.clone(),
            vbar: bar.v,
            ubar: bar.u,
            wbar: bar.w,
            a: bar.a,
        })
    }

    pub fn record(&mut self, state: &mut SimState) -> Result<DiagnosticsRecord> {
        self.update_shift_rate(state);
        diagnostics::record(self.composite, &self.grid, state)
    }

    /// Steps to `t_end`, recording diagnostics every `output_stride` steps
    /// and snapshots at the start and end. Records gathered before a failure
    /// are handed to `on_record` as they are produced.
    pub fn run<F>(&mut self, pert: &Perturbation, mut on_record: F) -> Result<RunOutput>
    where
        F: FnMut(&DiagnosticsRecord),
    {
        let mut state = self.initial_data(pert)?;
        let mut records = Vec::new();
        let first = self.record(&mut state)?;
        on_record(&first);
        records.push(first);
        let mut snapshots = vec![self.snapshot(&state)?];
        let mut min_volume = state.v.iter().cloned().fold(f64::INFINITY, f64::min);
        let t_end = self.scheme.t_end;
        while state.t < t_end {
            let mut dt = self.stable_dt(&state.v);
            let last = state.t + dt >= t_end;
            if last {
                dt = t_end - state.t;
            }
            self.step(&mut state, dt)?;
            if last {
                state.t = t_end;
            }
            min_volume = state.v.iter().cloned().fold(min_volume, f64::min);
            if state.steps % self.scheme.output_stride == 0 || last {
                let r = self.record(&mut state)?;
                on_record(&r);
                records.push(r);
            }
        }
        if records.len() == 1 {
            let r = self.record(&mut state)?;
            on_record(&r);
            records.push(r);
        }
        snapshots.push(self.snapshot(&state)?);
        let summary = summarize(&records, min_volume);
        if summary.max_constraint_defect > self.scheme.constraint_ceiling {
            log::warn!(
                "constraint defect {:e} above ceiling {:e}",
                summary.max_constraint_defect,
                self.scheme.constraint_ceiling
            );
        }
        Ok(RunOutput {
            records,
            snapshots,
            summary,
        })
    }
}

/// Weight `a` and `a_x` at `(x, t)` for shift `X`.
pub fn weight(c: &CompositeWave, x: f64, t: f64, shift: f64) -> (f64, f64) {
    let pat = &c.pattern;
    if c.profile.is_none() {
        return (1.0, 0.0);
    }
    let (dvs, vsx) = c.shock_deviation(t, x, shift);
    let sq = pat.delta_s.sqrt();
    (1.0 + pat.sigma * dvs / sq, pat.sigma * vsx / sq)
}

fn summarize(records: &[DiagnosticsRecord], min_volume: f64) -> DecaySummary {
    let first = &records[0];
    let last = &records[records.len() - 1];
    let t_end = last.t;
    let sup = |r: &DiagnosticsRecord| r.norms.w1inf_phi + r.norms.linf_psi;
    let mean_abs = |lo: f64, hi: f64| {
        let sel: Vec<f64> = records.iter().filter(|r| r.t >= lo && r.t <= hi).map(|r| r.xdot.abs()).collect();
        if sel.is_empty() {
            0.0
        } else {
            sel.iter().sum::<f64>() / sel.len() as f64
        }
    };
    let quarter = records
        .iter()
        .min_by(|a, b| (a.t - 0.25 * t_end).abs().total_cmp(&(b.t - 0.25 * t_end).abs()))
        .unwrap();
    let ratio = |a: f64, b: f64| if b == 0.0 { if a == 0.0 { 0.0 } else { f64::INFINITY } } else { a / b };
    DecaySummary {
        sup_ratio: ratio(sup(last), sup(first)),
        shift_rate_ratio: ratio(mean_abs(0.75 * t_end, t_end), mean_abs(0.0, 0.25 * t_end)),
        drift_ratio: ratio(last.x.abs() / t_end.max(f64::MIN_POSITIVE), quarter.x.abs() / quarter.t.max(f64::MIN_POSITIVE)),
        entropy_ratio: ratio(last.eta_weighted, first.eta_weighted),
        weight_min: records.iter().map(|r| r.a_min).fold(f64::INFINITY, f64::min),
        weight_max: records.iter().map(|r| r.a_max).fold(f64::NEG_INFINITY, f64::max),
        max_constraint_defect: records.iter().map(|r| r.constraint_defect).fold(0.0, f64::max),
        max_mass_defect: records.iter().map(|r| r.mass_defect).fold(0.0, f64::max),
        min_volume,
    }
}
