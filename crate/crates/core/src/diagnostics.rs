//! Functionals of the perturbation around the composite wave: relative
//! entropy, the good-term ledger, discrete norms, and the Hardy-Legendre
//! inequality check.

use serde::Serialize;

use crate::composite::CompositeWave;
use crate::error::{NskError, Result};
use crate::quadrature::{trapezoid, trapezoid_by};
use crate::solver::{constraint_defect, first_difference, mass_defect, weight, Grid, SimState};
use crate::thermo::{ConvexFn, GasModel};

/// Composite wave sampled on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BarFields {
    pub v: Vec<f64>,
    pub u: Vec<f64>,
    pub w: Vec<f64>,
    pub a: Vec<f64>,
    pub a_x: Vec<f64>,
    /// `u^S_x` of the shifted shock
    pub us_x: Vec<f64>,
    /// `u^R_x`
    pub ur_x: Vec<f64>,
}

impl BarFields {
    pub fn new(c: &CompositeWave, grid: &Grid, t: f64, shift: f64) -> Result<Self> {
        let n = grid.n;
        let mut f = Self {
            v: Vec::with_capacity(n),
            u: Vec::with_capacity(n),
            w: Vec::with_capacity(n),
            a: Vec::with_capacity(n),
            a_x: Vec::with_capacity(n),
            us_x: Vec::with_capacity(n),
            ur_x: Vec::with_capacity(n),
        };
        let sigma = c.sigma();
        for i in 0..n {
            let x = grid.x(i);
            let s = c.eval_bar(t, x, shift)?;
            let (a, a_x) = weight(c, x, t, shift);
            f.v.push(s.v);
            f.u.push(s.u);
            f.w.push(s.w);
            f.a.push(a);
            f.a_x.push(a_x);
            f.us_x.push(-sigma * c.shock_deviation(t, x, shift).1);
            f.ur_x.push(c.rarefaction.point(t, x).ux);
        }
        Ok(f)
    }
}

/// `eta(U|Ubar) = |u - ubar|^2/2 + Q(v|vbar) + |w - wbar|^2/2`.
pub fn relative_entropy_density(model: &GasModel, state: (f64, f64, f64), bar: (f64, f64, f64)) -> Result<f64> {
    let q = model.relative_quantity(ConvexFn::InternalEnergy, state.0, bar.0)?;
    let du = state.1 - bar.1;
    let dw = state.2 - bar.2;
    Ok(0.5 * du * du + q + 0.5 * dw * dw)
}

/// Trapezoid integral of `a eta(U|Ubar)`.
pub fn weighted_relative_entropy(model: &GasModel, grid: &Grid, state: &SimState, bar: &BarFields) -> Result<f64> {
    let mut dens = Vec::with_capacity(grid.n);
    for i in 0..grid.n {
        let e = relative_entropy_density(
            model,
            (state.v[i], state.u[i], state.w[i]),
            (bar.v[i], bar.u[i], bar.w[i]),
        )?;
        dens.push(bar.a[i] * e);
    }
    Ok(trapezoid(&dens, grid.dx))
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct GoodTerms {
    #[serde(rename = "G1")]
    pub g1: f64,
    #[serde(rename = "G3")]
    pub g3: f64,
    #[serde(rename = "GSu")]
    pub gs_u: f64,
    #[serde(rename = "GSv")]
    pub gs_v: f64,
    #[serde(rename = "GR")]
    pub gr: f64,
    #[serde(rename = "Gw")]
    pub gw: f64,
    #[serde(rename = "Du1")]
    pub du1: f64,
    #[serde(rename = "Du2")]
    pub du2: f64,
    #[serde(rename = "Dw1")]
    pub dw1: f64,
    #[serde(rename = "Dw2")]
    pub dw2: f64,
}

/// Second difference, copied from the neighbour at the ends.
pub fn second_difference(f: &[f64], dx: f64) -> Vec<f64> {
    let n = f.len();
    let mut d = vec![0.0; n];
    if n < 3 {
        return d;
    }
    for i in 1..n - 1 {
        d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (dx * dx);
    }
    d[0] = d[1];
    d[n - 1] = d[n - 2];
    d
}

fn diff(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Good terms of the a priori estimate with constant `c1`.
pub fn good_terms(model: &GasModel, c1: f64, grid: &Grid, state: &SimState, bar: &BarFields) -> GoodTerms {
    let dx = grid.dx;
    let n = grid.n;
    let phi = diff(&state.v, &bar.v);
    let psi = diff(&state.u, &bar.u);
    let om = diff(&state.w, &bar.w);
    let psi_x = first_difference(&psi, dx);
    let psi_xx = second_difference(&psi, dx);
    let om_x = first_difference(&om, dx);
    let om_xx = second_difference(&om, dx);
    let sq = |x: f64| x * x;
    GoodTerms {
        g1: trapezoid_by(n, dx, |i| {
            bar.a_x[i].abs() * sq(model.p(state.v[i]) - model.p(bar.v[i]) - psi[i] / (2.0 * c1))
        }),
        g3: trapezoid_by(n, dx, |i| bar.a_x[i].abs() * sq(om[i])),
        gs_u: trapezoid_by(n, dx, |i| bar.us_x[i].abs() * sq(psi[i])),
        gs_v: trapezoid_by(n, dx, |i| bar.us_x[i].abs() * sq(phi[i])),
        gr: trapezoid_by(n, dx, |i| bar.ur_x[i] * sq(phi[i])),
        gw: trapezoid_by(n, dx, |i| sq(om[i])),
        du1: trapezoid_by(n, dx, |i| sq(psi_x[i])),
        du2: trapezoid_by(n, dx, |i| sq(psi_xx[i])),
        dw1: trapezoid_by(n, dx, |i| sq(om_x[i])),
        dw2: trapezoid_by(n, dx, |i| sq(om_xx[i])),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct PerturbationNorms {
    #[serde(rename = "L2_phi")]
    pub l2_phi: f64,
    #[serde(rename = "L2_psi")]
    pub l2_psi: f64,
    #[serde(rename = "L2_omega")]
    pub l2_omega: f64,
    #[serde(rename = "H1_psi")]
    pub h1_psi: f64,
    #[serde(rename = "H1_omega")]
    pub h1_omega: f64,
    /// `max |phi| + max |D phi|`
    #[serde(rename = "W1inf_phi")]
    pub w1inf_phi: f64,
    #[serde(rename = "Linf_psi")]
    pub linf_psi: f64,
}

fn l2(f: &[f64], dx: f64) -> f64 {
    trapezoid_by(f.len(), dx, |i| f[i] * f[i]).sqrt()
}

fn linf(f: &[f64]) -> f64 {
    f.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Discrete norms of `(v - vbar, u - ubar, w - wbar)`.
pub fn perturbation_norms(grid: &Grid, state: &SimState, bar: &BarFields) -> PerturbationNorms {
    let dx = grid.dx;
    let phi = diff(&state.v, &bar.v);
    let psi = diff(&state.u, &bar.u);
    let om = diff(&state.w, &bar.w);
    let h1 = |f: &[f64]| (l2(f, dx).powi(2) + l2(&first_difference(f, dx), dx).powi(2)).sqrt();
    PerturbationNorms {
        l2_phi: l2(&phi, dx),
        l2_psi: l2(&psi, dx),
        l2_omega: l2(&om, dx),
        h1_psi: h1(&psi),
        h1_omega: h1(&om),
        w1inf_phi: linf(&phi) + linf(&first_difference(&phi, dx)),
        linf_psi: linf(&psi),
    }
}

/// `(int |f - mean f|^2, 1/2 int y(1-y) |f'|^2)` for samples of `f` on a
/// uniform grid over `[0, 1]`.
pub fn hardy_legendre_gap(f: &[f64]) -> Result<(f64, f64)> {
    let n = f.len();
    if n < 3 {
        return Err(NskError::Domain(format!("hardy_legendre_gap needs at least 3 samples, got {n}")));
    }
    if let Some(i) = f.iter().position(|x| !x.is_finite()) {
        return Err(NskError::Domain(format!("non-finite sample at index {i}")));
    }
    let h = 1.0 / (n - 1) as f64;
    let mean = trapezoid(f, h);
    let lhs = trapezoid_by(n, h, |i| (f[i] - mean).powi(2));
    let mut df = vec![0.0; n];
    for i in 1..n - 1 {
        df[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
    // y(1-y) vanishes at the ends, so the end derivatives never contribute
    let rhs = 0.5 * trapezoid_by(n, h, |i| {
        let y = i as f64 * h;
        y * (1.0 - y) * df[i] * df[i]
    });
    Ok((lhs, rhs))
}

/// One row of the time series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    /// Shift `X(t)`.
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(rename = "Xdot")]
    pub xdot: f64,
    #[serde(flatten)]
    pub norms: PerturbationNorms,
    pub eta_weighted: f64,
    #[serde(flatten)]
    pub good: GoodTerms,
    pub constraint_defect: f64,
    pub mass_defect: f64,
    pub a_min: f64,
    pub a_max: f64,
}

impl DiagnosticsRecord {
    pub const HEADER: &'static str = "t,X,Xdot,L2_phi,L2_psi,L2_omega,H1_psi,H1_omega,W1inf_phi,Linf_psi,eta_weighted,G1,G3,GSu,GSv,GR,Gw,Du1,Du2,Dw1,Dw2,constraint_defect,mass_defect";

    pub fn values(&self) -> [f64; 23] {
        let n = &self.norms;
        let g = &self.good;
        [
            self.t,
            self.x,
            self.xdot,
            n.l2_phi,
            n.l2_psi,
            n.l2_omega,
            n.h1_psi,
            n.h1_omega,
            n.w1inf_phi,
            n.linf_psi,
            self.eta_weighted,
            g.g1,
            g.g3,
            g.gs_u,
            g.gs_v,
            g.gr,
            g.gw,
            g.du1,
            g.du2,
            g.dw1,
            g.dw2,
            self.constraint_defect,
            self.mass_defect,
        ]
    }

    pub fn csv_row(&self) -> String {
        join_floats(&self.values())
    }

    pub fn w1inf_phi(&self) -> f64 {
        self.norms.w1inf_phi
    }

    pub fn linf_psi(&self) -> f64 {
        self.norms.linf_psi
    }
}

/// Shortest round-trip decimal, in exponent form for very large or small
/// magnitudes.
pub fn format_float(x: f64) -> String {
    let m = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&m) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn join_floats(xs: &[f64]) -> String {
    xs.iter().map(|&x| format_float(x)).collect::<Vec<_>>().join(",")
}

/// Full diagnostics of `state` against the composite wave at its shift.
pub fn record(c: &CompositeWave, grid: &Grid, state: &SimState) -> Result<DiagnosticsRecord> {
    let model = c.model();
    let bar = BarFields::new(c, grid, state.t, state.shift)?;
    let (a_min, a_max) = bar
        .a
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &a| (lo.min(a), hi.max(a)));
    Ok(DiagnosticsRecord {
        t: state.t,
        x: state.shift,
        xdot: state.shift_rate,
        norms: perturbation_norms(grid, state, &bar),
        eta_weighted: weighted_relative_entropy(model, grid, state, &bar)?,
        good: good_terms(model, c.pattern.c1, grid, state, &bar),
        constraint_defect: constraint_defect(model, grid, state),
        mass_defect: mass_defect(grid, state),
        a_min,
        a_max,
    })
}
