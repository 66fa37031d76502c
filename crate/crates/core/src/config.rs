//! Run configuration: a strict TOML file with one table per concern.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::composite::CompositeWave;
use crate::error::{NskError, Result};
use crate::riemann::{solve_intermediate_state, EndState, WavePattern};
use crate::shockprofile::ProfileOptions;
use crate::solver::{Grid, Perturbation, PerturbationKind, SchemeConfig};
use crate::thermo::GasModel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GasConfig {
    pub gamma: f64,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
}

/// Either both end states, or the right state with `v_m` (and optionally
/// `delta_r`, the rarefaction strength `|u_m - u_-|`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatesConfig {
    pub v_minus: Option<f64>,
    pub u_minus: Option<f64>,
    pub v_plus: f64,
    #[serde(default)]
    pub u_plus: f64,
    pub v_m: Option<f64>,
    pub delta_r: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub x_lo: f64,
    pub x_hi: f64,
    pub n: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            x_lo: -200.0,
            x_hi: 200.0,
            n: 1024,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InteractionsConfig {
    /// Sample times; empty means `{0, 5, 20, 50} / delta_S`.
    pub times: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RarefactionConfig {
    pub times: Vec<f64>,
}

impl Default for RarefactionConfig {
    fn default() -> Self {
        Self {
            times: vec![0.0, 1.0, 10.0, 100.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Ndjson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            formats: vec![Format::Csv],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub gas: GasConfig,
    pub states: StatesConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub scheme: SchemeConfig,
    #[serde(default)]
    pub perturbation: Perturbation,
    #[serde(default)]
    pub profile: ProfileOptions,
    #[serde(default)]
    pub interactions: InteractionsConfig,
    #[serde(default)]
    pub rarefaction: RarefactionConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn finite(errs: &mut Vec<String>, name: &str, x: f64) -> bool {
    if x.is_finite() {
        true
    } else {
        errs.push(format!("{name} must be finite, got {x}"));
        false
    }
}

impl RunConfig {
    /// Parses and validates; every violated constraint is reported at once.
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| NskError::Config(e.to_string()))?;
        let errs = cfg.validate();
        if errs.is_empty() {
            Ok(cfg)
        } else {
            Err(NskError::Config(format!("invalid configuration:\n  - {}", errs.join("\n  - "))))
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| NskError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            NskError::Config(m) => NskError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Vec<String> {
        let mut errs = Vec::new();
        let g = &self.gas;
        if !(g.gamma.is_finite() && g.gamma > 1.0) {
            errs.push(format!("gamma must exceed 1, got {}", g.gamma));
        }
        finite(&mut errs, "alpha", g.alpha);
        finite(&mut errs, "beta", g.beta);

        let s = &self.states;
        let mut states_ok = true;
        if !(s.v_plus.is_finite() && s.v_plus > 0.0) {
            errs.push(format!("v_plus must be positive, got {}", s.v_plus));
            states_ok = false;
        }
        states_ok &= finite(&mut errs, "u_plus", s.u_plus);
        let left = s.v_minus.is_some() || s.u_minus.is_some();
        match (left, s.v_m) {
            (true, Some(_)) => {
                errs.push("give either the left state (v_minus, u_minus) or v_m, not both".into());
                states_ok = false;
            }
            (false, None) => {
                errs.push("give either the left state (v_minus, u_minus) or v_m".into());
                states_ok = false;
            }
            (true, None) => {
                if s.v_minus.is_none() || s.u_minus.is_none() {
                    errs.push("left state needs both v_minus and u_minus".into());
                    states_ok = false;
                }
                if s.delta_r.is_some() {
                    errs.push("delta_r only applies together with v_m".into());
                    states_ok = false;
                }
            }
            (false, Some(vm)) => {
                if !(vm.is_finite() && vm > 0.0) {
                    errs.push(format!("v_m must be positive, got {vm}"));
                    states_ok = false;
                }
                if let Some(d) = s.delta_r {
                    if !(d.is_finite() && d >= 0.0) {
                        errs.push(format!("delta_r must be non-negative, got {d}"));
                        states_ok = false;
                    }
                }
            }
        }
        if let Some(v) = s.v_minus {
            if !(v.is_finite() && v > 0.0) {
                errs.push(format!("v_minus must be positive, got {v}"));
                states_ok = false;
            }
        }
        if let Some(u) = s.u_minus {
            states_ok &= finite(&mut errs, "u_minus", u);
        }

        let gr = &self.grid;
        if !(gr.x_lo.is_finite() && gr.x_hi.is_finite() && gr.x_lo < gr.x_hi) {
            errs.push(format!("grid needs finite x_lo < x_hi, got [{}, {}]", gr.x_lo, gr.x_hi));
        }
        if gr.n < 16 {
            errs.push(format!("grid.n must be at least 16, got {}", gr.n));
        }

        errs.extend(self.scheme.validate());

        let p = &self.perturbation;
        if p.kind == PerturbationKind::Gaussian {
            if !(p.amplitude.is_finite() && p.amplitude.abs() <= self.scheme.max_amplitude) {
                errs.push(format!(
                    "perturbation.amplitude must not exceed scheme.max_amplitude = {}, got {}",
                    self.scheme.max_amplitude, p.amplitude
                ));
            }
            if !(p.width.is_finite() && p.width > 0.0) {
                errs.push(format!("perturbation.width must be positive, got {}", p.width));
            }
            finite(&mut errs, "perturbation.center", p.center);
        }

        let o = &self.profile;
        if !(o.rtol > 0.0 && o.rtol < 1e-3) {
            errs.push(format!("profile.rtol must lie in (0, 1e-3), got {}", o.rtol));
        }
        if !(o.residual_tol > 0.0) {
            errs.push(format!("profile.residual_tol must be positive, got {}", o.residual_tol));
        }
        if !(o.max_strength > 0.0 && o.max_strength < 1.0) {
            errs.push(format!("profile.max_strength must lie in (0, 1), got {}", o.max_strength));
        }
        if !(o.tail_tol > 0.0 && o.tail_tol < 1e-3) {
            errs.push(format!("profile.tail_tol must lie in (0, 1e-3), got {}", o.tail_tol));
        }

        for (name, times) in [("interactions.times", &self.interactions.times), ("rarefaction.times", &self.rarefaction.times)] {
            if let Some(t) = times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
                errs.push(format!("{name} must be finite and non-negative, got {t}"));
            }
        }
        if self.output.dir.as_os_str().is_empty() {
            errs.push("output.dir must not be empty".into());
        }
        if self.output.formats.is_empty() {
            errs.push("output.formats must name at least one format".into());
        }

        // the wave pattern itself, once the inputs it needs are sane
        if errs.is_empty() && states_ok {
            match self.pattern() {
                Ok(p) if p.delta_s > self.profile.max_strength => errs.push(format!(
                    "shock strength {} exceeds profile.max_strength = {}",
                    p.delta_s, self.profile.max_strength
                )),
                Ok(_) => {}
                Err(e) => errs.push(e.to_string()),
            }
        }
        errs
    }

    pub fn model(&self) -> Result<GasModel> {
        GasModel::new(self.gas.gamma, self.gas.alpha, self.gas.beta)
    }

    pub fn right_state(&self) -> Result<EndState> {
        EndState::new(self.states.v_plus, self.states.u_plus)
    }

    pub fn pattern(&self) -> Result<WavePattern> {
        let model = self.model()?;
        let right = self.right_state()?;
        let s = &self.states;
        match (s.v_minus, s.u_minus, s.v_m) {
            (Some(v), Some(u), None) => solve_intermediate_state(&model, EndState::new(v, u)?, right),
            (None, None, Some(vm)) => WavePattern::construct(&model, right, vm, s.delta_r.unwrap_or(0.0)),
            _ => Err(NskError::Config("states need either (v_minus, u_minus) or v_m".into())),
        }
    }

    pub fn composite(&self) -> Result<CompositeWave> {
        CompositeWave::new(&self.model()?, &self.pattern()?, &self.profile)
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.grid.x_lo, self.grid.x_hi, self.grid.n)
    }

    /// Interaction sample times, defaulting to multiples of `1 / delta_S`.
    pub fn interaction_times(&self, pattern: &WavePattern) -> Vec<f64> {
        if !self.interactions.times.is_empty() {
            return self.interactions.times.clone();
        }
        let d = pattern.delta_s;
        if d > 0.0 {
            [0.0, 5.0, 20.0, 50.0].iter().map(|k| k / d).collect()
        } else {
            vec![0.0]
        }
    }

    pub fn wants(&self, f: Format) -> bool {
        self.output.formats.contains(&f)
    }
}
