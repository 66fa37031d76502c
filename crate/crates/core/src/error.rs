use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NskError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid gas model: {0}")]
    Model(String),

    #[error("pattern not R1S2: {0}")]
    PatternNotR1S2(String),

    #[error("left state not on rarefaction side: v_minus = {v_minus}, v_m = {v_m}")]
    LeftStateNotRarefactionSide { v_minus: f64, v_m: f64 },

    #[error("profile solve failed: {0}")]
    ProfileSolveFailed(String),

    #[error("monotonicity violated: {0}")]
    MonotonicityViolated(String),

    #[error("composite vacuum at t = {t}, x = {x}: vbar = {vbar}")]
    CompositeVacuum { t: f64, x: f64, vbar: f64 },

    #[error("unsupported derivative order {0} (max 4)")]
    UnsupportedOrder(usize),

    #[error("CFL violation: dt = {dt} exceeds limit {limit}")]
    Cfl { dt: f64, limit: f64 },

    #[error("vacuum detected at node {node}: v = {v} (t = {t})")]
    Vacuum { node: usize, v: f64, t: f64 },

    #[error("non-finite value in field {field} at node {node} (t = {t})")]
    NonFinite { field: &'static str, node: usize, t: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl NskError {
    /// Process exit code for the command line tool: 1 for invalid input,
    /// 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            NskError::Model(_) | NskError::Config(_) | NskError::Io(_) => 1,
            NskError::Domain(_)
            | NskError::PatternNotR1S2(_)
            | NskError::LeftStateNotRarefactionSide { .. }
            | NskError::UnsupportedOrder(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for NskError {
    fn from(e: std::io::Error) -> Self {
        NskError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, NskError>;
