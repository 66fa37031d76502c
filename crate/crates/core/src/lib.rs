pub mod cli;
pub mod composite;
pub mod config;
pub mod diagnostics;
pub mod error;
pub mod jet;
pub mod ode;
pub mod quadrature;
pub mod rarefaction;
pub mod riemann;
pub mod shockprofile;
pub mod solver;
pub mod thermo;
pub mod verify;

pub use error::{NskError, Result};
pub use thermo::{ConvexFn, GasModel};
