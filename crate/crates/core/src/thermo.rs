//! Constitutive laws of the barotropic gas: gamma-law pressure, power-law
//! viscosity `mu(v) = v^-alpha` and capillarity `kappa(v) = v^-beta`.
//!
//! The checked functions (`pressure`, `internal_energy`, ...) reject
//! non-positive volumes. The unchecked `p`, `dp`, ... variants are used in
//! the solver hot loops after the state has already been validated.

use crate::error::{NskError, Result};
use crate::jet::Jet;
use serde::{Deserialize, Serialize};

/// Volumes at or below this are treated as vacuum and rejected.
pub const VOLUME_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasModel {
    pub gamma: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Convex functions admitting a relative quantity `F(v|vbar)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvexFn {
    Pressure,
    InternalEnergy,
}

fn check_volume(v: f64) -> Result<()> {
    if !v.is_finite() || v <= VOLUME_FLOOR {
        return Err(NskError::Domain(format!("specific volume must be positive, got {v}")));
    }
    Ok(())
}

impl GasModel {
    pub fn new(gamma: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 1.0) {
            return Err(NskError::Model(format!("gamma must exceed 1, got {gamma}")));
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(NskError::Model("viscosity and capillarity exponents must be finite".into()));
        }
        Ok(Self { gamma, alpha, beta })
    }

    /// gamma-law gas with constant viscosity and capillarity.
    pub fn gamma_law(gamma: f64) -> Result<Self> {
        Self::new(gamma, 0.0, 0.0)
    }

    // ---- unchecked scalar kernels -------------------------------------

    #[inline]
    pub fn p(&self, v: f64) -> f64 {
        v.powf(-self.gamma)
    }

    #[inline]
    pub fn dp(&self, v: f64) -> f64 {
        -self.gamma * v.powf(-self.gamma - 1.0)
    }

    #[inline]
    pub fn d2p(&self, v: f64) -> f64 {
        self.gamma * (self.gamma + 1.0) * v.powf(-self.gamma - 2.0)
    }

    #[inline]
    pub fn q(&self, v: f64) -> f64 {
        v.powf(1.0 - self.gamma) / (self.gamma - 1.0)
    }

    #[inline]
    pub fn mu(&self, v: f64) -> f64 {
        if self.alpha == 0.0 {
            1.0
        } else {
            v.powf(-self.alpha)
        }
    }

    #[inline]
    pub fn kappa(&self, v: f64) -> f64 {
        if self.beta == 0.0 {
            1.0
        } else {
            v.powf(-self.beta)
        }
    }

    /// Viscous coefficient `mu(v) / v = v^{-alpha-1}`.
    #[inline]
    pub fn visc_coef(&self, v: f64) -> f64 {
        if self.alpha == 0.0 {
            1.0 / v
        } else {
            v.powf(-self.alpha - 1.0)
        }
    }

    /// Exponent of the capillary coefficient `sqrt(kappa(v)) / v^{5/2}`.
    #[inline]
    pub fn cap_exponent(&self) -> f64 {
        -(self.beta + 5.0) / 2.0
    }

    /// Capillary coefficient `sqrt(kappa(v)) / v^{5/2} = v^{-(beta+5)/2}`.
    #[inline]
    pub fn cap_coef(&self, v: f64) -> f64 {
        if self.beta == 0.0 {
            let s = v.sqrt();
            1.0 / (v * v * s)
        } else {
            v.powf(self.cap_exponent())
        }
    }

    #[inline]
    pub fn dcap_coef(&self, v: f64) -> f64 {
        let e = self.cap_exponent();
        e * v.powf(e - 1.0)
    }

    /// `lambda_1(v) = -sqrt(-p'(v)) = -sqrt(gamma) v^{-(gamma+1)/2}`.
    #[inline]
    pub fn lambda1(&self, v: f64) -> f64 {
        -self.gamma.sqrt() * v.powf(-(self.gamma + 1.0) / 2.0)
    }

    /// Inverse of `lambda_1` on `w < 0`: `v = (gamma / w^2)^{1/(gamma+1)}`.
    #[inline]
    pub fn lambda1_inv(&self, w: f64) -> f64 {
        (self.gamma / (w * w)).powf(1.0 / (self.gamma + 1.0))
    }

    /// Closed-form antiderivative of `lambda_1`:
    /// `(2 sqrt(gamma) / (gamma - 1)) v^{(1-gamma)/2}`.
    #[inline]
    pub fn lambda1_antiderivative(&self, v: f64) -> f64 {
        2.0 * self.gamma.sqrt() / (self.gamma - 1.0) * v.powf((1.0 - self.gamma) / 2.0)
    }

    #[inline]
    pub fn z1(&self, v: f64, u: f64) -> f64 {
        u + self.lambda1_antiderivative(v)
    }

    // ---- checked API ---------------------------------------------------

    pub fn pressure(&self, v: f64) -> Result<f64> {
        check_volume(v)?;
        Ok(self.p(v))
    }

    pub fn pressure_derivative(&self, v: f64) -> Result<f64> {
        check_volume(v)?;
        Ok(self.dp(v))
    }

    pub fn internal_energy(&self, v: f64) -> Result<f64> {
        check_volume(v)?;
        Ok(self.q(v))
    }

    pub fn eval(&self, f: ConvexFn, v: f64) -> f64 {
        match f {
            ConvexFn::Pressure => self.p(v),
            ConvexFn::InternalEnergy => self.q(v),
        }
    }

    #[cfg(test)]
    fn eval_prime(&self, f: ConvexFn, v: f64) -> f64 {
        match f {
            ConvexFn::Pressure => self.dp(v),
            ConvexFn::InternalEnergy => -self.p(v),
        }
    }

    /// `F(v|vbar) = F(v) - F(vbar) - F'(vbar)(v - vbar)`.
    pub fn relative_quantity(&self, f: ConvexFn, v: f64, vbar: f64) -> Result<f64> {
        check_volume(v)?;
        check_volume(vbar)?;
        Ok(self.relative_unchecked(f, v, vbar))
    }

    /// Relative quantity evaluated as `F(vbar) * [(1+e)^q - 1 - q e] / const`
    /// with `e = (v - vbar)/vbar`, which keeps full precision when `v` is
    /// close to `vbar`.
    pub fn relative_unchecked(&self, f: ConvexFn, v: f64, vbar: f64) -> f64 {
        let e = (v - vbar) / vbar;
        let q = match f {
            ConvexFn::Pressure => -self.gamma,
            ConvexFn::InternalEnergy => 1.0 - self.gamma,
        };
        let second = if e.abs() < 1e-3 {
            // series of (1+e)^q - 1 - q e
            let mut term = q * (q - 1.0) / 2.0 * e * e;
            let mut sum = term;
            for n in 3..12 {
                term *= (q - (n as f64 - 1.0)) / n as f64 * e;
                sum += term;
            }
            sum
        } else {
            (q * e.ln_1p()).exp_m1() - q * e
        };
        self.eval(f, vbar) * second
    }

    pub fn characteristic_speeds(&self, v: f64) -> Result<(f64, f64)> {
        check_volume(v)?;
        let l1 = self.lambda1(v);
        Ok((l1, -l1))
    }

    pub fn riemann_invariant_z1(&self, v: f64, u: f64) -> Result<f64> {
        check_volume(v)?;
        Ok(self.z1(v, u))
    }

    // ---- jet versions ---------------------------------------------------

    pub fn p_jet<const N: usize>(&self, v: Jet<N>) -> Jet<N> {
        v.powf(-self.gamma)
    }

    pub fn visc_coef_jet<const N: usize>(&self, v: Jet<N>) -> Jet<N> {
        v.powf(-self.alpha - 1.0)
    }

    pub fn cap_coef_jet<const N: usize>(&self, v: Jet<N>) -> Jet<N> {
        v.powf(self.cap_exponent())
    }

    /// Capillary stress written in terms of `v` and its derivatives:
    /// `kappa(v)(-v_xx/v^5 + 5 v_x^2/(2 v^6)) - kappa'(v) v_x^2 / (2 v^5)`.
    pub fn capillary_stress_jet<const N: usize>(&self, v: Jet<N>) -> Jet<N> {
        let vx = v.diff();
        let vxx = vx.diff();
        let a = v.powf(-self.beta - 5.0);
        let b = v.powf(-self.beta - 6.0).scale((self.beta + 5.0) / 2.0);
        -(a * vxx) + b * vx * vx
    }
}
