//! Dormand-Prince 5(4) integrator with step-size control.

#[derive(Debug, Clone, Copy)]
pub struct Dp45 {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Continue,
    Stop,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OdeError {
    StepUnderflow { t: f64, h: f64 },
    TooManySteps { t: f64 },
    NonFinite { t: f64 },
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth-order minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<const N: usize>(y: &[f64; N], terms: &[(f64, &[f64; N])], h: f64) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

impl Dp45 {
    /// Integrates `y' = f(t, y)` from `(t0, y0)` and records every accepted
    /// step. `observe` sees each accepted point and may stop the integration.
    pub fn integrate<const N: usize, F, O>(
        &self,
        f: F,
        t0: f64,
        y0: [f64; N],
        mut observe: O,
    ) -> Result<Vec<(f64, [f64; N])>, OdeError>
    where
        F: Fn(f64, &[f64; N]) -> [f64; N],
        O: FnMut(f64, &[f64; N]) -> Control,
    {
        let mut t = t0;
        let mut y = y0;
        let mut h = self.h_init.min(self.h_max);
        let mut out = vec![(t, y)];
        let mut k1 = f(t, &y);
        for _ in 0..self.max_steps {
            let k2 = f(t + C2 * h, &axpy(&y, &[(A21, &k1)], h));
            let k3 = f(t + C3 * h, &axpy(&y, &[(A31, &k1), (A32, &k2)], h));
            let k4 = f(t + C4 * h, &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h));
            let k5 = f(t + C5 * h, &axpy(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h));
            let k6 = f(
                t + h,
                &axpy(&y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h),
            );
            let y_new = axpy(&y, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)], h);
            let k7 = f(t + h, &y_new);
            let mut err = 0.0f64;
            for i in 0..N {
                let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let sc = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
                err = err.max((e / sc).abs());
            }
            if !err.is_finite() || y_new.iter().any(|x| !x.is_finite()) {
                if h < 1e-14 * (1.0 + t.abs()) {
                    return Err(OdeError::NonFinite { t });
                }
                h *= 0.25;
                continue;
            }
            if err <= 1.0 {
                t += h;
                y = y_new;
                k1 = k7;
                out.push((t, y));
                if observe(t, &y) == Control::Stop {
                    return Ok(out);
                }
            }
            let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h = (h * fac).min(self.h_max);
            if h < 1e-14 * (1.0 + t.abs()) {
                return Err(OdeError::StepUnderflow { t, h });
            }
        }
        Err(OdeError::TooManySteps { t })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solver() -> Dp45 {
        Dp45 {
            rtol: 1e-10,
            atol: 1e-14,
            h_init: 1e-3,
            h_max: 0.5,
            max_steps: 100_000,
        }
    }

    #[test]
    fn harmonic_oscillator_period() {
        let path = solver()
            .integrate(|_, y: &[f64; 2]| [y[1], -y[0]], 0.0, [1.0, 0.0], |t, _| {
                if t >= 2.0 * std::f64::consts::PI {
                    Control::Stop
                } else {
                    Control::Continue
                }
            })
            .unwrap();
        let (t, y) = *path.last().unwrap();
        assert!((y[0] - t.cos()).abs() < 1e-8);
        assert!((y[1] + t.sin()).abs() < 1e-8);
    }

    #[test]
    fn exponential_growth_relative_accuracy() {
        let path = Dp45 { atol: 0.0, ..solver() }
            .integrate(|_, y: &[f64; 1]| [y[0]], 0.0, [1e-30], |t, _| {
                if t >= 10.0 {
                    Control::Stop
                } else {
                    Control::Continue
                }
            })
            .unwrap();
        let (t, y) = *path.last().unwrap();
        assert!((y[0] / (1e-30 * t.exp()) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn step_cap_respected() {
        let s = Dp45 { h_max: 0.05, ..solver() };
        let path = s
            .integrate(|_, _: &[f64; 1]| [1.0], 0.0, [0.0], |t, _| {
                if t > 1.0 {
                    Control::Stop
                } else {
                    Control::Continue
                }
            })
            .unwrap();
        assert!(path.windows(2).all(|w| w[1].0 - w[0].0 <= 0.05 + 1e-15));
    }

    #[test]
    fn too_many_steps_reported() {
        let s = Dp45 { max_steps: 3, ..solver() };
        let r = s.integrate(|_, _: &[f64; 1]| [1.0], 0.0, [0.0], |_, _| Control::Continue);
        assert!(matches!(r, Err(OdeError::TooManySteps { .. })));
    }
}
