//! Adaptive Simpson quadrature for smooth wave integrands, and trapezoid sums
//! on uniform grids.

fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let h = b - a;
    let left = h / 12.0 * (fa + 4.0 * flm + fm);
    let right = h / 12.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // stop at the tolerance, the depth limit, or when the correction is at
    // roundoff level of the panel values
    let floor = 1e-15 * (left.abs() + right.abs());
    if depth == 0 || delta.abs() <= 15.0 * tol || delta.abs() <= floor {
        return left + right + delta / 15.0;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson on `[a, b]` with absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, 30)
}

/// Integrates over `[a, b]` split into panels of length at most `panel`, each
/// refined adaptively. The tolerance is relative to the magnitude of a coarse
/// first pass so that exponentially small integrals keep their digits.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panel: f64, rel_tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = ((b - a) / panel).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    // coarse scale estimate: 8 points per panel
    let mut scale = 0.0f64;
    let m = 8 * n;
    let hs = (b - a) / m as f64;
    for i in 0..=m {
        scale += f(a + i as f64 * hs).abs();
    }
    scale *= hs;
    if scale == 0.0 {
        return 0.0;
    }
    let tol = rel_tol * scale / n as f64;
    (0..n)
        .map(|i| {
            let lo = a + i as f64 * h;
            let hi = if i + 1 == n { b } else { lo + h };
            adaptive_simpson(f, lo, hi, tol)
        })
        .sum()
}

// 8-point Gauss-Legendre nodes and weights on [-1, 1], positive half
const GL8_X: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_W: [f64; 4] = [
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Composite 8-point Gauss-Legendre rule on panels of length at most `panel`.
/// Suited to integrands that are analytic on scales well above `panel`.
pub fn gauss_legendre<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panel: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = ((b - a) / panel).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    let mut total = 0.0;
    for i in 0..n {
        let c = a + (i as f64 + 0.5) * h;
        let mut s = 0.0;
        for k in 0..4 {
            let d = 0.5 * h * GL8_X[k];
            s += GL8_W[k] * (f(c - d) + f(c + d));
        }
        total += 0.5 * h * s;
    }
    total
}

/// Trapezoid rule for samples on a uniform grid with spacing `dx`.
pub fn trapezoid(values: &[f64], dx: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => {
            let inner: f64 = values[1..n - 1].iter().sum();
            dx * (inner + 0.5 * (values[0] + values[n - 1]))
        }
    }
}

/// Trapezoid rule of `g(i)` over node indices `0..n`.
pub fn trapezoid_by<F: Fn(usize) -> f64>(n: usize, dx: f64, g: F) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut s = 0.5 * (g(0) + g(n - 1));
    for i in 1..n - 1 {
        s += g(i);
    }
    s * dx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_integrates_gaussian() {
        let f = |x: f64| (-x * x).exp();
        let got = integrate_panels(&f, -12.0, 12.0, 1.0, 1e-12);
        assert!((got - std::f64::consts::PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn tiny_integrals_keep_relative_accuracy() {
        let f = |x: f64| 1e-80 * (-x * x).exp();
        let got = integrate_panels(&f, -12.0, 12.0, 1.0, 1e-10);
        assert!((got / 1e-80 - std::f64::consts::PI.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn gauss_legendre_exact_for_degree_15() {
        let f = |x: f64| x.powi(15) + 3.0 * x.powi(14);
        let got = gauss_legendre(&f, 0.0, 1.0, 1.0);
        assert!((got - (1.0 / 16.0 + 0.2)).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_tiny_gaussian() {
        let f = |x: f64| 1e-150 * (-x * x).exp();
        let got = gauss_legendre(&f, -12.0, 12.0, 0.5);
        assert!((got / 1e-150 - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn trapezoid_exact_for_linear() {
        let xs: Vec<f64> = (0..11).map(|i| 2.0 * i as f64 / 10.0).collect();
        assert!((trapezoid(&xs, 0.2) - 2.0).abs() < 1e-14);
        assert!((trapezoid_by(11, 0.2, |i| xs[i]) - 2.0).abs() < 1e-14);
    }
}
