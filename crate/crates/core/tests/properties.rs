use std::sync::OnceLock;

use proptest::prelude::*;

use nsk_lab::composite::CompositeWave;
use nsk_lab::diagnostics::{format_float, good_terms, hardy_legendre_gap, relative_entropy_density, BarFields};
use nsk_lab::rarefaction::RarefactionWave;
use nsk_lab::riemann::{solve_intermediate_state, EndState, WavePattern};
use nsk_lab::shockprofile::ProfileOptions;
use nsk_lab::solver::{Grid, SimState};
use nsk_lab::{ConvexFn, GasModel};

fn model() -> GasModel {
    GasModel::gamma_law(1.4).unwrap()
}

fn wave() -> &'static CompositeWave {
    static W: OnceLock<CompositeWave> = OnceLock::new();
    W.get_or_init(|| {
        let m = model();
        let p = WavePattern::construct(&m, EndState::new(1.0, 0.0).unwrap(), 0.95, 0.05).unwrap();
        CompositeWave::new(&m, &p, &ProfileOptions::default()).unwrap()
    })
}

fn perturbed(grid: &Grid, bar: &BarFields, amp: f64, k: f64) -> SimState {
    let bump = |x: f64, s: f64| amp * (-(x - s).powi(2) / 9.0).exp() * (k * x).cos();
    let xs = grid.nodes();
    SimState {
        v: xs.iter().zip(&bar.v).map(|(&x, b)| b + bump(x, 0.0)).collect(),
        u: xs.iter().zip(&bar.u).map(|(&x, b)| b + bump(x, 2.0)).collect(),
        w: xs.iter().zip(&bar.w).map(|(&x, b)| b + bump(x, -2.0)).collect(),
        t: 0.0,
        shift: 0.0,
        shift_rate: 0.0,
        mass_flux: 0.0,
        mass0: 0.0,
        steps: 0,
    }
}

proptest! {
    #[test]
    fn relative_quantities_are_nonnegative(v in 0.01f64..5.0, vb in 0.01f64..5.0) {
        let m = model();
        for f in [ConvexFn::Pressure, ConvexFn::InternalEnergy] {
            let r = m.relative_quantity(f, v, vb).unwrap();
            prop_assert!(r >= 0.0);
            prop_assert_eq!(m.relative_quantity(f, vb, vb).unwrap(), 0.0);
        }
    }

    #[test]
    fn entropy_density_vanishes_only_at_the_reference(
        v in 0.05f64..4.0, u in -1.0f64..1.0, w in -1.0f64..1.0,
        vb in 0.05f64..4.0, ub in -1.0f64..1.0, wb in -1.0f64..1.0,
    ) {
        let m = model();
        let e = relative_entropy_density(&m, (v, u, w), (vb, ub, wb)).unwrap();
        prop_assert!(e >= 0.0);
        prop_assert_eq!(relative_entropy_density(&m, (vb, ub, wb), (vb, ub, wb)).unwrap(), 0.0);
        if (v, u, w) != (vb, ub, wb) {
            prop_assert!(e > 0.0);
        }
    }

    #[test]
    fn good_terms_are_quadratic_in_the_perturbation(amp in 1e-4f64..1e-2, k in 0.0f64..2.0, lam in 0.1f64..4.0) {
        let c = wave();
        let grid = Grid::new(-40.0, 40.0, 161).unwrap();
        let bar = BarFields::new(c, &grid, 3.0, 0.0).unwrap();
        let m = *c.model();
        let g = good_terms(&m, c.pattern.c1, &grid, &perturbed(&grid, &bar, amp, k), &bar);
        let h = good_terms(&m, c.pattern.c1, &grid, &perturbed(&grid, &bar, lam * amp, k), &bar);
        let pairs = [
            (g.g3, h.g3), (g.gs_u, h.gs_u), (g.gs_v, h.gs_v), (g.gr, h.gr), (g.gw, h.gw),
            (g.du1, h.du1), (g.du2, h.du2), (g.dw1, h.dw1), (g.dw2, h.dw2),
        ];
        for (a, b) in pairs {
            prop_assert!(a >= 0.0);
            prop_assert!((b - lam * lam * a).abs() <= 1e-9 * b.abs().max(1e-300));
        }
        prop_assert!(g.g1 >= 0.0 && h.g1 >= 0.0);
    }

    #[test]
    fn floats_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn hardy_legendre_holds_for_polynomials(c in proptest::collection::vec(-1.0f64..1.0, 1..7)) {
        let n = 1025;
        let f: Vec<f64> = (0..n)
            .map(|i| {
                let y = i as f64 / (n - 1) as f64;
                c.iter().rev().fold(0.0, |s, a| s * y + a)
            })
            .collect();
        let (l, r) = hardy_legendre_gap(&f).unwrap();
        prop_assert!(l <= r + 1e-6, "{} > {}", l, r);
    }

    #[test]
    fn rarefaction_is_increasing(dr in 1e-3f64..0.1, t in 0.0f64..100.0, x in -200.0f64..200.0) {
        let m = model();
        let p = WavePattern::construct(&m, EndState::new(1.0, 0.0).unwrap(), 0.95, dr).unwrap();
        let r = RarefactionWave::new(&m, &p);
        let s = r.point(t, x);
        prop_assert!(s.vx >= 0.0 && s.ux >= 0.0);
        prop_assert!(s.v >= p.left.v - 1e-15 && s.v <= p.mid.v + 1e-15);
    }

    #[test]
    fn construction_inverts_the_riemann_solve(v_m in 0.85f64..0.999, dr in 1e-3f64..0.1) {
        let m = model();
        let right = EndState::new(1.0, 0.0).unwrap();
        let p = WavePattern::construct(&m, right, v_m, dr).unwrap();
        let q = solve_intermediate_state(&m, p.left, right).unwrap();
        prop_assert!((q.mid.v - v_m).abs() < 1e-10);
        prop_assert!((q.delta_r - dr).abs() < 1e-10);
    }
}
