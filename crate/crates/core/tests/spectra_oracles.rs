use dualsym::spectra::{
    self, eigenfunction_residual, eigenvalue, spectrum_row, EigenFunction, Labels, Regime, SpectralSetup,
};
use dualsym::suites::{phase_defect, schrodinger_defect, SmoothSeed};
use dualsym::Error;
use num::complex::Complex64;
use proptest::prelude::*;

fn setups() -> [SpectralSetup; 3] {
    [
        SpectralSetup::new(1.3, 0.9, 0.4, Regime::Under { omega_cap: 1.1 }).unwrap(),
        SpectralSetup::new(0.8, 1.2, 0.7, Regime::Over { omega_tilde: 0.3 }).unwrap(),
        SpectralSetup::new(1.1, 0.7, 0.5, Regime::Critical).unwrap(),
    ]
}

fn point_ok(s: &SpectralSetup, x: f64, py: f64) -> bool {
    match s.z_pair(x, py) {
        Ok((zp, zm)) => zp.norm() > 0.1 && zm.norm() > 0.1,
        Err(_) => py.abs() > 0.1,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn analytic_partials_match_differences(
        r in 0usize..3, n in -3i32..=3, first in -1.5f64..1.5, lambda in -1.0f64..1.0,
        x in -2.0f64..2.0, py in -2.0f64..2.0,
    ) {
        let s = setups()[r];
        prop_assume!(point_ok(&s, x, py));
        let label = if r == 0 { n as f64 } else { first };
        let phi = EigenFunction::new(&s, Labels::new(label, lambda)).unwrap();
        let jet = phi.jet(x, py).unwrap();
        let h = 1e-6;
        let fd = |dx: f64, dp: f64| -> Complex64 {
            (phi.jet(x + dx, py + dp).unwrap().value - phi.jet(x - dx, py - dp).unwrap().value) / (2.0 * h)
        };
        let scale = jet.value.norm() * (1.0 + jet.dx.norm() + jet.dpy.norm());
        // stay on one side of the principal-log cut
        let smooth = |dx: f64, dp: f64| {
            let a = phi.jet(x + dx, py + dp).unwrap().value;
            let b = phi.jet(x - dx, py - dp).unwrap().value;
            (a - b).norm() < 1e-3 * jet.value.norm().max(1e-300)
        };
        if smooth(h, 0.0) {
            prop_assert!((fd(h, 0.0) - jet.dx).norm() <= 1e-5 * scale);
        }
        if smooth(0.0, h) {
            prop_assert!((fd(0.0, h) - jet.dpy).norm() <= 1e-5 * scale);
        }
    }

    #[test]
    fn eigen_relation_holds(
        r in 0usize..3, n in -3i32..=3, first in -1.5f64..1.5, lambda in -1.0f64..1.0,
        x in -2.0f64..2.0, py in -2.0f64..2.0,
    ) {
        let s = setups()[r];
        prop_assume!(point_ok(&s, x, py));
        let label = if r == 0 { n as f64 } else { first };
        let phi = EigenFunction::new(&s, Labels::new(label, lambda)).unwrap();
        let e = phi.energy().unwrap();
        prop_assume!(e.abs() > 1e-3);
        let res = eigenfunction_residual(&phi, x, py).unwrap();
        prop_assert!(res.norm() <= 1e-9 * e.abs() * phi.jet(x, py).unwrap().value.norm());
    }

    #[test]
    fn propagated_eigenfunctions_pick_up_the_energy_phase(
        r in 0usize..2, n in -3i32..=3, first in -1.5f64..1.5, lambda in -1.0f64..1.0,
        x in -2.0f64..2.0, py in -2.0f64..2.0, t in 0.0f64..1.5,
    ) {
        let s = setups()[r];
        prop_assume!(point_ok(&s, x, py));
        let label = if r == 0 { n as f64 } else { first };
        let phi = EigenFunction::new(&s, Labels::new(label, lambda)).unwrap();
        if let Some(d) = phase_defect(&phi, x, py, t).unwrap() {
            prop_assert!(d <= 1e-8, "{d}");
        }
    }
}

/// The opposite sign `e^{+iEt/hbar}` must not fit.
#[test]
fn phase_sign_is_pinned_by_the_time_dependent_equation() {
    let s = setups()[0];
    let phi = EigenFunction::new(&s, Labels::new(2.0, 0.3)).unwrap();
    let (x, py, t) = (0.7, 0.4, 0.2);
    let e = phi.energy().unwrap();
    let moved = spectra::propagate(&s, &phi, x, py, t).unwrap();
    let v = phi.jet(x, py).unwrap().value;
    let minus = Complex64::new(0.0, -e * t / s.hbar).exp() * v;
    let plus = Complex64::new(0.0, e * t / s.hbar).exp() * v;
    assert!((moved - minus).norm() < 1e-12 * v.norm());
    assert!((moved - plus).norm() > 1e-2 * v.norm());
    // the propagated state solves i hbar d_t psi = H psi, independent of any phase ansatz
    assert!(schrodinger_defect(&s, &phi, x, py, t).unwrap() < 1e-8);
}

#[test]
fn propagation_at_zero_time_is_identity() {
    for s in &setups()[..2] {
        let f = SmoothSeed { a: Complex64::new(0.2, -0.1), b: Complex64::new(-0.3, 0.05), c: Complex64::new(0.1, 0.2) };
        let (zp, zm) = s.z_pair(0.3, -0.8).unwrap();
        let direct = dualsym::spectra::SeedFunction::eval(&f, zp, zm)[0];
        assert!((spectra::propagate(s, &f, 0.3, -0.8, 0.0).unwrap() - direct).norm() < 1e-15);
    }
}

#[test]
fn smooth_seeds_solve_the_schrodinger_equation() {
    for s in &setups()[..2] {
        let f = SmoothSeed { a: Complex64::new(0.3, 0.2), b: Complex64::new(-0.1, 0.4), c: Complex64::new(0.2, -0.3) };
        for (x, py, t) in [(0.1, 0.2, 0.0), (-0.9, 0.4, 0.7), (0.5, -0.6, 1.0)] {
            assert!(schrodinger_defect(s, &f, x, py, t).unwrap() < 1e-6);
        }
    }
}

#[test]
fn energy_examples() {
    let under = SpectralSetup::new(1.0, 1.0, 0.4, Regime::Under { omega_cap: 1.0 }).unwrap();
    assert!((eigenvalue(&under, &Labels::new(2.0, 0.5)).unwrap() - 2.2).abs() < 1e-15);
    let over = SpectralSetup::new(1.0, 1.0, 0.4, Regime::Over { omega_tilde: 0.3 }).unwrap();
    assert!((eigenvalue(&over, &Labels::new(1.0, 0.0)).unwrap() - 0.3).abs() < 1e-15);
    let crit = SpectralSetup::new(1.0, 1.0, 0.4, Regime::Critical).unwrap();
    assert_eq!(eigenvalue(&crit, &Labels::new(0.0, 0.0)).unwrap(), 0.0);
    assert!(matches!(EigenFunction::new(&under, Labels::new(0.5, 0.0)), Err(Error::InvalidLabel(_))));
}

#[test]
fn critical_ground_state_is_inverse_momentum() {
    let s = setups()[2];
    let phi = EigenFunction::new(&s, Labels::new(0.0, 0.0)).unwrap();
    for py in [-1.7, -0.3, 0.2, 1.9] {
        let v = phi.jet(0.4, py).unwrap().value;
        assert!((v - 1.0 / py.abs()).norm() < 1e-14);
    }
}

#[test]
fn winding_distinguishes_integer_labels() {
    let s = setups()[0];
    for n in [-2.0, 0.0, 1.0, 3.0] {
        let phi = EigenFunction::new(&s, Labels::new(n, 0.4)).unwrap();
        let (a, b) = (phi.jet(0.3, 0.5).unwrap().value, phi.jet_wound(0.3, 0.5, 1).unwrap().value);
        assert!((a - b).norm() < 1e-12 * a.norm());
    }
    let half = EigenFunction::unchecked(&s, Labels::new(0.5, 0.4));
    let (a, b) = (half.jet(0.3, 0.5).unwrap().value, half.jet_wound(0.3, 0.5, 1).unwrap().value);
    assert!((a + b).norm() < 1e-12 * a.norm(), "half-integer n flips sign after one turn");
}

#[test]
fn degenerate_levels_are_independent() {
    let s = setups()[0];
    let ratio = 1.1 / 0.4;
    let a = EigenFunction::new(&s, Labels::new(0.0, 0.2)).unwrap();
    let b = EigenFunction::new(&s, Labels::new(1.0, 0.2 - ratio)).unwrap();
    assert!((a.energy().unwrap() - b.energy().unwrap()).abs() < 1e-12);
    let pts = [(0.5, 0.5), (-1.0, 0.3), (1.2, -0.8), (0.2, 1.5), (-0.6, -1.1)];
    assert!(spectra::gram_determinant(&a, &b, &pts).unwrap() > 1e-6);
    assert!(spectra::gram_determinant(&a, &a, &pts).unwrap().abs() < 1e-12);
}

#[test]
fn spectrum_rows_are_reproducible() {
    let s = setups()[0];
    let a = spectrum_row(&s, Labels::new(1.0, -1.0), 100, 9).unwrap();
    let b = spectrum_row(&s, Labels::new(1.0, -1.0), 100, 9).unwrap();
    assert_eq!(a, b);
    assert!(a.residual_max <= 1e-9);
    assert_eq!(a.samples, 100);
}
