mod common;

use common::{close, exp_poly, params};
use dualsym::timecoeff::{damped_solutions, dho_operator, wronskian};
use dualsym::{ExpPoly, Params, ScalarPoly, Symbol};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn d_dt_is_a_derivation(f in exp_poly(), g in exp_poly()) {
        let lhs = (&f * &g).d_dt();
        let rhs = &f.d_dt() * &g + &f * &g.d_dt();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_dt_matches_central_difference(f in exp_poly(), p in params(), t in -1.0f64..1.0) {
        let h = 1e-5;
        let fd = (f.eval(t + h, &p).unwrap() - f.eval(t - h, &p).unwrap()) / (2.0 * h);
        prop_assert!(close(f.d_dt().eval(t, &p).unwrap(), fd, 1e-6));
    }

    #[test]
    fn product_evaluates_pointwise(f in exp_poly(), g in exp_poly(), p in params(), t in -1.0f64..1.0) {
        let v = (&f * &g).eval(t, &p).unwrap();
        prop_assert!(close(v, f.eval(t, &p).unwrap() * g.eval(t, &p).unwrap(), 1e-10));
    }
}

#[test]
fn damped_pair_solves_the_oscillator_equation() {
    let (u1, u2) = damped_solutions();
    assert!(dho_operator(&u1).is_zero());
    assert!(dho_operator(&u2).is_zero());
    assert_eq!(wronskian(&u1, &u2), ExpPoly::exp(-2, 0));
}

#[test]
fn damped_pair_initial_values() {
    let (u1, u2) = damped_solutions();
    let p = Params::new().with(Symbol::Gamma, 0.4).with(Symbol::Omega, 0.9);
    assert!(u1.eval(0.0, &p).unwrap().norm() < 1e-15);
    assert!((u1.d_dt().eval(0.0, &p).unwrap() - 1.0).norm() < 1e-15);
    assert!((u2.eval(0.0, &p).unwrap() - 1.0).norm() < 1e-15);
    assert!(u2.d_dt().eval(0.0, &p).unwrap().norm() < 1e-15);
}

#[test]
fn single_exponentials_invert() {
    let e = ExpPoly::exp(3, -1).scale(&ScalarPoly::gamma());
    assert_eq!(&e * &e.inverse().unwrap(), ExpPoly::one());
    assert!((ExpPoly::one() + ExpPoly::exp(1, 0)).inverse().is_err());
}
