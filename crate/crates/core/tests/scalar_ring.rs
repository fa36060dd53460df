mod common;

use common::{close, params, scalar};
use dualsym::{ScalarPoly, Symbol};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_is_commutative_and_associative(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &ScalarPoly::zero(), a.clone());
    }

    #[test]
    fn multiplication_is_a_commutative_ring(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &ScalarPoly::one(), a.clone());
    }

    #[test]
    fn eval_is_a_homomorphism(a in scalar(), b in scalar(), p in params()) {
        let (va, vb) = (a.eval(&p).unwrap(), b.eval(&p).unwrap());
        prop_assert!(close((&a + &b).eval(&p).unwrap(), va + vb, 1e-12));
        prop_assert!(close((&a * &b).eval(&p).unwrap(), va * vb, 1e-12));
    }

    #[test]
    fn canonicalization_is_idempotent(a in scalar()) {
        let once = a.canonical();
        prop_assert_eq!(once.canonical(), once.clone());
        prop_assert_eq!(once, a);
    }

    #[test]
    fn display_round_trips(a in scalar()) {
        let back: ScalarPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn specialize_agrees_with_eval(a in scalar(), p in params()) {
        let half = dualsym::GaussianRational::ratio(1, 2);
        let s = a.specialize(Symbol::K, &half).unwrap();
        let q = p.with(Symbol::K, 0.5);
        prop_assert!(close(s.eval(&q).unwrap(), a.eval(&q).unwrap(), 1e-12));
    }
}

#[test]
fn omega_squared_is_stored_expanded() {
    let p = dualsym::Params::new().with(Symbol::Gamma, 0.4).with(Symbol::Omega, 1.0);
    let v = ScalarPoly::omega_sq().eval(&p).unwrap();
    assert!((v.re - 1.04).abs() < 1e-15);
}
