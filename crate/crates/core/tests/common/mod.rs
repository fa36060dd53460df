#![allow(dead_code)]

use dualsym::{ExpPoly, GaussianRational, MonoKey, Params, ScalarPoly, Symbol, VarSpace, WeylOp};
use num::complex::Complex64;
use proptest::prelude::*;

pub fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| {
        &GaussianRational::ratio(a, b) + &(&GaussianRational::i() * &GaussianRational::ratio(c, d))
    })
}

pub fn exponents() -> impl Strategy<Value = [i32; 5]> {
    (-2i32..=2, -2i32..=2, -2i32..=2, -2i32..=2, 0i32..=2).prop_map(|(a, b, c, d, e)| [a, b, c, d, e])
}

pub fn scalar() -> impl Strategy<Value = ScalarPoly> {
    prop::collection::vec((gaussian(), exponents()), 0..4).prop_map(|terms| {
        terms.into_iter().fold(ScalarPoly::zero(), |acc, (c, e)| acc + ScalarPoly::monomial(c, e))
    })
}

/// Parameter values away from zero so negative powers stay tame.
pub fn params() -> impl Strategy<Value = Params> {
    (0.5f64..2.0, 0.5f64..2.0, 0.2f64..1.5, 0.5f64..2.0, -2.0f64..2.0).prop_map(|(m, h, g, o, k)| {
        Params::new().with(Symbol::M, m).with(Symbol::Hbar, h).with(Symbol::Gamma, g).with(Symbol::Omega, o).with(Symbol::K, k)
    })
}

/// Small coefficients: a constant or a single symbol power.
pub fn small_scalar() -> impl Strategy<Value = ScalarPoly> {
    (gaussian(), prop::sample::select(vec![Symbol::M, Symbol::Hbar, Symbol::Gamma, Symbol::Omega]), -1i32..=1)
        .prop_map(|(c, s, e)| ScalarPoly::constant(c) * ScalarPoly::pow(s, e))
}

pub fn exp_poly() -> impl Strategy<Value = ExpPoly> {
    prop::collection::vec((small_scalar(), -2i32..=2, -2i32..=2, 0u32..=2), 0..4).prop_map(|terms| {
        terms.into_iter().fold(ExpPoly::zero(), |acc, (c, a, b, p)| acc + ExpPoly::term(c, a, b, p))
    })
}

pub fn plane() -> VarSpace {
    VarSpace::pair("x", "p")
}

/// Operators on two variables without `d/dt`, total degree at most 2 per slot.
pub fn weyl_op() -> impl Strategy<Value = WeylOp> {
    prop::collection::vec((small_scalar(), 0u32..=2, 0u32..=1, 0u32..=1, 0u32..=2, -1i32..=1), 0..4).prop_map(
        |terms| {
            let s = plane();
            terms.into_iter().fold(WeylOp::zero(&s), |acc, (c, m0, m1, d0, d1, a)| {
                let key = MonoKey { mult: [m0, m1], der: [d0, d1], dt: 0 };
                acc + WeylOp::monomial(&s, key, ExpPoly::term(c, a, 0, 0))
            })
        },
    )
}

pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}
