//! The named structure-constant tables.

use super::LieTable;
use crate::scalar::{ScalarPoly, Symbol};

fn ih() -> ScalarPoly {
    ScalarPoly::i_hbar()
}

fn inv_m() -> ScalarPoly {
    ScalarPoly::pow(Symbol::M, -1)
}

fn w2() -> ScalarPoly {
    ScalarPoly::omega_sq()
}

fn int(n: i64) -> ScalarPoly {
    ScalarPoly::int(n)
}

fn build(name: &str, basis: &[&str], brackets: &[(&str, &str, Vec<(&str, ScalarPoly)>)]) -> LieTable {
    let mut t = LieTable::new(name, basis, "I").expect("static basis");
    for (a, b, terms) in brackets {
        t.set_bracket(a, b, terms).expect("static bracket");
    }
    t
}

pub fn heisenberg_weyl() -> LieTable {
    build("heisenberg-weyl", &["X", "P"], &[("X", "P", vec![("I", ih())])])
}

const EXTENDED: [&str; 7] = ["X", "P", "Qt", "Pi", "H", "G1", "G2"];
const DIAGONAL: [&str; 7] = ["X", "P", "Q", "Pi", "H", "G1", "G2"];

/// The eight-dimensional algebra closed by the conserved oscillator
/// operators and `H = i hbar d/dt`.
pub fn algebra1() -> LieTable {
    let m = ScalarPoly::m;
    let g = ScalarPoly::gamma;
    build(
        "algebra1",
        &EXTENDED,
        &[
            ("X", "P", vec![("I", ih())]),
            ("Qt", "Pi", vec![("G1", int(2) * ih()), ("I", -ih())]),
            ("X", "Qt", vec![("G2", -(ih() * inv_m()))]),
            ("X", "Pi", vec![("G1", ih())]),
            ("P", "Qt", vec![("G1", -ih()), ("G2", ih() * g())]),
            ("P", "Pi", vec![("G2", -(ih() * m() * w2()))]),
            ("H", "X", vec![("Pi", -(ih() * inv_m()))]),
            ("H", "P", vec![("X", int(2) * ih() * m() * w2()), ("Qt", -(ih() * m() * w2()))]),
            ("H", "Qt", vec![("X", int(-2) * ih() * g()), ("P", -(ih() * inv_m())), ("Qt", ih() * g())]),
            (
                "H",
                "Pi",
                vec![("X", int(3) * ih() * m() * w2()), ("Qt", int(-2) * ih() * m() * w2()), ("Pi", -(ih() * g()))],
            ),
            ("H", "G1", vec![("G1", -(ih() * g())), ("G2", int(2) * ih() * w2())]),
            ("H", "G2", vec![("G1", int(-2) * ih()), ("G2", ih() * g()), ("I", int(2) * ih())]),
        ],
    )
}

/// One-parameter family of central extensions, symbolic in `k`.
pub fn a_k() -> LieTable {
    let m = ScalarPoly::m;
    let g = ScalarPoly::gamma;
    let k = ScalarPoly::k;
    build(
        "a_k",
        &EXTENDED,
        &[
            ("X", "P", vec![("I", ih())]),
            ("Qt", "Pi", vec![("G1", int(2) * ih()), ("I", -(ih() * k()))]),
            ("X", "Qt", vec![("G2", -(ih() * inv_m()))]),
            ("X", "Pi", vec![("G1", ih())]),
            ("P", "Qt", vec![("G1", -ih()), ("G2", ih() * g()), ("I", ih() * (k() - int(1)))]),
            ("P", "Pi", vec![("G2", -(ih() * m() * w2()))]),
            ("H", "X", vec![("Pi", -(ih() * inv_m()))]),
            ("H", "P", vec![("X", int(2) * ih() * m() * w2()), ("Qt", -(ih() * m() * w2()))]),
            ("H", "Qt", vec![("X", int(-2) * ih() * g()), ("P", -(ih() * inv_m())), ("Qt", ih() * g())]),
            (
                "H",
                "Pi",
                vec![("X", int(3) * ih() * m() * w2()), ("Qt", int(-2) * ih() * m() * w2()), ("Pi", -(ih() * g()))],
            ),
            ("H", "G1", vec![("G1", -(ih() * g())), ("G2", int(2) * ih() * w2())]),
            ("H", "G2", vec![("G1", int(-2) * ih()), ("G2", ih() * g()), ("I", ih() * (int(1) + k()))]),
        ],
    )
}

/// The family after the shift `Q = Qt + (k - 1) X`.
pub fn a_k_diagonal() -> LieTable {
    let m = ScalarPoly::m;
    let g = ScalarPoly::gamma;
    let k = ScalarPoly::k;
    build(
        "a_k-diagonal",
        &DIAGONAL,
        &[
            ("X", "P", vec![("I", ih())]),
            ("Q", "Pi", vec![("G1", ih() * (k() + int(1))), ("I", -(ih() * k()))]),
            ("X", "Q", vec![("G2", -(ih() * inv_m()))]),
            ("X", "Pi", vec![("G1", ih())]),
            ("P", "Q", vec![("G1", -ih()), ("G2", ih() * g())]),
            ("P", "Pi", vec![("G2", -(ih() * m() * w2()))]),
            ("H", "X", vec![("Pi", -(ih() * inv_m()))]),
            ("H", "P", vec![("X", ih() * m() * w2() * (int(1) + k())), ("Q", -(ih() * m() * w2()))]),
            (
                "H",
                "Q",
                vec![
                    ("X", -(ih() * g() * (int(1) + k()))),
                    ("P", -(ih() * inv_m())),
                    ("Q", ih() * g()),
                    ("Pi", ih() * inv_m() * (int(1) - k())),
                ],
            ),
            (
                "H",
                "Pi",
                vec![
                    ("X", ih() * m() * w2() * (int(2) * k() + int(1))),
                    ("Q", int(-2) * ih() * m() * w2()),
                    ("Pi", -(ih() * g())),
                ],
            ),
            ("H", "G1", vec![("G1", -(ih() * g())), ("G2", int(2) * ih() * w2())]),
            ("H", "G2", vec![("G1", int(-2) * ih()), ("G2", ih() * g()), ("I", ih() * (int(1) + k()))]),
        ],
    )
}

/// The `k = -1` member, where time is not a conjugate variable.
pub fn a_minus_one() -> LieTable {
    let m = ScalarPoly::m;
    let g = ScalarPoly::gamma;
    build(
        "a_-1",
        &DIAGONAL,
        &[
            ("X", "P", vec![("I", ih())]),
            ("Q", "Pi", vec![("I", ih())]),
            ("X", "Q", vec![("G2", -(ih() * inv_m()))]),
            ("X", "Pi", vec![("G1", ih())]),
            ("P", "Q", vec![("G1", -ih()), ("G2", ih() * g())]),
            ("P", "Pi", vec![("G2", -(ih() * m() * w2()))]),
            ("H", "X", vec![("Pi", -(ih() * inv_m()))]),
            ("H", "P", vec![("Q", -(ih() * m() * w2()))]),
            ("H", "Q", vec![("P", -(ih() * inv_m())), ("Pi", int(2) * ih() * inv_m()), ("Q", ih() * g())]),
            (
                "H",
                "Pi",
                vec![("X", -(ih() * m() * w2())), ("Q", int(-2) * ih() * m() * w2()), ("Pi", -(ih() * g()))],
            ),
            ("H", "G1", vec![("G1", -(ih() * g())), ("G2", int(2) * ih() * w2())]),
            ("H", "G2", vec![("G1", int(-2) * ih()), ("G2", ih() * g())]),
        ],
    )
}

/// Reduced 5+1 algebra with the gauge generators removed.
pub fn b_tilde() -> LieTable {
    let m = ScalarPoly::m;
    let g = ScalarPoly::gamma;
    build(
        "b-tilde",
        &["X", "P", "Q", "Pi", "H"],
        &[
            ("X", "P", vec![("I", ih())]),
            ("Q", "Pi", vec![("I", ih())]),
            ("H", "X", vec![("Pi", -(ih() * inv_m()))]),
            ("H", "P", vec![("Q", -(ih() * m() * w2()))]),
            ("H", "Q", vec![("P", -(ih() * inv_m())), ("Pi", int(2) * ih() * inv_m()), ("Q", ih() * g())]),
            (
                "H",
                "Pi",
                vec![("X", -(ih() * m() * w2())), ("Q", int(-2) * ih() * m() * w2()), ("Pi", -(ih() * g()))],
            ),
        ],
    )
}

/// Dual-oscillator algebra of the two canonical pairs and the Hamiltonian.
pub fn bateman() -> LieTable {
    let m = ScalarPoly::m;
    let g = ScalarPoly::gamma;
    let half = || ScalarPoly::ratio(1, 2);
    let o2 = || ScalarPoly::pow(Symbol::Omega, 2);
    build(
        "bateman",
        &["x", "p_x", "y", "p_y", "H"],
        &[
            ("x", "p_x", vec![("I", ih())]),
            ("y", "p_y", vec![("I", ih())]),
            ("H", "x", vec![("p_y", -(ih() * inv_m())), ("x", ih() * g() * half())]),
            ("H", "p_x", vec![("p_x", -(ih() * g() * half())), ("y", ih() * m() * o2())]),
            ("H", "y", vec![("p_x", -(ih() * inv_m())), ("y", -(ih() * g() * half()))]),
            ("H", "p_y", vec![("p_y", ih() * g() * half()), ("x", ih() * m() * o2())]),
        ],
    )
}

/// Every shipped table, in report order.
pub fn all() -> Vec<LieTable> {
    vec![heisenberg_weyl(), algebra1(), a_k(), a_k_diagonal(), a_minus_one(), b_tilde(), bateman()]
}
