//! Operator realizations of the tables in [`super::tables`].

use super::Realization;
use crate::error::Result;
use crate::scalar::{ScalarPoly, Symbol};
use crate::spectra;
use crate::timecoeff::{ExpPoly, Trig};
use crate::weylop::{VarSpace, WeylOp};

fn sin(a: i32) -> ExpPoly {
    ExpPoly::from_trig(Trig::Sin, a)
}

fn cos(a: i32) -> ExpPoly {
    ExpPoly::from_trig(Trig::Cos, a)
}

fn sp(text: &str) -> ScalarPoly {
    text.parse().expect("static coefficient")
}

/// The generators of the eight-dimensional algebra on the line, with
/// `H = i hbar d/dt`.
pub fn algebra1_realization() -> Realization {
    let s = VarSpace::single("x");
    let x = WeylOp::var(&s, 0);
    let dx = WeylOp::deriv(&s, 0);
    let ih = ScalarPoly::i_hbar();
    let m_w2_over_omega = &(ScalarPoly::m() * ScalarPoly::omega_sq()) * &ScalarPoly::pow(Symbol::Omega, -1);
    let g_2o = sp("1/2*gamma*Omega^-1");

    let p = dx.scale(&(cos(-1) + sin(-1).scale(&g_2o)).scale(&-ih.clone()))
        + x.scale(&sin(1).scale(&m_w2_over_omega));
    let xop = x.scale(&(cos(1) - sin(1).scale(&g_2o))) + dx.scale(&sin(-1).scale(&sp("i*hbar*m^-1*Omega^-1")));
    let pi = dx.scale(&(cos(-1) - sin(-1).scale(&g_2o)).scale(&-ih.clone()))
        + x.scale(&sin(1).scale(&m_w2_over_omega));
    let qt = x.scale(&(cos(1) - sin(1).scale(&sp("3/2*gamma*Omega^-1"))))
        + dx.scale(&sin(-1).scale(&sp("i*hbar*m^-1*Omega^-1")));

    let (s0, c0) = (sin(0), cos(0));
    let cos2 = &c0 * &c0 - &s0 * &s0;
    let sin2 = (&s0 * &c0).scale(&ScalarPoly::int(2));
    let g1 = (ExpPoly::constant(ScalarPoly::omega_sq() * ScalarPoly::int(-4))
        + cos2.scale(&ScalarPoly::pow(Symbol::Gamma, 2))
        + sin2.scale(&sp("2*gamma*Omega")))
    .scale(&sp("-1/4*Omega^-2"));
    let g2 = (&s0 * &s0).scale(&sp("gamma*Omega^-2"));

    let mut r = Realization::new(&s);
    for (name, op) in [
        ("X", xop),
        ("P", p),
        ("Qt", qt),
        ("Pi", pi),
        ("H", WeylOp::dt(&s).scale_scalar(&ih)),
        ("G1", WeylOp::scalar(&s, g1)),
        ("G2", WeylOp::scalar(&s, g2)),
    ] {
        r.insert(name, op).expect("single space");
    }
    r
}

/// `H = (1/m) Pi P - (gamma/2)(Q Pi + Pi Q) - Pi^2/m - m w^2 X Q - m w^2 Q^2`.
pub fn reduced_hamiltonian(x: &WeylOp, p: &WeylOp, q: &WeylOp, pi: &WeylOp) -> Result<WeylOp> {
    let inv_m = ScalarPoly::pow(Symbol::M, -1);
    let half_g = sp("1/2*gamma");
    let m_w2 = ScalarPoly::m() * ScalarPoly::omega_sq();
    Ok(pi.mul(p)?.scale_scalar(&inv_m)
        - (q.mul(pi)? + pi.mul(q)?).scale_scalar(&half_g)
        - pi.mul(pi)?.scale_scalar(&inv_m)
        - x.mul(q)?.scale_scalar(&m_w2)
        - q.mul(q)?.scale_scalar(&m_w2))
}

/// `(X, P, Q, Pi)` in terms of the Bateman variables.
pub fn reduced_from_bateman(
    x: &WeylOp,
    px: &WeylOp,
    y: &WeylOp,
    py: &WeylOp,
) -> (WeylOp, WeylOp, WeylOp, WeylOp) {
    let half = ScalarPoly::ratio(1, 2);
    let inv_mg = sp("m^-1*gamma^-1");
    let half_mg = sp("1/2*m*gamma");
    let m_w2_g = &(ScalarPoly::m() * ScalarPoly::omega_sq()) * &ScalarPoly::pow(Symbol::Gamma, -1);
    let xx = y + &py.scale_scalar(&inv_mg) + x.scale_scalar(&half);
    let pp = px - &y.scale_scalar(&half_mg) - x.scale_scalar(&m_w2_g);
    let qq = x.scale_scalar(&half) - y.clone() - py.scale_scalar(&inv_mg);
    let pi = px + &y.scale_scalar(&half_mg) - x.scale_scalar(&m_w2_g);
    (xx, pp, qq, pi)
}

/// The reduced algebra in the mixed `(x, p_y)` representation, with its
/// Hamiltonian built from the quadratic expression in `X, P, Q, Pi`.
pub fn b_tilde_realization() -> Result<Realization> {
    let [x, px, y, py] = spectra::basic_operators();
    let (xx, pp, qq, pi) = reduced_from_bateman(&x, &px, &y, &py);
    let h = reduced_hamiltonian(&xx, &pp, &qq, &pi)?;
    Realization::new(&spectra::mixed_space())
        .with("X", xx)?
        .with("P", pp)?
        .with("Q", qq)?
        .with("Pi", pi)?
        .with("H", h)
}

/// The Bateman algebra in the mixed representation.
pub fn bateman_realization() -> Result<Realization> {
    let [x, px, y, py] = spectra::basic_operators();
    Realization::new(&spectra::mixed_space())
        .with("x", x)?
        .with("p_x", px)?
        .with("y", y)?
        .with("p_y", py)?
        .with("H", spectra::bateman_h_firstorder())
}
