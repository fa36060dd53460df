//! Dynamical invariants of the Caldirola-Kanai oscillator.
//!
//! An operator `O(t)` is invariant under `H` when
//! `dO/dt + (i/hbar)[H, O] = 0`, the time derivative acting on the
//! coefficients only.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::appendix::Generator;
use crate::scalar::{ScalarPoly, Symbol};
use crate::timecoeff::{self, ExpPoly};
use crate::weylop::{VarSpace, WeylOp};

pub fn line() -> VarSpace {
    VarSpace::single("x")
}

/// `-(hbar^2/2m) e^{-gamma t} d_x^2 + (m w^2/2) e^{gamma t} x^2`.
pub fn ck_hamiltonian() -> WeylOp {
    let s = line();
    let kinetic = WeylOp::deriv(&s, 0)
        .pow(2)
        .expect("no time derivative")
        .scale(&ExpPoly::exp(-2, 0).scale(&"-1/2*hbar^2*m^-1".parse().expect("static")));
    let potential = WeylOp::var(&s, 0)
        .pow(2)
        .expect("no time derivative")
        .scale(&ExpPoly::exp(2, 0).scale(&(ScalarPoly::ratio(1, 2) * ScalarPoly::m() * ScalarPoly::omega_sq())));
    kinetic + potential
}

/// Basic invariants built from two independent solutions of the classical
/// equation: `P = -i hbar u2 d_x - m (u2'/W) x`, `X = (u1'/W) x + i hbar (u1/m) d_x`.
pub fn qat_import(u1: &ExpPoly, u2: &ExpPoly) -> Result<(WeylOp, WeylOp)> {
    let w = timecoeff::wronskian(u1, u2);
    if w.is_zero() {
        return Err(Error::NotAUnit("0".into()));
    }
    let w_inv = w.inverse()?;
    let s = line();
    let x = WeylOp::var(&s, 0);
    let dx = WeylOp::deriv(&s, 0);
    let ih = ScalarPoly::i_hbar();
    let inv_m = ScalarPoly::pow(Symbol::M, -1);
    let p = dx.scale(&u2.scale(&-ih.clone())) - x.scale(&(&u2.d_dt() * &w_inv).scale(&ScalarPoly::m()));
    let xop = x.scale(&(&u1.d_dt() * &w_inv)) + dx.scale(&u1.scale(&(&ih * &inv_m)));
    Ok((xop, p))
}

/// `dO/dt + (i/hbar)[H, O]`.
pub fn invariant_residual(o: &WeylOp, h: &WeylOp) -> Result<WeylOp> {
    if o.contains_dt() {
        return Err(Error::ContainsTimeDerivative(o.to_string()));
    }
    let i_over_hbar = ScalarPoly::i() * ScalarPoly::pow(Symbol::Hbar, -1);
    Ok(o.d_dt_coefficients() + h.commutator(o)?.scale_scalar(&i_over_hbar))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub name: String,
    #[serde(serialize_with = "render")]
    pub residual: WeylOp,
    pub pass: bool,
}

fn render<S: serde::Serializer>(op: &WeylOp, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&op.to_string())
}

pub fn check(name: &str, o: &WeylOp, h: &WeylOp) -> Result<InvariantReport> {
    let residual = invariant_residual(o, h)?;
    Ok(InvariantReport { name: name.to_string(), pass: residual.is_zero(), residual })
}

/// Free damped particle: the oscillator Hamiltonian with the potential removed.
pub fn damped_particle_hamiltonian() -> WeylOp {
    let s = line();
    WeylOp::deriv(&s, 0)
        .pow(2)
        .expect("no time derivative")
        .scale(&ExpPoly::exp(-2, 0).scale(&"-1/2*hbar^2*m^-1".parse().expect("static")))
}

/// `(X, P)` for the free damped particle.
pub fn damped_particle_invariants() -> (WeylOp, WeylOp) {
    let s = line();
    (Generator::X.operator(&s), Generator::P(0).operator(&s))
}

/// Invariance checks for the oscillator and the damped particle. The last
/// entry (bare position) is expected to fail.
pub fn standard_checks() -> Result<Vec<(InvariantReport, bool)>> {
    let (u1, u2) = timecoeff::damped_solutions();
    let (x, p) = qat_import(&u1, &u2)?;
    let h = ck_hamiltonian();
    let xp = x.mul(&p)? + p.mul(&x)?;
    let (dx, dp) = damped_particle_invariants();
    let hd = damped_particle_hamiltonian();
    Ok(vec![
        (check("X", &x, &h)?, true),
        (check("P", &p, &h)?, true),
        (check("P^2", &p.mul(&p)?, &h)?, true),
        (check("X^2", &x.mul(&x)?, &h)?, true),
        (check("XP+PX", &xp, &h)?, true),
        (check("damped-particle X", &dx, &hd)?, true),
        (check("damped-particle P", &dp, &hd)?, true),
        (check("x", &WeylOp::var(&line(), 0), &h)?, false),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;
    use crate::timecoeff::Trig;

    fn sp(t: &str) -> ScalarPoly {
        t.parse().unwrap()
    }

    #[test]
    fn hamiltonian_kinetic_coefficient() {
        let h = ck_hamiltonian();
        let key = crate::weylop::MonoKey { der: [2, 0], ..Default::default() };
        assert_eq!(h.coefficient(&key), ExpPoly::exp(-2, 0).scale(&sp("-1/2*hbar^2*m^-1")));
        let adj = h.formal_adjoint().unwrap();
        assert_eq!(adj, h);
    }

    #[test]
    fn undamped_limit_is_the_oscillator() {
        let h = ck_hamiltonian().specialize(Symbol::Gamma, &GaussianRational::zero()).unwrap();
        let s = line();
        let expected = WeylOp::deriv(&s, 0).pow(2).unwrap().scale_scalar(&sp("-1/2*hbar^2*m^-1"))
            + WeylOp::var(&s, 0).pow(2).unwrap().scale_scalar(&sp("1/2*m*Omega^2"));
        assert_eq!(h, expected);
    }

    #[test]
    fn qat_operators_match_closed_forms() {
        let (u1, u2) = timecoeff::damped_solutions();
        let (x, p) = qat_import(&u1, &u2).unwrap();
        let s = line();
        let sin = |a| ExpPoly::from_trig(Trig::Sin, a);
        let cos = |a| ExpPoly::from_trig(Trig::Cos, a);
        let p_expected = WeylOp::deriv(&s, 0).scale(
            &(cos(-1).scale(&sp("2*Omega")) + sin(-1).scale(&sp("gamma"))).scale(&sp("-1/2*i*hbar*Omega^-1")),
        ) + WeylOp::var(&s, 0).scale(&sin(1).scale(&(sp("1/4*m*Omega^-1") * (sp("gamma^2 + 4*Omega^2")))));
        let x_expected = WeylOp::var(&s, 0)
            .scale(&(cos(1).scale(&sp("2*Omega")) - sin(1).scale(&sp("gamma"))).scale(&sp("1/2*Omega^-1")))
            + WeylOp::deriv(&s, 0).scale(&sin(-1).scale(&sp("i*hbar*m^-1*Omega^-1")));
        assert_eq!(p, p_expected);
        assert_eq!(x, x_expected);
        assert_eq!(x.commutator(&p).unwrap(), WeylOp::constant(&s, ScalarPoly::i_hbar()));
    }

    #[test]
    fn all_standard_checks_behave() {
        for (report, expected) in standard_checks().unwrap() {
            assert_eq!(report.pass, expected, "{}: {}", report.name, report.residual);
        }
    }

    #[test]
    fn residual_rejects_time_derivatives() {
        let s = line();
        assert!(matches!(
            invariant_residual(&WeylOp::dt(&s), &ck_hamiltonian()),
            Err(Error::ContainsTimeDerivative(_))
        ));
    }

    #[test]
    fn non_unit_wronskian_is_rejected() {
        // W(t, t^2) = -t^2
        assert!(matches!(qat_import(&ExpPoly::t_pow(1), &ExpPoly::t_pow(2)), Err(Error::NotAUnit(_))));
    }
}
