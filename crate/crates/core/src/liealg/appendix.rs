//! The infinite-dimensional algebra of the free damped particle, verified on
//! finite truncations `0 <= n <= N`.

use std::fmt;

use super::{LieTable, Realization};
use crate::error::Result;
use crate::scalar::ScalarPoly;
use crate::timecoeff::ExpPoly;
use crate::weylop::{VarSpace, WeylOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `i hbar e^{gamma t} d/dt`
    HG,
    /// `i hbar d/dt`
    HDP,
    /// `x + (i hbar / m gamma)(1 - e^{-gamma t}) d/dx`
    X,
    /// `-i hbar e^{-gamma n t} d/dx`
    P(u32),
    /// `i e^{-gamma n t}`; `Y(0)` is central
    Y(u32),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::HG => f.write_str("HG"),
            Generator::HDP => f.write_str("HDP"),
            Generator::X => f.write_str("X"),
            Generator::P(n) => write!(f, "P{n}"),
            Generator::Y(n) => write!(f, "Y{n}"),
        }
    }
}

impl Generator {
    fn level(self) -> u32 {
        match self {
            Generator::P(n) | Generator::Y(n) => n,
            _ => 0,
        }
    }

    pub fn operator(self, space: &VarSpace) -> WeylOp {
        let ih = ScalarPoly::i_hbar();
        match self {
            Generator::HG => WeylOp::dt(space).scale(&ExpPoly::exp(2, 0).scale(&ih)),
            Generator::HDP => WeylOp::dt(space).scale_scalar(&ih),
            Generator::X => {
                let coeff = (ExpPoly::one() - ExpPoly::exp(-2, 0))
                    .scale(&"i*hbar*m^-1*gamma^-1".parse::<ScalarPoly>().expect("static"));
                WeylOp::var(space, 0) + WeylOp::deriv(space, 0).scale(&coeff)
            }
            Generator::P(n) => WeylOp::deriv(space, 0).scale(&ExpPoly::exp(-2 * n as i32, 0).scale(&-ih)),
            Generator::Y(n) => WeylOp::scalar(space, ExpPoly::exp(-2 * n as i32, 0).scale(&ScalarPoly::i())),
        }
    }
}

fn rule(a: Generator, b: Generator) -> Option<Vec<(Generator, ScalarPoly)>> {
    use Generator::*;
    let ih = ScalarPoly::i_hbar;
    let g = ScalarPoly::gamma;
    let n_of = |n: u32| ScalarPoly::int(n as i64);
    let ih_over_m = || &ih() * &ScalarPoly::pow(crate::scalar::Symbol::M, -1);
    let out = match (a, b) {
        (HG, P(n)) if n > 0 => vec![(P(n - 1), -(ih() * g() * n_of(n)))],
        (HDP, P(n)) => vec![(P(n), -(ih() * g() * n_of(n)))],
        (HG, X) => vec![(P(0), -ih_over_m())],
        (HDP, X) => vec![(P(1), -ih_over_m())],
        (X, P(n)) => vec![(Y(n), ScalarPoly::hbar())],
        (HDP, Y(n)) => vec![(Y(n), -(ih() * g() * n_of(n)))],
        (HG, Y(n)) if n > 0 => vec![(Y(n - 1), -(ih() * g() * n_of(n)))],
        (HDP, HG) => vec![(HG, ih() * g())],
        _ => return None,
    };
    Some(out)
}

/// `[a, b]` in the full algebra, using antisymmetry for the reversed rules.
pub fn bracket(a: Generator, b: Generator) -> Vec<(Generator, ScalarPoly)> {
    let mut terms = if let Some(t) = rule(a, b) {
        t
    } else if let Some(t) = rule(b, a) {
        t.into_iter().map(|(g, c)| (g, -c)).collect()
    } else {
        Vec::new()
    };
    terms.retain(|(_, c)| !c.is_zero());
    terms
}

/// Generators kept at truncation level `n_max`, central `Y0` last.
pub fn generators(n_max: u32) -> Vec<Generator> {
    let mut g = vec![Generator::HG, Generator::HDP, Generator::X];
    g.extend((0..=n_max).map(Generator::P));
    g.extend((1..=n_max).map(Generator::Y));
    g.push(Generator::Y(0));
    g
}

#[derive(Clone, Debug)]
pub struct Truncation {
    pub n_max: u32,
    pub table: LieTable,
    pub realization: Realization,
    /// Pairs whose bracket leaves the truncation, with the offending generator.
    pub flagged: Vec<(String, String, String)>,
}

pub fn appendix_truncation(n_max: u32) -> Result<Truncation> {
    if n_max == 0 {
        return Err(crate::error::Error::InvalidParameters("truncation level must be at least 1".into()));
    }
    let gens = generators(n_max);
    let names: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    let basis: Vec<&str> = names[..names.len() - 1].iter().map(String::as_str).collect();
    let mut table = LieTable::new(&format!("appendix-{n_max}"), &basis, "Y0")?;
    let space = VarSpace::single("x");
    let mut realization = Realization::new(&space);
    for g in &gens {
        realization.insert(&g.to_string(), g.operator(&space))?;
    }
    let mut flagged = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let terms = bracket(a, b);
            if let Some((outside, _)) = terms.iter().find(|(g, _)| g.level() > n_max) {
                flagged.push((a.to_string(), b.to_string(), outside.to_string()));
                continue;
            }
            let named: Vec<(String, ScalarPoly)> = terms.iter().map(|(g, c)| (g.to_string(), c.clone())).collect();
            let refs: Vec<(&str, ScalarPoly)> = named.iter().map(|(n, c)| (n.as_str(), c.clone())).collect();
            table.set_bracket(&a.to_string(), &b.to_string(), &refs)?;
        }
    }
    Ok(Truncation { n_max, table, realization, flagged })
}

#[derive(Clone, Debug)]
pub struct AppendixReport {
    pub n_max: u32,
    pub generators: usize,
    pub pairs: usize,
    pub failures: Vec<(String, String, WeylOp)>,
    pub flagged: Vec<(String, String, String)>,
    pub jacobi_violations: usize,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.jacobi_violations == 0
    }
}

/// Checks every pair of the truncation against the operator realization.
pub fn verify_truncation(n_max: u32) -> Result<AppendixReport> {
    let tr = appendix_truncation(n_max)?;
    let mismatches = tr.table.verify_realization(&tr.realization)?;
    let is_flagged = |a: &str, b: &str| tr.flagged.iter().any(|(x, y, _)| (x == a && y == b) || (x == b && y == a));
    let failures = mismatches
        .into_iter()
        .filter(|m| !is_flagged(&m.pair.0, &m.pair.1))
        .map(|m| (m.pair.0, m.pair.1, m.residual))
        .collect();
    let count = tr.table.dim() + 1;
    let jacobi = tr.table.jacobi_check();
    let jacobi_violations = jacobi
        .iter()
        .filter(|v| {
            !(is_flagged(&v.triple[0], &v.triple[1])
                || is_flagged(&v.triple[1], &v.triple[2])
                || is_flagged(&v.triple[0], &v.triple[2]))
        })
        .count();
    Ok(AppendixReport {
        n_max,
        generators: count,
        pairs: count * (count - 1) / 2,
        failures,
        flagged: tr.flagged,
        jacobi_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncations_verify() {
        for n in 1..=3 {
            let r = verify_truncation(n).unwrap();
            assert!(r.passed(), "N={n}: {:?}", r.failures);
            assert!(r.flagged.is_empty());
        }
        assert_eq!(verify_truncation(3).unwrap().pairs, 55);
    }

    #[test]
    fn dilation_of_p1() {
        let s = VarSpace::single("x");
        let lhs = Generator::HDP.operator(&s).commutator(&Generator::P(1).operator(&s)).unwrap();
        let rhs = Generator::P(1).operator(&s).scale_scalar(&-(ScalarPoly::i_hbar() * ScalarPoly::gamma()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn position_momentum_gives_central_unit() {
        let s = VarSpace::single("x");
        let lhs = Generator::X.operator(&s).commutator(&Generator::P(0).operator(&s)).unwrap();
        assert_eq!(lhs, WeylOp::constant(&s, ScalarPoly::hbar() * ScalarPoly::i()));
    }

    #[test]
    fn zero_level_is_rejected() {
        assert!(appendix_truncation(0).is_err());
    }
}
