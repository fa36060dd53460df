//! Named verification suites: ordered lists of pass/fail checks.
//!
//! Every random draw comes from `ChaCha8Rng` seeded by [`SuiteConfig::seed`]
//! with one stream per sample index, so reports do not depend on thread
//! scheduling.

use std::fmt;
use std::str::FromStr;

use num::complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classical::{self, canonical, Oscillator, PhaseState};
use crate::error::{Error, Result};
use crate::invariants;
use crate::liealg::{appendix, realizations, tables, LieTable, Realization};
use crate::scalar::{GaussianRational, ScalarPoly, Symbol};
use crate::spectra::{self, EigenFunction, Labels, Regime, SeedFunction, SpectralSetup};
use crate::weylop::WeylOp;

pub const ENERGY_DRIFT_LIMIT: f64 = 1e-9;
pub const DUAL_RESIDUAL_LIMIT: f64 = 1e-8;
pub const SYMPLECTIC_LIMIT: f64 = 1e-10;
pub const REDUCTION_LIMIT: f64 = 1e-7;
pub const MIRROR_LIMIT: f64 = 1e-6;
pub const EIGEN_LIMIT: f64 = 1e-9;
pub const GRAM_LIMIT: f64 = 1e-6;
pub const PHASE_LIMIT: f64 = 1e-8;
pub const SCHRODINGER_LIMIT: f64 = 1e-6;
pub const CANONICAL_SAMPLES: usize = 50;
pub const SPECTRAL_DRAWS: usize = 100;
pub const SCHRODINGER_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Algebras,
    Invariants,
    BatemanRep,
    Canonical,
    Spectra,
    Appendix,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Algebras, Suite::Invariants, Suite::BatemanRep, Suite::Canonical, Suite::Spectra, Suite::Appendix];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebras => "algebras",
            Suite::Invariants => "invariants",
            Suite::BatemanRep => "bateman-rep",
            Suite::Canonical => "canonical",
            Suite::Spectra => "spectra",
            Suite::Appendix => "appendix",
            Suite::All => "all",
        }
    }

    /// Human title used as a section heading.
    pub fn title(self) -> &'static str {
        match self {
            Suite::Algebras => "Symmetry algebras",
            Suite::Invariants => "Dynamical invariants",
            Suite::BatemanRep => "Bateman representation",
            Suite::Canonical => "Classical Bateman dynamics",
            Suite::Spectra => "Spectra",
            Suite::Appendix => "Infinite-dimensional algebra",
            Suite::All => "All suites",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse { input: s.into(), reason: "unknown suite".into() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub m: f64,
    pub hbar: f64,
    pub gamma: f64,
    pub omega: f64,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { m: 1.0, hbar: 1.0, gamma: 0.4, omega: 1.0, tol: 1e-10, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub config: SuiteConfig,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

struct Out {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Out {
    fn new(suite: Suite) -> Self {
        Self { suite: suite.name(), checks: Vec::new() }
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { suite: self.suite, name: name.into(), pass, detail: detail.into() });
    }

    /// Records an error as a failed check.
    fn result<T>(&mut self, name: &str, r: Result<T>, f: impl FnOnce(T) -> (bool, String)) {
        match r {
            Ok(v) => {
                let (pass, detail) = f(v);
                self.push(name, pass, detail);
            }
            Err(e) => self.push(name, false, format!("error: {e}")),
        }
    }

    fn bound(&mut self, name: &str, value: Result<f64>, limit: f64) {
        self.result(name, value, |v| (v <= limit, format!("{v:.3e} <= {limit:.0e}")));
    }
}

pub fn run(suite: Suite, config: &SuiteConfig) -> Report {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let checks = suites.par_iter().map(|s| run_one(*s, config)).collect::<Vec<_>>().concat();
    Report { suite: suite.name(), config: *config, checks }
}

fn run_one(suite: Suite, config: &SuiteConfig) -> Vec<Check> {
    let mut out = Out::new(suite);
    match suite {
        Suite::Algebras => algebras(&mut out),
        Suite::Invariants => invariant_checks(&mut out),
        Suite::BatemanRep => bateman_rep(&mut out),
        Suite::Canonical => canonical_checks(&mut out, config),
        Suite::Spectra => spectra_checks(&mut out, config),
        Suite::Appendix => appendix_checks(&mut out),
        Suite::All => unreachable!("expanded by run"),
    }
    out.checks
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn realization_check(out: &mut Out, table: &LieTable, r: Result<Realization>) {
    let name = format!("{} realization", table.name());
    let r = r.and_then(|r| table.verify_realization(&r));
    out.result(&name, r, |m| {
        let pairs = table.dim() * (table.dim() + 1) / 2;
        if m.is_empty() {
            (true, format!("{pairs} brackets exact"))
        } else {
            let list: Vec<String> = m.iter().map(|x| format!("[{}, {}]", x.pair.0, x.pair.1)).collect();
            (false, format!("mismatch at {}", list.join(" ")))
        }
    });
}

fn table_match(out: &mut Out, name: &str, got: Result<LieTable>, want: &LieTable) {
    out.result(name, got, |t| {
        if t.same_structure(want) {
            (true, format!("equals {}", want.name()))
        } else {
            let d = t.diff(want).map(|d| d.len()).unwrap_or(usize::MAX);
            (false, format!("{d} brackets differ from {}", want.name()))
        }
    });
}

fn algebras(out: &mut Out) {
    let all = tables::all();
    let jac: Vec<_> = all.par_iter().map(|t| t.jacobi_check()).collect();
    for (t, v) in all.iter().zip(jac) {
        let n = t.dim();
        out.push(
            format!("{} jacobi", t.name()),
            v.is_empty(),
            format!("{} triples, {} violations", n * (n - 1) * (n - 2) / 6, v.len()),
        );
    }
    let hw = invariants::qat_import(&crate::timecoeff::damped_solutions().0, &crate::timecoeff::damped_solutions().1)
        .and_then(|(x, p)| Realization::new(&invariants::line()).with("X", x)?.with("P", p));
    realization_check(out, &tables::heisenberg_weyl(), hw);
    realization_check(out, &tables::algebra1(), Ok(realizations::algebra1_realization()));
    realization_check(out, &tables::b_tilde(), realizations::b_tilde_realization());
    realization_check(out, &tables::bateman(), realizations::bateman_realization());

    let one = GaussianRational::one();
    table_match(out, "a_k at k=1", tables::a_k().specialize(Symbol::K, &one), &tables::algebra1());
    table_match(
        out,
        "a_k diagonal at k=-1",
        tables::a_k_diagonal().specialize(Symbol::K, &GaussianRational::from_int(-1)),
        &tables::a_minus_one(),
    );
    table_match(
        out,
        "shift Q = Qt + (k-1) X",
        tables::a_k().shift_generator("Qt", "Q", &[("X", ScalarPoly::k() - ScalarPoly::one())]),
        &tables::a_k_diagonal(),
    );
    table_match(
        out,
        "gauge reduction of a_-1",
        tables::a_minus_one().gauge_reduce(&["G1", "G2"], "H", "b-tilde"),
        &tables::b_tilde(),
    );
    let k2 = tables::a_k_diagonal()
        .specialize(Symbol::K, &GaussianRational::from_int(2))
        .and_then(|t| t.gauge_reduce(&["G1", "G2"], "H", "x"));
    out.push(
        "gauge reduction refused at k=2",
        matches!(k2, Err(Error::GaugeInconsistent(_))),
        match k2 {
            Ok(_) => "unexpectedly reduced".to_string(),
            Err(e) => e.to_string(),
        },
    );
}

fn invariant_checks(out: &mut Out) {
    let (u1, u2) = crate::timecoeff::damped_solutions();
    let xp = invariants::qat_import(&u1, &u2).and_then(|(x, p)| x.commutator(&p));
    out.result("[X, P] = i hbar", xp, |c| {
        let want = WeylOp::constant(&invariants::line(), ScalarPoly::i_hbar());
        (c == want, format!("[X, P] = {c}"))
    });
    let w = crate::timecoeff::wronskian(&u1, &u2);
    let want = crate::timecoeff::ExpPoly::exp(-2, 0);
    out.push("wronskian = e^{-gamma t}", w == want, format!("W = {w}"));
    match invariants::standard_checks() {
        Ok(list) => {
            for (r, expected) in list {
                let name = if expected { format!("{} invariant", r.name) } else { format!("{} not invariant", r.name) };
                out.push(name, r.pass == expected, format!("residual = {}", r.residual));
            }
        }
        Err(e) => out.push("standard invariants", false, format!("error: {e}")),
    }
}

fn bateman_rep(out: &mut Out) {
    let h = spectra::bateman_h_firstorder();
    let (h_omega, d) = spectra::split_operators();
    let sum = h_omega.clone() + d.clone();
    out.push("H = H_Omega + D", sum == h, format!("H = {h}"));
    for (name, a, b) in [("[H_Omega, D] = 0", &h_omega, &d), ("[H, H_Omega] = 0", &h, &h_omega), ("[H, D] = 0", &h, &d)]
    {
        out.result(name, a.commutator(b), |c| (c.is_zero(), format!("= {c}")));
    }
    out.result("H formally Hermitian", h.formal_adjoint(), |a| {
        let diff = a - h.clone();
        (diff.is_zero(), format!("H^dagger - H = {diff}"))
    });
    realization_check(out, &tables::bateman(), realizations::bateman_realization());
    realization_check(out, &tables::b_tilde(), realizations::b_tilde_realization());
    let reduced = realizations::b_tilde_realization().map(|r| r.get("H").cloned());
    out.result("reduced H equals Bateman H", reduced, |r| match r {
        Some(op) => (op == h, "quadratic form in X, P, Q, Pi".to_string()),
        None => (false, "missing H".to_string()),
    });
}

fn canonical_checks(out: &mut Out, c: &SuiteConfig) {
    let osc = match Oscillator::new(c.m, c.gamma, c.omega) {
        Ok(o) => o,
        Err(e) => {
            out.push("parameters", false, format!("error: {e}"));
            return;
        }
    };
    let t_end = if c.gamma > 0.0 { 10.0 / c.gamma } else { 20.0 };
    let undamped = Oscillator { gamma: 0.0, ..osc };
    let mut rng = rng_for(c.seed, 0);
    let generic = PhaseState::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        0.0,
    );
    let runs = [
        ("undamped", undamped, PhaseState::new(1.0, 0.0, 1.0, 0.0, 0.0), 20.0),
        ("damped", osc, PhaseState::new(1.0, 0.0, 0.0, 1.0, 0.0), t_end),
        ("damped random start", osc, generic, t_end),
    ];
    let trajs: Vec<_> = runs.par_iter().map(|(_, o, s0, te)| classical::integrate(o, s0, *te, c.tol)).collect();
    for ((label, _, _, te), traj) in runs.iter().zip(trajs) {
        let traj = match traj {
            Ok(t) => t,
            Err(e) => {
                out.push(format!("{label} integration"), false, format!("error: {e}"));
                continue;
            }
        };
        out.bound(&format!("{label} energy drift over [0, {te}]"), Ok(traj.relative_energy_drift()), ENERGY_DRIFT_LIMIT);
        let d = classical::dual_residuals(&traj);
        out.bound(&format!("{label} pointwise dual residual"), Ok(d.pointwise), DUAL_RESIDUAL_LIMIT);
        out.bound(&format!("{label} x closed-form deviation"), Ok(d.x_deviation), DUAL_RESIDUAL_LIMIT);
        out.bound(&format!("{label} y closed-form deviation"), Ok(d.y_deviation), DUAL_RESIDUAL_LIMIT);
        out.bound(&format!("{label} time-reversal mirror"), classical::mirror_check(&traj), MIRROR_LIMIT);
    }

    let samples: Vec<PhaseState> = (0..CANONICAL_SAMPLES)
        .map(|i| {
            let mut r = rng_for(c.seed, 1 + i as u64);
            PhaseState::new(
                r.gen_range(-2.0..2.0),
                r.gen_range(-2.0..2.0),
                r.gen_range(-2.0..2.0),
                r.gen_range(-2.0..2.0),
                r.gen_range(0.0..t_end),
            )
        })
        .collect();
    let worst = |f: &(dyn Fn(&PhaseState) -> Result<f64> + Sync)| -> Result<f64> {
        let v: Result<Vec<f64>> = samples.par_iter().map(f).collect();
        Ok(v?.into_iter().fold(0.0, f64::max))
    };
    out.bound(
        &format!("symplectic jacobian at {CANONICAL_SAMPLES} samples"),
        worst(&|s| canonical::symplectic_defect(&osc, s.t)),
        SYMPLECTIC_LIMIT,
    );
    out.bound(
        &format!("H' vector field at {CANONICAL_SAMPLES} samples"),
        worst(&|s| canonical::vector_field_defect(&osc, s)),
        SYMPLECTIC_LIMIT,
    );
    let red = canonical::constrained_reduction_check(&osc, 1.0, 0.0, t_end, c.tol);
    out.result("constrained reduction x0=1 v0=0", red, |r| {
        (
            r.max_deviation <= REDUCTION_LIMIT,
            format!("{:.3e} <= {REDUCTION_LIMIT:.0e} (constraint {:.3e})", r.max_deviation, r.max_constraint),
        )
    });
    let zero = canonical::constrained_reduction_check(&osc, 0.0, 0.0, t_end, c.tol);
    out.result("constrained reduction from rest", zero, |r| {
        (r.max_deviation == 0.0 && r.max_constraint == 0.0, format!("{:.3e}", r.max_deviation))
    });
}

/// Setups for the three regimes. The configured one keeps its own frequency;
/// the others use `Omega = 1` and `Omega~ = 0.3`.
pub fn regime_setups(c: &SuiteConfig) -> Result<[SpectralSetup; 3]> {
    let own = SpectralSetup::from_omega(c.m, c.hbar, c.gamma, c.omega)?;
    let pick = |want: &str, fallback: Regime| -> Result<SpectralSetup> {
        if own.regime.name() == want {
            Ok(own)
        } else {
            SpectralSetup::new(c.m, c.hbar, c.gamma, fallback)
        }
    };
    Ok([
        pick("under", Regime::Under { omega_cap: 1.0 })?,
        pick("over", Regime::Over { omega_tilde: 0.3 })?,
        SpectralSetup::new(c.m, c.hbar, c.gamma, Regime::Critical)?,
    ])
}

fn random_labels(setup: &SpectralSetup, rng: &mut ChaCha8Rng) -> Labels {
    let first = match setup.regime {
        Regime::Under { .. } => rng.gen_range(-3i32..=3) as f64,
        _ => rng.gen_range(-1.5..1.5),
    };
    Labels::new(first, rng.gen_range(-1.0..1.0))
}

/// Denominator for relative residuals: `|E|`, or `hbar (|Omega| + gamma)` when `E = 0`.
fn energy_scale(setup: &SpectralSetup, e: f64) -> f64 {
    if e != 0.0 {
        e.abs()
    } else {
        setup.hbar * (setup.big_omega().norm() + setup.gamma)
    }
}

struct Draw {
    full: f64,
    first: f64,
    dilation: f64,
}

fn eigen_draw(setup: &SpectralSetup, seed: u64, stream: u64) -> Result<Draw> {
    let mut rng = rng_for(seed, stream);
    let labels = random_labels(setup, &mut rng);
    let (x, py) = spectra::sample_point(setup, &mut rng);
    let phi = EigenFunction::new(setup, labels)?;
    let size = phi.jet(x, py)?.value.norm();
    let e = phi.energy()?;
    let h = spectra::bateman_h_firstorder();
    let (_, d) = spectra::split_operators();
    let first_op = spectra::first_label_operator(setup);
    let e1 = spectra::first_label_energy(setup, &labels);
    let ed = labels.lambda * setup.hbar * setup.gamma;
    let rel = |op: &WeylOp, ev: f64| -> Result<f64> {
        Ok(spectra::operator_residual(op, &phi, ev, x, py)?.norm() / (energy_scale(setup, ev) * size))
    };
    Ok(Draw { full: rel(&h, e)?, first: rel(&first_op, e1)?, dilation: rel(&d, ed)? })
}

/// `e^{a z+ + b z-} (1 + c z+ z-)`, an entire seed for the propagator.
#[derive(Clone, Copy, Debug)]
pub struct SmoothSeed {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl SeedFunction for SmoothSeed {
    fn eval(&self, zp: Complex64, zm: Complex64) -> [Complex64; 3] {
        let e = (self.a * zp + self.b * zm).exp();
        let poly = 1.0 + self.c * zp * zm;
        [e * poly, e * (self.a * poly + self.c * zm), e * (self.b * poly + self.c * zp)]
    }
}

/// `1 / (gamma/2 + |Omega|)`, the time over which the propagator grows by `e`.
pub fn growth_time(setup: &SpectralSetup) -> f64 {
    1.0 / (setup.gamma / 2.0 + setup.big_omega().norm())
}

/// `|i hbar d_t psi - H psi|` with a five-point central difference in `t`.
pub fn schrodinger_defect(setup: &SpectralSetup, f: &dyn SeedFunction, x: f64, py: f64, t: f64) -> Result<f64> {
    let h = 1e-3 * growth_time(setup).min(1.0);
    let at = |dt: f64| spectra::propagate(setup, f, x, py, t + dt);
    let dt = (at(-2.0 * h)? - 8.0 * at(-h)? + 8.0 * at(h)? - at(2.0 * h)?) / (12.0 * h);
    let jet = spectra::propagate_jet(setup, f, x, py, t)?;
    let rhs = spectra::bateman_h_firstorder().apply_numeric(&jet, &[x, py], t, &setup.params())?;
    Ok((Complex64::i() * setup.hbar * dt - rhs).norm())
}

/// Relative mismatch between the propagated eigenfunction and
/// `e^{-iEt/hbar} phi`, or `None` when the flow would carry `z+` or `z-`
/// across the cut of the principal logarithm.
pub fn phase_defect(phi: &EigenFunction, x: f64, py: f64, t: f64) -> Result<Option<f64>> {
    let setup = phi.setup();
    let (zp, zm) = setup.z_pair(x, py)?;
    if let Regime::Under { omega_cap } = setup.regime {
        let turn = omega_cap * t;
        if (zp.arg() + turn).abs() >= std::f64::consts::PI || (zm.arg() - turn).abs() >= std::f64::consts::PI {
            return Ok(None);
        }
    }
    let moved = spectra::propagate(setup, phi, x, py, t)?;
    let e = phi.energy()?;
    let want = (Complex64::new(0.0, -e * t / setup.hbar)).exp() * phi.jet(x, py)?.value;
    Ok(Some((moved - want).norm() / want.norm()))
}

fn spectra_checks(out: &mut Out, c: &SuiteConfig) {
    let setups = match regime_setups(c) {
        Ok(s) => s,
        Err(e) => {
            out.push("regimes", false, format!("error: {e}"));
            return;
        }
    };
    for (r, setup) in setups.iter().enumerate() {
        let base = 1000 * (r as u64 + 1);
        let draws: Result<Vec<Draw>> =
            (0..SPECTRAL_DRAWS).into_par_iter().map(|i| eigen_draw(setup, c.seed, base + i as u64)).collect();
        let name = setup.regime.name();
        match draws {
            Ok(d) => {
                let max = |f: fn(&Draw) -> f64| d.iter().map(f).fold(0.0, f64::max);
                let first = if setup.regime == Regime::Critical { "H_0" } else { "H_Omega" };
                out.bound(&format!("{name}: H phi = E phi over {SPECTRAL_DRAWS} draws"), Ok(max(|d| d.full)), EIGEN_LIMIT);
                out.bound(&format!("{name}: {first} eigen-relation"), Ok(max(|d| d.first)), EIGEN_LIMIT);
                out.bound(&format!("{name}: D eigen-relation"), Ok(max(|d| d.dilation)), EIGEN_LIMIT);
            }
            Err(e) => out.push(format!("{name}: eigen residuals"), false, format!("error: {e}")),
        }
    }

    let [under, over, critical] = setups;
    let mut rng = rng_for(c.seed, 10);
    let (x, py) = spectra::sample_point(&under, &mut rng);
    let wound = |n: f64| -> Result<f64> {
        let phi = EigenFunction::unchecked(&under, Labels::new(n, 0.3));
        let a = phi.jet(x, py)?.value;
        let b = phi.jet_wound(x, py, 1)?.value;
        Ok((a - b).norm() / a.norm())
    };
    out.result("single-valued for integer n", wound(2.0), |v| (v <= 1e-12, format!("{v:.3e} after one turn")));
    out.result("multivalued for n = 1/2", wound(0.5), |v| (v > 0.5, format!("{v:.3e} after one turn")));

    for setup in [under, over] {
        let ratio = setup.big_omega().norm() / setup.gamma;
        let points: Vec<(f64, f64)> = {
            let mut r = rng_for(c.seed, 11);
            (0..20).map(|_| spectra::sample_point(&setup, &mut r)).collect()
        };
        let gram = (|| {
            let a = EigenFunction::new(&setup, Labels::new(0.0, 0.25))?;
            let b = EigenFunction::new(&setup, Labels::new(1.0, 0.25 - ratio))?;
            let (ea, eb) = (a.energy()?, b.energy()?);
            if (ea - eb).abs() > 1e-12 * (1.0 + ea.abs()) {
                return Err(Error::InvalidLabel(format!("energies differ: {ea} vs {eb}")));
            }
            spectra::gram_determinant(&a, &b, &points)
        })();
        out.result(&format!("{}: degenerate pair independent", setup.regime.name()), gram, |g| {
            (g > GRAM_LIMIT, format!("gram {g:.3e} > {GRAM_LIMIT:.0e}"))
        });
    }

    for setup in [under, over] {
        let name = setup.regime.name();
        let phase: Result<Vec<Option<f64>>> = (0..SPECTRAL_DRAWS)
            .into_par_iter()
            .map(|i| {
                let mut r = rng_for(c.seed, 5000 + i as u64);
                let labels = random_labels(&setup, &mut r);
                let (x, py) = spectra::sample_point(&setup, &mut r);
                let t = r.gen_range(0.0..1.0);
                phase_defect(&EigenFunction::new(&setup, labels)?, x, py, t)
            })
            .collect();
        out.result(&format!("{name}: propagated phase e^(-iEt/hbar)"), phase, |v| {
            let used: Vec<f64> = v.into_iter().flatten().collect();
            let worst = used.iter().copied().fold(0.0, f64::max);
            (!used.is_empty() && worst <= PHASE_LIMIT, format!("{worst:.3e} <= {PHASE_LIMIT:.0e} over {} draws", used.len()))
        });

        let sch: Result<Vec<f64>> = (0..SCHRODINGER_SAMPLES)
            .into_par_iter()
            .map(|i| {
                let mut r = rng_for(c.seed, 7000 + i as u64);
                let mut cplx = |s: f64| Complex64::new(r.gen_range(-s..s), r.gen_range(-s..s));
                let seed = SmoothSeed { a: cplx(0.5), b: cplx(0.5), c: cplx(0.5) };
                let x = r.gen_range(-1.0..1.0);
                let py = r.gen_range(-1.0..1.0);
                let t = r.gen_range(0.0..growth_time(&setup).min(1.0));
                schrodinger_defect(&setup, &seed, x, py, t)
            })
            .collect();
        out.bound(
            &format!("{name}: propagator solves the Schrodinger equation"),
            sch.map(|v| v.into_iter().fold(0.0, f64::max)),
            SCHRODINGER_LIMIT,
        );
    }

    let ground = (|| {
        let phi = EigenFunction::new(&critical, Labels::new(0.0, 0.0))?;
        let (_, d) = spectra::split_operators();
        let mut r = rng_for(c.seed, 12);
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let (x, py) = spectra::sample_point(&critical, &mut r);
            let jet = phi.jet(x, py)?;
            let v = d.apply_numeric(&jet, &[x, py], 0.0, &critical.params())?;
            worst = worst.max(v.norm() / jet.value.norm());
        }
        Ok(worst)
    })();
    out.bound("critical: D phi0 = 0 for k = 0, lambda = 0", ground, EIGEN_LIMIT);
}

fn appendix_checks(out: &mut Out) {
    let reports: Vec<_> = (1..=3u32).into_par_iter().map(appendix::verify_truncation).collect();
    for (n, r) in (1..=3).zip(reports) {
        out.result(&format!("truncation N = {n}"), r, |r| {
            (
                r.passed(),
                format!(
                    "{} generators, {} pairs, {} failures, {} flagged, {} jacobi violations",
                    r.generators,
                    r.pairs,
                    r.failures.len(),
                    r.flagged.len(),
                    r.jacobi_violations
                ),
            )
        });
    }
}

