//! Bateman quantization in the mixed `(x, p_y)` representation.
//!
//! With `x = x`, `p_x = -i hbar d_x`, `y = i hbar d_{p_y}`, `p_y = p_y` the
//! Bateman Hamiltonian is the first-order operator
//!
//! ```text
//! H = i hbar ((gamma/2) x - p_y/m) d_x + i hbar ((gamma/2) p_y + m Omega^2 x) d_{p_y} + i hbar gamma/2
//! ```
//!
//! Its eigenfunctions are written in `z± = x ± i p_y/(m Omega)`:
//! `phi = (z-/z+)^{n/2} (z+ z-)^s` with `s = -1/2 - i lambda`, each power taken
//! through the principal logarithm of `z+` and `z-` separately. Then
//!
//! ```text
//! d_x phi    = phi ((s - n/2)/z+ + (s + n/2)/z-)
//! d_{p_y} phi = phi (i/(m Omega)) ((s - n/2)/z+ - (s + n/2)/z-)
//! ```
//!
//! In the overdamped regime `Omega = i Omega~` and the label is `n = -i n~`,
//! so that `z±` are real and `E = n~ hbar Omega~ + lambda hbar gamma`.
//! At critical damping the eigenfunctions are
//! `e^{i k m gamma x/p_y} (p_y^2)^s` with `E = hbar gamma (k + lambda)`.

use std::f64::consts::PI;

use num::complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Params, ScalarPoly, Symbol};
use crate::weylop::{Partials, VarSpace, WeylOp};

pub fn mixed_space() -> VarSpace {
    VarSpace::pair("x", "p_y")
}

/// `[x, p_x, y, p_y]` in the mixed representation.
pub fn basic_operators() -> [WeylOp; 4] {
    let s = mixed_space();
    let ih = ScalarPoly::i_hbar();
    [
        WeylOp::var(&s, 0),
        WeylOp::deriv(&s, 0).scale_scalar(&-ih.clone()),
        WeylOp::deriv(&s, 1).scale_scalar(&ih),
        WeylOp::var(&s, 1),
    ]
}

fn sp(text: &str) -> ScalarPoly {
    text.parse().expect("static coefficient")
}

pub fn bateman_h_firstorder() -> WeylOp {
    let s = mixed_space();
    let x = WeylOp::var(&s, 0);
    let py = WeylOp::var(&s, 1);
    let dx = WeylOp::deriv(&s, 0);
    let dpy = WeylOp::deriv(&s, 1);
    let a = x.scale_scalar(&sp("1/2*gamma")) - py.scale_scalar(&sp("m^-1"));
    let b = py.scale_scalar(&sp("1/2*gamma")) + x.scale_scalar(&sp("m*Omega^2"));
    let ih = ScalarPoly::i_hbar();
    (a.mul(&dx).expect("same space") + b.mul(&dpy).expect("same space")).scale_scalar(&ih)
        + WeylOp::constant(&s, sp("1/2*i*hbar*gamma"))
}

/// `(H_Omega, D)` with `H = H_Omega + D`.
pub fn split_operators() -> (WeylOp, WeylOp) {
    let s = mixed_space();
    let x = WeylOp::var(&s, 0);
    let py = WeylOp::var(&s, 1);
    let dx = WeylOp::deriv(&s, 0);
    let dpy = WeylOp::deriv(&s, 1);
    let h_omega = (py.mul(&dx).expect("same space").scale_scalar(&sp("m^-1"))
        - x.mul(&dpy).expect("same space").scale_scalar(&sp("m*Omega^2")))
    .scale_scalar(&sp("-i*hbar"));
    let d = (x.mul(&dx).expect("same space") + py.mul(&dpy).expect("same space") + WeylOp::identity(&s))
        .scale_scalar(&sp("1/2*i*hbar*gamma"));
    (h_omega, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "regime", rename_all = "lowercase")]
pub enum Regime {
    /// `omega > gamma/2`, real `Omega`.
    Under { omega_cap: f64 },
    /// `omega < gamma/2`, `Omega = i omega_tilde`.
    Over { omega_tilde: f64 },
    Critical,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::Under { .. } => "under",
            Regime::Over { .. } => "over",
            Regime::Critical => "critical",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralSetup {
    pub m: f64,
    pub hbar: f64,
    pub gamma: f64,
    pub regime: Regime,
}

impl SpectralSetup {
    pub fn new(m: f64, hbar: f64, gamma: f64, regime: Regime) -> Result<Self> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(m) || !positive(hbar) || !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::InvalidParameters(format!(
                "need m > 0, hbar > 0, gamma >= 0 (got m={m}, hbar={hbar}, gamma={gamma})"
            )));
        }
        match regime {
            Regime::Under { omega_cap } if !positive(omega_cap) => {
                return Err(Error::InvalidParameters(format!("Omega must be positive, got {omega_cap}")))
            }
            Regime::Over { omega_tilde } if !positive(omega_tilde) => {
                return Err(Error::InvalidParameters(format!("Omega~ must be positive, got {omega_tilde}")))
            }
            Regime::Critical if !positive(gamma) => {
                return Err(Error::InvalidParameters("critical damping needs gamma > 0".into()))
            }
            _ => {}
        }
        Ok(Self { m, hbar, gamma, regime })
    }

    /// Classifies by the undamped frequency `omega`.
    pub fn from_omega(m: f64, hbar: f64, gamma: f64, omega: f64) -> Result<Self> {
        let cap_sq = omega * omega - gamma * gamma / 4.0;
        let scale = (omega * omega).max(gamma * gamma / 4.0);
        let regime = if cap_sq.abs() <= 1e-12 * scale {
            Regime::Critical
        } else if cap_sq > 0.0 {
            Regime::Under { omega_cap: cap_sq.sqrt() }
        } else {
            Regime::Over { omega_tilde: (-cap_sq).sqrt() }
        };
        Self::new(m, hbar, gamma, regime)
    }

    /// `Omega` as a complex number.
    pub fn big_omega(&self) -> Complex64 {
        match self.regime {
            Regime::Under { omega_cap } => Complex64::new(omega_cap, 0.0),
            Regime::Over { omega_tilde } => Complex64::new(0.0, omega_tilde),
            Regime::Critical => Complex64::new(0.0, 0.0),
        }
    }

    pub fn params(&self) -> Params {
        Params::new()
            .with(Symbol::M, self.m)
            .with(Symbol::Hbar, self.hbar)
            .with(Symbol::Gamma, self.gamma)
            .with(Symbol::Omega, self.big_omega())
    }

    /// `(z+, z-)`; undefined at critical damping.
    pub fn z_pair(&self, x: f64, py: f64) -> Result<(Complex64, Complex64)> {
        if self.regime == Regime::Critical {
            return Err(Error::InvalidParameters("z variables are undefined at critical damping".into()));
        }
        let shift = Complex64::i() * py / (self.m * self.big_omega());
        Ok((x + shift, x - shift))
    }
}

/// Quantum labels: `first` is `n`, `n~` or `k` depending on the regime.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Labels {
    pub first: f64,
    pub lambda: f64,
}

impl Labels {
    pub fn new(first: f64, lambda: f64) -> Self {
        Self { first, lambda }
    }
}

fn validate(setup: &SpectralSetup, labels: &Labels) -> Result<()> {
    if !labels.first.is_finite() || !labels.lambda.is_finite() {
        return Err(Error::InvalidLabel(format!("labels must be finite real numbers: {labels:?}")));
    }
    if matches!(setup.regime, Regime::Under { .. }) && labels.first.fract() != 0.0 {
        return Err(Error::InvalidLabel(format!(
            "n = {} is not an integer; underdamped eigenfunctions are single-valued only for integer n",
            labels.first
        )));
    }
    Ok(())
}

pub fn eigenvalue(setup: &SpectralSetup, labels: &Labels) -> Result<f64> {
    validate(setup, labels)?;
    let Labels { first, lambda } = *labels;
    let d = lambda * setup.hbar * setup.gamma;
    Ok(match setup.regime {
        Regime::Under { omega_cap } => first * setup.hbar * omega_cap + d,
        Regime::Over { omega_tilde } => first * setup.hbar * omega_tilde + d,
        Regime::Critical => setup.hbar * setup.gamma * (first + lambda),
    })
}

/// Value and first partials at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub value: Complex64,
    pub dx: Complex64,
    pub dpy: Complex64,
}

impl Partials for Jet {
    fn partial(&self, orders: [u32; 2], time_order: u32) -> Option<Complex64> {
        match (orders, time_order) {
            ([0, 0], 0) => Some(self.value),
            ([1, 0], 0) => Some(self.dx),
            ([0, 1], 0) => Some(self.dpy),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenFunction {
    setup: SpectralSetup,
    labels: Labels,
}

const SINGULAR_EPS: f64 = 1e-12;

impl EigenFunction {
    pub fn new(setup: &SpectralSetup, labels: Labels) -> Result<Self> {
        validate(setup, &labels)?;
        Ok(Self { setup: *setup, labels })
    }

    /// Skips label validation; used to exhibit the failure of single-valuedness
    /// for non-integer `n`.
    pub fn unchecked(setup: &SpectralSetup, labels: Labels) -> Self {
        Self { setup: *setup, labels }
    }

    pub fn setup(&self) -> &SpectralSetup {
        &self.setup
    }

    pub fn labels(&self) -> Labels {
        self.labels
    }

    pub fn energy(&self) -> Result<f64> {
        eigenvalue(&self.setup, &self.labels)
    }

    fn s(&self) -> Complex64 {
        Complex64::new(-0.5, -self.labels.lambda)
    }

    /// Complex `n`; `-i n~` when overdamped.
    fn n(&self) -> Complex64 {
        match self.setup.regime {
            Regime::Over { .. } => Complex64::new(0.0, -self.labels.first),
            _ => Complex64::new(self.labels.first, 0.0),
        }
    }

    pub fn jet(&self, x: f64, py: f64) -> Result<Jet> {
        self.jet_wound(x, py, 0)
    }

    /// Jet after carrying the point `winding` times around the origin of the
    /// `(x, p_y)` plane: `log z-` gains `2 pi i w`, `log z+` loses it.
    pub fn jet_wound(&self, x: f64, py: f64, winding: i32) -> Result<Jet> {
        let scale = 1.0 + x.abs() + py.abs() / self.setup.m;
        if self.setup.regime == Regime::Critical {
            if py.abs() <= SINGULAR_EPS * scale {
                return Err(Error::SingularPoint(format!("p_y = {py}")));
            }
            let kmg = self.labels.first * self.setup.m * self.setup.gamma;
            let s = self.s();
            let value = (Complex64::i() * kmg * x / py + s * (py * py).ln()).exp();
            return Ok(Jet {
                value,
                dx: value * Complex64::i() * kmg / py,
                dpy: value * (-Complex64::i() * kmg * x / (py * py) + 2.0 * s / py),
            });
        }
        let (zp, zm) = self.setup.z_pair(x, py)?;
        if zp.norm() <= SINGULAR_EPS * scale || zm.norm() <= SINGULAR_EPS * scale {
            return Err(Error::SingularPoint(format!("z+ = {zp}, z- = {zm}")));
        }
        let turn = Complex64::new(0.0, 2.0 * PI * winding as f64);
        let lp = zp.ln() - turn;
        let lm = zm.ln() + turn;
        let n = self.n();
        let s = self.s();
        let value = (n / 2.0 * (lm - lp) + s * (lp + lm)).exp();
        let cp = (s - n / 2.0) / zp;
        let cm = (s + n / 2.0) / zm;
        let mo = self.setup.m * self.setup.big_omega();
        Ok(Jet { value, dx: value * (cp + cm), dpy: value * Complex64::i() / mo * (cp - cm) })
    }
}

/// `(op phi)(point) - e phi(point)`.
pub fn operator_residual(op: &WeylOp, phi: &EigenFunction, e: f64, x: f64, py: f64) -> Result<Complex64> {
    let jet = phi.jet(x, py)?;
    let params = phi.setup.params();
    Ok(op.apply_numeric(&jet, &[x, py], 0.0, &params)? - e * jet.value)
}

/// `(H phi)(point) - E phi(point)` for the full Hamiltonian.
pub fn eigenfunction_residual(phi: &EigenFunction, x: f64, py: f64) -> Result<Complex64> {
    operator_residual(&bateman_h_firstorder(), phi, phi.energy()?, x, py)
}

/// Operator whose eigenvalue carries the first label: `H_Omega`, or at
/// critical damping `H_0 = -i hbar (p_y/m) d_x`.
pub fn first_label_operator(setup: &SpectralSetup) -> WeylOp {
    let (h_omega, _) = split_operators();
    match setup.regime {
        Regime::Critical => h_omega
            .specialize(Symbol::Omega, &crate::scalar::GaussianRational::zero())
            .expect("positive exponents only"),
        _ => h_omega,
    }
}

/// Eigenvalue of [`first_label_operator`].
pub fn first_label_energy(setup: &SpectralSetup, labels: &Labels) -> f64 {
    match setup.regime {
        Regime::Under { omega_cap } => labels.first * setup.hbar * omega_cap,
        Regime::Over { omega_tilde } => labels.first * setup.hbar * omega_tilde,
        Regime::Critical => labels.first * setup.hbar * setup.gamma,
    }
}

/// Initial datum `f(z+, z-)` with its two partial derivatives.
pub trait SeedFunction: Sync {
    /// `[f, df/dz+, df/dz-]`.
    fn eval(&self, zp: Complex64, zm: Complex64) -> [Complex64; 3];
}

impl SeedFunction for EigenFunction {
    fn eval(&self, zp: Complex64, zm: Complex64) -> [Complex64; 3] {
        let (lp, lm) = (zp.ln(), zm.ln());
        let n = self.n();
        let s = self.s();
        let v = (n / 2.0 * (lm - lp) + s * (lp + lm)).exp();
        [v, v * (s - n / 2.0) / zp, v * (s + n / 2.0) / zm]
    }
}

/// `psi(x, p_y, t) = e^{gamma t/2} f(e^{(gamma/2 + i Omega) t} z+, e^{(gamma/2 - i Omega) t} z-)`
/// together with its spatial partials.
pub fn propagate_jet(setup: &SpectralSetup, f: &dyn SeedFunction, x: f64, py: f64, t: f64) -> Result<Jet> {
    let (zp, zm) = setup.z_pair(x, py)?;
    let omega = setup.big_omega();
    let half_g = setup.gamma / 2.0;
    let ap = ((half_g + Complex64::i() * omega) * t).exp();
    let am = ((half_g - Complex64::i() * omega) * t).exp();
    let pre = (half_g * t).exp();
    let [v, fp, fm] = f.eval(ap * zp, am * zm);
    let mo = setup.m * omega;
    Ok(Jet {
        value: pre * v,
        dx: pre * (ap * fp + am * fm),
        dpy: pre * Complex64::i() / mo * (ap * fp - am * fm),
    })
}

pub fn propagate(setup: &SpectralSetup, f: &dyn SeedFunction, x: f64, py: f64, t: f64) -> Result<Complex64> {
    Ok(propagate_jet(setup, f, x, py, t)?.value)
}

/// `1 - |<u, v>|^2` for the normalized sample vectors of two functions.
pub fn gram_determinant(a: &EigenFunction, b: &EigenFunction, points: &[(f64, f64)]) -> Result<f64> {
    let mut va = Vec::with_capacity(points.len());
    let mut vb = Vec::with_capacity(points.len());
    for &(x, py) in points {
        va.push(a.jet(x, py)?.value);
        vb.push(b.jet(x, py)?.value);
    }
    let norm = |v: &[Complex64]| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let (na, nb) = (norm(&va), norm(&vb));
    let inner: Complex64 = va.iter().zip(&vb).map(|(p, q)| p.conj() * q).sum::<Complex64>() / (na * nb);
    Ok(1.0 - inner.norm_sqr())
}

/// Uniform point in `[-2, 2]^2` away from the singular set: `|z±| > 0.1`,
/// or `|p_y| > 0.1` at critical damping.
pub fn sample_point(setup: &SpectralSetup, rng: &mut ChaCha8Rng) -> (f64, f64) {
    loop {
        let x: f64 = rng.gen_range(-2.0..2.0);
        let py: f64 = rng.gen_range(-2.0..2.0);
        let ok = match setup.z_pair(x, py) {
            Ok((zp, zm)) => zp.norm() > 0.1 && zm.norm() > 0.1,
            Err(_) => py.abs() > 0.1,
        };
        if ok {
            return (x, py);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub regime: &'static str,
    pub labels: Labels,
    #[serde(rename = "E")]
    pub energy: f64,
    pub residual_max: f64,
    pub samples: usize,
}

/// Energy and worst relative residual `|H phi - E phi| / (|E| |phi|)` over
/// `samples` random points. For `E = 0` the denominator is `hbar (|Omega| + gamma) |phi|`.
pub fn spectrum_row(setup: &SpectralSetup, labels: Labels, samples: usize, seed: u64) -> Result<SpectrumRow> {
    let phi = EigenFunction::new(setup, labels)?;
    let e = phi.energy()?;
    let h = bateman_h_firstorder();
    let scale = if e != 0.0 { e.abs() } else { setup.hbar * (setup.big_omega().norm() + setup.gamma) };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let (x, py) = sample_point(setup, &mut rng);
        let r = operator_residual(&h, &phi, e, x, py)?;
        let v = phi.jet(x, py)?.value;
        worst = worst.max(r.norm() / (scale * v.norm()));
    }
    Ok(SpectrumRow { regime: setup.regime.name(), labels, energy: e, residual_max: worst, samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn under() -> SpectralSetup {
        SpectralSetup::new(1.0, 1.0, 0.4, Regime::Under { omega_cap: 1.0 }).unwrap()
    }

    #[test]
    fn hamiltonian_splits() {
        let (h_omega, d) = split_operators();
        let h = bateman_h_firstorder();
        assert_eq!(h, h_omega.clone() + d.clone());
        assert!(h_omega.commutator(&d).unwrap().is_zero());
        assert!(h.commutator(&h_omega).unwrap().is_zero());
        assert!(h.formal_adjoint().unwrap() == h);
    }

    #[test]
    fn eigenvalue_examples() {
        let s = under();
        assert_eq!(eigenvalue(&s, &Labels::new(0.0, 0.0)).unwrap(), 0.0);
        assert!((eigenvalue(&s, &Labels::new(2.0, 0.5)).unwrap() - 2.2).abs() < 1e-15);
        assert!(matches!(eigenvalue(&s, &Labels::new(0.5, 0.0)), Err(Error::InvalidLabel(_))));
        let crit = SpectralSetup::new(1.0, 1.0, 0.4, Regime::Critical).unwrap();
        assert_eq!(eigenvalue(&crit, &Labels::new(1.0, -1.0)).unwrap(), 0.0);
        let over = SpectralSetup::new(1.0, 1.0, 0.4, Regime::Over { omega_tilde: 0.3 }).unwrap();
        assert!((eigenvalue(&over, &Labels::new(1.0, 0.0)).unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn d_on_constant() {
        let (_, d) = split_operators();
        let one = Jet { value: Complex64::new(1.0, 0.0), dx: 0.0.into(), dpy: 0.0.into() };
        let v = d.apply_numeric(&one, &[0.3, -0.7], 0.0, &under().params()).unwrap();
        assert!((v - Complex64::new(0.0, 0.2)).norm() < 1e-15);
    }

    #[test]
    fn singular_points_are_rejected() {
        let phi = EigenFunction::new(&under(), Labels::new(1.0, 0.3)).unwrap();
        assert!(matches!(phi.jet(0.0, 0.0), Err(Error::SingularPoint(_))));
        let crit = SpectralSetup::new(1.0, 1.0, 0.4, Regime::Critical).unwrap();
        let phi = EigenFunction::new(&crit, Labels::new(0.0, 0.0)).unwrap();
        assert!(matches!(phi.jet(1.0, 0.0), Err(Error::SingularPoint(_))));
    }

    #[test]
    fn regime_classification() {
        assert!(matches!(SpectralSetup::from_omega(1.0, 1.0, 0.4, 1.0).unwrap().regime, Regime::Under { .. }));
        assert!(matches!(SpectralSetup::from_omega(1.0, 1.0, 2.0, 0.5).unwrap().regime, Regime::Over { .. }));
        assert_eq!(SpectralSetup::from_omega(1.0, 1.0, 2.0, 1.0).unwrap().regime, Regime::Critical);
        assert!(SpectralSetup::new(-1.0, 1.0, 0.4, Regime::Critical).is_err());
    }
}
