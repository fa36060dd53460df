//! Classical Bateman dynamics.
//!
//! `H = p_x p_y/m + (gamma/2)(y p_y - x p_x) + m Omega^2 x y` gives
//!
//! ```text
//! x'   =  p_y/m - (gamma/2) x
//! p_x' =  (gamma/2) p_x - m Omega^2 y
//! y'   =  p_x/m + (gamma/2) y
//! p_y' = -(gamma/2) p_y - m Omega^2 x
//! ```
//!
//! so that `x'' + gamma x' + w^2 x = 0` and `y'' - gamma y' + w^2 y = 0`.

pub mod canonical;
pub mod integrator;

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
pub use integrator::State;

/// Parameters `(m, gamma, w)`; `Omega^2 = w^2 - gamma^2/4` keeps its sign.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Oscillator {
    pub m: f64,
    pub gamma: f64,
    pub omega: f64,
}

impl Oscillator {
    pub fn new(m: f64, gamma: f64, omega: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() || !gamma.is_finite() || !omega.is_finite() || omega < 0.0 {
            return Err(Error::InvalidParameters(format!(
                "need m > 0 and finite gamma, omega >= 0 (got m={m}, gamma={gamma}, omega={omega})"
            )));
        }
        Ok(Self { m, gamma, omega })
    }

    pub fn omega_sq(&self) -> f64 {
        self.omega * self.omega
    }

    /// Signed `Omega^2`.
    pub fn cap_sq(&self) -> f64 {
        self.omega_sq() - self.gamma * self.gamma / 4.0
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct PhaseState {
    pub x: f64,
    pub p_x: f64,
    pub y: f64,
    pub p_y: f64,
    pub t: f64,
}

impl PhaseState {
    pub fn new(x: f64, p_x: f64, y: f64, p_y: f64, t: f64) -> Self {
        Self { x, p_x, y, p_y, t }
    }

    pub fn from_array(v: State, t: f64) -> Self {
        Self { x: v[0], p_x: v[1], y: v[2], p_y: v[3], t }
    }

    pub fn array(&self) -> State {
        [self.x, self.p_x, self.y, self.p_y]
    }

    pub fn is_finite(&self) -> bool {
        self.array().iter().all(|v| v.is_finite()) && self.t.is_finite()
    }
}

pub fn hamiltonian(osc: &Oscillator, s: &PhaseState) -> f64 {
    s.p_x * s.p_y / osc.m + osc.gamma / 2.0 * (s.y * s.p_y - s.x * s.p_x) + osc.m * osc.cap_sq() * s.x * s.y
}

/// The linear vector field as a matrix acting on `(x, p_x, y, p_y)`.
pub fn generator_matrix(osc: &Oscillator) -> [[f64; 4]; 4] {
    let g = osc.gamma / 2.0;
    let k = osc.m * osc.cap_sq();
    let im = 1.0 / osc.m;
    [
        [-g, 0.0, 0.0, im],
        [0.0, g, -k, 0.0],
        [0.0, im, g, 0.0],
        [-k, 0.0, 0.0, -g],
    ]
}

pub fn hamilton_rhs(osc: &Oscillator, s: &State) -> State {
    let g = osc.gamma / 2.0;
    let k = osc.m * osc.cap_sq();
    [
        s[3] / osc.m - g * s[0],
        g * s[1] - k * s[2],
        s[1] / osc.m + g * s[2],
        -g * s[3] - k * s[0],
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub oscillator: Oscillator,
    pub states: Vec<PhaseState>,
    pub tol: f64,
    pub grid: &'static str,
    pub rejected_steps: usize,
}

pub fn integrate(osc: &Oscillator, s0: &PhaseState, t_end: f64, tol: f64) -> Result<Trajectory> {
    if !s0.is_finite() {
        return Err(Error::InvalidParameters("initial state must be finite".into()));
    }
    let o = *osc;
    let sol = integrator::dopri5(move |_, y| hamilton_rhs(&o, y), s0.t, s0.array(), t_end, tol)?;
    let states = sol.times.iter().zip(&sol.states).map(|(t, y)| PhaseState::from_array(*y, *t)).collect();
    Ok(Trajectory { oscillator: *osc, states, tol, grid: "adaptive", rejected_steps: sol.rejected })
}

/// Integrates several parameter sets in parallel; output order follows input.
pub fn sweep(oscs: &[Oscillator], s0: &PhaseState, t_end: f64, tol: f64) -> Vec<Result<Trajectory>> {
    oscs.par_iter().map(|o| integrate(o, s0, t_end, tol)).collect()
}

impl Trajectory {
    pub fn energy_drift(&self) -> f64 {
        let h0 = hamiltonian(&self.oscillator, &self.states[0]);
        self.states
            .iter()
            .map(|s| (hamiltonian(&self.oscillator, s) - h0).abs())
            .fold(0.0, f64::max)
    }

    /// Drift relative to `max(1, |H(s0)|)`.
    pub fn relative_energy_drift(&self) -> f64 {
        let h0 = hamiltonian(&self.oscillator, &self.states[0]);
        self.energy_drift() / h0.abs().max(1.0)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "t,x,p_x,y,p_y,H")?;
        for s in &self.states {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                s.t,
                s.x,
                s.p_x,
                s.y,
                s.p_y,
                hamiltonian(&self.oscillator, s)
            )?;
        }
        Ok(())
    }
}

/// Pointwise residuals of both second-order equations, with `x'` and `x''`
/// taken from the vector field and its derivative along the flow.
pub fn pointwise_dual_residuals(osc: &Oscillator, s: &PhaseState) -> (f64, f64) {
    let v = hamilton_rhs(osc, &s.array());
    let a = hamilton_rhs(osc, &v);
    let w2 = osc.omega_sq();
    let rx = a[0] + osc.gamma * v[0] + w2 * s.x;
    let ry = a[2] - osc.gamma * v[2] + w2 * s.y;
    (rx, ry)
}

/// `(u1, u2)` at `t`: solutions of `u'' + gamma u' + w^2 u = 0` with
/// `u1(0) = 0, u1'(0) = 1, u2(0) = 1, u2'(0) = 0`, in every regime.
pub fn damped_pair(gamma: f64, omega: f64, t: f64) -> (f64, f64) {
    let cap_sq = omega * omega - gamma * gamma / 4.0;
    let decay = (-gamma * t / 2.0).exp();
    let scale = (omega * omega).max(gamma * gamma / 4.0).max(f64::MIN_POSITIVE);
    let (s, c) = if cap_sq.abs() <= 1e-12 * scale {
        (t, 1.0)
    } else if cap_sq > 0.0 {
        let w = cap_sq.sqrt();
        ((w * t).sin() / w, (w * t).cos())
    } else {
        let w = (-cap_sq).sqrt();
        ((w * t).sinh() / w, (w * t).cosh())
    };
    (decay * s, decay * (c + gamma / 2.0 * s))
}

/// Closed-form solution of the damped equation with `x(0) = x0, x'(0) = v0`.
pub fn ck_closed_form(osc: &Oscillator, x0: f64, v0: f64, t: f64) -> f64 {
    let (u1, u2) = damped_pair(osc.gamma, osc.omega, t);
    x0 * u2 + v0 * u1
}

/// Closed form of the amplified partner `y'' - gamma y' + w^2 y = 0`.
pub fn mirror_closed_form(osc: &Oscillator, y0: f64, v0: f64, t: f64) -> f64 {
    let (u1, u2) = damped_pair(-osc.gamma, osc.omega, t);
    y0 * u2 + v0 * u1
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualResiduals {
    /// Largest pointwise residual of either equation.
    pub pointwise: f64,
    /// Largest deviation of `x(t)` from its closed form.
    pub x_deviation: f64,
    /// Largest deviation of `y(t)` from its closed form, relative to `max(1, |y|)`.
    pub y_deviation: f64,
}

pub fn dual_residuals(traj: &Trajectory) -> DualResiduals {
    let osc = &traj.oscillator;
    let s0 = traj.states[0];
    let v0 = hamilton_rhs(osc, &s0.array());
    let mut out = DualResiduals { pointwise: 0.0, x_deviation: 0.0, y_deviation: 0.0 };
    for s in &traj.states {
        let (rx, ry) = pointwise_dual_residuals(osc, s);
        out.pointwise = out.pointwise.max(rx.abs()).max(ry.abs());
        let dt = s.t - s0.t;
        let x = ck_closed_form(osc, s0.x, v0[0], dt);
        let y = mirror_closed_form(osc, s0.y, v0[2], dt);
        out.x_deviation = out.x_deviation.max((s.x - x).abs());
        out.y_deviation = out.y_deviation.max((s.y - y).abs() / y.abs().max(1.0));
    }
    out
}

/// Time reversal `(x, p_x, y, p_y, t) -> (y, -p_y, x, -p_x, -t)`.
pub fn mirror(s: &PhaseState) -> PhaseState {
    PhaseState { x: s.y, p_x: -s.p_y, y: s.x, p_y: -s.p_x, t: -s.t }
}

/// Integrates `mirror(s(T))` forward for the same duration and returns the
/// deviation from `mirror(s(0))`, relative to the state size.
pub fn mirror_check(traj: &Trajectory) -> Result<f64> {
    let first = traj.states[0];
    let last = *traj.states.last().expect("nonempty trajectory");
    let span = last.t - first.t;
    let start = PhaseState { t: 0.0, ..mirror(&last) };
    let back = integrate(&traj.oscillator, &start, span, traj.tol)?;
    let end = back.states.last().expect("nonempty trajectory").array();
    let target = mirror(&first).array();
    let size = target.iter().chain(start.array().iter()).fold(1.0f64, |m, v| m.max(v.abs()));
    Ok(end.iter().zip(&target).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / size)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub oscillator: Oscillator,
    pub t_end: f64,
    pub tol: f64,
    pub steps: usize,
    pub rejected_steps: usize,
    pub energy_initial: f64,
    pub energy_drift: f64,
    pub energy_drift_relative: f64,
    pub dual_residuals: DualResiduals,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<canonical::ReductionReport>,
}

pub fn summarize(traj: &Trajectory) -> SimulationSummary {
    SimulationSummary {
        oscillator: traj.oscillator,
        t_end: traj.states.last().map(|s| s.t).unwrap_or(0.0),
        tol: traj.tol,
        steps: traj.states.len() - 1,
        rejected_steps: traj.rejected_steps,
        energy_initial: hamiltonian(&traj.oscillator, &traj.states[0]),
        energy_drift: traj.energy_drift(),
        energy_drift_relative: traj.relative_energy_drift(),
        dual_residuals: dual_residuals(traj),
        reduction: None,
    }
}
