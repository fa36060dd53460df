//! The time-dependent linear canonical map from Bateman variables to a
//! Caldirola-Kanai pair `(x', p'_x)` and its dual `(y', p'_y)`:
//!
//! ```text
//! x'   = (x + e^{-gt} y - (g/2m Omega^2) e^{-gt} p_x) / sqrt2
//! p'_x = ((w^2/Omega^2) p_x + e^{gt} p_y - (m g/2) e^{gt} x) / sqrt2
//! y'   = (y - e^{gt} x + (g/2m Omega^2) p_x) / sqrt2
//! p'_y = (p_y - (w^2/Omega^2) e^{-gt} p_x + (m g/2) x) / sqrt2
//! ```
//!
//! The new Hamiltonian is
//! `H' = e^{-gt} p'_x^2/2m + (m/2) w^2 x'^2 e^{gt} - e^{gt} p'_y^2/2m - (m/2) w^2 y'^2 e^{-gt}`.
//! It differs from `H` by the time derivative of a generating function, so the
//! check is on vector fields: `dT/dt s + T f(s) = J grad H'(T s, t)`.

use serde::Serialize;

use super::{ck_closed_form, hamilton_rhs, integrate, Oscillator, PhaseState, State};
use crate::error::{Error, Result};

pub type Matrix = [[f64; 4]; 4];

/// Symplectic form for the ordering `(x, p_x, y, p_y)`.
pub const SYMPLECTIC: Matrix = [
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0, 0.0],
];

fn check_omega(osc: &Oscillator) -> Result<()> {
    if osc.cap_sq() == 0.0 {
        return Err(Error::InvalidParameters("the canonical map needs Omega != 0".into()));
    }
    Ok(())
}

fn pieces(osc: &Oscillator, t: f64) -> (f64, f64, f64, f64, f64, f64) {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let big = (osc.gamma * t).exp();
    let small = (-osc.gamma * t).exp();
    let c = osc.gamma / (2.0 * osc.m * osc.cap_sq());
    let q = osc.omega_sq() / osc.cap_sq();
    let h = osc.m * osc.gamma / 2.0;
    (r, big, small, c, q, h)
}

/// Jacobian of the map at time `t`; rows `(x', p'_x, y', p'_y)`.
pub fn jacobian(osc: &Oscillator, t: f64) -> Result<Matrix> {
    check_omega(osc)?;
    let (r, big, small, c, q, h) = pieces(osc, t);
    Ok([
        [r, -r * c * small, r * small, 0.0],
        [-r * h * big, r * q, 0.0, r * big],
        [-r * big, r * c, r, 0.0],
        [r * h, -r * q * small, 0.0, r],
    ])
}

/// `d/dt` of [`jacobian`].
pub fn jacobian_dt(osc: &Oscillator, t: f64) -> Result<Matrix> {
    check_omega(osc)?;
    let (r, big, small, c, q, h) = pieces(osc, t);
    let g = osc.gamma;
    Ok([
        [0.0, r * c * g * small, -r * g * small, 0.0],
        [-r * h * g * big, 0.0, 0.0, r * g * big],
        [-r * g * big, 0.0, 0.0, 0.0],
        [0.0, r * q * g * small, 0.0, 0.0],
    ])
}

pub fn mat_vec(m: &Matrix, v: &State) -> State {
    std::array::from_fn(|i| (0..4).map(|j| m[i][j] * v[j]).sum())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn transpose(a: &Matrix) -> Matrix {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

pub fn bat2ck(osc: &Oscillator, s: &PhaseState) -> Result<PhaseState> {
    let m = jacobian(osc, s.t)?;
    Ok(PhaseState::from_array(mat_vec(&m, &s.array()), s.t))
}

/// Inverse map via `T^{-1} = -J T^T J`.
pub fn ck2bat(osc: &Oscillator, s: &PhaseState) -> Result<PhaseState> {
    let t = jacobian(osc, s.t)?;
    let inv = mat_mul(&mat_mul(&SYMPLECTIC, &transpose(&t)), &SYMPLECTIC);
    let v = mat_vec(&inv, &s.array());
    Ok(PhaseState::from_array(v.map(|x| -x), s.t))
}

/// `max |T^T J T - J|`.
pub fn symplectic_defect(osc: &Oscillator, t: f64) -> Result<f64> {
    let m = jacobian(osc, t)?;
    let lhs = mat_mul(&mat_mul(&transpose(&m), &SYMPLECTIC), &m);
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((lhs[i][j] - SYMPLECTIC[i][j]).abs());
        }
    }
    Ok(worst)
}

pub fn ck_pair_hamiltonian(osc: &Oscillator, s: &PhaseState) -> f64 {
    let big = (osc.gamma * s.t).exp();
    let small = (-osc.gamma * s.t).exp();
    let (m, w2) = (osc.m, osc.omega_sq());
    small * s.p_x * s.p_x / (2.0 * m) + 0.5 * m * w2 * s.x * s.x * big
        - big * s.p_y * s.p_y / (2.0 * m)
        - 0.5 * m * w2 * s.y * s.y * small
}

/// Hamilton's equations for [`ck_pair_hamiltonian`].
pub fn ck_pair_rhs(osc: &Oscillator, s: &PhaseState) -> State {
    let big = (osc.gamma * s.t).exp();
    let small = (-osc.gamma * s.t).exp();
    let (m, w2) = (osc.m, osc.omega_sq());
    [small * s.p_x / m, -m * w2 * big * s.x, -big * s.p_y / m, m * w2 * small * s.y]
}

/// Relative mismatch between the pushed-forward Bateman flow and the flow of
/// `H'` at one state.
pub fn vector_field_defect(osc: &Oscillator, s: &PhaseState) -> Result<f64> {
    let t = jacobian(osc, s.t)?;
    let dt = jacobian_dt(osc, s.t)?;
    let v = s.array();
    let a = mat_vec(&dt, &v);
    let b = mat_vec(&t, &hamilton_rhs(osc, &v));
    let pushed: State = std::array::from_fn(|i| a[i] + b[i]);
    let claimed = ck_pair_rhs(osc, &PhaseState::from_array(mat_vec(&t, &v), s.t));
    let size = pushed.iter().chain(claimed.iter()).fold(1.0f64, |m, x| m.max(x.abs()));
    Ok(pushed.iter().zip(&claimed).map(|(p, c)| (p - c).abs()).fold(0.0, f64::max) / size)
}

/// `H'(T s, t) - H(s, t)`, the generating-function correction.
pub fn hamiltonian_correction(osc: &Oscillator, s: &PhaseState) -> Result<f64> {
    Ok(ck_pair_hamiltonian(osc, &bat2ck(osc, s)?) - super::hamiltonian(osc, s))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionReport {
    pub x0: f64,
    pub v0: f64,
    pub t_end: f64,
    pub max_deviation: f64,
    pub max_constraint: f64,
    pub steps: usize,
}

pub const CONSTRAINT_LIMIT: f64 = 1e-6;

/// Starts the Bateman system on the constraint surface `y' = p'_y = 0` with
/// `x'(0) = x0`, `p'_x(0) = m v0`, and compares `x'(t)` with the closed-form
/// damped solution.
pub fn constrained_reduction_check(
    osc: &Oscillator,
    x0: f64,
    v0: f64,
    t_end: f64,
    tol: f64,
) -> Result<ReductionReport> {
    let start = ck2bat(osc, &PhaseState::new(x0, osc.m * v0, 0.0, 0.0, 0.0))?;
    let traj = integrate(osc, &start, t_end, tol)?;
    let mut report = ReductionReport { x0, v0, t_end, max_deviation: 0.0, max_constraint: 0.0, steps: traj.states.len() - 1 };
    for s in &traj.states {
        let p = bat2ck(osc, s)?;
        for (name, v) in [("y'", p.y), ("p'_y", p.p_y)] {
            if v.abs() > CONSTRAINT_LIMIT {
                return Err(Error::ConstraintViolation { quantity: name, value: v.abs(), t: s.t });
            }
            report.max_constraint = report.max_constraint.max(v.abs());
        }
        report.max_deviation = report.max_deviation.max((p.x - ck_closed_form(osc, x0, v0, s.t)).abs());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn osc() -> Oscillator {
        Oscillator::new(1.0, 0.4, 1.0).unwrap()
    }

    #[test]
    fn undamped_start_is_orthogonal_mixing() {
        let o = Oscillator::new(1.0, 0.0, 1.0).unwrap();
        let s = PhaseState::new(1.0, 2.0, 3.0, 4.0, 0.0);
        let p = bat2ck(&o, &s).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((p.x - r * 4.0).abs() < 1e-15);
        assert!((p.y - r * 2.0).abs() < 1e-15);
        assert!((p.p_x - r * 6.0).abs() < 1e-15);
        assert!((p.p_y - r * 2.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_round_trip() {
        let s = PhaseState::new(0.3, -1.2, 0.8, 0.5, 1.7);
        let back = ck2bat(&osc(), &bat2ck(&osc(), &s).unwrap()).unwrap();
        for (a, b) in back.array().iter().zip(s.array().iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn jacobian_time_derivative_matches_differences() {
        let h = 1e-6;
        let a = jacobian(&osc(), 0.7 + h).unwrap();
        let b = jacobian(&osc(), 0.7 - h).unwrap();
        let d = jacobian_dt(&osc(), 0.7).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!(((a[i][j] - b[i][j]) / (2.0 * h) - d[i][j]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn correction_is_nonzero() {
        let s = PhaseState::new(0.3, -1.2, 0.8, 0.5, 1.7);
        assert!(hamiltonian_correction(&osc(), &s).unwrap().abs() > 1e-3);
    }

    #[test]
    fn zero_start_stays_zero() {
        let r = constrained_reduction_check(&osc(), 0.0, 0.0, 10.0, 1e-10).unwrap();
        assert_eq!(r.max_deviation, 0.0);
        assert_eq!(r.max_constraint, 0.0);
    }

    #[test]
    fn critical_damping_is_rejected() {
        let o = Oscillator::new(1.0, 2.0, 1.0).unwrap();
        assert!(bat2ck(&o, &PhaseState::default()).is_err());
    }
}
