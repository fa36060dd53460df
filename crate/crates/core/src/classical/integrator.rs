//! Dormand-Prince 5(4) with embedded error control and PI step selection.

use crate::error::{Error, Result};

pub type State = [f64; 4];

pub const LOCAL_FACTOR: f64 = 0.05;

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights equal the last row of A (FSAL)
const B: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
// B minus the fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub times: Vec<f64>,
    pub states: Vec<State>,
    pub accepted: usize,
    pub rejected: usize,
}

fn axpy(y: &State, h: f64, ks: &[State], coeffs: &[f64]) -> State {
    let mut out = *y;
    for (k, c) in ks.iter().zip(coeffs) {
        if *c != 0.0 {
            for i in 0..4 {
                out[i] += h * c * k[i];
            }
        }
    }
    out
}

/// Integrates `y' = f(t, y)` from `t0` to `t_end` (`t_end > t0`).
///
/// The local error is held to `atol = rtol = LOCAL_FACTOR * tol`, which keeps
/// the accumulated error over a few dozen periods near `tol`. Every accepted
/// step is recorded.
pub fn dopri5<F>(f: F, t0: f64, y0: State, t_end: f64, tol: f64) -> Result<Solution>
where
    F: Fn(f64, &State) -> State,
{
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidParameters(format!("tolerance must be positive, got {tol}")));
    }
    if !(t_end > t0) || !t_end.is_finite() {
        return Err(Error::InvalidParameters(format!("need t_end > t0, got [{t0}, {t_end}]")));
    }
    let ctl = LOCAL_FACTOR * tol;
    let span = t_end - t0;
    let h_min = 1e-14 * t_end.abs().max(span);
    let scale = |a: &State, b: &State| -> [f64; 4] {
        let mut s = [0.0; 4];
        for i in 0..4 {
            s[i] = ctl + ctl * a[i].abs().max(b[i].abs());
        }
        s
    };
    let rms = |v: &State, sc: &[f64; 4]| -> f64 {
        (v.iter().zip(sc).map(|(x, s)| (x / s).powi(2)).sum::<f64>() / 4.0).sqrt()
    };

    let mut t = t0;
    let mut y = y0;
    let mut k0 = f(t, &y);

    // initial step after Hairer, Norsett & Wanner
    let sc = scale(&y, &y);
    let d0 = rms(&y, &sc);
    let d1 = rms(&k0, &sc);
    let mut h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h = h.min(span);
    let y1 = axpy(&y, h, &[k0], &[1.0]);
    let k1 = f(t + h, &y1);
    let diff: State = std::array::from_fn(|i| k1[i] - k0[i]);
    let d2 = rms(&diff, &sc) / h;
    let h1 = if d1.max(d2) <= 1e-15 { (h * 1e-3).max(1e-6) } else { (0.01 / d1.max(d2)).powf(0.2) };
    h = (100.0 * h).min(h1).min(span);

    let mut out = Solution { times: vec![t], states: vec![y], accepted: 0, rejected: 0 };
    let mut err_prev: f64 = 1e-4;
    let mut last_rejected = false;
    loop {
        if h < h_min {
            return Err(Error::StepUnderflow { t, step: h });
        }
        let finishing = t + h >= t_end - h_min;
        if finishing {
            h = t_end - t;
        }
        let mut ks: [State; 7] = [k0; 7];
        for s in 1..7 {
            let yi = axpy(&y, h, &ks[..s], &A[s][..s]);
            ks[s] = f(t + C[s] * h, &yi);
        }
        let y_new = axpy(&y, h, &ks, &B);
        let err_vec = axpy(&[0.0; 4], h, &ks, &E);
        let err = rms(&err_vec, &scale(&y, &y_new));
        if !err.is_finite() {
            return Err(Error::StepUnderflow { t, step: h });
        }
        if err <= 1.0 {
            t = if finishing { t_end } else { t + h };
            y = y_new;
            k0 = ks[6];
            out.times.push(t);
            out.states.push(y);
            out.accepted += 1;
            if finishing {
                return Ok(out);
            }
            let mut fac = 0.9 * err.max(1e-10).powf(-0.17) * err_prev.powf(0.04);
            fac = fac.clamp(0.2, 10.0);
            if last_rejected {
                fac = fac.min(1.0);
            }
            err_prev = err.max(1e-4);
            h *= fac;
            last_rejected = false;
        } else {
            out.rejected += 1;
            h *= (0.9 * err.powf(-0.2)).max(0.2);
            last_rejected = true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let sol = dopri5(|_, y| [-y[0], 0.0, 0.0, 0.0], 0.0, [1.0, 0.0, 0.0, 0.0], 2.0, 1e-10).unwrap();
        let last = sol.states.last().unwrap()[0];
        assert!((last - (-2.0f64).exp()).abs() < 1e-9);
        assert_eq!(*sol.times.last().unwrap(), 2.0);
        assert!(sol.times.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = |_: f64, y: &State| *y;
        assert!(dopri5(f, 0.0, [0.0; 4], 1.0, 0.0).is_err());
        assert!(dopri5(f, 1.0, [0.0; 4], 1.0, 1e-6).is_err());
    }

    #[test]
    fn blow_up_underflows() {
        // y' = y^2 from y(0) = 1 diverges at t = 1
        let r = dopri5(|_, y| [y[0] * y[0], 0.0, 0.0, 0.0], 0.0, [1.0, 0.0, 0.0, 0.0], 2.0, 1e-8);
        assert!(matches!(r, Err(Error::StepUnderflow { .. })));
    }
}
