//! Time-dependent coefficients as exponential polynomials
//! `sum c(a,b,p) * t^p * exp((a*gamma/2 + i*b*Omega) t)` with integer `a, b`
//! and `c` a [`ScalarPoly`]. The ring is closed under `+`, `*` and `d/dt`, and
//! every value is kept canonical so that an identity holds iff the difference
//! has no terms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{Params, ScalarPoly, Symbol};

/// Lattice point `(a, b)` of the exponent `a*gamma/2 + i*b*Omega`, plus the
/// power `p` of `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpKey {
    pub a: i32,
    pub b: i32,
    pub p: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trig {
    Sin,
    Cos,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExpPoly {
    terms: BTreeMap<ExpKey, ScalarPoly>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ScalarPoly::one())
    }

    pub fn constant(c: ScalarPoly) -> Self {
        Self::term(c, 0, 0, 0)
    }

    /// `c * t^p * exp((a*gamma/2 + i*b*Omega) t)`.
    pub fn term(c: ScalarPoly, a: i32, b: i32, p: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ExpKey { a, b, p }, c);
        }
        Self { terms }
    }

    /// `exp((a*gamma/2 + i*b*Omega) t)`.
    pub fn exp(a: i32, b: i32) -> Self {
        Self::term(ScalarPoly::one(), a, b, 0)
    }

    pub fn t_pow(p: u32) -> Self {
        Self::term(ScalarPoly::one(), 0, 0, p)
    }

    /// `sin(Omega t)` or `cos(Omega t)` times `exp(a*gamma*t/2)`.
    pub fn from_trig(kind: Trig, a: i32) -> Self {
        let (plus, minus) = match kind {
            // 1/(2i) = -i/2
            Trig::Sin => (
                ScalarPoly::ratio(-1, 2) * ScalarPoly::i(),
                ScalarPoly::ratio(1, 2) * ScalarPoly::i(),
            ),
            Trig::Cos => (ScalarPoly::ratio(1, 2), ScalarPoly::ratio(1, 2)),
        };
        Self::term(plus, a, 1, 0) + Self::term(minus, a, -1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpKey, &ScalarPoly)> {
        self.terms.iter()
    }

    /// The coefficient if this is a time-independent constant.
    pub fn as_constant(&self) -> Option<ScalarPoly> {
        match self.terms.len() {
            0 => Some(ScalarPoly::zero()),
            1 => self.terms.get(&ExpKey { a: 0, b: 0, p: 0 }).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &ScalarPoly) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    fn add_term(&mut self, key: ExpKey, c: ScalarPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Termwise `t^p e^{mu t} -> p t^{p-1} e^{mu t} + mu t^p e^{mu t}`.
    pub fn d_dt(&self) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            if key.p > 0 {
                out.add_term(
                    ExpKey { p: key.p - 1, ..*key },
                    c * ScalarPoly::int(key.p as i64),
                );
            }
            let mu = ScalarPoly::ratio(key.a as i64, 2) * ScalarPoly::gamma()
                + ScalarPoly::int(key.b as i64) * ScalarPoly::i() * ScalarPoly::big_omega();
            out.add_term(*key, c * mu);
        }
        out
    }

    pub fn eval(&self, t: f64, params: &Params) -> Result<Complex64> {
        let gamma = params.get(Symbol::Gamma);
        let omega = params.get(Symbol::Omega);
        let i = Complex64::new(0.0, 1.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (key, c) in &self.terms {
            let mu = gamma * (key.a as f64 / 2.0) + i * omega * key.b as f64;
            acc += c.eval(params)? * (mu * t).exp() * t.powi(key.p as i32);
        }
        Ok(acc)
    }

    /// Multiplicative inverse of a single exponential term with an invertible
    /// coefficient and no power of `t`.
    pub fn inverse(&self) -> Result<Self> {
        let not_unit = || Error::NotAUnit(self.to_string());
        if self.terms.len() != 1 {
            return Err(not_unit());
        }
        let (key, c) = self.terms.iter().next().ok_or_else(not_unit)?;
        if key.p != 0 {
            return Err(not_unit());
        }
        let inv = c.inverse().ok_or_else(not_unit)?;
        Ok(Self::term(inv, -key.a, -key.b, 0))
    }

    /// Substitutes `sym = value`. Setting gamma or Omega to zero collapses the
    /// corresponding lattice index; a nonzero value for either leaves the
    /// lattice and is rejected when the exponent actually depends on it.
    pub fn specialize(&self, sym: Symbol, value: &crate::scalar::GaussianRational) -> Result<Self> {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            let mut key = *k;
            let rate = match sym {
                Symbol::Gamma => Some(&mut key.a),
                Symbol::Omega => Some(&mut key.b),
                _ => None,
            };
            if let Some(idx) = rate {
                if *idx != 0 {
                    if !value.is_zero() {
                        return Err(Error::InvalidParameters(format!(
                            "cannot specialize {sym} = {value} inside an exponent"
                        )));
                    }
                    *idx = 0;
                }
            }
            out.add_term(key, c.specialize(sym, value)?);
        }
        Ok(out)
    }
}

impl From<ScalarPoly> for ExpPoly {
    fn from(c: ScalarPoly) -> Self {
        ExpPoly::constant(c)
    }
}

impl AddAssign<&ExpPoly> for ExpPoly {
    fn add_assign(&mut self, rhs: &ExpPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl SubAssign<&ExpPoly> for ExpPoly {
    fn sub_assign(&mut self, rhs: &ExpPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, -c);
        }
    }
}

impl Add<&ExpPoly> for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&ExpPoly> for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&ExpPoly> for &ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let key = ExpKey { a: ka.a + kb.a, b: ka.b + kb.b, p: ka.p + kb.p };
                out.add_term(key, ca * cb);
            }
        }
        out
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<ExpPoly> for ExpPoly {
            type Output = ExpPoly;
            fn $m(self, rhs: ExpPoly) -> ExpPoly { (&self).$m(&rhs) }
        }
        impl $tr<&ExpPoly> for ExpPoly {
            type Output = ExpPoly;
            fn $m(self, rhs: &ExpPoly) -> ExpPoly { (&self).$m(rhs) }
        }
        impl $tr<ExpPoly> for &ExpPoly {
            type Output = ExpPoly;
            fn $m(self, rhs: ExpPoly) -> ExpPoly { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

fn fmt_exponent(a: i32, b: i32) -> String {
    let mut parts = Vec::new();
    if a != 0 {
        parts.push(match a {
            1 => "gamma/2".to_string(),
            -1 => "-gamma/2".to_string(),
            2 => "gamma".to_string(),
            -2 => "-gamma".to_string(),
            a if a % 2 == 0 => format!("{}*gamma", a / 2),
            a => format!("{a}*gamma/2"),
        });
    }
    if b != 0 {
        let s = match b {
            1 => "i*Omega".to_string(),
            -1 => "-i*Omega".to_string(),
            b => format!("{b}*i*Omega"),
        };
        if !parts.is_empty() && !s.starts_with('-') {
            parts.push(format!("+{s}"));
        } else {
            parts.push(s);
        }
    }
    parts.concat()
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (key, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{c}]")?;
            if key.a != 0 || key.b != 0 {
                write!(f, "*exp(({})*t)", fmt_exponent(key.a, key.b))?;
            }
            match key.p {
                0 => {}
                1 => f.write_str("*t")?,
                p => write!(f, "*t^{p}")?,
            }
        }
        Ok(())
    }
}

/// The damped-oscillator solution pair with `u1(0) = 0, u1'(0) = 1` and
/// `u2(0) = 1, u2'(0) = 0`:
///
/// `u1 = exp(-gamma t/2) sin(Omega t) / Omega`,
/// `u2 = exp(-gamma t/2) (cos(Omega t) + gamma/(2 Omega) sin(Omega t))`.
pub fn damped_solutions() -> (ExpPoly, ExpPoly) {
    let inv_omega = ScalarPoly::pow(Symbol::Omega, -1);
    let sin = ExpPoly::from_trig(Trig::Sin, -1);
    let cos = ExpPoly::from_trig(Trig::Cos, -1);
    let u1 = sin.scale(&inv_omega);
    let u2 = cos + sin.scale(&(ScalarPoly::ratio(1, 2) * ScalarPoly::gamma() * inv_omega));
    (u1, u2)
}

/// `u1' u2 - u1 u2'`.
pub fn wronskian(u1: &ExpPoly, u2: &ExpPoly) -> ExpPoly {
    u1.d_dt() * u2 - u1 * u2.d_dt()
}

/// Applies `f'' + gamma f' + omega^2 f`.
pub fn dho_operator(f: &ExpPoly) -> ExpPoly {
    let d1 = f.d_dt();
    let d2 = d1.d_dt();
    d2 + d1.scale(&ScalarPoly::gamma()) + f.scale(&ScalarPoly::omega_sq())
}
