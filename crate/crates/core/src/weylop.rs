//! Differential operators with time-dependent coefficients.
//!
//! A [`WeylOp`] is a finite sum `sum_k f_k(t) * x^a * y^b * d_x^c * d_y^d * d_t^e`
//! over one or two base variables, kept in normal order: multiplication
//! operators left of derivatives, `d_t` rightmost. Coefficients are
//! [`ExpPoly`] values. Products are normal-ordered with
//! `d_v x_v = x_v d_v + 1` and `d_t f(t) = f(t) d_t + f'(t)`.
//!
//! Terms may carry at most one `d_t`. [`WeylOp::mul`] and
//! [`WeylOp::commutator`] report [`Error::TimeDerivativeOrder`] rather than
//! silently producing a second-order time derivative. The commutator of two
//! first-order generators is fine because the `d_t^2` pieces cancel.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{Params, ScalarPoly};
use crate::timecoeff::ExpPoly;

/// Ordered names of the one or two base variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSpace {
    names: Vec<String>,
}

impl VarSpace {
    pub fn new(names: &[&str]) -> Result<Self> {
        if names.is_empty() || names.len() > 2 {
            return Err(Error::InvalidParameters(format!(
                "a variable space has one or two variables, got {}",
                names.len()
            )));
        }
        if names.len() == 2 && names[0] == names[1] {
            return Err(Error::InvalidParameters(format!("duplicate variable `{}`", names[0])));
        }
        Ok(Self { names: names.iter().map(|s| s.to_string()).collect() })
    }

    pub fn single(name: &str) -> Self {
        Self { names: vec![name.to_string()] }
    }

    /// Panics if the names coincide.
    pub fn pair(first: &str, second: &str) -> Self {
        Self::new(&[first, second]).expect("distinct variable names")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Powers in one normal-ordered monomial. Unused variable slots stay zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoKey {
    pub mult: [u32; 2],
    pub der: [u32; 2],
    pub dt: u32,
}

/// Supplies partial derivatives of a function at a fixed evaluation point.
pub trait Partials {
    /// `d^orders[0]/dv0 d^orders[1]/dv1 d^time_order/dt f`, or `None` if not
    /// available.
    fn partial(&self, orders: [u32; 2], time_order: u32) -> Option<Complex64>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOp {
    space: VarSpace,
    terms: BTreeMap<MonoKey, ExpPoly>,
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn falling(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64)
}

impl WeylOp {
    pub fn zero(space: &VarSpace) -> Self {
        Self { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn identity(space: &VarSpace) -> Self {
        Self::scalar(space, ExpPoly::one())
    }

    /// Multiplication by a function of time.
    pub fn scalar(space: &VarSpace, c: ExpPoly) -> Self {
        Self::monomial(space, MonoKey::default(), c)
    }

    pub fn constant(space: &VarSpace, c: ScalarPoly) -> Self {
        Self::scalar(space, ExpPoly::constant(c))
    }

    pub fn monomial(space: &VarSpace, key: MonoKey, c: ExpPoly) -> Self {
        let mut op = Self::zero(space);
        op.add_term(key, c);
        op
    }

    /// Multiplication by base variable `var`.
    pub fn var(space: &VarSpace, var: usize) -> Self {
        assert!(var < space.dim(), "variable index out of range");
        let mut key = MonoKey::default();
        key.mult[var] = 1;
        Self::monomial(space, key, ExpPoly::one())
    }

    /// `d/d(var)`.
    pub fn deriv(space: &VarSpace, var: usize) -> Self {
        assert!(var < space.dim(), "variable index out of range");
        let mut key = MonoKey::default();
        key.der[var] = 1;
        Self::monomial(space, key, ExpPoly::one())
    }

    /// `d/dt`.
    pub fn dt(space: &VarSpace) -> Self {
        Self::monomial(space, MonoKey { dt: 1, ..MonoKey::default() }, ExpPoly::one())
    }

    pub fn space(&self) -> &VarSpace {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoKey, &ExpPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &MonoKey) -> ExpPoly {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains_dt(&self) -> bool {
        self.terms.keys().any(|k| k.dt > 0)
    }

    fn add_term(&mut self, key: MonoKey, c: ExpPoly) {
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

    fn check_space(&self, other: &WeylOp) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space.names.clone(),
                right: other.space.names.clone(),
            });
        }
        Ok(())
    }

    fn check_dt_cap(self) -> Result<Self> {
        match self.terms.keys().map(|k| k.dt).max() {
            Some(d) if d > 1 => Err(Error::TimeDerivativeOrder(d)),
            _ => Ok(self),
        }
    }

    pub fn scale(&self, c: &ExpPoly) -> Self {
        let mut out = Self::zero(&self.space);
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn scale_scalar(&self, c: &ScalarPoly) -> Self {
        let mut out = Self::zero(&self.space);
        for (k, v) in &self.terms {
            out.add_term(*k, v.scale(c));
        }
        out
    }

    /// Applies `f` to every coefficient, keeping the monomial structure.
    pub fn map_coefficients(&self, f: impl Fn(&ExpPoly) -> ExpPoly) -> Self {
        let mut out = Self::zero(&self.space);
        for (k, v) in &self.terms {
            out.add_term(*k, f(v));
        }
        out
    }

    pub fn try_map_coefficients(&self, f: impl Fn(&ExpPoly) -> Result<ExpPoly>) -> Result<Self> {
        let mut out = Self::zero(&self.space);
        for (k, v) in &self.terms {
            out.add_term(*k, f(v)?);
        }
        Ok(out)
    }

    /// Coefficient-wise time derivative (the explicit `dO/dt`).
    pub fn d_dt_coefficients(&self) -> Self {
        self.map_coefficients(ExpPoly::d_dt)
    }

    /// Normal-ordered product of two monomials, any `d_t` order.
    fn mul_terms(&self, out: &mut WeylOp, ka: &MonoKey, fa: &ExpPoly, kb: &MonoKey, fb: &ExpPoly) {
        let dim = self.space.dim();
        // d_t^{ca} fb = sum_j C(ca, j) fb^{(j)} d_t^{ca - j}
        let mut deriv = fb.clone();
        for j in 0..=ka.dt {
            if j > 0 {
                deriv = deriv.d_dt();
            }
            if deriv.is_zero() {
                break;
            }
            let coeff = fa * &deriv;
            let time_factor = binomial(ka.dt, j);
            // d^beta x^alpha' = sum_l C(beta, l) alpha'!/(alpha'-l)! x^{alpha'-l} d^{beta-l},
            // independently per variable.
            let mut partial: Vec<(MonoKey, i64)> =
                vec![(MonoKey { dt: ka.dt - j + kb.dt, ..MonoKey::default() }, time_factor)];
            for v in 0..dim {
                let beta = ka.der[v];
                let alpha = kb.mult[v];
                let mut next = Vec::new();
                for (key, c) in &partial {
                    for l in 0..=beta.min(alpha) {
                        let mut k = *key;
                        k.mult[v] = ka.mult[v] + alpha - l;
                        k.der[v] = beta - l + kb.der[v];
                        next.push((k, c * binomial(beta, l) * falling(alpha, l)));
                    }
                }
                partial = next;
            }
            for (key, c) in partial {
                out.add_term(key, coeff.scale(&ScalarPoly::int(c)));
            }
        }
    }

    fn mul_unchecked(&self, other: &WeylOp) -> Result<WeylOp> {
        self.check_space(other)?;
        let mut out = WeylOp::zero(&self.space);
        for (ka, fa) in &self.terms {
            for (kb, fb) in &other.terms {
                self.mul_terms(&mut out, ka, fa, kb, fb);
            }
        }
        Ok(out)
    }

    /// Operator product `self * other` in normal order.
    pub fn mul(&self, other: &WeylOp) -> Result<WeylOp> {
        self.mul_unchecked(other)?.check_dt_cap()
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &WeylOp) -> Result<WeylOp> {
        let ab = self.mul_unchecked(other)?;
        let ba = other.mul_unchecked(self)?;
        (ab - ba).check_dt_cap()
    }

    pub fn pow(&self, n: u32) -> Result<WeylOp> {
        let mut acc = WeylOp::identity(&self.space);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Formal adjoint under the flat measure, treating every symbol and `t` as
    /// real: `(f x^a d^b)^+ = (-1)^|b| d^b x^a conj(f)`.
    pub fn formal_adjoint(&self) -> Result<WeylOp> {
        if self.contains_dt() {
            return Err(Error::ContainsTimeDerivative(self.to_string()));
        }
        let mut out = WeylOp::zero(&self.space);
        for (key, c) in &self.terms {
            let sign = if (key.der[0] + key.der[1]) % 2 == 0 { 1 } else { -1 };
            let ders = WeylOp::monomial(
                &self.space,
                MonoKey { der: key.der, ..MonoKey::default() },
                conj_exp(c).scale(&ScalarPoly::int(sign)),
            );
            let mults = WeylOp::monomial(
                &self.space,
                MonoKey { mult: key.mult, ..MonoKey::default() },
                ExpPoly::one(),
            );
            out = out + ders.mul(&mults)?;
        }
        Ok(out)
    }

    /// Value of `(self f)` at `point` and time `t`.
    pub fn apply_numeric(
        &self,
        f: &dyn Partials,
        point: &[f64],
        t: f64,
        params: &Params,
    ) -> Result<Complex64> {
        if point.len() != self.space.dim() {
            return Err(Error::PointDimension { expected: self.space.dim(), got: point.len() });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (key, c) in &self.terms {
            let coeff = c.eval(t, params)?;
            let mut mono = Complex64::new(1.0, 0.0);
            for (v, x) in point.iter().enumerate() {
                mono *= x.powi(key.mult[v] as i32);
            }
            let value = f.partial(key.der, key.dt).ok_or(Error::MissingPartial {
                orders: key.der,
                time_order: key.dt,
            })?;
            acc += coeff * mono * value;
        }
        Ok(acc)
    }

    pub fn specialize(&self, sym: crate::scalar::Symbol, value: &crate::scalar::GaussianRational) -> Result<Self> {
        self.try_map_coefficients(|c| c.specialize(sym, value))
    }
}

fn conj_scalar(p: &ScalarPoly) -> ScalarPoly {
    let mut out = ScalarPoly::zero();
    for (e, c) in p.terms() {
        out += &ScalarPoly::monomial(c.conj(), *e);
    }
    out
}

fn conj_exp(f: &ExpPoly) -> ExpPoly {
    let mut out = ExpPoly::zero();
    for (k, c) in f.terms() {
        out += &ExpPoly::term(conj_scalar(c), k.a, -k.b, k.p);
    }
    out
}

impl Add for WeylOp {
    type Output = WeylOp;
    /// Panics if the spaces differ.
    fn add(mut self, rhs: WeylOp) -> WeylOp {
        assert_eq!(self.space, rhs.space, "adding operators on different spaces");
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl Add<&WeylOp> for &WeylOp {
    type Output = WeylOp;
    fn add(self, rhs: &WeylOp) -> WeylOp {
        self.clone() + rhs.clone()
    }
}

impl Neg for WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        self.scale_scalar(&ScalarPoly::int(-1))
    }
}

impl Sub for WeylOp {
    type Output = WeylOp;
    fn sub(self, rhs: WeylOp) -> WeylOp {
        self + (-rhs)
    }
}

impl Sub<&WeylOp> for &WeylOp {
    type Output = WeylOp;
    fn sub(self, rhs: &WeylOp) -> WeylOp {
        self.clone() - rhs.clone()
    }
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (key, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if c.len() == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})")?;
            }
            for (v, name) in self.space.names.iter().enumerate() {
                match key.mult[v] {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    p => write!(f, "*{name}^{p}")?,
                }
            }
            for (v, name) in self.space.names.iter().enumerate() {
                match key.der[v] {
                    0 => {}
                    1 => write!(f, "*d_{name}")?,
                    p => write!(f, "*d_{name}^{p}")?,
                }
            }
            match key.dt {
                0 => {}
                1 => f.write_str("*d_t")?,
                p => write!(f, "*d_t^{p}")?,
            }
        }
        Ok(())
    }
}
