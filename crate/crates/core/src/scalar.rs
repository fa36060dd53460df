//! Exact scalar coefficients: Laurent polynomials in `m, hbar, gamma, Omega, k`
//! with Gaussian-rational coefficients.
//!
//! The undamped frequency `omega` is never stored. It enters through
//! [`ScalarPoly::omega_sq`], which expands to `Omega^2 + gamma^2/4`.
//!
//! Text form, used for reports and accepted by [`ScalarPoly::from_str`]:
//!
//! ```text
//! i*k + 1/2*gamma*Omega^-1 + (1-2*i)*hbar^2 - 3*m
//! ```
//!
//! Terms appear in ascending exponent-lexicographic order over
//! `(m, hbar, gamma, Omega, k)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Symbol {
    M,
    Hbar,
    Gamma,
    Omega,
    K,
}

impl Symbol {
    pub const ALL: [Symbol; 5] = [Symbol::M, Symbol::Hbar, Symbol::Gamma, Symbol::Omega, Symbol::K];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::M => "m",
            Symbol::Hbar => "hbar",
            Symbol::Gamma => "gamma",
            Symbol::Omega => "Omega",
            Symbol::K => "k",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// The extension parameter `k` only ever appears polynomially.
    pub fn allows_negative(self) -> bool {
        !matches!(self, Symbol::K)
    }

    fn from_name(s: &str) -> Option<Symbol> {
        Symbol::ALL.iter().copied().find(|sym| sym.name() == s)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact `re + i*im` with arbitrary-precision rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num/den` on the real axis. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn inverse(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }

    fn is_negative_imag(&self) -> bool {
        self.re.is_zero() && self.im.is_negative()
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => f.write_str(&fmt_rational(&self.re)),
            (true, false) => {
                if self.im.is_one() {
                    f.write_str("i")
                } else if (-self.im.clone()).is_one() {
                    f.write_str("-i")
                } else {
                    write!(f, "{}*i", fmt_rational(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({}{}{}*i)", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
            }
        }
    }
}

/// Exponents of `(m, hbar, gamma, Omega, k)`.
pub type Exponents = [i32; 5];

/// Numeric values for each symbol, in [`Symbol::ALL`] order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    values: [Complex64; 5],
}

impl Default for Params {
    fn default() -> Self {
        Self { values: [Complex64::new(1.0, 0.0); 5] }
    }
}

impl Params {
    /// All symbols set to 1.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, sym: Symbol, value: impl Into<Complex64>) -> Self {
        self.values[sym.index()] = value.into();
        self
    }

    pub fn get(&self, sym: Symbol) -> Complex64 {
        self.values[sym.index()]
    }

    pub fn set(&mut self, sym: Symbol, value: impl Into<Complex64>) {
        self.values[sym.index()] = value.into();
    }
}

/// Laurent polynomial over the Gaussian rationals. Always canonical: no zero
/// coefficients are stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ScalarPoly {
    terms: BTreeMap<Exponents, GaussianRational>,
}

impl ScalarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussianRational::ratio(num, den))
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, [0; 5])
    }

    pub fn symbol(sym: Symbol) -> Self {
        Self::pow(sym, 1)
    }

    /// `sym^e`. Panics on a negative power of `k`.
    pub fn pow(sym: Symbol, e: i32) -> Self {
        let mut exps = [0; 5];
        exps[sym.index()] = e;
        Self::monomial(GaussianRational::one(), exps)
    }

    /// Panics if `exps` gives `k` a negative power.
    pub fn monomial(c: GaussianRational, exps: Exponents) -> Self {
        assert!(exps[Symbol::K.index()] >= 0, "k admits only nonnegative exponents");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    /// `omega^2 = Omega^2 + gamma^2/4`.
    pub fn omega_sq() -> Self {
        Self::pow(Symbol::Omega, 2) + Self::ratio(1, 4) * Self::pow(Symbol::Gamma, 2)
    }

    pub fn m() -> Self {
        Self::symbol(Symbol::M)
    }

    pub fn hbar() -> Self {
        Self::symbol(Symbol::Hbar)
    }

    pub fn gamma() -> Self {
        Self::symbol(Symbol::Gamma)
    }

    pub fn big_omega() -> Self {
        Self::symbol(Symbol::Omega)
    }

    pub fn k() -> Self {
        Self::symbol(Symbol::K)
    }

    /// `i*hbar`, the prefactor of nearly every bracket.
    pub fn i_hbar() -> Self {
        Self::i() * Self::hbar()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&[0; 5]).is_some_and(GaussianRational::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GaussianRational)> {
        self.terms.iter()
    }

    /// The constant term, if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&[0; 5]).cloned(),
            _ => None,
        }
    }

    /// Multiplicative inverse, defined only for single-term polynomials with
    /// no `k` dependence.
    pub fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (exps, c) = self.terms.iter().next()?;
        if exps[Symbol::K.index()] != 0 {
            return None;
        }
        let inv = c.inverse()?;
        let neg = exps.map(|e| -e);
        Some(Self::monomial(inv, neg))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    fn add_term(&mut self, exps: Exponents, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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

    /// Rebuilds the term map dropping zero coefficients. Construction already
    /// maintains the invariant, so this is the identity on every value.
    pub fn canonical(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    /// Numerical value. Terms are summed in sorted exponent order.
    pub fn eval(&self, params: &Params) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (exps, c) in &self.terms {
            let mut term = c.to_complex();
            for sym in Symbol::ALL {
                let e = exps[sym.index()];
                if e == 0 {
                    continue;
                }
                let v = params.get(sym);
                if e < 0 && v == Complex64::new(0.0, 0.0) {
                    return Err(Error::DivisionByZero(sym));
                }
                term *= v.powi(e);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitute an exact value for one symbol.
    pub fn specialize(&self, sym: Symbol, value: &GaussianRational) -> Result<Self> {
        let inv = value.inverse();
        let mut out = Self::zero();
        for (exps, c) in &self.terms {
            let e = exps[sym.index()];
            let base = if e >= 0 {
                value.clone()
            } else {
                inv.clone().ok_or(Error::DivisionByZero(sym))?
            };
            let mut factor = GaussianRational::one();
            for _ in 0..e.unsigned_abs() {
                factor = &factor * &base;
            }
            let mut rest = *exps;
            rest[sym.index()] = 0;
            out.add_term(rest, c * &factor);
        }
        Ok(out)
    }

    /// Largest power of `sym` appearing in any term, or `None` for zero.
    pub fn degree(&self, sym: Symbol) -> Option<i32> {
        self.terms.keys().map(|e| e[sym.index()]).max()
    }
}

impl From<i64> for ScalarPoly {
    fn from(n: i64) -> Self {
        ScalarPoly::int(n)
    }
}

impl From<GaussianRational> for ScalarPoly {
    fn from(c: GaussianRational) -> Self {
        ScalarPoly::constant(c)
    }
}

impl Add<&ScalarPoly> for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&ScalarPoly> for ScalarPoly {
    fn add_assign(&mut self, rhs: &ScalarPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&ScalarPoly> for ScalarPoly {
    fn sub_assign(&mut self, rhs: &ScalarPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Sub<&ScalarPoly> for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&ScalarPoly> for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        ScalarPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<ScalarPoly> for ScalarPoly {
            type Output = ScalarPoly;
            fn $m(self, rhs: ScalarPoly) -> ScalarPoly { (&self).$m(&rhs) }
        }
        impl $tr<&ScalarPoly> for ScalarPoly {
            type Output = ScalarPoly;
            fn $m(self, rhs: &ScalarPoly) -> ScalarPoly { (&self).$m(rhs) }
        }
        impl $tr<ScalarPoly> for &ScalarPoly {
            type Output = ScalarPoly;
            fn $m(self, rhs: ScalarPoly) -> ScalarPoly { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        -&self
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (exps, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative_real() || c.is_negative_imag();
            let shown = if negative { -c } else { c.clone() };
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let factors: Vec<String> = Symbol::ALL
                .iter()
                .filter(|s| exps[s.index()] != 0)
                .map(|s| match exps[s.index()] {
                    1 => s.name().to_string(),
                    e => format!("{}^{}", s.name(), e),
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{shown}")?;
            } else if shown.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{}*{}", shown, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse { input: input.to_string(), reason: reason.into() }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().ok()?;
    let den: BigInt = den.trim().parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Splits at depth-0 occurrences of `sep`.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_complex_paren(inner: &str, whole: &str) -> Result<GaussianRational> {
    // `a+b*i` or `a-b*i`, the sign separating the parts is the last +/- not
    // at position 0.
    let body = inner.trim();
    let pos = body
        .char_indices()
        .skip(1)
        .filter(|(_, c)| *c == '+' || *c == '-')
        .map(|(i, _)| i)
        .last()
        .ok_or_else(|| parse_err(whole, "expected `a+b*i`"))?;
    let re = parse_rational(&body[..pos]).ok_or_else(|| parse_err(whole, "bad real part"))?;
    let sign = &body[pos..pos + 1];
    let im_str = body[pos + 1..]
        .trim()
        .strip_suffix("*i")
        .or_else(|| body[pos + 1..].trim().strip_suffix('i'))
        .ok_or_else(|| parse_err(whole, "imaginary part must end in `i`"))?;
    let im_str = if im_str.is_empty() { "1" } else { im_str };
    let mut im = parse_rational(im_str).ok_or_else(|| parse_err(whole, "bad imaginary part"))?;
    if sign == "-" {
        im = -im;
    }
    Ok(GaussianRational::new(re, im))
}

fn parse_factor(tok: &str, whole: &str) -> Result<ScalarPoly> {
    let tok = tok.trim();
    if tok.is_empty() {
        return Err(parse_err(whole, "empty factor"));
    }
    if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        return Ok(ScalarPoly::constant(parse_complex_paren(inner, whole)?));
    }
    if tok == "i" {
        return Ok(ScalarPoly::i());
    }
    if let Some(r) = parse_rational(tok) {
        return Ok(ScalarPoly::constant(GaussianRational::new(r, BigRational::zero())));
    }
    let (name, exp) = match tok.split_once('^') {
        Some((n, e)) => {
            let e: i32 = e.trim().parse().map_err(|_| parse_err(whole, "bad exponent"))?;
            (n.trim(), e)
        }
        None => (tok, 1),
    };
    let sym = Symbol::from_name(name)
        .ok_or_else(|| parse_err(whole, format!("unknown symbol `{name}`")))?;
    if exp < 0 && !sym.allows_negative() {
        return Err(Error::NegativeExponent(sym));
    }
    Ok(ScalarPoly::pow(sym, exp))
}

impl FromStr for ScalarPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        if text.is_empty() {
            return Err(parse_err(s, "empty input"));
        }
        // Terms are separated by " + " / " - " at paren depth zero.
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut current = String::new();
        let mut negative = false;
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            let is_sep = depth == 0
                && (ch == '+' || ch == '-')
                && i > 0
                && chars[i - 1] == ' '
                && chars.get(i + 1) == Some(&' ');
            if is_sep {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
                i += 1;
                continue;
            }
            current.push(ch);
            i += 1;
        }
        terms.push((negative, current));

        let mut out = ScalarPoly::zero();
        for (neg, term) in terms {
            let mut term = term.trim();
            let mut sign_neg = neg;
            if let Some(rest) = term.strip_prefix('-') {
                sign_neg = !sign_neg;
                term = rest.trim_start();
            }
            let mut prod = ScalarPoly::one();
            for factor in split_top(term, '*') {
                // `1/2*i` style coefficients split into `1/2` and `i`, both fine.
                prod = prod * parse_factor(factor, s)?;
            }
            if sign_neg {
                prod = -prod;
            }
            out += &prod;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> ScalarPoly {
        ScalarPoly::gamma()
    }
    fn om() -> ScalarPoly {
        ScalarPoly::big_omega()
    }

    #[test]
    fn like_terms_merge() {
        let half = ScalarPoly::ratio(1, 2) * g() * ScalarPoly::pow(Symbol::Omega, -1);
        let sum = &half + &half;
        assert_eq!(sum, g() * ScalarPoly::pow(Symbol::Omega, -1));
    }

    #[test]
    fn additive_identity() {
        let p = ScalarPoly::m() * ScalarPoly::hbar() + ScalarPoly::i();
        assert_eq!(&p + &ScalarPoly::zero(), p);
    }

    #[test]
    fn omega_sq_cancellation() {
        let quarter_g2 = ScalarPoly::ratio(1, 4) * g() * g();
        assert_eq!(ScalarPoly::omega_sq() - quarter_g2, om() * om());
    }

    #[test]
    fn inverse_monomial_product() {
        let a = ScalarPoly::ratio(1, 2) * g() * ScalarPoly::pow(Symbol::Omega, -1);
        let b = ScalarPoly::int(2) * om();
        assert_eq!(a * b, g());
    }

    #[test]
    fn gaussian_unit() {
        assert_eq!(ScalarPoly::i() * ScalarPoly::i(), ScalarPoly::int(-1));
    }

    #[test]
    fn momentum_coefficient() {
        // m omega^2 / Omega = m Omega + m gamma^2 / (4 Omega)
        let c = ScalarPoly::m() * ScalarPoly::omega_sq() * ScalarPoly::pow(Symbol::Omega, -1);
        let expected = ScalarPoly::m() * om()
            + ScalarPoly::ratio(1, 4) * ScalarPoly::m() * g() * g() * ScalarPoly::pow(Symbol::Omega, -1);
        assert_eq!(c, expected);
    }

    #[test]
    fn eval_examples() {
        let p = ScalarPoly::ratio(1, 2) * g() * ScalarPoly::pow(Symbol::Omega, -1);
        let params = Params::new().with(Symbol::Gamma, 1.0).with(Symbol::Omega, 2.0);
        assert!((p.eval(&params).unwrap() - Complex64::new(0.25, 0.0)).norm() < 1e-15);

        let c = ScalarPoly::m() * ScalarPoly::omega_sq() * ScalarPoly::pow(Symbol::Omega, -1);
        let params = Params::new().with(Symbol::M, 1.0).with(Symbol::Gamma, 1.0).with(Symbol::Omega, 2.0);
        // (4 + 1/4) / 2
        assert!((c.eval(&params).unwrap() - Complex64::new(2.125, 0.0)).norm() < 1e-15);

        let params = Params::new().with(Symbol::K, -1.0);
        assert_eq!(ScalarPoly::k().eval(&params).unwrap(), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn eval_division_by_zero() {
        let p = ScalarPoly::pow(Symbol::Omega, -1);
        let params = Params::new().with(Symbol::Omega, 0.0);
        assert_eq!(p.eval(&params), Err(Error::DivisionByZero(Symbol::Omega)));
        // positive powers are fine at zero
        assert_eq!(om().eval(&params).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn render_is_sorted_and_parses_back() {
        let p = ScalarPoly::int(-3) * ScalarPoly::m()
            + ScalarPoly::ratio(1, 2) * g() * ScalarPoly::pow(Symbol::Omega, -1)
            + ScalarPoly::i() * ScalarPoly::k()
            + ScalarPoly::constant(GaussianRational::new(
                BigRational::new(1.into(), 3.into()),
                BigRational::new((-2).into(), 1.into()),
            )) * ScalarPoly::pow(Symbol::Hbar, 2);
        let text = p.to_string();
        assert_eq!(text, "i*k + 1/2*gamma*Omega^-1 + (1/3-2*i)*hbar^2 - 3*m");
        assert_eq!(text.parse::<ScalarPoly>().unwrap(), p);
        assert_eq!(ScalarPoly::zero().to_string(), "0");
        assert_eq!("0".parse::<ScalarPoly>().unwrap(), ScalarPoly::zero());
    }

    #[test]
    fn parse_rejects_negative_k_and_unknown_symbols() {
        assert_eq!("k^-1".parse::<ScalarPoly>(), Err(Error::NegativeExponent(Symbol::K)));
        assert!("omega".parse::<ScalarPoly>().is_err());
        assert!("1/0".parse::<ScalarPoly>().is_err());
    }

    #[test]
    fn specialize_k() {
        let p = ScalarPoly::i_hbar() * (ScalarPoly::one() + ScalarPoly::k());
        assert!(p.specialize(Symbol::K, &GaussianRational::from_int(-1)).unwrap().is_zero());
        let q = ScalarPoly::pow(Symbol::Omega, -2);
        assert!(q.specialize(Symbol::Omega, &GaussianRational::zero()).is_err());
        assert_eq!(
            q.specialize(Symbol::Omega, &GaussianRational::from_int(2)).unwrap(),
            ScalarPoly::ratio(1, 4)
        );
    }

    #[test]
    fn inverse_of_monomial() {
        let p = ScalarPoly::ratio(-2, 3) * ScalarPoly::i() * ScalarPoly::m() * ScalarPoly::pow(Symbol::Gamma, 2);
        assert!((&p * &p.inverse().unwrap()).is_one());
        assert!(ScalarPoly::k().inverse().is_none());
        assert!((ScalarPoly::m() + ScalarPoly::one()).inverse().is_none());
    }
}
