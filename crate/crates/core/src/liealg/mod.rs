//! Abstract Lie-algebra tables with a central element.
//!
//! Structure constants are [`ScalarPoly`] values, so Jacobi checks and
//! realization checks are exact. A [`Realization`] assigns a [`WeylOp`] to
//! each generator name; [`LieTable::verify_realization`] compares every
//! commutator against the table.

pub mod appendix;
pub mod realizations;
pub mod tables;

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Params, ScalarPoly, Symbol};
use crate::weylop::{VarSpace, WeylOp};

/// Sparse linear combination keyed by generator index. The central element
/// has index `basis.len()`.
pub type Combination = BTreeMap<usize, ScalarPoly>;

fn add_into(target: &mut Combination, idx: usize, c: ScalarPoly) {
    if c.is_zero() {
        return;
    }
    let entry = target.entry(idx).or_default();
    *entry += &c;
    if entry.is_zero() {
        target.remove(&idx);
    }
}

fn scale_comb(comb: &Combination, c: &ScalarPoly) -> Combination {
    let mut out = Combination::new();
    for (idx, v) in comb {
        add_into(&mut out, *idx, v * c);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieTable {
    name: String,
    basis: Vec<String>,
    central: String,
    brackets: BTreeMap<(usize, usize), Combination>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiViolation {
    pub triple: [String; 3],
    pub residual: Vec<(String, ScalarPoly)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealizationMismatch {
    pub pair: (String, String),
    pub residual: WeylOp,
}

/// One line of difference between two tables over the same basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketDiff {
    pub pair: (String, String),
    pub left: String,
    pub right: String,
}

impl LieTable {
    pub fn new(name: &str, basis: &[&str], central: &str) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for n in basis.iter().chain(std::iter::once(&central)) {
            if n.is_empty() || n.contains(char::is_whitespace) || n.contains(['[', ']', ',', '(', ')']) {
                return Err(Error::MalformedTable(format!("invalid generator name `{n}`")));
            }
            if !seen.insert(*n) {
                return Err(Error::MalformedTable(format!("duplicate generator `{n}`")));
            }
        }
        Ok(Self {
            name: name.to_string(),
            basis: basis.iter().map(|s| s.to_string()).collect(),
            central: central.to_string(),
            brackets: BTreeMap::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn central(&self) -> &str {
        &self.central
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn name_of(&self, idx: usize) -> &str {
        if idx == self.basis.len() {
            &self.central
        } else {
            &self.basis[idx]
        }
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        if name == self.central {
            return Ok(self.basis.len());
        }
        self.basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    fn named(&self, comb: &Combination) -> Vec<(String, ScalarPoly)> {
        comb.iter().map(|(i, c)| (self.name_of(*i).to_string(), c.clone())).collect()
    }

    /// Sets `[a, b] = sum c_h h`, storing the antisymmetric partner implicitly.
    pub fn set_bracket(&mut self, a: &str, b: &str, terms: &[(&str, ScalarPoly)]) -> Result<()> {
        let ia = self.index(a)?;
        let ib = self.index(b)?;
        let mut comb = Combination::new();
        for (n, c) in terms {
            add_into(&mut comb, self.index(n)?, c.clone());
        }
        let n = self.basis.len();
        if ia == n || ib == n {
            if comb.is_empty() {
                return Ok(());
            }
            return Err(Error::MalformedTable(format!(
                "bracket [{a}, {b}] with the central element must vanish"
            )));
        }
        if ia == ib {
            if comb.is_empty() {
                return Ok(());
            }
            return Err(Error::MalformedTable(format!("[{a}, {a}] must vanish")));
        }
        let (key, comb) = if ia < ib {
            ((ia, ib), comb)
        } else {
            ((ib, ia), scale_comb(&comb, &ScalarPoly::int(-1)))
        };
        if comb.is_empty() {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, comb);
        }
        Ok(())
    }

    fn bracket_idx(&self, i: usize, j: usize) -> Combination {
        let n = self.basis.len();
        if i == j || i == n || j == n {
            return Combination::new();
        }
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.brackets
                .get(&(j, i))
                .map(|c| scale_comb(c, &ScalarPoly::int(-1)))
                .unwrap_or_default()
        }
    }

    /// `[a, b]` as named terms.
    pub fn bracket(&self, a: &str, b: &str) -> Result<Vec<(String, ScalarPoly)>> {
        Ok(self.named(&self.bracket_idx(self.index(a)?, self.index(b)?)))
    }

    /// Bilinear extension of the bracket to combinations.
    fn bracket_comb(&self, left: &Combination, right: &Combination) -> Combination {
        let mut out = Combination::new();
        for (i, ci) in left {
            for (j, cj) in right {
                let coeff = ci * cj;
                for (h, v) in self.bracket_idx(*i, *j) {
                    add_into(&mut out, h, &coeff * &v);
                }
            }
        }
        out
    }

    fn unit(idx: usize) -> Combination {
        let mut c = Combination::new();
        c.insert(idx, ScalarPoly::one());
        c
    }

    /// All basis triples whose cyclic double bracket does not vanish.
    pub fn jacobi_check(&self) -> Vec<JacobiViolation> {
        let n = self.basis.len();
        let mut triples = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    triples.push((i, j, k));
                }
            }
        }
        triples
            .par_iter()
            .filter_map(|&(i, j, k)| {
                let mut total = Combination::new();
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let inner = self.bracket_idx(b, c);
                    for (h, v) in self.bracket_comb(&Self::unit(a), &inner) {
                        add_into(&mut total, h, v);
                    }
                }
                (!total.is_empty()).then(|| JacobiViolation {
                    triple: [self.basis[i].clone(), self.basis[j].clone(), self.basis[k].clone()],
                    residual: self.named(&total),
                })
            })
            .collect()
    }

    fn operator_for(&self, r: &Realization, idx: usize) -> Result<WeylOp> {
        let name = self.name_of(idx);
        match r.get(name) {
            Some(op) => Ok(op.clone()),
            None if idx == self.basis.len() => Ok(WeylOp::identity(r.space())),
            None => Err(Error::MissingGenerator(name.to_string())),
        }
    }

    fn realize(&self, r: &Realization, comb: &Combination) -> Result<WeylOp> {
        let mut op = WeylOp::zero(r.space());
        for (idx, c) in comb {
            op = op + self.operator_for(r, *idx)?.scale_scalar(c);
        }
        Ok(op)
    }

    /// Pairs whose realized commutator differs from the table. The central
    /// element defaults to the identity operator when not realized.
    pub fn verify_realization(&self, r: &Realization) -> Result<Vec<RealizationMismatch>> {
        let ops: Vec<WeylOp> =
            (0..=self.basis.len()).map(|i| self.operator_for(r, i)).collect::<Result<_>>()?;
        let n = ops.len();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let results: Vec<Result<Option<RealizationMismatch>>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let lhs = ops[i].commutator(&ops[j])?;
                let rhs = self.realize(r, &self.bracket_idx(i, j))?;
                let residual = lhs - rhs;
                Ok((!residual.is_zero()).then(|| RealizationMismatch {
                    pair: (self.name_of(i).to_string(), self.name_of(j).to_string()),
                    residual,
                }))
            })
            .collect();
        let mut out = Vec::new();
        for r in results {
            if let Some(m) = r? {
                out.push(m);
            }
        }
        Ok(out)
    }

    pub fn specialize(&self, sym: Symbol, value: &GaussianRational) -> Result<Self> {
        let mut out = Self { brackets: BTreeMap::new(), ..self.clone() };
        for (key, comb) in &self.brackets {
            let mut c = Combination::new();
            for (idx, v) in comb {
                add_into(&mut c, *idx, v.specialize(sym, value)?);
            }
            if !c.is_empty() {
                out.brackets.insert(*key, c);
            }
        }
        Ok(out)
    }

    /// Tables agree in basis, central element and every bracket. Names are
    /// ignored.
    pub fn same_structure(&self, other: &LieTable) -> bool {
        self.basis == other.basis && self.central == other.central && self.brackets == other.brackets
    }

    /// Brackets that differ between two tables over the same basis.
    pub fn diff(&self, other: &LieTable) -> Result<Vec<BracketDiff>> {
        if self.basis != other.basis || self.central != other.central {
            return Err(Error::MalformedTable(format!(
                "cannot compare tables over different bases: {:?} vs {:?}",
                self.basis, other.basis
            )));
        }
        let n = self.basis.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let a = self.brackets.get(&(i, j));
                let b = other.brackets.get(&(i, j));
                if a != b {
                    out.push(BracketDiff {
                        pair: (self.basis[i].clone(), self.basis[j].clone()),
                        left: self.render_comb(a.unwrap_or(&Combination::new())),
                        right: self.render_comb(b.unwrap_or(&Combination::new())),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Replaces generator `target` by `new_name = target + sum c_h h`.
    pub fn shift_generator(&self, target: &str, new_name: &str, shift: &[(&str, ScalarPoly)]) -> Result<Self> {
        let t = self.index(target)?;
        if t == self.basis.len() {
            return Err(Error::MalformedTable("cannot shift the central element".into()));
        }
        let mut delta = Combination::new();
        for (n, c) in shift {
            let idx = self.index(n)?;
            if idx == t {
                return Err(Error::MalformedTable(format!("shift of `{target}` refers to itself")));
            }
            add_into(&mut delta, idx, c.clone());
        }
        // new generator in old basis
        let mut primed = Self::unit(t);
        for (idx, c) in &delta {
            add_into(&mut primed, *idx, c.clone());
        }
        // old target in new basis: g = g' - delta (indices unchanged, target slot now means g')
        let rewrite = |comb: &Combination| -> Combination {
            let mut out = Combination::new();
            for (idx, c) in comb {
                if *idx == t {
                    add_into(&mut out, t, c.clone());
                    for (h, d) in &delta {
                        add_into(&mut out, *h, -(c * d));
                    }
                } else {
                    add_into(&mut out, *idx, c.clone());
                }
            }
            out
        };
        let mut basis: Vec<&str> = self.basis.iter().map(String::as_str).collect();
        basis[t] = new_name;
        let mut out = LieTable::new(&self.name, &basis, &self.central)?;
        let n = self.basis.len();
        for i in 0..n {
            for j in i + 1..n {
                let li = if i == t { primed.clone() } else { Self::unit(i) };
                let lj = if j == t { primed.clone() } else { Self::unit(j) };
                let comb = rewrite(&self.bracket_comb(&li, &lj));
                if !comb.is_empty() {
                    out.brackets.insert((i, j), comb);
                }
            }
        }
        Ok(out)
    }

    /// Removes gauge generators that must be represented by zero.
    ///
    /// Each gauge generator must commute with every generator other than
    /// `evolution`. Representing them by constants `c_i`, the brackets
    /// `[evolution, G_i] = M_ij G_j + e_i I` then force `M c + e = 0`; the
    /// reduction is accepted only when this has the unique solution `c = 0`,
    /// that is `e = 0` and `det M` nonzero as a polynomial.
    pub fn gauge_reduce(&self, gauge: &[&str], evolution: &str, name: &str) -> Result<Self> {
        let n = self.basis.len();
        let h = self.index(evolution)?;
        let g: Vec<usize> = gauge.iter().map(|s| self.index(s)).collect::<Result<_>>()?;
        if g.contains(&n) || g.contains(&h) {
            return Err(Error::GaugeInconsistent("gauge set contains the central or evolution generator".into()));
        }
        for &gi in &g {
            for other in 0..n {
                if other == h || other == gi {
                    continue;
                }
                let b = self.bracket_idx(gi, other);
                if !b.is_empty() {
                    return Err(Error::GaugeInconsistent(format!(
                        "[{}, {}] = {} does not vanish",
                        self.basis[gi],
                        self.basis[other],
                        self.render_comb(&b)
                    )));
                }
            }
        }
        let mut matrix = vec![vec![ScalarPoly::zero(); g.len()]; g.len()];
        for (row, &gi) in g.iter().enumerate() {
            let b = self.bracket_idx(h, gi);
            for (idx, c) in &b {
                if *idx == n {
                    return Err(Error::GaugeInconsistent(format!(
                        "[{}, {}] has central part {}, so the gauge generator is a nonzero constant",
                        evolution, self.basis[gi], c
                    )));
                }
                match g.iter().position(|x| x == idx) {
                    Some(col) => matrix[row][col] = c.clone(),
                    None => {
                        return Err(Error::GaugeInconsistent(format!(
                            "[{}, {}] leaves the gauge span through {}",
                            evolution, self.basis[gi], self.basis[*idx]
                        )))
                    }
                }
            }
        }
        let det = determinant(&matrix);
        if det.is_zero() {
            return Err(Error::GaugeInconsistent(
                "evolution brackets do not force the gauge constants to zero".into(),
            ));
        }
        let kept: Vec<usize> = (0..n).filter(|i| !g.contains(i)).collect();
        let names: Vec<&str> = kept.iter().map(|&i| self.basis[i].as_str()).collect();
        let mut out = LieTable::new(name, &names, &self.central)?;
        let remap = |idx: usize| -> Option<usize> {
            if idx == n {
                Some(kept.len())
            } else {
                kept.iter().position(|&k| k == idx)
            }
        };
        for (a, &i) in kept.iter().enumerate() {
            for (b, &j) in kept.iter().enumerate().skip(a + 1) {
                let mut comb = Combination::new();
                for (idx, c) in self.bracket_idx(i, j) {
                    if let Some(new_idx) = remap(idx) {
                        add_into(&mut comb, new_idx, c);
                    }
                }
                if !comb.is_empty() {
                    out.brackets.insert((a, b), comb);
                }
            }
        }
        Ok(out)
    }

    fn render_comb(&self, comb: &Combination) -> String {
        if comb.is_empty() {
            return "0".into();
        }
        comb.iter()
            .map(|(i, c)| format!("({c}) {}", self.name_of(*i)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Nonzero brackets as `(a, b, rendered combination)`, in index order.
    pub fn entries(&self) -> Vec<(String, String, String)> {
        self.brackets
            .iter()
            .map(|((i, j), c)| (self.basis[*i].clone(), self.basis[*j].clone(), self.render_comb(c)))
            .collect()
    }

    /// Parses the format produced by `Display`.
    pub fn from_text(text: &str) -> Result<Self> {
        let perr = |line: &str, reason: &str| Error::Parse { input: line.to_string(), reason: reason.to_string() };
        let mut name = None;
        let mut basis = None;
        let mut central = None;
        let mut lines = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("table ") {
                name = Some(rest.trim().to_string());
            } else if let Some(rest) = line.strip_prefix("basis:") {
                basis = Some(rest.split_whitespace().map(str::to_string).collect::<Vec<_>>());
            } else if let Some(rest) = line.strip_prefix("central:") {
                central = Some(rest.trim().to_string());
            } else if line.starts_with('[') {
                lines.push(line);
            } else {
                return Err(perr(line, "unrecognized line"));
            }
        }
        let basis = basis.ok_or_else(|| perr(text, "missing basis line"))?;
        let central = central.ok_or_else(|| perr(text, "missing central line"))?;
        let refs: Vec<&str> = basis.iter().map(String::as_str).collect();
        let mut table = LieTable::new(name.as_deref().unwrap_or(""), &refs, &central)?;
        for line in lines {
            let close = line.find(']').ok_or_else(|| perr(line, "unterminated bracket"))?;
            let (a, b) = line[1..close].split_once(',').ok_or_else(|| perr(line, "expected `[a, b]`"))?;
            let rhs = line[close + 1..]
                .trim()
                .strip_prefix('=')
                .ok_or_else(|| perr(line, "expected `=`"))?
                .trim();
            let terms = parse_comb(rhs).map_err(|r| perr(line, &r))?;
            let refs: Vec<(&str, ScalarPoly)> = terms.iter().map(|(n, c)| (n.as_str(), c.clone())).collect();
            table.set_bracket(a.trim(), b.trim(), &refs)?;
        }
        Ok(table)
    }
}

fn parse_comb(text: &str) -> std::result::Result<Vec<(String, ScalarPoly)>, String> {
    if text == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0;
    loop {
        if bytes.get(pos) != Some(&b'(') {
            return Err(format!("expected `(` at offset {pos}"));
        }
        let mut depth = 0;
        let mut end = None;
        for (k, ch) in text[pos..].char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        end = Some(pos + k);
                        break;
                    }
                }
                _ => {}
            }
        }
        let end = end.ok_or("unbalanced parentheses")?;
        let coeff: ScalarPoly = text[pos + 1..end].parse().map_err(|e: Error| e.to_string())?;
        let rest = &text[end + 1..];
        let rest = rest.strip_prefix(' ').ok_or("expected a generator name")?;
        let (name, tail) = match rest.find(" + ") {
            Some(k) => (&rest[..k], Some(&rest[k + 3..])),
            None => (rest, None),
        };
        out.push((name.trim().to_string(), coeff));
        match tail {
            Some(t) => pos = text.len() - t.len(),
            None => break,
        }
    }
    Ok(out)
}

/// Laplace expansion; fine for the small gauge blocks used here.
pub fn determinant(m: &[Vec<ScalarPoly>]) -> ScalarPoly {
    match m.len() {
        0 => ScalarPoly::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = ScalarPoly::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<ScalarPoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = &m[0][col] * &determinant(&minor);
                if col % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

impl fmt::Display for LieTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "table {}", self.name)?;
        writeln!(f, "basis: {}", self.basis.join(" "))?;
        writeln!(f, "central: {}", self.central)?;
        for (a, b, c) in self.entries() {
            writeln!(f, "[{a}, {b}] = {c}")?;
        }
        Ok(())
    }
}

/// Operators assigned to generator names, all over one space.
#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    space: VarSpace,
    ops: BTreeMap<String, WeylOp>,
}

impl Realization {
    pub fn new(space: &VarSpace) -> Self {
        Self { space: space.clone(), ops: BTreeMap::new() }
    }

    pub fn insert(&mut self, name: &str, op: WeylOp) -> Result<()> {
        if op.space() != &self.space {
            return Err(Error::SpaceMismatch {
                left: self.space.names().to_vec(),
                right: op.space().names().to_vec(),
            });
        }
        self.ops.insert(name.to_string(), op);
        Ok(())
    }

    pub fn with(mut self, name: &str, op: WeylOp) -> Result<Self> {
        self.insert(name, op)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&WeylOp> {
        self.ops.get(name)
    }

    pub fn space(&self) -> &VarSpace {
        &self.space
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.ops.keys()
    }
}

/// Numeric least-squares fit of `[a, b]` onto the span of the realized
/// generators (plus identity) at fixed parameters. Diagnostic only.
pub fn discover_bracket(
    r: &Realization,
    a: &str,
    b: &str,
    params: &Params,
    times: &[f64],
) -> Result<(Vec<(String, Complex64)>, f64)> {
    let opa = r.get(a).ok_or_else(|| Error::MissingGenerator(a.into()))?;
    let opb = r.get(b).ok_or_else(|| Error::MissingGenerator(b.into()))?;
    let target = opa.commutator(opb)?;
    let mut names: Vec<String> = r.names().cloned().collect();
    let mut basis: Vec<WeylOp> = names.iter().map(|n| r.get(n).cloned().unwrap()).collect();
    if !basis.iter().any(|op| *op == WeylOp::identity(r.space())) {
        names.push("1".into());
        basis.push(WeylOp::identity(r.space()));
    }
    let mut keys = std::collections::BTreeSet::new();
    for op in basis.iter().chain(std::iter::once(&target)) {
        keys.extend(op.terms().map(|(k, _)| *k));
    }
    let cols = basis.len();
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    let mut rhs: Vec<Complex64> = Vec::new();
    for &t in times {
        for key in &keys {
            let row = basis
                .iter()
                .map(|op| op.coefficient(key).eval(t, params))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
            rhs.push(target.coefficient(key).eval(t, params)?);
        }
    }
    // normal equations with a tiny ridge to tolerate redundant generators
    let mut ata = vec![vec![Complex64::new(0.0, 0.0); cols]; cols];
    let mut atb = vec![Complex64::new(0.0, 0.0); cols];
    for (row, y) in rows.iter().zip(&rhs) {
        for i in 0..cols {
            atb[i] += row[i].conj() * y;
            for j in 0..cols {
                ata[i][j] += row[i].conj() * row[j];
            }
        }
    }
    for (i, row) in ata.iter_mut().enumerate() {
        row[i] += Complex64::new(1e-12, 0.0);
    }
    let coeffs = solve_dense(ata, atb)?;
    let mut resid: f64 = 0.0;
    for (row, y) in rows.iter().zip(&rhs) {
        let fit: Complex64 = row.iter().zip(&coeffs).map(|(a, c)| a * c).sum();
        resid = resid.max((fit - y).norm());
    }
    let out = names
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| c.norm() > 1e-9)
        .collect();
    Ok((out, resid))
}

fn solve_dense(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return Err(Error::InvalidParameters("singular least-squares system".into()));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Ok(x)
}
