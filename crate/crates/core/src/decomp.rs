//! Exact decomposition of a target series over a tabulated basis, and the
//! divisor-sum formulas that fall out of it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{bernoulli, sigma_twisted, DirichletCharacter};
use crate::basis::{assemble_basis, Basis, BasisElement, BasisError, Generator};
use crate::genfun::{normalized_form_series, FormSpec, GenFunError};
use crate::linalg::{solve_columns, Solve};
use crate::modmeta::{space_meta, MetaError, SpaceMeta};
use crate::oracle;
use crate::qseries::{qi, FracQSeries, Q};

const TABLE1_TEXT: &str = include_str!("../data/table1.txt");
const FORMULAS_TEXT: &str = include_str!("../data/formulas.txt");
const APPENDIX_TEXT: &str = include_str!("../data/appendix3.txt");
const FIGURATE_TEXT: &str = include_str!("../data/figurate4.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("target is not in the span of {space}")]
    NoSolution { space: String },
    #[error("basis of {space} has rank {rank} < {dim} on the solve rows")]
    UnderdeterminedBasis { space: String, rank: usize, dim: usize },
    #[error("solution fails at q^{n}")]
    VerificationFailed { n: usize },
    #[error("verify_to = {verify_to} is below the Sturm bound {sturm}")]
    VerifyTooShort { verify_to: usize, sturm: usize },
    #[error("bad target: {0}")]
    BadTarget(String),
    #[error("bad formula text: {0}")]
    Parse(String),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Meta(#[from] MetaError),
    #[error(transparent)]
    GenFun(#[from] GenFunError),
}

/// Serializes rationals as `"num/den"` strings.
pub mod ratstr {
    use super::Q;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `num/den`, or just `num` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceTag {
    pub weight: u32,
    pub level: u64,
    pub disc: i64,
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}({},{})", self.weight, self.level, self.disc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledCoefficient {
    pub label: String,
    #[serde(with = "ratstr")]
    pub coefficient: Q,
}

/// `target = sum t_i f_i`, checked on `q^0 .. q^verified_up_to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub space: SpaceTag,
    pub terms: Vec<LabeledCoefficient>,
    pub verified_up_to: usize,
}

impl Decomposition {
    pub fn coefficients(&self) -> Vec<Q> {
        self.terms.iter().map(|t| t.coefficient.clone()).collect()
    }

    pub fn elements(&self) -> Result<Vec<BasisElement>, DecompError> {
        self.terms.iter().map(|t| Ok(t.label.parse()?)).collect()
    }

    /// `sum t_i f_i` to `prec` terms.
    pub fn reconstruct(&self, prec: usize) -> Result<FracQSeries, DecompError> {
        let mut acc = vec![Q::zero(); prec.max(1)];
        for (t, e) in self.terms.iter().zip(self.elements()?) {
            if t.coefficient.is_zero() {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(e.coefficients(prec.max(1))?) {
                *a += &t.coefficient * x;
            }
        }
        Ok(FracQSeries::new(qi(0), acc).expect("nonempty"))
    }
}

/// Default working precision: twice the Sturm bound, at least 64.
pub fn default_precision(basis: &Basis) -> usize {
    (2 * basis.sturm()).max(64)
}

fn dense_target(target: &FracQSeries, end: usize) -> Result<Vec<Q>, DecompError> {
    if !target.has_integral_offset() {
        return Err(DecompError::BadTarget(format!("offset {} is not a nonnegative integer", target.offset())));
    }
    target
        .dense_from_zero(end)
        .map_err(|e| DecompError::BadTarget(e.to_string()))
}

/// Solves on the rows `rows` only and returns the coefficient vector.
pub fn solve_on_rows(target: &FracQSeries, basis: &Basis, rows: &[usize]) -> Result<Vec<Q>, DecompError> {
    let end = rows.iter().max().map_or(1, |m| m + 1);
    let t = dense_target(target, end)?;
    let cols = basis.columns(end)?;
    let pick = |v: &Vec<Q>| rows.iter().map(|&r| v[r].clone()).collect::<Vec<Q>>();
    let cols: Vec<Vec<Q>> = cols.iter().map(pick).collect();
    match solve_columns(&cols, &pick(&t)) {
        Solve::Unique(x) => Ok(x),
        Solve::Inconsistent => Err(DecompError::NoSolution { space: basis.tag() }),
        Solve::RankDeficient(rank) => Err(DecompError::UnderdeterminedBasis {
            space: basis.tag(),
            rank,
            dim: basis.dim(),
        }),
    }
}

/// Solves on `q^0 .. q^sturm` and checks every coefficient below `verify_to`.
pub fn decompose(target: &FracQSeries, basis: &Basis, verify_to: usize) -> Result<Decomposition, DecompError> {
    let sturm = basis.sturm();
    if verify_to <= sturm {
        return Err(DecompError::VerifyTooShort { verify_to, sturm });
    }
    let rows: Vec<usize> = (0..=sturm).collect();
    let x = solve_on_rows(target, basis, &rows)?;
    let t = dense_target(target, verify_to)?;
    let cols = basis.columns(verify_to)?;
    for (n, tn) in t.iter().enumerate() {
        let mut s = Q::zero();
        for (c, xi) in cols.iter().zip(&x) {
            if !xi.is_zero() {
                s += &c[n] * xi;
            }
        }
        if &s != tn {
            return Err(DecompError::VerificationFailed { n });
        }
    }
    Ok(Decomposition {
        space: SpaceTag {
            weight: basis.weight,
            level: basis.level,
            disc: basis.disc(),
        },
        terms: basis
            .labels()
            .into_iter()
            .zip(x)
            .map(|(label, coefficient)| LabeledCoefficient { label, coefficient })
            .collect(),
        verified_up_to: verify_to - 1,
    })
}

/// Metadata, basis and decomposition of the normalized generating function.
pub fn decompose_spec(spec: &FormSpec, prec: Option<usize>) -> Result<(SpaceMeta, Decomposition), DecompError> {
    let meta = space_meta(spec)?;
    let basis = assemble_basis(meta.weight, meta.level, meta.disc())?;
    let prec = prec.unwrap_or_else(|| default_precision(&basis));
    let (target, _) = normalized_form_series(spec, prec)?;
    Ok((meta, decompose(&target, &basis, prec)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TermKind {
    /// `sum_{e | m} psi(e) chi(m/e) e^r`.
    Sigma { r: u32, chi: i64, psi: i64 },
    /// Fourier coefficient of a registered cusp form.
    Cusp { label: String },
}

/// `coefficient * kind(n / d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaTerm {
    #[serde(with = "ratstr")]
    pub coefficient: Q,
    pub kind: TermKind,
    pub d: u64,
}

/// A count as a combination of divisor sums and cusp coefficients at `n >= 1`,
/// plus the constant term at `n = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formula {
    pub terms: Vec<FormulaTerm>,
    #[serde(with = "ratstr")]
    pub constant: Q,
}

fn sigma_label(r: u32, chi: i64, psi: i64) -> String {
    let c = |d: i64| if d == 1 { "1".to_string() } else { format!("χ{d}") };
    if chi == 1 && psi == 1 {
        format!("σ{r}")
    } else {
        format!("σ_{{{r};{},{}}}", c(chi), c(psi))
    }
}

impl fmt::Display for FormulaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = if self.d == 1 { "n".to_string() } else { format!("n/{}", self.d) };
        match &self.kind {
            TermKind::Sigma { r, chi, psi } => write!(f, "{}({arg})", sigma_label(*r, *chi, *psi)),
            TermKind::Cusp { label } => write!(f, "a[{label}]({arg})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let c = &t.coefficient;
            let a = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                _ => write!(f, " {sign} ")?,
            }
            if !a.is_one() {
                write!(f, "{} ", fmt_q(&a))?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

fn term_order(a: &FormulaTerm, b: &FormulaTerm) -> Ordering {
    let rank = |k: &TermKind| match k {
        TermKind::Sigma { .. } => 0,
        TermKind::Cusp { .. } => 1,
    };
    rank(&a.kind)
        .cmp(&rank(&b.kind))
        .then_with(|| match (&a.kind, &b.kind) {
            (TermKind::Sigma { r: r1, chi: c1, psi: p1 }, TermKind::Sigma { r: r2, chi: c2, psi: p2 }) => {
                // sigma_{1,psi} before sigma_{chi,1}
                (r1, c1 != &1, c1, p1).cmp(&(r2, c2 != &1, c2, p2))
            }
            _ => a.kind.cmp(&b.kind),
        })
        .then(a.d.cmp(&b.d))
}

impl Formula {
    /// Merges repeated `(kind, d)` terms, drops zeros and sorts.
    pub fn canonical(terms: Vec<FormulaTerm>, constant: Q) -> Self {
        let mut merged: BTreeMap<(TermKind, u64), Q> = BTreeMap::new();
        for t in terms {
            *merged.entry((t.kind, t.d)).or_insert_with(Q::zero) += t.coefficient;
        }
        let mut terms: Vec<FormulaTerm> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((kind, d), coefficient)| FormulaTerm { coefficient, kind, d })
            .collect();
        terms.sort_by(term_order);
        Self { terms, constant }
    }

    pub fn negated(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| FormulaTerm {
                    coefficient: -&t.coefficient,
                    ..t.clone()
                })
                .collect(),
            constant: -&self.constant,
        }
    }

    /// Same terms; the constant is ignored.
    pub fn same_terms(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl FromStr for Formula {
    type Err = DecompError;

    /// `coef:term` tokens, e.g. `-1/8:s2[1,-3] 9/8:s2[-3,1]/2 4:a[f412]`.
    /// The constant term is left at zero.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |t: &str| DecompError::Parse(t.to_string());
        let mut terms = Vec::new();
        for tok in s.split_whitespace() {
            let (c, rest) = tok.split_once(':').ok_or_else(|| bad(tok))?;
            let coefficient: Q = c.parse().map_err(|_| bad(tok))?;
            let (body, d) = match rest.rsplit_once('/') {
                Some((b, d)) if !d.contains(']') => (b, d.parse::<u64>().map_err(|_| bad(tok))?),
                _ => (rest, 1),
            };
            let kind = if let Some(label) = body.strip_prefix("a[").and_then(|b| b.strip_suffix(']')) {
                TermKind::Cusp { label: label.to_string() }
            } else if let Some(b) = body.strip_prefix('s') {
                let (r, chars) = b.split_once('[').ok_or_else(|| bad(tok))?;
                let (chi, psi) = chars
                    .strip_suffix(']')
                    .and_then(|x| x.split_once(','))
                    .ok_or_else(|| bad(tok))?;
                TermKind::Sigma {
                    r: r.parse().map_err(|_| bad(tok))?,
                    chi: chi.parse().map_err(|_| bad(tok))?,
                    psi: psi.parse().map_err(|_| bad(tok))?,
                }
            } else {
                return Err(bad(tok));
            };
            terms.push(FormulaTerm { coefficient, kind, d });
        }
        Ok(Self::canonical(terms, Q::zero()))
    }
}

fn constant_term(e: &BasisElement) -> Result<Q, DecompError> {
    Ok(e.coefficients(1)?.swap_remove(0))
}

/// Reads off the divisor-sum formula from a decomposition.
pub fn render_formula(d: &Decomposition) -> Result<Formula, DecompError> {
    let mut terms = Vec::new();
    let mut constant = Q::zero();
    for (lc, e) in d.terms.iter().zip(d.elements()?) {
        let t = &lc.coefficient;
        if t.is_zero() {
            continue;
        }
        constant += t * constant_term(&e)?;
        let dil = e.dilation();
        match e.generator() {
            Generator::FullLevel { k } => {
                let factor = -qi(2 * *k as i64) / bernoulli(*k as usize);
                terms.push(FormulaTerm {
                    coefficient: t * factor,
                    kind: TermKind::Sigma { r: k - 1, chi: 1, psi: 1 },
                    d: dil,
                });
            }
            Generator::Weight2Combo { b } => {
                let kind = TermKind::Sigma { r: 1, chi: 1, psi: 1 };
                terms.push(FormulaTerm {
                    coefficient: t * qi(-24),
                    kind: kind.clone(),
                    d: dil,
                });
                terms.push(FormulaTerm {
                    coefficient: t * qi(24 * *b as i64),
                    kind,
                    d: dil * b,
                });
            }
            Generator::Twisted { k, chi, psi } => terms.push(FormulaTerm {
                coefficient: t.clone(),
                kind: TermKind::Sigma {
                    r: k - 1,
                    chi: *chi,
                    psi: *psi,
                },
                d: dil,
            }),
            Generator::Eta(_) | Generator::EtaSum(_) | Generator::Incomplete(_) => terms.push(FormulaTerm {
                coefficient: t.clone(),
                kind: TermKind::Cusp {
                    label: e.base_label().to_string(),
                },
                d: dil,
            }),
        }
    }
    Ok(Formula::canonical(terms, constant))
}

/// Evaluates a formula at `n = 1 ..= n_max` (index 0 holds the constant).
pub fn evaluate_formula(f: &Formula, n_max: usize) -> Result<Vec<Q>, DecompError> {
    let mut cusp: BTreeMap<String, Vec<Q>> = BTreeMap::new();
    for t in &f.terms {
        if let TermKind::Cusp { label } = &t.kind {
            if !cusp.contains_key(label) {
                let e: BasisElement = label.parse()?;
                cusp.insert(label.clone(), e.coefficients(n_max + 1)?);
            }
        }
    }
    let mut out = vec![Q::zero(); n_max + 1];
    out[0] = f.constant.clone();
    for (n, v) in out.iter_mut().enumerate().skip(1) {
        for t in &f.terms {
            if n as u64 % t.d != 0 {
                continue;
            }
            let m = n as u64 / t.d;
            let x = match &t.kind {
                TermKind::Sigma { r, chi, psi } => Q::from_integer(sigma_twisted(
                    *r,
                    &DirichletCharacter::kronecker(*chi),
                    &DirichletCharacter::kronecker(*psi),
                    m,
                )),
                TermKind::Cusp { label } => cusp[label][m as usize].clone(),
            };
            *v += &t.coefficient * x;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaReport {
    /// Largest `n` compared.
    pub n_max: usize,
    pub checked: usize,
    /// First failing `n` (formula argument), with the count and the formula value.
    pub first_mismatch: Option<(usize, u128, String)>,
}

impl FormulaReport {
    pub fn ok(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares `formula(n)` with the brute-force count at `n - shift` for
/// `shift <= n <= n_max`. The `n = 0` slot uses the formula's constant.
pub fn verify_formula_against_oracle(spec: &FormSpec, f: &Formula, n_max: usize) -> Result<FormulaReport, DecompError> {
    let shift = spec.shift();
    if !shift.is_integer() || shift.is_negative() {
        return Err(DecompError::GenFun(GenFunError::NotModularShift(shift)));
    }
    let p = shift.to_integer().to_usize().expect("small shift");
    let values = evaluate_formula(f, n_max)?;
    let counts = if n_max >= p { oracle::count_all(spec, (n_max - p) as u64) } else { Vec::new() };
    let mut checked = 0;
    for (m, c) in counts.iter().enumerate() {
        let n = m + p;
        if n == 0 && f.terms.is_empty() && f.constant.is_zero() {
            // a parsed formula carries no constant; nothing to compare at n = 0
            continue;
        }
        checked += 1;
        if values[n] != Q::from_integer((*c).into()) {
            return Ok(FormulaReport {
                n_max,
                checked,
                first_mismatch: Some((n, *c, fmt_q(&values[n]))),
            });
        }
    }
    Ok(FormulaReport {
        n_max,
        checked,
        first_mismatch: None,
    })
}

/// Oracle check of the formula rendered from `d`.
pub fn verify_formula(spec: &FormSpec, d: &Decomposition, n_max: usize) -> Result<FormulaReport, DecompError> {
    verify_formula_against_oracle(spec, &render_formula(d)?, n_max)
}

/// One row of the 21-form table.
#[derive(Clone, Debug)]
pub struct Table1Row {
    pub spec: FormSpec,
    pub expected: Vec<Q>,
}

/// The table rows, in printed order.
pub fn table1() -> &'static [Table1Row] {
    static ROWS: OnceLock<Vec<Table1Row>> = OnceLock::new();
    ROWS.get_or_init(|| {
        data_lines(TABLE1_TEXT)
            .map(|(spec, rest)| Table1Row {
                spec,
                expected: rest.split_whitespace().map(|c| c.parse().expect("rational")).collect(),
            })
            .collect()
    })
}

impl Table1Row {
    /// Decomposition over the common `M4(12)` basis of the table. Rows whose
    /// own level divides 12 are embedded.
    pub fn decompose(&self, prec: usize) -> Result<Decomposition, DecompError> {
        let basis = assemble_basis(4, 12, 1)?;
        let (target, _) = normalized_form_series(&self.spec, prec)?;
        decompose(&target, &basis, prec)
    }

    pub fn matches(&self, prec: usize) -> Result<bool, DecompError> {
        Ok(self.decompose(prec)?.coefficients() == self.expected)
    }
}

/// A printed closed formula; `formula` is `None` when the printed entry does
/// not parse as a formula.
#[derive(Clone, Debug)]
pub struct PrintedFormula {
    pub spec: FormSpec,
    pub formula: Option<Formula>,
}

pub fn printed_formulas() -> &'static [PrintedFormula] {
    static ROWS: OnceLock<Vec<PrintedFormula>> = OnceLock::new();
    ROWS.get_or_init(|| {
        data_lines(FORMULAS_TEXT)
            .map(|(spec, rest)| PrintedFormula {
                spec,
                formula: (rest.trim() != "?").then(|| rest.parse().expect("printed formula parses")),
            })
            .collect()
    })
}

fn data_lines(text: &'static str) -> impl Iterator<Item = (FormSpec, &'static str)> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (spec, rest) = l.split_once('|').expect("`spec | data`");
            (spec.trim().parse().expect("spec parses"), rest.trim())
        })
}

/// Coefficients keyed by label, with every `phi[1,b]@d` rewritten as
/// `E2@d - b E2@(bd)`. Zero entries are dropped.
pub fn expanded_coefficients(d: &Decomposition) -> Result<BTreeMap<String, Q>, DecompError> {
    let mut out: BTreeMap<String, Q> = BTreeMap::new();
    let e2 = |d: u64| if d == 1 { "E2".to_string() } else { format!("E2@{d}") };
    for (t, e) in d.terms.iter().zip(d.elements()?) {
        if let Generator::Weight2Combo { b } = e.generator() {
            let dil = e.dilation();
            *out.entry(e2(dil)).or_insert_with(Q::zero) += &t.coefficient;
            *out.entry(e2(dil * b)).or_insert_with(Q::zero) -= &t.coefficient * qi(*b as i64);
        } else {
            *out.entry(t.label.clone()).or_insert_with(Q::zero) += &t.coefficient;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TabulatedRow {
    pub spec: FormSpec,
    /// The count is tabulated at `n - shift`.
    pub shift: u64,
    pub expected: Vec<Q>,
}

/// A tabulated space: rows of coefficients against `columns`, or against
/// the basis order when `columns` is `None`.
#[derive(Clone, Debug)]
pub struct TabulatedSpace {
    pub weight: u32,
    pub level: u64,
    pub disc: i64,
    pub columns: Option<Vec<String>>,
    pub rows: Vec<TabulatedRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TabulatedCheck {
    pub coefficients_match: bool,
    pub header_matches: bool,
    pub shift_matches: bool,
}

impl TabulatedSpace {
    pub fn tag(&self) -> String {
        format!("M{}({},{})", self.weight, self.level, self.disc)
    }

    /// Decomposes `row` in this space and compares with the tabulated values.
    pub fn check(&self, row: &TabulatedRow, basis: &Basis, prec: usize) -> Result<TabulatedCheck, DecompError> {
        let meta = space_meta(&row.spec)?;
        let (target, _) = normalized_form_series(&row.spec, prec)?;
        let d = decompose(&target, basis, prec)?;
        let coefficients_match = match &self.columns {
            None => d.coefficients() == row.expected,
            Some(cols) => {
                let mut map = expanded_coefficients(&d)?;
                let got: Vec<Q> = cols.iter().map(|c| map.remove(c).unwrap_or_else(Q::zero)).collect();
                // leftover entries are mass outside the tabulated columns
                map.is_empty() && got == row.expected
            }
        };
        Ok(TabulatedCheck {
            coefficients_match,
            // forms of lower level are tabulated through their embedding
            header_matches: meta.weight == self.weight && meta.disc() == self.disc && self.level % meta.level == 0,
            shift_matches: meta.shift == qi(row.shift as i64),
        })
    }
}

pub fn tabulated_spaces() -> &'static [TabulatedSpace] {
    static SPACES: OnceLock<Vec<TabulatedSpace>> = OnceLock::new();
    SPACES.get_or_init(|| {
        let mut out: Vec<TabulatedSpace> = Vec::new();
        for line in APPENDIX_TEXT.lines().chain(FIGURATE_TEXT.lines()).map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(h) = line.strip_prefix("== M") {
                let (tag, cols) = match h.split_once(':') {
                    Some((t, c)) => (t, Some(c.split_whitespace().map(String::from).collect())),
                    None => (h, None),
                };
                let (k, rest) = tag.trim().split_once('(').expect("M<k>(<N>,<disc>)");
                let (n, d) = rest.trim_end_matches(')').split_once(',').expect("M<k>(<N>,<disc>)");
                out.push(TabulatedSpace {
                    weight: k.parse().expect("weight"),
                    level: n.parse().expect("level"),
                    disc: d.parse().expect("disc"),
                    columns: cols,
                    rows: Vec::new(),
                });
                continue;
            }
            let mut parts = line.split('|').map(str::trim);
            let (spec, shift, coeffs) = (parts.next(), parts.next(), parts.next());
            let row = TabulatedRow {
                spec: spec.and_then(|s| s.parse().ok()).expect("spec parses"),
                shift: shift.and_then(|s| s.parse().ok()).expect("shift"),
                expected: coeffs
                    .expect("coefficients")
                    .split_whitespace()
                    .map(|c| c.parse().expect("rational"))
                    .collect(),
            };
            out.last_mut().expect("row before header").rows.push(row);
        }
        out
    })
}

/// How a rendered formula compares with the printed one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrintedComparison {
    Exact,
    SignFlipped,
    Different,
    Unreadable,
}

pub fn compare_printed(rendered: &Formula, printed: Option<&Formula>) -> PrintedComparison {
    match printed {
        None => PrintedComparison::Unreadable,
        Some(p) if rendered.same_terms(p) => PrintedComparison::Exact,
        Some(p) if rendered.negated().same_terms(p) => PrintedComparison::SignFlipped,
        Some(_) => PrintedComparison::Different,
    }
}
