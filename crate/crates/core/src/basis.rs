//! Eisenstein series, the registered cusp forms, and the tabulated bases of
//! `M_k(Gamma_0(N), chi)` for weights 2 to 5 and levels dividing 24.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{bernoulli, factorize, gen_bernoulli, sigma_twisted, sigma_u, DirichletCharacter};
use crate::etagen::{eta_quotient_series, EtaError, EtaQuotientSpec};
use crate::linalg::rank;
use crate::qseries::{qi, FracQSeries, Q};

const REGISTRY_TEXT: &str = include_str!("../data/registry.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("unknown basis label {0}")]
    UnknownLabel(String),
    #[error("malformed label {0}")]
    BadLabel(String),
    #[error("chi(-1) psi(-1) != (-1)^{k} for characters ({chi}, {psi})")]
    ParityMismatch { k: u32, chi: i64, psi: i64 },
    #[error("no built-in basis for M_{k}(Gamma_0({level}), disc {disc})")]
    UnsupportedSpace { k: u32, level: u64, disc: i64 },
    #[error("basis element {label} is not defined: {reason}")]
    IncompleteBasis { label: String, reason: String },
    #[error("basis elements have rank {rank} < {dim} on coefficients up to {sturm}")]
    LinearlyDependent { rank: usize, dim: usize, sturm: usize },
    #[error("registry line {line}: {msg}")]
    Registry { line: usize, msg: String },
    #[error(transparent)]
    Eta(#[from] EtaError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    EisensteinFullLevel,
    EisensteinTwisted,
    EisensteinWeight2Combo,
    CuspEtaQuotient,
    CuspEtaCombination,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `E_k` of level one.
    FullLevel { k: u32 },
    /// `E_{k,chi,psi}` with coefficients `sum_{d|n} psi(d) chi(n/d) d^(k-1)`.
    Twisted { k: u32, chi: i64, psi: i64 },
    /// `E_2(tau) - b E_2(b tau)`.
    Weight2Combo { b: u64 },
    Eta(EtaQuotientSpec),
    EtaSum(Vec<(Q, EtaQuotientSpec)>),
    /// Registered but not expandable.
    Incomplete(String),
}

/// One registry entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegistryEntry {
    pub label: String,
    pub generator: Generator,
}

fn parse_registry(text: &str) -> Result<BTreeMap<String, Generator>, BasisError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| BasisError::Registry {
            line: i + 1,
            msg: msg.to_string(),
        };
        let mut parts = line.splitn(3, char::is_whitespace);
        let (Some(label), Some(kind)) = (parts.next(), parts.next()) else {
            return Err(err("expected `label kind payload`"));
        };
        let payload = parts.next().unwrap_or("").trim();
        let g = match kind {
            "eta" => Generator::Eta(payload.parse()?),
            "eta_sum" => {
                let mut terms = Vec::new();
                for term in payload.split('|') {
                    let (c, toks) = term.split_once(':').ok_or_else(|| err("eta_sum term needs `coef:`"))?;
                    let c: Q = c.trim().parse().map_err(|_| err("bad coefficient"))?;
                    terms.push((c, toks.parse()?));
                }
                Generator::EtaSum(terms)
            }
            "incomplete" => Generator::Incomplete(payload.to_string()),
            _ => return Err(err("unknown kind")),
        };
        if out.insert(label.to_string(), g).is_some() {
            return Err(err("duplicate label"));
        }
    }
    Ok(out)
}

fn registry() -> &'static BTreeMap<String, Generator> {
    static REG: OnceLock<BTreeMap<String, Generator>> = OnceLock::new();
    REG.get_or_init(|| parse_registry(REGISTRY_TEXT).expect("built-in registry parses"))
}

/// All registered cusp-form records, in label order.
pub fn registry_entries() -> Vec<RegistryEntry> {
    registry()
        .iter()
        .map(|(l, g)| RegistryEntry {
            label: l.clone(),
            generator: g.clone(),
        })
        .collect()
}

/// A labeled generator together with a dilation `tau -> d tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    base: String,
    generator: Generator,
    dilation: u64,
}

fn parse_chars(s: &str) -> Option<(i64, i64)> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

impl FromStr for BasisElement {
    type Err = BasisError;

    /// Labels: `E4@3`, `E3[1,-4]@2`, `phi[1,6]`, `f46@2`, `Delta[3,12,-4;1]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BasisError::BadLabel(s.to_string());
        let (base, dilation) = match s.rsplit_once('@') {
            Some((b, d)) => (b, d.parse::<u64>().map_err(|_| bad())?),
            None => (s, 1),
        };
        if dilation == 0 {
            return Err(bad());
        }
        let generator = if let Some(g) = registry().get(base) {
            g.clone()
        } else if let Some(rest) = base.strip_prefix("phi") {
            let (one, b) = parse_chars(rest).ok_or_else(bad)?;
            if one != 1 || b < 2 {
                return Err(bad());
            }
            Generator::Weight2Combo { b: b as u64 }
        } else if let Some(rest) = base.strip_prefix('E') {
            let split = rest.find('[').unwrap_or(rest.len());
            let k: u32 = rest[..split].parse().map_err(|_| bad())?;
            if split == rest.len() {
                if k < 2 || k % 2 == 1 {
                    return Err(bad());
                }
                Generator::FullLevel { k }
            } else {
                let (chi, psi) = parse_chars(&rest[split..]).ok_or_else(bad)?;
                twisted_generator(k, chi, psi)?
            }
        } else {
            return Err(BasisError::UnknownLabel(base.to_string()));
        };
        Ok(Self {
            base: base.to_string(),
            generator,
            dilation,
        })
    }
}

fn twisted_generator(k: u32, chi: i64, psi: i64) -> Result<Generator, BasisError> {
    let c = DirichletCharacter::kronecker(chi);
    let p = DirichletCharacter::kronecker(psi);
    let parity_ok = (c.eval(-1) * p.eval(-1) == 1) == (k % 2 == 0);
    if !parity_ok || (chi == 1 && psi == 1) || k < 1 {
        return Err(BasisError::ParityMismatch { k, chi, psi });
    }
    Ok(Generator::Twisted { k, chi, psi })
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base)?;
        if self.dilation > 1 {
            write!(f, "@{}", self.dilation)?;
        }
        Ok(())
    }
}

impl BasisElement {
    pub fn label(&self) -> String {
        self.to_string()
    }

    /// Label without the dilation suffix.
    pub fn base_label(&self) -> &str {
        &self.base
    }

    pub fn dilation(&self) -> u64 {
        self.dilation
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn kind(&self) -> ElementKind {
        match self.generator {
            Generator::FullLevel { .. } => ElementKind::EisensteinFullLevel,
            Generator::Twisted { .. } => ElementKind::EisensteinTwisted,
            Generator::Weight2Combo { .. } => ElementKind::EisensteinWeight2Combo,
            Generator::Eta(_) | Generator::Incomplete(_) => ElementKind::CuspEtaQuotient,
            Generator::EtaSum(_) => ElementKind::CuspEtaCombination,
        }
    }

    pub fn is_cusp(&self) -> bool {
        matches!(self.kind(), ElementKind::CuspEtaQuotient | ElementKind::CuspEtaCombination)
    }

    /// Coefficients of `q^0 .. q^(prec-1)`.
    pub fn coefficients(&self, prec: usize) -> Result<Vec<Q>, BasisError> {
        let d = self.dilation as usize;
        let inner = prec.div_ceil(d).max(1);
        let base = generator_coefficients(&self.generator, inner, &self.base)?;
        let mut out = vec![Q::zero(); prec];
        for (i, c) in base.into_iter().enumerate() {
            if i * d < prec {
                out[i * d] = c;
            }
        }
        Ok(out)
    }

    pub fn series(&self, prec: usize) -> Result<FracQSeries, BasisError> {
        Ok(FracQSeries::new(qi(0), self.coefficients(prec.max(1))?).expect("nonempty"))
    }
}

fn generator_coefficients(g: &Generator, prec: usize, label: &str) -> Result<Vec<Q>, BasisError> {
    match g {
        Generator::FullLevel { k } => Ok(eisenstein_coefficients(*k, prec)),
        Generator::Twisted { k, chi, psi } => Ok(twisted_coefficients(*k, *chi, *psi, prec)),
        Generator::Weight2Combo { b } => Ok(weight2_combo(*b, prec).coeffs().to_vec()),
        Generator::Eta(spec) => eta_dense(spec, prec),
        Generator::EtaSum(terms) => {
            let mut acc = vec![Q::zero(); prec];
            for (c, spec) in terms {
                for (a, x) in acc.iter_mut().zip(eta_dense(spec, prec)?) {
                    *a += c * x;
                }
            }
            Ok(acc)
        }
        Generator::Incomplete(reason) => Err(BasisError::IncompleteBasis {
            label: label.to_string(),
            reason: reason.clone(),
        }),
    }
}

fn eta_dense(spec: &EtaQuotientSpec, prec: usize) -> Result<Vec<Q>, BasisError> {
    let s = eta_quotient_series(spec, prec);
    if !s.has_integral_offset() {
        return Err(BasisError::BadLabel(format!("{spec}: offset {} is not a nonnegative integer", s.offset())));
    }
    Ok(s.dense_from_zero(prec).expect("window covers 0..prec"))
}

fn eisenstein_coefficients(k: u32, prec: usize) -> Vec<Q> {
    let factor = -qi(2 * k as i64) / bernoulli(k as usize);
    let mut out = vec![Q::zero(); prec];
    if let Some(c) = out.first_mut() {
        *c = qi(1);
    }
    for (n, c) in out.iter_mut().enumerate().skip(1) {
        *c = &factor * Q::from_integer(sigma_u(k - 1, n as u64));
    }
    out
}

fn twisted_coefficients(k: u32, chi: i64, psi: i64, prec: usize) -> Vec<Q> {
    let c = DirichletCharacter::kronecker(chi);
    let p = DirichletCharacter::kronecker(psi);
    let mut out = vec![Q::zero(); prec];
    if chi == 1 && !out.is_empty() {
        out[0] = -gen_bernoulli(k as usize, &p) / qi(2 * k as i64);
    }
    for (n, x) in out.iter_mut().enumerate().skip(1) {
        *x = Q::from_integer(sigma_twisted(k - 1, &c, &p, n as u64));
    }
    out
}

/// `E_k(d tau) = 1 - (2k/B_k) sum sigma_(k-1)(n) q^(dn)`, `k` even.
pub fn eisenstein_series(k: u32, d: u64, prec: usize) -> Result<FracQSeries, BasisError> {
    BasisElement {
        base: format!("E{k}"),
        generator: Generator::FullLevel { k },
        dilation: d.max(1),
    }
    .series(prec)
    .and_then(|s| {
        if k % 2 == 1 || k < 2 {
            Err(BasisError::BadLabel(format!("E{k}")))
        } else {
            Ok(s)
        }
    })
}

/// `E_{k,chi,psi}(d tau)`; `chi` and `psi` are given by their discriminants.
pub fn eisenstein_twisted(k: u32, chi: i64, psi: i64, d: u64, prec: usize) -> Result<FracQSeries, BasisError> {
    BasisElement {
        base: format!("E{k}[{chi},{psi}]"),
        generator: twisted_generator(k, chi, psi)?,
        dilation: d.max(1),
    }
    .series(prec)
}

/// `E_2(tau) - b E_2(b tau)`, holomorphic of weight 2 on `Gamma_0(b)`.
pub fn weight2_combo(b: u64, prec: usize) -> FracQSeries {
    let e2 = eisenstein_coefficients(2, prec);
    let mut out = e2.clone();
    let bq = qi(b as i64);
    for (i, c) in e2.iter().enumerate() {
        let j = i * b as usize;
        if j >= prec {
            break;
        }
        out[j] -= &bq * c;
    }
    FracQSeries::new(qi(0), out).expect("nonempty")
}

/// Expansion of a registered cusp form (with optional `@d`).
pub fn cusp_form_series(label: &str, prec: usize) -> Result<FracQSeries, BasisError> {
    let e: BasisElement = label.parse()?;
    if !e.is_cusp() {
        return Err(BasisError::UnknownLabel(label.to_string()));
    }
    e.series(prec)
}

/// Index of `Gamma_0(N)` in `SL_2(Z)`.
pub fn gamma0_index(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p + 1))
}

/// `ceil(k [SL_2(Z) : Gamma_0(N)] / 12) + 1`.
pub fn sturm_bound(k: u32, n: u64) -> usize {
    ((k as u64 * gamma0_index(n)).div_ceil(12) + 1) as usize
}

/// A tabulated basis of `M_k(Gamma_0(N), chi)`.
#[derive(Clone, Debug)]
pub struct Basis {
    pub weight: u32,
    pub level: u64,
    pub character: DirichletCharacter,
    pub elements: Vec<BasisElement>,
    pub eisenstein_dim: usize,
    pub cusp_dim: usize,
}

impl Basis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn sturm(&self) -> usize {
        sturm_bound(self.weight, self.level)
    }

    /// Discriminant key: 1 for the trivial character.
    pub fn disc(&self) -> i64 {
        self.character.disc()
    }

    /// Short space tag such as `M4(12,1)` or `M3(24,-8)`.
    pub fn tag(&self) -> String {
        format!("M{}({},{})", self.weight, self.level, self.disc())
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(BasisElement::label).collect()
    }

    /// Coefficient vectors `0..prec`, one per element.
    pub fn columns(&self, prec: usize) -> Result<Vec<Vec<Q>>, BasisError> {
        self.elements.iter().map(|e| e.coefficients(prec)).collect()
    }
}

struct SpaceRow {
    k: u32,
    level: u64,
    disc: i64,
    eisenstein: &'static str,
    cusp: &'static str,
}

const fn row(k: u32, level: u64, disc: i64, eisenstein: &'static str, cusp: &'static str) -> SpaceRow {
    SpaceRow {
        k,
        level,
        disc,
        eisenstein,
        cusp,
    }
}

#[rustfmt::skip]
const SPACES: &[SpaceRow] = &[
    row(2, 2, 1, "phi[1,2]", ""),
    row(2, 3, 1, "phi[1,3]", ""),
    row(2, 4, 1, "phi[1,{2,4}]", ""),
    row(2, 6, 1, "phi[1,{2,3,6}]", ""),
    row(2, 8, 1, "phi[1,{2,4,8}]", ""),
    row(2, 8, 8, "E2[1,8] E2[8,1]", ""),
    row(2, 12, 1, "phi[1,{2,3,4,6,12}]", ""),
    row(2, 12, 12, "E2[1,12] E2[12,1] E2[-4,-3] E2[-3,-4]", ""),
    row(2, 24, 1, "phi[1,{2,3,4,6,8,12,24}]", "Delta[2,24]"),
    row(2, 24, 8, "E2[1,8]@{1,3} E2[8,1]@{1,3}", "Delta[2,24,8;{1,2}]"),
    row(2, 24, 12, "E2[1,12]@{1,2} E2[12,1]@{1,2} E2[-4,-3]@{1,2} E2[-3,-4]@{1,2}", ""),
    row(2, 24, 24, "E2[1,24] E2[24,1] E2[-8,-3] E2[-3,-8]", "Delta[2,24,24;{1,2}]"),

    row(3, 3, -3, "E3[1,-3] E3[-3,1]", ""),
    row(3, 4, -4, "E3[1,-4] E3[-4,1]", ""),
    row(3, 6, -3, "E3[1,-3]@{1,2} E3[-3,1]@{1,2}", ""),
    row(3, 8, -4, "E3[1,-4]@{1,2} E3[-4,1]@{1,2}", ""),
    row(3, 8, -8, "E3[1,-8] E3[-8,1]", "Delta[3,8,-8]"),
    row(3, 12, -3, "E3[1,-3]@{1,2,4} E3[-3,1]@{1,2,4}", "Delta[3,12,-3]"),
    row(3, 12, -4, "E3[1,-4]@{1,3} E3[-4,1]@{1,3}", "Delta[3,12,-4;{1,2}]"),
    row(3, 24, -3, "E3[1,-3]@{1,2,4,8} E3[-3,1]@{1,2,4,8}", "Delta[3,12,-3]@{1,2} Delta[3,24,-3;{1,2}]"),
    row(3, 24, -4, "E3[1,-4]@{1,2,3,6} E3[-4,1]@{1,2,3,6}", "Delta[3,12,-4;1]@{1,2} Delta[3,12,-4;2]@{1,2}"),
    row(3, 24, -8, "E3[1,-8]@{1,3} E3[-8,1]@{1,3}", "Delta[3,8,-8]@{1,3} Delta[3,24,-8;{1..4}]"),
    row(3, 24, -24, "E3[1,-24] E3[-24,1] E3[-3,8] E3[8,-3]", "Delta[3,24,-24;{1..6}]"),

    row(4, 1, 1, "E4", ""),
    row(4, 2, 1, "E4@{1,2}", ""),
    row(4, 3, 1, "E4@{1,3}", ""),
    row(4, 4, 1, "E4@{1,2,4}", ""),
    row(4, 6, 1, "E4@{1,2,3,6}", "f46"),
    row(4, 8, 1, "E4@{1,2,4,8}", "f48"),
    row(4, 12, 1, "E4@{1,2,3,4,6,12}", "f46@{1,2} f412"),
    row(4, 24, 1, "E4@{1,2,3,4,6,8,12,24}", "f46@{1,2,4} f48@{1,3} f412@{1,2} f424"),

    row(5, 3, -3, "E5[1,-3] E5[-3,1]", ""),
    row(5, 4, -4, "E5[1,-4] E5[-4,1]", "Delta[5,4,-4]"),
    row(5, 6, -3, "E5[1,-3]@{1,2} E5[-3,1]@{1,2}", "Delta[5,6,-3;{1,2}]"),
    row(5, 8, -4, "E5[1,-4]@{1,2} E5[-4,1]@{1,2}", "Delta[5,4,-4]@{1,2}"),
    row(5, 8, -8, "E5[1,-8] E5[-8,1]", "Delta[5,8,-8;{1,2,3}]"),
    row(5, 12, -3, "E5[1,-3]@{1,2,4} E5[-3,1]@{1,2,4}", "Delta[5,12,-3;{1..4}] F"),
    row(5, 12, -4, "E5[1,-4]@{1,3} E5[-4,1]@{1,3}", "Delta[5,4,-4]@{1,3} Delta[5,12,-4;{1..4}]"),
    row(5, 24, -3, "E5[1,-3]@{1,2,4,8} E5[-3,1]@{1,2,4,8}", "Delta[5,12,-3;{1..4}] Delta[5,24,-3;{1..8}]"),
    row(5, 24, -4, "E5[1,-4]@{1,2,3,6} E5[-4,1]@{1,2,3,6}", "Delta[5,4,-4]@{1,2,3,6} Delta[5,12,-4;{1..4}]@{1,2}"),
    row(5, 24, -8, "E5[1,-8]@{1,3} E5[-8,1]@{1,3}", "Delta[5,8,-8;1']@{1,3} Delta[5,8,-8;2]@{1,3} Delta[5,8,-8;3]@{1,3} Delta[5,24,-8;{1..8}]"),
    row(5, 24, -24, "E5[1,-24] E5[-24,1] E5[-3,8] E5[8,-3]", "Delta[5,24,-24;{1..14}]"),
];

/// Expands `{a,b,c}` and `{m..n}` groups, leftmost first.
fn expand(pattern: &str) -> Vec<String> {
    let Some(open) = pattern.find('{') else {
        return vec![pattern.to_string()];
    };
    let close = open + pattern[open..].find('}').expect("balanced braces");
    let inner = &pattern[open + 1..close];
    let opts: Vec<String> = match inner.split_once("..") {
        Some((a, b)) => {
            let (a, b): (u64, u64) = (a.parse().expect("range start"), b.parse().expect("range end"));
            (a..=b).map(|x| x.to_string()).collect()
        }
        None => inner.split(',').map(str::to_string).collect(),
    };
    let (head, tail) = (&pattern[..open], &pattern[close + 1..]);
    opts.iter()
        .flat_map(|o| expand(&format!("{head}{o}{tail}")))
        .collect()
}

fn expand_all(list: &str) -> Vec<String> {
    list.split_whitespace().flat_map(expand).collect()
}

fn normalize_disc(disc: i64) -> i64 {
    DirichletCharacter::from_discriminant(disc).disc()
}

/// Every `(k, N, disc)` with a built-in basis, in table order.
pub fn supported_spaces() -> Vec<(u32, u64, i64)> {
    SPACES.iter().map(|r| (r.k, r.level, r.disc)).collect()
}

/// Declared `(e, s)` for a supported space.
pub fn declared_dimensions(k: u32, level: u64, disc: i64) -> Option<(usize, usize)> {
    let disc = normalize_disc(disc);
    SPACES
        .iter()
        .find(|r| (r.k, r.level, r.disc) == (k, level, disc))
        .map(|r| (expand_all(r.eisenstein).len(), expand_all(r.cusp).len()))
}

/// Builds the tabulated basis and checks its rank up to the Sturm bound.
pub fn assemble_basis(k: u32, level: u64, disc: i64) -> Result<Basis, BasisError> {
    let disc = normalize_disc(disc);
    let r = SPACES
        .iter()
        .find(|r| (r.k, r.level, r.disc) == (k, level, disc))
        .ok_or(BasisError::UnsupportedSpace { k, level, disc })?;
    let eis = expand_all(r.eisenstein);
    let cusp = expand_all(r.cusp);
    let elements = eis
        .iter()
        .chain(&cusp)
        .map(|l| l.parse())
        .collect::<Result<Vec<BasisElement>, _>>()?;
    for e in &elements {
        if let Generator::Incomplete(reason) = &e.generator {
            return Err(BasisError::IncompleteBasis {
                label: e.label(),
                reason: reason.clone(),
            });
        }
    }
    let character = if disc == 1 {
        DirichletCharacter::principal(level)
    } else {
        DirichletCharacter::kronecker(disc)
    };
    let basis = Basis {
        weight: k,
        level,
        character,
        elements,
        eisenstein_dim: eis.len(),
        cusp_dim: cusp.len(),
    };
    let sturm = basis.sturm();
    let cols = basis.columns(sturm + 1)?;
    let rk = rank(&cols);
    if rk < basis.dim() {
        return Err(BasisError::LinearlyDependent {
            rank: rk,
            dim: basis.dim(),
            sturm,
        });
    }
    Ok(basis)
}

/// Character of an eta quotient of integral weight `k`, as the discriminant
/// `(-1)^k prod delta^r` reduced to its fundamental part.
pub fn eta_quotient_character(spec: &EtaQuotientSpec) -> i64 {
    let k: i64 = spec.factors().iter().map(|&(_, r)| r).sum::<i64>() / 2;
    let mut s: i64 = if k % 2 == 0 { 1 } else { -1 };
    for &(d, r) in spec.factors() {
        // only the squarefree part matters
        if r.rem_euclid(2) == 1 {
            s *= d as i64;
        }
    }
    normalize_disc(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etagen::eta_quotient_cusp_orders;
    use crate::qseries::q;
    use num_traits::{Signed, ToPrimitive};

    fn ints(v: &[Q]) -> Vec<i64> {
        v.iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn eisenstein_examples() {
        let e4 = eisenstein_series(4, 1, 4).unwrap();
        assert_eq!(ints(e4.coeffs()), vec![1, 240, 2160, 6720]);
        let e43 = eisenstein_series(4, 3, 7).unwrap();
        assert_eq!(e43.coeff_at(1).unwrap(), qi(0));
        assert_eq!(e43.coeff_at(3).unwrap(), qi(240));
        let t = eisenstein_twisted(3, -4, 1, 1, 3).unwrap();
        assert_eq!(ints(&t.coeffs()[1..]), vec![1, 4]);
        assert!(eisenstein_twisted(2, 1, 8, 1, 3).is_ok());
        assert_eq!(
            eisenstein_twisted(3, 1, 1, 1, 3),
            Err(BasisError::ParityMismatch { k: 3, chi: 1, psi: 1 })
        );
        assert!(matches!(eisenstein_twisted(3, 5, 1, 1, 3), Err(BasisError::ParityMismatch { .. })));
        // -B_{3,chi_-4}/6 = -1/4
        assert_eq!(eisenstein_twisted(3, 1, -4, 1, 2).unwrap().coeffs()[0], q(-1, 4));
    }

    #[test]
    fn weight2_examples() {
        let p = weight2_combo(2, 5);
        assert_eq!(p.coeffs()[0], qi(-1));
        assert_eq!(p.coeffs()[1], qi(-24));
    }

    #[test]
    fn cusp_examples() {
        let f46 = cusp_form_series("f46", 8).unwrap();
        assert_eq!(f46.coeffs()[0], qi(0));
        assert_eq!(f46.coeffs()[1], qi(1));
        assert_eq!(f46.coeffs()[2], qi(-2));
        let f412 = cusp_form_series("f412", 4).unwrap();
        assert_eq!((f412.coeffs()[0].clone(), f412.coeffs()[1].clone()), (qi(0), qi(1)));
        let d = cusp_form_series("Delta[3,8,-8]", 3).unwrap();
        assert_eq!(d.coeffs()[1], qi(1));
        assert!(matches!(cusp_form_series("nope", 3), Err(BasisError::UnknownLabel(_))));
        let long = cusp_form_series("f46", 40).unwrap();
        assert_eq!(long.coeffs()[6], &long.coeffs()[2] * &long.coeffs()[3]);
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_bound(4, 12), 9);
        assert_eq!(sturm_bound(2, 4), 2);
        assert_eq!(sturm_bound(4, 1), 2);
    }

    #[test]
    fn label_roundtrip() {
        for l in ["E4@3", "E3[1,-4]@2", "phi[1,6]", "f46@2", "Delta[3,12,-4;1]", "Delta[5,8,-8;1']@3"] {
            assert_eq!(l.parse::<BasisElement>().unwrap().label(), l);
        }
        assert_eq!("E4@1".parse::<BasisElement>().unwrap().label(), "E4");
        assert!("E4@0".parse::<BasisElement>().is_err());
    }

    #[test]
    fn table_examples() {
        assert_eq!(assemble_basis(4, 12, 1).unwrap().dim(), 9);
        assert_eq!(assemble_basis(3, 4, -4).unwrap().dim(), 2);
        assert!(matches!(assemble_basis(5, 12, -3), Err(BasisError::IncompleteBasis { .. })));
        assert!(matches!(assemble_basis(4, 24, 8), Err(BasisError::UnsupportedSpace { .. })));
    }

    // Holomorphic on Gamma_0(24) but nonvanishing at one cusp.
    const NOT_CUSPIDAL: &[&str] = &["Delta[3,24,-3;1]", "Delta[3,24,-3;2]"];

    fn label_disc(label: &str) -> Option<i64> {
        let inner = label.strip_prefix("Delta[")?.strip_suffix(']')?;
        let head = inner.split(';').next()?;
        let parts: Vec<&str> = head.split(',').collect();
        Some(parts.get(2).map_or(Ok(1), |d| d.parse()).ok()?)
    }

    #[test]
    fn registered_quotients_are_holomorphic() {
        for entry in registry_entries() {
            let specs: Vec<EtaQuotientSpec> = match &entry.generator {
                Generator::Eta(s) => vec![s.clone()],
                Generator::EtaSum(t) => t.iter().map(|(_, s)| s.clone()).collect(),
                _ => continue,
            };
            for s in specs {
                assert!(s.offset().is_integer() && s.offset().is_positive(), "{}: offset", entry.label);
                let orders = eta_quotient_cusp_orders(&s, 24).unwrap();
                assert!(orders.iter().all(|(_, o)| !o.is_negative()), "{}: {orders:?}", entry.label);
                if !NOT_CUSPIDAL.contains(&entry.label.as_str()) {
                    assert!(orders.iter().all(|(_, o)| o.is_positive()), "{}: {orders:?}", entry.label);
                }
                if let Some(d) = label_disc(&entry.label) {
                    assert_eq!(eta_quotient_character(&s), normalize_disc(d), "{}", entry.label);
                } else {
                    assert_eq!(eta_quotient_character(&s), 1, "{}", entry.label);
                }
            }
        }
    }

    #[test]
    fn every_supported_space_assembles_with_declared_dimensions() {
        for (k, n, d) in supported_spaces() {
            match assemble_basis(k, n, d) {
                Ok(b) => {
                    assert_eq!((b.eisenstein_dim, b.cusp_dim), declared_dimensions(k, n, d).unwrap());
                    for e in &b.elements {
                        if e.is_cusp() {
                            assert!(e.coefficients(1).unwrap()[0].is_zero(), "{}", e.label());
                        }
                    }
                }
                Err(BasisError::IncompleteBasis { .. }) => assert_eq!((k, n, d), (5, 12, -3)),
                Err(e) => panic!("M{k}({n},{d}): {e}"),
            }
        }
    }
}
