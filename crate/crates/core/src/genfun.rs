//! Generating functions of the figurate, square, triangular and hexagonal
//! pieces, and of whole mixed forms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::etagen::{eta_quotient_series, figurate_quotient, gen_eta_quotient_series, EtaQuotientSpec, GenEtaQuotientSpec};
use crate::qseries::{intpoly, q, qi, FracQSeries, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenFunError {
    #[error("coefficients must be positive integers")]
    ZeroCoefficient,
    #[error("figurate parameter a must be at least 1, got {0}")]
    BadFigurateParameter(u64),
    #[error("shift {0} is not a nonnegative integer")]
    NotModularShift(Q),
    #[error("cannot parse form spec: {0}")]
    Parse(String),
}

/// Figurate part `sum c_i f_a(x_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Figurate {
    pub a: u64,
    pub coeffs: Vec<u64>,
}

/// Coefficient lists of one mixed form. Lists are kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormSpec {
    #[serde(default)]
    pub hex: Vec<u64>,
    #[serde(default)]
    pub squares: Vec<u64>,
    #[serde(default)]
    pub triangular: Vec<u64>,
    #[serde(default)]
    pub figurate: Option<Figurate>,
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

impl FormSpec {
    pub fn new(hex: Vec<u64>, squares: Vec<u64>, triangular: Vec<u64>, figurate: Option<Figurate>) -> Result<Self, GenFunError> {
        let s = Self {
            hex: sorted(hex),
            squares: sorted(squares),
            triangular: sorted(triangular),
            figurate: figurate.map(|f| Figurate {
                a: f.a,
                coeffs: sorted(f.coeffs),
            }),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn triangular(c: &[u64]) -> Result<Self, GenFunError> {
        Self::new(vec![], vec![], c.to_vec(), None)
    }

    pub fn squares(b: &[u64]) -> Result<Self, GenFunError> {
        Self::new(vec![], b.to_vec(), vec![], None)
    }

    pub fn figurate(a: u64, c: &[u64]) -> Result<Self, GenFunError> {
        Self::new(vec![], vec![], vec![], Some(Figurate { a, coeffs: c.to_vec() }))
    }

    /// Re-sorts and checks a spec built directly from its public fields.
    pub fn normalized(self) -> Result<Self, GenFunError> {
        Self::new(self.hex, self.squares, self.triangular, self.figurate)
    }

    pub fn validate(&self) -> Result<(), GenFunError> {
        let all = self
            .hex
            .iter()
            .chain(&self.squares)
            .chain(&self.triangular)
            .chain(self.figurate.iter().flat_map(|f| f.coeffs.iter()));
        if all.into_iter().any(|&c| c == 0) {
            return Err(GenFunError::ZeroCoefficient);
        }
        if let Some(f) = &self.figurate {
            if f.a == 0 {
                return Err(GenFunError::BadFigurateParameter(0));
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.hex.is_empty()
            && self.squares.is_empty()
            && self.triangular.is_empty()
            && self.figurate.as_ref().map_or(true, |f| f.coeffs.is_empty())
    }

    /// `u`, the number of hexagonal (binary) pieces.
    pub fn u(&self) -> usize {
        self.hex.len()
    }

    pub fn v(&self) -> usize {
        self.squares.len()
    }

    pub fn k(&self) -> usize {
        self.triangular.len()
    }

    /// Number of variables `2u + v + k (+ figurate count)`.
    pub fn variable_count(&self) -> usize {
        2 * self.u() + self.v() + self.k() + self.figurate.as_ref().map_or(0, |f| f.coeffs.len())
    }

    /// `h` of the triangular part.
    pub fn h_triangular(&self) -> u64 {
        self.triangular.iter().sum()
    }

    /// Exponent `p` with `q^p * (generating function)` on an integral lattice:
    /// `h_tri/8 + (a-2)^2 h_fig/(8a)`.
    pub fn shift(&self) -> Q {
        let mut p = q(self.h_triangular() as i64, 8);
        if let Some(f) = &self.figurate {
            let h: u64 = f.coeffs.iter().sum();
            let a = f.a as i64;
            p += q((a - 2) * (a - 2) * h as i64, 8 * a);
        }
        p
    }
}

fn fmt_list(v: &[u64]) -> String {
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        if j - i == 1 {
            out.push(v[i].to_string());
        } else {
            out.push(format!("{}^{}", v[i], j - i));
        }
        i = j;
    }
    out.join(" ")
}

impl fmt::Display for FormSpec {
    /// Round-trips through [`FromStr`]: `hex=2; sq=1^3 3^3; tri=2 6; fig3=2^4 4^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.hex.is_empty() {
            parts.push(format!("hex={}", fmt_list(&self.hex)));
        }
        if !self.squares.is_empty() {
            parts.push(format!("sq={}", fmt_list(&self.squares)));
        }
        if !self.triangular.is_empty() {
            parts.push(format!("tri={}", fmt_list(&self.triangular)));
        }
        if let Some(fig) = &self.figurate {
            parts.push(format!("fig{}={}", fig.a, fmt_list(&fig.coeffs)));
        }
        f.write_str(&parts.join("; "))
    }
}

fn parse_list(s: &str) -> Result<Vec<u64>, GenFunError> {
    let mut out = Vec::new();
    for tok in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let (base, mult) = match tok.split_once('^') {
            Some((b, m)) => (b, m),
            None => (tok, "1"),
        };
        let b: u64 = base.parse().map_err(|_| GenFunError::Parse(tok.to_string()))?;
        let m: usize = mult.parse().map_err(|_| GenFunError::Parse(tok.to_string()))?;
        out.extend(std::iter::repeat(b).take(m));
    }
    Ok(out)
}

impl FromStr for FormSpec {
    type Err = GenFunError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut spec = FormSpec::default();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| GenFunError::Parse(part.to_string()))?;
            let list = parse_list(val)?;
            match key.trim() {
                "hex" => spec.hex.extend(list),
                "sq" | "squares" => spec.squares.extend(list),
                "tri" | "triangular" => spec.triangular.extend(list),
                k if k.starts_with("fig") => {
                    let a: u64 = k[3..].parse().map_err(|_| GenFunError::Parse(k.to_string()))?;
                    spec.figurate = Some(Figurate { a, coeffs: list });
                }
                k => return Err(GenFunError::Parse(format!("unknown key `{k}`"))),
            }
        }
        spec.normalized()
    }
}

fn indicator(prec: usize, exps: impl IntoIterator<Item = u64>) -> FracQSeries {
    let mut c = vec![BigInt::zero(); prec.max(1)];
    for e in exps {
        if (e as usize) < c.len() {
            c[e as usize] += 1;
        }
    }
    FracQSeries::from_bigints(qi(0), c).expect("nonempty")
}

/// `Psi = sum_{n>=0} q^(n(n+1)/2)`.
pub fn psi_series(prec: usize) -> FracQSeries {
    indicator(prec, (0u64..).map(|n| n * (n + 1) / 2).take_while(|&t| (t as usize) < prec.max(1)))
}

/// `theta = sum_{n in Z} q^(n^2)`.
pub fn theta_series(prec: usize) -> FracQSeries {
    let bound = (prec as f64).sqrt() as i64 + 2;
    indicator(
        prec,
        (-bound..=bound).map(|n| (n * n) as u64).filter(|&e| (e as usize) < prec.max(1)),
    )
}

/// `f_a(n) = (a n^2 + (a-2) n)/2`.
pub fn figurate_number(a: u64, n: i64) -> i64 {
    let a = a as i64;
    (a * n * n + (a - 2) * n) / 2
}

/// `Phi_a = sum_{n in Z} q^(f_a(n))` by direct enumeration; `a = 2` is theta.
pub fn phi_a_series(a: u64, prec: usize) -> FracQSeries {
    if a == 2 {
        return theta_series(prec);
    }
    let bound = ((2 * prec) as f64 / a as f64).sqrt() as i64 + 3;
    indicator(
        prec,
        (-bound..=bound)
            .map(|n| figurate_number(a, n))
            .filter(|&e| e >= 0 && (e as usize) < prec.max(1))
            .map(|e| e as u64),
    )
}

/// `Phi_a` through its generalized eta quotient, with the prefactor removed.
/// Only meaningful for `a >= 3`.
pub fn phi_a_eta(a: u64, prec: usize) -> FracQSeries {
    let spec = figurate_quotient(a, &[1]);
    let s = gen_eta_quotient_series(&spec, prec);
    s.shift(&-s.offset().clone())
}

/// `Psi` through `q^(-1/8) eta(2 tau)^2 / eta(tau)`.
pub fn psi_eta(prec: usize) -> FracQSeries {
    let spec: EtaQuotientSpec = EtaQuotientSpec::new([(1, -1), (2, 2)]).expect("valid");
    let s = eta_quotient_series(&spec, prec);
    s.shift(&q(-1, 8))
}

/// `theta` through `eta(2 tau)^5 / (eta(tau)^2 eta(4 tau)^2)`.
pub fn theta_eta(prec: usize) -> FracQSeries {
    let spec = EtaQuotientSpec::new([(1, -2), (2, 5), (4, -2)]).expect("valid");
    eta_quotient_series(&spec, prec)
}

/// `F = sum_{m,n} q^(m^2 + mn + n^2)` by direct enumeration.
pub fn hex_series(prec: usize) -> FracQSeries {
    let prec = prec.max(1);
    let mut c = vec![BigInt::zero(); prec];
    // m^2 + mn + n^2 >= 3/4 max(|m|,|n|)^2
    let bound = ((4 * prec) as f64 / 3.0).sqrt() as i64 + 2;
    for m in -bound..=bound {
        for n in -bound..=bound {
            let e = m * m + m * n + n * n;
            if (e as usize) < prec {
                c[e as usize] += 1;
            }
        }
    }
    FracQSeries::from_bigints(qi(0), c).expect("nonempty")
}

fn product_of(pieces: impl IntoIterator<Item = FracQSeries>, prec: usize) -> FracQSeries {
    let mut acc = vec![BigInt::zero(); prec.max(1)];
    acc[0] = BigInt::from(1);
    for p in pieces {
        let b = p.to_bigints().expect("component series are integral");
        acc = intpoly::mul(&acc, &b, prec.max(1));
    }
    FracQSeries::from_bigints(qi(0), acc).expect("nonempty")
}

/// Product of the dilated component series. The figurate part with `a = 1`
/// contributes `Psi(c tau)` (indices counted once), matching the triangular
/// convention.
pub fn form_series(spec: &FormSpec, prec: usize) -> FracQSeries {
    let hex = hex_series(prec);
    let th = theta_series(prec);
    let ps = psi_series(prec);
    let mut pieces = Vec::new();
    for &a in &spec.hex {
        pieces.push(hex.dilate(a as usize).truncate(prec));
    }
    for &b in &spec.squares {
        pieces.push(th.dilate(b as usize).truncate(prec));
    }
    for &c in &spec.triangular {
        pieces.push(ps.dilate(c as usize).truncate(prec));
    }
    if let Some(f) = &spec.figurate {
        let base = if f.a == 1 { ps.clone() } else { phi_a_series(f.a, prec) };
        for &c in &f.coeffs {
            pieces.push(base.dilate(c as usize).truncate(prec));
        }
    }
    product_of(pieces, prec)
}

/// `q^p * form_series`, with `p` required to be a nonnegative integer.
pub fn normalized_form_series(spec: &FormSpec, prec: usize) -> Result<(FracQSeries, Q), GenFunError> {
    let p = spec.shift();
    if !p.is_integer() || p.is_negative() {
        return Err(GenFunError::NotModularShift(p));
    }
    Ok((form_series(spec, prec).shift(&p), p))
}

/// Generalized eta quotient equal to `q^p * form_series` when the spec has no
/// hexagonal part (`F` is not an eta quotient).
pub fn form_eta_spec(spec: &FormSpec) -> Option<GenEtaQuotientSpec> {
    if !spec.hex.is_empty() {
        return None;
    }
    let theta = EtaQuotientSpec::new([(1, -2), (2, 5), (4, -2)]).expect("valid").to_generalized();
    let psi = EtaQuotientSpec::new([(1, -1), (2, 2)]).expect("valid").to_generalized();
    let mut acc = GenEtaQuotientSpec::default();
    for &b in &spec.squares {
        acc = acc.product(&theta.dilated(b));
    }
    for &c in &spec.triangular {
        acc = acc.product(&psi.dilated(c));
    }
    if let Some(f) = &spec.figurate {
        match f.a {
            // 2n^2 + n over Z hits each triangular number once, so Phi_4 = Psi
            1 | 4 => {
                for &c in &f.coeffs {
                    acc = acc.product(&psi.dilated(c));
                }
            }
            2 => {
                for &c in &f.coeffs {
                    acc = acc.product(&theta.dilated(c));
                }
            }
            a => acc = acc.product(&figurate_quotient(a, &f.coeffs)),
        }
    }
    Some(acc)
}
