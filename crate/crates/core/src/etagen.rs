//! Dedekind eta, the generalized eta functions `eta_{delta,g}`, their
//! quotients, and the cusp-order bookkeeping used for modularity checks.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{divisors, gcd, p2};
use crate::qseries::{q, qi, FracQSeries, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EtaError {
    #[error("delta = {delta} does not divide the level {level}")]
    DeltaNotDividingLevel { delta: u64, level: u64 },
    #[error("bad eta token `{0}` (expected delta^r)")]
    BadToken(String),
    #[error("exponent {r} at (delta, g) = ({delta}, {g}) must be {need}")]
    BadExponent { delta: u64, g: u64, r: Q, need: &'static str },
    #[error("delta must be positive")]
    ZeroDelta,
}

/// Exponents `k(3k-1)/2` of the pentagonal number theorem with their signs,
/// restricted to `< limit`.
pub fn pentagonal_terms(limit: usize) -> Vec<(usize, i8)> {
    let mut out = vec![(0usize, 1i8)];
    let mut k: i64 = 1;
    loop {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        let e1 = (k * (3 * k - 1) / 2) as usize;
        let e2 = (k * (3 * k + 1) / 2) as usize;
        if e1 >= limit {
            break;
        }
        out.push((e1, sign));
        if e2 < limit {
            out.push((e2, sign));
        }
        k += 1;
    }
    out.sort();
    out
}

/// Coefficients of `prod_{n>=1} (1 - q^n)` below `prec`.
pub fn euler_product(prec: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); prec];
    for (e, s) in pentagonal_terms(prec) {
        c[e] = BigInt::from(s);
    }
    c
}

/// Multiply in place by `prod (1 - q^(delta n))`, using the sparse
/// pentagonal expansion.
fn mul_euler(c: &mut [BigInt], delta: usize) {
    let terms: Vec<(usize, i8)> = pentagonal_terms(c.len().div_ceil(delta))
        .into_iter()
        .filter(|&(e, _)| e > 0 && e * delta < c.len())
        .collect();
    for i in (0..c.len()).rev() {
        let mut acc = BigInt::zero();
        for &(e, s) in &terms {
            let j = e * delta;
            if j > i {
                break;
            }
            if !c[i - j].is_zero() {
                if s > 0 {
                    acc += &c[i - j];
                } else {
                    acc -= &c[i - j];
                }
            }
        }
        c[i] += acc;
    }
}

/// Divide in place by `prod (1 - q^(delta n))`.
fn div_euler(c: &mut [BigInt], delta: usize) {
    let terms: Vec<(usize, i8)> = pentagonal_terms(c.len().div_ceil(delta))
        .into_iter()
        .filter(|&(e, _)| e > 0 && e * delta < c.len())
        .collect();
    for i in 0..c.len() {
        let mut acc = BigInt::zero();
        for &(e, s) in &terms {
            let j = e * delta;
            if j > i {
                break;
            }
            if !c[i - j].is_zero() {
                if s > 0 {
                    acc += &c[i - j];
                } else {
                    acc -= &c[i - j];
                }
            }
        }
        // c_new[i] = c[i] - sum_{j>0} p_j c_new[i - j]
        c[i] -= acc;
    }
}

/// `eta(delta tau)` to `prec` coefficients; offset `delta/24`.
pub fn eta_series(delta: u64, prec: usize) -> FracQSeries {
    let mut c = vec![BigInt::zero(); prec.max(1)];
    c[0] = BigInt::from(1);
    mul_euler(&mut c, delta as usize);
    FracQSeries::from_bigints(q(delta as i64, 24), c).expect("nonempty")
}

/// A product `prod eta(delta tau)^(r_delta)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EtaQuotientSpec {
    factors: Vec<(u64, i64)>,
}

impl EtaQuotientSpec {
    /// Merges repeated deltas and drops zero exponents.
    pub fn new(pairs: impl IntoIterator<Item = (u64, i64)>) -> Result<Self, EtaError> {
        let mut m: BTreeMap<u64, i64> = BTreeMap::new();
        for (d, r) in pairs {
            if d == 0 {
                return Err(EtaError::ZeroDelta);
            }
            *m.entry(d).or_default() += r;
        }
        Ok(Self {
            factors: m.into_iter().filter(|&(_, r)| r != 0).collect(),
        })
    }

    pub fn factors(&self) -> &[(u64, i64)] {
        &self.factors
    }

    /// Exponent of `q` in front of the product.
    pub fn offset(&self) -> Q {
        let s: i64 = self.factors.iter().map(|&(d, r)| d as i64 * r).sum();
        q(s, 24)
    }

    pub fn weight(&self) -> Q {
        let s: i64 = self.factors.iter().map(|&(_, r)| r).sum();
        q(s, 2)
    }

    /// Same quotient with every delta multiplied by `m` (i.e. `tau -> m tau`).
    pub fn dilated(&self, m: u64) -> Self {
        Self {
            factors: self.factors.iter().map(|&(d, r)| (d * m, r)).collect(),
        }
    }

    pub fn to_generalized(&self) -> GenEtaQuotientSpec {
        GenEtaQuotientSpec {
            factors: self
                .factors
                .iter()
                .map(|&(d, r)| GenEtaFactor {
                    delta: d,
                    g: 0,
                    r: q(r, 2),
                })
                .collect(),
        }
    }
}

impl FromStr for EtaQuotientSpec {
    type Err = EtaError;

    /// Parses space-separated `delta^r` tokens, e.g. `1^-2 2^5 4^-2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut pairs = Vec::new();
        for tok in s.split_whitespace() {
            let (d, r) = match tok.split_once('^') {
                Some((d, r)) => (d, r),
                None => (tok, "1"),
            };
            let d: u64 = d.parse().map_err(|_| EtaError::BadToken(tok.to_string()))?;
            let r: i64 = r.parse().map_err(|_| EtaError::BadToken(tok.to_string()))?;
            pairs.push((d, r));
        }
        Self::new(pairs)
    }
}

impl fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.factors.iter().map(|(d, r)| format!("{d}^{r}")).collect();
        f.write_str(&toks.join(" "))
    }
}

/// Expansion of an eta quotient to `prec` coefficients.
pub fn eta_quotient_series(spec: &EtaQuotientSpec, prec: usize) -> FracQSeries {
    let mut c = vec![BigInt::zero(); prec.max(1)];
    c[0] = BigInt::from(1);
    for &(d, r) in &spec.factors {
        for _ in 0..r.unsigned_abs() {
            if r > 0 {
                mul_euler(&mut c, d as usize);
            } else {
                div_euler(&mut c, d as usize);
            }
        }
    }
    FracQSeries::from_bigints(spec.offset(), c).expect("nonempty")
}

/// Ligozat order of an eta quotient at the cusp class `1/d`, normalized as
/// `(N/24) sum gcd(d,delta)^2 r / (gcd(d, N/d) d delta)`.
pub fn eta_quotient_cusp_orders(spec: &EtaQuotientSpec, level: u64) -> Result<Vec<(u64, Q)>, EtaError> {
    for &(d, _) in &spec.factors {
        if level % d != 0 {
            return Err(EtaError::DeltaNotDividingLevel { delta: d, level });
        }
    }
    Ok(divisors(level)
        .into_iter()
        .map(|c| {
            let mut s = Q::zero();
            for &(d, r) in &spec.factors {
                let g = gcd(c as i64, d as i64);
                s += q(g * g * r, c as i64 * d as i64);
            }
            let w = gcd(c as i64, (level / c) as i64);
            (c, s * q(level as i64, 24 * w))
        })
        .collect())
}

/// One factor `eta_{delta,g}^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenEtaFactor {
    pub delta: u64,
    pub g: u64,
    pub r: Q,
}

/// A product of generalized eta functions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenEtaQuotientSpec {
    factors: Vec<GenEtaFactor>,
}

fn self_paired(delta: u64, g: u64) -> bool {
    (2 * g) % delta == 0
}

impl GenEtaQuotientSpec {
    /// Reduces `g` mod delta, merges equal `(delta, g)` pairs and checks that
    /// half-integral exponents only occur at `g = 0` or `g = delta/2`.
    pub fn new(factors: impl IntoIterator<Item = GenEtaFactor>) -> Result<Self, EtaError> {
        let mut m: BTreeMap<(u64, u64), Q> = BTreeMap::new();
        for f in factors {
            if f.delta == 0 {
                return Err(EtaError::ZeroDelta);
            }
            let key = (f.delta, f.g % f.delta);
            *m.entry(key).or_insert_with(Q::zero) += f.r;
        }
        let mut out = Vec::new();
        for ((delta, g), r) in m {
            if r.is_zero() {
                continue;
            }
            if self_paired(delta, g) {
                if !(&r * qi(2)).is_integer() {
                    return Err(EtaError::BadExponent { delta, g, r, need: "a half-integer" });
                }
            } else if !r.is_integer() {
                return Err(EtaError::BadExponent { delta, g, r, need: "an integer" });
            }
            out.push(GenEtaFactor { delta, g, r });
        }
        Ok(Self { factors: out })
    }

    pub fn factors(&self) -> &[GenEtaFactor] {
        &self.factors
    }

    pub fn offset(&self) -> Q {
        self.factors
            .iter()
            .map(|f| qi(f.delta as i64) * p2(&q(f.g as i64, f.delta as i64)) * &f.r / qi(2))
            .sum()
    }

    pub fn product(&self, other: &Self) -> Self {
        Self::new(self.factors.iter().chain(other.factors.iter()).cloned()).expect("merge of valid specs")
    }

    pub fn power(&self, e: i64) -> Self {
        Self::new(self.factors.iter().map(|f| GenEtaFactor {
            delta: f.delta,
            g: f.g,
            r: &f.r * qi(e),
        }))
        .expect("integer power of a valid spec")
    }

    pub fn dilated(&self, c: u64) -> Self {
        Self::new(self.factors.iter().map(|f| GenEtaFactor {
            delta: f.delta * c,
            g: f.g * c,
            r: f.r.clone(),
        }))
        .expect("dilation of a valid spec")
    }

    /// Integer exponent attached to each residue class `n = res (mod delta)`.
    fn class_exponents(&self) -> BTreeMap<(u64, u64), i64> {
        let mut m: BTreeMap<(u64, u64), i64> = BTreeMap::new();
        for f in &self.factors {
            if self_paired(f.delta, f.g) {
                let e = (&f.r * qi(2)).to_integer().to_i64().expect("small exponent");
                *m.entry((f.delta, f.g)).or_default() += e;
            } else {
                let e = f.r.to_integer().to_i64().expect("small exponent");
                *m.entry((f.delta, f.g)).or_default() += e;
                *m.entry((f.delta, f.delta - f.g)).or_default() += e;
            }
        }
        m
    }
}

impl fmt::Display for GenEtaQuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .factors
            .iter()
            .map(|x| format!("η[{},{}]^({})", x.delta, x.g, x.r))
            .collect();
        f.write_str(&toks.join(" "))
    }
}

/// `eta_{delta,g}(tau)` to `prec` coefficients. The product runs over
/// `n >= 1` in the classes `n = g` and `n = -g (mod delta)`; when those classes
/// coincide the factor appears twice, so `eta_{1,0} = eta^2`.
pub fn gen_eta_series(delta: u64, g: u64, prec: usize) -> FracQSeries {
    let spec = GenEtaQuotientSpec::new([GenEtaFactor {
        delta,
        g,
        r: qi(1),
    }])
    .expect("unit exponent is always valid");
    gen_eta_quotient_series(&spec, prec)
}

pub fn gen_eta_quotient_series(spec: &GenEtaQuotientSpec, prec: usize) -> FracQSeries {
    let prec = prec.max(1);
    let mut c = vec![BigInt::zero(); prec];
    c[0] = BigInt::from(1);
    for ((delta, res), e) in spec.class_exponents() {
        let start = if res == 0 { delta } else { res };
        let mut n = start as usize;
        while n < prec {
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    crate::qseries::intpoly::mul_one_minus(&mut c, n);
                } else {
                    crate::qseries::intpoly::div_one_minus(&mut c, n);
                }
            }
            n += delta as usize;
        }
    }
    FracQSeries::from_bigints(spec.offset(), c).expect("nonempty")
}

/// A cusp `lambda / (mu epsilon)` of `Gamma_0(N)` with `epsilon | N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cusp {
    pub lambda: u64,
    pub mu: u64,
    pub epsilon: u64,
}

/// `sum gcd(delta,eps)^2/(delta eps) P2(lambda g / gcd(delta,eps)) r`.
pub fn gen_eta_cusp_order(spec: &GenEtaQuotientSpec, level: u64, cusp: &Cusp) -> Result<Q, EtaError> {
    let mut s = Q::zero();
    for f in &spec.factors {
        if level % f.delta != 0 {
            return Err(EtaError::DeltaNotDividingLevel { delta: f.delta, level });
        }
        let gd = gcd(f.delta as i64, cusp.epsilon as i64);
        let x = q((cusp.lambda * f.g) as i64, gd);
        s += q(gd * gd, f.delta as i64 * cusp.epsilon as i64) * p2(&x) * &f.r;
    }
    Ok(s)
}

/// Cusp representatives used for the nonnegativity sweep: every `eps | N`
/// paired with every `lambda` in `1..=N` coprime to `N`.
pub fn cusp_sweep(level: u64) -> Vec<Cusp> {
    let mut out = Vec::new();
    for eps in divisors(level) {
        for lambda in 1..=level {
            if gcd(lambda as i64, level as i64) == 1 {
                out.push(Cusp {
                    lambda,
                    mu: 1,
                    epsilon: eps,
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremAReport {
    /// `sum delta P2(g/delta) r = 0 (mod 2)`.
    pub first_congruence: bool,
    /// `sum (N/delta) P2(0) r = 0 (mod 2)`.
    pub second_congruence: bool,
    pub cond_i_holds: bool,
    pub cond_ii_nonneg_everywhere: bool,
    pub min_cusp_order: Q,
    /// Weight counted so that `eta_{delta,0}` (= eta(delta tau)^2) has weight 1.
    pub weight: Q,
    /// The literal `1/2 sum r_{delta,0}` expression.
    pub weight_half_sum: Q,
}

fn is_even_integer(x: &Q) -> bool {
    let h = x / qi(2);
    h.is_integer()
}

pub fn theorem_a_conditions(spec: &GenEtaQuotientSpec, level: u64) -> Result<TheoremAReport, EtaError> {
    let mut first = Q::zero();
    let mut second = Q::zero();
    let mut r0 = Q::zero();
    for f in &spec.factors {
        if level % f.delta != 0 {
            return Err(EtaError::DeltaNotDividingLevel { delta: f.delta, level });
        }
        first += qi(f.delta as i64) * p2(&q(f.g as i64, f.delta as i64)) * &f.r;
        second += q((level / f.delta) as i64, 1) * p2(&qi(0)) * &f.r;
        if f.g == 0 {
            r0 += &f.r;
        }
    }
    let mut min_order: Option<Q> = None;
    for cusp in cusp_sweep(level) {
        let o = gen_eta_cusp_order(spec, level, &cusp)?;
        if min_order.as_ref().map_or(true, |m| &o < m) {
            min_order = Some(o);
        }
    }
    let min_order = min_order.unwrap_or_else(Q::zero);
    let a = is_even_integer(&first);
    let b = is_even_integer(&second);
    Ok(TheoremAReport {
        first_congruence: a,
        second_congruence: b,
        cond_i_holds: a && b,
        cond_ii_nonneg_everywhere: !min_order.is_negative(),
        min_cusp_order: min_order,
        weight: r0.clone(),
        weight_half_sum: r0 / qi(2),
    })
}

/// Generalized eta quotient whose expansion is `q^((a-2)^2 h/(8a)) Phi_a^C`:
/// `prod eta_{a c,0}^(1/2) eta_{2ac,2c} / eta_{ac,c}`.
pub fn figurate_quotient(a: u64, coeffs: &[u64]) -> GenEtaQuotientSpec {
    let mut fs = Vec::new();
    for &c in coeffs {
        fs.push(GenEtaFactor {
            delta: a * c,
            g: 0,
            r: q(1, 2),
        });
        fs.push(GenEtaFactor {
            delta: 2 * a * c,
            g: 2 * c,
            r: qi(1),
        });
        fs.push(GenEtaFactor {
            delta: a * c,
            g: c,
            r: qi(-1),
        });
    }
    GenEtaQuotientSpec::new(fs).expect("figurate exponents are valid")
}
