//! Truncated power series in q with exact rational coefficients.
//!
//! A series stores the exponent of its first slot (`offset`, any rational)
//! and the coefficients of `q^(offset + i)` for `i < prec`. Everything at or
//! beyond `offset + prec` is unknown.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Q = BigRational;

/// Shorthand for the rational `n/d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series offsets {0} and {1} differ by a non-integer")]
    NonIntegerOffsetGap(Q, Q),
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("exponent {exp} is outside the certified window (known below {limit})")]
    OutOfPrecision { exp: Q, limit: Q },
    #[error("a series needs at least one coefficient")]
    EmptySeries,
}

#[derive(Clone, Debug)]
pub struct FracQSeries {
    offset: Q,
    coeffs: Vec<Q>,
}

impl FracQSeries {
    pub fn new(offset: Q, coeffs: Vec<Q>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::EmptySeries);
        }
        Ok(Self { offset, coeffs })
    }

    /// Integer coefficients starting at `q^offset`.
    pub fn from_ints(offset: Q, coeffs: &[i64]) -> Result<Self, SeriesError> {
        Self::new(offset, coeffs.iter().map(|&c| qi(c)).collect())
    }

    pub fn from_bigints(offset: Q, coeffs: Vec<BigInt>) -> Result<Self, SeriesError> {
        Self::new(offset, coeffs.into_iter().map(Q::from_integer).collect())
    }

    /// The constant 1, known to `prec` terms.
    pub fn one(prec: usize) -> Self {
        Self::constant(Q::one(), prec)
    }

    pub fn zero(prec: usize) -> Self {
        Self::constant(Q::zero(), prec)
    }

    pub fn constant(c: Q, prec: usize) -> Self {
        let prec = prec.max(1);
        let mut coeffs = vec![Q::zero(); prec];
        coeffs[0] = c;
        Self {
            offset: Q::zero(),
            coeffs,
        }
    }

    pub fn offset(&self) -> &Q {
        &self.offset
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// First exponent that is no longer certified.
    pub fn certified_end(&self) -> Q {
        &self.offset + qi(self.prec() as i64)
    }

    fn int_gap(a: &Q, b: &Q) -> Result<i64, SeriesError> {
        let gap = b - a;
        if !gap.is_integer() {
            return Err(SeriesError::NonIntegerOffsetGap(a.clone(), b.clone()));
        }
        Ok(gap.to_integer().to_i64().expect("offset gap fits in i64"))
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        let (lo, gap) = if self.offset <= other.offset {
            (self, Self::int_gap(&self.offset, &other.offset)?)
        } else {
            (other, Self::int_gap(&other.offset, &self.offset)?)
        };
        let hi = if std::ptr::eq(lo, self) { other } else { self };
        let gap = gap as usize;
        let end = lo.prec().min(gap + hi.prec());
        let mut coeffs = Vec::with_capacity(end);
        for i in 0..end {
            let mut c = lo.coeffs[i].clone();
            if i >= gap {
                c += &hi.coeffs[i - gap];
            }
            coeffs.push(c);
        }
        Self::new(lo.offset.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self {
            offset: self.offset.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `q^s`.
    pub fn shift(&self, s: &Q) -> Self {
        Self {
            offset: &self.offset + s,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let n = prec.max(1).min(self.prec());
        Self {
            offset: self.offset.clone(),
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.prec().min(other.prec());
        let mut out = vec![Q::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self {
            offset: &self.offset + &other.offset,
            coeffs: out,
        }
    }

    pub fn invert(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::ZeroLeadingCoefficient);
        }
        let inv0 = a0.recip();
        let n = self.prec();
        let mut out: Vec<Q> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut s = Q::zero();
            for i in 1..=k {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    s += a * &out[k - i];
                }
            }
            out.push(-s * &inv0);
        }
        Ok(Self {
            offset: -&self.offset,
            coeffs: out,
        })
    }

    /// Substitute `q -> q^m`.
    pub fn dilate(&self, m: usize) -> Self {
        assert!(m >= 1, "dilation factor must be positive");
        if m == 1 {
            return self.clone();
        }
        let mut coeffs = vec![Q::zero(); self.prec() * m];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        Self {
            offset: &self.offset * qi(m as i64),
            coeffs,
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        if e < 0 {
            return self.invert()?.pow(-e);
        }
        let mut result = Self::one(self.prec());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Coefficient of `q^n`; zero off the exponent lattice or below the offset.
    pub fn coeff(&self, n: &Q) -> Result<Q, SeriesError> {
        if *n >= self.certified_end() {
            return Err(SeriesError::OutOfPrecision {
                exp: n.clone(),
                limit: self.certified_end(),
            });
        }
        let d = n - &self.offset;
        if d.is_negative() || !d.is_integer() {
            return Ok(Q::zero());
        }
        let i = d.to_integer().to_usize().expect("index fits");
        Ok(self.coeffs[i].clone())
    }

    pub fn coeff_at(&self, n: i64) -> Result<Q, SeriesError> {
        self.coeff(&qi(n))
    }

    /// Integer coefficients, if they are all integral.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// True when the offset is a nonnegative integer.
    pub fn has_integral_offset(&self) -> bool {
        self.offset.is_integer() && !self.offset.is_negative()
    }

    /// Coefficients indexed by absolute exponent `0..end`, for series whose
    /// offset is a nonnegative integer. Entries below the offset are zero.
    pub fn dense_from_zero(&self, end: usize) -> Result<Vec<Q>, SeriesError> {
        (0..end).map(|n| self.coeff_at(n as i64)).collect()
    }
}

impl PartialEq for FracQSeries {
    fn eq(&self, other: &Self) -> bool {
        let gap = &other.offset - &self.offset;
        if !gap.is_integer() {
            return self.coeffs.iter().all(Zero::is_zero) && other.coeffs.iter().all(Zero::is_zero);
        }
        let lo = self.offset.clone().min(other.offset.clone());
        let end = self.certified_end().min(other.certified_end());
        let span = (&end - &lo).to_integer().to_i64().unwrap_or(0).max(0);
        for i in 0..span {
            let e = &lo + qi(i);
            let a = self.coeff(&e).unwrap_or_else(|_| Q::zero());
            let b = other.coeff(&e).unwrap_or_else(|_| Q::zero());
            if a != b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for FracQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = &self.offset + qi(i as i64);
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = !a.is_one() || e.is_zero();
            if show_coeff {
                write!(f, "{a}")?;
            }
            if !e.is_zero() {
                if e.is_one() {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.certified_end())
    }
}

/// Exact integer-coefficient power series helpers used where the inputs are
/// known to be integral (eta products, theta products). They operate on
/// `Vec<BigInt>` starting at exponent 0.
pub mod intpoly {
    use super::*;

    pub fn mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().take(n).enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().take(n - i).enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }

    /// Multiply in place by `(1 - q^m)`.
    pub fn mul_one_minus(c: &mut [BigInt], m: usize) {
        for i in (m..c.len()).rev() {
            let t = c[i - m].clone();
            c[i] -= t;
        }
    }

    /// Divide in place by `(1 - q^m)`.
    pub fn div_one_minus(c: &mut [BigInt], m: usize) {
        for i in m..c.len() {
            let t = c[i - m].clone();
            c[i] += t;
        }
    }

    pub fn is_unit_lead(c: &[BigInt]) -> bool {
        c.first().map(|x| x.is_one()).unwrap_or(false)
    }

    /// Exact division of integer coefficients by an integer, if possible.
    pub fn div_exact(c: &[BigInt], d: &BigInt) -> Option<Vec<BigInt>> {
        c.iter()
            .map(|x| {
                let (qt, r) = x.div_rem(d);
                r.is_zero().then_some(qt)
            })
            .collect()
    }
}
