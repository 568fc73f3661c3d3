//! Weight, level and character of the normalized generating function of a
//! form, with the divisibility conditions that make it modular.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd, lcm, lcm_all, DirichletCharacter};
use crate::etagen::{theorem_a_conditions, EtaError, TheoremAReport};
use crate::genfun::{form_eta_spec, FormSpec};
use crate::qseries::{qi, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetaError {
    #[error("h = {h} is not divisible by {modulus}")]
    DivisibilityViolated { h: u64, modulus: u64 },
    #[error("odd variable count {0}: half-integral weight is not certified")]
    OddVariableCount(usize),
    #[error("the figurate part needs an even number of variables, got {0}")]
    OddFigurateCount(usize),
    #[error("empty form")]
    EmptySpec,
    #[error("square part must be nonempty")]
    MissingSquares,
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Eta(#[from] EtaError),
}

/// Which statement the metadata comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MetaSource {
    Figurate,
    HexTriangular,
    SquareTriangular,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceMeta {
    pub weight: u32,
    pub level: u64,
    /// Reduced character; a square discriminant becomes the principal
    /// character modulo the level.
    pub character: DirichletCharacter,
    /// Discriminant before reduction, e.g. `-108` for `(-108/.)`.
    pub raw_discriminant: i64,
    pub shift: Q,
    pub source: MetaSource,
}

impl SpaceMeta {
    /// Discriminant used to key basis tables: 1 for principal.
    pub fn disc(&self) -> i64 {
        self.character.disc()
    }
}

impl fmt::Display for SpaceMeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "weight {}, level {}, {}, shift {}",
            self.weight, self.level, self.character, self.shift
        )
    }
}

fn reduce(raw: i64, level: u64) -> DirichletCharacter {
    let c = DirichletCharacter::from_discriminant(raw);
    if c.is_trivial() {
        DirichletCharacter::principal(level)
    } else {
        c
    }
}

fn twist3(raw: i64, u: usize) -> i64 {
    if u % 2 == 1 {
        -3 * raw
    } else {
        raw
    }
}

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn prod(v: &[u64]) -> i64 {
    v.iter().map(|&x| x as i64).product()
}

fn check_h8(c: &[u64]) -> Result<(), MetaError> {
    let h: u64 = c.iter().sum();
    if h % 8 != 0 {
        return Err(MetaError::DivisibilityViolated { h, modulus: 8 });
    }
    Ok(())
}

/// `q^((a-2)^2 h/(8a)) Phi_a^C` (or `q^(h/8) Psi_C` when `a = 1`).
pub fn figurate_meta(a: u64, c: &[u64]) -> Result<SpaceMeta, MetaError> {
    if c.is_empty() {
        return Err(MetaError::EmptySpec);
    }
    if a == 2 || a == 0 {
        return Err(MetaError::Unsupported(format!("figurate parameter a = {a}")));
    }
    let k = c.len();
    if k % 2 == 1 {
        return Err(MetaError::OddFigurateCount(k));
    }
    let h: u64 = c.iter().sum();
    let d = gcd(((a as i64) - 2).pow(2), 4 * a as i64) as u64;
    let modulus = 8 * a / d;
    if h % modulus != 0 {
        return Err(MetaError::DivisibilityViolated { h, modulus });
    }
    let l = lcm_all(c);
    let level = if a % 2 == 1 { 2 * a * l } else { a * l };
    let raw = sign(k / 2) * 4 * prod(c);
    let spec = FormSpec::figurate(a, c).map_err(|e| MetaError::Unsupported(e.to_string()))?;
    Ok(SpaceMeta {
        weight: (k / 2) as u32,
        level,
        character: reduce(raw, level),
        raw_discriminant: raw,
        shift: spec.shift(),
        source: MetaSource::Figurate,
    })
}

/// `q^(h/8) prod F(a_i tau) Psi_C(tau)`.
pub fn lt_meta(hex: &[u64], c: &[u64]) -> Result<SpaceMeta, MetaError> {
    if hex.is_empty() && c.is_empty() {
        return Err(MetaError::EmptySpec);
    }
    if c.len() % 2 == 1 {
        return Err(MetaError::OddVariableCount(2 * hex.len() + c.len()));
    }
    check_h8(c)?;
    let level = lcm(3 * lcm_all(hex), 2 * lcm_all(c));
    let raw = twist3(sign(c.len() / 2) * 4 * prod(c), hex.len());
    Ok(SpaceMeta {
        weight: (hex.len() + c.len() / 2) as u32,
        level,
        character: reduce(raw, level),
        raw_discriminant: raw,
        shift: Q::new((c.iter().sum::<u64>() as i64).into(), 8.into()),
        source: MetaSource::HexTriangular,
    })
}

fn st_parts(b: &[u64], c: &[u64]) -> Result<(u64, i64), MetaError> {
    if b.is_empty() {
        return Err(MetaError::MissingSquares);
    }
    let (v, k) = (b.len(), c.len());
    if (v + k) % 2 == 1 {
        return Err(MetaError::OddVariableCount(v + k));
    }
    check_h8(c)?;
    let m = lcm(4 * lcm_all(b), 2 * lcm_all(c));
    let base = if v % 2 == 0 { 4 } else { 8 };
    let raw = sign((v + k) / 2) * base * prod(b) * prod(c);
    Ok((m, raw))
}

/// `q^(h/8) prod theta(b_i tau) Psi_C(tau)`.
pub fn st_meta(b: &[u64], c: &[u64]) -> Result<SpaceMeta, MetaError> {
    let (level, raw) = st_parts(b, c)?;
    Ok(SpaceMeta {
        weight: ((b.len() + c.len()) / 2) as u32,
        level,
        character: reduce(raw, level),
        raw_discriminant: raw,
        shift: Q::new((c.iter().sum::<u64>() as i64).into(), 8.into()),
        source: MetaSource::SquareTriangular,
    })
}

/// `q^(h/8) prod F(a_i tau) theta(b_i tau) Psi(c_j tau)`.
pub fn mixed_meta(hex: &[u64], b: &[u64], c: &[u64]) -> Result<SpaceMeta, MetaError> {
    let (m, raw) = st_parts(b, c)?;
    let level = lcm(3 * lcm_all(hex), m);
    let raw = twist3(raw, hex.len());
    Ok(SpaceMeta {
        weight: (hex.len() + (b.len() + c.len()) / 2) as u32,
        level,
        character: reduce(raw, level),
        raw_discriminant: raw,
        shift: Q::new((c.iter().sum::<u64>() as i64).into(), 8.into()),
        source: MetaSource::Mixed,
    })
}

/// Picks the applicable statement for a spec.
pub fn space_meta(spec: &FormSpec) -> Result<SpaceMeta, MetaError> {
    if spec.is_empty() {
        return Err(MetaError::EmptySpec);
    }
    if let Some(f) = &spec.figurate {
        if !spec.hex.is_empty() || !spec.squares.is_empty() || !spec.triangular.is_empty() {
            return Err(MetaError::Unsupported("figurate part combined with other pieces".into()));
        }
        if f.a == 2 {
            return st_meta(&f.coeffs, &[]);
        }
        return figurate_meta(f.a, &f.coeffs);
    }
    match (spec.hex.is_empty(), spec.squares.is_empty()) {
        (true, true) => figurate_meta(1, &spec.triangular),
        (false, true) => lt_meta(&spec.hex, &spec.triangular),
        (true, false) => st_meta(&spec.squares, &spec.triangular),
        (false, false) => mixed_meta(&spec.hex, &spec.squares, &spec.triangular),
    }
}

/// Cusp-order certificate for specs whose normalized series is a
/// (generalized) eta quotient, i.e. everything without hexagonal pieces.
pub fn eta_certificate(spec: &FormSpec, meta: &SpaceMeta) -> Result<Option<TheoremAReport>, MetaError> {
    match form_eta_spec(spec) {
        None => Ok(None),
        Some(eta) => Ok(Some(theorem_a_conditions(&eta, meta.level)?)),
    }
}

/// True when the report certifies integer weight matching the metadata.
pub fn certificate_consistent(report: &TheoremAReport, meta: &SpaceMeta) -> bool {
    report.cond_i_holds && report.cond_ii_nonneg_everywhere && report.weight == qi(meta.weight as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header(txt: &str) -> (u32, u64, i64) {
        let m = space_meta(&txt.parse().unwrap()).unwrap();
        (m.weight, m.level, m.disc())
    }

    #[test]
    fn headers() {
        assert_eq!(header("tri=2^4"), (2, 4, 1));
        assert_eq!(header("tri=1^8"), (4, 2, 1));
        assert_eq!(header("sq=1^2; tri=4^2"), (2, 8, 1));
        assert_eq!(header("sq=1 2; tri=4^2"), (2, 8, 8));
        assert_eq!(header("hex=1; tri=2 6"), (2, 12, 1));
        assert_eq!(header("tri=1^4 2^2"), (3, 4, -4));
        assert_eq!(header("tri=1^5 3"), (3, 6, -3));
        assert_eq!(header("hex=1; sq=1 3; tri=2 6"), (3, 12, -3));
        assert_eq!(header("hex=2; sq=1^3 3^3"), (4, 12, 1));
        assert_eq!(header("fig3=2^4 4^4"), (4, 24, 1));
    }

    #[test]
    fn errors() {
        assert_eq!(
            figurate_meta(1, &[1, 1, 1, 1]),
            Err(MetaError::DivisibilityViolated { h: 4, modulus: 8 })
        );
        assert_eq!(st_meta(&[], &[1, 7]), Err(MetaError::MissingSquares));
        assert!(matches!(space_meta(&FormSpec::default()), Err(MetaError::EmptySpec)));
        assert!(matches!(st_meta(&[1], &[7]), Err(MetaError::DivisibilityViolated { h: 7, .. })));
        let m = st_meta(&[1], &[8]).unwrap();
        assert_eq!(m.raw_discriminant, -64);
        assert_eq!(lt_meta(&[1], &[1, 7]).unwrap().level, 42);
    }

    #[test]
    fn certificates_hold() {
        for txt in ["tri=2^4", "sq=1^2; tri=4^2", "fig3=2^4 4^4", "tri=1^4 2^2", "sq=1 2; tri=4^2"] {
            let spec: FormSpec = txt.parse().unwrap();
            let meta = space_meta(&spec).unwrap();
            let rep = eta_certificate(&spec, &meta).unwrap().unwrap();
            assert!(certificate_consistent(&rep, &meta), "{txt}: {rep:?}");
        }
    }
}
