//! Scalar number theory: Kronecker symbols, quadratic characters, divisor
//! sums, Bernoulli numbers and the periodic polynomial `P2`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::qseries::{q, qi, Q};

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn lcm_all(xs: &[u64]) -> u64 {
    xs.iter().fold(1, |acc, &x| lcm(acc, x))
}

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Prime factorization as (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
fn jacobi(a: i64, n: i64) -> i8 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut result = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol `(m/n)`, defined for every integer `n`.
pub fn kronecker(m: i64, n: i64) -> i8 {
    if n == 0 {
        return if m.abs() == 1 { 1 } else { 0 };
    }
    let mut result = 1i8;
    let mut n = n;
    if n < 0 {
        n = -n;
        if m < 0 {
            result = -result;
        }
    }
    let v = n.trailing_zeros();
    n >>= v;
    if v > 0 {
        if m % 2 == 0 {
            return 0;
        }
        let r = m.rem_euclid(8);
        if (r == 3 || r == 5) && v % 2 == 1 {
            result = -result;
        }
    }
    if n == 1 {
        return result;
    }
    result * jacobi(m, n)
}

/// Squarefree kernel of `d`, keeping the sign.
pub fn squarefree_part(d: i64) -> i64 {
    assert!(d != 0, "zero has no squarefree part");
    let sign = d.signum();
    let mut s = 1i64;
    for (p, e) in factorize(d.unsigned_abs()) {
        if e % 2 == 1 {
            s *= p as i64;
        }
    }
    sign * s
}

/// Fundamental discriminant of the quadratic field `Q(sqrt(d))`; 1 for squares.
pub fn fundamental_discriminant(d: i64) -> i64 {
    let s = squarefree_part(d);
    if s == 1 {
        1
    } else if s.rem_euclid(4) == 1 {
        s
    } else {
        4 * s
    }
}

/// A real Dirichlet character: either a Kronecker symbol `(D/.)` (with `D = 1`
/// the trivial character `1`), or the principal character modulo `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DirichletCharacter {
    Kronecker { disc: i64 },
    Principal { modulus: u64 },
}

impl DirichletCharacter {
    pub const TRIVIAL: Self = Self::Kronecker { disc: 1 };

    pub fn kronecker(disc: i64) -> Self {
        Self::Kronecker { disc }
    }

    pub fn principal(modulus: u64) -> Self {
        Self::Principal { modulus }
    }

    /// Character attached to the quadratic field of `d`, reduced to its
    /// fundamental discriminant.
    pub fn from_discriminant(d: i64) -> Self {
        Self::Kronecker {
            disc: fundamental_discriminant(d),
        }
    }

    pub fn eval(&self, n: i64) -> i8 {
        match *self {
            Self::Kronecker { disc } => kronecker(disc, n),
            Self::Principal { modulus } => {
                if gcd(n, modulus as i64) == 1 {
                    1
                } else {
                    0
                }
            }
        }
    }

    pub fn conductor(&self) -> u64 {
        match *self {
            Self::Kronecker { disc } => disc.unsigned_abs(),
            Self::Principal { .. } => 1,
        }
    }

    pub fn modulus(&self) -> u64 {
        match *self {
            Self::Kronecker { disc } => disc.unsigned_abs(),
            Self::Principal { modulus } => modulus,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Self::Kronecker { disc: 1 })
    }

    /// Discriminant of the primitive character underneath (1 for principal).
    pub fn disc(&self) -> i64 {
        match *self {
            Self::Kronecker { disc } => disc,
            Self::Principal { .. } => 1,
        }
    }

    pub fn is_even(&self) -> bool {
        self.eval(-1) == 1
    }

    /// Product of the underlying primitive characters.
    pub fn product(&self, other: &Self) -> Self {
        Self::from_discriminant(self.disc() * other.disc())
    }

    pub fn label(&self) -> String {
        match *self {
            Self::Kronecker { disc: 1 } => "1".to_string(),
            Self::Kronecker { disc } => format!("χ{disc}"),
            Self::Principal { .. } => "χ0".to_string(),
        }
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn pow_big(d: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(d), k as usize)
}

/// `sigma_r(n)` for a positive integer.
pub fn sigma_u(r: u32, n: u64) -> BigInt {
    divisors(n).into_iter().map(|d| pow_big(d, r)).sum()
}

/// `sigma_r(n)`; zero unless `n` is a positive integer.
pub fn sigma(r: u32, n: &Q) -> Q {
    if !n.is_integer() || !n.is_positive() {
        return Q::zero();
    }
    let n = n.to_integer().to_u64().expect("argument fits in u64");
    Q::from_integer(sigma_u(r, n))
}

/// `sum_{d | n} psi(d) chi(n/d) d^k`.
pub fn sigma_twisted(k: u32, chi: &DirichletCharacter, psi: &DirichletCharacter, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    for d in divisors(n) {
        let w = psi.eval(d as i64) * chi.eval((n / d) as i64);
        if w != 0 {
            s += BigInt::from(w) * pow_big(d, k);
        }
    }
    s
}

/// `sum_{d | n, n/d odd} d^3`.
pub fn sigma_sharp3(n: u64) -> BigInt {
    divisors(n)
        .into_iter()
        .filter(|d| (n / d) % 2 == 1)
        .map(|d| pow_big(d, 3))
        .sum()
}

fn frac(x: &Q) -> Q {
    x - Q::from_integer(x.floor().to_integer())
}

/// `P2(x) = {x}^2 - {x} + 1/6`.
pub fn p2(x: &Q) -> Q {
    let f = frac(x);
    &f * &f - &f + q(1, 6)
}

/// `1/12 + P2(2x)/2 - P2(x)`, which is nonnegative everywhere.
pub fn positivity_f(x: &Q) -> Q {
    q(1, 12) + p2(&(x * qi(2))) / qi(2) - p2(x)
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

const BERNOULLI_CACHE: usize = 64;

fn bernoulli_table() -> &'static Vec<Q> {
    static TABLE: OnceLock<Vec<Q>> = OnceLock::new();
    TABLE.get_or_init(|| compute_bernoulli(BERNOULLI_CACHE))
}

fn compute_bernoulli(max: usize) -> Vec<Q> {
    let mut b: Vec<Q> = vec![Q::one()];
    for m in 1..=max {
        let mut s = Q::zero();
        for (j, bj) in b.iter().enumerate() {
            s += Q::from_integer(binomial(m as u64 + 1, j as u64)) * bj;
        }
        b.push(-s / qi(m as i64 + 1));
    }
    b
}

/// Bernoulli number `B_k` with `B_1 = -1/2`.
pub fn bernoulli(k: usize) -> Q {
    if k <= BERNOULLI_CACHE {
        bernoulli_table()[k].clone()
    } else {
        compute_bernoulli(k)[k].clone()
    }
}

/// Bernoulli polynomial `B_k(x)` by binomial expansion.
pub fn bernoulli_poly(k: usize, x: &Q) -> Q {
    let mut s = Q::zero();
    let mut xp = Q::one();
    // sum_{j} C(k, j) B_j x^(k-j), accumulated from j = k downwards
    for j in (0..=k).rev() {
        s += Q::from_integer(binomial(k as u64, j as u64)) * bernoulli(j) * &xp;
        xp *= x;
    }
    s
}

/// Generalized Bernoulli number `B_{k,psi} = N^(k-1) sum_{a=1..N} psi(a) B_k(a/N)`
/// with `N` the modulus of `psi`.
pub fn gen_bernoulli(k: usize, psi: &DirichletCharacter) -> Q {
    let n = psi.modulus().max(1);
    let mut s = Q::zero();
    for a in 1..=n {
        let w = psi.eval(a as i64);
        if w != 0 {
            s += qi(w as i64) * bernoulli_poly(k, &q(a as i64, n as i64));
        }
    }
    s * num_traits::pow(qi(n as i64), k - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(7, 1), 1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(8, 3), -1);
        assert_eq!(kronecker(8, 7), 1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-3, -1), -1);
        assert_eq!(kronecker(5, -1), 1);
        assert_eq!(kronecker(12, 5), -1);
    }

    #[test]
    fn fundamental_discriminants() {
        assert_eq!(fundamental_discriminant(64), 1);
        assert_eq!(fundamental_discriminant(32), 8);
        assert_eq!(fundamental_discriminant(-16), -4);
        assert_eq!(fundamental_discriminant(-12), -3);
        assert_eq!(fundamental_discriminant(48), 12);
        assert_eq!(fundamental_discriminant(-512), -8);
        assert_eq!(fundamental_discriminant(-24 * 4), -24);
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(sigma(1, &qi(6)), qi(12));
        assert_eq!(sigma(3, &qi(2)), qi(9));
        assert_eq!(sigma(1, &q(3, 2)), qi(0));
        let m4 = DirichletCharacter::kronecker(-4);
        let one = DirichletCharacter::TRIVIAL;
        assert_eq!(sigma_twisted(2, &m4, &one, 1), BigInt::from(1));
        assert_eq!(sigma_twisted(2, &m4, &one, 2), BigInt::from(4));
        assert_eq!(sigma_twisted(1, &DirichletCharacter::kronecker(8), &one, 1), BigInt::from(1));
        assert_eq!(sigma_sharp3(1), BigInt::from(1));
        assert_eq!(sigma_sharp3(2), BigInt::from(8));
        assert_eq!(sigma_sharp3(3), BigInt::from(28));
    }

    #[test]
    fn p2_and_f() {
        assert_eq!(p2(&qi(0)), q(1, 6));
        assert_eq!(p2(&q(1, 2)), q(-1, 12));
        assert_eq!(p2(&q(7, 3)), p2(&q(1, 3)));
        assert_eq!(positivity_f(&q(1, 2)), q(1, 4));
        assert_eq!(positivity_f(&q(1, 4)), q(1, 16));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(3), qi(0));
        assert_eq!(bernoulli(12), q(-691, 2730));
        assert_eq!(gen_bernoulli(4, &DirichletCharacter::TRIVIAL), q(-1, 30));
        assert_eq!(gen_bernoulli(3, &DirichletCharacter::kronecker(-4)), q(3, 2));
        assert_eq!(gen_bernoulli(1, &DirichletCharacter::kronecker(-4)), q(-1, 2));
        assert_eq!(gen_bernoulli(1, &DirichletCharacter::kronecker(-3)), q(-1, 3));
    }

    #[test]
    fn characters() {
        let c = DirichletCharacter::principal(12);
        assert_eq!(c.eval(5), 1);
        assert_eq!(c.eval(3), 0);
        let m3 = DirichletCharacter::kronecker(-3);
        assert!(!m3.is_even());
        assert_eq!(m3.product(&DirichletCharacter::kronecker(-4)), DirichletCharacter::kronecker(12));
        assert_eq!(c.label(), "χ0");
        assert_eq!(m3.label(), "χ-3");
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(factorize(24), vec![(2, 3), (3, 1)]);
    }
}
