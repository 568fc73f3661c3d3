//! Brute-force representation counts. Nothing here touches q-series: every
//! number comes from enumerating lattice points.

use std::collections::{BTreeMap, HashMap};

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{sigma, sigma_sharp3, sigma_twisted, DirichletCharacter};
use crate::genfun::{figurate_number, FormSpec};
use crate::qseries::{q, qi, Q};

/// One independent piece of a form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    /// `a (m^2 + m n + n^2)` over `(m, n) in Z^2`.
    Hex(u64),
    /// `b x^2` over `x in Z`.
    Square(u64),
    /// `c t(t+1)/2` over `t >= 0`.
    Tri(u64),
    /// `c f_a(x)` over `x in Z`; for `a = 1` over `x >= 1` so each
    /// triangular value is hit once.
    Fig { a: u64, c: u64 },
}

pub fn atoms(spec: &FormSpec) -> Vec<Atom> {
    let mut out: Vec<Atom> = spec.hex.iter().map(|&a| Atom::Hex(a)).collect();
    out.extend(spec.squares.iter().map(|&b| Atom::Square(b)));
    out.extend(spec.triangular.iter().map(|&c| Atom::Tri(c)));
    if let Some(f) = &spec.figurate {
        out.extend(f.coeffs.iter().map(|&c| Atom::Fig { a: f.a, c }));
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Every variable assignment of one atom with value `<= n`, as the list of
/// values (repeated with multiplicity).
fn atom_assignments(atom: Atom, n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    match atom {
        Atom::Hex(a) => {
            // m^2 + mn + n^2 >= 3/4 max(|m|,|n|)^2
            let lim = n / a;
            let b = isqrt(4 * lim / 3 + 1) as i64 + 1;
            for m in -b..=b {
                for k in -b..=b {
                    let v = m * m + m * k + k * k;
                    if (v as u64) <= lim {
                        out.push(a * v as u64);
                    }
                }
            }
        }
        Atom::Square(b) => {
            let r = isqrt(n / b) as i64;
            for x in -r..=r {
                out.push(b * (x * x) as u64);
            }
        }
        Atom::Tri(c) => {
            let mut t = 0u64;
            while c * t * (t + 1) / 2 <= n {
                out.push(c * t * (t + 1) / 2);
                t += 1;
            }
        }
        Atom::Fig { a, c } => {
            let b = isqrt(2 * n / a.max(1) + 1) as i64 + 2;
            let lo = if a == 1 { 1 } else { -b };
            for x in lo..=b + 1 {
                let v = figurate_number(a, x);
                if v >= 0 && (v as u64) * c <= n {
                    out.push(c * v as u64);
                }
            }
        }
    }
    out
}

fn value_table(atom: Atom, n: u64) -> Vec<(u64, u128)> {
    let mut m: BTreeMap<u64, u128> = BTreeMap::new();
    for v in atom_assignments(atom, n) {
        *m.entry(v).or_default() += 1;
    }
    m.into_iter().collect()
}

/// Number of representations of `n` by the form, via memoized recursion over
/// the atoms.
pub fn count(spec: &FormSpec, n: u64) -> u128 {
    let tables: Vec<Vec<(u64, u128)>> = atoms(spec).into_iter().map(|a| value_table(a, n)).collect();
    let mut memo: HashMap<(usize, u64), u128> = HashMap::new();
    fn go(i: usize, m: u64, t: &[Vec<(u64, u128)>], memo: &mut HashMap<(usize, u64), u128>) -> u128 {
        if i == t.len() {
            return u128::from(m == 0);
        }
        if let Some(&v) = memo.get(&(i, m)) {
            return v;
        }
        let mut s = 0u128;
        for &(v, mult) in &t[i] {
            if v > m {
                break;
            }
            s += mult * go(i + 1, m - v, t, memo);
        }
        memo.insert((i, m), s);
        s
    }
    go(0, n, &tables, &mut memo)
}

/// Counts for every `0 <= n <= n_max`.
pub fn count_all(spec: &FormSpec, n_max: u64) -> Vec<u128> {
    let size = n_max as usize + 1;
    let mut ways = vec![0u128; size];
    ways[0] = 1;
    for atom in atoms(spec) {
        let table = value_table(atom, n_max);
        let mut next = vec![0u128; size];
        for (m, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for &(v, mult) in &table {
                let j = m + v as usize;
                if j >= size {
                    break;
                }
                next[j] += w * mult;
            }
        }
        ways = next;
    }
    ways
}

/// Enumerates raw variable tuples with no memoization. Only for small `n`.
pub fn naive_count(spec: &FormSpec, n: u64) -> u128 {
    let lists: Vec<Vec<u64>> = atoms(spec).into_iter().map(|a| atom_assignments(a, n)).collect();
    fn go(i: usize, m: u64, lists: &[Vec<u64>]) -> u128 {
        if i == lists.len() {
            return u128::from(m == 0);
        }
        lists[i].iter().filter(|&&v| v <= m).map(|&v| go(i + 1, m - v, lists)).sum()
    }
    go(0, n, &lists)
}

/// `r_k(B; n)`: representations by `sum b_i x_i^2`.
pub fn r_squares(b: &[u64], n: u64) -> u128 {
    count(&FormSpec::squares(b).expect("positive coefficients"), n)
}

pub fn r_k(k: usize, n: u64) -> u128 {
    r_squares(&vec![1; k], n)
}

/// `delta_k(C; n)`: representations by `sum c_i t_i(t_i+1)/2`, `t_i >= 0`.
pub fn delta_tri(c: &[u64], n: u64) -> u128 {
    count(&FormSpec::triangular(c).expect("positive coefficients"), n)
}

pub fn delta_k(k: usize, n: u64) -> u128 {
    delta_tri(&vec![1; k], n)
}

/// `q_k(C; m)`: representations of `m` as `sum c_i y_i^2` with every `y_i`
/// odd and positive.
pub fn q_odd(c: &[u64], m: u64) -> u128 {
    fn go(i: usize, m: u64, c: &[u64]) -> u128 {
        if i == c.len() {
            return u128::from(m == 0);
        }
        let mut s = 0;
        let mut y = 1u64;
        while c[i] * y * y <= m {
            s += go(i + 1, m - c[i] * y * y, c);
            y += 2;
        }
        s
    }
    go(0, m, c)
}

/// `delta_k(C; n) = q_k(C; 8n + h)`.
pub fn check_odd_square_bijection(c: &[u64], n: u64) -> bool {
    let h: u64 = c.iter().sum();
    delta_tri(c, n) == q_odd(c, 8 * n + h)
}

/// Identities checked term by term against enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Identity {
    Delta2,
    Delta3,
    Delta4,
    Delta6,
    Delta8,
    /// `delta_{2k}(n) = sum_{a+2b=n} r_k(a) delta_k(b) = q_{2k}(8n + 2k)`.
    Relations { k: usize },
    Conv4,
    Conv6,
    Conv8,
    Conv12,
    Conv16,
    Conv8Sigma,
    Conv12Sigma,
    Conv16Sigma,
    R4,
    R6,
    R8,
}

impl Identity {
    pub const ALL: [Identity; 19] = [
        Identity::Delta2,
        Identity::Delta3,
        Identity::Delta4,
        Identity::Delta6,
        Identity::Delta8,
        Identity::Relations { k: 2 },
        Identity::Relations { k: 3 },
        Identity::Conv4,
        Identity::Conv6,
        Identity::Conv8,
        Identity::Conv12,
        Identity::Conv16,
        Identity::Conv8Sigma,
        Identity::Conv12Sigma,
        Identity::Conv16Sigma,
        Identity::R4,
        Identity::R6,
        Identity::R8,
        Identity::Relations { k: 4 },
    ];

    pub fn name(&self) -> String {
        match self {
            Identity::Delta2 => "delta_2(n) = r_2(8n+2)/4".into(),
            Identity::Delta3 => "delta_3(n) = r_3(8n+3)/8".into(),
            Identity::Delta4 => "delta_4(n) = sigma(2n+1)".into(),
            Identity::Delta6 => "delta_6(n) = -sigma_{2;1,chi-4}(4n+3)/8".into(),
            Identity::Delta8 => "delta_8(n) = sigma_3#(n+1)".into(),
            Identity::Relations { k } => format!("delta_{}(n) = sum r_{k}(a) delta_{k}(b) = q_{}(8n+{})", 2 * k, 2 * k, 2 * k),
            Identity::Conv4 => "delta_4(n) = 1/4 sum r_2(a) r_2(8b+2)".into(),
            Identity::Conv6 => "delta_6(n) = 1/8 sum r_3(a) r_3(8b+3)".into(),
            Identity::Conv8 => "delta_8(n) = sum r_4(a) sigma(2b+1)".into(),
            Identity::Conv12 => "delta_12(n) = -1/8 sum r_6(a) sigma_{2;1,chi-4}(4b+3)".into(),
            Identity::Conv16 => "delta_16(n) = sum r_8(a) sigma_3#(b+1)".into(),
            Identity::Conv8Sigma => "delta_8(n) via sigma(a) sigma(2b+1), a = 0 term restored".into(),
            Identity::Conv12Sigma => "delta_12(n) via twisted sigma_2 products, a = 0 term restored".into(),
            Identity::Conv16Sigma => "delta_16(n) via sigma_3(a) sigma_3#(b+1), a = 0 term restored".into(),
            Identity::R4 => "r_4(n) = 8 sigma(n) - 32 sigma(n/4)".into(),
            Identity::R6 => "r_6(n) = -4 sigma_{2;1,chi-4}(n) + 16 sigma_{2;chi-4,1}(n)".into(),
            Identity::R8 => "r_8(n) = 16 sigma_3(n) - 32 sigma_3(n/2) + 256 sigma_3(n/4)".into(),
        }
    }
}

fn qu(x: u128) -> Q {
    Q::from_integer(x.into())
}

fn sig(r: u32, n: u64) -> Q {
    sigma(r, &qi(n as i64))
}

fn sig_frac(r: u32, n: u64, d: i64) -> Q {
    sigma(r, &q(n as i64, d))
}

fn chi4() -> DirichletCharacter {
    DirichletCharacter::kronecker(-4)
}

fn s2_1_chi4(n: u64) -> Q {
    Q::from_integer(sigma_twisted(2, &DirichletCharacter::TRIVIAL, &chi4(), n))
}

fn s2_chi4_1(n: u64) -> Q {
    Q::from_integer(sigma_twisted(2, &chi4(), &DirichletCharacter::TRIVIAL, n))
}

fn sharp3(n: u64) -> Q {
    Q::from_integer(sigma_sharp3(n))
}

// The divisor-sum formulas for r_k hold for n >= 1; at n = 0 they give 0
// while r_k(0) = 1, so the convolution versions restore that term.
fn r4_formula(n: u64) -> Q {
    if n == 0 {
        return qi(1);
    }
    qi(8) * sig(1, n) - qi(32) * sig_frac(1, n, 4)
}

fn r6_formula(n: u64) -> Q {
    if n == 0 {
        return qi(1);
    }
    -qi(4) * s2_1_chi4(n) + qi(16) * s2_chi4_1(n)
}

fn r8_formula(n: u64) -> Q {
    if n == 0 {
        return qi(1);
    }
    qi(16) * sig(3, n) - qi(32) * sig_frac(3, n, 2) + qi(256) * sig_frac(3, n, 4)
}

/// `sum_{a + 2b = n} f(a) g(b)`.
fn conv(n: u64, f: impl Fn(u64) -> Q, g: impl Fn(u64) -> Q) -> Q {
    (0..=n / 2).map(|b| f(n - 2 * b) * g(b)).sum()
}

/// Both sides of an identity at `n`; the right side is evaluated from
/// independent counts or divisor sums.
pub fn evaluate_identity(id: Identity, n: u64) -> (Q, Q) {
    let r = |k: usize| move |a: u64| qu(r_k(k, a));
    match id {
        Identity::Delta2 => (qu(delta_k(2, n)), qu(r_k(2, 8 * n + 2)) / qi(4)),
        Identity::Delta3 => (qu(delta_k(3, n)), qu(r_k(3, 8 * n + 3)) / qi(8)),
        Identity::Delta4 => (qu(delta_k(4, n)), sig(1, 2 * n + 1)),
        Identity::Delta6 => (qu(delta_k(6, n)), -s2_1_chi4(4 * n + 3) / qi(8)),
        Identity::Delta8 => (qu(delta_k(8, n)), sharp3(n + 1)),
        Identity::Relations { k } => {
            let lhs = qu(delta_k(2 * k, n));
            let mid = conv(n, r(k), |b| qu(delta_k(k, b)));
            let odd = qu(q_odd(&vec![1; 2 * k], 8 * n + 2 * k as u64));
            let via_q = conv(n, r(k), |b| qu(q_odd(&vec![1; k], 8 * b + k as u64)));
            // collapse the three right-hand readings into one value when they agree
            let rhs = if mid == odd && mid == via_q { mid } else { Q::zero() - qi(1) };
            (lhs, rhs)
        }
        Identity::Conv4 => (qu(delta_k(4, n)), conv(n, r(2), |b| qu(r_k(2, 8 * b + 2))) / qi(4)),
        Identity::Conv6 => (qu(delta_k(6, n)), conv(n, r(3), |b| qu(r_k(3, 8 * b + 3))) / qi(8)),
        Identity::Conv8 => (qu(delta_k(8, n)), conv(n, r(4), |b| sig(1, 2 * b + 1))),
        Identity::Conv12 => (qu(delta_k(12, n)), -conv(n, r(6), |b| s2_1_chi4(4 * b + 3)) / qi(8)),
        Identity::Conv16 => (qu(delta_k(16, n)), conv(n, r(8), |b| sharp3(b + 1))),
        Identity::Conv8Sigma => (qu(delta_k(8, n)), conv(n, r4_formula, |b| sig(1, 2 * b + 1))),
        Identity::Conv12Sigma => (qu(delta_k(12, n)), -conv(n, r6_formula, |b| s2_1_chi4(4 * b + 3)) / qi(8)),
        Identity::Conv16Sigma => (qu(delta_k(16, n)), conv(n, r8_formula, |b| sharp3(b + 1))),
        Identity::R4 => (qu(r_k(4, n)), r4_formula(n)),
        Identity::R6 => (qu(r_k(6, n)), r6_formula(n)),
        Identity::R8 => (qu(r_k(8, n)), r8_formula(n)),
    }
}

/// `delta_{2k}(C^2; n) = sum_{a+2b=n} r_k(C; a) delta_k(C; b)`.
pub fn check_squared_convolution(c: &[u64], n: u64) -> bool {
    let c2: Vec<u64> = c.iter().chain(c.iter()).copied().collect();
    let lhs = delta_tri(&c2, n);
    let rhs: u128 = (0..=n / 2).map(|b| r_squares(c, n - 2 * b) * delta_tri(c, b)).sum();
    lhs == rhs
}

/// `delta_{2k}(C^2; n) = q_{2k}(C^2; 8n + 2h)`.
pub fn check_squared_odd(c: &[u64], n: u64) -> bool {
    let c2: Vec<u64> = c.iter().chain(c.iter()).copied().collect();
    let h: u64 = c.iter().sum();
    delta_tri(&c2, n) == q_odd(&c2, 8 * n + 2 * h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllipsoidReport {
    pub r_squared: Q,
    pub points_closed: u128,
    pub points_open: u128,
    /// `2^k sum_{n=1}^{floor(R^2/2 - h/8)} delta_k(C; n)`, as stated.
    pub predicted_from_one: u128,
    /// Same sum starting at `n = 0`.
    pub predicted_from_zero: u128,
}

impl EllipsoidReport {
    /// Which readings agree: (closed vs from 1, closed vs from 0, open vs from 1, open vs from 0).
    pub fn matches(&self) -> [bool; 4] {
        [
            self.points_closed == self.predicted_from_one,
            self.points_closed == self.predicted_from_zero,
            self.points_open == self.predicted_from_one,
            self.points_open == self.predicted_from_zero,
        ]
    }
}

/// Lattice points of `sum c_i (z_i - 1/2)^2 <= R^2` (closed) and `< R^2`
/// (open), against the predicted sums.
pub fn ellipsoid_count(c: &[u64], r_squared: &Q) -> EllipsoidReport {
    // work with 4 sum c_i (z_i - 1/2)^2 = sum c_i (2 z_i - 1)^2 against 4 R^2
    let bound4 = r_squared * qi(4);
    let bmax = bound4.floor().to_integer().to_u64().unwrap_or(0);
    let mut closed = 0u128;
    let mut open = 0u128;
    fn go(i: usize, used: u64, c: &[u64], bmax: u64, b4: &Q, closed: &mut u128, open: &mut u128) {
        if i == c.len() {
            *closed += 1;
            if qi(used as i64) < *b4 {
                *open += 1;
            }
            return;
        }
        let lim = isqrt((bmax - used) / c[i]) as i64;
        for z in (-lim)..=(lim + 1) {
            let y = (2 * z - 1).unsigned_abs();
            let v = c[i] * y * y;
            if used + v <= bmax {
                go(i + 1, used + v, c, bmax, b4, closed, open);
            }
        }
    }
    let h: u64 = c.iter().sum();
    if bmax >= h {
        go(0, 0, c, bmax, &bound4, &mut closed, &mut open);
    }
    let top = r_squared / qi(2) - q(h as i64, 8);
    let top = top.floor().to_integer().to_i64().unwrap_or(-1);
    let scale = 1u128 << c.len();
    let sum_from = |start: i64| -> u128 {
        if top < start {
            return 0;
        }
        (start..=top).map(|n| delta_tri(c, n as u64)).sum::<u128>() * scale
    };
    EllipsoidReport {
        r_squared: r_squared.clone(),
        points_closed: closed,
        points_open: open,
        predicted_from_one: sum_from(1),
        predicted_from_zero: sum_from(0),
    }
}
