//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::qseries::Q;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                if !m[r][j].is_zero() {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Outcome of solving `A x = b` where `A` is given by its columns.
#[derive(Debug, Clone, PartialEq)]
pub enum Solve {
    Unique(Vec<Q>),
    Inconsistent,
    /// Consistent, but the columns have rank below their count.
    RankDeficient(usize),
}

/// Solves `sum_j x_j columns[j] = rhs` using the given rows only.
pub fn solve_columns(columns: &[Vec<Q>], rhs: &[Q]) -> Solve {
    let n = columns.len();
    let mut m: Vec<Vec<Q>> = (0..rhs.len())
        .map(|i| {
            let mut row: Vec<Q> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&n) {
        return Solve::Inconsistent;
    }
    if pivots.len() < n {
        return Solve::RankDeficient(pivots.len());
    }
    Solve::Unique((0..n).map(|j| m[j][n].clone()).collect())
}
