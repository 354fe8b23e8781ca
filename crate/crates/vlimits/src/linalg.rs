//! Exact linear algebra over the integers and rationals.
//!
//! Everything here works on small dense matrices with `BigInt` / `BigRational`
//! entries; there is no floating point anywhere in the crate.

// Indexed loops are the clearest notation for these matrix kernels.
#![allow(clippy::needless_range_loop)]

use num::{BigInt, BigRational, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(mut m: Vec<Vec<Int>>) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::from(1);
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut sign = 1i64;
    let mut prev = Int::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }
    if sign < 0 {
        -m[n - 1][n - 1].clone()
    } else {
        m[n - 1][n - 1].clone()
    }
}

/// Smith normal form `left * a * right = diag`, with `left` and `right`
/// unimodular. The diagonal is nonnegative with each entry dividing the next.
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<Int>,
    pub left: Vec<Vec<Int>>,
    pub right: Vec<Vec<Int>>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Product of the nonzero diagonal entries (the index of the column
    /// lattice inside its saturation, when the matrix has full column rank).
    pub fn nonzero_product(&self) -> Int {
        let mut p = Int::from(1);
        for d in &self.diag {
            if !d.is_zero() {
                p *= d;
            }
        }
        p
    }

    /// Solve `a * x = b` over the integers, returning one solution.
    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.rows);
        let ub: Vec<Int> = (0..self.rows)
            .map(|i| (0..self.rows).map(|j| &self.left[i][j] * &b[j]).sum())
            .collect();
        let mut y = vec![Int::zero(); self.cols];
        for i in 0..self.rows.max(self.cols) {
            let d = if i < self.diag.len() {
                self.diag[i].clone()
            } else {
                Int::zero()
            };
            let rhs = if i < self.rows { ub[i].clone() } else { Int::zero() };
            if d.is_zero() {
                if !rhs.is_zero() {
                    return None;
                }
            } else if i < self.cols {
                if (&rhs % &d).is_zero() {
                    y[i] = rhs / d;
                } else {
                    return None;
                }
            } else if !rhs.is_zero() {
                return None;
            }
        }
        let x: Vec<Int> = (0..self.cols)
            .map(|i| (0..self.cols).map(|j| &self.right[i][j] * &y[j]).sum())
            .collect();
        Some(x)
    }
}

fn identity(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| (0..n).map(|j| int((i == j) as i64)).collect())
        .collect()
}

/// Smith normal form by repeated row/column reduction.
pub fn smith_normal_form(a: &[Vec<Int>]) -> Smith {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Int>> = a.to_vec();
    let mut left = identity(rows);
    let mut right = identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        m.swap(t, pi);
        left.swap(t, pi);
        if pj != t {
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            for row in right.iter_mut() {
                row.swap(t, pj);
            }
        }

        let mut clean = true;
        for i in t + 1..rows {
            if !m[i][t].is_zero() {
                let q = div_round(&m[i][t], &m[t][t]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let s = &m[t][j] * &q;
                        m[i][j] -= s;
                    }
                    for j in 0..rows {
                        let s = &left[t][j] * &q;
                        left[i][j] -= s;
                    }
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if !m[t][j].is_zero() {
                let q = div_round(&m[t][j], &m[t][t]);
                if !q.is_zero() {
                    for i in 0..rows {
                        let s = &m[i][t] * &q;
                        m[i][j] -= s;
                    }
                    for i in 0..cols {
                        let s = &right[i][t] * &q;
                        right[i][j] -= s;
                    }
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // Divisibility: fold any non-multiple of the pivot into row t.
        let mut retry = false;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&m[i][j] % &m[t][t]).is_zero() {
                    for jj in 0..cols {
                        let s = m[i][jj].clone();
                        m[t][jj] += s;
                    }
                    for jj in 0..rows {
                        let s = left[i][jj].clone();
                        left[t][jj] += s;
                    }
                    retry = true;
                    break 'outer;
                }
            }
        }
        if retry {
            continue;
        }
        if m[t][t].is_negative() {
            for j in 0..cols {
                m[t][j] = -m[t][j].clone();
            }
            for j in 0..rows {
                left[t][j] = -left[t][j].clone();
            }
        }
        t += 1;
    }

    let diag: Vec<Int> = (0..rows.min(cols)).map(|i| m[i][i].clone()).collect();
    Smith {
        rows,
        cols,
        diag,
        left,
        right,
    }
}

// Round-to-nearest quotient keeps the entries small during reduction.
fn div_round(a: &Int, b: &Int) -> Int {
    let two_a: Int = a * 2;
    let q: Int = &two_a / b;
    let adj: Int = if q.is_negative() { -int(1) } else { int(1) };
    (q + adj) / 2
}

/// Solve `a * x = b` over the rationals; free variables are set to zero.
pub fn solve_rational(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for j in c..=cols {
            m[r][j] = &m[r][j] / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..=cols {
                    let s = &m[r][j] * &factor;
                    m[i][j] -= s;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    for i in r..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[row][cols].clone();
    }
    Some(x)
}

/// Rank over the rationals of an integer matrix.
pub fn rank_int(a: &[Vec<Int>]) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .map(|row| row.iter().map(|v| Rat::from_integer(v.clone())).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].clone();
        for j in c..cols {
            m[rank][j] = &m[rank][j] / &inv;
        }
        for i in 0..rows {
            if i != rank && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let s = &m[rank][j] * &factor;
                    m[i][j] -= s;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Inverse of a square rational matrix, if it exists.
pub fn invert_rational(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| rat((i == j) as i64)));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].clone();
        for j in 0..2 * n {
            m[c][j] = &m[c][j] / &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..2 * n {
                    let s = &m[c][j] * &factor;
                    m[i][j] -= s;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}
