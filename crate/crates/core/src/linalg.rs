//! Fraction-free elimination over the integers.
//!
//! Matrices are row-major `Vec<Vec<BigInt>>`. Rational input is brought to
//! integers by scaling each column (or row) by a common denominator before
//! calling into here; rank and kernel are unaffected by such scalings up to
//! the obvious diagonal change of variables.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

/// Result of Bareiss elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Row echelon form (fraction-free). Rows beyond `rank` are zero in
    /// every pivot-eligible column.
    pub rows: Matrix,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
    /// Original row index now sitting in each position.
    pub perm: Vec<usize>,
    pub rank: usize,
}

/// Bareiss elimination restricted to the first `cols` columns; further
/// columns are carried along (useful for augmented systems).
pub fn bareiss(mut a: Matrix, cols: usize) -> Echelon {
    let nrows = a.len();
    let mut perm: Vec<usize> = (0..nrows).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        perm.swap(r, p);
        let width = a[r].len();
        let (head, tail) = a.split_at_mut(r + 1);
        let piv_row = &head[r];
        let piv = piv_row[c].clone();
        for row in tail.iter_mut() {
            let f = row[c].clone();
            if f.is_zero() {
                if !prev.is_one() {
                    for j in c + 1..width {
                        if !row[j].is_zero() {
                            row[j] = &row[j] * &piv / &prev;
                        }
                    }
                } else {
                    for j in c + 1..width {
                        if !row[j].is_zero() {
                            row[j] = &row[j] * &piv;
                        }
                    }
                }
                continue;
            }
            for j in c + 1..width {
                let v = &row[j] * &piv - &f * &piv_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows: a,
        pivots,
        perm,
        rank: r,
    }
}

pub fn rank(a: &Matrix) -> usize {
    let cols = a.first().map_or(0, |r| r.len());
    bareiss(a.clone(), cols).rank
}

/// Basis of `{x : A x = 0}` for `A` with `cols` columns. Each vector is
/// scaled so that its first nonzero entry is 1.
pub fn right_kernel(a: &Matrix, cols: usize) -> Vec<Vec<BigRational>> {
    let e = bareiss(a.clone(), cols);
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    let mut out = Vec::new();
    for &f in &free {
        let mut x = vec![BigRational::zero(); cols];
        x[f] = BigRational::one();
        back_substitute(&e, &mut x, |i| {
            -BigRational::from_integer(e.rows[i][f].clone())
        });
        normalize_leading(&mut x);
        out.push(x);
    }
    out
}

/// Solves the pivot variables of `e` given `rhs(i)` = right-hand side of
/// echelon row `i` after moving known (free) terms across.
fn back_substitute<F: Fn(usize) -> BigRational>(e: &Echelon, x: &mut [BigRational], rhs: F) {
    for i in (0..e.rank).rev() {
        let pc = e.pivots[i];
        let mut acc = rhs(i);
        for &j in &e.pivots[i + 1..] {
            if !x[j].is_zero() && !e.rows[i][j].is_zero() {
                acc -= BigRational::from_integer(e.rows[i][j].clone()) * &x[j];
            }
        }
        x[pc] = acc / BigRational::from_integer(e.rows[i][pc].clone());
    }
}

fn normalize_leading(x: &mut [BigRational]) {
    if let Some(lead) = x.iter().find(|v| !v.is_zero()).cloned() {
        for v in x.iter_mut() {
            *v = &*v / &lead;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(Vec<BigRational>),
    /// Some equation cannot be satisfied; `row` is the original row index.
    Inconsistent { row: usize },
    /// The coefficient matrix has a nontrivial kernel.
    Underdetermined { rank: usize },
}

/// Solves `A x = b` exactly for `A` with `cols` columns.
pub fn solve(a: &Matrix, b: &[BigInt]) -> Solution {
    let cols = a.first().map_or(0, |r| r.len());
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = bareiss(aug, cols);
    for i in e.rank..e.rows.len() {
        if !e.rows[i][cols].is_zero() {
            return Solution::Inconsistent { row: e.perm[i] };
        }
    }
    if e.rank < cols {
        return Solution::Underdetermined { rank: e.rank };
    }
    let mut x = vec![BigRational::zero(); cols];
    back_substitute(&e, &mut x, |i| {
        BigRational::from_integer(e.rows[i][cols].clone())
    });
    Solution::Unique(x)
}
