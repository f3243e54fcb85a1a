//! Dense linear algebra over the rationals: row reduction, null spaces and
//! particular solutions. Matrices are `Vec` of rows.

use num_traits::{One, Zero};

use crate::poly::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row-echelon form in place. Pivot columns are chosen left to
/// right in the order given by `column_order` (defaults to natural order),
/// taking the first row with a nonzero entry. Returns the pivot columns.
pub fn rref_with_order(m: &mut Matrix, column_order: &[usize]) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &col in column_order {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / m[r][col].clone();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let cols = m.first().map_or(0, |r| r.len());
    let order: Vec<usize> = (0..cols).collect();
    rref_with_order(m, &order)
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column, with the free
/// coordinate set to 1.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<Rational>> {
    let order: Vec<usize> = (0..cols).collect();
    nullspace_with_order(m, cols, &order)
}

pub fn nullspace_with_order(m: &Matrix, cols: usize, order: &[usize]) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let pivots = rref_with_order(&mut a, order);
    let mut basis = Vec::new();
    for &free in order.iter().filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `m x = b`, or `None` when inconsistent.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Matrix = m
        .iter()
        .zip(b.iter())
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let order: Vec<usize> = (0..=cols).collect();
    let pivots = rref_with_order(&mut aug, &order);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}
