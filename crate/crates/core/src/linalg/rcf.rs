//! Row canonical form, rank and nullspace over a field.
//!
//! Pivots are chosen by scanning columns left to right and taking the first
//! row with a nonzero entry. The reduced form is unique, so downstream
//! quantities (row weights, pivot sets) do not depend on that choice.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rcf<T> {
    /// Same shape as the input; zero rows collected at the bottom.
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Field> Rcf<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows.
    pub fn basis(&self) -> Matrix<T> {
        self.reduced.row_block(0..self.rank())
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.reduced.cols()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.reduced.cols()).filter(|&c| !is_pivot[c]).collect()
    }
}

pub fn rcf<T: Field>(m: &Matrix<T>) -> Rcf<T> {
    let mut reduced = m.clone();
    let pivots = T::reduce_rows(&mut reduced);
    Rcf { reduced, pivots }
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    rcf(m).rank()
}

/// Basis of the right nullspace `{x : M x = 0}`, one vector per row.
pub fn nullspace<T: Field>(m: &Matrix<T>) -> Matrix<T> {
    let r = rcf(m);
    let free = r.free_columns();
    let mut out = Matrix::zeros(free.len(), m.cols());
    for (k, &f) in free.iter().enumerate() {
        out[(k, f)] = T::one();
        for (i, &p) in r.pivots.iter().enumerate() {
            let v = r.reduced[(i, f)].clone();
            if !v.is_zero() {
                out[(k, p)] = -v;
            }
        }
    }
    out
}

/// Whether two matrices of equal width have the same row space.
pub fn row_space_equal<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Result<bool> {
    if a.cols() != b.cols() {
        return Err(Error::WidthMismatch(a.cols(), b.cols()));
    }
    let (ra, rb) = (rcf(a), rcf(b));
    Ok(ra.pivots == rb.pivots && ra.basis() == rb.basis())
}

/// Plain Gauss-Jordan elimination.
pub fn gauss_jordan<T: Field>(m: &mut Matrix<T>) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m[(r, c)].inv();
        for j in c..cols {
            let v = m[(r, j)].clone() * inv.clone();
            m[(r, j)] = v;
        }
        let pivot_row: Vec<T> = m.row(r)[c..].to_vec();
        for i in (0..rows).filter(|&i| i != r) {
            let f = m[(i, c)].clone();
            if f.is_zero() {
                continue;
            }
            for (j, pv) in (c..cols).zip(&pivot_row) {
                if !pv.is_zero() {
                    let v = m[(i, j)].clone() - f.clone() * pv.clone();
                    m[(i, j)] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rational row reduction carried out on primitive integer rows.
///
/// Each row is scaled to a primitive integer vector; elimination uses
/// cross-multiplication followed by content removal, and the pivot rows are
/// divided through only at the end.
pub fn fraction_free_rcf(m: &mut Matrix<BigRational>) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut ints: Vec<Vec<BigInt>> = (0..rows).map(|i| primitive_row(m.row(i))).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ints[i][c].is_zero()) else {
            continue;
        };
        ints.swap(r, p);
        let pivot_row = std::mem::take(&mut ints[r]);
        let a = pivot_row[c].clone();
        let support: Vec<usize> = (c..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in ints.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = a.gcd(&row[c]);
            let sa = &a / &g;
            let sb = &row[c] / &g;
            if !sa.is_one() {
                for x in row.iter_mut().filter(|x| !x.is_zero()) {
                    *x *= &sa;
                }
            }
            for &j in &support {
                row[j] -= &sb * &pivot_row[j];
            }
            make_primitive(row);
        }
        ints[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    for i in 0..rows {
        let row = m.row_mut(i);
        if i < pivots.len() {
            let d = ints[i][pivots[i]].clone();
            for (x, n) in row.iter_mut().zip(&ints[i]) {
                *x = BigRational::new(n.clone(), d.clone());
            }
        } else {
            row.iter_mut().for_each(|x| *x = BigRational::zero());
        }
    }
    pivots
}

fn primitive_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    let g = g.abs();
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x /= &g;
        }
    }
}

/// Coordinates of vectors with respect to a basis of linearly independent rows.
#[derive(Clone, Debug)]
pub struct Coordinates<T> {
    reduced: Matrix<T>,
    transform: Matrix<T>,
    pivots: Vec<usize>,
}

impl<T: Field> Coordinates<T> {
    pub fn new(basis: &Matrix<T>) -> Result<Self> {
        let k = basis.rows();
        let aug = basis.augment(&Matrix::identity(k))?;
        let r = rcf(&aug);
        let pivots: Vec<usize> = r.pivots.iter().copied().filter(|&p| p < basis.cols()).collect();
        if pivots.len() != k {
            return Err(Error::DependentRows);
        }
        let reduced = Matrix::from_fn(k, basis.cols(), |i, j| r.reduced[(i, j)].clone());
        let transform = Matrix::from_fn(k, k, |i, j| r.reduced[(i, basis.cols() + j)].clone());
        Ok(Coordinates { reduced, transform, pivots })
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Coefficients `x` with `x · basis = v`, or `None` when `v` is outside
    /// the row space.
    pub fn solve(&self, v: &[T]) -> Option<Vec<T>> {
        let y: Vec<T> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        if self.reduced.left_apply(&y) != v {
            return None;
        }
        Some(self.transform.left_apply(&y))
    }
}
