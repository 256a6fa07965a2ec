//! Incrementally maintained row canonical forms and module closures.

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Row space kept in reduced row echelon form under insertion.
///
/// Because every stored row vanishes at every other pivot column, reducing a
/// vector needs a single pass over the pivots it touches.
#[derive(Clone, Debug)]
pub struct EchelonBasis<T> {
    width: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<Option<usize>>,
}

impl<T: Field> EchelonBasis<T> {
    pub fn new(width: usize) -> Self {
        EchelonBasis { width, rows: Vec::new(), pivots: Vec::new(), row_of_pivot: vec![None; width] }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` modulo the row space.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if let Some(r) = self.row_of_pivot[c] {
                for (o, b) in out.iter_mut().zip(&self.rows[r]) {
                    if !b.is_zero() {
                        *o = o.clone() - x.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &[T]) -> Result<bool> {
        if v.len() != self.width {
            return Err(Error::WidthMismatch(self.width, v.len()));
        }
        let mut w = self.reduce(v);
        let Some(c) = w.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = w[c].inv();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for row in self.rows.iter_mut() {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for (o, b) in row.iter_mut().zip(&w) {
                if !b.is_zero() {
                    *o = o.clone() - f.clone() * b.clone();
                }
            }
        }
        self.row_of_pivot[c] = Some(self.rows.len());
        self.rows.push(w);
        self.pivots.push(c);
        Ok(true)
    }

    /// The row canonical form (rows ordered by pivot column).
    pub fn to_matrix(&self) -> Matrix<T> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        Matrix::from_rows(self.width, order.into_iter().map(|i| self.rows[i].clone()))
            .expect("rows share the basis width")
    }
}

/// Result of [`incremental_closure`].
#[derive(Clone, Debug)]
pub struct Closure<T> {
    /// Rank after each generator.
    pub ranks: Vec<usize>,
    /// Row canonical form of the generated module.
    pub basis: Matrix<T>,
}

/// Span of the orbits of `generators`, one generator at a time.
///
/// `orbit` returns every image of a generator under the group (for the
/// symmetric-group modules here, all `n!` permuted copies). The cumulative
/// rank is recorded after each generator's images have been absorbed.
pub fn incremental_closure<T, F>(generators: &[Vec<T>], width: usize, orbit: F) -> Result<Closure<T>>
where
    T: Field,
    F: Fn(&[T]) -> Result<Vec<Vec<T>>>,
{
    let mut basis = EchelonBasis::new(width);
    let mut ranks = Vec::with_capacity(generators.len());
    for g in generators {
        if g.len() != width {
            return Err(Error::WidthMismatch(width, g.len()));
        }
        for image in orbit(g)? {
            basis.insert(&image)?;
        }
        ranks.push(basis.rank());
    }
    Ok(Closure { ranks, basis: basis.to_matrix() })
}
