//! Word-sized elimination over a prime field.
//!
//! Entries are residues stored in `u32`. Row updates `acc += f * row` are
//! accumulated without reduction and folded back modulo `p` only when the
//! accumulated bound could overflow, which lets the inner loops vectorize.
//!
//! [`ModpEchelon`] keeps a row space in reduced row echelon form. New rows
//! arrive in batches; they are reduced against the committed rows in blocks
//! (one pass over the committed rows per block), collected as pending pivots,
//! and the committed rows are cleared at the new pivot columns in a single
//! flush.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::validate_prime;
use crate::scalar::inverse_mod;

const NONE: u32 = u32::MAX;
/// Candidates reduced together against the committed rows.
const BLOCK: usize = 32;
/// Pending pivot rows collected before the committed rows are updated.
const FLUSH: usize = 64;

/// Sparse row: `(column, residue)` pairs with residues in `0..p`.
pub type SparseRow = Vec<(u32, u32)>;

/// Reduction modulo a fixed `p < 2^16` for any `u32`.
#[derive(Clone, Copy, Debug)]
struct Barrett {
    p: u32,
    m: u64,
}

impl Barrett {
    fn new(p: u32) -> Self {
        Barrett { p, m: (1u64 << 32) / p as u64 }
    }

    #[inline(always)]
    fn reduce(self, x: u32) -> u32 {
        let q = ((x as u64 * self.m) >> 32) as u32;
        let r = x.wrapping_sub(q.wrapping_mul(self.p));
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    fn reduce_slice(self, v: &mut [u32]) {
        for x in v.iter_mut() {
            *x = self.reduce(*x);
        }
    }

    fn scale_slice(self, v: &mut [u32], s: u32) {
        for x in v.iter_mut() {
            *x = self.reduce(x.wrapping_mul(s));
        }
    }
}

#[inline]
fn axpy(acc: &mut [u32], row: &[u32], f: u32) {
    for (a, &b) in acc.iter_mut().zip(row) {
        *a = a.wrapping_add(b.wrapping_mul(f));
    }
}

/// Unreduced accumulator with an overflow budget.
struct Acc {
    data: Vec<u32>,
    updates: usize,
}

/// Row space over `F_p` in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct ModpEchelon {
    p: u32,
    width: usize,
    barrett: Barrett,
    /// Accumulations allowed between reductions.
    limit: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<u32>,
    pending: Vec<(usize, Vec<u32>)>,
}

impl ModpEchelon {
    pub fn new(p: u32, width: usize) -> Result<Self> {
        validate_prime(p)?;
        let pm1 = (p - 1) as u64;
        let limit = if pm1 == 0 { usize::MAX } else { ((u32::MAX as u64 - pm1) / (pm1 * pm1)) as usize };
        Ok(ModpEchelon {
            p,
            width,
            barrett: Barrett::new(p),
            limit: limit.max(1),
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: vec![NONE; width],
            pending: Vec::new(),
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len() + self.pending.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.width).filter(|&c| self.row_of_pivot[c] == NONE).collect()
    }

    /// Rows of the reduced row echelon form as `(pivot column, row)`, ordered
    /// by pivot column.
    pub fn rcf_rows(&self) -> Vec<(usize, &[u32])> {
        let mut out: Vec<(usize, &[u32])> =
            self.pivots.iter().zip(&self.rows).map(|(&c, r)| (c, r.as_slice())).collect();
        out.sort_unstable_by_key(|&(c, _)| c);
        out
    }

    /// Basis of the right nullspace, one sparse vector per free column in
    /// increasing order: `1` at the free column `f` and `-R[i][f]` at the
    /// pivot of each row `i`.
    pub fn nullspace_sparse(&self) -> Vec<SparseRow> {
        debug_assert!(self.pending.is_empty());
        self.free_columns()
            .into_par_iter()
            .map(|f| {
                let mut v: SparseRow = vec![(f as u32, 1)];
                for (&c, row) in self.pivots.iter().zip(&self.rows) {
                    if row[f] != 0 {
                        v.push((c as u32, self.p - row[f]));
                    }
                }
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Remainder of a sparse vector modulo the row space, as a dense vector.
    pub fn reduce_sparse(&self, v: &[(u32, u32)]) -> Result<Vec<u32>> {
        debug_assert!(self.pending.is_empty());
        let mut acc = self.densify(v)?;
        for (r, f) in self.sparse_factors(v, &acc.data) {
            axpy(&mut acc.data, &self.rows[r as usize], self.p - f);
            acc.updates += 1;
            if acc.updates >= self.limit {
                self.barrett.reduce_slice(&mut acc.data);
                acc.updates = 0;
            }
        }
        self.barrett.reduce_slice(&mut acc.data);
        Ok(acc.data)
    }

    pub fn contains_sparse(&self, v: &[(u32, u32)]) -> Result<bool> {
        Ok(self.reduce_sparse(v)?.iter().all(|&x| x == 0))
    }

    fn sparse_factors(&self, v: &[(u32, u32)], dense: &[u32]) -> Vec<(u32, u32)> {
        let mut cols: Vec<u32> = v.iter().map(|&(c, _)| c).collect();
        cols.sort_unstable();
        cols.dedup();
        cols.into_iter()
            .filter_map(|c| {
                let r = self.row_of_pivot[c as usize];
                (r != NONE && dense[c as usize] != 0).then_some((r, dense[c as usize]))
            })
            .collect()
    }

    fn densify(&self, v: &[(u32, u32)]) -> Result<Acc> {
        let mut data = vec![0u32; self.width];
        for &(c, x) in v {
            let c = c as usize;
            if c >= self.width {
                return Err(Error::WidthMismatch(self.width, c + 1));
            }
            data[c] = self.barrett.reduce(data[c] + x % self.p);
        }
        Ok(Acc { data, updates: 0 })
    }

    /// Absorbs a batch of sparse rows; returns the rank gained.
    pub fn insert_sparse_batch<I>(&mut self, rows: I) -> Result<usize>
    where
        I: IntoIterator<Item = SparseRow>,
    {
        let before = self.rank();
        let mut block = Vec::with_capacity(BLOCK);
        for v in rows {
            let acc = self.densify(&v)?;
            let factors = self.sparse_factors(&v, &acc.data);
            block.push((acc, factors));
            if block.len() == BLOCK {
                self.absorb_block(std::mem::take(&mut block));
            }
        }
        self.absorb_block(block);
        self.flush();
        Ok(self.rank() - before)
    }

    /// Absorbs a batch of dense rows (residues in `0..p`); returns the rank gained.
    pub fn insert_dense_batch<I>(&mut self, rows: I) -> Result<usize>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let before = self.rank();
        let mut block = Vec::with_capacity(BLOCK);
        for mut v in rows {
            if v.len() != self.width {
                return Err(Error::WidthMismatch(self.width, v.len()));
            }
            self.barrett.reduce_slice(&mut v);
            let factors: Vec<(u32, u32)> = self
                .pivots
                .iter()
                .zip(0u32..)
                .filter_map(|(&c, r)| (v[c] != 0).then_some((r, v[c])))
                .collect();
            block.push((Acc { data: v, updates: 0 }, factors));
            if block.len() == BLOCK {
                self.absorb_block(std::mem::take(&mut block));
            }
        }
        self.absorb_block(block);
        self.flush();
        Ok(self.rank() - before)
    }

    fn absorb_block(&mut self, mut block: Vec<(Acc, Vec<(u32, u32)>)>) {
        if block.is_empty() {
            return;
        }
        let (p, limit, barrett) = (self.p, self.limit, self.barrett);
        let rows = &self.rows;
        // Each sub-block walks the committed rows in order, so a committed
        // row is loaded once and applied to every candidate that needs it.
        let threads = rayon::current_num_threads().max(1);
        let sub = block.len().div_ceil(threads).max(1);
        block.par_chunks_mut(sub).for_each(|chunk| {
            let mut work: Vec<(u32, u32, u32)> = Vec::new();
            for (k, (_, factors)) in chunk.iter().enumerate() {
                work.extend(factors.iter().map(|&(r, f)| (r, k as u32, f)));
            }
            work.sort_unstable_by_key(|&(r, k, _)| (r, k));
            for (r, k, f) in work {
                let acc = &mut chunk[k as usize].0;
                axpy(&mut acc.data, &rows[r as usize], p - f);
                acc.updates += 1;
                if acc.updates >= limit {
                    barrett.reduce_slice(&mut acc.data);
                    acc.updates = 0;
                }
            }
        });
        for (mut acc, _) in block {
            self.barrett.reduce_slice(&mut acc.data);
            acc.updates = 0;
            self.absorb_pending(acc);
        }
        if self.pending.len() >= FLUSH {
            self.flush();
        }
    }

    /// Reduces a vector (already clear of committed pivots) against the
    /// pending rows and keeps it if it is independent.
    fn absorb_pending(&mut self, mut acc: Acc) -> bool {
        let (p, limit, barrett) = (self.p, self.limit, self.barrett);
        for (c, row) in &self.pending {
            let f = barrett.reduce(acc.data[*c]);
            if f != 0 {
                axpy(&mut acc.data, row, p - f);
                acc.updates += 1;
                if acc.updates >= limit {
                    barrett.reduce_slice(&mut acc.data);
                    acc.updates = 0;
                }
            }
        }
        barrett.reduce_slice(&mut acc.data);
        let Some(c) = acc.data.iter().position(|&x| x != 0) else {
            return false;
        };
        let mut v = acc.data;
        let inv = inverse_mod(v[c], p);
        barrett.scale_slice(&mut v, inv);
        for (_, row) in self.pending.iter_mut() {
            let f = row[c];
            if f != 0 {
                axpy(row, &v, p - f);
                barrett.reduce_slice(row);
            }
        }
        self.pending.push((c, v));
        true
    }

    fn flush(&mut self) {
        if self.pending.is_empty() {
            return;
        }
        let (p, limit, barrett) = (self.p, self.limit, self.barrett);
        let pending = &self.pending;
        self.rows.par_iter_mut().for_each(|row| {
            let mut updates = 0;
            let factors: Vec<(usize, u32)> = pending
                .iter()
                .enumerate()
                .filter_map(|(k, (c, _))| (row[*c] != 0).then_some((k, row[*c])))
                .collect();
            if factors.is_empty() {
                return;
            }
            for (k, f) in factors {
                axpy(row, &pending[k].1, p - f);
                updates += 1;
                if updates >= limit {
                    barrett.reduce_slice(row);
                    updates = 0;
                }
            }
            barrett.reduce_slice(row);
        });
        for (c, row) in self.pending.drain(..) {
            self.row_of_pivot[c] = self.rows.len() as u32;
            self.pivots.push(c);
            self.rows.push(row);
        }
    }
}

/// Symmetric representatives of `u · v` for the unit `u` that minimizes the
/// largest absolute entry, the smallest such `u` on ties.
pub fn symmetric_lift(v: &[u32], p: u32) -> (u32, Vec<i64>) {
    let lift = |u: u32| -> Vec<i64> {
        v.iter().map(|&x| crate::scalar::symmetric_residue((x as u64 * u as u64 % p as u64) as u32, p)).collect()
    };
    let best = (1..p)
        .min_by_key(|&u| (lift(u).iter().map(|x| x.abs()).max().unwrap_or(0), u))
        .unwrap_or(1);
    (best, lift(best))
}
