//! Representations of the symmetric group.
//!
//! Characters come from the Murnaghan-Nakayama rule on beta-sets.
//! Irreducible matrices come from Young's natural representation on standard
//! polytabloids, which is integral, or from the seminormal form, which is
//! rational. Either realization gives the same ranks.
//!
//! Group algebra elements are integer combinations of permutations; a word
//! `w` is the permutation `i -> w[i]`, so the left action on words is
//! composition on the left.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank, Coordinates, Matrix};
use crate::scalar::Field;
use crate::zinbiel::{factorial, lex_index, unrank_index, Permutation};

/// A partition of `n`, parts weakly decreasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Malformed(format!("{parts:?} is not weakly decreasing")));
        }
        if parts.is_empty() {
            return Err(Error::Malformed("empty partition".into()));
        }
        Ok(Partition { parts })
    }

    /// Parses `"4,2,1"` or `"421"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let parts: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::Malformed(format!("bad part {t:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Malformed(format!("bad part {c:?}"))))
                .collect::<Result<_>>()?
        };
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0];
        Partition { parts: (0..cols).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect() }
    }

    /// Dimension of the irreducible representation, by the hook length
    /// formula.
    pub fn dim(&self) -> usize {
        let conj = self.conjugate();
        let mut hooks: u128 = 1;
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p {
                hooks *= (p - j - 1 + conj.parts[j] - i - 1 + 1) as u128;
            }
        }
        ((1..=self.n() as u128).product::<u128>() / hooks) as usize
    }

    /// Size of the conjugacy class with this cycle type.
    pub fn class_size(&self) -> usize {
        let mut z: u128 = 1;
        let mut counts = HashMap::new();
        for &p in &self.parts {
            z *= p as u128;
            *counts.entry(p).or_insert(0u128) += 1;
        }
        for (_, m) in counts {
            z *= (1..=m).product::<u128>();
        }
        ((1..=self.n() as u128).product::<u128>() / z) as usize
    }

    /// A permutation with this cycle type, cycles on consecutive letters.
    pub fn class_representative(&self) -> Permutation {
        let mut letters: Vec<u8> = (0..self.n() as u8).collect();
        let mut start = 0;
        for &p in &self.parts {
            for k in 0..p {
                letters[start + k] = (start + (k + 1) % p) as u8;
            }
            start += p;
        }
        Permutation::from_letters(letters).expect("valid cycles")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.iter().all(|&p| p < 10) {
            self.parts.iter().try_for_each(|p| write!(f, "{p}"))
        } else {
            let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
            write!(f, "{}", s.join(","))
        }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Partitions of `n` in reverse lexicographic order: `[n]` first, `[1^n]`
/// last.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Cycle types in increasing lexicographic order: the identity class
/// `1^n` first, the `n`-cycles last.
pub fn classes(n: usize) -> Vec<Partition> {
    let mut c = partitions(n);
    c.reverse();
    c
}

/// `χ_λ` on the class of cycle type `μ` by the Murnaghan-Nakayama rule.
pub fn character_value(lambda: &Partition, mu: &Partition) -> i64 {
    let k = lambda.len();
    let beta: Vec<usize> = lambda.parts.iter().enumerate().map(|(i, &p)| p + k - 1 - i).collect();
    mn(beta, &mu.parts, &mut HashMap::new())
}

fn mn(beta: Vec<usize>, mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let key = (beta.clone(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let v = mn(next, rest, memo);
        total += if between % 2 == 0 { v } else { -v };
    }
    memo.insert(key, total);
    total
}

pub fn character(lambda: &Partition) -> Vec<i64> {
    classes(lambda.n()).iter().map(|mu| character_value(lambda, mu)).collect()
}

/// Class of a permutation in the order of [`classes`].
pub fn class_index(sigma: &Permutation) -> usize {
    let t = Partition { parts: sigma.cycle_type() };
    classes(sigma.arity()).iter().position(|c| *c == t).expect("cycle type is a partition")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub classes: Vec<Partition>,
    pub class_sizes: Vec<usize>,
    /// `values[i][j] = χ_{partitions[i]}(classes[j])`.
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Self {
        let parts = partitions(n);
        let cls = classes(n);
        let class_sizes = cls.iter().map(|c| c.class_size()).collect();
        let values = parts.iter().map(|l| cls.iter().map(|m| character_value(l, m)).collect()).collect();
        CharacterTable { n, partitions: parts, classes: cls, class_sizes, values }
    }

    /// `Σ |C| χ(C) ψ(C) / n!`, exact.
    pub fn inner_product(&self, chi: &[i64], psi: &[i64]) -> Result<i64> {
        let s: i64 = chi.iter().zip(psi).zip(&self.class_sizes).map(|((a, b), &c)| a * b * c as i64).sum();
        let order = factorial(self.n) as i64;
        if s % order != 0 {
            return Err(Error::CheckFailed(format!("inner product {s}/{order} is not an integer")));
        }
        Ok(s / order)
    }

    /// Multiplicity of each irreducible in a character.
    pub fn decompose(&self, chi: &[i64]) -> Result<Vec<i64>> {
        self.values.iter().map(|row| self.inner_product(chi, row)).collect()
    }
}

/// Standard Young tableaux of shape `λ`, each as rows of entries `0..n`,
/// ordered by their row words.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Vec<Vec<u8>>> {
    fn rec(lambda: &[usize], t: &mut Vec<Vec<u8>>, next: u8, n: u8, out: &mut Vec<Vec<Vec<u8>>>) {
        if next == n {
            out.push(t.clone());
            return;
        }
        for i in 0..lambda.len() {
            let len = t[i].len();
            if len < lambda[i] && (i == 0 || t[i - 1].len() > len) {
                t[i].push(next);
                rec(lambda, t, next + 1, n, out);
                t[i].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut t = vec![Vec::new(); lambda.len()];
    rec(&lambda.parts, &mut t, 0, lambda.n() as u8, &mut out);
    out.sort();
    out
}

/// Ring of matrix entries for representation matrices.
pub trait RepScalar: Clone + PartialEq + Zero + One + Add<Output = Self> + Mul<Output = Self> + Send + Sync {
    fn from_i64(v: i64) -> Self;
    fn to_rational(&self) -> BigRational;
}

impl RepScalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }
}

impl RepScalar for BigRational {
    fn from_i64(v: i64) -> Self {
        <BigRational as Field>::from_i64(v)
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

fn mat_mul<T: RepScalar>(a: &[T], b: &[T], d: usize) -> Vec<T> {
    let mut out = vec![T::zero(); d * d];
    for i in 0..d {
        for k in 0..d {
            let x = &a[i * d + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..d {
                let y = &b[k * d + j];
                if !y.is_zero() {
                    out[i * d + j] = out[i * d + j].clone() + x.clone() * y.clone();
                }
            }
        }
    }
    out
}

/// Matrices of all `n!` permutations in an irreducible representation,
/// indexed by the lexicographic index of the permutation word.
#[derive(Clone)]
pub struct Representation<T> {
    partition: Partition,
    dim: usize,
    matrices: Vec<Vec<T>>,
}

/// Matrix of the adjacent transposition `(i, i+1)` in Young's natural
/// representation, with column `t` holding the coordinates of `s_i e_t`.
pub fn natural_generator(lambda: &Partition, i: usize) -> Result<Matrix<BigRational>> {
    Ok(natural_generators(lambda)?.swap_remove(i))
}

fn natural_generators(lambda: &Partition) -> Result<Vec<Matrix<BigRational>>> {
    let n = lambda.n();
    let tableaux = standard_tableaux(lambda);
    let d = tableaux.len();
    let mut tabloids: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut polys: Vec<Vec<(usize, i64)>> = Vec::new();
    let mut images: Vec<Vec<Vec<(usize, i64)>>> = vec![Vec::new(); n.saturating_sub(1)];
    for t in &tableaux {
        polys.push(polytabloid(t, n, &mut tabloids));
    }
    for (i, slot) in images.iter_mut().enumerate() {
        for t in &tableaux {
            let moved: Vec<Vec<u8>> = t
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&x| match x as usize {
                            y if y == i => (i + 1) as u8,
                            y if y == i + 1 => i as u8,
                            _ => x,
                        })
                        .collect()
                })
                .collect();
            slot.push(polytabloid(&moved, n, &mut tabloids));
        }
    }
    let m = tabloids.len();
    let dense = |v: &[(usize, i64)]| {
        let mut out = vec![BigRational::zero(); m];
        for &(k, c) in v {
            out[k] = <BigRational as Field>::from_i64(c);
        }
        out
    };
    let basis = Matrix::from_rows(m, polys.iter().map(|p| dense(p)))?;
    let coords = Coordinates::new(&basis)?;
    images
        .iter()
        .map(|imgs| {
            let cols: Vec<Vec<BigRational>> = imgs
                .iter()
                .map(|v| {
                    coords
                        .solve(&dense(v))
                        .ok_or_else(|| Error::CheckFailed("polytabloid outside the Specht module".into()))
                })
                .collect::<Result<_>>()?;
            Ok(Matrix::from_fn(d, d, |r, c| cols[c][r].clone()))
        })
        .collect()
}

/// `Σ_{π in column group} sign(π) {π T}`, sparse over tabloids.
fn polytabloid(t: &[Vec<u8>], n: usize, tabloids: &mut HashMap<Vec<u8>, usize>) -> Vec<(usize, i64)> {
    let mut row_of = vec![0u8; n];
    for (r, row) in t.iter().enumerate() {
        for &x in row {
            row_of[x as usize] = r as u8;
        }
    }
    let width = t[0].len();
    let columns: Vec<Vec<u8>> = (0..width).map(|j| t.iter().filter_map(|row| row.get(j).copied()).collect()).collect();
    let mut acc: HashMap<usize, i64> = HashMap::new();
    let col_perms: Vec<Vec<Permutation>> = columns.iter().map(|c| Permutation::all(c.len())).collect();
    let mut idx = vec![0usize; width];
    loop {
        let mut tabloid = vec![0u8; n];
        let mut sign = 1;
        for (j, col) in columns.iter().enumerate() {
            let p = &col_perms[j][idx[j]];
            sign *= p.sign();
            for (k, &x) in col.iter().enumerate() {
                let y = col[p.image(k as u8) as usize];
                tabloid[y as usize] = row_of[x as usize];
            }
        }
        let next = tabloids.len();
        let key = *tabloids.entry(tabloid).or_insert(next);
        *acc.entry(key).or_insert(0) += sign;
        let mut j = 0;
        loop {
            if j == width {
                let mut out: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
                out.sort_unstable();
                return out;
            }
            idx[j] += 1;
            if idx[j] < col_perms[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Generators of Young's seminormal form in the basis of standard tableaux.
///
/// With axial distance `a` from `i` to `i + 1`, the pair `(T, s_i T)` spans
/// a block `[[1/a, 1 - 1/a^2], [1, -1/a]]`; letters in one row give `+1`,
/// letters in one column give `-1`.
pub fn seminormal_generators(lambda: &Partition) -> Vec<Matrix<BigRational>> {
    let n = lambda.n();
    let tableaux = standard_tableaux(lambda);
    let d = tableaux.len();
    let index: HashMap<Vec<Vec<u8>>, usize> = tableaux.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let position = |t: &[Vec<u8>], x: u8| -> (i64, i64) {
        for (r, row) in t.iter().enumerate() {
            if let Some(c) = row.iter().position(|&y| y == x) {
                return (r as i64, c as i64);
            }
        }
        unreachable!("letter in tableau")
    };
    let q = |num: i64, den: i64| BigRational::new(num.into(), den.into());
    (0..n.saturating_sub(1))
        .map(|i| {
            let mut m = Matrix::zeros(d, d);
            for (k, t) in tableaux.iter().enumerate() {
                let (r0, c0) = position(t, i as u8);
                let (r1, c1) = position(t, i as u8 + 1);
                let a = (c1 - r1) - (c0 - r0);
                if r0 == r1 {
                    m[(k, k)] = BigRational::one();
                } else if c0 == c1 {
                    m[(k, k)] = -BigRational::one();
                } else {
                    let swapped: Vec<Vec<u8>> = t
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|&x| if x == i as u8 { x + 1 } else if x == i as u8 + 1 { x - 1 } else { x })
                                .collect()
                        })
                        .collect();
                    let other = index[&swapped];
                    m[(k, k)] = q(1, a);
                    if a > 0 {
                        m[(other, k)] = BigRational::one();
                    } else {
                        m[(other, k)] = q(a * a - 1, a * a);
                    }
                }
            }
            m
        })
        .collect()
}

/// Which construction of the irreducible matrices to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realization {
    Natural,
    Seminormal,
}

impl Representation<i64> {
    /// Young's natural representation, integral.
    pub fn natural(lambda: &Partition) -> Result<Self> {
        let gens = natural_generators(lambda)?;
        let gens: Vec<Matrix<i64>> = gens
            .iter()
            .map(|g| {
                let mut out = Matrix::zeros(g.rows(), g.cols());
                for i in 0..g.rows() {
                    for j in 0..g.cols() {
                        let x = &g[(i, j)];
                        if !x.is_integer() {
                            return Err(Error::CheckFailed("natural representation is not integral".into()));
                        }
                        out[(i, j)] = x.to_integer().to_i64().ok_or_else(|| Error::CheckFailed("entry overflow".into()))?;
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_generators(lambda, &gens))
    }
}

impl Representation<BigRational> {
    pub fn seminormal(lambda: &Partition) -> Self {
        Self::from_generators(lambda, &seminormal_generators(lambda))
    }
}

impl<T: RepScalar> Representation<T> {
    /// Extends matrices of the adjacent transpositions to the whole group by
    /// breadth-first search over words in the generators.
    pub fn from_generators(lambda: &Partition, gens: &[Matrix<T>]) -> Self {
        let n = lambda.n();
        let d = lambda.dim();
        let total = factorial(n);
        let mut matrices: Vec<Option<Vec<T>>> = vec![None; total];
        let mut identity = vec![T::zero(); d * d];
        for i in 0..d {
            identity[i * d + i] = T::one();
        }
        let id = Permutation::identity(n);
        matrices[0] = Some(identity);
        let mut frontier = vec![id];
        let flat: Vec<Vec<T>> =
            gens.iter().map(|g| (0..d * d).map(|k| g[(k / d, k % d)].clone()).collect()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for sigma in &frontier {
                let ms = matrices[lex_index(sigma.letters())].clone().expect("visited");
                for (i, g) in flat.iter().enumerate() {
                    let mut letters = vec![0u8; n];
                    // s_i ∘ σ
                    for (k, &x) in sigma.letters().iter().enumerate() {
                        letters[k] = if x as usize == i {
                            i as u8 + 1
                        } else if x as usize == i + 1 {
                            i as u8
                        } else {
                            x
                        };
                    }
                    let idx = lex_index(&letters);
                    if matrices[idx].is_none() {
                        matrices[idx] = Some(mat_mul(g, &ms, d));
                        next.push(Permutation::from_letters(letters).expect("permutation"));
                    }
                }
            }
            frontier = next;
        }
        Representation {
            partition: lambda.clone(),
            dim: d,
            matrices: matrices.into_iter().map(|m| m.expect("generators span the group")).collect(),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, sigma: &Permutation) -> Matrix<T> {
        self.matrix_at(lex_index(sigma.letters()))
    }

    /// Matrix of the permutation with lexicographic index `k`.
    pub fn matrix_at(&self, k: usize) -> Matrix<T> {
        let m = &self.matrices[k];
        Matrix::from_fn(self.dim, self.dim, |i, j| m[i * self.dim + j].clone())
    }

    /// Matrix of a group algebra element.
    pub fn element(&self, s: &GroupElement) -> Matrix<T> {
        let d = self.dim;
        let mut acc = vec![T::zero(); d * d];
        for &(k, c) in &s.terms {
            let c = T::from_i64(c);
            for (a, x) in acc.iter_mut().zip(&self.matrices[k]) {
                if !x.is_zero() {
                    *a = a.clone() + c.clone() * x.clone();
                }
            }
        }
        Matrix::from_fn(d, d, |i, j| acc[i * d + j].clone())
    }

    pub fn trace_at(&self, k: usize) -> T {
        (0..self.dim).fold(T::zero(), |acc, i| acc + self.matrices[k][i * self.dim + i].clone())
    }
}

/// Integer combination of permutations, by lexicographic index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupElement {
    pub terms: Vec<(usize, i64)>,
}

impl GroupElement {
    pub fn from_words<'a>(terms: impl IntoIterator<Item = (i64, &'a [u8])>) -> Self {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for (c, w) in terms {
            *acc.entry(lex_index(w)).or_insert(0) += c;
        }
        let mut terms: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable();
        GroupElement { terms }
    }

    /// `1 + π`.
    pub fn one_plus(pi: &[u8]) -> Self {
        let id: Vec<u8> = (0..pi.len() as u8).collect();
        Self::from_words([(1, id.as_slice()), (1, pi)])
    }

    /// `Σ c_u u` over all permutations in lexicographic order.
    pub fn from_dense(coeffs: &[i64]) -> Self {
        GroupElement { terms: coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c)).collect() }
    }
}

/// Block row `[R(x_1) ... R(x_t)]` for a tuple of group algebra elements.
fn block_row<T: RepScalar>(rep: &Representation<T>, tuple: &[GroupElement]) -> Vec<Vec<BigRational>> {
    let d = rep.dim();
    let blocks: Vec<Matrix<T>> = tuple.iter().map(|x| rep.element(x)).collect();
    (0..d)
        .map(|i| blocks.iter().flat_map(|b| (0..d).map(move |j| b[(i, j)].to_rational())).collect())
        .collect()
}

/// Stacks the block rows of the given tuples and returns the matrix.
pub fn stacked_matrix<T: RepScalar>(rep: &Representation<T>, rows: &[Vec<GroupElement>]) -> Result<Matrix<BigRational>> {
    let width = rows.first().map_or(0, |r| r.len()) * rep.dim();
    if let Some(r) = rows.iter().find(|r| r.len() * rep.dim() != width) {
        return Err(Error::WidthMismatch(width, r.len() * rep.dim()));
    }
    let blocks: Vec<Vec<Vec<BigRational>>> = rows.par_iter().map(|t| block_row(rep, t)).collect();
    Matrix::from_rows(width, blocks.into_iter().flatten())
}

/// Rank of the stacked block rows: the multiplicity of the irreducible in
/// the left module generated by the tuples.
pub fn stacked_rank<T: RepScalar>(rep: &Representation<T>, rows: &[Vec<GroupElement>]) -> Result<usize> {
    Ok(rank(&stacked_matrix(rep, rows)?))
}

/// `[R(e_1)^t ... R(e_t)^t]`, a `d × t d` matrix.
pub fn expansion_matrix<T: RepScalar>(rep: &Representation<T>, expansions: &[GroupElement]) -> Matrix<BigRational> {
    let d = rep.dim();
    let blocks: Vec<Matrix<T>> = expansions.par_iter().map(|e| rep.element(e)).collect();
    Matrix::from_fn(d, d * blocks.len(), |i, j| blocks[j / d][(j % d, i)].to_rational())
}

pub fn expansion_rank<T: RepScalar>(rep: &Representation<T>, expansions: &[GroupElement]) -> usize {
    rank(&expansion_matrix(rep, expansions))
}

/// Rows spanning the isotypic part of the kernel of the expansion map.
pub fn isotypic_kernel<T: RepScalar>(rep: &Representation<T>, expansions: &[GroupElement]) -> Matrix<BigRational> {
    nullspace(&expansion_matrix(rep, expansions))
}

pub fn isotypic_nullity<T: RepScalar>(rep: &Representation<T>, expansions: &[GroupElement]) -> usize {
    isotypic_kernel(rep, expansions).rows()
}

/// Ranks of the symmetry rows followed by the cumulative ranks after each
/// group of generator tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRanks {
    pub sym: usize,
    pub cumulative: Vec<usize>,
}

/// Multiplicities in a module generated modulo block-diagonal relations.
///
/// Each symmetry acts inside one block, so the row space of the symmetry
/// rows is a direct sum over blocks. Generator rows are reduced blockwise
/// against it and only the coordinates off the pivots are kept; the rank of
/// the stacked matrix is the symmetry rank plus the rank of what remains.
pub fn quotient_ranks<T: RepScalar>(
    rep: &Representation<T>,
    blocks: usize,
    symmetries: &[(usize, GroupElement)],
    groups: &[Vec<Vec<GroupElement>>],
) -> Result<QuotientRanks> {
    let d = rep.dim();
    let mut reduced_blocks = Vec::with_capacity(blocks);
    let mut sym = 0;
    for k in 0..blocks {
        let rows: Vec<Vec<BigRational>> = symmetries
            .iter()
            .filter(|(b, _)| *b == k)
            .flat_map(|(_, s)| {
                let m = rep.element(s);
                (0..d).map(move |i| (0..d).map(|j| m[(i, j)].to_rational()).collect::<Vec<_>>())
            })
            .collect();
        let r = crate::linalg::rcf(&Matrix::from_rows(d, rows)?);
        sym += r.rank();
        let free = r.free_columns();
        reduced_blocks.push((r.basis(), r.pivots.clone(), free));
    }
    let width: usize = reduced_blocks.iter().map(|(_, _, f)| f.len()).sum();
    let mut basis = crate::linalg::EchelonBasis::<BigRational>::new(width);
    let mut cumulative = Vec::with_capacity(groups.len());
    for group in groups {
        for tuple in group {
            if tuple.len() != blocks {
                return Err(Error::WidthMismatch(blocks, tuple.len()));
            }
            let mats: Vec<Matrix<T>> = tuple.iter().map(|x| rep.element(x)).collect();
            for i in 0..d {
                let mut v = Vec::with_capacity(width);
                for (m, (b, pivots, free)) in mats.iter().zip(&reduced_blocks) {
                    let mut r: Vec<BigRational> = (0..d).map(|j| m[(i, j)].to_rational()).collect();
                    for (row, &p) in pivots.iter().enumerate() {
                        let f = r[p].clone();
                        if f.is_zero() {
                            continue;
                        }
                        for (x, y) in r.iter_mut().zip(b.row(row)) {
                            if !y.is_zero() {
                                *x -= &f * y;
                            }
                        }
                    }
                    v.extend(free.iter().map(|&c| r[c].clone()));
                }
                basis.insert(&v)?;
            }
        }
        cumulative.push(sym + basis.rank());
    }
    Ok(QuotientRanks { sym, cumulative })
}

/// The partition of `n` with these parts, for tests and tables.
pub fn partition(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition")
}

/// Every permutation of `0..n` with its lexicographic index.
pub fn indexed_permutations(n: usize) -> impl Iterator<Item = (usize, Vec<u8>)> {
    (0..factorial(n)).map(move |k| (k, unrank_index(n, k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_basics() {
        let p7 = partitions(7);
        assert_eq!(p7.len(), 15);
        let shown: Vec<String> = p7.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown[..6], ["7", "61", "52", "511", "43", "421"]);
        assert_eq!(shown[14], "1111111");
        assert_eq!(p7.iter().map(|p| p.dim() * p.dim()).sum::<usize>(), 5040);
        let dims: Vec<usize> = ["421", "322", "3211", "31111"].iter().map(|s| Partition::parse(s).unwrap().dim()).collect();
        assert_eq!(dims, [35, 21, 35, 15]);
        assert_eq!(Partition::parse("4,2,1").unwrap(), partition(&[4, 2, 1]));
        assert!(Partition::parse("1,2").is_err());
    }

    #[test]
    fn class_order_and_sizes() {
        let c: Vec<String> = classes(5).iter().map(|p| p.to_string()).collect();
        assert_eq!(c, ["11111", "2111", "221", "311", "32", "41", "5"]);
        assert_eq!(classes(5).iter().map(|c| c.class_size()).sum::<usize>(), 120);
    }

    #[test]
    fn small_characters() {
        assert_eq!(character(&partition(&[5])), vec![1; 7]);
        assert_eq!(character(&partition(&[1, 1, 1, 1, 1]))[1], -1);
        assert_eq!(character(&partition(&[4, 1])), vec![4, 2, 0, 1, -1, 0, -1]);
        assert_eq!(character(&partition(&[3, 2])), vec![5, 1, 1, -1, 1, -1, 0]);
    }

    #[test]
    fn representations_have_the_right_traces() {
        let lambda = partition(&[3, 1, 1]);
        let chi = character(&lambda);
        let cls = classes(5);
        for rep_trace in [
            {
                let r = Representation::natural(&lambda).unwrap();
                cls.iter().map(|c| r.trace_at(lex_index(c.class_representative().letters()))).collect::<Vec<i64>>()
            },
            {
                let r = Representation::seminormal(&lambda);
                cls.iter()
                    .map(|c| r.trace_at(lex_index(c.class_representative().letters())).to_integer().to_i64().unwrap())
                    .collect()
            },
        ] {
            assert_eq!(rep_trace, chi);
        }
    }

    #[test]
    fn standard_tableaux_count() {
        for lambda in partitions(6) {
            assert_eq!(standard_tableaux(&lambda).len(), lambda.dim());
        }
    }
}
