//! Expansion of ternary and bracket monomials into the free Zinbiel algebra.
//!
//! Under `[x,y] = xy - yx` the ternary product `[x,y,z] = [[x,y],z]` becomes
//! `x(yz) + x(zy) - y(xz) - y(zx) - z(xy) + z(yx)` in a Zinbiel algebra.
//! Expanding every node and taking normal forms gives the column of the
//! expansion matrix for a basis monomial.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{CoefficientDomain, Matrix};
use crate::scalar::Field;
use crate::skew::{SkewBasis, SkewElement, TernaryMonomial};
use crate::zinbiel::{factorial, lex_index, unrank_index, znf, BinaryMonomial, ZinbielElement};

type Raw = Vec<(i64, BinaryMonomial)>;

fn mul(x: &BinaryMonomial, y: &BinaryMonomial) -> BinaryMonomial {
    BinaryMonomial::product(x.clone(), y.clone())
}

fn triple_terms(x: &BinaryMonomial, y: &BinaryMonomial, z: &BinaryMonomial) -> [(i64, BinaryMonomial); 6] {
    [
        (1, mul(x, &mul(y, z))),
        (1, mul(x, &mul(z, y))),
        (-1, mul(y, &mul(x, z))),
        (-1, mul(y, &mul(z, x))),
        (-1, mul(z, &mul(x, y))),
        (1, mul(z, &mul(y, x))),
    ]
}

/// Signed binary monomials before normal forms, six per ternary node.
pub fn raw_expansion(m: &TernaryMonomial) -> Raw {
    match m {
        TernaryMonomial::Leaf(x) => vec![(1, BinaryMonomial::Leaf(*x))],
        TernaryMonomial::Node(c) => {
            let (ex, ey, ez) = (raw_expansion(&c[0]), raw_expansion(&c[1]), raw_expansion(&c[2]));
            let mut out = Vec::with_capacity(6 * ex.len() * ey.len() * ez.len());
            for (cx, x) in &ex {
                for (cy, y) in &ey {
                    for (cz, z) in &ez {
                        for (s, t) in triple_terms(x, y, z) {
                            out.push((s * cx * cy * cz, t));
                        }
                    }
                }
            }
            out
        }
    }
}

fn normal_form(arity: usize, raw: &Raw) -> Result<ZinbielElement> {
    let mut coeffs = vec![0i64; factorial(arity)];
    for (c, t) in raw {
        for w in znf(t)? {
            if w.len() != arity || w.iter().any(|&x| x as usize >= arity) {
                return Err(Error::Malformed(format!("{t} does not use the letters a.. in arity {arity}")));
            }
            coeffs[lex_index(&w)] += c;
        }
    }
    ZinbielElement::from_coeffs(arity, coeffs)
}

/// `[x,y,z]` for three distinct letters among `a, b, c`.
pub fn expand_triple(x: u8, y: u8, z: u8) -> Result<ZinbielElement> {
    let l = BinaryMonomial::Leaf;
    let raw = triple_terms(&l(x), &l(y), &l(z)).to_vec();
    normal_form(3, &raw)
}

/// Expansion of a canonical monomial.
pub fn expand(m: &TernaryMonomial) -> Result<ZinbielElement> {
    m.check_multilinear()?;
    if !m.is_canonical() {
        return Err(Error::NotCanonical(m.to_string()));
    }
    normal_form(m.arity(), &raw_expansion(m))
}

fn bracket_expansion(m: &BinaryMonomial, twist: i64) -> Raw {
    match m {
        BinaryMonomial::Leaf(x) => vec![(1, BinaryMonomial::Leaf(*x))],
        BinaryMonomial::Product(a, b) => {
            let (ea, eb) = (bracket_expansion(a, twist), bracket_expansion(b, twist));
            let mut out = Vec::with_capacity(2 * ea.len() * eb.len());
            for (ca, x) in &ea {
                for (cb, y) in &eb {
                    out.push((ca * cb, mul(x, y)));
                    out.push((twist * ca * cb, mul(y, x)));
                }
            }
            out
        }
    }
}

/// Reads every product in `m` as the commutator `xy - yx`.
pub fn expand_commutator(m: &BinaryMonomial) -> Result<ZinbielElement> {
    m.check_multilinear()?;
    normal_form(m.arity(), &bracket_expansion(m, -1))
}

/// Reads every product in `m` as the anticommutator `xy + yx`.
pub fn expand_anticommutator(m: &BinaryMonomial) -> Result<ZinbielElement> {
    m.check_multilinear()?;
    normal_form(m.arity(), &bracket_expansion(m, 1))
}

/// Expansion of a combination of basis monomials.
pub fn expand_element(x: &SkewElement) -> Result<ZinbielElement> {
    let basis = x.basis();
    let bases = base_vectors(basis)?;
    let n = basis.arity();
    let mut out = vec![0i64; factorial(n)];
    for (j, c) in x.terms() {
        let e = &bases[basis.type_of(j)];
        let w = basis.word(j);
        for (u, &s) in e.signs.iter().enumerate() {
            out[permuted_index(w, n, u)] += c * s as i64;
        }
    }
    ZinbielElement::from_coeffs(n, out)
}

fn permuted_index(w: &[u8], n: usize, u: usize) -> usize {
    let mut buf = [0u8; 12];
    let word = &mut buf[..n];
    for (x, y) in word.iter_mut().zip(unrank_index(n, u)) {
        *x = w[y as usize];
    }
    lex_index(word)
}

/// Coefficients in `{-1, +1}` over the right-normed basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignVector {
    arity: usize,
    signs: Vec<i8>,
}

impl SignVector {
    pub fn from_element(e: &ZinbielElement) -> Result<Self> {
        let signs = e
            .coeffs()
            .iter()
            .map(|&c| match c {
                1 => Ok(1i8),
                -1 => Ok(-1i8),
                _ => Err(Error::CheckFailed(format!("coefficient {c} is not a sign"))),
            })
            .collect::<Result<_>>()?;
        Ok(SignVector { arity: e.arity(), signs })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Rows of `width` characters `+`/`-`.
    pub fn grid(&self, width: usize) -> Vec<String> {
        self.signs.chunks(width).map(|c| c.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()).collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.signs.iter().try_for_each(|&s| write!(f, "{}", if s > 0 { '+' } else { '-' }))
    }
}

/// Expansions of the association-type templates.
pub fn base_vectors(basis: &SkewBasis) -> Result<Vec<SignVector>> {
    basis.templates().iter().map(|t| SignVector::from_element(&expand(t)?)).collect()
}

/// The expansion matrix: right-normed words (lex order) by skew basis
/// monomials, entries in `{-1, 0, +1}`.
#[derive(Clone, Debug)]
pub struct ExpansionMatrix {
    arity: usize,
    rows: usize,
    cols: usize,
    data: Vec<i8>,
}

impl ExpansionMatrix {
    /// Builds `E_n`, rejecting exact domains in arity 7.
    pub fn build(n: usize, domain: CoefficientDomain) -> Result<Self> {
        if n > 5 && !matches!(domain, CoefficientDomain::PrimeField(_)) {
            return Err(Error::Unsupported(format!("arity {n} expansion matrices need a prime field")));
        }
        if let CoefficientDomain::PrimeField(p) = domain {
            crate::linalg::validate_prime(p)?;
        }
        Self::new(n)
    }

    pub fn new(n: usize) -> Result<Self> {
        let basis = SkewBasis::get(n)?;
        let bases = base_vectors(basis)?;
        let rows = factorial(n);
        let cols = basis.len();
        let words: Vec<Vec<u8>> = (0..rows).map(|u| unrank_index(n, u)).collect();
        let columns: Vec<Vec<u16>> = (0..cols)
            .into_par_iter()
            .map(|j| {
                let w = basis.word(j);
                let mut buf = [0u8; 12];
                words
                    .iter()
                    .map(|u| {
                        for (x, &y) in buf.iter_mut().zip(u) {
                            *x = w[y as usize];
                        }
                        lex_index(&buf[..n]) as u16
                    })
                    .collect()
            })
            .collect();
        let mut data = vec![0i8; rows * cols];
        for (j, col) in columns.iter().enumerate() {
            let e = &bases[basis.type_of(j)];
            for (&i, &s) in col.iter().zip(&e.signs) {
                data[i as usize * cols + j] = s;
            }
        }
        Ok(ExpansionMatrix { arity: n, rows, cols, data })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> i8 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i8> {
        (0..self.rows).map(|i| self.entry(i, j)).collect()
    }

    pub fn to_matrix<F: Field>(&self) -> Matrix<F> {
        Matrix::from_fn(self.rows, self.cols, |i, j| F::from_i64(self.entry(i, j) as i64))
    }

    /// Rows as residues modulo `p`, optionally with the columns reversed.
    pub fn rows_mod(&self, p: u32, reversed: bool) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.rows).map(move |i| {
            let r = self.row(i);
            let lift = |s: i8| if s < 0 { p - 1 } else { s as u32 };
            if reversed {
                r.iter().rev().map(|&s| lift(s)).collect()
            } else {
                r.iter().map(|&s| lift(s)).collect()
            }
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = &[i8]> {
        self.data.chunks(self.cols)
    }
}
