//! Skew-ternary monomials and their straightening.
//!
//! A ternary product satisfying `[a,b,c] = -[b,a,c]` is determined by a tree
//! of ternary nodes. Straightening sorts the first two children of every
//! node, composite arguments before letters and otherwise by their leaf
//! words, and records the sign. In arities 3, 5 and 7 the straightened trees
//! fall into a handful of association types, and a basis monomial is a type
//! template with its letters relabelled by a word.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::closure::{incremental_closure, Closure};
use crate::linalg::modp::{ModpEchelon, SparseRow};
use crate::scalar::Field;
use crate::zinbiel::{factorial, letter, lex_index, unrank_index, Permutation, MAX_ARITY};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TernaryMonomial {
    Leaf(u8),
    Node(Box<[TernaryMonomial; 3]>),
}

impl TernaryMonomial {
    pub fn node(x: TernaryMonomial, y: TernaryMonomial, z: TernaryMonomial) -> Self {
        TernaryMonomial::Node(Box::new([x, y, z]))
    }

    pub fn arity(&self) -> usize {
        match self {
            TernaryMonomial::Leaf(_) => 1,
            TernaryMonomial::Node(c) => c.iter().map(|t| t.arity()).sum(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, TernaryMonomial::Leaf(_))
    }

    pub fn leaves(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(7);
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u8>) {
        match self {
            TernaryMonomial::Leaf(x) => out.push(*x),
            TernaryMonomial::Node(c) => c.iter().for_each(|t| t.collect_leaves(out)),
        }
    }

    pub fn relabel(&self, f: &impl Fn(u8) -> u8) -> TernaryMonomial {
        match self {
            TernaryMonomial::Leaf(x) => TernaryMonomial::Leaf(f(*x)),
            TernaryMonomial::Node(c) => Self::node(c[0].relabel(f), c[1].relabel(f), c[2].relabel(f)),
        }
    }

    /// The same tree with leaves `0, 1, 2, ...` from left to right.
    pub fn shape(&self) -> TernaryMonomial {
        let mut next = 0u8;
        self.relabel_in_order(&mut next)
    }

    fn relabel_in_order(&self, next: &mut u8) -> TernaryMonomial {
        match self {
            TernaryMonomial::Leaf(_) => {
                *next += 1;
                TernaryMonomial::Leaf(*next - 1)
            }
            TernaryMonomial::Node(c) => {
                let x = c[0].relabel_in_order(next);
                let y = c[1].relabel_in_order(next);
                Self::node(x, y, c[2].relabel_in_order(next))
            }
        }
    }

    /// Replaces every leaf `x` by `f(x)`.
    pub fn substitute(&self, f: &impl Fn(u8) -> TernaryMonomial) -> TernaryMonomial {
        match self {
            TernaryMonomial::Leaf(x) => f(*x),
            TernaryMonomial::Node(c) => Self::node(c[0].substitute(f), c[1].substitute(f), c[2].substitute(f)),
        }
    }

    pub fn check_multilinear(&self) -> Result<()> {
        let mut seen = 0u64;
        for x in self.leaves() {
            if seen & (1 << x) != 0 {
                return Err(Error::Malformed(format!("variable {} repeated in {self}", letter(x))));
            }
            seen |= 1 << x;
        }
        Ok(())
    }

    /// Whether straightening would leave the tree unchanged.
    pub fn is_canonical(&self) -> bool {
        match self {
            TernaryMonomial::Leaf(_) => true,
            TernaryMonomial::Node(c) => {
                c.iter().all(|t| t.is_canonical()) && subtree_order(&c[0], &c[1]) == Ordering::Less
            }
        }
    }

    /// Sign and canonical tree with `self = sign * canonical`.
    pub fn straighten(&self) -> Result<(i64, TernaryMonomial)> {
        self.check_multilinear()?;
        Ok(self.straighten_unchecked())
    }

    fn straighten_unchecked(&self) -> (i64, TernaryMonomial) {
        match self {
            TernaryMonomial::Leaf(x) => (1, TernaryMonomial::Leaf(*x)),
            TernaryMonomial::Node(c) => {
                let (s0, x) = c[0].straighten_unchecked();
                let (s1, y) = c[1].straighten_unchecked();
                let (s2, z) = c[2].straighten_unchecked();
                let sign = s0 * s1 * s2;
                if subtree_order(&x, &y) == Ordering::Greater {
                    (-sign, Self::node(y, x, z))
                } else {
                    (sign, Self::node(x, y, z))
                }
            }
        }
    }

    /// Parses `"[[a,b,c],d,e]"` or the compact `"[[abc]de]"`; commas are
    /// optional separators.
    pub fn parse(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        skip_separators(&chars, &mut pos, false);
        let m = parse_ternary(&chars, &mut pos)?;
        skip_separators(&chars, &mut pos, false);
        if pos != chars.len() {
            return Err(Error::parse(pos, format!("unexpected {:?}", chars[pos])));
        }
        let mut seen = 0u64;
        for (i, &c) in chars.iter().enumerate() {
            if c.is_ascii_lowercase() {
                let bit = 1u64 << (c as u8 - b'a');
                if seen & bit != 0 {
                    return Err(Error::parse(i, format!("variable {c} repeated")));
                }
                seen |= bit;
            }
        }
        Ok(m)
    }

    /// Compact form without commas, e.g. `[[abd]g[efc]]`.
    pub fn compact(&self) -> String {
        match self {
            TernaryMonomial::Leaf(x) => letter(*x).to_string(),
            TernaryMonomial::Node(c) => format!("[{}{}{}]", c[0].compact(), c[1].compact(), c[2].compact()),
        }
    }
}

fn skip_separators(s: &[char], pos: &mut usize, comma: bool) {
    while *pos < s.len() && (s[*pos].is_whitespace() || (comma && s[*pos] == ',')) {
        *pos += 1;
    }
}

fn parse_ternary(s: &[char], pos: &mut usize) -> Result<TernaryMonomial> {
    match s.get(*pos) {
        None => Err(Error::parse(*pos, "unexpected end of input")),
        Some('[') => {
            let open = *pos;
            *pos += 1;
            let mut children = Vec::with_capacity(3);
            loop {
                skip_separators(s, pos, !children.is_empty());
                match s.get(*pos) {
                    Some(']') => {
                        *pos += 1;
                        break;
                    }
                    None => return Err(Error::parse(open, "unbalanced bracket")),
                    _ => children.push(parse_ternary(s, pos)?),
                }
            }
            let [x, y, z]: [TernaryMonomial; 3] = children
                .try_into()
                .map_err(|c: Vec<_>| Error::parse(open, format!("node arity {}", c.len())))?;
            Ok(TernaryMonomial::node(x, y, z))
        }
        Some(&c) if c.is_ascii_lowercase() && ((c as u8 - b'a') as usize) < MAX_ARITY => {
            *pos += 1;
            Ok(TernaryMonomial::Leaf(c as u8 - b'a'))
        }
        Some(&c) => Err(Error::parse(*pos, format!("unexpected {c:?}"))),
    }
}

/// Composite arguments first (larger arity first), then by leaf word.
fn subtree_order(x: &TernaryMonomial, y: &TernaryMonomial) -> Ordering {
    y.arity().cmp(&x.arity()).then_with(|| x.leaves().cmp(&y.leaves()))
}

impl fmt::Display for TernaryMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TernaryMonomial::Leaf(x) => write!(f, "{}", letter(*x)),
            TernaryMonomial::Node(c) => write!(f, "[{},{},{}]", c[0], c[1], c[2]),
        }
    }
}

impl fmt::Debug for TernaryMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Swap that relates a canonical word to an equivalent one with the
/// opposite sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    /// Two letter arguments at these positions.
    Pair(usize, usize),
    /// Two adjacent equal-size blocks starting at these positions.
    Block(usize, usize, usize),
}

impl Symmetry {
    fn apply(self, w: &mut [u8]) -> bool {
        match self {
            Symmetry::Pair(i, j) => {
                if w[i] > w[j] {
                    w.swap(i, j);
                    return true;
                }
            }
            Symmetry::Block(i, j, len) => {
                if w[i] > w[j] {
                    for k in 0..len {
                        w.swap(i + k, j + k);
                    }
                    return true;
                }
            }
        }
        false
    }

    /// The template with this swap applied unconditionally.
    pub fn swapped_word(self, n: usize) -> Vec<u8> {
        let mut w: Vec<u8> = (0..n as u8).collect();
        match self {
            Symmetry::Pair(i, j) => w.swap(i, j),
            Symmetry::Block(i, j, len) => (0..len).for_each(|k| w.swap(i + k, j + k)),
        }
        w
    }
}

fn symmetries_of(template: &TernaryMonomial) -> Vec<Symmetry> {
    fn walk(t: &TernaryMonomial, start: usize, out: &mut Vec<Symmetry>) {
        if let TernaryMonomial::Node(c) = t {
            let (a0, a1) = (c[0].arity(), c[1].arity());
            walk(&c[0], start, out);
            walk(&c[1], start + a0, out);
            walk(&c[2], start + a0 + a1, out);
            if a0 == 1 && a1 == 1 {
                out.push(Symmetry::Pair(start, start + 1));
            } else if a0 == a1 {
                out.push(Symmetry::Block(start, start + a0, a0));
            }
        }
    }
    let mut out = Vec::new();
    walk(template, 0, &mut out);
    out
}

fn template_strings(n: usize) -> Option<&'static [&'static str]> {
    Some(match n {
        3 => &["[a,b,c]"],
        5 => &["[[a,b,c],d,e]", "[a,b,[c,d,e]]"],
        7 => &[
            "[[[a,b,c],d,e],f,g]",
            "[[a,b,[c,d,e]],f,g]",
            "[a,b,[[c,d,e],f,g]]",
            "[a,b,[c,d,[e,f,g]]]",
            "[[a,b,c],[d,e,f],g]",
            "[[a,b,c],d,[e,f,g]]",
        ],
        _ => return None,
    })
}

const NONE: u32 = u32::MAX;

/// Ordered basis of the multilinear skew-ternary monomials of one arity.
///
/// Monomials are grouped by association type in a fixed order and listed in
/// lexicographic order of their leaf words within a type.
#[derive(Debug)]
pub struct SkewBasis {
    arity: usize,
    templates: Vec<TernaryMonomial>,
    symmetries: Vec<Vec<Symmetry>>,
    offsets: Vec<usize>,
    types: Vec<u8>,
    words: Vec<u8>,
    lookup: Vec<Vec<u32>>,
}

impl SkewBasis {
    /// The basis in arity 3, 5 or 7, built once and shared.
    pub fn get(n: usize) -> Result<&'static SkewBasis> {
        static B3: OnceLock<SkewBasis> = OnceLock::new();
        static B5: OnceLock<SkewBasis> = OnceLock::new();
        static B7: OnceLock<SkewBasis> = OnceLock::new();
        let cell = match n {
            3 => &B3,
            5 => &B5,
            7 => &B7,
            _ => return Err(Error::UnsupportedArity(n)),
        };
        Ok(cell.get_or_init(|| SkewBasis::build(n)))
    }

    fn build(n: usize) -> SkewBasis {
        let templates: Vec<TernaryMonomial> = template_strings(n)
            .expect("supported arity")
            .iter()
            .map(|s| TernaryMonomial::parse(s).expect("valid template"))
            .collect();
        let symmetries: Vec<Vec<Symmetry>> = templates.iter().map(symmetries_of).collect();
        let mut offsets = vec![0];
        let mut types = Vec::new();
        let mut words = Vec::new();
        let mut lookup = Vec::new();
        for (k, rules) in symmetries.iter().enumerate() {
            let mut table = vec![NONE; factorial(n)];
            for (i, slot) in table.iter_mut().enumerate() {
                let w = unrank_index(n, i);
                let canonical = rules.iter().all(|r| match *r {
                    Symmetry::Pair(a, b) | Symmetry::Block(a, b, _) => w[a] < w[b],
                });
                if canonical {
                    *slot = types.len() as u32;
                    types.push(k as u8);
                    words.extend_from_slice(&w);
                }
            }
            lookup.push(table);
            offsets.push(types.len());
        }
        SkewBasis { arity: n, templates, symmetries, offsets, types, words, lookup }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    /// Association-type templates on `a, b, c, ...`.
    pub fn templates(&self) -> &[TernaryMonomial] {
        &self.templates
    }

    pub fn type_count(&self) -> usize {
        self.templates.len()
    }

    pub fn type_range(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn type_of(&self, j: usize) -> usize {
        self.types[j] as usize
    }

    /// The word relabelling the type template into monomial `j`.
    pub fn word(&self, j: usize) -> &[u8] {
        &self.words[j * self.arity..(j + 1) * self.arity]
    }

    pub fn monomial(&self, j: usize) -> TernaryMonomial {
        let w = self.word(j);
        self.templates[self.type_of(j)].relabel(&|x| w[x as usize])
    }

    /// Symmetries of each type, innermost first.
    pub fn symmetries(&self, k: usize) -> &[Symmetry] {
        &self.symmetries[k]
    }

    /// Raw monomials obtained from each template by one of its symmetries.
    pub fn symmetry_partners(&self, k: usize) -> Vec<TernaryMonomial> {
        self.symmetries[k]
            .iter()
            .map(|s| {
                let w = s.swapped_word(self.arity);
                self.templates[k].relabel(&|x| w[x as usize])
            })
            .collect()
    }

    fn index_of_word(&self, k: usize, w: &[u8]) -> Option<usize> {
        let j = self.lookup[k][lex_index(w)];
        (j != NONE).then_some(j as usize)
    }

    /// Index of a canonical monomial.
    pub fn index_of(&self, m: &TernaryMonomial) -> Result<usize> {
        if m.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: m.arity() });
        }
        m.check_multilinear()?;
        if !m.is_canonical() {
            return Err(Error::NotCanonical(m.to_string()));
        }
        let shape = m.shape();
        let k = self
            .templates
            .iter()
            .position(|t| *t == shape)
            .ok_or_else(|| Error::Malformed(format!("{m} has no association type in arity {}", self.arity)))?;
        Ok(self.index_of_word(k, &m.leaves()).expect("canonical word"))
    }

    /// Sign and basis index of an arbitrary monomial.
    pub fn locate(&self, m: &TernaryMonomial) -> Result<(i64, usize)> {
        let (sign, canonical) = m.straighten()?;
        Ok((sign, self.index_of(&canonical)?))
    }

    /// Sign and index of `σ` applied to basis monomial `j`.
    pub fn act_index(&self, sigma: &[u8], j: usize) -> (i64, usize) {
        let k = self.type_of(j);
        let mut w = [0u8; MAX_ARITY];
        let w = &mut w[..self.arity];
        for (x, &y) in w.iter_mut().zip(self.word(j)) {
            *x = sigma[y as usize];
        }
        let mut sign = 1;
        for rule in &self.symmetries[k] {
            if rule.apply(w) {
                sign = -sign;
            }
        }
        (sign, self.index_of_word(k, w).expect("straightened word"))
    }
}

/// Integer combination of basis monomials of one arity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewElement {
    arity: usize,
    coeffs: Vec<i64>,
}

impl SkewElement {
    pub fn zero(arity: usize) -> Result<Self> {
        Ok(SkewElement { arity, coeffs: vec![0; SkewBasis::get(arity)?.len()] })
    }

    pub fn from_coeffs(arity: usize, coeffs: Vec<i64>) -> Result<Self> {
        let len = SkewBasis::get(arity)?.len();
        if coeffs.len() != len {
            return Err(Error::WidthMismatch(len, coeffs.len()));
        }
        Ok(SkewElement { arity, coeffs })
    }

    /// Sum of `c * m` over raw monomials, straightened.
    pub fn from_terms<'a>(arity: usize, terms: impl IntoIterator<Item = (i64, &'a TernaryMonomial)>) -> Result<Self> {
        let basis = SkewBasis::get(arity)?;
        let mut out = Self::zero(arity)?;
        for (c, m) in terms {
            let (s, j) = basis.locate(m)?;
            out.coeffs[j] += s * c;
        }
        Ok(out)
    }

    /// Parses `"+[[a,b,c],d,e] -2 [a,b,[c,d,e]] ..."`; monomials in comma
    /// or compact form, optionally preceded by an integer coefficient.
    pub fn parse(arity: usize, s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut terms = Vec::new();
        let mut pos = 0;
        while pos < chars.len() {
            if chars[pos].is_whitespace() {
                pos += 1;
                continue;
            }
            let start = pos;
            let mut sign = 1;
            if chars[pos] == '+' || chars[pos] == '-' {
                sign = if chars[pos] == '-' { -1 } else { 1 };
                pos += 1;
            }
            while pos < chars.len() && chars[pos].is_whitespace() {
                pos += 1;
            }
            let digits_start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let c: i64 = if digits_start == pos {
                1
            } else {
                chars[digits_start..pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::parse(digits_start, "bad coefficient"))?
            };
            while pos < chars.len() && chars[pos].is_whitespace() {
                pos += 1;
            }
            if chars.get(pos) != Some(&'[') {
                return Err(Error::parse(start, "expected a bracketed monomial"));
            }
            let mono_start = pos;
            let mut depth = 0;
            while pos < chars.len() {
                match chars[pos] {
                    '[' => depth += 1,
                    ']' => depth -= 1,
                    _ => {}
                }
                pos += 1;
                if depth == 0 {
                    break;
                }
            }
            let text: String = chars[mono_start..pos].iter().collect();
            let m = TernaryMonomial::parse(&text).map_err(|e| match e {
                Error::Parse { pos: p, msg } => Error::Parse { pos: mono_start + p, msg },
                e => e,
            })?;
            terms.push((sign * c, m));
        }
        Self::from_terms(arity, terms.iter().map(|(c, m)| (*c, m)))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn basis(&self) -> &'static SkewBasis {
        SkewBasis::get(self.arity).expect("supported arity")
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Nonzero `(index, coefficient)` pairs in basis order.
    pub fn terms(&self) -> Vec<(usize, i64)> {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (j, c)).collect()
    }

    pub fn add_scaled(&mut self, other: &SkewElement, c: i64) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        self.coeffs.iter_mut().zip(&other.coeffs).for_each(|(a, b)| *a += c * b);
        Ok(())
    }

    pub fn neg(&self) -> SkewElement {
        SkewElement { arity: self.arity, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Relabels every variable by `σ` and straightens.
    pub fn act(&self, sigma: &Permutation) -> Result<SkewElement> {
        if sigma.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: sigma.arity() });
        }
        let basis = self.basis();
        let mut out = vec![0; self.coeffs.len()];
        for (j, c) in self.terms() {
            let (s, i) = basis.act_index(sigma.letters(), j);
            out[i] += s * c;
        }
        Ok(SkewElement { arity: self.arity, coeffs: out })
    }

    pub fn to_field<F: Field>(&self) -> Vec<F> {
        self.coeffs.iter().map(|&c| F::from_i64(c)).collect()
    }

    /// All `n!` images under the symmetric group, as sparse rows over `F_p`.
    pub fn orbit_mod(&self, p: u32) -> Vec<SparseRow> {
        let basis = self.basis();
        let terms = self.terms();
        (0..factorial(self.arity))
            .map(|i| {
                let sigma = unrank_index(self.arity, i);
                terms
                    .iter()
                    .map(|&(j, c)| {
                        let (s, k) = basis.act_index(&sigma, j);
                        (k as u32, (s * c).rem_euclid(p as i64) as u32)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_sparse_mod(&self, p: u32) -> SparseRow {
        self.terms().into_iter().map(|(j, c)| (j as u32, c.rem_euclid(p as i64) as u32)).collect()
    }
}

impl fmt::Display for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let basis = self.basis();
        for (k, (j, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            let sign = if *c < 0 { '-' } else { '+' };
            match c.abs() {
                1 => write!(f, "{sign}{}", basis.monomial(*j))?,
                a => write!(f, "{sign}{a} {}", basis.monomial(*j))?,
            }
        }
        Ok(())
    }
}

/// Substitutes `[x, t1, t2]` for the letter `x` in every term, with the new
/// letters `t1, t2` numbered after the existing ones.
pub fn substitute_argument(rel: &SkewElement, x: u8) -> Result<SkewElement> {
    let n = rel.arity();
    let (f, g) = (TernaryMonomial::Leaf(n as u8), TernaryMonomial::Leaf(n as u8 + 1));
    let basis = rel.basis();
    let raw: Vec<(i64, TernaryMonomial)> = rel
        .terms()
        .into_iter()
        .map(|(j, c)| {
            let m = basis.monomial(j).substitute(&|y| {
                if y == x {
                    TernaryMonomial::node(TernaryMonomial::Leaf(y), f.clone(), g.clone())
                } else {
                    TernaryMonomial::Leaf(y)
                }
            });
            (c, m)
        })
        .collect();
    SkewElement::from_terms(n + 2, raw.iter().map(|(c, m)| (*c, m)))
}

/// Places every term in argument `slot` of a ternary product whose other
/// arguments are the two new letters.
pub fn embed_in_product(rel: &SkewElement, slot: usize) -> Result<SkewElement> {
    let n = rel.arity();
    let basis = rel.basis();
    let raw: Vec<(i64, TernaryMonomial)> = rel
        .terms()
        .into_iter()
        .map(|(j, c)| {
            let mut others = [TernaryMonomial::Leaf(n as u8), TernaryMonomial::Leaf(n as u8 + 1)].into_iter();
            let args: Vec<TernaryMonomial> =
                (0..3).map(|i| if i == slot { basis.monomial(j) } else { others.next().unwrap() }).collect();
            let [x, y, z]: [TernaryMonomial; 3] = args.try_into().unwrap();
            (c, TernaryMonomial::node(x, y, z))
        })
        .collect();
    SkewElement::from_terms(n + 2, raw.iter().map(|(c, m)| (*c, m)))
}

/// The consequences in arity `n + 2` of a relation in arity `n`: each letter
/// replaced by a product with the two new letters, then the relation in each
/// of the three argument slots.
pub fn consequences(rel: &SkewElement) -> Result<Vec<SkewElement>> {
    if rel.arity() != 5 {
        return Err(Error::ArityMismatch { expected: 5, found: rel.arity() });
    }
    let mut out = Vec::with_capacity(8);
    for x in 0..rel.arity() as u8 {
        out.push(substitute_argument(rel, x)?);
    }
    for slot in 0..3 {
        out.push(embed_in_product(rel, slot)?);
    }
    Ok(out)
}

/// Cumulative ranks and basis of the module generated by `generators`.
pub fn module_span<F: Field>(generators: &[SkewElement]) -> Result<Closure<F>> {
    let Some(first) = generators.first() else {
        return Ok(Closure { ranks: Vec::new(), basis: crate::linalg::Matrix::zeros(0, 0) });
    };
    let n = first.arity();
    if let Some(g) = generators.iter().find(|g| g.arity() != n) {
        return Err(Error::ArityMismatch { expected: n, found: g.arity() });
    }
    let basis = first.basis();
    let gens: Vec<Vec<F>> = generators.iter().map(|g| g.to_field()).collect();
    let perms = Permutation::all(n);
    incremental_closure(&gens, basis.len(), |v: &[F]| {
        let terms: Vec<(usize, F)> = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect();
        Ok(perms
            .iter()
            .map(|sigma| {
                let mut out = vec![F::zero(); v.len()];
                for (j, x) in &terms {
                    let (s, k) = basis.act_index(sigma.letters(), *j);
                    out[k] = out[k].clone() + if s > 0 { x.clone() } else { -x.clone() };
                }
                out
            })
            .collect())
    })
}

/// Module closure over `F_p` with the word-sized engine.
pub fn module_span_mod(generators: &[SkewElement], p: u32) -> Result<(Vec<usize>, ModpEchelon)> {
    let width = generators.first().map_or(0, |g| g.basis().len());
    let mut e = ModpEchelon::new(p, width)?;
    let mut ranks = Vec::with_capacity(generators.len());
    for g in generators {
        if g.basis().len() != width {
            return Err(Error::WidthMismatch(width, g.basis().len()));
        }
        e.insert_sparse_batch(g.orbit_mod(p))?;
        ranks.push(e.rank());
    }
    Ok((ranks, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TernaryMonomial {
        TernaryMonomial::parse(s).unwrap()
    }

    #[test]
    fn straightening_examples() {
        assert_eq!(t("[b,a,c]").straighten().unwrap(), (-1, t("[a,b,c]")));
        assert_eq!(t("[a,b,[d,c,e]]").straighten().unwrap(), (-1, t("[a,b,[c,d,e]]")));
        assert_eq!(t("[[d,e,f],[a,b,c],g]").straighten().unwrap(), (-1, t("[[a,b,c],[d,e,f],g]")));
        assert_eq!(t("[d,[a,b,c],e]").straighten().unwrap(), (-1, t("[[a,b,c],d,e]")));
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(SkewBasis::get(3).unwrap().len(), 3);
        let b5 = SkewBasis::get(5).unwrap();
        assert_eq!(b5.len(), 90);
        assert_eq!(b5.type_range(0), 0..60);
        assert_eq!(SkewBasis::get(7).unwrap().len(), 7560);
        let counts: Vec<usize> = (0..6).map(|k| SkewBasis::get(7).unwrap().symmetries(k).len()).collect();
        assert_eq!(counts, [1, 2, 2, 3, 3, 2]);
        assert!(SkewBasis::get(4).is_err());
    }

    #[test]
    fn arity_three_basis() {
        let b = SkewBasis::get(3).unwrap();
        let ms: Vec<String> = (0..3).map(|j| b.monomial(j).to_string()).collect();
        assert_eq!(ms, ["[a,b,c]", "[a,c,b]", "[b,c,a]"]);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(t("[[abd]g[efc]]"), t("[[a,b,d],g,[e,f,c]]"));
        assert_eq!(t("[[a,b,d],g,[e,f,c]]").compact(), "[[abd]g[efc]]");
        assert!(matches!(TernaryMonomial::parse("[a,b]"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(TernaryMonomial::parse("[a,b,a]"), Err(Error::Parse { pos: 5, .. })));
        assert!(TernaryMonomial::parse("[a,b,[c,d,e]").is_err());
    }

    #[test]
    fn action_examples() {
        let b = SkewBasis::get(5).unwrap();
        let j = b.index_of(&t("[[a,b,c],d,e]")).unwrap();
        let cycle = Permutation::parse("bcdea").unwrap();
        let (s, k) = b.act_index(cycle.letters(), j);
        assert_eq!((s, b.monomial(k)), (1, t("[[b,c,d],e,a]")));
        let b3 = SkewBasis::get(3).unwrap();
        let swap = Permutation::parse("bac").unwrap();
        assert_eq!(b3.act_index(swap.letters(), 0), (-1, 0));
    }

    #[test]
    fn element_parse_and_display() {
        let x = SkewElement::parse(5, "+[[a,b,c],d,e] - 2 [b,a,[c,d,e]]").unwrap();
        assert_eq!(x.term_count(), 2);
        assert_eq!(x.to_string(), "+[[a,b,c],d,e] +2 [a,b,[c,d,e]]");
    }
}
