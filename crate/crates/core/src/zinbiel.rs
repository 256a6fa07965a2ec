//! Multilinear words in the free Zinbiel algebra.
//!
//! Variables are the letters `a < b < c < ...`, numbered from 0. A
//! right-normed word `x1(x2(...(x{n-1}xn)))` is determined by its letter
//! sequence, so right-normed words of arity `n` are the permutations of the
//! first `n` letters and form a basis of `Zinb(n)`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ARITY: usize = 12;

pub fn letter(i: u8) -> char {
    (b'a' + i) as char
}

fn parse_letter(c: char, pos: usize) -> Result<u8> {
    if c.is_ascii_lowercase() && (c as u8 - b'a') < MAX_ARITY as u8 {
        Ok(c as u8 - b'a')
    } else {
        Err(Error::parse(pos, format!("expected a variable, found {c:?}")))
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// A permutation of `0..n`, written as the word of its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    letters: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { letters: (0..n as u8).collect() }
    }

    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        let n = letters.len();
        let mut seen = vec![false; n];
        for &x in &letters {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::Malformed(format!("{letters:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation { letters })
    }

    #[cfg(test)]
    pub(crate) fn from_letters_unchecked(letters: Vec<u8>) -> Self {
        Permutation { letters }
    }

    /// Parses a word such as `"bacde"`.
    pub fn parse(s: &str) -> Result<Self> {
        let letters = s.chars().enumerate().map(|(i, c)| parse_letter(c, i)).collect::<Result<_>>()?;
        Self::from_letters(letters)
    }

    /// Builds a permutation from disjoint cycles over `0..n`.
    pub fn from_cycles(n: usize, cycles: &[&[u8]]) -> Result<Self> {
        let mut letters: Vec<u8> = (0..n as u8).collect();
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                if x as usize >= n || y as usize >= n {
                    return Err(Error::Malformed(format!("cycle entry out of range for arity {n}")));
                }
                letters[x as usize] = y;
            }
        }
        Self::from_letters(letters)
    }

    pub fn arity(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn image(&self, x: u8) -> u8 {
        self.letters[x as usize]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: other.arity() });
        }
        Ok(Permutation { letters: other.letters.iter().map(|&x| self.letters[x as usize]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.arity()];
        for (i, &x) in self.letters.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { letters: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Lengths of the cycles, in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.arity();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.letters[x] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn sign(&self) -> i64 {
        let parity = self.cycle_type().iter().map(|l| l - 1).sum::<usize>() % 2;
        if parity == 0 {
            1
        } else {
            -1
        }
    }

    /// Position in lexicographic order, starting at 1.
    pub fn lex_rank(&self) -> usize {
        lex_index(&self.letters) + 1
    }

    /// Inverse of [`Permutation::lex_rank`].
    pub fn unrank(n: usize, rank: usize) -> Result<Self> {
        if rank == 0 || rank > factorial(n) {
            return Err(Error::Malformed(format!("rank {rank} out of range for arity {n}")));
        }
        Ok(Permutation { letters: unrank_index(n, rank - 1) })
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        (0..factorial(n)).map(|i| Permutation { letters: unrank_index(n, i) }).collect()
    }

    /// The right-normed monomial with this letter sequence.
    pub fn right_normed(&self) -> BinaryMonomial {
        BinaryMonomial::right_normed(&self.letters)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters.iter().try_for_each(|&x| write!(f, "{}", letter(x)))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Zero-based lexicographic index of a permutation word.
pub fn lex_index(word: &[u8]) -> usize {
    const FACT: [usize; MAX_ARITY + 1] = {
        let mut f = [1; MAX_ARITY + 1];
        let mut i = 1;
        while i <= MAX_ARITY {
            f[i] = f[i - 1] * i;
            i += 1;
        }
        f
    };
    let n = word.len();
    let mut index = 0;
    let mut used: u32 = 0;
    for (i, &x) in word.iter().enumerate() {
        let smaller_unused = x as usize - (used & ((1 << x) - 1)).count_ones() as usize;
        index += smaller_unused * FACT[n - 1 - i];
        used |= 1 << x;
    }
    index
}

pub fn unrank_index(n: usize, mut index: usize) -> Vec<u8> {
    let mut pool: Vec<u8> = (0..n as u8).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i);
        out.push(pool.remove(index / f));
        index %= f;
    }
    out
}

/// A nonassociative monomial: a leaf or a product of two monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum BinaryMonomial {
    Leaf(u8),
    Product(Box<BinaryMonomial>, Box<BinaryMonomial>),
}

impl BinaryMonomial {
    pub fn product(x: BinaryMonomial, y: BinaryMonomial) -> Self {
        BinaryMonomial::Product(Box::new(x), Box::new(y))
    }

    pub fn right_normed(word: &[u8]) -> Self {
        match word {
            [] => panic!("empty word"),
            [x] => BinaryMonomial::Leaf(*x),
            [x, rest @ ..] => Self::product(BinaryMonomial::Leaf(*x), Self::right_normed(rest)),
        }
    }

    /// Parses juxtaposition syntax: `"(ab)(cd)"`, `"a(b(cd))"`.
    pub fn parse(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let m = parse_expr(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::parse(pos, format!("unexpected {:?}", chars[pos])));
        }
        m.check_multilinear()?;
        Ok(m)
    }

    pub fn arity(&self) -> usize {
        match self {
            BinaryMonomial::Leaf(_) => 1,
            BinaryMonomial::Product(x, y) => x.arity() + y.arity(),
        }
    }

    pub fn leaves(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u8>) {
        match self {
            BinaryMonomial::Leaf(x) => out.push(*x),
            BinaryMonomial::Product(x, y) => {
                x.collect_leaves(out);
                y.collect_leaves(out);
            }
        }
    }

    /// Errors unless every variable occurs at most once.
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

    /// The same shape with leaves `0, 1, 2, ...` in order.
    pub fn shape(&self) -> BinaryMonomial {
        let mut next = 0;
        self.relabel_in_order(&mut next)
    }

    fn relabel_in_order(&self, next: &mut u8) -> BinaryMonomial {
        match self {
            BinaryMonomial::Leaf(_) => {
                *next += 1;
                BinaryMonomial::Leaf(*next - 1)
            }
            BinaryMonomial::Product(x, y) => {
                let x = x.relabel_in_order(next);
                Self::product(x, y.relabel_in_order(next))
            }
        }
    }

    /// Replaces each leaf `x` by `f(x)`.
    pub fn relabel(&self, f: &impl Fn(u8) -> u8) -> BinaryMonomial {
        match self {
            BinaryMonomial::Leaf(x) => BinaryMonomial::Leaf(f(*x)),
            BinaryMonomial::Product(x, y) => Self::product(x.relabel(f), y.relabel(f)),
        }
    }

    /// Letter sequence, if the monomial is right-normed.
    pub fn as_right_normed(&self) -> Option<Vec<u8>> {
        match self {
            BinaryMonomial::Leaf(x) => Some(vec![*x]),
            BinaryMonomial::Product(x, y) => match **x {
                BinaryMonomial::Leaf(l) => {
                    let mut w = vec![l];
                    w.extend(y.as_right_normed()?);
                    Some(w)
                }
                _ => None,
            },
        }
    }
}

fn parse_expr(s: &[char], pos: &mut usize) -> Result<BinaryMonomial> {
    let x = parse_factor(s, pos)?;
    if *pos < s.len() && s[*pos] != ')' {
        let y = parse_factor(s, pos)?;
        if *pos < s.len() && s[*pos] != ')' {
            return Err(Error::parse(*pos, "a product has exactly two factors; add parentheses"));
        }
        return Ok(BinaryMonomial::product(x, y));
    }
    Ok(x)
}

fn parse_factor(s: &[char], pos: &mut usize) -> Result<BinaryMonomial> {
    match s.get(*pos) {
        None => Err(Error::parse(*pos, "unexpected end of input")),
        Some('(') => {
            let open = *pos;
            *pos += 1;
            let m = parse_expr(s, pos)?;
            if s.get(*pos) != Some(&')') {
                return Err(Error::parse(open, "unbalanced parenthesis"));
            }
            *pos += 1;
            Ok(m)
        }
        Some(&c) => {
            let x = parse_letter(c, *pos)?;
            *pos += 1;
            Ok(BinaryMonomial::Leaf(x))
        }
    }
}

impl fmt::Display for BinaryMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn factor(m: &BinaryMonomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match m {
                BinaryMonomial::Leaf(x) => write!(f, "{}", letter(*x)),
                _ => write!(f, "({m})"),
            }
        }
        match self {
            BinaryMonomial::Leaf(x) => write!(f, "{}", letter(*x)),
            BinaryMonomial::Product(x, y) => {
                factor(x, f)?;
                factor(y, f)
            }
        }
    }
}

impl fmt::Debug for BinaryMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Zinbiel normal form: the right-normed words whose sum equals `m`, with
/// repetition.
pub fn znf(m: &BinaryMonomial) -> Result<Vec<Vec<u8>>> {
    m.check_multilinear()?;
    Ok(znf_unchecked(m))
}

fn znf_unchecked(m: &BinaryMonomial) -> Vec<Vec<u8>> {
    use BinaryMonomial::*;
    match m {
        Leaf(x) => vec![vec![*x]],
        Product(w, z) => match &**w {
            Leaf(x) => znf_unchecked(z)
                .into_iter()
                .map(|t| {
                    let mut word = Vec::with_capacity(t.len() + 1);
                    word.push(*x);
                    word.extend(t);
                    word
                })
                .collect(),
            Product(x, y) => {
                // (xy)z = x(yz) + x(zy), applied to the normal forms of x, y, z
                let (nx, ny, nz) = (znf_unchecked(x), znf_unchecked(y), znf_unchecked(z));
                let mut out = Vec::new();
                for r in &nx {
                    let r = BinaryMonomial::right_normed(r);
                    for s in &ny {
                        let s = BinaryMonomial::right_normed(s);
                        for t in &nz {
                            let t = BinaryMonomial::right_normed(t);
                            let st = BinaryMonomial::product(s.clone(), t.clone());
                            let ts = BinaryMonomial::product(t, s.clone());
                            out.extend(znf_unchecked(&BinaryMonomial::product(r.clone(), st)));
                            out.extend(znf_unchecked(&BinaryMonomial::product(r.clone(), ts)));
                        }
                    }
                }
                out
            }
        },
    }
}

/// An element of `Zinb(n)` with integer coefficients over the right-normed
/// basis in lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZinbielElement {
    arity: usize,
    coeffs: Vec<i64>,
}

impl ZinbielElement {
    pub fn zero(arity: usize) -> Self {
        ZinbielElement { arity, coeffs: vec![0; factorial(arity)] }
    }

    pub fn from_coeffs(arity: usize, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != factorial(arity) {
            return Err(Error::WidthMismatch(factorial(arity), coeffs.len()));
        }
        Ok(ZinbielElement { arity, coeffs })
    }

    /// Normal form of a monomial on the letters `0..arity`.
    pub fn from_monomial(m: &BinaryMonomial) -> Result<Self> {
        let n = m.arity();
        let mut out = Self::zero(n);
        for w in znf(m)? {
            if w.iter().any(|&x| x as usize >= n) {
                return Err(Error::Malformed(format!("{m} does not use the letters a.. in arity {n}")));
            }
            out.coeffs[lex_index(&w)] += 1;
        }
        Ok(out)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    pub fn coefficient(&self, word: &Permutation) -> i64 {
        self.coeffs[lex_index(word.letters())]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero terms in lexicographic order.
    pub fn terms(&self) -> Vec<(i64, Permutation)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (c, Permutation { letters: unrank_index(self.arity, i) }))
            .collect()
    }

    pub fn add_scaled(&mut self, other: &ZinbielElement, c: i64) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        self.coeffs.iter_mut().zip(&other.coeffs).for_each(|(a, b)| *a += c * b);
        Ok(())
    }

    /// Relabels every word by `σ`: the word `w` goes to `σ ∘ w`.
    pub fn act(&self, sigma: &Permutation) -> Result<ZinbielElement> {
        if sigma.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: sigma.arity() });
        }
        let mut out = Self::zero(self.arity);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let w: Vec<u8> = unrank_index(self.arity, i).into_iter().map(|x| sigma.image(x)).collect();
                out.coeffs[lex_index(&w)] = c;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ZinbielElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, w)) in terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if k > 0 { "+" } else { "" };
            if k > 0 {
                write!(f, " ")?;
            }
            match c.abs() {
                1 => write!(f, "{sign}{}", w.right_normed())?,
                a => write!(f, "{sign}{a} {}", w.right_normed())?,
            }
        }
        Ok(())
    }
}

/// All bracketings of `n` leaves labelled `0..n` in order. The left factor
/// shrinks from `n - 1` leaves down to one, which lists the left-normed type
/// first and the right-normed type last.
pub fn association_types(n: usize) -> Vec<BinaryMonomial> {
    fn build(lo: u8, n: usize, memo: &mut HashMap<(u8, usize), Vec<BinaryMonomial>>) -> Vec<BinaryMonomial> {
        if let Some(v) = memo.get(&(lo, n)) {
            return v.clone();
        }
        let out = if n == 1 {
            vec![BinaryMonomial::Leaf(lo)]
        } else {
            let mut out = Vec::new();
            for k in (1..n).rev() {
                let left = build(lo, k, memo);
                let right = build(lo + k as u8, n - k, memo);
                for x in &left {
                    for y in &right {
                        out.push(BinaryMonomial::product(x.clone(), y.clone()));
                    }
                }
            }
            out
        };
        memo.insert((lo, n), out.clone());
        out
    }
    build(0, n, &mut HashMap::new())
}

/// Normal forms of every association type on `a, b, c, ...` in order.
pub fn normal_form_table(n: usize) -> Result<Vec<(BinaryMonomial, ZinbielElement)>> {
    if n == 0 || n > 7 {
        return Err(Error::UnsupportedArity(n));
    }
    association_types(n)
        .into_iter()
        .map(|t| {
            let e = ZinbielElement::from_monomial(&t)?;
            Ok((t, e))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(m: &str) -> Vec<String> {
        let mut out: Vec<String> = znf(&BinaryMonomial::parse(m).unwrap())
            .unwrap()
            .into_iter()
            .map(|w| Permutation::from_letters_unchecked(w).to_string())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn small_normal_forms() {
        assert_eq!(words("a"), ["a"]);
        assert_eq!(words("(ab)c"), ["abc", "acb"]);
        assert_eq!(words("(ab)(cd)"), ["abcd", "acbd", "acdb"]);
    }

    #[test]
    fn ranks() {
        assert_eq!(Permutation::parse("abcde").unwrap().lex_rank(), 1);
        assert_eq!(Permutation::parse("abced").unwrap().lex_rank(), 2);
        assert_eq!(Permutation::parse("edcba").unwrap().lex_rank(), 120);
        for r in 1..=120 {
            assert_eq!(Permutation::unrank(5, r).unwrap().lex_rank(), r);
        }
        assert!(Permutation::unrank(5, 121).is_err());
    }

    #[test]
    fn parse_and_print() {
        for s in ["(((ab)c)d)e", "(ab)(cd)", "a(b(c(de)))", "(a(bc))(de)"] {
            assert_eq!(BinaryMonomial::parse(s).unwrap().to_string(), s);
        }
        assert!(BinaryMonomial::parse("(ab)a").is_err());
        assert!(BinaryMonomial::parse("abc").is_err());
        assert!(BinaryMonomial::parse("(ab").is_err());
    }

    #[test]
    fn fourteen_types_in_arity_five() {
        let types = association_types(5);
        assert_eq!(types.len(), 14);
        assert_eq!(types[0].to_string(), "(((ab)c)d)e");
        assert_eq!(types[12].to_string(), "a(b((cd)e))");
        assert_eq!(types[13].to_string(), "a(b(c(de)))");
    }

    #[test]
    fn composition_and_cycles() {
        let s = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(s.to_string(), "bcdea");
        assert!(s.compose(&s.inverse()).unwrap().is_identity());
        assert_eq!(s.cycle_type(), vec![5]);
        assert_eq!(Permutation::parse("bacde").unwrap().sign(), -1);
    }

    #[test]
    fn repeated_variable_is_rejected() {
        let m = BinaryMonomial::product(BinaryMonomial::Leaf(0), BinaryMonomial::Leaf(0));
        assert!(znf(&m).is_err());
    }
}
