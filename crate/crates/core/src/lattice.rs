//! Integer lattice bases and LLL reduction.
//!
//! The reduction works entirely in integers with the Gram determinants
//! `d_i` and the scaled coefficients `λ_ij = d_j μ_ij`, so no rational
//! arithmetic is needed inside the loop.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Parses a reduction parameter such as `"999/1000"` and checks it lies in
/// `(1/4, 1]`.
pub fn parse_delta(s: &str) -> Result<BigRational> {
    let delta = BigRational::from_str(s.trim()).map_err(|_| Error::Malformed(format!("bad rational {s:?}")))?;
    check_delta(&delta)?;
    Ok(delta)
}

pub fn check_delta(delta: &BigRational) -> Result<()> {
    let quarter = BigRational::new(1.into(), 4.into());
    if *delta <= quarter || *delta > BigRational::one() {
        return Err(Error::Malformed(format!("reduction parameter {delta} outside (1/4, 1]")));
    }
    Ok(())
}

/// Linearly independent integer rows of a common width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    rows: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(first) = rows.first() {
            if let Some(r) = rows.iter().find(|r| r.len() != first.len()) {
                return Err(Error::WidthMismatch(first.len(), r.len()));
            }
        }
        Ok(LatticeBasis { rows })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn from_matrix(m: &Matrix<BigInt>) -> Self {
        LatticeBasis { rows: m.iter_rows().map(|r| r.to_vec()).collect() }
    }

    pub fn to_matrix(&self) -> Matrix<BigInt> {
        let cols = self.rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, self.rows.clone()).expect("equal widths")
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn squared_length(&self, i: usize) -> BigInt {
        dot(&self.rows[i], &self.rows[i])
    }

    /// Squared lengths with multiplicities.
    pub fn squared_lengths(&self) -> BTreeMap<BigInt, usize> {
        let mut out = BTreeMap::new();
        for i in 0..self.len() {
            *out.entry(self.squared_length(i)).or_insert(0) += 1;
        }
        out
    }

    /// `Σ log10 |b_i|^2`.
    pub fn measure(&self) -> Result<f64> {
        (0..self.len())
            .map(|i| {
                let l = self.squared_length(i);
                if l.is_zero() {
                    Err(Error::ZeroRow)
                } else {
                    Ok(log10(&l))
                }
            })
            .sum()
    }

    /// LLL reduction with parameter `delta`.
    pub fn lll(&self, delta: &BigRational) -> Result<LatticeBasis> {
        check_delta(delta)?;
        let (a, b) = (delta.numer().clone(), delta.denom().clone());
        let n = self.len();
        if n == 0 {
            return Ok(self.clone());
        }
        // 1-based vectors; d[0] = 1 and d[i] is the Gram determinant of the
        // first i vectors.
        let mut basis: Vec<Vec<BigInt>> = std::iter::once(Vec::new()).chain(self.rows.iter().cloned()).collect();
        let mut d = vec![BigInt::zero(); n + 1];
        let mut lambda = vec![vec![BigInt::zero(); n + 1]; n + 1];
        d[0] = BigInt::one();
        d[1] = dot(&basis[1], &basis[1]);
        if d[1].is_zero() {
            return Err(Error::DependentRows);
        }
        let mut k = 2;
        let mut kmax = 1;
        while k <= n {
            if k > kmax {
                kmax = k;
                for j in 1..=k {
                    let mut u = dot(&basis[k], &basis[j]);
                    for i in 1..j {
                        u = (&d[i] * &u - &lambda[k][i] * &lambda[j][i]) / &d[i - 1];
                    }
                    if j < k {
                        lambda[k][j] = u;
                    } else {
                        if u.is_zero() {
                            return Err(Error::DependentRows);
                        }
                        d[k] = u;
                    }
                }
            }
            loop {
                reduce(&mut basis, &mut lambda, &d, k, k - 1);
                let lhs = &b * &d[k] * &d[k - 2];
                let l = &lambda[k][k - 1];
                let rhs = &a * &d[k - 1] * &d[k - 1] - &b * l * l;
                if lhs < rhs {
                    swap(&mut basis, &mut lambda, &mut d, k, kmax);
                    k = (k - 1).max(2);
                } else {
                    for l in (1..k - 1).rev() {
                        reduce(&mut basis, &mut lambda, &d, k, l);
                    }
                    k += 1;
                    break;
                }
            }
        }
        Ok(LatticeBasis { rows: basis.into_iter().skip(1).collect() })
    }

    /// Checks size reduction and the Lovász condition in exact arithmetic.
    pub fn is_reduced(&self, delta: &BigRational) -> bool {
        let n = self.len();
        let q = |x: &BigInt| BigRational::from_integer(x.clone());
        let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut norms: Vec<BigRational> = Vec::with_capacity(n);
        let half = BigRational::new(1.into(), 2.into());
        for i in 0..n {
            let mut v: Vec<BigRational> = self.rows[i].iter().map(q).collect();
            let mut mu_last = BigRational::zero();
            for j in 0..i {
                let num: BigRational = self.rows[i].iter().zip(&star[j]).map(|(x, y)| q(x) * y).sum();
                let mu = num / &norms[j];
                if mu.abs() > half {
                    return false;
                }
                for (x, y) in v.iter_mut().zip(&star[j]) {
                    *x -= &mu * y;
                }
                if j + 1 == i {
                    mu_last = mu;
                }
            }
            let norm: BigRational = v.iter().map(|x| x * x).sum();
            if i > 0 && norm < (delta - &mu_last * &mu_last) * &norms[i - 1] {
                return false;
            }
            star.push(v);
            norms.push(norm);
        }
        true
    }
}

fn dot(x: &[BigInt], y: &[BigInt]) -> BigInt {
    x.iter().zip(y).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
}

fn log10(x: &BigInt) -> f64 {
    match x.to_f64() {
        Some(f) if f.is_finite() => f.log10(),
        _ => {
            let bits = x.bits();
            let shifted: BigInt = x >> (bits - 64);
            shifted.to_f64().unwrap().log10() + (bits - 64) as f64 * std::f64::consts::LOG10_2
        }
    }
}

/// Nearest integer to `x / d` for `d > 0`, halves rounded up.
fn round_div(x: &BigInt, d: &BigInt) -> BigInt {
    (BigInt::from(2) * x + d).div_floor(&(BigInt::from(2) * d))
}

fn reduce(basis: &mut [Vec<BigInt>], lambda: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
    if (BigInt::from(2) * &lambda[k][l]).abs() <= d[l] {
        return;
    }
    let q = round_div(&lambda[k][l], &d[l]);
    let (lo, hi) = basis.split_at_mut(k);
    for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
        if !y.is_zero() {
            *x -= &q * y;
        }
    }
    lambda[k][l] -= &q * &d[l];
    for i in 1..l {
        let t = &q * &lambda[l][i];
        lambda[k][i] -= t;
    }
}

fn swap(basis: &mut [Vec<BigInt>], lambda: &mut [Vec<BigInt>], d: &mut [BigInt], k: usize, kmax: usize) {
    basis.swap(k, k - 1);
    for j in 1..k - 1 {
        let t = std::mem::take(&mut lambda[k][j]);
        lambda[k][j] = std::mem::replace(&mut lambda[k - 1][j], t);
    }
    let l = lambda[k][k - 1].clone();
    let big_b = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
    for i in k + 1..=kmax {
        let t = lambda[i][k].clone();
        lambda[i][k] = (&d[k] * &lambda[i][k - 1] - &l * &t) / &d[k - 1];
        lambda[i][k - 1] = (&big_b * &t + &l * &lambda[i][k]) / &d[k];
    }
    d[k - 1] = big_b;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta(s: &str) -> BigRational {
        parse_delta(s).unwrap()
    }

    #[test]
    fn identity_is_fixed() {
        let b = LatticeBasis::from_i64(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(b.lll(&delta("3/4")).unwrap(), b);
        assert_eq!(b.measure().unwrap(), 0.0);
    }

    #[test]
    fn one_size_reduction() {
        let b = LatticeBasis::from_i64(&[vec![1, 0], vec![4, 1]]).unwrap();
        let r = b.lll(&delta("3/4")).unwrap();
        assert_eq!(r, LatticeBasis::from_i64(&[vec![1, 0], vec![0, 1]]).unwrap());
    }

    #[test]
    fn measure_of_single_row() {
        let b = LatticeBasis::from_i64(&[vec![3, 4]]).unwrap();
        assert!((b.measure().unwrap() - 25f64.log10()).abs() < 1e-12);
        assert_eq!(b.squared_lengths(), BTreeMap::from([(BigInt::from(25), 1)]));
    }

    #[test]
    fn classic_example_is_reduced() {
        let b = LatticeBasis::from_i64(&[vec![1, 1, 1], vec![-1, 0, 2], vec![3, 5, 6]]).unwrap();
        let d = delta("3/4");
        let r = b.lll(&d).unwrap();
        assert!(r.is_reduced(&d));
        assert!(!b.is_reduced(&d));
        assert_eq!(r.rows()[0], vec![BigInt::from(0), BigInt::from(1), BigInt::from(0)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_delta("1/4").is_err());
        assert!(parse_delta("3/2").is_err());
        let dep = LatticeBasis::from_i64(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(matches!(dep.lll(&delta("3/4")), Err(Error::DependentRows)));
    }
}
