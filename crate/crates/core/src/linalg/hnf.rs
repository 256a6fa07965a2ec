//! Row-style Hermite normal form with a unimodular transform.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::Matrix;

/// Returns `(H, U)` with `U · M = H`, `U` unimodular and `H` in Hermite
/// normal form: pivots positive, entries above each pivot reduced into
/// `[0, pivot)`, zero rows last.
///
/// Elimination in each column repeatedly divides by the entry of smallest
/// absolute value (the Euclidean algorithm on rows).
pub fn hnf_transform(m: &Matrix<BigInt>) -> (Matrix<BigInt>, Matrix<BigInt>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u: Matrix<BigInt> = Matrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut found = false;
        loop {
            let pick = (r..rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()).then(a.cmp(&b)));
            let Some(p) = pick else { break };
            found = true;
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = &h[(i, c)] / &h[(r, c)];
                sub_multiple(&mut h, i, r, &q);
                sub_multiple(&mut u, i, r, &q);
                if !h[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                sub_multiple(&mut h, i, r, &q);
                sub_multiple(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    (h, u)
}

/// `row[target] -= q * row[source]`.
fn sub_multiple(m: &mut Matrix<BigInt>, target: usize, source: usize, q: &BigInt) {
    for j in 0..m.cols() {
        if m[(source, j)].is_zero() {
            continue;
        }
        let d = q * &m[(source, j)];
        m[(target, j)] -= d;
    }
}

fn negate_row(m: &mut Matrix<BigInt>, i: usize) {
    for x in m.row_mut(i) {
        *x = -std::mem::take(x);
    }
}

/// Number of nonzero rows of a matrix in echelon form.
pub fn echelon_rank(h: &Matrix<BigInt>) -> usize {
    h.iter_rows().filter(|r| r.iter().any(|x| !x.is_zero())).count()
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn determinant(m: &Matrix<BigInt>) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[(n - 1, n - 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> Matrix<BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_fixed() {
        let i = im(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let (h, u) = hnf_transform(&i);
        assert_eq!(h, i);
        assert_eq!(u, i);
    }

    #[test]
    fn two_by_two_by_hand() {
        let (h, u) = hnf_transform(&im(&[&[2, 4], &[1, 1]]));
        assert_eq!(h, im(&[&[1, 1], &[0, 2]]));
        assert_eq!(u, im(&[&[0, 1], &[1, -2]]));
    }

    #[test]
    fn transform_reproduces_form() {
        let m = im(&[&[3, 6, 9, 1], &[2, 4, 6, 0], &[1, 2, 3, 5], &[4, 1, 0, 0]]);
        let (h, u) = hnf_transform(&m);
        assert_eq!(u.mul(&m).unwrap(), h);
        assert!(determinant(&u).abs().is_one());
        assert_eq!(echelon_rank(&h), 3);
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(determinant(&im(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(determinant(&im(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&im(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), BigInt::zero());
    }
}
