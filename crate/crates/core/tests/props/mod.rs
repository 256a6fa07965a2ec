//! Property checks shared by the property suite and the acceptance runner.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use tortkara::expansion::expand_element;
use tortkara::lattice::LatticeBasis;
use tortkara::linalg::{hnf::determinant, hnf_transform, Matrix};
use tortkara::skew::{SkewBasis, SkewElement, TernaryMonomial};
use tortkara::symrep::{partitions, CharacterTable, Representation};
use tortkara::zinbiel::{factorial, Permutation, ZinbielElement};
use tortkara::{IntMatrix, Rational};

pub type Outcome = Result<(), String>;

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u8).collect::<Vec<u8>>()).prop_shuffle().prop_map(|w| Permutation::from_letters(w).unwrap())
}

fn arity() -> impl Strategy<Value = usize> {
    prop_oneof![Just(3usize), Just(5usize), Just(7usize)]
}

fn basis_monomial(n: usize) -> impl Strategy<Value = (usize, usize)> {
    let len = SkewBasis::get(n).unwrap().len();
    (Just(n), 0..len)
}

fn unit(n: usize, j: usize) -> SkewElement {
    let mut c = vec![0; SkewBasis::get(n).unwrap().len()];
    c[j] = 1;
    SkewElement::from_coeffs(n, c).unwrap()
}

/// Random ternary tree with `n` leaves on shuffled letters.
fn raw_monomial(n: usize) -> impl Strategy<Value = TernaryMonomial> {
    fn shape(n: usize, choices: &[usize], pos: &mut usize) -> TernaryMonomial {
        if n == 1 {
            return TernaryMonomial::Leaf(0);
        }
        // split n - 1 = x + y + z into odd parts
        let inner = (n - 3) / 2;
        let pick = choices[*pos % choices.len()];
        *pos += 1;
        let a = pick % (inner + 1);
        let rest = inner - a;
        let b = (pick / 7) % (rest + 1);
        let c = rest - b;
        TernaryMonomial::node(shape(2 * a + 1, choices, pos), shape(2 * b + 1, choices, pos), shape(2 * c + 1, choices, pos))
    }
    (
        proptest::collection::vec(0usize..1000, 8),
        Just((0..n as u8).collect::<Vec<u8>>()).prop_shuffle(),
    )
        .prop_map(move |(choices, letters)| {
            let t = shape(n, &choices, &mut 0);
            let mut k = 0;
            relabel_in_order(&t, &letters, &mut k)
        })
}

fn relabel_in_order(t: &TernaryMonomial, letters: &[u8], k: &mut usize) -> TernaryMonomial {
    match t {
        TernaryMonomial::Leaf(_) => {
            *k += 1;
            TernaryMonomial::Leaf(letters[*k - 1])
        }
        TernaryMonomial::Node(c) => TernaryMonomial::node(
            relabel_in_order(&c[0], letters, k),
            relabel_in_order(&c[1], letters, k),
            relabel_in_order(&c[2], letters, k),
        ),
    }
}

/// `expand(σ · m) = σ · expand(m)` for basis monomials.
pub fn expansion_equivariance(cases: u32) -> Outcome {
    let strategy = prop_oneof![basis_monomial(5), basis_monomial(7)]
        .prop_flat_map(|(n, j)| (Just(n), Just(j), permutation(n)));
    run(cases, strategy, |(n, j, sigma)| {
        let x = unit(n, j);
        let lhs = expand_element(&x.act(&sigma).unwrap()).unwrap();
        let rhs = expand_element(&x).unwrap().act(&sigma).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

/// `(στ) · x = σ · (τ · x)` on skew elements and Zinbiel elements.
pub fn action_axiom(cases: u32) -> Outcome {
    let strategy = arity().prop_flat_map(|n| {
        let len = SkewBasis::get(n).unwrap().len();
        (
            Just(n),
            proptest::collection::vec(-3i64..=3, len),
            permutation(n),
            permutation(n),
            proptest::collection::vec(-3i64..=3, factorial(n)),
        )
    });
    run(cases, strategy, |(n, coeffs, sigma, tau, zc)| {
        let x = SkewElement::from_coeffs(n, coeffs).unwrap();
        let st = sigma.compose(&tau).unwrap();
        prop_assert_eq!(x.act(&st).unwrap(), x.act(&tau).unwrap().act(&sigma).unwrap());
        prop_assert_eq!(x.act(&Permutation::identity(n)).unwrap(), x.clone());
        let z = ZinbielElement::from_coeffs(n, zc).unwrap();
        prop_assert_eq!(z.act(&st).unwrap(), z.act(&tau).unwrap().act(&sigma).unwrap());
        Ok(())
    })
}

/// Straightening returns a canonical monomial that straightens to itself.
pub fn straighten_idempotent(cases: u32) -> Outcome {
    let strategy = arity().prop_flat_map(raw_monomial);
    run(cases, strategy, |m| {
        let (s, c) = m.straighten().unwrap();
        prop_assert!(s == 1 || s == -1);
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.straighten().unwrap(), (1, c.clone()));
        prop_assert_eq!(c.leaves().len(), m.leaves().len());
        Ok(())
    })
}

fn int_matrix(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
    Matrix::from_fn(rows, cols, |i, j| BigInt::from(entries[i * cols + j]))
}

/// `U · M = H` with `U` unimodular and `H` in Hermite normal form.
pub fn hnf_unimodular(cases: u32) -> Outcome {
    let strategy =
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(-6i64..=6, r * c)));
    run(cases, strategy, |(r, c, e)| {
        let m = int_matrix(r, c, &e);
        let (h, u) = hnf_transform(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert!(determinant(&u).abs().is_one());
        let mut last = None;
        for i in 0..h.rows() {
            match (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
                Some(p) => {
                    prop_assert!(last.map_or(true, |l| p > l));
                    prop_assert!(h[(i, p)].is_positive());
                    for k in 0..i {
                        prop_assert!(!h[(k, p)].is_negative() && h[(k, p)] < h[(i, p)]);
                    }
                    last = Some(p);
                }
                None => {
                    for k in i..h.rows() {
                        prop_assert!((0..h.cols()).all(|j| h[(k, j)].is_zero()));
                    }
                    break;
                }
            }
        }
        Ok(())
    })
}

/// LLL keeps the lattice: both bases have the same Hermite normal form.
pub fn lll_preserves_lattice(cases: u32) -> Outcome {
    let strategy =
        (1usize..5, 0usize..3).prop_flat_map(|(r, extra)| (Just(r), Just(r + extra), proptest::collection::vec(-30i64..=30, r * (r + extra))));
    let delta = Rational::new(99.into(), 100.into());
    run(cases, strategy, move |(r, c, e)| {
        let m = int_matrix(r, c, &e);
        let (h, _) = hnf_transform(&m);
        prop_assume!((0..c).any(|j| !h[(r - 1, j)].is_zero()));
        let b = LatticeBasis::from_matrix(&m);
        let reduced = b.lll(&delta).unwrap();
        prop_assert!(reduced.is_reduced(&delta));
        let (h2, _) = hnf_transform(&reduced.to_matrix());
        prop_assert_eq!(h, h2);
        Ok(())
    })
}

/// Row orthogonality of the character tables up to `n = 7`.
pub fn character_orthogonality() -> Outcome {
    for n in 1..=7 {
        let t = CharacterTable::new(n);
        let order = factorial(n) as i64;
        for (i, a) in t.values.iter().enumerate() {
            for (j, b) in t.values.iter().enumerate() {
                let s: i64 = a.iter().zip(b).zip(&t.class_sizes).map(|((x, y), &c)| x * y * c as i64).sum();
                let expected = if i == j { order } else { 0 };
                if s != expected {
                    return Err(format!("n = {n}: <{}, {}> = {s}", t.partitions[i], t.partitions[j]));
                }
            }
        }
    }
    Ok(())
}

/// `R(στ) = R(σ) R(τ)` in Young's natural representation.
pub fn rep_homomorphism(cases: u32) -> Outcome {
    let lambdas: Vec<_> = [5usize, 6].iter().flat_map(|&n| partitions(n)).collect();
    let reps: Vec<Representation<i64>> = lambdas.iter().map(|l| Representation::natural(l).unwrap()).collect();
    let strategy = (0..reps.len()).prop_flat_map(move |k| {
        let n = if k < 7 { 5 } else { 6 };
        (Just(k), permutation(n), permutation(n))
    });
    run(cases, strategy, |(k, sigma, tau)| {
        let rep = &reps[k];
        let lhs = rep.matrix(&sigma.compose(&tau).unwrap());
        let rhs = rep.matrix(&sigma).mul(&rep.matrix(&tau)).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}
