//! End-to-end computations.
//!
//! [`run_arity5`] finds the arity-5 relations through the Hermite normal form
//! and lattice reduction, [`run_arity7`] finds the arity-7 relations modulo a
//! prime and splits them into isotypic components, and [`sanity_checks`]
//! confirms the basic identities the rest relies on.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{expand_anticommutator, expand_commutator, expand_element, ExpansionMatrix};
use crate::lattice::{check_delta, LatticeBasis};
use crate::linalg::{
    hnf::echelon_rank, hnf_transform, nullspace, rank, rcf, row_space_equal, symmetric_lift, Coordinates, Matrix,
    ModpEchelon, SparseRow,
};
use crate::scalar::Field;
use crate::skew::{consequences, module_span, module_span_mod, SkewBasis, SkewElement};
use crate::symrep::{
    classes, partitions, quotient_ranks, CharacterTable, GroupElement, Partition, RepScalar, Representation,
};
use crate::zinbiel::{BinaryMonomial, Permutation, ZinbielElement};
use crate::{IntMatrix, Rational};

const TT_TEXT: &str = include_str!("../data/tt5.txt");
const RELATION7_TEXT: &str = include_str!("../data/relation7.txt");

/// The 14-term arity-5 relation.
pub fn tt() -> SkewElement {
    SkewElement::parse(5, TT_TEXT).expect("bundled relation parses")
}

/// The published 60-term arity-7 relation.
pub fn relation7() -> Result<SkewElement> {
    SkewElement::parse(7, RELATION7_TEXT)
}

/// Per-partition values printed alongside the arity-7 computation, in the
/// order of [`partitions`]`(7)`.
pub mod reference {
    pub const SYM: [usize; 15] = [6, 35, 77, 81, 71, 172, 95, 95, 92, 145, 57, 50, 44, 14, 0];
    pub const SYM_CON: [usize; 15] = [6, 35, 80, 84, 79, 193, 108, 116, 114, 188, 78, 75, 74, 31, 5];
    pub const SYM_CON_NEW: [usize; 15] = [6, 35, 80, 84, 79, 194, 108, 116, 115, 189, 79, 75, 74, 31, 5];
    pub const EXP: [usize; 15] = [0, 1, 4, 5, 5, 15, 10, 10, 11, 20, 10, 9, 10, 5, 1];
    pub const NUL: [usize; 15] = [6, 35, 80, 85, 79, 195, 116, 115, 114, 190, 80, 75, 74, 31, 5];
}

fn check(name: &str, ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::CheckFailed(name.to_string()))
    }
}

fn commutator_sum(arity: usize, terms: &[(i64, &str)], expand: fn(&BinaryMonomial) -> Result<ZinbielElement>) -> Result<ZinbielElement> {
    let mut acc = ZinbielElement::zero(arity);
    for &(c, s) in terms {
        acc.add_scaled(&expand(&BinaryMonomial::parse(s)?)?, c)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct SanityReport {
    pub e3_nullity: usize,
    pub tortkara_residual: Vec<i64>,
    pub anticommutator_residual: Vec<i64>,
    pub tt_residual: Vec<i64>,
}

pub fn sanity_checks() -> Result<SanityReport> {
    let e3 = ExpansionMatrix::new(3)?;
    let e3_nullity = e3.cols() - rank(&e3.to_matrix::<Rational>());
    check("expansion in arity 3 is injective", e3_nullity == 0)?;

    // (ab)(cd) + (ad)(cb) - J(a,b,c)d - J(a,d,c)b with J the Jacobian
    let tortkara = commutator_sum(
        4,
        &[
            (1, "(ab)(cd)"),
            (1, "(ad)(cb)"),
            (-1, "((ab)c)d"),
            (-1, "((bc)a)d"),
            (-1, "((ca)b)d"),
            (-1, "((ad)c)b"),
            (-1, "((dc)a)b"),
            (-1, "((ca)d)b"),
        ],
        expand_commutator,
    )?;
    check("tortkara identity", tortkara.is_zero() && tortkara.coeffs().len() == 24)?;

    let anti = commutator_sum(3, &[(1, "(ab)c"), (-1, "a(bc)")], expand_anticommutator)?;
    check("anticommutator associativity", anti.is_zero() && anti.coeffs().len() == 6)?;

    let residual = expand_element(&tt())?;
    check("arity-5 relation expands to zero", residual.is_zero() && residual.coeffs().len() == 120)?;

    Ok(SanityReport {
        e3_nullity,
        tortkara_residual: tortkara.into_coeffs(),
        anticommutator_residual: anti.into_coeffs(),
        tt_residual: residual.into_coeffs(),
    })
}

/// One entry of a squared-length multiset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthCount {
    pub squared_length: String,
    pub count: usize,
}

fn length_counts(b: &LatticeBasis) -> Vec<LengthCount> {
    b.squared_lengths().into_iter().map(|(l, count)| LengthCount { squared_length: l.to_string(), count }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicity {
    pub partition: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub dim: usize,
    pub parts: Vec<Multiplicity>,
}

impl Decomposition {
    fn from_pairs(pairs: impl IntoIterator<Item = (Partition, usize)>) -> Self {
        let mut dim = 0;
        let mut parts = Vec::new();
        for (lambda, m) in pairs {
            dim += m * lambda.dim();
            if m > 0 {
                parts.push(Multiplicity { partition: lambda.to_string(), multiplicity: m });
            }
        }
        Decomposition { dim, parts }
    }

    /// Multiplicity of the partition written as in [`Partition`]'s display.
    pub fn multiplicity(&self, partition: &str) -> usize {
        self.parts.iter().find(|m| m.partition == partition).map_or(0, |m| m.multiplicity)
    }
}

/// Ranks for one irreducible `[λ]`, each the multiplicity of `[λ]` in the
/// corresponding module.
///
/// `sym_con` is the rank after the consequences in arity 7 and after the
/// arity-5 relation in arity 5; `sym_con_new` adds the new arity-7 relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepRow {
    pub partition: String,
    pub dim: usize,
    pub sym: usize,
    pub sym_con: usize,
    pub sym_con_new: Option<usize>,
    pub exp: usize,
    pub nul: usize,
}

fn type_tuple(x: &SkewElement) -> Vec<GroupElement> {
    let basis = x.basis();
    (0..basis.type_count())
        .map(|k| {
            GroupElement::from_words(
                basis.type_range(k).filter(|&j| x.coeffs()[j] != 0).map(|j| (x.coeffs()[j], basis.word(j))),
            )
        })
        .collect()
}

fn symmetry_elements(basis: &SkewBasis) -> Vec<(usize, GroupElement)> {
    (0..basis.type_count())
        .flat_map(|k| {
            basis.symmetries(k).iter().map(move |s| (k, GroupElement::one_plus(&s.swapped_word(basis.arity()))))
        })
        .collect()
}

fn expansion_elements(basis: &SkewBasis) -> Result<Vec<GroupElement>> {
    basis
        .templates()
        .iter()
        .map(|t| {
            let e = crate::expansion::expand(t)?;
            Ok(GroupElement::from_dense(e.coeffs()))
        })
        .collect()
}

/// Per-partition ranks with the given generators, which must be relations
/// of arity 5 or 7.
pub fn representation_row(lambda: &Partition, generators: &[SkewElement], new: Option<&SkewElement>) -> Result<RepRow> {
    representation_row_in(&Representation::natural(lambda)?, generators, new)
}

/// As [`representation_row`], in a given realization of `[λ]`.
pub fn representation_row_in<T: RepScalar>(
    rep: &Representation<T>,
    generators: &[SkewElement],
    new: Option<&SkewElement>,
) -> Result<RepRow> {
    let lambda = rep.partition();
    let basis = SkewBasis::get(lambda.n())?;
    let d = rep.dim();
    let mut groups = vec![generators.iter().map(type_tuple).collect::<Vec<_>>()];
    if let Some(x) = new {
        groups.push(vec![type_tuple(x)]);
    }
    let q = quotient_ranks(rep, basis.type_count(), &symmetry_elements(basis), &groups)?;
    let exp = crate::symrep::expansion_rank(rep, &expansion_elements(basis)?);
    Ok(RepRow {
        partition: lambda.to_string(),
        dim: d,
        sym: q.sym,
        sym_con: q.cumulative[0],
        sym_con_new: q.cumulative.get(1).copied(),
        exp,
        nul: basis.type_count() * d - exp,
    })
}

fn representation_rows(n: usize, generators: &[SkewElement], new: Option<&SkewElement>) -> Result<Vec<RepRow>> {
    partitions(n).par_iter().map(|l| representation_row(l, generators, new)).collect()
}

/// The arity-5 relation and the consequences generating `Con(7)`.
pub fn arity7_consequences() -> Result<Vec<SkewElement>> {
    consequences(&tt())
}

#[derive(Clone, Debug, Serialize)]
pub struct Arity5Report {
    pub rows: usize,
    pub cols: usize,
    pub rank_rational: usize,
    pub prime: u32,
    pub rank_mod_p: usize,
    pub nullity: usize,
    pub hnf_rank: usize,
    pub hnf_spans_nullspace: bool,
    pub delta: String,
    pub measure_hnf: f64,
    pub measure_standard: f64,
    pub measure_reduced: f64,
    pub lengths_hnf: Vec<LengthCount>,
    pub lengths_standard: Vec<LengthCount>,
    pub lengths_reduced: Vec<LengthCount>,
    pub tt: String,
    pub tt_terms: usize,
    pub tt_squared_length: String,
    /// Whether the relation found is `±σ` applied to the bundled one.
    pub tt_matches_bundled: bool,
    pub closure_equals_nullspace: bool,
    pub classes: Vec<String>,
    pub character: Vec<i64>,
    pub decomposition: Decomposition,
    pub representations: Vec<RepRow>,
}

/// Everything computed in arity 5, including the matrices.
#[derive(Clone, Debug)]
pub struct Arity5 {
    pub report: Arity5Report,
    pub expansion: ExpansionMatrix,
    pub hnf_basis: IntMatrix,
    pub reduced_basis: IntMatrix,
    pub tt: SkewElement,
}

fn skew_from_row(n: usize, row: &[BigInt]) -> Result<SkewElement> {
    let coeffs = row
        .iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Malformed(format!("coefficient {x} out of range"))))
        .collect::<Result<Vec<_>>>()?;
    SkewElement::from_coeffs(n, coeffs)
}

fn in_signed_orbit(x: &SkewElement, y: &SkewElement) -> Result<bool> {
    if x.term_count() != y.term_count() {
        return Ok(false);
    }
    let neg = x.neg();
    for sigma in Permutation::all(y.arity()) {
        let z = y.act(&sigma)?;
        if z == *x || z == neg {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Character of the module spanned by the rows of `basis` under the
/// symmetric group, in the class order of [`classes`].
pub fn module_character(n: usize, basis: &Matrix<BigRational>) -> Result<Vec<i64>> {
    let coords = Coordinates::new(basis)?;
    let rows: Vec<SkewElement> = basis
        .iter_rows()
        .map(|r| {
            let ints: Vec<BigInt> = r.iter().map(|x| x.to_integer()).collect();
            if r.iter().any(|x| !x.is_integer()) {
                return Err(Error::Malformed("non-integral basis row".into()));
            }
            skew_from_row(n, &ints)
        })
        .collect::<Result<_>>()?;
    classes(n)
        .iter()
        .map(|c| {
            let sigma = c.class_representative();
            let mut trace = BigRational::zero();
            for (i, b) in rows.iter().enumerate() {
                let image: Vec<Rational> = b.act(&sigma)?.to_field();
                let x = coords.solve(&image).ok_or_else(|| Error::CheckFailed("module is not invariant".into()))?;
                trace += &x[i];
            }
            Field::to_integer(&trace).and_then(|t| t.to_i64()).ok_or_else(|| Error::CheckFailed("non-integral trace".into()))
        })
        .collect()
}

pub fn run_arity5(delta: &BigRational, prime: u32) -> Result<Arity5> {
    check_delta(delta)?;
    let e5 = ExpansionMatrix::new(5)?;
    let q = e5.to_matrix::<Rational>();
    let rank_rational = rank(&q);
    let mut modp = ModpEchelon::new(prime, e5.cols())?;
    modp.insert_dense_batch(e5.rows_mod(prime, false))?;
    let rank_mod_p = modp.rank();
    let nullity = e5.cols() - rank_rational;

    let z: IntMatrix = q.map(|x| x.numer().clone());
    let (h, u) = hnf_transform(&z.transpose());
    let hnf_rank = echelon_rank(&h);
    let hnf_basis = u.row_block(hnf_rank..u.rows());
    let kernel = nullspace(&q);
    let hnf_spans_nullspace = row_space_equal(&hnf_basis.map(|x| Rational::from_integer(x.clone())), &kernel)?;
    check("transform rows span the nullspace", hnf_spans_nullspace && hnf_basis.rows() == nullity)?;

    let n0 = LatticeBasis::from_matrix(&hnf_basis);
    let standard = n0.lll(&BigRational::new(3.into(), 4.into()))?;
    let reduced = n0.lll(delta)?;

    let mut order: Vec<usize> = (0..reduced.len()).collect();
    order.sort_by_key(|&i| reduced.squared_length(i));
    let shortest = reduced.squared_length(order[0]);
    let kernel_rcf = rcf(&kernel).basis();
    let mut found = None;
    for &i in order.iter().take_while(|&&i| reduced.squared_length(i) == shortest) {
        let x = skew_from_row(5, &reduced.rows()[i])?;
        let closure = module_span::<Rational>(std::slice::from_ref(&x))?;
        if rcf(&closure.basis).basis() == kernel_rcf {
            found = Some(x);
            break;
        }
    }
    let tt_found = found.ok_or_else(|| Error::CheckFailed("no shortest vector generates the nullspace".into()))?;
    let tt_matches_bundled = in_signed_orbit(&tt_found, &tt())?;

    let reduced_q = reduced.to_matrix().map(|x| Rational::from_integer(x.clone()));
    let character = module_character(5, &reduced_q)?;
    let table = CharacterTable::new(5);
    let mult = table.decompose(&character)?;
    let decomposition = Decomposition::from_pairs(
        table.partitions.iter().cloned().zip(mult.iter().map(|&m| m.max(0) as usize)),
    );
    check("character decomposes", mult.iter().all(|&m| m >= 0) && decomposition.dim == nullity)?;

    let representations = representation_rows(5, std::slice::from_ref(&tt_found), None)?;
    let report = Arity5Report {
        rows: e5.rows(),
        cols: e5.cols(),
        rank_rational,
        prime,
        rank_mod_p,
        nullity,
        hnf_rank,
        hnf_spans_nullspace,
        delta: delta.to_string(),
        measure_hnf: n0.measure()?,
        measure_standard: standard.measure()?,
        measure_reduced: reduced.measure()?,
        lengths_hnf: length_counts(&n0),
        lengths_standard: length_counts(&standard),
        lengths_reduced: length_counts(&reduced),
        tt: tt_found.to_string(),
        tt_terms: tt_found.term_count(),
        tt_squared_length: shortest.to_string(),
        tt_matches_bundled,
        closure_equals_nullspace: true,
        classes: classes(5).iter().map(|c| c.to_string()).collect(),
        character,
        decomposition,
        representations,
    };
    Ok(Arity5 { report, expansion: e5, hnf_basis, reduced_basis: reduced.to_matrix(), tt: tt_found })
}

/// Smallest and largest number of nonzero entries over the rows.
pub fn row_weight_profile(rows: &[SparseRow]) -> Option<(usize, usize)> {
    let w = rows.iter().map(|r| r.iter().filter(|&&(_, x)| x != 0).count());
    Some((w.clone().min()?, w.max()?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationStep {
    /// Position of the row in the reduced row echelon form of the nullspace.
    pub row: usize,
    pub terms: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub terms: usize,
    /// Unit by which the residues were scaled before lifting.
    pub scale: u32,
    pub coefficients: Vec<i64>,
    pub expansion_zero: bool,
    pub matches_bundled: bool,
    pub relation: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub terms: usize,
    pub coefficients: Vec<i64>,
    pub expansion_zero: bool,
    pub con_rank: usize,
    pub rank_with_relation: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub name: String,
    pub expected: usize,
    pub computed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub partition: String,
    pub row: String,
    pub printed: usize,
    pub computed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Arity7Report {
    pub prime: u32,
    pub basis_size: usize,
    pub consequence_terms: Vec<usize>,
    pub consequences_expand_to_zero: bool,
    pub con_ranks: Vec<usize>,
    pub dim_con: usize,
    pub expansion_rank: usize,
    pub nullity: usize,
    pub dim_new: usize,
    pub row_weight_min: usize,
    pub row_weight_max: usize,
    pub filtration: Vec<FiltrationStep>,
    pub closure_equals_nullspace: bool,
    pub generator: GeneratorReport,
    pub bundled: RelationReport,
    pub representations: Vec<RepRow>,
    pub audits: Vec<Audit>,
    pub con_new_over_con: Decomposition,
    pub all_over_con: Decomposition,
    pub discrepancies: Vec<Discrepancy>,
}

fn distinct_coefficients(x: &SkewElement) -> Vec<i64> {
    x.coeffs().iter().copied().filter(|&c| c != 0).collect::<BTreeSet<_>>().into_iter().collect()
}

fn relation_report(rel: &SkewElement, con: &ModpEchelon) -> Result<RelationReport> {
    let mut e = con.clone();
    e.insert_sparse_batch(rel.orbit_mod(con.modulus()))?;
    Ok(RelationReport {
        terms: rel.term_count(),
        coefficients: distinct_coefficients(rel),
        expansion_zero: expand_element(rel)?.is_zero(),
        con_rank: con.rank(),
        rank_with_relation: e.rank(),
    })
}

/// Checks the bundled 60-term relation against `Con(7)` modulo `p`.
pub fn verify_relation7(prime: u32) -> Result<RelationReport> {
    let rel = relation7()?;
    let (_, con) = module_span_mod(&arity7_consequences()?, prime)?;
    relation_report(&rel, &con)
}

/// Nullspace of the arity-7 expansion matrix modulo `p` in reduced row
/// echelon form, rows ordered by leading column.
///
/// The rows are inserted with their columns reversed, so the nullspace
/// basis read off the free columns comes out reduced in the natural order.
pub fn nullspace7(e7: &ExpansionMatrix, prime: u32) -> Result<(usize, Vec<SparseRow>)> {
    let width = e7.cols();
    let mut e = ModpEchelon::new(prime, width)?;
    e.insert_dense_batch(e7.rows_mod(prime, true))?;
    let flip = |c: u32| (width - 1) as u32 - c;
    let mut rows: Vec<SparseRow> = e
        .nullspace_sparse()
        .into_iter()
        .rev()
        .map(|v| {
            let mut w: SparseRow = v.into_iter().map(|(c, x)| (flip(c), x)).collect();
            w.sort_unstable();
            w
        })
        .collect();
    rows.shrink_to_fit();
    Ok((e.rank(), rows))
}

#[derive(Clone, Debug)]
pub struct Arity7 {
    pub report: Arity7Report,
    pub con: ModpEchelon,
    pub nullspace: Vec<SparseRow>,
    pub generator: SkewElement,
}

pub fn run_arity7(prime: u32) -> Result<Arity7> {
    let basis = SkewBasis::get(7)?;
    let cons = arity7_consequences()?;
    let consequences_expand_to_zero = cons.par_iter().map(|c| expand_element(c).map(|e| e.is_zero())).collect::<Result<Vec<_>>>()?.into_iter().all(|z| z);
    check("consequences are relations", consequences_expand_to_zero)?;
    let (con_ranks, con) = module_span_mod(&cons, prime)?;
    let dim_con = con.rank();

    let e7 = ExpansionMatrix::new(7)?;
    let (expansion_rank, null_rows) = nullspace7(&e7, prime)?;
    drop(e7);
    let nullity = basis.len() - expansion_rank;
    let (row_weight_min, row_weight_max) = row_weight_profile(&null_rows).unwrap_or((0, 0));

    let bundled = relation_report(&relation7()?, &con)?;

    let mut order: Vec<usize> = (0..null_rows.len()).collect();
    order.sort_by_key(|&i| null_rows[i].len());
    let mut module = con.clone();
    let mut filtration = Vec::new();
    for i in order {
        if module.rank() >= nullity {
            break;
        }
        if module.contains_sparse(&null_rows[i])? {
            continue;
        }
        let x = SkewElement::from_coeffs(7, dense_residues(&null_rows[i], basis.len()))?;
        module.insert_sparse_batch(x.orbit_mod(prime))?;
        filtration.push(FiltrationStep { row: i, terms: null_rows[i].len(), rank: module.rank() });
    }
    let closure_equals_nullspace = module.rank() == nullity;
    check("filtration reaches the nullspace", closure_equals_nullspace)?;
    drop(module);

    let first = filtration.first().ok_or_else(|| Error::CheckFailed("consequences already span the nullspace".into()))?;
    let residues: Vec<u32> = dense_residues(&null_rows[first.row], basis.len()).into_iter().map(|c| c as u32).collect();
    let (scale, lifted) = symmetric_lift(&residues, prime);
    let generator = SkewElement::from_coeffs(7, lifted)?;
    let expansion_zero = expand_element(&generator)?.is_zero();
    check("lifted generator is a relation over the integers", expansion_zero)?;
    let generator_report = GeneratorReport {
        terms: generator.term_count(),
        scale,
        coefficients: distinct_coefficients(&generator),
        expansion_zero,
        matches_bundled: in_signed_orbit(&generator, &relation7()?)?,
        relation: generator.to_string(),
    };

    let representations = representation_rows(7, &cons, Some(&generator))?;
    let lambdas = partitions(7);
    let total = |f: &dyn Fn(&RepRow) -> usize| representations.iter().map(|r| f(r) * r.dim).sum::<usize>();
    let new_rank = filtration[0].rank;
    let audits = vec![
        Audit { name: "skew".into(), expected: basis.len(), computed: total(&|r| 6 * r.dim - r.sym) },
        Audit { name: "con".into(), expected: dim_con, computed: total(&|r| r.sym_con - r.sym) },
        Audit { name: "con_new".into(), expected: new_rank, computed: total(&|r| r.sym_con_new.unwrap_or(0) - r.sym) },
        Audit { name: "all".into(), expected: nullity, computed: total(&|r| r.nul - r.sym) },
        Audit { name: "exp".into(), expected: expansion_rank, computed: total(&|r| r.exp) },
    ];
    if let Some(a) = audits.iter().find(|a| a.expected != a.computed) {
        return Err(Error::CheckFailed(format!("dimension audit {}: {} vs {}", a.name, a.computed, a.expected)));
    }
    let con_new_over_con = Decomposition::from_pairs(
        lambdas.iter().cloned().zip(representations.iter().map(|r| r.sym_con_new.unwrap_or(0) - r.sym_con)),
    );
    let all_over_con =
        Decomposition::from_pairs(lambdas.iter().cloned().zip(representations.iter().map(|r| r.nul - r.sym_con)));

    let mut discrepancies = Vec::new();
    for (i, r) in representations.iter().enumerate() {
        let rows = [
            ("sym", reference::SYM[i], r.sym),
            ("sym_con", reference::SYM_CON[i], r.sym_con),
            ("sym_con_new", reference::SYM_CON_NEW[i], r.sym_con_new.unwrap_or(0)),
            ("exp", reference::EXP[i], r.exp),
            ("nul", reference::NUL[i], r.nul),
        ];
        for (name, printed, computed) in rows {
            if printed != computed {
                discrepancies.push(Discrepancy { partition: r.partition.clone(), row: name.into(), printed, computed });
            }
        }
    }

    let report = Arity7Report {
        prime,
        basis_size: basis.len(),
        consequence_terms: cons.iter().map(|c| c.term_count()).collect(),
        consequences_expand_to_zero,
        con_ranks,
        dim_con,
        expansion_rank,
        nullity,
        dim_new: nullity - dim_con,
        row_weight_min,
        row_weight_max,
        filtration,
        closure_equals_nullspace,
        generator: generator_report,
        bundled,
        representations,
        audits,
        con_new_over_con,
        all_over_con,
        discrepancies,
    };
    Ok(Arity7 { report, con, nullspace: null_rows, generator })
}

fn dense_residues(v: &SparseRow, width: usize) -> Vec<i64> {
    let mut out = vec![0; width];
    for &(c, x) in v {
        out[c as usize] = x as i64;
    }
    out
}

/// Intermediate matrices by name, for dumping.
pub const MATRIX_NAMES: [&str; 7] = ["e3", "e5", "e7", "hnf5", "lll5", "con7", "nullspace7"];

/// A matrix ready for [`crate::linalg::dump::write_matrix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMatrix {
    pub rows: usize,
    pub cols: usize,
    pub modulus: u32,
    pub data: Vec<Vec<String>>,
}

impl NamedMatrix {
    fn from_signs(e: &ExpansionMatrix) -> Self {
        NamedMatrix {
            rows: e.rows(),
            cols: e.cols(),
            modulus: 0,
            data: e.entries().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }

    fn from_int(m: &IntMatrix) -> Self {
        NamedMatrix {
            rows: m.rows(),
            cols: m.cols(),
            modulus: 0,
            data: m.iter_rows().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }

    fn from_sparse(rows: &[SparseRow], cols: usize, modulus: u32) -> Self {
        NamedMatrix {
            rows: rows.len(),
            cols,
            modulus,
            data: rows
                .iter()
                .map(|r| dense_residues(r, cols).iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }

    fn from_echelon(e: &ModpEchelon) -> Self {
        let rows: Vec<SparseRow> = e
            .rcf_rows()
            .into_iter()
            .map(|(_, r)| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c as u32, x)).collect())
            .collect();
        NamedMatrix::from_sparse(&rows, e.width(), e.modulus())
    }

    pub fn write(&self, out: &mut impl std::io::Write) -> std::io::Result<()> {
        crate::linalg::dump::write_matrix(out, self.rows, self.cols, self.modulus, self.data.iter().map(|r| r.iter()))
    }
}

impl Arity5 {
    /// A matrix already computed by the run.
    pub fn matrix(&self, name: &str) -> Option<NamedMatrix> {
        match name {
            "e5" => Some(NamedMatrix::from_signs(&self.expansion)),
            "hnf5" => Some(NamedMatrix::from_int(&self.hnf_basis)),
            "lll5" => Some(NamedMatrix::from_int(&self.reduced_basis)),
            _ => None,
        }
    }
}

impl Arity7 {
    /// A matrix already computed by the run.
    pub fn matrix(&self, name: &str) -> Option<NamedMatrix> {
        match name {
            "con7" => Some(NamedMatrix::from_echelon(&self.con)),
            "nullspace7" => Some(NamedMatrix::from_sparse(&self.nullspace, self.con.width(), self.con.modulus())),
            _ => None,
        }
    }
}

/// Recomputes the named matrix. Arity-7 matrices are reduced modulo `prime`.
pub fn named_matrix(name: &str, delta: &BigRational, prime: u32) -> Result<NamedMatrix> {
    match name {
        "e3" => Ok(NamedMatrix::from_signs(&ExpansionMatrix::new(3)?)),
        "e5" => Ok(NamedMatrix::from_signs(&ExpansionMatrix::new(5)?)),
        "e7" => Ok(NamedMatrix::from_signs(&ExpansionMatrix::new(7)?)),
        "hnf5" => Ok(NamedMatrix::from_int(&run_arity5(delta, prime)?.hnf_basis)),
        "lll5" => Ok(NamedMatrix::from_int(&run_arity5(delta, prime)?.reduced_basis)),
        "con7" => {
            let (_, con) = module_span_mod(&arity7_consequences()?, prime)?;
            Ok(NamedMatrix::from_echelon(&con))
        }
        "nullspace7" => {
            let e7 = ExpansionMatrix::new(7)?;
            let (_, rows) = nullspace7(&e7, prime)?;
            Ok(NamedMatrix::from_sparse(&rows, e7.cols(), prime))
        }
        _ => Err(Error::Unsupported(format!("unknown matrix {name:?}; expected one of {}", MATRIX_NAMES.join(", ")))),
    }
}

/// Per-partition ranks for `rep`: arity 5 uses the 14-term relation and
/// arity 7 the consequences followed by the bundled 60-term relation.
pub fn rep_row(lambda: &Partition) -> Result<RepRow> {
    match lambda.n() {
        5 => representation_row(lambda, &[tt()], None),
        7 => representation_row(lambda, &arity7_consequences()?, Some(&relation7()?)),
        n => Err(Error::UnsupportedArity(n)),
    }
}

/// Printed values for a partition of 7, if tabulated.
pub fn reference_row(lambda: &Partition) -> Option<[usize; 5]> {
    let i = partitions(7).iter().position(|l| l == lambda)?;
    Some([reference::SYM[i], reference::SYM_CON[i], reference::SYM_CON_NEW[i], reference::EXP[i], reference::NUL[i]])
}

/// Multiplicity map of a decomposition, keyed by partition text.
pub fn multiplicities(d: &Decomposition) -> BTreeMap<String, usize> {
    d.parts.iter().map(|m| (m.partition.clone(), m.multiplicity)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sanity() {
        let r = sanity_checks().unwrap();
        assert_eq!(r.e3_nullity, 0);
        assert_eq!(r.tortkara_residual, vec![0; 24]);
    }

    #[test]
    fn bundled_relations_parse() {
        assert_eq!(tt().term_count(), 14);
        let r = relation7().unwrap();
        assert_eq!(r.term_count(), 60);
        assert_eq!(distinct_coefficients(&r), vec![-2, -1, 1, 2]);
    }

    #[test]
    fn weight_profile() {
        let rows = vec![vec![(0, 1), (3, 2)], vec![(1, 5)], vec![(0, 1), (1, 1), (2, 0)]];
        assert_eq!(row_weight_profile(&rows), Some((1, 2)));
        assert_eq!(row_weight_profile(&[]), None);
    }

    #[test]
    fn arity5_rows() {
        let row = rep_row(&Partition::parse("221").unwrap()).unwrap();
        assert_eq!(row.nul - row.sym, 2);
        assert_eq!(row.sym_con, row.nul);
    }
}
