//! Graded isomorphism checks and searches for small algebras.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::StructuredAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{inverse, mat_vec, Echelon, Matrix, Vector};
use crate::rewrite::tuples;
use crate::scalar::{Field, Scalar};

/// Default number of random trials.
pub const DEFAULT_ISO_BUDGET: usize = 1_000_000;

/// Largest search space accepted by the exhaustive strategy.
pub const EXHAUSTIVE_LIMIT: f64 = 1e8;

/// A linear map between algebras; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap {
    pub matrix: Matrix,
}

impl GradedMap {
    pub fn identity(field: Field, n: usize) -> GradedMap {
        GradedMap { matrix: crate::linalg::identity(field, n) }
    }

    pub fn from_columns(columns: &[Vector]) -> GradedMap {
        let n = columns.first().map_or(0, Vec::len);
        GradedMap { matrix: (0..n).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect() }
    }

    pub fn column(&self, j: usize) -> Vector {
        self.matrix.iter().map(|row| row[j].clone()).collect()
    }

    pub fn apply(&self, v: &[Scalar], field: Field) -> Vector {
        mat_vec(&self.matrix, v, field)
    }

    pub fn inverse(&self, field: Field) -> Option<GradedMap> {
        inverse(&self.matrix, field).map(|matrix| GradedMap { matrix })
    }
}

/// Verdict of [`is_graded_isomorphism`].
#[derive(Clone, Debug, PartialEq)]
pub struct IsoCheck {
    pub ok: bool,
    pub reason: Option<String>,
    /// First operation and basis tuple that is not preserved.
    pub witness: Option<(String, Vec<usize>)>,
}

impl IsoCheck {
    fn fail(reason: impl Into<String>) -> IsoCheck {
        IsoCheck { ok: false, reason: Some(reason.into()), witness: None }
    }
}

/// Dimensions of the grading components, indexed by semigroup element.
fn component_dims(a: &StructuredAlgebra) -> Vec<usize> {
    a.components().iter().map(|(_, b)| b.len()).collect()
}

fn degree(a: &StructuredAlgebra, i: usize) -> usize {
    a.grading().map_or(0, |g| g.assignment[i])
}

fn compatible(a: &StructuredAlgebra, b: &StructuredAlgebra) -> std::result::Result<(), String> {
    if a.field() != b.field() {
        return Err(format!("fields differ: {} vs {}", a.field(), b.field()));
    }
    if !a.signature().same_as(b.signature()) {
        return Err("signatures differ".into());
    }
    if a.dim() != b.dim() {
        return Err(format!("dimensions differ: {} vs {}", a.dim(), b.dim()));
    }
    match (a.grading(), b.grading()) {
        (None, None) => Ok(()),
        (Some(x), Some(y)) if x.group == y.group => {
            let (da, db) = (component_dims(a), component_dims(b));
            if da == db {
                Ok(())
            } else {
                Err(format!("component dimensions differ: {da:?} vs {db:?}"))
            }
        }
        _ => Err("gradings are not over the same semigroup".into()),
    }
}

/// Whether `phi` is bijective, degree preserving and preserves every
/// operation on every basis tuple.
pub fn is_graded_isomorphism(phi: &GradedMap, a: &StructuredAlgebra, b: &StructuredAlgebra) -> Result<IsoCheck> {
    if let Err(reason) = compatible(a, b) {
        return Ok(IsoCheck::fail(reason));
    }
    let n = a.dim();
    if phi.matrix.len() != n || phi.matrix.iter().any(|r| r.len() != n) {
        return Ok(IsoCheck::fail("matrix has the wrong shape"));
    }
    for (i, row) in phi.matrix.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() && degree(b, i) != degree(a, j) {
                return Ok(IsoCheck::fail(format!("entry ({i},{j}) maps between different degrees")));
            }
        }
    }
    if phi.inverse(a.field()).is_none() {
        return Ok(IsoCheck::fail("map is not invertible"));
    }
    let images: Vec<Vector> = (0..n).map(|j| phi.column(j)).collect();
    if let Some(w) = first_unpreserved(phi, a, b, &images)? {
        return Ok(IsoCheck { ok: false, reason: Some("operation not preserved".into()), witness: Some(w) });
    }
    Ok(IsoCheck { ok: true, reason: None, witness: None })
}

fn preserved(
    a: &StructuredAlgebra,
    b: &StructuredAlgebra,
    op: &str,
    tuple: &[usize],
    images: &[Vector],
    phi: &dyn Fn(&[Scalar]) -> Vector,
) -> Result<bool> {
    let args: Vec<Vector> = tuple.iter().map(|&i| a.basis_vector(i)).collect();
    let refs: Vec<&[Scalar]> = args.iter().map(Vec::as_slice).collect();
    let left = phi(&a.apply(op, &refs)?);
    let mapped: Vec<&[Scalar]> = tuple.iter().map(|&i| images[i].as_slice()).collect();
    Ok(left == b.apply(op, &mapped)?)
}

fn first_unpreserved(
    phi: &GradedMap,
    a: &StructuredAlgebra,
    b: &StructuredAlgebra,
    images: &[Vector],
) -> Result<Option<(String, Vec<usize>)>> {
    let all: Vec<usize> = (0..a.dim()).collect();
    let field = a.field();
    for op in a.signature().ops() {
        for tuple in tuples(&all, op.arity) {
            if !preserved(a, b, &op.name, &tuple, images, &|v| phi.apply(v, field))? {
                return Ok(Some((op.name.clone(), tuple)));
            }
        }
    }
    Ok(None)
}

/// How to search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Every block matrix over a prime field.
    Exhaustive,
    /// Random block matrices with small entries.
    Random { budget: usize, seed: u64 },
}

/// Result of a search.
#[derive(Clone, Debug, PartialEq)]
pub enum IsoOutcome {
    Found(GradedMap),
    /// The exhaustive search finished without a witness.
    Exhausted,
    /// The random search ran out of trials.
    BudgetExhausted { trials: usize, field: Field },
}

impl IsoOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            IsoOutcome::Found(_) => "isomorphism found",
            IsoOutcome::Exhausted => "no graded isomorphism exists",
            IsoOutcome::BudgetExhausted { field: Field::Rationals, .. } => {
                "inconclusive: field not algebraically closed"
            }
            IsoOutcome::BudgetExhausted { .. } => "inconclusive: budget exhausted",
        }
    }
}

pub fn find_graded_isomorphism(a: &StructuredAlgebra, b: &StructuredAlgebra, strategy: Strategy) -> Result<IsoOutcome> {
    if compatible(a, b).is_err() {
        return Ok(IsoOutcome::Exhausted);
    }
    match strategy {
        Strategy::Exhaustive => exhaustive(a, b),
        Strategy::Random { budget, seed } => random(a, b, budget, seed),
    }
}

/// Indices of `b` in the component of degree `g`.
fn target_block(b: &StructuredAlgebra, g: usize) -> Vec<usize> {
    (0..b.dim()).filter(|&i| degree(b, i) == g).collect()
}

fn exhaustive(a: &StructuredAlgebra, b: &StructuredAlgebra) -> Result<IsoOutcome> {
    let field = a.field();
    let Some(q) = field.size() else {
        return Err(Error::Unsupported("exhaustive search needs a finite field; use the random strategy".into()));
    };
    let exponent: usize = component_dims(a).iter().map(|d| d * d).sum();
    let space = (q as f64).powi(exponent as i32);
    if space > EXHAUSTIVE_LIMIT {
        return Err(Error::SearchSpaceTooLarge(format!("{q}^{exponent}")));
    }
    let n = a.dim();
    // checks that become decidable once basis vector j is mapped
    let mut checks: Vec<Vec<(String, Vec<usize>)>> = vec![Vec::new(); n];
    let all: Vec<usize> = (0..n).collect();
    for op in a.signature().ops() {
        for tuple in tuples(&all, op.arity) {
            let args: Vec<Vector> = tuple.iter().map(|&i| a.basis_vector(i)).collect();
            let refs: Vec<&[Scalar]> = args.iter().map(Vec::as_slice).collect();
            let out = a.apply(&op.name, &refs)?;
            let last = tuple
                .iter()
                .copied()
                .chain(out.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i))
                .max()
                .unwrap_or(0);
            checks[last].push((op.name.clone(), tuple));
        }
    }
    let elems = field.elements().expect("finite");
    let candidates: Vec<Vec<Vector>> = (0..n)
        .map(|j| {
            let block = target_block(b, degree(a, j));
            vectors_on(field, n, &block, &elems)
        })
        .collect();
    let mut images: Vec<Vector> = Vec::with_capacity(n);
    let found = backtrack(a, b, &candidates, &checks, &mut images, &Echelon::new(field, n))?;
    Ok(found.map_or(IsoOutcome::Exhausted, |cols| IsoOutcome::Found(GradedMap::from_columns(&cols))))
}

/// All vectors supported on `block`, in lexicographic order of their
/// coordinates on the block.
fn vectors_on(field: Field, n: usize, block: &[usize], elems: &[Scalar]) -> Vec<Vector> {
    let q = elems.len();
    let total = q.pow(block.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut v = vec![field.zero(); n];
            for &slot in block.iter().rev() {
                v[slot] = elems[code % q].clone();
                code /= q;
            }
            v
        })
        .collect()
}

fn backtrack(
    a: &StructuredAlgebra,
    b: &StructuredAlgebra,
    candidates: &[Vec<Vector>],
    checks: &[Vec<(String, Vec<usize>)>],
    images: &mut Vec<Vector>,
    span: &Echelon,
) -> Result<Option<Vec<Vector>>> {
    let j = images.len();
    if j == candidates.len() {
        return Ok(Some(images.clone()));
    }
    let field = a.field();
    for v in &candidates[j] {
        let mut next = span.clone();
        if !next.insert(v.clone()) {
            continue;
        }
        images.push(v.clone());
        let partial = |w: &[Scalar]| -> Vector {
            let mut out = vec![field.zero(); a.dim()];
            for (k, c) in w.iter().enumerate() {
                if !c.is_zero() {
                    crate::linalg::add_scaled(&mut out, c, &images[k]);
                }
            }
            out
        };
        let mut ok = true;
        for (op, tuple) in &checks[j] {
            if !preserved(a, b, op, tuple, images, &partial)? {
                ok = false;
                break;
            }
        }
        if ok {
            if let Some(found) = backtrack(a, b, candidates, checks, images, &next)? {
                return Ok(Some(found));
            }
        }
        images.pop();
    }
    Ok(None)
}

fn random(a: &StructuredAlgebra, b: &StructuredAlgebra, budget: usize, seed: u64) -> Result<IsoOutcome> {
    let field = a.field();
    let pool: Vec<Scalar> = match field {
        Field::Rationals => {
            let half = field.one().try_div(&field.from_i64(2))?;
            vec![field.zero(), field.one(), -field.one(), field.from_i64(2), field.from_i64(-2), half.clone(), -half]
        }
        Field::Prime(_) => Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = a.dim();
    let blocks: Vec<Vec<usize>> = (0..n).map(|j| target_block(b, degree(a, j))).collect();
    for _ in 0..budget {
        let columns: Vec<Vector> = blocks
            .iter()
            .map(|block| {
                let mut v = vec![field.zero(); n];
                for &i in block {
                    v[i] = match field {
                        Field::Rationals => pool.choose(&mut rng).expect("nonempty pool").clone(),
                        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
                    };
                }
                v
            })
            .collect();
        let phi = GradedMap::from_columns(&columns);
        if first_unpreserved(&phi, a, b, &columns)?.is_none() && phi.inverse(field).is_some() {
            return Ok(IsoOutcome::Found(phi));
        }
    }
    Ok(IsoOutcome::BudgetExhausted { trials: budget, field })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_sum;
    use crate::samples::{group_algebra, matrix, pauli_m2, trivial_m2};
    use crate::signature::Semigroup;

    /// `M_2` Pauli with the basis reordered by conjugation with the swap.
    fn conjugated(f: Field) -> StructuredAlgebra {
        pauli_m2(f).permute_basis(&[3, 2, 1, 0]).unwrap()
    }

    #[test]
    fn checks() {
        let f = Field::prime(3).unwrap();
        let p = pauli_m2(f);
        assert!(is_graded_isomorphism(&GradedMap::identity(f, 4), &p, &p).unwrap().ok);
        let c = conjugated(f);
        let swap = GradedMap::from_columns(&(0..4).map(|j| c.basis_vector([3, 2, 1, 0][j])).collect::<Vec<_>>());
        assert!(is_graded_isomorphism(&swap, &p, &c).unwrap().ok);
        let r = is_graded_isomorphism(&GradedMap::identity(f, 4), &trivial_m2(f), &p).unwrap();
        assert!(!r.ok);
        assert!(r.reason.unwrap().contains("component dimensions"));
    }

    #[test]
    fn exhaustive_search() {
        let f = Field::prime(3).unwrap();
        let kz2 = group_algebra(&Semigroup::cyclic(2), f);
        assert_eq!(
            find_graded_isomorphism(&kz2, &kz2, Strategy::Exhaustive).unwrap(),
            IsoOutcome::Found(GradedMap::identity(f, 2))
        );
        let (p, c) = (pauli_m2(f), conjugated(f));
        let IsoOutcome::Found(phi) = find_graded_isomorphism(&p, &c, Strategy::Exhaustive).unwrap() else {
            panic!("expected an isomorphism")
        };
        assert!(is_graded_isomorphism(&phi, &p, &c).unwrap().ok);
        // over GF(2) the group algebra of Z_2 is local, unlike GF(2) x GF(2)
        let f2 = Field::prime(2).unwrap();
        let m1 = matrix(1, f2);
        let sum = direct_sum(&m1, &m1).unwrap();
        let local = group_algebra(&Semigroup::cyclic(2), f2).without_grading();
        assert_eq!(find_graded_isomorphism(&sum, &local, Strategy::Exhaustive).unwrap(), IsoOutcome::Exhausted);
        assert!(find_graded_isomorphism(&matrix(2, Field::Rationals), &matrix(2, Field::Rationals), Strategy::Exhaustive).is_err());
    }

    #[test]
    fn random_search() {
        let q = Field::Rationals;
        let m1 = matrix(1, q);
        let sum = direct_sum(&m1, &m1).unwrap();
        let kz2 = group_algebra(&Semigroup::cyclic(2), q).without_grading();
        let IsoOutcome::Found(phi) = find_graded_isomorphism(&sum, &kz2, Strategy::Random { budget: 100_000, seed: 7 }).unwrap()
        else {
            panic!("expected an isomorphism")
        };
        assert!(is_graded_isomorphism(&phi, &sum, &kz2).unwrap().ok);
        let inv = phi.inverse(q).unwrap();
        assert!(is_graded_isomorphism(&inv, &kz2, &sum).unwrap().ok);
    }
}
