//! Multilinear identity spaces, their comparison, and the translation
//! between graded polynomials and polynomials in projections.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::StructuredAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{add_scaled, is_zero_vector, Echelon, Vector};
use crate::poly::Polynomial;
use crate::rewrite::{tuples, GradedSignature, RewriteSystem, Theory};
use crate::scalar::{Field, Scalar};
use crate::signature::Semigroup;
use crate::term::{Symbol, Term};

/// `x_i^{(g)} ↦ π_g(x_i)`.
pub fn translate_to_omega(f: &Polynomial, group: &Semigroup) -> Result<Polynomial> {
    f.map_terms(|t| Ok(Polynomial::from_term(to_omega(t, group)?, f.field())))
}

fn to_omega(t: &Term, group: &Semigroup) -> Result<Term> {
    match t {
        Term::Graded(i, g) => {
            if group.index_of(g).is_none() {
                return Err(Error::InvalidGrading(format!("decoration {g} is not a semigroup element")));
            }
            Ok(Term::Proj(g.clone(), Box::new(Term::Var(*i))))
        }
        Term::Var(i) => Err(Error::MalformedTerm(format!("undecorated variable x{i} in a graded polynomial"))),
        Term::Proj(g, c) => Ok(Term::Proj(g.clone(), Box::new(to_omega(c, group)?))),
        Term::Op(name, cs) => Ok(Term::Op(name.clone(), cs.iter().map(|c| to_omega(c, group)).collect::<Result<_>>()?)),
    }
}

/// Inverse of [`translate_to_omega`] on polynomials supported on normal
/// monomials.
pub fn translate_from_omega(p: &Polynomial) -> Result<Polynomial> {
    p.map_terms(|t| Ok(Polynomial::from_term(from_omega(t)?, p.field())))
}

fn from_omega(t: &Term) -> Result<Term> {
    let not_normal = || Error::NotNormal(format!("{t}; normalize before translating"));
    match t {
        Term::Proj(g, c) => match **c {
            Term::Var(i) => Ok(Term::Graded(i, g.clone())),
            _ => Err(not_normal()),
        },
        Term::Op(name, cs) => Ok(Term::Op(name.clone(), cs.iter().map(from_omega).collect::<Result<_>>()?)),
        Term::Var(_) | Term::Graded(..) => Err(not_normal()),
    }
}

/// A rewrite system matching a family of algebras: the common grading
/// semigroup with the union of the supports, or no grading at all.
pub fn system_for(algebras: &[&StructuredAlgebra], theory: Theory) -> Result<RewriteSystem> {
    let first = algebras.first().ok_or_else(|| Error::InvalidAlgebra("no algebras given".into()))?;
    for a in algebras {
        if !a.signature().same_as(first.signature()) {
            return Err(Error::SignatureMismatch("algebras have different signatures".into()));
        }
        if a.field() != first.field() {
            return Err(Error::FieldMismatch(a.field(), first.field()));
        }
    }
    let gradings: Vec<_> = algebras.iter().map(|a| a.grading()).collect();
    let sig = if gradings.iter().all(Option::is_none) {
        GradedSignature::ungraded(first.signature().clone())
    } else {
        let Some(first_gr) = gradings.iter().flatten().next() else { unreachable!() };
        if gradings.iter().any(|g| g.map(|g| &g.group) != Some(&first_gr.group)) {
            return Err(Error::InvalidGrading("algebras must all be graded by the same semigroup".into()));
        }
        let support: BTreeSet<usize> = gradings.iter().flatten().flat_map(|g| g.support()).collect();
        GradedSignature::graded(
            first.signature().clone(),
            first_gr.group.clone(),
            support,
            first_gr.zeroary_degrees.clone(),
        )?
    };
    RewriteSystem::new(sig, theory, first.field())
}

/// The multilinear identities of one algebra in a fixed degree.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentitySpace {
    pub degree: usize,
    pub constraint: Option<Vec<usize>>,
    pub monomials: Vec<Term>,
    /// Reduced row echelon rows; each row holds coefficients of `monomials`.
    pub nullspace: Echelon,
}

impl IdentitySpace {
    pub fn field(&self) -> Field {
        self.nullspace.field()
    }

    pub fn dim(&self) -> usize {
        self.nullspace.rank()
    }

    pub fn row_polynomial(&self, row: &[Scalar]) -> Polynomial {
        Polynomial::from_terms(
            self.field(),
            row.iter().zip(&self.monomials).map(|(c, t)| (c.clone(), t.clone())),
        )
    }

    pub fn identities(&self) -> Vec<Polynomial> {
        self.nullspace.rows().iter().map(|r| self.row_polynomial(r)).collect()
    }

    /// Coordinates of a polynomial supported on `monomials`.
    pub fn coordinates(&self, p: &Polynomial) -> Option<Vector> {
        let mut v = vec![self.field().zero(); self.monomials.len()];
        for (t, c) in p.iter() {
            let k = self.monomials.binary_search(t).ok()?;
            v[k] = c.clone();
        }
        Some(v)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.coordinates(p).is_some_and(|v| self.nullspace.contains(&v))
    }

    /// Caveat to print with results.
    pub fn note(&self) -> Option<&'static str> {
        (self.field().characteristic() != 0).then_some("multilinear identities only")
    }
}

/// Shared subterm graph of a list of monomials, evaluated bottom-up.
struct Compiled {
    nodes: Vec<Node>,
    roots: Vec<usize>,
}

enum Node {
    Var(u32),
    Proj(Symbol, usize),
    Op(Symbol, Vec<usize>),
}

impl Compiled {
    fn new(monomials: &[Term]) -> Result<Compiled> {
        let mut ids: HashMap<Term, usize> = HashMap::new();
        let mut nodes = Vec::new();
        let mut roots = Vec::with_capacity(monomials.len());
        for m in monomials {
            roots.push(Self::add(m, &mut ids, &mut nodes)?);
        }
        Ok(Compiled { nodes, roots })
    }

    fn add(t: &Term, ids: &mut HashMap<Term, usize>, nodes: &mut Vec<Node>) -> Result<usize> {
        if let Some(&k) = ids.get(t) {
            return Ok(k);
        }
        let node = match t {
            Term::Var(i) => Node::Var(*i),
            Term::Graded(i, g) => {
                return Err(Error::MalformedTerm(format!("decorated variable x{i}^{{{g}}} must be translated first")))
            }
            Term::Proj(g, c) => Node::Proj(g.clone(), Self::add(c, ids, nodes)?),
            Term::Op(name, cs) => Node::Op(name.clone(), cs.iter().map(|c| Self::add(c, ids, nodes)).collect::<Result<_>>()?),
        };
        nodes.push(node);
        ids.insert(t.clone(), nodes.len() - 1);
        Ok(nodes.len() - 1)
    }

    /// Values of every root with `x_i` bound to `values[i - 1]`.
    fn eval(&self, a: &StructuredAlgebra, values: &[Vector]) -> Result<Vec<Vector>> {
        let mut vals: Vec<Vector> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                Node::Var(i) => values
                    .get(*i as usize - 1)
                    .cloned()
                    .ok_or(Error::UnboundVariable(*i))?,
                Node::Proj(g, c) => a.project(g, &vals[*c])?,
                Node::Op(name, cs) => {
                    if cs.iter().any(|&c| is_zero_vector(&vals[c])) {
                        a.zero()
                    } else {
                        let refs: Vec<&[Scalar]> = cs.iter().map(|&c| vals[c].as_slice()).collect();
                        a.apply(name, &refs)?
                    }
                }
            };
            vals.push(v);
        }
        Ok(self.roots.iter().map(|&r| vals[r].clone()).collect())
    }
}

fn check_compatible(a: &StructuredAlgebra, rs: &RewriteSystem) -> Result<()> {
    if a.field() != rs.field() {
        return Err(Error::FieldMismatch(a.field(), rs.field()));
    }
    for op in rs.signature().base.ops() {
        if op.arity >= 1 && a.signature().arity(&op.name) != Some(op.arity) {
            return Err(Error::SignatureMismatch(format!("algebra lacks {}/{}", op.name, op.arity)));
        }
    }
    if let Some(gd) = rs.grade_data() {
        match a.grading() {
            Some(g) if g.group == gd.group => {}
            Some(_) => return Err(Error::InvalidGrading("algebra is graded by a different semigroup".into())),
            None => return Err(Error::MissingGrading),
        }
    }
    Ok(())
}

/// Multilinear identities of degree `n`, optionally with the grading
/// component of each variable fixed. Rows are identities; the space is the
/// nullspace of the monomial-by-evaluation matrix over basis tuples.
pub fn identity_space(
    a: &StructuredAlgebra,
    rs: &RewriteSystem,
    n: usize,
    constraint: Option<&[usize]>,
) -> Result<IdentitySpace> {
    check_compatible(a, rs)?;
    let monomials = rs.normal_multilinear_monomials(n, constraint)?;
    let compiled = Compiled::new(&monomials)?;
    let slots: Vec<Vec<usize>> = (0..n)
        .map(|k| match (constraint, a.grading()) {
            (Some(c), Some(g)) => g.component(c[k]),
            _ => (0..a.dim()).collect(),
        })
        .collect();
    let mut span = Echelon::new(a.field(), monomials.len());
    let mut seen: HashSet<Vector> = HashSet::new();
    let mut choice = vec![0usize; n];
    if slots.iter().all(|s| !s.is_empty()) {
        'tuples: loop {
            let values: Vec<Vector> = (0..n).map(|k| a.basis_vector(slots[k][choice[k]])).collect();
            let images = compiled.eval(a, &values)?;
            for coord in 0..a.dim() {
                let column: Vector = images.iter().map(|v| v[coord].clone()).collect();
                if !is_zero_vector(&column) && seen.insert(column.clone()) {
                    span.insert(column);
                    if span.is_full() {
                        break 'tuples;
                    }
                }
            }
            let mut k = n;
            loop {
                if k == 0 {
                    break 'tuples;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < slots[k].len() {
                    break;
                }
                choice[k] = 0;
            }
        }
    }
    Ok(IdentitySpace {
        degree: n,
        constraint: constraint.map(<[usize]>::to_vec),
        monomials,
        nullspace: span.orthogonal_complement(),
    })
}

/// Degree constraints enumerated for a comparison, in lexicographic order;
/// `[None]` for ungraded systems.
fn constraints(rs: &RewriteSystem, n: usize) -> Vec<Option<Vec<usize>>> {
    match rs.grade_data() {
        None => vec![None],
        Some(gd) => {
            let support: Vec<usize> = gd.support.iter().copied().collect();
            tuples(&support, n).into_iter().map(Some).collect()
        }
    }
}

/// Outcome of comparing identity spaces degree by degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub equal: bool,
    pub max_degree: usize,
    /// First degree and constraint where the spaces differ.
    pub mismatch: Option<(usize, Option<Vec<usize>>)>,
}

pub fn same_identities_upto(
    a: &StructuredAlgebra,
    b: &StructuredAlgebra,
    rs: &RewriteSystem,
    max_degree: usize,
) -> Result<Comparison> {
    for n in 1..=max_degree {
        for c in constraints(rs, n) {
            let sa = identity_space(a, rs, n, c.as_deref())?;
            let sb = identity_space(b, rs, n, c.as_deref())?;
            if sa.nullspace.rows() != sb.nullspace.rows() {
                return Ok(Comparison { equal: false, max_degree, mismatch: Some((n, c)) });
            }
        }
    }
    Ok(Comparison { equal: true, max_degree, mismatch: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

/// An identity of one algebra that fails in the other.
#[derive(Clone, Debug, PartialEq)]
pub struct Separation {
    pub degree: usize,
    pub constraint: Option<Vec<usize>>,
    /// The identity over the extended signature.
    pub identity: Polynomial,
    /// The same identity with decorated variables, for graded systems.
    pub graded: Option<Polynomial>,
    pub satisfied_by: Side,
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let who = match self.satisfied_by {
            Side::First => "first",
            Side::Second => "second",
        };
        write!(f, "degree {}: {} (satisfied by the {who} algebra)", self.degree, self.identity)
    }
}

/// Lowest degree first; within it the row whose monomial support is least
/// in term order.
pub fn find_separating_identity(
    a: &StructuredAlgebra,
    b: &StructuredAlgebra,
    rs: &RewriteSystem,
    max_degree: usize,
) -> Result<Option<Separation>> {
    for n in 1..=max_degree {
        let mut best: Option<(Vec<Term>, Separation)> = None;
        for c in constraints(rs, n) {
            let sa = identity_space(a, rs, n, c.as_deref())?;
            let sb = identity_space(b, rs, n, c.as_deref())?;
            for (mine, other, side) in [(&sa, &sb, Side::First), (&sb, &sa, Side::Second)] {
                for row in mine.nullspace.rows() {
                    if other.nullspace.contains(row) {
                        continue;
                    }
                    let identity = mine.row_polynomial(row);
                    let key: Vec<Term> = identity.iter().map(|(t, _)| t.clone()).collect();
                    if best.as_ref().is_some_and(|(k, _)| *k <= key) {
                        continue;
                    }
                    let graded = match rs.grade_data() {
                        Some(_) => Some(translate_from_omega(&identity)?),
                        None => None,
                    };
                    let sep = Separation { degree: n, constraint: c.clone(), identity, graded, satisfied_by: side };
                    best = Some((key, sep));
                }
            }
        }
        if let Some((_, sep)) = best {
            return Ok(Some(sep));
        }
    }
    Ok(None)
}

/// Result of random testing of a not necessarily multilinear polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum ProbabilisticVerdict {
    /// No nonzero value in this many trials.
    Passed { trials: usize },
    /// A binding with nonzero value; a certificate that `p` is not an identity.
    Counterexample { binding: Vec<(u32, Vector)>, value: Vector },
}

/// Random evaluations with coordinates drawn from a set of at least
/// `2·(total degree)·dim` field elements when the field allows it.
pub fn probabilistic_identity_check(
    a: &StructuredAlgebra,
    p: &Polynomial,
    trials: usize,
    seed: u64,
) -> Result<ProbabilisticVerdict> {
    let mut vars: BTreeSet<u32> = BTreeSet::new();
    let mut degree = 1;
    for (t, _) in p.iter() {
        let counts = t.variable_counts();
        degree = degree.max(counts.values().sum::<usize>());
        vars.extend(counts.keys());
    }
    let bound = (2 * degree * a.dim()).max(2) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = a.field();
    let mut draw = || -> Scalar {
        match field {
            Field::Rationals => field.from_i64(rng.gen_range(-bound..=bound)),
            Field::Prime(q) => field.from_i64(rng.gen_range(0..q as i64)),
        }
    };
    for _ in 0..trials {
        let binding: HashMap<u32, Vector> = vars.iter().map(|&i| (i, (0..a.dim()).map(|_| draw()).collect())).collect();
        let value = a.eval(p, &binding)?;
        if !is_zero_vector(&value) {
            let mut binding: Vec<(u32, Vector)> = binding.into_iter().collect();
            binding.sort_by_key(|(i, _)| *i);
            return Ok(ProbabilisticVerdict::Counterexample { binding, value });
        }
    }
    Ok(ProbabilisticVerdict::Passed { trials })
}

/// Evaluates a polynomial on every basis tuple; `None` if it vanishes on all
/// of them, otherwise the first tuple with a nonzero value.
pub fn basis_tuple_counterexample(a: &StructuredAlgebra, p: &Polynomial, n: usize) -> Result<Option<Vec<usize>>> {
    let all: Vec<usize> = (0..a.dim()).collect();
    for tuple in tuples(&all, n) {
        let binding: HashMap<u32, Vector> =
            tuple.iter().enumerate().map(|(k, &i)| (k as u32 + 1, a.basis_vector(i))).collect();
        let mut value = a.zero();
        for (t, c) in p.iter() {
            add_scaled(&mut value, c, &a.eval_term(t, &binding)?);
        }
        if !is_zero_vector(&value) {
            return Ok(Some(tuple));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{matrix, pauli_m2, trivial_m2};
    use crate::signature::Signature;

    fn x(i: u32) -> Term {
        Term::var(i)
    }

    #[test]
    fn translation_round_trip() {
        let q = Field::Rationals;
        let z2 = Semigroup::cyclic(2);
        let f = Polynomial::from_term(Term::binary("mul", Term::graded(1, "0"), Term::graded(2, "1")), q);
        let omega = translate_to_omega(&f, &z2).unwrap();
        assert_eq!(omega.to_string(), "mul(pi[0](x1),pi[1](x2))");
        assert_eq!(translate_from_omega(&omega).unwrap(), f);
        assert!(translate_from_omega(&Polynomial::from_term(x(1), q)).is_err());
        assert!(translate_to_omega(&Polynomial::from_term(Term::graded(1, "7"), q), &z2).is_err());
    }

    #[test]
    fn odd_projection_vanishes_on_trivial_grading() {
        let f = Field::prime(7).unwrap();
        let a = trivial_m2(f);
        let rs = system_for(&[&a, &pauli_m2(f)], Theory::Free).unwrap();
        let space = identity_space(&a, &rs, 1, Some(&[1])).unwrap();
        assert_eq!(space.dim(), 1);
        assert_eq!(space.identities()[0].to_string(), "pi[1](x1)");
        assert_eq!(space.note(), Some("multilinear identities only"));
    }

    #[test]
    fn associativity_and_noncommutativity() {
        let q = Field::Rationals;
        let m2 = matrix(2, q);
        let rs = RewriteSystem::ungraded(Signature::binary(), q).unwrap();
        assert_eq!(identity_space(&m2, &rs, 2, None).unwrap().dim(), 0);
        let three = identity_space(&m2, &rs, 3, None).unwrap();
        let mul = |a, b| Term::binary("mul", a, b);
        let assoc = Polynomial::from_terms(
            q,
            [(q.one(), mul(mul(x(1), x(2)), x(3))), (q.from_i64(-1), mul(x(1), mul(x(2), x(3))))],
        );
        assert!(three.contains(&assoc));
        // the associator in each of the 6 orders, nothing else
        assert_eq!(three.dim(), 6);
    }

    #[test]
    fn separation_of_gradings() {
        let f = Field::prime(7).unwrap();
        let (a, b) = (trivial_m2(f), pauli_m2(f));
        let rs = system_for(&[&a, &b], Theory::Free).unwrap();
        let cmp = same_identities_upto(&a, &b, &rs, 2).unwrap();
        assert_eq!(cmp.mismatch, Some((1, Some(vec![1]))));
        let sep = find_separating_identity(&a, &b, &rs, 2).unwrap().unwrap();
        assert_eq!(sep.identity.to_string(), "pi[1](x1)");
        assert_eq!(sep.graded.unwrap().to_string(), "x1^{1}");
        assert_eq!(sep.satisfied_by, Side::First);
        assert!(find_separating_identity(&a, &a, &rs, 2).unwrap().is_none());
    }

    #[test]
    fn probabilistic_check() {
        let q = Field::Rationals;
        let m2 = matrix(2, q);
        let mul = |a, b| Term::binary("mul", a, b);
        let comm = Polynomial::from_terms(q, [(q.one(), mul(x(1), x(2))), (q.from_i64(-1), mul(x(2), x(1)))]);
        assert!(matches!(
            probabilistic_identity_check(&m2, &comm, 50, 1).unwrap(),
            ProbabilisticVerdict::Counterexample { .. }
        ));
        // [x^2, y] is not an identity, [[x,y]^2, z] is (M_2 Hall identity)
        let c = |a: Term, b: Term| vec![(q.one(), mul(a.clone(), b.clone())), (q.from_i64(-1), mul(b, a))];
        let xy = c(x(1), x(2));
        let mut sq = Polynomial::zero(q);
        for (c1, t1) in &xy {
            for (c2, t2) in &xy {
                sq.add_term(c1 * c2, mul(t1.clone(), t2.clone()));
            }
        }
        let mut hall = Polynomial::zero(q);
        for (t, c0) in sq.iter() {
            hall.add_term(c0.clone(), mul(t.clone(), x(3)));
            hall.add_term(-c0.clone(), mul(x(3), t.clone()));
        }
        assert_eq!(probabilistic_identity_check(&m2, &hall, 30, 2).unwrap(), ProbabilisticVerdict::Passed { trials: 30 });
    }
}
