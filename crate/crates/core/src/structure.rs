//! Graded ideals, graded simplicity and graded primeness.
//!
//! Ideals of an Ω-algebra are the subspaces invariant under the linear maps
//! `v ↦ ω(b_1, …, v, …, b_m)` with basis elements in the other slots; graded
//! ideals are additionally invariant under the projections `π_g`. Simplicity
//! is decided on the module over the algebra generated by these maps.

use crate::algebra::StructuredAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{
    characteristic_polynomial, is_zero_vector, kernel, mat_mul, mat_vec, rational_roots, Echelon, Matrix, Vector,
};
use crate::rewrite::tuples;
use crate::scalar::{Field, Scalar};

/// Largest dimension accepted by [`is_graded_prime`].
pub const DEFAULT_PRIME_DIMENSION_CAP: usize = 8;

/// Vectors enumerated at most when searching a finite field exhaustively.
const ENUMERATION_LIMIT: u64 = 200_000;

/// A subspace closed under all operations with the algebra in the other slots.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealBasis {
    pub vectors: Echelon,
    pub homogeneous: bool,
}

impl IdealBasis {
    pub fn dim(&self) -> usize {
        self.vectors.rank()
    }

    pub fn is_proper(&self) -> bool {
        self.dim() > 0 && !self.vectors.is_full()
    }

    /// Basis vectors written with the algebra's basis names.
    pub fn describe(&self, a: &StructuredAlgebra) -> Vec<String> {
        self.vectors.rows().iter().map(|v| describe_vector(a, v)).collect()
    }
}

pub fn describe_vector(a: &StructuredAlgebra, v: &[Scalar]) -> String {
    let mut out = String::new();
    for (c, name) in v.iter().zip(a.basis()) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        out.push_str(match (out.is_empty(), c.is_negative()) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Matrices of `v ↦ ω(b_1, …, v, …, b_m)` for every operation of positive
/// arity, slot and choice of basis elements elsewhere; with `graded`, also
/// the projections onto the grading components.
pub fn multiplication_maps(a: &StructuredAlgebra, graded: bool) -> Result<Vec<Matrix>> {
    let n = a.dim();
    let all: Vec<usize> = (0..n).collect();
    let mut maps = Vec::new();
    for op in a.signature().ops() {
        if op.arity == 0 {
            continue;
        }
        for slot in 0..op.arity {
            for others in tuples(&all, op.arity - 1) {
                let mut m: Matrix = vec![a.zero(); n];
                for j in 0..n {
                    let mut args: Vec<Vector> = others.iter().map(|&b| a.basis_vector(b)).collect();
                    args.insert(slot, a.basis_vector(j));
                    let refs: Vec<&[Scalar]> = args.iter().map(Vec::as_slice).collect();
                    let image = a.apply(&op.name, &refs)?;
                    for (i, x) in image.into_iter().enumerate() {
                        m[i][j] = x;
                    }
                }
                if m.iter().any(|r| !is_zero_vector(r)) && !maps.contains(&m) {
                    maps.push(m);
                }
            }
        }
    }
    if graded {
        if let Some(gr) = a.grading() {
            for g in gr.support() {
                let mut m: Matrix = vec![a.zero(); n];
                for (i, &d) in gr.assignment.iter().enumerate() {
                    if d == g {
                        m[i][i] = a.field().one();
                    }
                }
                maps.push(m);
            }
        }
    }
    Ok(maps)
}

/// Least subspace containing `seeds` and invariant under `maps`.
fn invariant_closure(field: Field, n: usize, maps: &[Matrix], seeds: Vec<Vector>) -> Echelon {
    let mut span = Echelon::new(field, n);
    let mut queue: Vec<Vector> = Vec::new();
    for s in seeds {
        if span.insert(s.clone()) {
            queue.push(s);
        }
    }
    while let Some(v) = queue.pop() {
        for m in maps {
            let w = mat_vec(m, &v, field);
            if span.insert(w.clone()) {
                queue.push(w);
                if span.is_full() {
                    return span;
                }
            }
        }
    }
    span
}

/// The (graded) ideal generated by `seed`. With `graded`, the homogeneous
/// components of the seed are all included.
pub fn ideal_generated_by(a: &StructuredAlgebra, seed: &[Scalar], graded: bool) -> Result<IdealBasis> {
    if seed.len() != a.dim() {
        return Err(Error::InvalidAlgebra("seed has the wrong length".into()));
    }
    let graded = graded && a.grading().is_some();
    let seeds = if graded { a.homogeneous_parts(seed) } else { vec![seed.to_vec()] };
    let maps = multiplication_maps(a, false)?;
    Ok(IdealBasis { vectors: invariant_closure(a.field(), a.dim(), &maps, seeds), homogeneous: graded })
}

/// Outcome of a simplicity test.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicityReport {
    pub simple: bool,
    /// A proper nonzero graded ideal when not simple.
    pub witness: Option<IdealBasis>,
    pub reason: String,
}

enum Split {
    Irreducible(&'static str),
    Proper(Echelon, &'static str),
}

fn flatten(m: &Matrix) -> Vector {
    m.iter().flatten().cloned().collect()
}

fn unflatten(v: &[Scalar], n: usize) -> Matrix {
    v.chunks(n).map(<[Scalar]>::to_vec).collect()
}

fn trace(m: &Matrix, field: Field) -> Scalar {
    (0..m.len()).fold(field.zero(), |acc, i| &acc + &m[i][i])
}

/// Span of all products of the maps, together with the identity.
fn enveloping(field: Field, n: usize, maps: &[Matrix]) -> Echelon {
    let ident = crate::linalg::identity(field, n);
    let mut span = Echelon::new(field, n * n);
    let mut queue = Vec::new();
    for m in std::iter::once(&ident).chain(maps) {
        if span.insert(flatten(m)) {
            queue.push(m.clone());
        }
    }
    while let Some(x) = queue.pop() {
        for g in maps {
            let y = mat_mul(g, &x, field);
            if span.insert(flatten(&y)) {
                queue.push(y);
                if span.is_full() {
                    return span;
                }
            }
        }
    }
    span
}

/// Linear maps commuting with every map in `maps`.
fn commutant(field: Field, n: usize, maps: &[Matrix]) -> Echelon {
    let mut rows: Matrix = Vec::new();
    for g in maps {
        for i in 0..n {
            for j in 0..n {
                // (XG - GX)_{ij}, unknown X_{rc} at r*n + c
                let mut row = vec![field.zero(); n * n];
                for k in 0..n {
                    row[i * n + k] = &row[i * n + k] + &g[k][j];
                    row[k * n + j] = &row[k * n + j] - &g[i][k];
                }
                if !is_zero_vector(&row) {
                    rows.push(row);
                }
            }
        }
    }
    kernel(&rows, field, n * n)
}

fn candidate_eigenvalues(c: &Matrix, field: Field) -> Vec<Scalar> {
    let mut out = vec![field.zero(), field.one(), -field.one()];
    match field {
        Field::Rationals => {
            if let Some(roots) = characteristic_polynomial(c, field).and_then(|p| rational_roots(&p)) {
                out.extend(roots);
            }
        }
        Field::Prime(p) if p <= 1000 => out.extend(field.elements().unwrap_or_default()),
        Field::Prime(_) => {}
    }
    let mut seen = Vec::new();
    out.retain(|x| {
        let new = !seen.contains(x);
        seen.push(x.clone());
        new
    });
    out
}

fn shifted(c: &Matrix, lambda: &Scalar) -> Matrix {
    let mut m = c.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = &row[i] - lambda;
    }
    m
}

/// Searches for a proper nonzero invariant subspace of `field^n`.
/// `components` lists coordinate blocks; every invariant subspace is assumed
/// to contain a vector supported on one block.
fn split(field: Field, n: usize, maps: &[Matrix], components: &[Vec<usize>]) -> Result<Split> {
    let env = enveloping(field, n, maps);
    if env.is_full() {
        return Ok(Split::Irreducible("the multiplication maps generate all linear maps"));
    }
    let basis: Vec<Matrix> = env.rows().iter().map(|r| unflatten(r, n)).collect();
    if field.characteristic() == 0 {
        let gram: Matrix = basis
            .iter()
            .map(|x| basis.iter().map(|y| trace(&mat_mul(x, y, field), field)).collect())
            .collect();
        let radical = kernel(&gram, field, basis.len());
        if radical.rank() > 0 {
            let mut image = Echelon::new(field, n);
            for coeffs in radical.rows() {
                let mut r: Matrix = vec![vec![field.zero(); n]; n];
                for (c, b) in coeffs.iter().zip(&basis) {
                    for i in 0..n {
                        crate::linalg::add_scaled(&mut r[i], c, &b[i]);
                    }
                }
                for j in 0..n {
                    image.insert(r.iter().map(|row| row[j].clone()).collect());
                }
            }
            return Ok(Split::Proper(image, "image of the radical of the multiplication algebra"));
        }
    }
    let comm = commutant(field, n, maps);
    if comm.rank() == 1 && field.characteristic() == 0 {
        return Ok(Split::Irreducible("semisimple multiplication algebra with scalar commutant"));
    }
    let cs: Vec<Matrix> = comm.rows().iter().map(|r| unflatten(r, n)).collect();
    let mut candidates = cs.clone();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            candidates.push(cs[i].iter().zip(&cs[j]).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect());
        }
    }
    for c in &candidates {
        for lambda in candidate_eigenvalues(c, field) {
            let k = kernel(&shifted(c, &lambda), field, n);
            if k.rank() > 0 && k.rank() < n {
                return Ok(Split::Proper(k, "eigenspace of an element of the commutant"));
            }
        }
    }
    if field.characteristic() == 0 && commutant_is_field(&cs, field, n) {
        return Ok(Split::Irreducible("semisimple multiplication algebra whose commutant is a field"));
    }
    if let Some(q) = field.size() {
        let count: u64 = components
            .iter()
            .map(|b| (q.saturating_pow(b.len() as u32) - 1) / (q - 1))
            .sum();
        if count <= ENUMERATION_LIMIT {
            for block in components {
                for v in projective_vectors(field, n, block) {
                    let sub = invariant_closure(field, n, maps, vec![v]);
                    if !sub.is_full() {
                        return Ok(Split::Proper(sub, "found by enumerating homogeneous vectors"));
                    }
                }
            }
            return Ok(Split::Irreducible("every homogeneous vector generates everything"));
        }
    }
    Err(Error::Undecided("could not split or certify irreducibility of the multiplication module".into()))
}

/// A commutative commutant of dimension 2 or 3 spanned by powers of one
/// element whose characteristic polynomial has no rational root is a field.
fn commutant_is_field(cs: &[Matrix], field: Field, n: usize) -> bool {
    let d = cs.len();
    if !(2..=3).contains(&d) {
        return false;
    }
    for x in cs {
        for y in cs {
            if mat_mul(x, y, field) != mat_mul(y, x, field) {
                return false;
            }
        }
    }
    let span = Echelon::from_rows(field, n * n, cs.iter().map(flatten));
    let coords = |m: &Matrix| -> Option<Vector> {
        // coordinates in the reduced basis: read off the pivot entries
        let v = flatten(m);
        if !span.contains(&v) {
            return None;
        }
        Some(span.pivots().iter().map(|&p| v[p].clone()).collect())
    };
    for c in cs {
        let left: Option<Matrix> = span
            .rows()
            .iter()
            .map(|r| coords(&mat_mul(c, &unflatten(r, n), field)))
            .collect();
        let Some(cols) = left else { continue };
        let mult: Matrix = (0..d).map(|i| cols.iter().map(|col| col[i].clone()).collect()).collect();
        if let Some(roots) = characteristic_polynomial(&mult, field).and_then(|p| rational_roots(&p)) {
            if roots.is_empty() {
                return true;
            }
        }
    }
    false
}

/// Nonzero vectors supported on `block`, one per line through the origin
/// (first nonzero coordinate equal to one).
fn projective_vectors(field: Field, n: usize, block: &[usize]) -> impl Iterator<Item = Vector> {
    let elems = field.elements().expect("finite field");
    let q = elems.len();
    let d = block.len();
    let block = block.to_vec();
    (0..d).flat_map(move |lead| {
        let elems = elems.clone();
        let block = block.clone();
        let free = d - lead - 1;
        (0..q.pow(free as u32)).map(move |mut code| {
            let mut v = vec![field.zero(); n];
            v[block[lead]] = field.one();
            for &slot in &block[lead + 1..] {
                v[slot] = elems[code % q].clone();
                code /= q;
            }
            v
        })
    })
}

fn has_nonzero_product(a: &StructuredAlgebra) -> bool {
    a.signature().ops().iter().filter(|o| o.arity >= 2).any(|o| {
        a.tensor(&o.name)
            .is_some_and(|t| t.entries().any(|(_, v)| !is_zero_vector(v)))
    })
}

fn blocks(a: &StructuredAlgebra) -> Vec<Vec<usize>> {
    a.components().into_iter().map(|(_, b)| b).collect()
}

/// Whether the only graded ideals are `0` and `A` (and some product is
/// nonzero). An ungraded algebra is tested for plain simplicity.
pub fn is_graded_simple(a: &StructuredAlgebra) -> Result<SimplicityReport> {
    let graded = a.grading().is_some();
    if !has_nonzero_product(a) {
        let witness = if a.dim() > 1 { Some(ideal_generated_by(a, &a.basis_vector(0), graded)?) } else { None };
        let witness = witness.filter(IdealBasis::is_proper);
        return Ok(SimplicityReport { simple: false, witness, reason: "all products vanish".into() });
    }
    let maps = multiplication_maps(a, graded)?;
    match split(a.field(), a.dim(), &maps, &blocks(a))? {
        Split::Irreducible(reason) => Ok(SimplicityReport { simple: true, witness: None, reason: reason.into() }),
        Split::Proper(sub, reason) => Ok(SimplicityReport {
            simple: false,
            witness: Some(IdealBasis { vectors: sub, homogeneous: graded }),
            reason: reason.into(),
        }),
    }
}

/// Outcome of a primeness test.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimeReport {
    pub prime: bool,
    /// Two nonzero graded ideals whose mutual products all vanish.
    pub witness: Option<(IdealBasis, IdealBasis)>,
    /// Whether every principal graded ideal was examined.
    pub exhaustive: bool,
}

/// Every value of an operation of arity at least two with one slot in `i`,
/// another in `j` and basis elements elsewhere is zero.
pub fn products_vanish(a: &StructuredAlgebra, i: &Echelon, j: &Echelon) -> Result<bool> {
    let all: Vec<usize> = (0..a.dim()).collect();
    for op in a.signature().ops().iter().filter(|o| o.arity >= 2) {
        for s in 0..op.arity {
            for t in 0..op.arity {
                if s == t {
                    continue;
                }
                for others in tuples(&all, op.arity - 2) {
                    for u in i.rows() {
                        for v in j.rows() {
                            let mut args: Vec<Vector> = others.iter().map(|&b| a.basis_vector(b)).collect();
                            let (lo, hi, first, second) = if s < t { (s, t, u, v) } else { (t, s, v, u) };
                            args.insert(lo, first.clone());
                            args.insert(hi, second.clone());
                            let refs: Vec<&[Scalar]> = args.iter().map(Vec::as_slice).collect();
                            if !is_zero_vector(&a.apply(&op.name, &refs)?) {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

pub fn is_graded_prime(a: &StructuredAlgebra) -> Result<PrimeReport> {
    is_graded_prime_with_cap(a, DEFAULT_PRIME_DIMENSION_CAP)
}

/// Pairwise test over principal graded ideals: those of homogeneous basis
/// vectors and of the simplicity witness, and over small finite fields those
/// of every homogeneous vector.
pub fn is_graded_prime_with_cap(a: &StructuredAlgebra, cap: usize) -> Result<PrimeReport> {
    if a.dim() > cap {
        return Err(Error::DimensionCap { dim: a.dim(), cap });
    }
    let graded = a.grading().is_some();
    let simple = is_graded_simple(a);
    if let Ok(SimplicityReport { simple: true, .. }) = simple {
        return Ok(PrimeReport { prime: true, witness: None, exhaustive: true });
    }
    let mut seeds: Vec<Vector> = (0..a.dim()).map(|i| a.basis_vector(i)).collect();
    if let Ok(SimplicityReport { witness: Some(w), .. }) = &simple {
        seeds.extend(w.vectors.rows().iter().flat_map(|v| a.homogeneous_parts(v)));
    }
    let mut exhaustive = false;
    if let Some(q) = a.field().size() {
        let count: u64 = blocks(a).iter().map(|b| (q.saturating_pow(b.len() as u32) - 1) / (q - 1)).sum();
        if count <= ENUMERATION_LIMIT {
            for b in blocks(a) {
                seeds.extend(projective_vectors(a.field(), a.dim(), &b));
            }
            exhaustive = true;
        }
    }
    let mut ideals: Vec<IdealBasis> = Vec::new();
    for s in seeds {
        if is_zero_vector(&s) {
            continue;
        }
        let ideal = ideal_generated_by(a, &s, graded)?;
        if !ideals.iter().any(|i| i.vectors == ideal.vectors) {
            ideals.push(ideal);
        }
    }
    for (x, i) in ideals.iter().enumerate() {
        for j in &ideals[x..] {
            if products_vanish(a, &i.vectors, &j.vectors)? {
                return Ok(PrimeReport { prime: false, witness: Some((i.clone(), j.clone())), exhaustive });
            }
        }
    }
    Ok(PrimeReport { prime: true, witness: None, exhaustive })
}
