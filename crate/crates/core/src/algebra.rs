//! Finite-dimensional Ω-algebras given by structure tensors, with optional
//! semigroup gradings.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{add_scaled, is_zero_vector, unit_vector, zero_vector, Vector};
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};
use crate::signature::{is_identifier, Semigroup, Signature};
use crate::term::Term;

/// The multilinear map of one operation, stored as its values on basis
/// tuples. Missing tuples map to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    arity: usize,
    entries: BTreeMap<Vec<usize>, Vector>,
}

impl Tensor {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.entries.iter()
    }

    pub fn get(&self, tuple: &[usize]) -> Option<&Vector> {
        self.entries.get(tuple)
    }
}

/// Degree assignment of each basis vector in a finite semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub group: Semigroup,
    pub assignment: Vec<usize>,
    /// Degrees of arity-0 operations.
    pub zeroary_degrees: BTreeMap<String, usize>,
}

impl Grading {
    pub fn new(group: Semigroup, assignment: Vec<usize>) -> Grading {
        Grading { group, assignment, zeroary_degrees: BTreeMap::new() }
    }

    /// Every basis vector in degree `element`.
    pub fn constant(group: Semigroup, dim: usize, element: usize) -> Grading {
        Grading::new(group, vec![element; dim])
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.assignment.iter().copied().collect()
    }

    pub fn component(&self, g: usize) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&i| self.assignment[i] == g).collect()
    }
}

/// One failure of the homogeneity condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingViolation {
    pub op: String,
    pub tuple: Vec<usize>,
    /// Basis index of the offending nonzero coordinate.
    pub coordinate: usize,
}

/// Why a grading was refused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingReport {
    pub problem: Option<String>,
    pub violations: Vec<GradingViolation>,
}

impl fmt::Display for GradingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = &self.problem {
            return write!(f, "{p}");
        }
        write!(f, "{} homogeneity violation(s)", self.violations.len())?;
        if let Some(v) = self.violations.first() {
            write!(f, ", first at {}{:?} coordinate {}", v.op, v.tuple, v.coordinate)?;
        }
        Ok(())
    }
}

/// A finite-dimensional Ω-algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredAlgebra {
    field: Field,
    basis: Vec<String>,
    signature: Signature,
    tensors: BTreeMap<String, Tensor>,
    grading: Option<Grading>,
}

impl StructuredAlgebra {
    /// An algebra with all operations zero.
    pub fn new(field: Field, basis: Vec<String>, signature: Signature) -> Result<StructuredAlgebra> {
        if basis.is_empty() {
            return Err(Error::InvalidAlgebra("dimension 0".into()));
        }
        for (i, b) in basis.iter().enumerate() {
            if !is_identifier(b) {
                return Err(Error::InvalidAlgebra(format!("basis name {b:?} is not an identifier")));
            }
            if basis[..i].contains(b) {
                return Err(Error::InvalidAlgebra(format!("duplicate basis name {b:?}")));
            }
        }
        let tensors = signature
            .ops()
            .iter()
            .map(|o| (o.name.clone(), Tensor { arity: o.arity, entries: BTreeMap::new() }))
            .collect();
        Ok(StructuredAlgebra { field, basis, signature, tensors, grading: None })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn tensor(&self, op: &str) -> Option<&Tensor> {
        self.tensors.get(op)
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim(), i)
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.field, self.dim())
    }

    /// Sets `op(b_{tuple}) = value`.
    pub fn set(&mut self, op: &str, tuple: &[usize], value: Vector) -> Result<()> {
        let dim = self.dim();
        let field = self.field;
        let t = self
            .tensors
            .get_mut(op)
            .ok_or_else(|| Error::InvalidAlgebra(format!("unknown operation {op}")))?;
        if tuple.len() != t.arity {
            return Err(Error::InvalidAlgebra(format!("{op} takes {} arguments", t.arity)));
        }
        if tuple.iter().any(|&i| i >= dim) || value.len() != dim {
            return Err(Error::InvalidAlgebra(format!("{op}{tuple:?}: index or length out of range")));
        }
        if value.iter().any(|s| s.field() != field) {
            return Err(Error::InvalidAlgebra(format!("{op}{tuple:?}: coefficient outside {field}")));
        }
        if is_zero_vector(&value) {
            t.entries.remove(tuple);
        } else {
            t.entries.insert(tuple.to_vec(), value);
        }
        Ok(())
    }

    /// Sets `op(b_{tuple}) = Σ c·b_j` from `(c, j)` pairs.
    pub fn set_combination(&mut self, op: &str, tuple: &[usize], terms: &[(i64, usize)]) -> Result<()> {
        let mut v = self.zero();
        for &(c, j) in terms {
            add_scaled(&mut v, &self.field.from_i64(c), &self.basis_vector(j));
        }
        self.set(op, tuple, v)
    }

    /// Applies an operation to arbitrary arguments by multilinear expansion.
    pub fn apply(&self, op: &str, args: &[&[Scalar]]) -> Result<Vector> {
        let t = self
            .tensors
            .get(op)
            .ok_or_else(|| Error::SignatureMismatch(format!("algebra has no operation {op}")))?;
        if args.len() != t.arity {
            return Err(Error::SignatureMismatch(format!("{op} takes {} arguments", t.arity)));
        }
        let mut out = self.zero();
        'entries: for (tuple, value) in &t.entries {
            let mut coef = self.field.one();
            for (slot, &i) in tuple.iter().enumerate() {
                let a = &args[slot][i];
                if a.is_zero() {
                    continue 'entries;
                }
                coef = &coef * a;
            }
            add_scaled(&mut out, &coef, value);
        }
        Ok(out)
    }

    /// Keeps only the coordinates of degree `g`.
    pub fn project(&self, g: &str, v: &[Scalar]) -> Result<Vector> {
        let gr = self.grading.as_ref().ok_or(Error::MissingGrading)?;
        let gi = gr
            .group
            .index_of(g)
            .ok_or_else(|| Error::InvalidGrading(format!("{g} is not an element of the grading semigroup")))?;
        Ok(v.iter()
            .enumerate()
            .map(|(i, x)| if gr.assignment[i] == gi { x.clone() } else { self.field.zero() })
            .collect())
    }

    /// Value of a term under a binding of its plain variables.
    pub fn eval_term(&self, t: &Term, binding: &HashMap<u32, Vector>) -> Result<Vector> {
        match t {
            Term::Var(i) => {
                let v = binding.get(i).ok_or(Error::UnboundVariable(*i))?;
                if v.len() != self.dim() {
                    return Err(Error::InvalidAlgebra(format!("x{i} bound to a vector of wrong length")));
                }
                Ok(v.clone())
            }
            Term::Graded(i, g) => Err(Error::MalformedTerm(format!(
                "decorated variable x{i}^{{{g}}} needs a graded evaluation"
            ))),
            Term::Proj(g, c) => {
                let inner = self.eval_term(c, binding)?;
                self.project(g, &inner)
            }
            Term::Op(name, cs) => {
                let vals = cs.iter().map(|c| self.eval_term(c, binding)).collect::<Result<Vec<_>>>()?;
                let refs: Vec<&[Scalar]> = vals.iter().map(Vec::as_slice).collect();
                self.apply(name, &refs)
            }
        }
    }

    pub fn eval(&self, p: &Polynomial, binding: &HashMap<u32, Vector>) -> Result<Vector> {
        if p.field() != self.field {
            return Err(Error::FieldMismatch(p.field(), self.field));
        }
        let mut out = self.zero();
        for (t, c) in p.iter() {
            add_scaled(&mut out, c, &self.eval_term(t, binding)?);
        }
        Ok(out)
    }

    /// Value of a graded polynomial (decorated leaves) under a homogeneous
    /// evaluation `x_i^{(g)} ↦ a ∈ A_g`.
    pub fn eval_graded(&self, p: &Polynomial, binding: &HashMap<(u32, String), Vector>) -> Result<Vector> {
        for ((i, g), v) in binding {
            if self.project(g, v)? != *v {
                return Err(Error::InvalidGrading(format!("value of x{i}^{{{g}}} is not homogeneous of degree {g}")));
            }
        }
        let mut out = self.zero();
        for (t, c) in p.iter() {
            add_scaled(&mut out, c, &self.eval_graded_term(t, binding)?);
        }
        Ok(out)
    }

    fn eval_graded_term(&self, t: &Term, binding: &HashMap<(u32, String), Vector>) -> Result<Vector> {
        match t {
            Term::Graded(i, g) => binding
                .get(&(*i, g.to_string()))
                .cloned()
                .ok_or(Error::UnboundVariable(*i)),
            Term::Var(i) => Err(Error::MalformedTerm(format!("plain variable x{i} in a graded polynomial"))),
            Term::Proj(g, c) => {
                let inner = self.eval_graded_term(c, binding)?;
                self.project(g, &inner)
            }
            Term::Op(name, cs) => {
                let vals = cs.iter().map(|c| self.eval_graded_term(c, binding)).collect::<Result<Vec<_>>>()?;
                let refs: Vec<&[Scalar]> = vals.iter().map(Vec::as_slice).collect();
                self.apply(name, &refs)
            }
        }
    }

    /// Homogeneity violations of a candidate grading, checked on every
    /// structure-tensor entry.
    pub fn grading_violations(&self, gr: &Grading) -> Result<Vec<GradingViolation>, String> {
        if gr.assignment.len() != self.dim() {
            return Err(format!("grading assigns {} degrees to {} basis vectors", gr.assignment.len(), self.dim()));
        }
        if gr.assignment.iter().any(|&g| g >= gr.group.len()) {
            return Err("grading uses an element outside the semigroup".into());
        }
        let mut out = Vec::new();
        for (name, t) in &self.tensors {
            for (tuple, value) in &t.entries {
                let expected = if tuple.is_empty() {
                    match gr.zeroary_degrees.get(name) {
                        Some(&g) => g,
                        None => return Err(format!("no degree declared for the constant {name}")),
                    }
                } else {
                    gr.group.product(tuple.iter().map(|&i| gr.assignment[i])).expect("nonempty")
                };
                for (k, c) in value.iter().enumerate() {
                    if !c.is_zero() && gr.assignment[k] != expected {
                        out.push(GradingViolation { op: name.clone(), tuple: tuple.clone(), coordinate: k });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Returns the graded algebra if every operation is homogeneous.
    pub fn attach_grading(&self, gr: Grading) -> std::result::Result<StructuredAlgebra, GradingReport> {
        match self.grading_violations(&gr) {
            Err(problem) => Err(GradingReport { problem: Some(problem), violations: Vec::new() }),
            Ok(v) if !v.is_empty() => Err(GradingReport { problem: None, violations: v }),
            Ok(_) => {
                let mut out = self.clone();
                out.grading = Some(gr);
                Ok(out)
            }
        }
    }

    pub fn without_grading(&self) -> StructuredAlgebra {
        let mut out = self.clone();
        out.grading = None;
        out
    }

    /// Sorted degrees actually used by the grading.
    pub fn support(&self) -> Option<BTreeSet<usize>> {
        self.grading.as_ref().map(Grading::support)
    }

    /// Basis indices grouped by degree; one block when ungraded.
    pub fn components(&self) -> Vec<(Option<usize>, Vec<usize>)> {
        match &self.grading {
            None => vec![(None, (0..self.dim()).collect())],
            Some(gr) => (0..gr.group.len()).map(|g| (Some(g), gr.component(g))).collect(),
        }
    }

    /// The homogeneous components of `v`, nonzero ones only.
    pub fn homogeneous_parts(&self, v: &[Scalar]) -> Vec<Vector> {
        match &self.grading {
            None => vec![v.to_vec()],
            Some(gr) => gr
                .support()
                .into_iter()
                .map(|g| {
                    v.iter()
                        .enumerate()
                        .map(|(i, x)| if gr.assignment[i] == g { x.clone() } else { self.field.zero() })
                        .collect::<Vector>()
                })
                .filter(|p| !is_zero_vector(p))
                .collect(),
        }
    }

    /// Same structure with an added operation.
    pub fn with_operation(&self, name: &str, arity: usize) -> Result<StructuredAlgebra> {
        let signature = self.signature.extend([(name, arity)])?;
        let mut out = self.clone();
        out.signature = signature;
        out.tensors.insert(name.to_string(), Tensor { arity, entries: BTreeMap::new() });
        Ok(out)
    }

    /// Relabels the basis: new basis vector `k` is old basis vector `perm[k]`.
    pub fn permute_basis(&self, perm: &[usize]) -> Result<StructuredAlgebra> {
        let n = self.dim();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidAlgebra("not a permutation of the basis".into()));
        }
        let mut inv = vec![0; n];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let mut out = StructuredAlgebra::new(self.field, perm.iter().map(|&p| self.basis[p].clone()).collect(), self.signature.clone())?;
        for (name, t) in &self.tensors {
            for (tuple, value) in &t.entries {
                let new_tuple: Vec<usize> = tuple.iter().map(|&i| inv[i]).collect();
                let new_value: Vector = (0..n).map(|k| value[perm[k]].clone()).collect();
                out.set(name, &new_tuple, new_value)?;
            }
        }
        if let Some(gr) = &self.grading {
            let mut g = gr.clone();
            g.assignment = perm.iter().map(|&p| gr.assignment[p]).collect();
            out = out.attach_grading(g).map_err(|r| Error::InvalidGrading(r.to_string()))?;
        }
        Ok(out)
    }

    /// Renames the basis vectors.
    pub fn rename_basis(&self, names: Vec<String>) -> Result<StructuredAlgebra> {
        if names.len() != self.dim() {
            return Err(Error::InvalidAlgebra("wrong number of basis names".into()));
        }
        let mut out = StructuredAlgebra::new(self.field, names, self.signature.clone())?;
        out.tensors = self.tensors.clone();
        out.grading = self.grading.clone();
        Ok(out)
    }
}

/// Block-diagonal sum. Basis vectors of the `k`-th summand are prefixed with
/// `b{k}_`; gradings combine when every summand is graded by the same
/// semigroup.
pub fn direct_sum_all(parts: &[&StructuredAlgebra]) -> Result<StructuredAlgebra> {
    let first = parts.first().ok_or_else(|| Error::InvalidAlgebra("empty direct sum".into()))?;
    for p in parts {
        if p.field != first.field {
            return Err(Error::FieldMismatch(first.field, p.field));
        }
        if !p.signature.same_as(&first.signature) {
            return Err(Error::SignatureMismatch("summands have different signatures".into()));
        }
    }
    let names: Vec<String> = parts
        .iter()
        .enumerate()
        .flat_map(|(k, p)| p.basis.iter().map(move |b| format!("b{}_{b}", k + 1)))
        .collect();
    let dim = names.len();
    let mut out = StructuredAlgebra::new(first.field, names, first.signature.clone())?;
    let mut offset = 0;
    let mut constants: BTreeMap<String, Vector> = BTreeMap::new();
    for p in parts {
        for (name, t) in &p.tensors {
            for (tuple, value) in &t.entries {
                let mut v = zero_vector(first.field, dim);
                v[offset..offset + p.dim()].clone_from_slice(value);
                if tuple.is_empty() {
                    let acc = constants.entry(name.clone()).or_insert_with(|| zero_vector(first.field, dim));
                    add_scaled(acc, &first.field.one(), &v);
                } else {
                    let shifted: Vec<usize> = tuple.iter().map(|i| i + offset).collect();
                    out.set(name, &shifted, v)?;
                }
            }
        }
        offset += p.dim();
    }
    for op in first.signature.of_arity(0) {
        if parts.iter().any(|p| p.tensors[&op.name].entries.is_empty()) {
            return Err(Error::InvalidAlgebra(format!("constant {} is not defined in every summand", op.name)));
        }
    }
    for (name, v) in constants {
        out.set(&name, &[], v)?;
    }
    let gradings: Vec<&Grading> = parts.iter().filter_map(|p| p.grading.as_ref()).collect();
    if gradings.len() == parts.len() && gradings.iter().all(|g| g.group == gradings[0].group) {
        let gr = Grading {
            group: gradings[0].group.clone(),
            assignment: gradings.iter().flat_map(|g| g.assignment.iter().copied()).collect(),
            zeroary_degrees: gradings[0].zeroary_degrees.clone(),
        };
        out = out.attach_grading(gr).map_err(|r| Error::InvalidGrading(r.to_string()))?;
    }
    Ok(out)
}

pub fn direct_sum(a: &StructuredAlgebra, b: &StructuredAlgebra) -> Result<StructuredAlgebra> {
    direct_sum_all(&[a, b])
}
