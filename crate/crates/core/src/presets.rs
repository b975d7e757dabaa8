//! Ready-made signatures with their rewrite rules, defining identities and
//! sample algebras: involutions, superinvolutions, traces, Hopf and
//! generalized actions, and the colour Lie axioms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::algebra::{direct_sum_all, Grading, StructuredAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{add_scaled, identity, is_zero_vector, mat_mul, zero_vector, Matrix, Vector};
use crate::poly::Polynomial;
use crate::rewrite::{tuples, ActionRules, GradedSignature, RewriteSystem, Theory};
use crate::samples::{matrix, pauli_m2, unit};
use crate::scalar::{Field, Scalar};
use crate::signature::{is_identifier, Semigroup, Signature};
use crate::structure::describe_vector;
use crate::term::{Symbol, Term};

/// A named bundle of signature, rules, identities and samples.
#[derive(Clone, Debug)]
pub struct Preset {
    pub name: String,
    pub field: Field,
    pub signature: GradedSignature,
    pub theory: Theory,
    /// Multilinear identities every member satisfies.
    pub defining_identities: Vec<(String, Polynomial)>,
    pub samples: Vec<(String, StructuredAlgebra)>,
    pub finitely_normalizing: bool,
}

impl Preset {
    pub fn rewrite_system(&self) -> Result<RewriteSystem> {
        let mut rs = RewriteSystem::new(self.signature.clone(), self.theory.clone(), self.field)?;
        rs.set_finitely_normalizing(self.finitely_normalizing);
        Ok(rs)
    }
}

fn x(i: u32) -> Term {
    Term::var(i)
}

fn difference(field: Field, lhs: Term, rhs: Vec<(i64, Term)>) -> Polynomial {
    let mut p = Polynomial::from_term(lhs, field);
    for (c, t) in rhs {
        p.add_term(field.from_i64(-c), t);
    }
    p
}

fn involution_identities(field: Field) -> Vec<(String, Polynomial)> {
    let star = |t| Term::unary("star", t);
    let mul = |a, b| Term::binary("mul", a, b);
    vec![
        ("star(star(x1)) = x1".into(), difference(field, star(star(x(1))), vec![(1, x(1))])),
        (
            "star(mul(x1,x2)) = mul(star(x2),star(x1))".into(),
            difference(field, star(mul(x(1), x(2))), vec![(1, mul(star(x(2)), star(x(1))))]),
        ),
    ]
}

fn involution_signature() -> Signature {
    Signature::new([("mul", 2), ("star", 1)]).expect("valid")
}

/// `M_2` with an involution given on matrix units as `(sign, image)`.
fn m2_with_star(field: Field, images: [(i64, usize); 4]) -> StructuredAlgebra {
    let mut a = matrix(2, field).with_operation("star", 1).expect("fresh name");
    for (i, (s, j)) in images.into_iter().enumerate() {
        a.set_combination("star", &[i], &[(s, j)]).expect("valid");
    }
    a
}

pub fn transpose_m2(field: Field) -> StructuredAlgebra {
    m2_with_star(field, [(1, unit(2, 0, 0)), (1, unit(2, 1, 0)), (1, unit(2, 0, 1)), (1, unit(2, 1, 1))])
}

/// `x ↦ adj(x)`: swaps the diagonal units and negates the others.
pub fn symplectic_m2(field: Field) -> StructuredAlgebra {
    m2_with_star(field, [(1, unit(2, 1, 1)), (-1, unit(2, 0, 1)), (-1, unit(2, 1, 0)), (1, unit(2, 0, 0))])
}

/// `star(star(x)) = x`, `star(xy) = star(y) star(x)`.
pub fn involution_preset(field: Field) -> Preset {
    Preset {
        name: "involution".into(),
        field,
        signature: GradedSignature::ungraded(involution_signature()),
        theory: Theory::Involution { star: "star".into(), product: "mul".into() },
        defining_identities: involution_identities(field),
        samples: vec![("transpose".into(), transpose_m2(field)), ("symplectic".into(), symplectic_m2(field))],
        finitely_normalizing: true,
    }
}

/// The involution preset over a `Z_2`-grading, with `star` preserving degrees.
pub fn superinvolution_preset(field: Field) -> Preset {
    let z2 = Semigroup::cyclic(2);
    let mut ids = involution_identities(field);
    for g in ["0", "1"] {
        let lhs = Term::proj(g, Term::unary("star", x(1)));
        let rhs = Term::unary("star", Term::proj(g, x(1)));
        ids.push((format!("pi[{g}](star(x1)) = star(pi[{g}](x1))"), difference(field, lhs, vec![(1, rhs)])));
    }
    let sample = transpose_m2(field)
        .attach_grading(Grading::new(z2.clone(), vec![0, 1, 1, 0]))
        .expect("transpose preserves the Pauli grading");
    Preset {
        name: "superinvolution".into(),
        field,
        signature: GradedSignature::graded(involution_signature(), z2, [0, 1].into(), BTreeMap::new())
            .expect("valid"),
        theory: Theory::Involution { star: "star".into(), product: "mul".into() },
        defining_identities: ids,
        samples: vec![("pauli-transpose".into(), sample)],
        finitely_normalizing: true,
    }
}

/// Sum of full matrix blocks with `tr(x)` the trace of the block diagonal
/// matrix times the identity.
pub fn block_trace_algebra(blocks: &[usize], field: Field) -> Result<StructuredAlgebra> {
    if blocks.is_empty() || blocks.contains(&0) {
        return Err(Error::InvalidAlgebra("blocks must be positive".into()));
    }
    let parts: Vec<StructuredAlgebra> = blocks.iter().map(|&n| matrix(n, field)).collect();
    let base = if parts.len() == 1 {
        parts[0].clone()
    } else {
        direct_sum_all(&parts.iter().collect::<Vec<_>>())?
    };
    let mut a = base.with_operation("tr", 1)?;
    let mut one = a.zero();
    let mut diagonal = Vec::new();
    let mut offset = 0;
    for &n in blocks {
        for i in 0..n {
            one[offset + unit(n, i, i)] = field.one();
            diagonal.push(offset + unit(n, i, i));
        }
        offset += n * n;
    }
    for d in diagonal {
        a.set("tr", &[d], one.clone())?;
    }
    Ok(a)
}

fn trace_identities(field: Field) -> Vec<(String, Polynomial)> {
    let tr = |t| Term::unary("tr", t);
    let mul = |a, b| Term::binary("mul", a, b);
    vec![
        (
            "mul(tr(x1),x2) = mul(x2,tr(x1))".into(),
            difference(field, mul(tr(x(1)), x(2)), vec![(1, mul(x(2), tr(x(1))))]),
        ),
        (
            "tr(mul(x1,x2)) = tr(mul(x2,x1))".into(),
            difference(field, tr(mul(x(1), x(2))), vec![(1, tr(mul(x(2), x(1))))]),
        ),
        (
            "tr(mul(x1,tr(x2))) = mul(tr(x1),tr(x2))".into(),
            difference(field, tr(mul(x(1), tr(x(2)))), vec![(1, mul(tr(x(1)), tr(x(2))))]),
        ),
        (
            "mul(mul(x1,x2),x3) = mul(x1,mul(x2,x3))".into(),
            difference(field, mul(mul(x(1), x(2)), x(3)), vec![(1, mul(x(1), mul(x(2), x(3))))]),
        ),
    ]
}

/// Associative algebras with a central, cyclic trace.
pub fn trace_preset(field: Field) -> Preset {
    let samples = [("m2", vec![2]), ("m2+m1", vec![2, 1]), ("m2+m1+m1", vec![2, 1, 1])]
        .into_iter()
        .map(|(name, blocks)| (name.to_string(), block_trace_algebra(&blocks, field).expect("valid blocks")))
        .collect();
    Preset {
        name: "trace".into(),
        field,
        signature: GradedSignature::ungraded(Signature::new([("mul", 2), ("tr", 1)]).expect("valid")),
        theory: Theory::Trace { trace: "tr".into(), product: "mul".into() },
        defining_identities: trace_identities(field),
        samples,
        finitely_normalizing: true,
    }
}

/// A unital associative algebra `H` acting on a module algebra, with two
/// coproduct tensors governing the action on products.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedAction {
    pub field: Field,
    pub hbasis: Vec<String>,
    pub unit: usize,
    /// `hmul[b][c]` is `b·c` in the `H`-basis.
    pub hmul: Vec<Vec<Vector>>,
    pub delta1: Vec<Vec<(usize, usize, Scalar)>>,
    pub delta2: Vec<Vec<(usize, usize, Scalar)>>,
    /// `action[b]` is the matrix of `b` on the module algebra (columns are
    /// images of basis vectors).
    pub action: Vec<Matrix>,
}

impl GeneralizedAction {
    pub fn hdim(&self) -> usize {
        self.hbasis.len()
    }

    pub fn op_name(&self, b: usize) -> String {
        format!("rho_{}", self.hbasis[b])
    }

    fn hproduct(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.hdim());
        for (b, ub) in u.iter().enumerate() {
            for (c, vc) in v.iter().enumerate() {
                if !ub.is_zero() && !vc.is_zero() {
                    add_scaled(&mut out, &(ub * vc), &self.hmul[b][c]);
                }
            }
        }
        out
    }

    /// Unitality, associativity and the module axioms.
    pub fn validate(&self) -> Result<()> {
        let h = self.hdim();
        let bad = |m: String| Err(Error::InvalidPreset(m));
        if h == 0 || self.unit >= h {
            return bad("H needs a basis containing its unit".into());
        }
        for (k, name) in self.hbasis.iter().enumerate() {
            if !is_identifier(name) || self.hbasis[..k].contains(name) {
                return bad(format!("bad H basis name {name:?}"));
            }
        }
        let sizes_ok = self.hmul.len() == h
            && self.hmul.iter().all(|r| r.len() == h && r.iter().all(|v| v.len() == h))
            && self.delta1.len() == h
            && self.delta2.len() == h
            && self.action.len() == h;
        if !sizes_ok {
            return bad("table sizes do not match the H basis".into());
        }
        if self.delta1.iter().chain(&self.delta2).flatten().any(|(i, j, _)| *i >= h || *j >= h) {
            return bad("coproduct index out of range".into());
        }
        let n = self.action[0].len();
        if n == 0 || self.action.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
            return bad("action matrices must be square of one size".into());
        }
        let e = |b: usize| crate::linalg::unit_vector(self.field, h, b);
        for b in 0..h {
            if self.hmul[self.unit][b] != e(b) || self.hmul[b][self.unit] != e(b) {
                return bad(format!("{} is not a unit", self.hbasis[self.unit]));
            }
        }
        for b in 0..h {
            for c in 0..h {
                for d in 0..h {
                    let left = self.hproduct(&self.hmul[b][c], &e(d));
                    let right = self.hproduct(&e(b), &self.hmul[c][d]);
                    if left != right {
                        return bad(format!(
                            "H is not associative at ({},{},{})",
                            self.hbasis[b], self.hbasis[c], self.hbasis[d]
                        ));
                    }
                }
            }
        }
        if self.action[self.unit] != identity(self.field, n) {
            return bad("the unit of H must act as the identity".into());
        }
        for b in 0..h {
            for c in 0..h {
                let composed = mat_mul(&self.action[b], &self.action[c], self.field);
                let mut expected: Matrix = vec![zero_vector(self.field, n); n];
                for (k, coef) in self.hmul[b][c].iter().enumerate() {
                    for (row, src) in expected.iter_mut().zip(&self.action[k]) {
                        add_scaled(row, coef, src);
                    }
                }
                if composed != expected {
                    return bad(format!(
                        "action is not a module structure at ({},{})",
                        self.hbasis[b], self.hbasis[c]
                    ));
                }
            }
        }
        Ok(())
    }

    /// `(Δ ⊗ 1)Δ = (1 ⊗ Δ)Δ` for `Δ = Δ^{(1)}`.
    pub fn is_coassociative(&self) -> bool {
        let mut ok = true;
        for b in 0..self.hdim() {
            let mut left: HashMap<(usize, usize, usize), Scalar> = HashMap::new();
            let mut right: HashMap<(usize, usize, usize), Scalar> = HashMap::new();
            for (i, j, c) in &self.delta1[b] {
                for (k, l, d) in &self.delta1[*i] {
                    let e = left.entry((*k, *l, *j)).or_insert_with(|| self.field.zero());
                    *e = &*e + &(c * d);
                }
                for (k, l, d) in &self.delta1[*j] {
                    let e = right.entry((*i, *k, *l)).or_insert_with(|| self.field.zero());
                    *e = &*e + &(c * d);
                }
            }
            left.retain(|_, v| !v.is_zero());
            right.retain(|_, v| !v.is_zero());
            ok &= left == right;
        }
        ok
    }

    pub fn rules(&self) -> ActionRules {
        ActionRules {
            ops: (0..self.hdim()).map(|b| Symbol::from(self.op_name(b))).collect(),
            unit: self.unit,
            product: "mul".into(),
            hmul: self.hmul.clone(),
            delta1: self.delta1.clone(),
            delta2: self.delta2.clone(),
        }
    }

    pub fn signature(&self) -> Result<Signature> {
        let mut ops: Vec<(String, usize)> = vec![("mul".into(), 2)];
        ops.extend((0..self.hdim()).map(|b| (self.op_name(b), 1)));
        Signature::new(ops)
    }

    /// The module algebra `a` with one unary operation per `H`-basis element.
    pub fn attach(&self, a: &StructuredAlgebra) -> Result<StructuredAlgebra> {
        let n = self.action[0].len();
        if a.dim() != n {
            return Err(Error::InvalidPreset(format!("action has size {n}, algebra has dimension {}", a.dim())));
        }
        if a.signature().arity("mul") != Some(2) {
            return Err(Error::SignatureMismatch("module algebra needs mul/2".into()));
        }
        let mut out = a.clone();
        for b in 0..self.hdim() {
            let name = self.op_name(b);
            out = out.with_operation(&name, 1)?;
            for j in 0..n {
                let column: Vector = self.action[b].iter().map(|row| row[j].clone()).collect();
                out.set(&name, &[j], column)?;
            }
        }
        Ok(out)
    }

    fn action_identities(&self) -> Vec<(String, Polynomial)> {
        let f = self.field;
        let rho = |b: usize, t: Term| Term::unary(&self.op_name(b), t);
        let mul = |a, b| Term::binary("mul", a, b);
        let mut ids = vec![(
            format!("{}(x1) = x1", self.op_name(self.unit)),
            difference(f, rho(self.unit, x(1)), vec![(1, x(1))]),
        )];
        for b in 0..self.hdim() {
            for c in 0..self.hdim() {
                let mut p = Polynomial::from_term(rho(b, rho(c, x(1))), f);
                for (k, coef) in self.hmul[b][c].iter().enumerate() {
                    p.add_term(-coef.clone(), rho(k, x(1)));
                }
                ids.push((format!("{}({}(x1)) = product", self.op_name(b), self.op_name(c)), p));
            }
            if b == self.unit {
                continue;
            }
            let mut p = Polynomial::from_term(rho(b, mul(x(1), x(2))), f);
            for (i, j, c) in &self.delta1[b] {
                p.add_term(-c.clone(), mul(rho(*i, x(1)), rho(*j, x(2))));
            }
            for (i, j, c) in &self.delta2[b] {
                p.add_term(-c.clone(), mul(rho(*i, x(2)), rho(*j, x(1))));
            }
            ids.push((format!("{}(mul(x1,x2)) = coproduct", self.op_name(b)), p));
        }
        ids
    }
}

/// The action rules for an arbitrary pair of coproduct tensors.
pub fn generalized_action_preset(h: &GeneralizedAction) -> Result<Preset> {
    h.validate()?;
    Ok(Preset {
        name: "genaction".into(),
        field: h.field,
        signature: GradedSignature::ungraded(h.signature()?),
        theory: Theory::Action(h.rules()),
        defining_identities: h.action_identities(),
        samples: Vec::new(),
        finitely_normalizing: true,
    })
}

/// The action rules of a module algebra over a bialgebra-like `H`: no second
/// coproduct and a coassociative first one.
pub fn hopf_preset(h: &GeneralizedAction) -> Result<Preset> {
    if h.delta2.iter().any(|d| !d.is_empty()) {
        return Err(Error::InvalidPreset("a Hopf action has no second coproduct".into()));
    }
    if !h.is_coassociative() {
        return Err(Error::InvalidPreset("coproduct is not coassociative".into()));
    }
    let mut p = generalized_action_preset(h)?;
    p.name = "hopf".into();
    Ok(p)
}

fn scalar_table(field: Field, rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect()
}

fn hmul_from(field: Field, table: &[&[usize]]) -> Vec<Vec<Vector>> {
    let h = table.len();
    table
        .iter()
        .map(|r| r.iter().map(|&k| crate::linalg::unit_vector(field, h, k)).collect())
        .collect()
}

/// `Z_2 = {1, s}` acting on `M_2` by conjugation with `diag(1,-1)`, `Δs = s⊗s`.
pub fn grouplike_action(field: Field) -> GeneralizedAction {
    let one = field.one();
    GeneralizedAction {
        field,
        hbasis: vec!["one".into(), "s".into()],
        unit: 0,
        hmul: hmul_from(field, &[&[0, 1], &[1, 0]]),
        delta1: vec![vec![(0, 0, one.clone())], vec![(1, 1, one)]],
        delta2: vec![Vec::new(), Vec::new()],
        action: vec![
            identity(field, 4),
            scalar_table(field, &[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 1]]),
        ],
    }
}

/// `H = span{1, d, d2}` with `d³ = d`, `d` primitive, acting on `M_2` by
/// `d = [e11, -]`.
pub fn primitive_action(field: Field) -> GeneralizedAction {
    let c = |v: i64| field.from_i64(v);
    GeneralizedAction {
        field,
        hbasis: vec!["one".into(), "d".into(), "d2".into()],
        unit: 0,
        hmul: hmul_from(field, &[&[0, 1, 2], &[1, 2, 1], &[2, 1, 2]]),
        delta1: vec![
            vec![(0, 0, c(1))],
            vec![(1, 0, c(1)), (0, 1, c(1))],
            vec![(2, 0, c(1)), (1, 1, c(2)), (0, 2, c(1))],
        ],
        delta2: vec![Vec::new(), Vec::new(), Vec::new()],
        action: vec![
            identity(field, 4),
            scalar_table(field, &[&[0, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 0]]),
            scalar_table(field, &[&[0, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0]]),
        ],
    }
}

/// `H = span{1, s}`, `Δ1(s) = 0`, `Δ2(s) = s⊗s`, `s` acting as the transpose:
/// the involution rules written as a generalized action.
pub fn transpose_action(field: Field) -> GeneralizedAction {
    let one = field.one();
    GeneralizedAction {
        field,
        hbasis: vec!["one".into(), "s".into()],
        unit: 0,
        hmul: hmul_from(field, &[&[0, 1], &[1, 0]]),
        delta1: vec![vec![(0, 0, one.clone())], Vec::new()],
        delta2: vec![Vec::new(), vec![(1, 1, one)]],
        action: vec![
            identity(field, 4),
            scalar_table(field, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]),
        ],
    }
}

/// Shipped Hopf presets with their sample module algebras.
pub fn hopf_samples(field: Field) -> Result<Vec<(String, Preset)>> {
    let mut out = Vec::new();
    for (name, h) in [("grouplike", grouplike_action(field)), ("primitive", primitive_action(field))] {
        let mut p = hopf_preset(&h)?;
        p.samples.push((name.into(), h.attach(&matrix(2, field))?));
        out.push((name.to_string(), p));
    }
    Ok(out)
}

pub fn transpose_action_preset(field: Field) -> Result<Preset> {
    let h = transpose_action(field);
    let mut p = generalized_action_preset(&h)?;
    p.samples.push(("transpose".into(), h.attach(&matrix(2, field))?));
    Ok(p)
}

/// One failed defining identity.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipViolation {
    pub identity: String,
    /// Basis names substituted for `x1, x2, …`.
    pub tuple: Vec<String>,
    pub value: String,
}

impl fmt::Display for MembershipViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({}): value {}", self.identity, self.tuple.join(", "), self.value)
    }
}

/// Evaluates every defining identity on all basis tuples; the first failing
/// tuple of each identity is reported.
pub fn check_membership(a: &StructuredAlgebra, p: &Preset) -> Result<Vec<MembershipViolation>> {
    if a.field() != p.field {
        return Err(Error::FieldMismatch(a.field(), p.field));
    }
    for op in p.signature.base.ops() {
        if a.signature().arity(&op.name) != Some(op.arity) {
            return Err(Error::SignatureMismatch(format!("algebra lacks {}/{}", op.name, op.arity)));
        }
    }
    if let Some(gd) = &p.signature.grading {
        match a.grading() {
            Some(g) if g.group == gd.group => {}
            _ => return Err(Error::MissingGrading),
        }
    }
    let all: Vec<usize> = (0..a.dim()).collect();
    let mut out = Vec::new();
    for (name, poly) in &p.defining_identities {
        let n = poly.iter().flat_map(|(t, _)| t.variable_counts().into_keys()).max().unwrap_or(0) as usize;
        for tuple in tuples(&all, n) {
            let binding: HashMap<u32, Vector> =
                tuple.iter().enumerate().map(|(k, &i)| (k as u32 + 1, a.basis_vector(i))).collect();
            let value = a.eval(poly, &binding)?;
            if !is_zero_vector(&value) {
                out.push(MembershipViolation {
                    identity: name.clone(),
                    tuple: tuple.iter().map(|&i| a.basis()[i].clone()).collect(),
                    value: describe_vector(a, &value),
                });
                break;
            }
        }
    }
    Ok(out)
}

/// A commutation factor on the grading group.
#[derive(Clone, Debug, PartialEq)]
pub struct Epsilon {
    pub table: Vec<Vec<Scalar>>,
}

impl Epsilon {
    /// `ε ≡ 1`.
    pub fn trivial(group: &Semigroup, field: Field) -> Epsilon {
        Epsilon { table: vec![vec![field.one(); group.len()]; group.len()] }
    }

    /// `ε(g, h) = (-1)^{gh}` on `Z_2`.
    pub fn super_sign(field: Field) -> Epsilon {
        Epsilon { table: vec![vec![field.one(), field.one()], vec![field.one(), -field.one()]] }
    }

    /// Alternating (`ε(g,h)ε(h,g) = 1`) and multiplicative in each slot.
    pub fn validate(&self, group: &Semigroup) -> Result<()> {
        let n = group.len();
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPreset("epsilon table does not match the grading group".into()));
        }
        let e = &self.table;
        for g in 0..n {
            for h in 0..n {
                if !(&e[g][h] * &e[h][g]).is_one() {
                    return Err(Error::InvalidPreset(format!(
                        "epsilon({0},{1})·epsilon({1},{0}) is not 1",
                        group.name(g),
                        group.name(h)
                    )));
                }
                for k in 0..n {
                    if e[group.mul(g, h)][k] != &e[g][k] * &e[h][k] || e[k][group.mul(g, h)] != &e[k][g] * &e[k][h] {
                        return Err(Error::InvalidPreset(format!(
                            "epsilon is not multiplicative at ({},{},{})",
                            group.name(g),
                            group.name(h),
                            group.name(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A failed colour Lie axiom on homogeneous basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct ColourLieViolation {
    pub axiom: &'static str,
    pub basis: Vec<String>,
}

/// Checks `[x,y] = -ε(g,h)[y,x]` and
/// `[x,[y,z]] = [[x,y],z] + ε(g,h)[y,[x,z]]` on homogeneous basis elements.
pub fn colour_lie_check(l: &StructuredAlgebra, bracket: &str, eps: &Epsilon) -> Result<Vec<ColourLieViolation>> {
    let gr = l.grading().ok_or(Error::MissingGrading)?;
    eps.validate(&gr.group)?;
    if l.signature().arity(bracket) != Some(2) {
        return Err(Error::SignatureMismatch(format!("no binary operation {bracket}")));
    }
    let n = l.dim();
    let deg = |i: usize| gr.assignment[i];
    let b = |u: &[Scalar], v: &[Scalar]| l.apply(bracket, &[u, v]);
    let e = |i: usize| l.basis_vector(i);
    let name = |i: usize| l.basis()[i].clone();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut v = b(&e(i), &e(j))?;
            add_scaled(&mut v, &eps.table[deg(i)][deg(j)], &b(&e(j), &e(i))?);
            if !is_zero_vector(&v) {
                out.push(ColourLieViolation { axiom: "antisymmetry", basis: vec![name(i), name(j)] });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut v = b(&e(i), &b(&e(j), &e(k))?)?;
                add_scaled(&mut v, &-l.field().one(), &b(&b(&e(i), &e(j))?, &e(k))?);
                add_scaled(&mut v, &-eps.table[deg(i)][deg(j)].clone(), &b(&e(j), &b(&e(i), &e(k))?)?);
                if !is_zero_vector(&v) {
                    out.push(ColourLieViolation { axiom: "jacobi", basis: vec![name(i), name(j), name(k)] });
                }
            }
        }
    }
    Ok(out)
}

/// `sl_2` with basis `e, f, h` and bracket `br`, ungraded.
pub fn sl2(field: Field) -> StructuredAlgebra {
    let names = ["e", "f", "h"].map(String::from).to_vec();
    let mut a = StructuredAlgebra::new(field, names, Signature::new([("br", 2)]).expect("valid")).expect("valid");
    let (e, f, h) = (0, 1, 2);
    for (x, y, c, z) in [(e, f, 1, h), (f, e, -1, h), (h, e, 2, e), (e, h, -2, e), (h, f, -2, f), (f, h, 2, f)] {
        a.set_combination("br", &[x, y], &[(c, z)]).expect("valid");
    }
    a
}

/// `sl_2` concentrated in the identity degree of the trivial group.
pub fn sl2_trivially_graded(field: Field) -> StructuredAlgebra {
    sl2(field).attach_grading(Grading::constant(Semigroup::trivial(), 3, 0)).expect("trivial grading")
}

/// `gl(1|1)`: `M_2` with the Pauli grading and the supercommutator `br`.
pub fn gl11(field: Field) -> StructuredAlgebra {
    let m2 = pauli_m2(field);
    let gr = m2.grading().expect("graded").clone();
    let mut a = StructuredAlgebra::new(field, m2.basis().to_vec(), Signature::new([("br", 2)]).expect("valid"))
        .expect("valid");
    for i in 0..4 {
        for j in 0..4 {
            let xy = m2.apply("mul", &[&m2.basis_vector(i), &m2.basis_vector(j)]).expect("mul");
            let yx = m2.apply("mul", &[&m2.basis_vector(j), &m2.basis_vector(i)]).expect("mul");
            let sign = if gr.assignment[i] == 1 && gr.assignment[j] == 1 { 1 } else { -1 };
            let mut v = xy;
            add_scaled(&mut v, &field.from_i64(sign), &yx);
            a.set("br", &[i, j], v).expect("valid");
        }
    }
    a.attach_grading(gr).expect("supercommutator respects the grading")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn norm(rs: &RewriteSystem, t: Term) -> String {
        rs.normalize_term(&t).unwrap().to_string()
    }

    #[test]
    fn involution_rules() {
        let p = involution_preset(q());
        let rs = p.rewrite_system().unwrap();
        let star = |t| Term::unary("star", t);
        assert_eq!(norm(&rs, star(star(x(1)))), "x1");
        assert_eq!(norm(&rs, star(Term::binary("mul", x(1), x(2)))), "mul(star(x2),star(x1))");
        for (_, s) in &p.samples {
            assert!(check_membership(s, &p).unwrap().is_empty());
        }
    }

    #[test]
    fn broken_involution_is_reported() {
        let p = involution_preset(q());
        let mut bad = matrix(2, q()).with_operation("star", 1).unwrap();
        bad.set_combination("star", &[0], &[(1, 0)]).unwrap();
        let v = check_membership(&bad, &p).unwrap();
        assert_eq!(v[0].identity, "star(star(x1)) = x1");
        assert_eq!(v[0].tuple, ["e12"]);
    }

    #[test]
    fn superinvolution_pushes_projections_inward() {
        let p = superinvolution_preset(q());
        let rs = p.rewrite_system().unwrap();
        let a = rs.normalize_term(&Term::proj("1", Term::unary("star", x(1)))).unwrap();
        let b = rs.normalize_term(&Term::unary("star", Term::proj("1", x(1)))).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "star(pi[1](x1))");
        assert!(check_membership(&p.samples[0].1, &p).unwrap().is_empty());
    }

    #[test]
    fn trace_rules_and_samples() {
        let p = trace_preset(q());
        let rs = p.rewrite_system().unwrap();
        let tr = |t| Term::unary("tr", t);
        let mul = |a, b| Term::binary("mul", a, b);
        assert_eq!(norm(&rs, tr(mul(x(1), tr(x(2))))), "mul(tr(x1),tr(x2))");
        assert_eq!(norm(&rs, tr(mul(x(2), x(1)))), norm(&rs, tr(mul(x(1), x(2)))));
        assert_eq!(norm(&rs, mul(x(2), tr(x(1)))), "mul(tr(x1),x2)");
        for (name, s) in &p.samples {
            assert!(check_membership(s, &p).unwrap().is_empty(), "{name}");
        }
    }

    #[test]
    fn actions() {
        let rho = |b: &str, t| Term::unary(b, t);
        let mul = |a, b| Term::binary("mul", a, b);
        for (name, p) in hopf_samples(q()).unwrap() {
            let (_, sample) = &p.samples[0];
            assert!(check_membership(sample, &p).unwrap().is_empty(), "{name}");
        }
        let g = hopf_preset(&grouplike_action(q())).unwrap().rewrite_system().unwrap();
        assert_eq!(norm(&g, rho("rho_s", mul(x(1), x(2)))), "mul(rho_s(x1),rho_s(x2))");
        assert_eq!(norm(&g, rho("rho_one", x(1))), "x1");
        let d = hopf_preset(&primitive_action(q())).unwrap().rewrite_system().unwrap();
        assert_eq!(norm(&d, rho("rho_d", mul(x(1), x(2)))), "mul(x1,rho_d(x2)) + mul(rho_d(x1),x2)");
        let t = transpose_action_preset(q()).unwrap();
        assert!(check_membership(&t.samples[0].1, &t).unwrap().is_empty());
        let rs = t.rewrite_system().unwrap();
        assert_eq!(norm(&rs, rho("rho_s", mul(x(1), x(2)))), "mul(rho_s(x2),rho_s(x1))");
        assert!(hopf_preset(&transpose_action(q())).is_err());
    }

    #[test]
    fn module_axioms_are_checked() {
        let mut h = grouplike_action(q());
        h.action[1] = identity(q(), 4);
        h.action[1][0][0] = q().from_i64(2);
        assert!(h.validate().is_err());
    }

    #[test]
    fn colour_lie() {
        let sl = sl2_trivially_graded(q());
        assert!(colour_lie_check(&sl, "br", &Epsilon::trivial(&Semigroup::trivial(), q())).unwrap().is_empty());
        let g = gl11(q());
        assert!(colour_lie_check(&g, "br", &Epsilon::super_sign(q())).unwrap().is_empty());
        let minus = Epsilon { table: vec![vec![-q().one()]] };
        assert!(colour_lie_check(&sl, "br", &minus).is_err());
        let odd = sl2(q()).attach_grading(Grading::new(Semigroup::cyclic(2), vec![1, 1, 0])).unwrap();
        let v = colour_lie_check(&odd, "br", &Epsilon::super_sign(q())).unwrap();
        assert_eq!(v[0].axiom, "antisymmetry");
        assert_eq!(v[0].basis, ["e", "f"]);
    }
}
