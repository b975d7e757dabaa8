//! Normal forms modulo the grading T-ideal and preset structural identities.
//!
//! The built-in grading rules are
//!
//! * `π_g(π_h(t)) → δ_{gh} π_g(t)`,
//! * `π_h(t) → 0` for `h` outside the support,
//! * `π_g(w) → δ_{g,deg w} w` for a normal monomial `w` that is not a variable,
//! * `x → Σ_{g∈S} π_g(x)` for a variable not directly under a projection.
//!
//! Normal monomials are then the monomials built by the base operations from
//! the decorated generators `π_g(x)`. Presets add their own oriented rules
//! (involution, generalized actions, traces).
//!
//! Termination: every built-in rule lowers the tuple (bare variable leaves,
//! projections not directly above a variable, size) lexicographically.
//! Preset rule sets each push one unary operation towards the leaves or
//! merge two of them; the step budget guards anything else.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::enumerate::{multilinear_trees, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::poly::{expand_product, Polynomial};
use crate::scalar::{Field, Scalar};
use crate::signature::{Semigroup, Signature};
use crate::term::{Symbol, Term};

/// Default number of rule applications allowed per normalization.
pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

/// Grading data of an extended signature `Ω_G = Ω ∪ {π_g}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeData {
    pub group: Semigroup,
    /// Finite support, as element indices.
    pub support: BTreeSet<usize>,
    pub zeroary_degrees: BTreeMap<String, usize>,
}

/// A base signature, optionally extended by projections for a semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSignature {
    pub base: Signature,
    pub grading: Option<GradeData>,
}

impl GradedSignature {
    pub fn ungraded(base: Signature) -> GradedSignature {
        GradedSignature { base, grading: None }
    }

    pub fn graded(
        base: Signature,
        group: Semigroup,
        support: BTreeSet<usize>,
        zeroary_degrees: BTreeMap<String, usize>,
    ) -> Result<GradedSignature> {
        if support.is_empty() {
            return Err(Error::InvalidGrading("empty support".into()));
        }
        if support.iter().any(|&g| g >= group.len()) {
            return Err(Error::InvalidGrading("support outside the semigroup".into()));
        }
        for op in base.of_arity(0) {
            match zeroary_degrees.get(&op.name) {
                Some(&g) if g < group.len() => {}
                _ => {
                    return Err(Error::InvalidGrading(format!(
                        "constant {} needs a declared degree in the semigroup",
                        op.name
                    )))
                }
            }
        }
        Ok(GradedSignature { base, grading: Some(GradeData { group, support, zeroary_degrees }) })
    }
}

/// The structural identities added on top of the grading rules.
#[derive(Clone, Debug, PartialEq)]
pub enum Theory {
    /// No identities beyond the grading ones.
    Free,
    /// `x** = x`, `(xy)* = y*x*`.
    Involution { star: Symbol, product: Symbol },
    /// A generalized action of a unital algebra `H` through unary `ρ_b`.
    Action(ActionRules),
    /// Associative product with a central trace: `tr(x)y = y tr(x)`,
    /// `tr(xy) = tr(yx)`, `tr(x tr(y)) = tr(x)tr(y)`.
    Trace { trace: Symbol, product: Symbol },
}

/// Tabulated data of a generalized action, indexed by the `H`-basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionRules {
    pub ops: Vec<Symbol>,
    pub unit: usize,
    pub product: Symbol,
    /// `hmul[b][c]` is `b·c` in the `H`-basis.
    pub hmul: Vec<Vec<Vec<Scalar>>>,
    /// `Δ^{(1)}(b) = Σ c·(i ⊗ j)`.
    pub delta1: Vec<Vec<(usize, usize, Scalar)>>,
    pub delta2: Vec<Vec<(usize, usize, Scalar)>>,
}

impl ActionRules {
    fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| &**o == name)
    }
}

type Rewritten = Vec<(Scalar, Term)>;

/// One oriented rule, tried at a single position.
pub trait Rule: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;
    /// Rewrites `t` if it is a redex. `under_projection` is true when the
    /// parent node is a projection.
    fn apply(&self, t: &Term, under_projection: bool, rs: &RewriteSystem) -> Option<Rewritten>;
}

/// How redexes are picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Children first, memoized.
    Innermost,
    /// A uniformly random redex at every step.
    Random(u64),
}

/// A set of oriented rules over a graded signature.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    signature: GradedSignature,
    theory: Theory,
    field: Field,
    rules: Vec<Arc<dyn Rule>>,
    finitely_normalizing: bool,
    pub step_budget: usize,
    pub enumeration_cap: usize,
}

impl RewriteSystem {
    pub fn new(signature: GradedSignature, theory: Theory, field: Field) -> Result<RewriteSystem> {
        let mut rules: Vec<Arc<dyn Rule>> = Vec::new();
        if signature.grading.is_some() {
            rules.push(Arc::new(ProjectionOutsideSupport));
            rules.push(Arc::new(ProjectionIdempotent));
            rules.push(Arc::new(ProjectionOfHomogeneous));
            rules.push(Arc::new(VariableDecomposition));
        }
        let need = |name: &Symbol, arity: usize| -> Result<()> {
            if signature.base.arity(name) != Some(arity) {
                return Err(Error::InvalidPreset(format!("signature needs {name} of arity {arity}")));
            }
            Ok(())
        };
        match &theory {
            Theory::Free => {}
            Theory::Involution { star, product } => {
                need(star, 1)?;
                need(product, 2)?;
                rules.push(Arc::new(InvolutionTwice));
                rules.push(Arc::new(InvolutionProduct));
            }
            Theory::Action(a) => {
                if signature.grading.is_some() {
                    return Err(Error::Unsupported("actions combined with gradings".into()));
                }
                need(&a.product, 2)?;
                for op in &a.ops {
                    need(op, 1)?;
                }
                rules.push(Arc::new(ActionUnit));
                rules.push(Arc::new(ActionCompose));
                rules.push(Arc::new(ActionProduct));
            }
            Theory::Trace { trace, product } => {
                if signature.grading.is_some() {
                    return Err(Error::Unsupported("traces combined with gradings".into()));
                }
                need(trace, 1)?;
                need(product, 2)?;
                rules.push(Arc::new(Associativity));
                rules.push(Arc::new(TraceCentral));
                rules.push(Arc::new(TraceOfCentral));
                rules.push(Arc::new(TraceCyclic));
                rules.push(Arc::new(TraceDepthShift));
            }
        }
        Ok(RewriteSystem {
            signature,
            theory,
            field,
            rules,
            finitely_normalizing: true,
            step_budget: DEFAULT_STEP_BUDGET,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        })
    }

    /// Grading rules only, for a base signature graded by `group` with the
    /// given support.
    pub fn graded(base: Signature, group: Semigroup, support: BTreeSet<usize>, field: Field) -> Result<RewriteSystem> {
        let sig = GradedSignature::graded(base, group, support, BTreeMap::new())?;
        RewriteSystem::new(sig, Theory::Free, field)
    }

    pub fn ungraded(base: Signature, field: Field) -> Result<RewriteSystem> {
        RewriteSystem::new(GradedSignature::ungraded(base), Theory::Free, field)
    }

    /// Marks the rule set as lacking a termination argument; `normalize`
    /// then refuses to run.
    pub fn set_finitely_normalizing(&mut self, value: bool) {
        self.finitely_normalizing = value;
    }

    pub fn finitely_normalizing(&self) -> bool {
        self.finitely_normalizing
    }

    /// Appends a custom rule after the built-in ones.
    pub fn push_rule(&mut self, rule: Arc<dyn Rule>) {
        self.rules.push(rule);
    }

    pub fn signature(&self) -> &GradedSignature {
        &self.signature
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rule_names(&self) -> Vec<&'static str> {
        self.rules.iter().map(|r| r.name()).collect()
    }

    pub fn grade_data(&self) -> Option<&GradeData> {
        self.signature.grading.as_ref()
    }

    fn element(&self, name: &str) -> Option<usize> {
        self.grade_data().and_then(|g| g.group.index_of(name))
    }

    /// Checks that a term lives over `Ω_G`.
    pub fn validate(&self, t: &Term) -> Result<()> {
        match t {
            Term::Var(_) => Ok(()),
            Term::Graded(i, g) => Err(Error::MalformedTerm(format!(
                "decorated variable x{i}^{{{g}}}; translate graded polynomials first"
            ))),
            Term::Proj(g, c) => {
                let gd = self.grade_data().ok_or(Error::MissingGrading)?;
                if gd.group.index_of(g).is_none() {
                    return Err(Error::MalformedTerm(format!("{g} is not a semigroup element")));
                }
                self.validate(c)
            }
            Term::Op(name, cs) => {
                match self.signature.base.arity(name) {
                    Some(a) if a == cs.len() => {}
                    Some(a) => {
                        return Err(Error::MalformedTerm(format!("{name} takes {a} arguments, got {}", cs.len())))
                    }
                    None => return Err(Error::MalformedTerm(format!("unknown operation {name}"))),
                }
                cs.iter().try_for_each(|c| self.validate(c))
            }
        }
    }

    fn first_rule(&self, t: &Term, under_projection: bool) -> Option<Rewritten> {
        self.rules.iter().find_map(|r| r.apply(t, under_projection, self))
    }

    /// No rule applies anywhere in `t`.
    pub fn is_normal(&self, t: &Term) -> bool {
        self.is_normal_at(t, false)
    }

    fn is_normal_at(&self, t: &Term, under_projection: bool) -> bool {
        let children_ok = match t {
            Term::Var(_) | Term::Graded(..) => true,
            Term::Proj(_, c) => self.is_normal_at(c, true),
            Term::Op(_, cs) => cs.iter().all(|c| self.is_normal_at(c, false)),
        };
        children_ok && self.first_rule(t, under_projection).is_none()
    }

    /// A polynomial congruent to `p` supported on normal monomials.
    pub fn normalize(&self, p: &Polynomial) -> Result<Polynomial> {
        self.normalize_with(p, Strategy::Innermost)
    }

    pub fn normalize_with(&self, p: &Polynomial, strategy: Strategy) -> Result<Polynomial> {
        if !self.finitely_normalizing {
            return Err(Error::NotFinitelyNormalizing("rule set declares no termination measure".into()));
        }
        if p.field() != self.field {
            return Err(Error::FieldMismatch(p.field(), self.field));
        }
        for (t, _) in p.iter() {
            self.validate(t)?;
        }
        let mut steps = 0usize;
        match strategy {
            Strategy::Innermost => {
                let mut memo = HashMap::new();
                p.map_terms(|t| self.innermost(t, false, &mut memo, &mut steps))
            }
            Strategy::Random(seed) => self.random_order(p, seed, &mut steps),
        }
    }

    pub fn normalize_term(&self, t: &Term) -> Result<Polynomial> {
        self.normalize(&Polynomial::from_term(t.clone(), self.field))
    }

    fn bump(&self, steps: &mut usize) -> Result<()> {
        *steps += 1;
        if *steps > self.step_budget {
            return Err(Error::StepBudgetExceeded(self.step_budget));
        }
        Ok(())
    }

    fn innermost(
        &self,
        t: &Term,
        under_projection: bool,
        memo: &mut HashMap<(Term, bool), Polynomial>,
        steps: &mut usize,
    ) -> Result<Polynomial> {
        if let Some(p) = memo.get(&(t.clone(), under_projection)) {
            return Ok(p.clone());
        }
        let field = self.field;
        let candidates = match t {
            Term::Var(_) | Term::Graded(..) => Polynomial::from_term(t.clone(), field),
            Term::Proj(g, c) => {
                let inner = self.innermost(c, true, memo, steps)?;
                expand_product(field, &[inner], |mut ts| Term::Proj(g.clone(), Box::new(ts.remove(0))))
            }
            Term::Op(name, cs) => {
                let children = cs
                    .iter()
                    .map(|c| self.innermost(c, false, memo, steps))
                    .collect::<Result<Vec<_>>>()?;
                expand_product(field, &children, |ts| Term::Op(name.clone(), ts))
            }
        };
        let mut out = Polynomial::zero(field);
        for (node, c) in candidates.iter() {
            match self.first_rule(node, under_projection) {
                None => out.add_term(c.clone(), node.clone()),
                Some(rewritten) => {
                    self.bump(steps)?;
                    for (d, s) in rewritten {
                        let sub = self.innermost(&s, under_projection, memo, steps)?;
                        out.add_scaled(&(c * &d), &sub);
                    }
                }
            }
        }
        memo.insert((t.clone(), under_projection), out.clone());
        Ok(out)
    }

    fn random_order(&self, p: &Polynomial, seed: u64, steps: &mut usize) -> Result<Polynomial> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut work = p.clone();
        let mut done = Polynomial::zero(self.field);
        loop {
            let next = work.iter().next().map(|(t, c)| (t.clone(), c.clone()));
            let Some((t, c)) = next else { break };
            work.add_term(-c.clone(), t.clone());
            let mut positions = Vec::new();
            self.collect_redexes(&t, false, &mut Vec::new(), &mut positions);
            let Some((path, rewritten)) = positions.choose(&mut rng).cloned() else {
                done.add_term(c, t);
                continue;
            };
            self.bump(steps)?;
            for (d, s) in rewritten {
                work.add_term(&c * &d, replace_at(&t, &path, s));
            }
        }
        Ok(done)
    }

    fn collect_redexes(
        &self,
        t: &Term,
        under_projection: bool,
        path: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Rewritten)>,
    ) {
        if let Some(r) = self.first_rule(t, under_projection) {
            out.push((path.clone(), r));
        }
        match t {
            Term::Var(_) | Term::Graded(..) => {}
            Term::Proj(_, c) => {
                path.push(0);
                self.collect_redexes(c, true, path, out);
                path.pop();
            }
            Term::Op(_, cs) => {
                for (k, c) in cs.iter().enumerate() {
                    path.push(k);
                    self.collect_redexes(c, false, path, out);
                    path.pop();
                }
            }
        }
    }

    /// Degree `g` with `π_g(w) = w` for a normal monomial `w`: the product of
    /// the leaf degrees from left to right.
    pub fn homogeneous_degree(&self, t: &Term) -> Result<usize> {
        let gd = self.grade_data().ok_or(Error::MissingGrading)?;
        if !self.is_normal(t) {
            return Err(Error::NotNormal(t.to_string()));
        }
        self.degree_of(t, gd)
    }

    fn degree_of(&self, t: &Term, gd: &GradeData) -> Result<usize> {
        match t {
            Term::Proj(g, c) if matches!(**c, Term::Var(_)) => {
                gd.group.index_of(g).ok_or_else(|| Error::MalformedTerm(format!("unknown element {g}")))
            }
            Term::Op(name, cs) if cs.is_empty() => gd
                .zeroary_degrees
                .get(&**name)
                .copied()
                .ok_or_else(|| Error::InvalidGrading(format!("no degree for constant {name}"))),
            Term::Op(_, cs) => {
                let degs = cs.iter().map(|c| self.degree_of(c, gd)).collect::<Result<Vec<_>>>()?;
                Ok(gd.group.product(degs).expect("nonempty"))
            }
            _ => Err(Error::NotNormal(t.to_string())),
        }
    }

    fn normal_homogeneous(&self, t: &Term) -> Option<usize> {
        let gd = self.grade_data()?;
        if matches!(t, Term::Op(..)) && self.is_normal(t) {
            self.degree_of(t, gd).ok()
        } else {
            None
        }
    }

    /// Normal monomials multilinear in `x_1..x_n`. A degree constraint
    /// fixes the grading component (element index) of each variable.
    pub fn normal_multilinear_monomials(&self, n: usize, constraint: Option<&[usize]>) -> Result<Vec<Term>> {
        if !self.finitely_normalizing {
            return Err(Error::NotFinitelyNormalizing("cannot enumerate normal monomials".into()));
        }
        if n == 0 {
            return Err(Error::Unsupported("multilinear degree must be at least 1".into()));
        }
        if let Some(c) = constraint {
            let gd = self.grade_data().ok_or(Error::MissingGrading)?;
            if c.len() != n || c.iter().any(|&g| g >= gd.group.len()) {
                return Err(Error::InvalidGrading(format!("degree constraint must give {n} semigroup elements")));
            }
        }
        if let Theory::Trace { trace, product } = &self.theory {
            return trace_monomials(trace, product, n, self.enumeration_cap);
        }
        let wrappers: Vec<Symbol> = match &self.theory {
            Theory::Involution { star, .. } => vec![star.clone()],
            Theory::Action(a) => a.ops.iter().enumerate().filter(|(k, _)| *k != a.unit).map(|(_, o)| o.clone()).collect(),
            _ => Vec::new(),
        };
        let unit_op = match &self.theory {
            Theory::Action(a) => Some(a.ops[a.unit].clone()),
            _ => None,
        };
        let ops: Vec<(Symbol, usize)> = self
            .signature
            .base
            .ops()
            .iter()
            .filter(|o| o.arity >= 1 && !wrappers.iter().chain(&unit_op).any(|w| **w == *o.name))
            .map(|o| (Symbol::from(o.name.as_str()), o.arity))
            .collect();
        let grade = self.grade_data();
        let atoms = |i: u32| -> Vec<Term> {
            let leaves: Vec<Term> = match grade {
                None => vec![Term::Var(i)],
                Some(gd) => {
                    let allowed: Vec<usize> = match constraint {
                        Some(c) => vec![c[i as usize - 1]].into_iter().filter(|g| gd.support.contains(g)).collect(),
                        None => gd.support.iter().copied().collect(),
                    };
                    allowed
                        .into_iter()
                        .map(|g| Term::Proj(gd.group.name(g).into(), Box::new(Term::Var(i))))
                        .collect()
                }
            };
            let mut out = leaves.clone();
            for w in &wrappers {
                out.extend(leaves.iter().map(|l| Term::Op(w.clone(), vec![l.clone()])));
            }
            out
        };
        multilinear_trees(&ops, &atoms, n as u32, self.enumeration_cap)
    }
}

/// Replaces the subterm at `path`.
fn replace_at(t: &Term, path: &[usize], new: Term) -> Term {
    let Some((&k, rest)) = path.split_first() else {
        return new;
    };
    match t {
        Term::Proj(g, c) => Term::Proj(g.clone(), Box::new(replace_at(c, rest, new))),
        Term::Op(name, cs) => {
            let mut cs = cs.clone();
            cs[k] = replace_at(&cs[k], rest, new);
            Term::Op(name.clone(), cs)
        }
        _ => unreachable!("path leads into a leaf"),
    }
}

fn one(rs: &RewriteSystem, t: Term) -> Rewritten {
    vec![(rs.field.one(), t)]
}

#[derive(Debug)]
struct ProjectionOutsideSupport;

impl Rule for ProjectionOutsideSupport {
    fn name(&self) -> &'static str {
        "projection-outside-support"
    }

    fn apply(&self, t: &Term, _: bool, rs: &RewriteSystem) -> Option<Rewritten> {
        let Term::Proj(g, _) = t else { return None };
        let gd = rs.grade_data()?;
        let gi = rs.element(g)?;
        (!gd.support.contains(&gi)).then(Vec::new)
    }
}

#[derive(Debug)]
struct ProjectionIdempotent;

impl Rule for ProjectionIdempotent {
    fn name(&self) -> &'static str {
        "projection-idempotent"
    }

    fn apply(&self, t: &Term, _: bool, rs: &RewriteSystem) -> Option<Rewritten> {
        let Term::Proj(g, c) = t else { return None };
        let Term::Proj(h, inner) = &**c else { return None };
        if g == h {
            Some(one(rs, Term::Proj(g.clone(), inner.clone())))
        } else {
            Some(Vec::new())
        }
    }
}

#[derive(Debug)]
struct ProjectionOfHomogeneous;

impl Rule for ProjectionOfHomogeneous {
    fn name(&self) -> &'static str {
        "projection-of-homogeneous"
    }

    fn apply(&self, t: &Term, _: bool, rs: &RewriteSystem) -> Option<Rewritten> {
        let Term::Proj(g, c) = t else { return None };
        let deg = rs.normal_homogeneous(c)?;
        if rs.element(g)? == deg {
            Some(one(rs, (**c).clone()))
        } else {
            Some(Vec::new())
        }
    }
}

#[derive(Debug)]
struct VariableDecomposition;

impl Rule for VariableDecomposition {
    fn name(&self) -> &'static str {
        "variable-decomposition"
    }

    fn apply(&self, t: &Term, under_projection: bool, rs: &RewriteSystem) -> Option<Rewritten> {
        let Term::Var(_) = t else { return None };
        if under_projection {
            return None;
        }
        let gd = rs.grade_data()?;
        Some(
            gd.support
                .iter()
                .map(|&g| (rs.field.one(), Term::Proj(gd.group.name(g).into(), Box::new(t.clone()))))
                .collect(),
        )
    }
}

#[derive(Debug)]
struct InvolutionTwice;

impl Rule for InvolutionTwice {
    fn name(&self) -> &'static str {
        "involution-twice"
    }

    fn apply(&self, t: &Term, _: bool, rs: &RewriteSystem) -> Option<Rewritten> {
        let Theory::Involution { star, .. } = &rs.theory else { return None };
        let Term::Op(a, cs) = t else { return None };
        let Term::Op(b, inner) = cs.first()? else { return None };
        (a == star && b == star).then(|| one(rs, inner[0].clone()))
    }
}

#[derive(Debug)]
struct InvolutionProduct;

impl Rule for InvolutionProduct {
    fn name(&self) -> &'static str {
        "involution-reverses-products"
    }

    fn apply(&self, t: &Term, _: bool, rs: &RewriteSystem) -> Option<Rewritten> {
        let Theory::Involution { star, product } = &rs.theory else { return None };
        let Term::Op(a, cs) = t else { return None };
        let Term::Op(m, xy) = cs.first()? else { return None };
        if a != star || m != product {
            return None;
        }
        let s = |u: &Term| Term::Op(star.clone(), vec![u.clone()]);
        Some(one(rs, Term::Op(product.clone(), vec![s(&xy[1]), s(&xy[0])])))
    }
}

#[derive(Debug)]
struct ActionUnit;

impl Rule for ActionUnit {
    fn name(&self) -> &'static str {
        "action-unit"
    }

    fn apply(&self, t: &Term, _: bool, rs: &RewriteSystem) -> Option<Rewritten> {
        let Theory::Action(a) = &rs.theory else { return None };
        let Term::Op(name, cs) = t else { return None };
        (a.index_of(name)? == a.unit).then(|| one(rs, cs[0].clone()))
    }
}

#[derive(Debug)]
struct ActionCompose;

impl Rule for ActionCompose {
    fn name(&self) -> &'static str {
        "action-compose"
    }

    fn apply(&self, t: &Term, _: bool, rs: &RewriteSystem) -> Option<Rewritten> {
        let Theory::Action(a) = &rs.theory else { return None };
        let Term::Op(outer, cs) = t else { return None };
        let Term::Op(inner, arg) = &cs[0] else { return None };
        let (b, c) = (a.index_of(outer)?, a.index_of(inner)?);
        Some(
            a.hmul[b][c]
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(k, s)| (s.clone(), Term::Op(a.ops[k].clone(), vec![arg[0].clone()])))
                .collect(),
        )
    }
}

#[derive(Debug)]
struct ActionProduct;

impl Rule for ActionProduct {
    fn name(&self) -> &'static str {
        "action-on-products"
    }

    fn apply(&self, t: &Term, _: bool, rs: &RewriteSystem) -> Option<Rewritten> {
        let Theory::Action(a) = &rs.theory else { return None };
        let Term::Op(outer, cs) = t else { return None };
        let Term::Op(m, xy) = &cs[0] else { return None };
        if *m != a.product {
            return None;
        }
        let b = a.index_of(outer)?;
        let rho = |k: usize, u: &Term| Term::Op(a.ops[k].clone(), vec![u.clone()]);
        let mut out = Vec::new();
        for (i, j, c) in &a.delta1[b] {
            out.push((c.clone(), Term::Op(m.clone(), vec![rho(*i, &xy[0]), rho(*j, &xy[1])])));
        }
        for (i, j, c) in &a.delta2[b] {
            out.push((c.clone(), Term::Op(m.clone(), vec![rho(*i, &xy[1]), rho(*j, &xy[0])])));
        }
        Some(out)
    }
}

fn trace_symbols(rs: &RewriteSystem) -> Option<(&Symbol, &Symbol)> {
    match &rs.theory {
        Theory::Trace { trace, product } => Some((trace, product)),
        _ => None,
    }
}

fn is_op(t: &Term, name: &Symbol) -> bool {
    matches!(t, Term::Op(n, _) if n == name)
}

#[derive(Debug)]
struct Associativity;

impl Rule for Associativity {
    fn name(&self) -> &'static str {
        "associativity"
    }

    fn apply(&self, t: &Term, _: bool, rs: &RewriteSystem) -> Option<Rewritten> {
        let (_, mul) = trace_symbols(rs)?;
        let Term::Op(m, cs) = t else { return None };
        if m != mul {
            return None;
        }
        let Term::Op(m2, ab) = &cs[0] else { return None };
        if m2 != mul {
            return None;
        }
        let right = Term::Op(mul.clone(), vec![ab[1].clone(), cs[1].clone()]);
        Some(one(rs, Term::Op(mul.clone(), vec![ab[0].clone(), right])))
    }
}

#[derive(Debug)]
struct TraceCentral;

impl Rule for TraceCentral {
    fn name(&self) -> &'static str {
        "trace-central"
    }

    fn apply(&self, t: &Term, _: bool, rs: &RewriteSystem) -> Option<Rewritten> {
        let (tr, mul) = trace_symbols(rs)?;
        let Term::Op(m, cs) = t else { return None };
        if m != mul || is_op(&cs[0], mul) {
            return None;
        }
        let a = &cs[0];
        let (b, rest) = match &cs[1] {
            Term::Op(m2, br) if m2 == mul => (&br[0], Some(&br[1])),
            other => (other, None),
        };
        if !is_op(b, tr) || (is_op(a, tr) && a <= b) {
            return None;
        }
        let swapped = match rest {
            Some(r) => Term::Op(mul.clone(), vec![b.clone(), Term::Op(mul.clone(), vec![a.clone(), r.clone()])]),
            None => Term::Op(mul.clone(), vec![b.clone(), a.clone()]),
        };
        Some(one(rs, swapped))
    }
}

#[derive(Debug)]
struct TraceOfCentral;

impl Rule for TraceOfCentral {
    fn name(&self) -> &'static str {
        "trace-of-central-factor"
    }

    fn apply(&self, t: &Term, _: bool, rs: &RewriteSystem) -> Option<Rewritten> {
        let (tr, mul) = trace_symbols(rs)?;
        let Term::Op(name, cs) = t else { return None };
        if name != tr {
            return None;
        }
        let Term::Op(m, fr) = &cs[0] else { return None };
        if m != mul || !is_op(&fr[0], tr) {
            return None;
        }
        let inner = Term::Op(tr.clone(), vec![fr[1].clone()]);
        Some(one(rs, Term::Op(mul.clone(), vec![fr[0].clone(), inner])))
    }
}

/// Factors of a right-normed product.
fn factors<'a>(t: &'a Term, mul: &Symbol) -> Vec<&'a Term> {
    let mut out = Vec::new();
    let mut cur = t;
    while let Term::Op(m, cs) = cur {
        if m != mul {
            break;
        }
        out.push(&cs[0]);
        cur = &cs[1];
    }
    out.push(cur);
    out
}

fn right_normed(fs: &[Term], mul: &Symbol) -> Term {
    let (last, init) = fs.split_last().expect("nonempty product");
    init.iter()
        .rev()
        .fold(last.clone(), |acc, f| Term::Op(mul.clone(), vec![f.clone(), acc]))
}

/// Least cyclic rotation of a word, as a right-normed product.
fn least_rotation(fs: &[Term], mul: &Symbol) -> Term {
    (0..fs.len())
        .map(|s| {
            let rotated: Vec<Term> = fs[s..].iter().chain(&fs[..s]).cloned().collect();
            right_normed(&rotated, mul)
        })
        .min()
        .expect("nonempty word")
}

#[derive(Debug)]
struct TraceCyclic;

impl Rule for TraceCyclic {
    fn name(&self) -> &'static str {
        "trace-cyclic"
    }

    fn apply(&self, t: &Term, _: bool, rs: &RewriteSystem) -> Option<Rewritten> {
        let (tr, mul) = trace_symbols(rs)?;
        let Term::Op(name, cs) = t else { return None };
        if name != tr || !is_op(&cs[0], mul) || !rs.is_normal(&cs[0]) {
            return None;
        }
        let fs: Vec<Term> = factors(&cs[0], mul).into_iter().cloned().collect();
        if fs.iter().any(|f| is_op(f, tr)) {
            return None;
        }
        let least = least_rotation(&fs, mul);
        (least != cs[0]).then(|| one(rs, Term::Op(tr.clone(), vec![least])))
    }
}

/// Strips nested traces: `tr^d(u)` gives `(d, u)`.
fn trace_depth<'a>(mut t: &'a Term, tr: &Symbol) -> (usize, &'a Term) {
    let mut d = 0;
    while let Term::Op(name, cs) = t {
        if name != tr {
            break;
        }
        d += 1;
        t = &cs[0];
    }
    (d, t)
}

/// `tr^i(a)·tr^j(b) = tr^{i+j-1}(a)·tr(b)`: all surplus nesting among the
/// trace factors of a product goes to a factor with the least core.
#[derive(Debug)]
struct TraceDepthShift;

impl Rule for TraceDepthShift {
    fn name(&self) -> &'static str {
        "trace-depth-shift"
    }

    fn apply(&self, t: &Term, _: bool, rs: &RewriteSystem) -> Option<Rewritten> {
        let (tr, mul) = trace_symbols(rs)?;
        if !is_op(t, mul) {
            return None;
        }
        let fs = factors(t, mul);
        let traces: Vec<(usize, usize, &Term)> = fs
            .iter()
            .enumerate()
            .filter(|(_, f)| is_op(f, tr))
            .map(|(k, f)| {
                let (d, core) = trace_depth(f, tr);
                (k, d, core)
            })
            .collect();
        let surplus: usize = traces.iter().map(|(_, d, _)| d - 1).sum();
        if traces.len() < 2 || surplus == 0 {
            return None;
        }
        let least = traces.iter().map(|(_, _, c)| *c).min()?;
        let deep: Vec<_> = traces.iter().filter(|(_, d, _)| *d > 1).collect();
        if deep.len() == 1 && deep[0].2 == least {
            return None;
        }
        let target = traces.iter().find(|(_, _, c)| *c == least)?.0;
        let mut out: Vec<Term> = fs.into_iter().cloned().collect();
        for (k, _, core) in &traces {
            let depth = if *k == target { 1 + surplus } else { 1 };
            out[*k] = (0..depth).fold((*core).clone(), |acc, _| Term::Op(tr.clone(), vec![acc]));
        }
        Some(one(rs, right_normed(&out, mul)))
    }
}

/// Multilinear normal monomials of the trace theory: a sorted product of
/// traces of cyclically least words, followed by a word. Nested traces are
/// not enumerated.
fn trace_monomials(tr: &Symbol, mul: &Symbol, n: usize, cap: usize) -> Result<Vec<Term>> {
    // (n+1)·n! monomials
    let count = (1..=n).fold((n + 1) as f64, |acc, k| acc * k as f64);
    if count > cap as f64 {
        return Err(Error::CapExceeded { count: format!("{count:.0}"), cap });
    }
    let vars: Vec<u32> = (1..=n as u32).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let word: Vec<u32> = vars.iter().copied().filter(|v| mask & (1 << (v - 1)) != 0).collect();
        let rest: Vec<u32> = vars.iter().copied().filter(|v| mask & (1 << (v - 1)) == 0).collect();
        for cycles in cycle_decompositions(&rest) {
            let mut traces: Vec<Term> = cycles
                .iter()
                .map(|c| {
                    let letters: Vec<Term> = c.iter().map(|&v| Term::Var(v)).collect();
                    Term::Op(tr.clone(), vec![least_rotation(&letters, mul)])
                })
                .collect();
            traces.sort();
            for perm in permutations(&word) {
                let mut fs = traces.clone();
                fs.extend(perm.iter().map(|&v| Term::Var(v)));
                if !fs.is_empty() {
                    out.push(right_normed(&fs, mul));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (k, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

/// All ways to arrange `items` into disjoint cycles; each cycle starts with
/// its smallest element.
fn cycle_decompositions(items: &[u32]) -> Vec<Vec<Vec<u32>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for mask in 0u32..(1 << rest.len()) {
        let chosen: Vec<u32> = rest.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &v)| v).collect();
        let others: Vec<u32> = rest.iter().enumerate().filter(|(k, _)| mask & (1 << k) == 0).map(|(_, &v)| v).collect();
        for order in permutations(&chosen) {
            let mut cycle = vec![first];
            cycle.extend(order);
            for mut tail in cycle_decompositions(&others) {
                tail.insert(0, cycle.clone());
                out.push(tail);
            }
        }
    }
    out
}

/// All `n`-tuples over `choices`, lexicographically.
pub(crate) fn tuples(choices: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |&c| {
                    let mut v = prefix.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Term {
        Term::var(i)
    }

    fn mul(a: Term, b: Term) -> Term {
        Term::binary("mul", a, b)
    }

    fn pi(g: &str, t: Term) -> Term {
        Term::proj(g, t)
    }

    fn z2_system() -> RewriteSystem {
        RewriteSystem::graded(Signature::binary(), Semigroup::cyclic(2), [0, 1].into(), Field::Rationals).unwrap()
    }

    fn single(t: Term) -> Polynomial {
        Polynomial::from_term(t, Field::Rationals)
    }

    #[test]
    fn projection_rules() {
        let rs = z2_system();
        assert_eq!(rs.normalize_term(&pi("1", pi("1", x(1)))).unwrap(), single(pi("1", x(1))));
        assert!(rs.normalize_term(&pi("0", pi("1", x(1)))).unwrap().is_zero());
        let expanded = rs.normalize_term(&x(1)).unwrap();
        assert_eq!(expanded.to_string(), "pi[0](x1) + pi[1](x1)");
        // 1 + 1 = 0 in Z_2
        assert!(rs.normalize_term(&pi("1", mul(pi("1", x(1)), pi("1", x(2))))).unwrap().is_zero());
        let kept = mul(pi("1", x(1)), pi("1", x(2)));
        assert_eq!(rs.normalize_term(&pi("0", kept.clone())).unwrap(), single(kept));
    }

    #[test]
    fn support_restricts_decomposition() {
        let rs = RewriteSystem::graded(Signature::binary(), Semigroup::cyclic(2), [0].into(), Field::Rationals).unwrap();
        assert_eq!(rs.normalize_term(&x(1)).unwrap(), single(pi("0", x(1))));
        assert!(rs.normalize_term(&pi("1", x(1))).unwrap().is_zero());
    }

    #[test]
    fn homogeneous_degrees() {
        let rs = z2_system();
        assert_eq!(rs.homogeneous_degree(&pi("1", x(1))).unwrap(), 1);
        assert_eq!(rs.homogeneous_degree(&mul(pi("1", x(1)), pi("1", x(2)))).unwrap(), 0);
        assert!(matches!(rs.homogeneous_degree(&x(1)), Err(Error::NotNormal(_))));
        let z3 = Semigroup::cyclic(3);
        let sig = Signature::new([("t", 3)]).unwrap();
        let rs3 = RewriteSystem::graded(sig, z3, [0, 1, 2].into(), Field::Rationals).unwrap();
        let t = Term::op("t", vec![pi("1", x(1)), pi("2", x(2)), pi("2", x(3))]);
        assert_eq!(rs3.homogeneous_degree(&t).unwrap(), 2);
    }

    #[test]
    fn normal_monomial_counts() {
        let rs = z2_system();
        let one = rs.normal_multilinear_monomials(1, None).unwrap();
        assert_eq!(one, vec![pi("0", x(1)), pi("1", x(1))]);
        let two = rs.normal_multilinear_monomials(2, Some(&[0, 1])).unwrap();
        assert_eq!(two, vec![mul(pi("0", x(1)), pi("1", x(2))), mul(pi("1", x(2)), pi("0", x(1)))]);
        assert_eq!(rs.normal_multilinear_monomials(3, None).unwrap().len(), 96);
    }

    #[test]
    fn invalid_input_is_rejected() {
        let rs = z2_system();
        assert!(rs.normalize_term(&pi("5", x(1))).is_err());
        assert!(rs.normalize_term(&Term::op("mul", vec![x(1)])).is_err());
        let mut off = z2_system();
        off.set_finitely_normalizing(false);
        assert!(matches!(off.normalize_term(&x(1)), Err(Error::NotFinitelyNormalizing(_))));
        let mut tiny = z2_system();
        tiny.step_budget = 3;
        let deep = mul(mul(x(1), x(2)), mul(x(3), x(4)));
        assert!(matches!(tiny.normalize_term(&deep), Err(Error::StepBudgetExceeded(3))));
    }

    #[test]
    fn trace_monomial_count() {
        let tr: Symbol = "tr".into();
        let mul: Symbol = "mul".into();
        assert_eq!(trace_monomials(&tr, &mul, 1, 100).unwrap().len(), 2);
        assert_eq!(trace_monomials(&tr, &mul, 2, 100).unwrap().len(), 6);
        assert_eq!(trace_monomials(&tr, &mul, 3, 100).unwrap().len(), 24);
    }
}
