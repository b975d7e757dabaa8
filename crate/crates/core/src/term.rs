//! Ω-terms: rooted trees over a signature, the projection symbols `π_g`, and
//! variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::signature::Signature;

pub type Symbol = Arc<str>;

/// A monomial of the free Ω-algebra.
///
/// `Proj` is the projection `π_g` onto a grading component; `Graded` is a
/// decorated generator `x_i^{(g)}` of the free graded algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(u32),
    Graded(u32, Symbol),
    Op(Symbol, Vec<Term>),
    Proj(Symbol, Box<Term>),
}

impl Term {
    pub fn var(i: u32) -> Term {
        Term::Var(i)
    }

    pub fn graded(i: u32, g: &str) -> Term {
        Term::Graded(i, g.into())
    }

    pub fn op(name: &str, children: Vec<Term>) -> Term {
        Term::Op(name.into(), children)
    }

    pub fn constant(name: &str) -> Term {
        Term::Op(name.into(), Vec::new())
    }

    pub fn proj(g: &str, t: Term) -> Term {
        Term::Proj(g.into(), Box::new(t))
    }

    pub fn unary(name: &str, t: Term) -> Term {
        Term::Op(name.into(), vec![t])
    }

    pub fn binary(name: &str, a: Term, b: Term) -> Term {
        Term::Op(name.into(), vec![a, b])
    }

    /// Position in the filtration `W_0 ⊂ W_1 ⊂ ...`: leaves have degree 0 and
    /// every operation or projection node adds one.
    pub fn degree(&self) -> usize {
        match self {
            Term::Var(_) | Term::Graded(..) => 0,
            Term::Op(_, cs) if cs.is_empty() => 0,
            Term::Op(_, cs) => 1 + cs.iter().map(Term::degree).sum::<usize>(),
            Term::Proj(_, c) => 1 + c.degree(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Graded(..) => 1,
            Term::Op(_, cs) => 1 + cs.iter().map(Term::size).sum::<usize>(),
            Term::Proj(_, c) => 1 + c.size(),
        }
    }

    pub fn is_leaf_variable(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Graded(..))
    }

    /// Occurrence count of each plain or decorated variable index.
    pub fn variable_counts(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        self.visit_leaves(&mut |t| {
            if let Term::Var(i) | Term::Graded(i, _) = t {
                *out.entry(*i).or_insert(0) += 1;
            }
        });
        out
    }

    fn visit_leaves(&self, f: &mut impl FnMut(&Term)) {
        match self {
            Term::Var(_) | Term::Graded(..) => f(self),
            Term::Op(_, cs) => {
                if cs.is_empty() {
                    f(self)
                }
                cs.iter().for_each(|c| c.visit_leaves(f))
            }
            Term::Proj(_, c) => c.visit_leaves(f),
        }
    }

    /// Every variable in `1..=n` occurs exactly once and nothing else occurs.
    pub fn is_multilinear_in(&self, n: u32) -> bool {
        let counts = self.variable_counts();
        counts.len() == n as usize && counts.iter().all(|(&i, &c)| c == 1 && (1..=n).contains(&i))
    }

    pub fn contains_constant(&self) -> bool {
        match self {
            Term::Var(_) | Term::Graded(..) => false,
            Term::Op(_, cs) => cs.is_empty() || cs.iter().any(Term::contains_constant),
            Term::Proj(_, c) => c.contains_constant(),
        }
    }

    pub fn contains_projection(&self) -> bool {
        match self {
            Term::Var(_) | Term::Graded(..) => false,
            Term::Op(_, cs) => cs.iter().any(Term::contains_projection),
            Term::Proj(..) => true,
        }
    }

    /// Checks arities against `sig`; projections are always accepted.
    pub fn check_against(&self, sig: &Signature) -> Result<()> {
        match self {
            Term::Var(_) | Term::Graded(..) => Ok(()),
            Term::Proj(_, c) => c.check_against(sig),
            Term::Op(name, cs) => match sig.arity(name) {
                None => Err(Error::MalformedTerm(format!("unknown operation {name}"))),
                Some(a) if a != cs.len() => Err(Error::MalformedTerm(format!(
                    "{name} takes {a} arguments, got {}",
                    cs.len()
                ))),
                Some(_) => cs.iter().try_for_each(|c| c.check_against(sig)),
            },
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Term::Var(_) => 0,
            Term::Graded(..) => 1,
            Term::Op(..) => 2,
            Term::Proj(..) => 3,
        }
    }
}

impl Ord for Term {
    /// Degree first, then the root symbol, then the children left to right.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.kind_rank().cmp(&other.kind_rank()))
            .then_with(|| match (self, other) {
                (Term::Var(a), Term::Var(b)) => a.cmp(b),
                (Term::Graded(a, g), Term::Graded(b, h)) => a.cmp(b).then_with(|| g.cmp(h)),
                (Term::Op(f, xs), Term::Op(g, ys)) => f.cmp(g).then_with(|| xs.cmp(ys)),
                (Term::Proj(g, x), Term::Proj(h, y)) => g.cmp(h).then_with(|| x.cmp(y)),
                _ => unreachable!("kinds compared first"),
            })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Graded(i, g) => write!(f, "x{i}^{{{g}}}"),
            Term::Op(name, cs) if cs.is_empty() => write!(f, "{name}"),
            Term::Op(name, cs) => {
                write!(f, "{name}(")?;
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            Term::Proj(g, c) => write!(f, "pi[{g}]({c})"),
        }
    }
}
