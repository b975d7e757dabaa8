//! Polynomials: finite linear combinations of terms with exact coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::term::Term;

/// Canonical linear combination of terms: no zero coefficients, terms kept
/// in the fixed term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    terms: BTreeMap<Term, Scalar>,
}

impl Polynomial {
    pub fn zero(field: Field) -> Polynomial {
        Polynomial { field, terms: BTreeMap::new() }
    }

    pub fn from_term(term: Term, field: Field) -> Polynomial {
        let mut p = Polynomial::zero(field);
        p.add_term(field.one(), term);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Scalar, Term)>>(field: Field, items: I) -> Polynomial {
        let mut p = Polynomial::zero(field);
        for (c, t) in items {
            p.add_term(c, t);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &Term) -> Scalar {
        self.terms.get(t).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, coef: Scalar, term: Term) {
        assert_eq!(coef.field(), self.field, "coefficient field");
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&term) {
            Some(c) => {
                *c = &*c + &coef;
                if c.is_zero() {
                    self.terms.remove(&term);
                }
            }
            None => {
                self.terms.insert(term, coef);
            }
        }
    }

    pub fn add_scaled(&mut self, coef: &Scalar, other: &Polynomial) {
        for (t, c) in &other.terms {
            self.add_term(coef * c, t.clone());
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let mut out = self.clone();
        out.add_scaled(&self.field.one(), other);
        Ok(out)
    }

    pub fn scaled(&self, coef: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        out.add_scaled(coef, self);
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(&-self.field.one(), other);
        out
    }

    /// Applies `f` to every term, summing the images with the coefficients.
    pub fn map_terms(&self, mut f: impl FnMut(&Term) -> Result<Polynomial>) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.field);
        for (t, c) in &self.terms {
            out.add_scaled(c, &f(t)?);
        }
        Ok(out)
    }

    /// Smallest term, if any.
    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.keys().next()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{t}")?;
            } else {
                write!(f, "{mag}*{t}")?;
            }
        }
        Ok(())
    }
}

/// Multilinear expansion of every combination of child polynomials through
/// `build`, which assembles a term from one term per child.
pub(crate) fn expand_product(
    field: Field,
    children: &[Polynomial],
    mut build: impl FnMut(Vec<Term>) -> Term,
) -> Polynomial {
    let mut out = Polynomial::zero(field);
    let mut acc: Vec<(Scalar, Vec<Term>)> = vec![(field.one(), Vec::new())];
    for child in children {
        let mut next = Vec::with_capacity(acc.len() * child.len());
        for (c, ts) in &acc {
            for (t, d) in child.iter() {
                let mut ts = ts.clone();
                ts.push(t.clone());
                next.push((c * d, ts));
            }
        }
        acc = next;
    }
    for (c, ts) in acc {
        out.add_term(c, build(ts));
    }
    out
}

/// Replaces each plain variable of `t` by its bound polynomial and expands.
/// Decorated variables are left unchanged.
pub fn substitute(t: &Term, binding: &HashMap<u32, Polynomial>, field: Field) -> Result<Polynomial> {
    if let Some(p) = binding.values().find(|p| p.field() != field) {
        return Err(Error::FieldMismatch(p.field(), field));
    }
    subst_rec(t, binding, field)
}

fn subst_rec(t: &Term, binding: &HashMap<u32, Polynomial>, field: Field) -> Result<Polynomial> {
    match t {
        Term::Var(i) => binding.get(i).cloned().ok_or(Error::UnboundVariable(*i)),
        Term::Graded(..) => Ok(Polynomial::from_term(t.clone(), field)),
        Term::Proj(g, c) => {
            let inner = subst_rec(c, binding, field)?;
            Ok(expand_product(field, &[inner], |mut ts| Term::Proj(g.clone(), Box::new(ts.remove(0)))))
        }
        Term::Op(name, cs) => {
            let children = cs.iter().map(|c| subst_rec(c, binding, field)).collect::<Result<Vec<_>>>()?;
            Ok(expand_product(field, &children, |ts| Term::Op(name.clone(), ts)))
        }
    }
}

/// Substitutes into every term of a polynomial.
pub fn substitute_poly(p: &Polynomial, binding: &HashMap<u32, Polynomial>) -> Result<Polynomial> {
    p.map_terms(|t| substitute(t, binding, p.field()))
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

    #[test]
    fn substitute_renames_and_expands() {
        let q = Field::Rationals;
        let mut b = HashMap::new();
        b.insert(1, Polynomial::from_term(x(2), q));
        let p = substitute(&Term::proj("g", x(1)), &b, q).unwrap();
        assert_eq!(p, Polynomial::from_term(Term::proj("g", x(2)), q));

        let sum = Polynomial::from_terms(q, [(q.one(), x(2)), (q.one(), x(3))]);
        b.insert(1, sum);
        let p = substitute(&mul(x(1), x(1)), &b, q).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.to_string(), "mul(x2,x2) + mul(x2,x3) + mul(x3,x2) + mul(x3,x3)");
    }

    #[test]
    fn substitute_is_linear_in_each_slot() {
        let q = Field::Rationals;
        let mut b = HashMap::new();
        b.insert(1, Polynomial::from_term(x(1), q).scaled(&q.from_i64(2)));
        b.insert(2, Polynomial::zero(q));
        assert!(substitute(&mul(x(1), x(2)), &b, q).unwrap().is_zero());
    }

    #[test]
    fn unbound_variable_is_named() {
        let q = Field::Rationals;
        let err = substitute(&mul(x(1), x(7)), &HashMap::from([(1, Polynomial::zero(q))]), q).unwrap_err();
        assert_eq!(err, Error::UnboundVariable(7));
    }

    #[test]
    fn display_signs() {
        let q = Field::Rationals;
        let p = Polynomial::from_terms(q, [(q.from_i64(-1), x(1)), (Field::Rationals.from_i64(3), x(2))]);
        assert_eq!(p.to_string(), "-x1 + 3*x2");
        assert_eq!(p.sub(&p).to_string(), "0");
    }
}
