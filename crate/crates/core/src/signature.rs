//! Operation signatures and finite semigroups.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A named operation with its arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operation {
    pub name: String,
    pub arity: usize,
}

/// A set of operations with unique names, at least one of arity two or more.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    ops: Vec<Operation>,
    index: BTreeMap<String, usize>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Identifiers of the form `x<digits>` denote variables in term syntax.
pub(crate) fn is_variable_name(name: &str) -> bool {
    name.strip_prefix('x').is_some_and(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
}

impl Signature {
    pub fn new<I, S>(ops: I) -> Result<Signature>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut out = Signature { ops: Vec::new(), index: BTreeMap::new() };
        for (name, arity) in ops {
            let name = name.into();
            if !is_identifier(&name) || is_variable_name(&name) || name == "pi" {
                return Err(Error::InvalidSignature(format!("{name:?} is not a usable operation name")));
            }
            if out.index.insert(name.clone(), out.ops.len()).is_some() {
                return Err(Error::InvalidSignature(format!("duplicate operation {name:?}")));
            }
            out.ops.push(Operation { name, arity });
        }
        if !out.ops.iter().any(|o| o.arity >= 2) {
            return Err(Error::InvalidSignature("needs an operation of arity at least 2".into()));
        }
        Ok(out)
    }

    /// The signature with one binary product `mul`.
    pub fn binary() -> Signature {
        Signature::new([("mul", 2)]).expect("valid")
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.index.get(name).map(|&i| self.ops[i].arity)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// The arity-`m` part of the signature.
    pub fn of_arity(&self, m: usize) -> impl Iterator<Item = &Operation> {
        self.ops.iter().filter(move |o| o.arity == m)
    }

    /// Same operations with the same arities, in any order.
    pub fn same_as(&self, other: &Signature) -> bool {
        let a: BTreeMap<_, _> = self.ops.iter().map(|o| (&o.name, o.arity)).collect();
        let b: BTreeMap<_, _> = other.ops.iter().map(|o| (&o.name, o.arity)).collect();
        a == b
    }

    /// Adds operations, keeping the existing ones.
    pub fn extend<I, S>(&self, ops: I) -> Result<Signature>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut all: Vec<(String, usize)> = self.ops.iter().map(|o| (o.name.clone(), o.arity)).collect();
        all.extend(ops.into_iter().map(|(n, a)| (n.into(), a)));
        Signature::new(all)
    }
}

/// A finite semigroup given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl Semigroup {
    /// Validates the table shape and associativity.
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Semigroup> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidSemigroup("no elements".into()));
        }
        for (i, e) in elements.iter().enumerate() {
            if e.is_empty() || e.contains([']', ',', ' ', ':', '\t']) {
                return Err(Error::InvalidSemigroup(format!("bad element name {e:?}")));
            }
            if elements[..i].contains(e) {
                return Err(Error::InvalidSemigroup(format!("duplicate element {e:?}")));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSemigroup(format!("table must be {n}x{n}")));
        }
        if let Some(bad) = table.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::InvalidSemigroup(format!("table entry {bad} out of range")));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidSemigroup(format!(
                            "not associative at ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(Semigroup { elements, table })
    }

    /// Z_n with elements named `0..n`.
    pub fn cyclic(n: usize) -> Semigroup {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Semigroup::new(elements, table).expect("cyclic group")
    }

    pub fn trivial() -> Semigroup {
        Semigroup::cyclic(1)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Left-to-right product; `None` for an empty sequence.
    pub fn product<I: IntoIterator<Item = usize>>(&self, items: I) -> Option<usize> {
        items.into_iter().reduce(|a, b| self.mul(a, b))
    }

    /// Two-sided identity, if any.
    pub fn identity(&self) -> Option<usize> {
        (0..self.len()).find(|&e| (0..self.len()).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }
}
