//! Enumeration of multilinear monomials of the free Ω-algebra.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::term::{Symbol, Term};

/// Default cap on the number of enumerated monomials.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// Multilinear trees in `x_1..x_n` whose internal nodes carry `ops` (all of
/// arity at least two) and whose leaves are drawn from `atoms(i)` for the
/// variable `x_i`. Sorted in term order.
pub(crate) fn multilinear_trees(
    ops: &[(Symbol, usize)],
    atoms: &dyn Fn(u32) -> Vec<Term>,
    n: u32,
    cap: usize,
) -> Result<Vec<Term>> {
    if n == 0 {
        return Err(Error::Unsupported("multilinear degree must be at least 1".into()));
    }
    if let Some((name, _)) = ops.iter().find(|(_, a)| *a < 2) {
        return Err(Error::CapExceeded {
            count: format!("infinitely many (unary operation {name} can be stacked)"),
            cap,
        });
    }
    let atom_lists: Vec<Vec<Term>> = (1..=n).map(atoms).collect();
    let total = shape_count(ops, n as usize) * atom_lists.iter().map(|a| a.len() as f64).product::<f64>();
    if total > cap as f64 {
        return Err(Error::CapExceeded { count: format!("{total:.0}"), cap });
    }
    let mut memo: HashMap<u32, Vec<Term>> = HashMap::new();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut out = generate(full, ops, &atom_lists, &mut memo);
    out.sort();
    out.dedup();
    Ok(out)
}

/// Number of labelled tree shapes with `k` leaves.
fn shape_count(ops: &[(Symbol, usize)], k: usize) -> f64 {
    let mut f = vec![0f64; k + 1];
    if k >= 1 {
        f[1] = 1.0;
    }
    for size in 2..=k {
        let mut total = 0.0;
        for (_, m) in ops {
            total += ordered_partition_weight(&f, size, *m);
        }
        f[size] = total;
    }
    f[k]
}

/// Sum over ordered partitions of a `size`-set into `m` blocks of the
/// product of `f(block size)`.
fn ordered_partition_weight(f: &[f64], size: usize, m: usize) -> f64 {
    fn rec(f: &[f64], remaining: usize, blocks: usize) -> f64 {
        if blocks == 0 {
            return if remaining == 0 { 1.0 } else { 0.0 };
        }
        let mut total = 0.0;
        for first in 1..=remaining {
            if first >= f.len() {
                break;
            }
            total += binomial(remaining, first) * f[first] * rec(f, remaining - first, blocks - 1);
        }
        total
    }
    rec(f, size, m)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn generate(
    set: u32,
    ops: &[(Symbol, usize)],
    atoms: &[Vec<Term>],
    memo: &mut HashMap<u32, Vec<Term>>,
) -> Vec<Term> {
    if let Some(v) = memo.get(&set) {
        return v.clone();
    }
    let members: Vec<u32> = (0..32).filter(|b| set & (1 << b) != 0).collect();
    let mut out = Vec::new();
    if members.len() == 1 {
        out = atoms[members[0] as usize].clone();
    } else {
        for (name, m) in ops {
            for blocks in ordered_partitions(&members, *m) {
                let parts: Vec<Vec<Term>> = blocks.iter().map(|&b| generate(b, ops, atoms, memo)).collect();
                for children in cartesian(&parts) {
                    out.push(Term::Op(name.clone(), children));
                }
            }
        }
    }
    memo.insert(set, out.clone());
    out
}

/// All ways to split `members` into `m` nonempty blocks, as bitmasks in block
/// order.
fn ordered_partitions(members: &[u32], m: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if members.len() < m {
        return out;
    }
    let total = m.pow(members.len() as u32);
    for code in 0..total {
        let mut blocks = vec![0u32; m];
        let mut c = code;
        for &v in members {
            blocks[c % m] |= 1 << v;
            c /= m;
        }
        if blocks.iter().all(|&b| b != 0) {
            out.push(blocks);
        }
    }
    out
}

pub(crate) fn cartesian(parts: &[Vec<Term>]) -> Vec<Vec<Term>> {
    let mut acc: Vec<Vec<Term>> = vec![Vec::new()];
    for part in parts {
        let mut next = Vec::with_capacity(acc.len() * part.len());
        for prefix in &acc {
            for t in part {
                let mut v = prefix.clone();
                v.push(t.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// All terms multilinear in `x_1..x_n` over the signature (optionally only
/// over the listed operations), without constants. Unary operations make
/// this set infinite and are reported as a cap error.
pub fn multilinear_monomials(
    sig: &Signature,
    n: usize,
    restricted_to: Option<&BTreeSet<String>>,
    cap: usize,
) -> Result<Vec<Term>> {
    let ops: Vec<(Symbol, usize)> = sig
        .ops()
        .iter()
        .filter(|o| o.arity >= 1)
        .filter(|o| restricted_to.is_none_or(|r| r.contains(&o.name)))
        .map(|o| (Symbol::from(o.name.as_str()), o.arity))
        .collect();
    multilinear_trees(&ops, &|i| vec![Term::Var(i)], n as u32, cap)
}
