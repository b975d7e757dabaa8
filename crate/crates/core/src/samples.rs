//! Constructors for the standard small algebras.

use std::str::FromStr;

use crate::algebra::{Grading, StructuredAlgebra};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::signature::{Semigroup, Signature};

/// Names of the built-in algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Matrix(usize),
    Quaternion,
    GroupAlgebra(Semigroup),
    UpperTriangular(usize),
}

impl FromStr for Builtin {
    type Err = Error;

    /// `matrix(n)`, `quaternion`, `group_algebra(Zn)`, `upper_triangular(n)`.
    fn from_str(s: &str) -> Result<Builtin> {
        let s = s.trim();
        if s == "quaternion" {
            return Ok(Builtin::Quaternion);
        }
        let (head, arg) = s
            .strip_suffix(')')
            .and_then(|r| r.split_once('('))
            .ok_or_else(|| Error::Parse(format!("unknown builtin {s:?}")))?;
        let number = |a: &str| a.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad parameter in {s:?}")));
        match head.trim() {
            "matrix" => Ok(Builtin::Matrix(number(arg)?)),
            "upper_triangular" => Ok(Builtin::UpperTriangular(number(arg)?)),
            "group_algebra" => {
                let n = arg.trim().strip_prefix('Z').ok_or_else(|| Error::Parse("expected Zn".into()))?;
                Ok(Builtin::GroupAlgebra(Semigroup::cyclic(number(n)?)))
            }
            _ => Err(Error::Parse(format!("unknown builtin {s:?}"))),
        }
    }
}

pub fn builtin(b: &Builtin, field: Field) -> Result<StructuredAlgebra> {
    match b {
        Builtin::Matrix(n) if *n >= 1 => Ok(matrix(*n, field)),
        Builtin::UpperTriangular(n) if *n >= 1 => Ok(upper_triangular(*n, field)),
        Builtin::Matrix(_) | Builtin::UpperTriangular(_) => Err(Error::InvalidAlgebra("size must be positive".into())),
        Builtin::Quaternion => quaternion(field),
        Builtin::GroupAlgebra(g) => Ok(group_algebra(g, field)),
    }
}

pub(crate) fn unit_name(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("e{}{}", i + 1, j + 1)
    } else {
        format!("e{}_{}", i + 1, j + 1)
    }
}

/// Index of the matrix unit `e_{ij}` (zero-based) in [`matrix`].
pub fn unit(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// `M_n` with the matrix-unit basis `e11, e12, ...` and product `mul`.
pub fn matrix(n: usize, field: Field) -> StructuredAlgebra {
    let names = (0..n).flat_map(|i| (0..n).map(move |j| unit_name(n, i, j))).collect();
    let mut a = StructuredAlgebra::new(field, names, Signature::binary()).expect("valid");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                a.set_combination("mul", &[unit(n, i, j), unit(n, j, k)], &[(1, unit(n, i, k))])
                    .expect("valid");
            }
        }
    }
    a
}

/// Upper triangular `n×n` matrices, basis `e_{ij}` with `i ≤ j`.
pub fn upper_triangular(n: usize, field: Field) -> StructuredAlgebra {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let idx = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("upper");
    let names = pairs.iter().map(|&(i, j)| unit_name(n, i, j)).collect();
    let mut a = StructuredAlgebra::new(field, names, Signature::binary()).expect("valid");
    for &(i, j) in &pairs {
        for k in j..n {
            a.set_combination("mul", &[idx(i, j), idx(j, k)], &[(1, idx(i, k))]).expect("valid");
        }
    }
    a
}

/// Quaternions `one, i, j, k` with `i² = j² = -1`, `ij = k = -ji`.
pub fn quaternion(field: Field) -> Result<StructuredAlgebra> {
    if field.characteristic() == 2 {
        return Err(Error::InvalidAlgebra("quaternions need characteristic other than 2".into()));
    }
    let names = ["one", "i", "j", "k"].map(String::from).to_vec();
    let mut a = StructuredAlgebra::new(field, names, Signature::binary())?;
    // (sign, index) of basis products, rows/cols in the order one, i, j, k
    let table: [[(i64, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    for (x, row) in table.iter().enumerate() {
        for (y, &(s, z)) in row.iter().enumerate() {
            a.set_combination("mul", &[x, y], &[(s, z)])?;
        }
    }
    Ok(a)
}

/// The semigroup algebra with basis `u<g>` and its natural grading.
pub fn group_algebra(g: &Semigroup, field: Field) -> StructuredAlgebra {
    let names = g.elements().iter().map(|e| format!("u{e}")).collect();
    let mut a = StructuredAlgebra::new(field, names, Signature::binary()).expect("valid");
    for x in 0..g.len() {
        for y in 0..g.len() {
            a.set_combination("mul", &[x, y], &[(1, g.mul(x, y))]).expect("valid");
        }
    }
    a.attach_grading(Grading::new(g.clone(), (0..g.len()).collect())).expect("natural grading")
}

/// The same algebra with every basis vector in the identity degree of `group`.
pub fn trivially_graded(a: &StructuredAlgebra, group: &Semigroup) -> StructuredAlgebra {
    let e = group.identity().unwrap_or(0);
    a.without_grading()
        .attach_grading(Grading::constant(group.clone(), a.dim(), e))
        .expect("trivial grading is always compatible")
}

/// `M_2` with the Z_2-grading: diagonal even, antidiagonal odd.
pub fn pauli_m2(field: Field) -> StructuredAlgebra {
    let m2 = matrix(2, field);
    m2.attach_grading(Grading::new(Semigroup::cyclic(2), vec![0, 1, 1, 0])).expect("compatible")
}

/// `M_2` trivially graded by Z_2.
pub fn trivial_m2(field: Field) -> StructuredAlgebra {
    trivially_graded(&matrix(2, field), &Semigroup::cyclic(2))
}
