//! Dense exact linear algebra over [`Field`]: incremental reduced row echelon
//! forms, nullspaces, and a few matrix helpers.

use num::{BigInt, Integer, One, Signed, Zero};

use crate::scalar::{Field, Scalar};

pub type Vector = Vec<Scalar>;
/// Row-major.
pub type Matrix = Vec<Vec<Scalar>>;

pub fn zero_vector(field: Field, len: usize) -> Vector {
    vec![field.zero(); len]
}

pub fn unit_vector(field: Field, len: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, len);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_scaled(acc: &mut [Scalar], coef: &Scalar, v: &[Scalar]) {
    if coef.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = &*a + &(coef * b);
        }
    }
}

pub fn scale(v: &[Scalar], c: &Scalar) -> Vector {
    v.iter().map(|x| x * c).collect()
}

pub fn identity(field: Field, n: usize) -> Matrix {
    (0..n).map(|i| unit_vector(field, n, i)).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, field: Field) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = zero_vector(field, cols);
            for (k, c) in row.iter().enumerate() {
                add_scaled(&mut out, c, &b[k]);
            }
            out
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Scalar], field: Field) -> Vector {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// An incrementally maintained reduced row echelon basis of a subspace.
///
/// Pivots are the leftmost nonzero column of each row, normalized to one,
/// and rows are kept sorted by pivot.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon {
    field: Field,
    width: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Field, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<I: IntoIterator<Item = Vector>>(field: Field, width: usize, rows: I) -> Self {
        let mut e = Echelon::new(field, width);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, mut v: Vector) -> Vector {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -&v[p];
                add_scaled(&mut v, &c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v.to_vec()))
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        assert_eq!(v.len(), self.width, "vector width");
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inverse().expect("nonzero pivot");
        v = scale(&v, &inv);
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let c = -&row[p];
                add_scaled(row, &c, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    /// Reduced echelon basis of `{ x : row . x = 0 for every row }`.
    pub fn orthogonal_complement(&self) -> Echelon {
        let free: Vec<usize> = (0..self.width).filter(|c| self.pivots.binary_search(c).is_err()).collect();
        let basis = free.iter().map(|&f| {
            let mut v = unit_vector(self.field, self.width, f);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = -&row[f];
            }
            v
        });
        Echelon::from_rows(self.field, self.width, basis)
    }

    pub fn same_span(&self, other: &Echelon) -> bool {
        self.width == other.width && self.pivots == other.pivots && self.rows == other.rows
    }
}

pub fn rank(rows: &Matrix, field: Field) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    Echelon::from_rows(field, width, rows.iter().cloned()).rank()
}

/// Kernel of `a` acting on column vectors.
pub fn kernel(a: &Matrix, field: Field, width: usize) -> Echelon {
    Echelon::from_rows(field, width, a.iter().cloned()).orthogonal_complement()
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(a: &Matrix, field: Field) -> Option<Matrix> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit_vector(field, n, i));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].inverse().ok()?;
        m[col] = scale(&m[col], &inv);
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let c = -&m[r][col];
                let pivot_row = m[col].clone();
                add_scaled(&mut m[r], &c, &pivot_row);
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Characteristic polynomial `det(tI - a)`, coefficients from the constant
/// term upwards, via the Faddeev-LeVerrier recursion. Needs characteristic 0
/// or above the matrix size.
pub fn characteristic_polynomial(a: &Matrix, field: Field) -> Option<Vec<Scalar>> {
    let n = a.len();
    if field.characteristic() != 0 && field.characteristic() <= n as u64 {
        return None;
    }
    let mut coeffs = vec![field.zero(); n + 1];
    coeffs[n] = field.one();
    let mut m = zero_matrix(field, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(a, &m, field);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &coeffs[n - k + 1];
        }
        m = next;
        let am = mat_mul(a, &m, field);
        let trace = (0..n).fold(field.zero(), |acc, i| &acc + &am[i][i]);
        let k_inv = field.from_i64(k as i64).inverse().ok()?;
        coeffs[n - k] = -(&trace * &k_inv);
    }
    Some(coeffs)
}

fn zero_matrix(field: Field, n: usize) -> Matrix {
    vec![zero_vector(field, n); n]
}

/// Distinct rational roots of a rational polynomial (coefficients from the
/// constant term upwards), by the rational root test. Gives up on integer
/// coefficients too large to factor by trial division.
pub fn rational_roots(coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
    let field = Field::Rationals;
    let mut coeffs: Vec<Scalar> = coeffs.to_vec();
    while coeffs.last().is_some_and(Scalar::is_zero) {
        coeffs.pop();
    }
    let mut roots = Vec::new();
    // factor out t^k
    let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(field.zero());
        coeffs.drain(..lead_zeros);
    }
    if coeffs.len() <= 1 {
        return Some(roots);
    }
    let denom_lcm = coeffs
        .iter()
        .map(|c| c.as_fraction().expect("rational").1)
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| {
            let (n, d) = c.as_fraction().expect("rational");
            n * (&denom_lcm / d)
        })
        .collect();
    let nums = divisors(&ints[0].abs())?;
    let dens = divisors(&ints[ints.len() - 1].abs())?;
    let mut candidates: Vec<Scalar> = Vec::new();
    for p in &nums {
        for q in &dens {
            for sign in [1i64, -1] {
                let c = field.from_fraction(&(p * BigInt::from(sign)), q).expect("nonzero denominator");
                if !candidates.contains(&c) {
                    candidates.push(c);
                }
            }
        }
    }
    for c in candidates {
        let value = coeffs.iter().rev().fold(field.zero(), |acc, a| &(&acc * &c) + a);
        if value.is_zero() {
            roots.push(c);
        }
    }
    Some(roots)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let limit = BigInt::from(1_000_000_000_000i64);
    if n > &limit {
        return None;
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    if n.is_zero() {
        out.push(BigInt::one());
    }
    out.sort();
    Some(out)
}
