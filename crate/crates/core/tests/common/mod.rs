#![allow(dead_code)]

use std::path::PathBuf;

use omegalg::algebra::{direct_sum, Grading, StructuredAlgebra};
use omegalg::format::AlgebraFile;
use omegalg::presets::{block_trace_algebra, gl11, sl2_trivially_graded, symplectic_m2, transpose_m2};
use omegalg::samples::{group_algebra, matrix, pauli_m2, quaternion, trivial_m2, trivially_graded, upper_triangular};
use omegalg::signature::{Semigroup, Signature};
use omegalg::term::Term;
use omegalg::Field;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q() -> Field {
    Field::Rationals
}

pub fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn data(name: &str) -> String {
    data_dir().join(name).display().to_string()
}

/// `Z_2` with elements named `e` and `g`.
pub fn eg() -> Semigroup {
    Semigroup::new(vec!["e".into(), "g".into()], vec![vec![0, 1], vec![1, 0]]).unwrap()
}

/// The Pauli grading of `M_2` in the homogeneous basis `1`, `z = diag(1,-1)`,
/// `x = e12 + e21`, `y = e12 - e21`.
pub fn pauli_conjugate(f: Field) -> StructuredAlgebra {
    let m2 = matrix(2, f);
    let c = |v: i64| f.from_i64(v);
    // coordinates in e11, e12, e21, e22
    let new_basis = [[1, 0, 0, 1], [1, 0, 0, -1], [0, 1, 1, 0], [0, 1, -1, 0]];
    let vectors: Vec<Vec<_>> = new_basis.iter().map(|r| r.iter().map(|&v| c(v)).collect()).collect();
    let names = ["one", "z", "x", "y"].map(String::from).to_vec();
    let mut a = StructuredAlgebra::new(f, names, Signature::binary()).unwrap();
    let matrix_of: Vec<Vec<_>> = (0..4).map(|i| (0..4).map(|j| vectors[j][i].clone()).collect()).collect();
    let inverse = omegalg::linalg::inverse(&matrix_of, f).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let prod = m2.apply("mul", &[&vectors[i], &vectors[j]]).unwrap();
            a.set("mul", &[i, j], omegalg::linalg::mat_vec(&inverse, &prod, f)).unwrap();
        }
    }
    a.attach_grading(Grading::new(Semigroup::cyclic(2), vec![0, 0, 1, 1])).unwrap()
}

fn file(algebra: StructuredAlgebra, preset: Option<&str>) -> AlgebraFile {
    AlgebraFile { algebra, preset: preset.map(String::from) }
}

/// Every shipped algebra file with the algebra it must contain.
pub fn corpus() -> Vec<(&'static str, AlgebraFile)> {
    let m1 = |f| matrix(1, f);
    vec![
        ("m2_trivial.alg", file(trivial_m2(gf(7)), None)),
        ("m2_pauli.alg", file(pauli_m2(gf(7)), None)),
        ("m2_pauli_gf3.alg", file(pauli_m2(gf(3)), None)),
        ("m2_pauli_conj_gf3.alg", file(pauli_conjugate(gf(3)), None)),
        ("kz2_graded.alg", file(group_algebra(&Semigroup::cyclic(2), q()), None)),
        ("kz2_trivial.alg", file(trivially_graded(&group_algebra(&Semigroup::cyclic(2), q()), &Semigroup::cyclic(2)), None)),
        ("kz2_gf2.alg", file(group_algebra(&Semigroup::cyclic(2), gf(2)).without_grading(), None)),
        ("g.alg", file(group_algebra(&eg(), q()), None)),
        ("ut2.alg", file(upper_triangular(2, q()), None)),
        ("m1m1.alg", file(direct_sum(&m1(q()), &m1(q())).unwrap(), None)),
        ("m1m1_gf2.alg", file(direct_sum(&m1(gf(2)), &m1(gf(2))).unwrap(), None)),
        ("m2_q.alg", file(matrix(2, q()), None)),
        ("m2m2_q.alg", file(direct_sum(&matrix(2, q()), &matrix(2, q())).unwrap(), None)),
        ("quaternion_q.alg", file(quaternion(q()).unwrap(), None)),
        ("m2_transpose.alg", file(transpose_m2(q()), Some("involution"))),
        ("m2_symplectic.alg", file(symplectic_m2(q()), Some("involution"))),
        ("trace_m2.alg", file(block_trace_algebra(&[2], q()).unwrap(), Some("trace"))),
        ("trace_m2m1.alg", file(block_trace_algebra(&[2, 1], q()).unwrap(), Some("trace"))),
        ("trace_m2m1m1.alg", file(block_trace_algebra(&[2, 1, 1], q()).unwrap(), Some("trace"))),
        ("m2_grouplike.alg", file(matrix(2, q()), Some("hopf:grouplike.hopf"))),
        ("m2_primitive.alg", file(matrix(2, q()), Some("hopf:primitive.hopf"))),
        ("m2_transpose_action.alg", file(matrix(2, q()), Some("genaction:transpose.gen"))),
        ("sl2.alg", file(sl2_trivially_graded(q()), Some("colour-lie:trivial.eps"))),
        ("gl11.alg", file(gl11(q()), Some("colour-lie:super.eps"))),
    ]
}

/// A random term of degree at most `max_degree` in `x1..x_vars`, with
/// projections when `group` is given.
pub fn random_term(rng: &mut ChaCha8Rng, sig: &Signature, group: Option<&Semigroup>, vars: u32, max_degree: usize) -> Term {
    let ops: Vec<_> = sig.ops().to_vec();
    if max_degree == 0 || rng.gen_bool(0.25) {
        let leaves: Vec<_> = ops.iter().filter(|o| o.arity == 0).collect();
        if !leaves.is_empty() && rng.gen_bool(0.15) {
            return Term::constant(&leaves[rng.gen_range(0..leaves.len())].name);
        }
        return Term::var(rng.gen_range(1..=vars));
    }
    if let Some(g) = group {
        if rng.gen_bool(0.3) {
            let e = g.name(rng.gen_range(0..g.len())).to_string();
            return Term::proj(&e, random_term(rng, sig, group, vars, max_degree - 1));
        }
    }
    let inner: Vec<_> = ops.iter().filter(|o| o.arity > 0).collect();
    let op = inner[rng.gen_range(0..inner.len())];
    let mut budget = max_degree - 1;
    let mut children = Vec::with_capacity(op.arity);
    for _ in 0..op.arity {
        let share = if budget == 0 { 0 } else { rng.gen_range(0..=budget) };
        let child = random_term(rng, sig, group, vars, share);
        budget -= child.degree().min(budget);
        children.push(child);
    }
    Term::op(&op.name, children)
}

/// A random homogeneous element of each degree for `x1..x_vars`.
pub fn random_graded_binding(
    rng: &mut ChaCha8Rng,
    a: &StructuredAlgebra,
    vars: u32,
) -> std::collections::HashMap<(u32, String), omegalg::linalg::Vector> {
    let gr: &Grading = a.grading().expect("graded");
    let mut out = std::collections::HashMap::new();
    for i in 1..=vars {
        for g in 0..gr.group.len() {
            let mut v = a.zero();
            for j in gr.component(g) {
                v[j] = a.field().from_i64(rng.gen_range(-3..=3));
            }
            out.insert((i, gr.group.name(g).to_string()), v);
        }
    }
    out
}

/// A random element of `a` for each of `x1..x_vars`.
pub fn random_binding(
    rng: &mut ChaCha8Rng,
    a: &StructuredAlgebra,
    vars: u32,
) -> std::collections::HashMap<u32, omegalg::linalg::Vector> {
    (1..=vars)
        .map(|i| (i, (0..a.dim()).map(|_| a.field().from_i64(rng.gen_range(-3..=3))).collect()))
        .collect()
}

/// Replaces `@name` arguments with paths into the data directory.
pub fn expand(args: &[&str]) -> Vec<String> {
    args.iter().map(|a| a.strip_prefix('@').map(data).unwrap_or_else(|| a.to_string())).collect()
}

/// Every documented command on the shipped corpus; `@name` is a data file.
pub const CLI_CASES: &[(&str, &[&str])] = &[
    ("validate_transpose", &["validate", "@m2_transpose.alg"]),
    ("validate_gl11", &["validate", "@gl11.alg"]),
    ("validate_primitive", &["validate", "@m2_primitive.alg"]),
    ("normalize_g", &["normalize", "@g.alg", "--term", "pi[g](pi[g](x1))"]),
    ("normalize_involution", &["normalize", "@m2_transpose.alg", "--preset", "involution", "--term", "star(mul(x1,star(x2)))"]),
    ("normalize_superinvolution", &["normalize", "@m2_pauli.alg", "--preset", "superinvolution", "--term", "pi[1](star(mul(x1,x2)))"]),
    ("normalize_trace", &["normalize", "@trace_m2.alg", "--term", "tr(mul(x1,tr(x2)))"]),
    ("normalize_genaction", &["normalize", "@m2_transpose_action.alg", "--term", "rho_s(mul(x1,rho_s(x2)))"]),
    ("eval_pauli", &["eval", "@m2_pauli.alg", "--term", "mul(x1,pi[1](x2)) - 3*x1", "--at", "x1=e12, x2=e21 + e11"]),
    ("idspace_pauli", &["idspace", "@m2_pauli.alg", "--degree", "2", "--constraint", "x1:1,x2:1"]),
    ("idspace_m2", &["idspace", "@m2_q.alg", "--degree", "3"]),
    ("compare_gradings", &["compare", "@m2_trivial.alg", "@m2_pauli.alg", "--max-degree", "2"]),
    ("compare_sum", &["compare", "@m2_q.alg", "@m2m2_q.alg", "--max-degree", "3"]),
    ("separate_trace", &["separate", "@trace_m2m1.alg", "@trace_m2m1m1.alg", "--max-degree", "3"]),
    ("simple_kz2", &["simple", "@kz2_graded.alg"]),
    ("simple_kz2_trivial", &["simple", "@kz2_trivial.alg"]),
    ("simple_ut2", &["simple", "@ut2.alg"]),
    ("prime_m1m1", &["prime", "@m1m1.alg"]),
    ("prime_pauli", &["prime", "@m2_pauli_gf3.alg"]),
    ("iso_pauli", &["iso", "@m2_pauli_gf3.alg", "@m2_pauli_conj_gf3.alg", "--strategy", "exhaustive"]),
    ("iso_gf2", &["iso", "@m1m1_gf2.alg", "@kz2_gf2.alg"]),
    ("iso_quaternion", &["iso", "@quaternion_q.alg", "@m2_q.alg", "--strategy", "random", "--budget", "2000", "--seed", "11"]),
    ("iso_random_m1m1", &["iso", "@m1m1.alg", "@m1m1.alg", "--strategy", "random", "--budget", "20000", "--seed", "5"]),
    ("translate_from", &["translate", "--direction", "from-omega", "--poly", "pi[1](mul(x1,x2))", "@m2_pauli.alg"]),
    ("translate_to", &["translate", "--direction", "to-omega", "--poly", "mul(x1^{1},x2^{0}) - x1^{0}", "@m2_pauli.alg"]),
    ("error_parse", &["normalize", "@m2_pauli.alg", "--term", "mul(x1,,x2)"]),
];
