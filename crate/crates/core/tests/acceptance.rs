//! Acceptance criteria 1–10. Prints one `[PASS]` or `[FAIL]` line per
//! criterion and exits nonzero if any fails.

mod common;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{expand, gf, pauli_conjugate, q, random_binding, random_graded_binding, random_term, CLI_CASES};
use num::{BigRational, Zero};
use omegalg::algebra::{direct_sum, StructuredAlgebra};
use omegalg::cli::{run_with, Settings};
use omegalg::identities::{
    basis_tuple_counterexample, find_separating_identity, identity_space, same_identities_upto, system_for,
    translate_to_omega, Side,
};
use omegalg::isosearch::{find_graded_isomorphism, is_graded_isomorphism, IsoOutcome, Strategy};
use omegalg::linalg::add_scaled;
use omegalg::poly::Polynomial;
use omegalg::presets::{
    check_membership, colour_lie_check, gl11, hopf_samples, involution_preset, sl2_trivially_graded, trace_preset,
    transpose_action_preset, Epsilon,
};
use omegalg::rewrite::Theory;
use omegalg::samples::{group_algebra, matrix, pauli_m2, quaternion, trivial_m2, trivially_graded, upper_triangular};
use omegalg::signature::{Semigroup, Signature};
use omegalg::structure::{is_graded_prime, is_graded_simple, products_vanish, IdealBasis};
use omegalg::term::Term;
use omegalg::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {:.1} s, limit {} s", took.as_secs_f64(), limit.as_secs()))
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn rewrite_soundness() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for field in [gf(7), q()] {
        let samples = [
            trivial_m2(field),
            pauli_m2(field),
            group_algebra(&Semigroup::cyclic(2), field),
            direct_sum(&pauli_m2(field), &pauli_m2(field)).map_err(e)?,
        ];
        for a in &samples {
            let rs = system_for(&[a], Theory::Free).map_err(e)?;
            let group = a.grading().ok_or("sample is ungraded")?.group.clone();
            for _ in 0..1000 {
                let t = random_term(&mut rng, a.signature(), Some(&group), 3, 6);
                let p = Polynomial::from_term(t.clone(), field);
                let nf = rs.normalize(&p).map_err(e)?;
                ensure(rs.normalize(&nf).map_err(e)? == nf, format!("normalize is not idempotent on {t}"))?;
                let binding = random_binding(&mut rng, a, 3);
                ensure(
                    a.eval(&nf, &binding).map_err(e)? == a.eval(&p, &binding).map_err(e)?,
                    format!("value changed by normalizing {t}"),
                )?;
                for (w, _) in nf.iter() {
                    let g = rs.homogeneous_degree(w).map_err(e)?;
                    let projected = Term::proj(group.name(g), w.clone());
                    ensure(
                        rs.normalize_term(&projected).map_err(e)? == Polynomial::from_term(w.clone(), field),
                        format!("pi_deg(w) != w for {w}"),
                    )?;
                    let v = a.eval_term(w, &binding).map_err(e)?;
                    ensure(a.project(group.name(g), &v).map_err(e)? == v, format!("{w} is not homogeneous"))?;
                }
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{checked} terms over GF(7) and Q"))
}

/// Replaces every `x_i` by a decorated `x_i^{g}` with random `g`.
fn decorate(t: &Term, rng: &mut ChaCha8Rng, group: &Semigroup) -> Term {
    match t {
        Term::Var(i) => Term::graded(*i, group.name(rng.gen_range(0..group.len()))),
        Term::Op(name, cs) => Term::op(name, cs.iter().map(|c| decorate(c, rng, group)).collect()),
        other => other.clone(),
    }
}

fn translation_agreement() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    for a in [pauli_m2(gf(7)), pauli_m2(q()), group_algebra(&Semigroup::cyclic(3), q())] {
        let group = a.grading().ok_or("ungraded")?.group.clone();
        for _ in 0..500 {
            let w = decorate(&random_term(&mut rng, a.signature(), None, 3, 6), &mut rng, &group);
            let f = Polynomial::from_term(w.clone(), a.field());
            let psi = translate_to_omega(&f, &group).map_err(e)?;
            let graded = random_graded_binding(&mut rng, &a, 3);
            let mut summed: HashMap<u32, Vec<Scalar>> = HashMap::new();
            for ((i, _), v) in &graded {
                add_scaled(summed.entry(*i).or_insert_with(|| a.zero()), &a.field().one(), v);
            }
            ensure(
                a.eval(&psi, &summed).map_err(e)? == a.eval_graded(&f, &graded).map_err(e)?,
                format!("e'(psi(w)) != e(w) for {w}"),
            )?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{checked} graded monomials"))
}

fn grading_separation() -> Verdict {
    let start = Instant::now();
    let args = expand(&["omegalg", "compare", "@m2_trivial.alg", "@m2_pauli.alg", "--max-degree", "2"]);
    let out = run_with(args, Settings::default());
    ensure(out.code == 1, format!("exit code {}", out.code))?;
    let first = out.stdout.lines().next().unwrap_or_default();
    ensure(
        first == "differ at degree 1, constraint x1:1, separating identity pi[1](x1)",
        format!("report {first:?}"),
    )?;
    let (a, b) = (trivial_m2(gf(7)), pauli_m2(gf(7)));
    let rs = system_for(&[&a, &b], Theory::Free).map_err(e)?;
    let sep = find_separating_identity(&a, &b, &rs, 2).map_err(e)?.ok_or("no separation")?;
    ensure(sep.degree == 1 && sep.constraint == Some(vec![1]), "wrong degree or constraint")?;
    ensure(sep.identity.to_string() == "pi[1](x1)" && sep.satisfied_by == Side::First, "wrong identity")?;
    within(start, Duration::from_secs(5))?;
    Ok(first.to_string())
}

fn direct_sum_stability() -> Verdict {
    let start = Instant::now();
    let m2 = matrix(2, q());
    let sum = direct_sum(&m2, &m2).map_err(e)?;
    let rs = system_for(&[&m2, &sum], Theory::Free).map_err(e)?;
    let mut dims = Vec::new();
    for n in 1..=4 {
        let a = identity_space(&m2, &rs, n, None).map_err(e)?;
        let b = identity_space(&sum, &rs, n, None).map_err(e)?;
        ensure(a.nullspace == b.nullspace, format!("degree {n} differs"))?;
        dims.push(a.dim());
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("identity dimensions by degree {dims:?}"))
}

fn non_closed_field() -> Verdict {
    let start = Instant::now();
    let (h, m2) = (quaternion(q()).map_err(e)?, matrix(2, q()));
    let rs = system_for(&[&h, &m2], Theory::Free).map_err(e)?;
    let cmp = same_identities_upto(&h, &m2, &rs, 4).map_err(e)?;
    ensure(cmp.equal, format!("identity spaces differ at {:?}", cmp.mismatch))?;
    let f3 = gf(3);
    let (h3, m3) = (quaternion(f3).map_err(e)?, matrix(2, f3));
    let split = match find_graded_isomorphism(&h3, &m3, Strategy::Exhaustive).map_err(e)? {
        IsoOutcome::Found(phi) => is_graded_isomorphism(&phi, &h3, &m3).map_err(e)?.ok,
        other => return Err(format!("GF(3) analogue: {}", other.label())),
    };
    ensure(split, "GF(3) witness does not verify")?;
    let outcome = find_graded_isomorphism(&h, &m2, Strategy::Random { budget: 200_000, seed: 5 }).map_err(e)?;
    ensure(
        outcome.label() == "inconclusive: field not algebraically closed",
        format!("rational pair: {}", outcome.label()),
    )?;
    within(start, Duration::from_secs(900))?;
    Ok("equal identities to degree 4; GF(3) analogues isomorphic; Q pair inconclusive".into())
}

type QMatrix = Vec<Vec<BigRational>>;

fn q_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])).collect())
        .collect()
}

/// The trace of `a` times the identity.
fn q_trace(a: &QMatrix) -> QMatrix {
    let n = a.len();
    let t = (0..n).fold(BigRational::zero(), |acc, i| acc + &a[i][i]);
    (0..n).map(|i| (0..n).map(|j| if i == j { t.clone() } else { BigRational::zero() }).collect()).collect()
}

fn q_eval(t: &Term, x: &[QMatrix]) -> QMatrix {
    match t {
        Term::Var(i) => x[*i as usize - 1].clone(),
        Term::Op(name, cs) if name.as_ref() == "mul" => q_mul(&q_eval(&cs[0], x), &q_eval(&cs[1], x)),
        Term::Op(name, cs) if name.as_ref() == "tr" => q_trace(&q_eval(&cs[0], x)),
        other => panic!("unexpected term {other}"),
    }
}

/// Value of `p` on random integer `n×n` matrices with the usual trace,
/// computed without the library's algebra machinery.
fn vanishes_on_matrices(p: &Polynomial, n: usize, rng: &mut ChaCha8Rng) -> bool {
    let x: Vec<QMatrix> = (0..3)
        .map(|_| (0..n).map(|_| (0..n).map(|_| BigRational::from_integer(rng.gen_range(-5..=5).into())).collect()).collect())
        .collect();
    let mut acc: QMatrix = vec![vec![BigRational::zero(); n]; n];
    for (t, c) in p.iter() {
        let (num, den) = c.as_fraction().expect("rational coefficient");
        let c = BigRational::new(num, den);
        let v = q_eval(t, &x);
        for i in 0..n {
            for j in 0..n {
                acc[i][j] += &c * &v[i][j];
            }
        }
    }
    acc.iter().flatten().all(|v| v.is_zero())
}

fn trace_separation() -> Verdict {
    let start = Instant::now();
    let samples = trace_preset(q()).samples;
    let get = |name: &str| samples.iter().find(|(n, _)| n == name).map(|(_, a)| a.clone()).ok_or("missing sample");
    let (a1, a2) = (get("m2+m1")?, get("m2+m1+m1")?);
    let rs = system_for(&[&a1, &a2], trace_preset(q()).theory).map_err(e)?;
    let sep = find_separating_identity(&a1, &a2, &rs, 3).map_err(e)?.ok_or("no separating identity")?;
    ensure(sep.degree == 3, format!("separated at degree {}", sep.degree))?;
    ensure(sep.satisfied_by == Side::First, "identity is satisfied by the second algebra")?;
    ensure(basis_tuple_counterexample(&a1, &sep.identity, 3).map_err(e)?.is_none(), "fails on a basis tuple of A1")?;
    let witness = basis_tuple_counterexample(&a2, &sep.identity, 3).map_err(e)?.ok_or("holds on all of A2")?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    ensure(
        (0..5).all(|_| vanishes_on_matrices(&sep.identity, 3, &mut rng)),
        "identity fails on 3x3 matrices",
    )?;
    ensure(!vanishes_on_matrices(&sep.identity, 4, &mut rng), "identity holds on a random 4x4 triple")?;
    within(start, Duration::from_secs(600))?;
    let names: Vec<&str> = witness.iter().map(|&i| a2.basis()[i].as_str()).collect();
    Ok(format!("{} terms, violated in A2 at ({})", sep.identity.len(), names.join(", ")))
}

/// A nonzero proper subspace closed under every product with a basis element.
fn is_proper_ideal(a: &StructuredAlgebra, ideal: &IdealBasis) -> Result<bool, String> {
    if ideal.dim() == 0 || !ideal.is_proper() {
        return Ok(false);
    }
    for v in ideal.vectors.rows() {
        for j in 0..a.dim() {
            let b = a.basis_vector(j);
            for w in [a.apply("mul", &[v.as_slice(), &b]).map_err(e)?, a.apply("mul", &[&b, v]).map_err(e)?] {
                if !ideal.vectors.contains(&w) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn structure_tests() -> Verdict {
    let limit = Duration::from_secs(1);
    let kz2 = group_algebra(&Semigroup::cyclic(2), q());
    for (name, a) in [("M2 trivial", trivial_m2(q())), ("M2 Pauli", pauli_m2(q())), ("KZ2 natural", kz2.clone())] {
        let start = Instant::now();
        ensure(is_graded_simple(&a).map_err(e)?.simple, format!("{name} is not simple"))?;
        within(start, limit)?;
    }
    let trivial_kz2 = trivially_graded(&kz2, &Semigroup::cyclic(2));
    for (name, a) in [("KZ2 trivial", trivial_kz2), ("UT2", upper_triangular(2, q()))] {
        let start = Instant::now();
        let rep = is_graded_simple(&a).map_err(e)?;
        ensure(!rep.simple, format!("{name} reported simple"))?;
        let w = rep.witness.ok_or(format!("{name}: no witness"))?;
        ensure(is_proper_ideal(&a, &w)?, format!("{name}: witness is not a proper ideal"))?;
        within(start, limit)?;
    }
    let start = Instant::now();
    let m1 = matrix(1, q());
    let sum = direct_sum(&m1, &m1).map_err(e)?;
    let rep = is_graded_prime(&sum).map_err(e)?;
    ensure(!rep.prime, "M1+M1 reported prime")?;
    let (i, j) = rep.witness.ok_or("no witness pair")?;
    ensure(is_proper_ideal(&sum, &i)? && is_proper_ideal(&sum, &j)?, "witnesses are not proper ideals")?;
    ensure(products_vanish(&sum, &i.vectors, &j.vectors).map_err(e)?, "IJ is not zero")?;
    within(start, limit)?;
    Ok("simple: M2 (both gradings), KZ2; not simple: trivial KZ2, UT2; M1+M1 not prime".into())
}

fn isomorphism_consistency() -> Verdict {
    let start = Instant::now();
    let f = gf(3);
    let (a, b) = (pauli_m2(f), pauli_conjugate(f));
    let IsoOutcome::Found(phi) = find_graded_isomorphism(&a, &b, Strategy::Exhaustive).map_err(e)? else {
        return Err("no isomorphism found".into());
    };
    let check = is_graded_isomorphism(&phi, &a, &b).map_err(e)?;
    ensure(check.ok, format!("witness fails: {:?}", check.reason))?;
    let rs = system_for(&[&a, &b], Theory::Free).map_err(e)?;
    let cmp = same_identities_upto(&a, &b, &rs, 3).map_err(e)?;
    ensure(cmp.equal, format!("graded identities differ at {:?}", cmp.mismatch))?;
    within(start, Duration::from_secs(300))?;
    Ok("verified isomorphism; graded identities agree to degree 3".into())
}

/// Replaces `star` by `rho_s` and back.
fn rename(t: &Term, from: &str, to: &str) -> Term {
    match t {
        Term::Op(name, cs) => {
            let n = if name.as_ref() == from { to } else { name.as_ref() };
            Term::op(n, cs.iter().map(|c| rename(c, from, to)).collect())
        }
        other => other.clone(),
    }
}

fn preset_conformance() -> Verdict {
    let start = Instant::now();
    let f = q();
    let mut counted = Vec::new();
    let involution = involution_preset(f);
    let transpose = transpose_action_preset(f).map_err(e)?;
    let mut presets = vec![involution.clone(), trace_preset(f), transpose.clone()];
    presets.extend(hopf_samples(f).map_err(e)?.into_iter().map(|(_, p)| p));
    for p in &presets {
        for (name, a) in &p.samples {
            let bad = check_membership(a, p).map_err(e)?;
            if let Some(v) = bad.first() {
                return Err(format!("{} sample {name}: {v}", p.name));
            }
        }
        counted.push(format!("{} {}", p.name, p.samples.len()));
    }
    let expected = ["involution 2", "trace 3", "genaction 1", "hopf 1", "hopf 1"];
    ensure(counted == expected, format!("sample counts {counted:?}"))?;
    let trivial = Semigroup::trivial();
    ensure(colour_lie_check(&sl2_trivially_graded(f), "br", &Epsilon::trivial(&trivial, f)).map_err(e)?.is_empty(), "sl2")?;
    ensure(colour_lie_check(&gl11(f), "br", &Epsilon::super_sign(f)).map_err(e)?.is_empty(), "gl(1|1)")?;

    let inv_rs = involution.rewrite_system().map_err(e)?;
    let act_rs = transpose.rewrite_system().map_err(e)?;
    let sig = Signature::new([("mul", 2), ("star", 1)]).map_err(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..500 {
        let t = random_term(&mut rng, &sig, None, 3, 6);
        let via_star = inv_rs.normalize_term(&t).map_err(e)?;
        let via_action = act_rs.normalize_term(&rename(&t, "star", "rho_s")).map_err(e)?;
        let back = Polynomial::from_terms(f, via_action.iter().map(|(w, c)| (c.clone(), rename(w, "rho_s", "star"))));
        ensure(back == via_star, format!("normal forms differ on {t}"))?;
    }
    within(start, Duration::from_secs(120))?;
    Ok("9 samples conform; transpose encoding matches involution normal forms on 500 terms".into())
}

fn cli_determinism() -> Verdict {
    let start = Instant::now();
    let mut commands = std::collections::BTreeSet::new();
    for (name, args) in CLI_CASES {
        let mut argv = vec!["omegalg", "--json", "--seed", "42"];
        argv.extend_from_slice(args);
        let argv = expand(&argv);
        let first = run_with(argv.clone(), Settings::default());
        let second = run_with(argv, Settings::default());
        ensure(first == second, format!("{name} differs between runs"))?;
        ensure(first.stdout.contains("\"schema\": \"omegalg.report/1\""), format!("{name}: no schema field"))?;
        commands.insert(args[0]);
    }
    ensure(commands.len() == 10, format!("covered commands {commands:?}"))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("{} invocations over {} commands", CLI_CASES.len(), commands.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("rewrite soundness", rewrite_soundness),
        ("translation agreement", translation_agreement),
        ("grading separation", grading_separation),
        ("direct-sum identity stability", direct_sum_stability),
        ("non-closed-field phenomenon", non_closed_field),
        ("trace separation", trace_separation),
        ("structure tests", structure_tests),
        ("isomorphism consistency", isomorphism_consistency),
        ("preset conformance", preset_conformance),
        ("CLI determinism", cli_determinism),
    ];
    let only: Option<usize> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != k + 1) {
            continue;
        }
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("[PASS] criterion {}: {name} ({secs:.2} s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name} ({secs:.2} s): {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
