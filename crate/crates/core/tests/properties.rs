//! Invariants checked on generated inputs.

mod common;

use std::collections::HashMap;

use common::{gf, q, random_binding, random_graded_binding, random_term};
use omegalg::algebra::{direct_sum, StructuredAlgebra};
use omegalg::format::{parse_algebra, serialize_algebra, AlgebraFile};
use omegalg::identities::{identity_space, system_for, translate_from_omega, translate_to_omega};
use omegalg::poly::Polynomial;
use omegalg::presets::{grouplike_action, hopf_preset, involution_preset, superinvolution_preset, trace_preset, transpose_action_preset};
use omegalg::rewrite::{Strategy as Order, Theory};
use omegalg::samples::{matrix, pauli_m2, trivial_m2};
use omegalg::signature::{Semigroup, Signature};
use omegalg::syntax::{parse_polynomial, parse_term, Context};
use omegalg::term::Term;
use omegalg::Field;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn decorate(t: &Term, rng: &mut ChaCha8Rng, group: &Semigroup) -> Term {
    match t {
        Term::Var(i) => Term::graded(*i, group.name(rng.gen_range(0..group.len()))),
        Term::Op(name, cs) => Term::op(name, cs.iter().map(|c| decorate(c, rng, group)).collect()),
        other => other.clone(),
    }
}

fn fuzz_alphabet() -> impl Strategy<Value = String> {
    proptest::collection::vec(
        prop_oneof![
            Just("x"), Just("1"), Just("2"), Just("0"), Just("("), Just(")"), Just(","), Just("["), Just("]"),
            Just("{"), Just("}"), Just("^"), Just("pi"), Just("mul"), Just("star"), Just(" "), Just("+"),
            Just("-"), Just("*"), Just("/"), Just("é"), Just("\n"),
        ],
        0..40,
    )
    .prop_map(|parts| parts.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parser_never_panics(text in fuzz_alphabet(), raw in ".{0,60}") {
        let sig = Signature::new([("mul", 2), ("star", 1)]).unwrap();
        let z2 = Semigroup::cyclic(2);
        for t in [&text, &raw] {
            let ctx = Context::new(&sig).with_group(&z2);
            if let Err(e) = parse_term(t, ctx) {
                prop_assert!(matches!(e, omegalg::Error::Positioned { .. }), "{e}");
            }
            let _ = parse_polynomial(t, gf(7), ctx);
            let _ = omegalg::syntax::parse_vector(t, q(), &["e11".to_string()], "v");
        }
    }

    #[test]
    fn algebra_parser_never_panics(lines in proptest::collection::vec(prop_oneof![
        Just("field: Q".to_string()), Just("field: GF(5)".to_string()), Just("signature: mul/2".to_string()),
        Just("basis: a b".to_string()), Just("[semigroup]".to_string()), Just("cyclic 2".to_string()),
        Just("[operations]".to_string()), Just("mul(a,b) = a".to_string()), Just("mul(b,b) = 2*b - a".to_string()),
        Just("[grading]".to_string()), Just("0: a".to_string()), Just("1: b".to_string()),
        "[ -~]{0,20}",
    ], 0..14)) {
        let text = lines.join("\n");
        if let Ok(f) = parse_algebra(&text, "fuzz.alg") {
            prop_assert_eq!(parse_algebra(&serialize_algebra(&f), "again.alg").unwrap(), f);
        }
    }

    #[test]
    fn printed_terms_reparse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sig = Signature::new([("mul", 2), ("star", 1), ("one", 0), ("t", 3)]).unwrap();
        let z3 = Semigroup::cyclic(3);
        let t = random_term(&mut rng, &sig, Some(&z3), 4, 7);
        let back = parse_term(&t.to_string(), Context::new(&sig).with_group(&z3)).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn random_algebras_round_trip(seed in any::<u64>(), p in prop_oneof![Just(0u64), Just(2), Just(5)]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = if p == 0 { q() } else { gf(p) };
        let dim = rng.gen_range(1..4);
        let sig = Signature::new([("mul", 2), ("u", 1), ("c", 0)]).unwrap();
        let basis = (0..dim).map(|i| format!("b{i}")).collect();
        let mut a = StructuredAlgebra::new(field, basis, sig).unwrap();
        for (op, arity) in [("mul", 2), ("u", 1), ("c", 0)] {
            for _ in 0..rng.gen_range(0..5) {
                let tuple: Vec<usize> = (0..arity).map(|_| rng.gen_range(0..dim)).collect();
                let v = (0..dim)
                    .map(|_| field.from_fraction(&rng.gen_range(-4..5).into(), &rng.gen_range(1..4).into()).unwrap_or(field.zero()))
                    .collect();
                a.set(op, &tuple, v).unwrap();
            }
        }
        let file = AlgebraFile { algebra: a, preset: None };
        let text = serialize_algebra(&file);
        prop_assert_eq!(parse_algebra(&text, "r.alg").unwrap(), file);
    }

    #[test]
    fn normalization_is_sound_and_idempotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for a in [pauli_m2(gf(7)), trivial_m2(q())] {
            let rs = system_for(&[&a], Theory::Free).unwrap();
            let group = &a.grading().unwrap().group;
            let t = random_term(&mut rng, a.signature(), Some(group), 3, 6);
            let p = Polynomial::from_term(t, a.field());
            let nf = rs.normalize(&p).unwrap();
            prop_assert_eq!(rs.normalize(&nf).unwrap(), nf.clone());
            let binding = random_binding(&mut rng, &a, 3);
            prop_assert_eq!(a.eval(&nf, &binding).unwrap(), a.eval(&p, &binding).unwrap());
            for (w, _) in nf.iter() {
                prop_assert!(rs.is_normal(w));
            }
        }
    }

    #[test]
    fn rewriting_is_confluent(seed in any::<u64>(), order in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let presets = [
            involution_preset(q()),
            superinvolution_preset(gf(5)),
            trace_preset(q()),
            hopf_preset(&grouplike_action(q())).unwrap(),
            transpose_action_preset(q()).unwrap(),
        ];
        for preset in &presets {
            let rs = preset.rewrite_system().unwrap();
            let group = rs.grade_data().map(|g| g.group.clone());
            let t = random_term(&mut rng, &rs.signature().base, group.as_ref(), 3, 5);
            let p = Polynomial::from_term(t, preset.field);
            let innermost = rs.normalize_with(&p, Order::Innermost).unwrap();
            let random = rs.normalize_with(&p, Order::Random(order)).unwrap();
            prop_assert_eq!(innermost, random, "{}", preset.name);
        }
    }

    #[test]
    fn translation_round_trip_and_evaluation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = pauli_m2(gf(7));
        let group = a.grading().unwrap().group.clone();
        let rs = system_for(&[&a], Theory::Free).unwrap();
        let w = decorate(&random_term(&mut rng, a.signature(), None, 3, 5), &mut rng, &group);
        let f = Polynomial::from_term(w, a.field());
        let omega = translate_to_omega(&f, &group).unwrap();
        prop_assert_eq!(translate_from_omega(&rs.normalize(&omega).unwrap()).unwrap(), rs.normalize(&f).unwrap_or(f.clone()));
        let graded = random_graded_binding(&mut rng, &a, 3);
        let mut summed: HashMap<u32, Vec<_>> = HashMap::new();
        for ((i, _), v) in &graded {
            let acc = summed.entry(*i).or_insert_with(|| a.zero());
            omegalg::linalg::add_scaled(acc, &a.field().one(), v);
        }
        prop_assert_eq!(a.eval(&omega, &summed).unwrap(), a.eval_graded(&f, &graded).unwrap());
    }

    #[test]
    fn identity_spaces_ignore_basis_order(perm_seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(perm_seed);
        let a = pauli_m2(gf(5));
        let mut perm: Vec<usize> = (0..4).collect();
        for i in (1..4).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let b = a.permute_basis(&perm).unwrap();
        let rs = system_for(&[&a, &b], Theory::Free).unwrap();
        for n in 1..=2 {
            prop_assert_eq!(identity_space(&a, &rs, n, None).unwrap().nullspace, identity_space(&b, &rs, n, None).unwrap().nullspace);
        }
    }
}

#[test]
fn direct_sums_keep_identities() {
    let f: Field = gf(5);
    let m2 = matrix(2, f);
    let sum = direct_sum(&m2, &m2).unwrap();
    let rs = system_for(&[&m2, &sum], Theory::Free).unwrap();
    for n in 1..=3 {
        assert_eq!(identity_space(&m2, &rs, n, None).unwrap().nullspace, identity_space(&sum, &rs, n, None).unwrap().nullspace);
    }
}
