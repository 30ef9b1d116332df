mod common;

use consprop::logic::{
    classify, equality_axioms, normalize, parse_formula, parse_open_formula, qe_axioms, render_formula, FormKind,
    Formula, Witness,
};
use consprop::semantics::{eval, ClassSpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_parse_round_trip(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sig = common::random_signature(&mut rng);
        let f = common::random_sentence(&mut rng, &sig, 4);
        let text = render_formula(&f, &sig);
        prop_assert_eq!(parse_formula(&text, &sig).unwrap(), f);
    }

    #[test]
    fn classify_is_stable_under_normalize(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sig = common::random_signature(&mut rng);
        let f = if seed % 2 == 0 {
            common::random_andor(&mut rng, &sig, 3, 3)
        } else {
            common::random_sentence(&mut rng, &sig, 3)
        };
        prop_assert_eq!(classify(&f), classify(&normalize(&f)));
        prop_assert_eq!(normalize(&normalize(&f)), normalize(&f));
    }

    #[test]
    fn generated_andor_classifies(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sig = common::random_signature(&mut rng);
        let f = common::random_andor(&mut rng, &sig, 3, 3);
        prop_assert_ne!(classify(&f), FormKind::Other);
    }
}

#[test]
fn equality_axiom_count_and_shape() {
    for seed in 0..40 {
        let mut rng = common::rng(seed);
        let sig = common::random_signature(&mut rng);
        let t = equality_axioms(&sig);
        let per_sort: usize = sig
            .sort_ids()
            .map(|s| {
                let k = sig.constants_of(s).len();
                k + k * k + k * k * k
            })
            .sum();
        let per_rel: usize = sig.rel_ids().map(|r| sig.tuples_of(r).len().pow(2)).sum();
        assert_eq!(t.len(), per_sort + per_rel);
        for ax in t.iter() {
            assert_ne!(classify(&ax.sentence), FormKind::Other, "{}", render_formula(&ax.sentence, &sig));
        }
    }
}

/// Every equality axiom, and every QE axiom with its expansion, holds in
/// every structure of every small class.
#[test]
fn axioms_hold_in_every_structure() {
    for seed in 0..30 {
        let mut rng = common::rng(1000 + seed);
        let sig = common::random_signature(&mut rng);
        let max: Vec<usize> = sig.sort_ids().map(|s| sig.constants_of(s).len()).collect();
        let Ok(spec) = ClassSpec::new(sig.clone(), max) else { continue };
        let s0 = sig.sort_ids().next().unwrap();
        let r0 = sig.rel_ids().next().unwrap();
        let arity = sig.relation(r0).sorts.clone();
        let args: Vec<String> = arity
            .iter()
            .map(|&s| if s == s0 { "x".to_string() } else { sig.const_name(sig.constants_of(s)[0]).to_string() })
            .collect();
        let body = format!("{}({})", sig.rel_name(r0), args.join(", "));
        let free = [("x".to_string(), s0)];
        let witnesses = if arity.contains(&s0) {
            vec![Witness { var: "x".into(), sort: s0, body: parse_open_formula(&body, &sig, &free).unwrap() }]
        } else {
            Vec::new()
        };
        let mut theory = equality_axioms(&sig);
        theory.extend(qe_axioms(&sig, &witnesses).unwrap());
        let sentences: Vec<Formula> = theory.iter().map(|a| a.sentence.clone()).collect();
        let mut n = 0;
        for m in spec.enumerate().take(400) {
            for f in &sentences {
                assert!(eval(&sig, &m, f).unwrap(), "{} fails in\n{}", render_formula(f, &sig), m.render(&sig));
            }
            n += 1;
        }
        assert!(n > 0);
    }
}
