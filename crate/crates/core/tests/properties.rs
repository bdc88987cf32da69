use std::collections::BTreeSet;

use proptest::prelude::*;

use cotrie::ops;
use cotrie::{
    bisim_bounded, equiv_regex, eval_bounded, interleavings, sim_bounded, Alphabet, GSym, Grammar, Lang, Regex,
    SententialForm, Symbol, Trie, Verdict, Word,
};

fn ab() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

fn leaf() -> impl Strategy<Value = Regex> {
    prop_oneof![
        Just(Regex::Zero),
        Just(Regex::One),
        Just(Regex::Atom(Symbol::new(0))),
        Just(Regex::Atom(Symbol::new(1))),
    ]
}

fn regex(extended: bool) -> impl Strategy<Value = Regex> {
    leaf().prop_recursive(3, 16, 2, move |inner| {
        let basic = prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(r, s)| Regex::raw_plus(r, s)),
            (inner.clone(), inner.clone()).prop_map(|(r, s)| Regex::raw_concat(r, s)),
            inner.clone().prop_map(Regex::raw_star),
        ];
        if extended {
            prop_oneof![
                3 => basic,
                1 => (inner.clone(), inner.clone()).prop_map(|(r, s)| Regex::raw_inter(r, s)),
                1 => inner.clone().prop_map(Regex::raw_not),
                1 => (inner.clone(), inner).prop_map(|(r, s)| Regex::raw_shuffle(r, s)),
            ]
            .boxed()
        } else {
            basic.boxed()
        }
    })
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..2, 0..=max)
        .prop_map(|v| Word::from(v.into_iter().map(Symbol::new).collect::<Vec<_>>()))
}

fn word_set() -> impl Strategy<Value = BTreeSet<Word>> {
    prop::collection::btree_set(word(6), 0..12)
}

fn lang(r: &Regex) -> Lang {
    r.denote(&ab())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn make_round_trip(b: bool, pick in 0usize..3) {
        let s = ab();
        let kids = [ops::zero(&s), ops::one(&s), ops::atom(&s, Symbol::new(0))];
        let child = kids[pick].clone();
        let t = Trie::make(&s, b, move |_| child.clone());
        prop_assert_eq!(t.accepts_now(), b);
        for a in s.symbols() {
            prop_assert!(bisim_bounded(&t.derive(a), &kids[pick], 4).holds());
        }
    }

    #[test]
    fn member_recursion(r in regex(true), w in word(5), a in 0usize..2) {
        let l = lang(&r);
        let a = Symbol::new(a);
        let mut aw = vec![a];
        aw.extend_from_slice(w.letters());
        prop_assert_eq!(l.member(&Word::from(aw)), l.derive(a).member(&w));
    }

    #[test]
    fn memoization_is_invisible(r in regex(true), w in word(5)) {
        let l = lang(&r);
        let first = l.member(&w);
        let _ = l.out_bounded(4);
        prop_assert_eq!(l.member(&w), first);
        prop_assert_eq!(lang(&r).member(&w), first);
    }

    #[test]
    fn out_of_in(set in word_set(), n in 0usize..7) {
        let s = ab();
        let pred = set.clone();
        let l = Trie::from_predicate(&s, move |w| pred.contains(w));
        let expect: BTreeSet<Word> = set.into_iter().filter(|w| w.len() <= n).collect();
        prop_assert_eq!(l.out_bounded(n).into_words(), expect);
    }

    #[test]
    fn in_of_out(r in regex(true)) {
        let l = lang(&r);
        let probe = l.clone();
        let back = Trie::from_predicate(&ab(), move |w| probe.member(w));
        prop_assert!(bisim_bounded(&back, &l, 5).holds());
    }

    #[test]
    fn oracle_agrees_with_tries(r in regex(true)) {
        prop_assert_eq!(lang(&r).out_bounded(5), eval_bounded(&r, 5, &ab()));
    }

    #[test]
    fn oracle_is_monotone(r in regex(true), n in 0usize..5) {
        let s = ab();
        prop_assert_eq!(eval_bounded(&r, n, &s), eval_bounded(&r, n + 1, &s).truncate(n));
    }

    #[test]
    fn coherence_square(r in regex(true), a in 0usize..2) {
        let a = Symbol::new(a);
        prop_assert!(bisim_bounded(&lang(&r.deriv(a)), &lang(&r).derive(a), 5).holds());
    }

    #[test]
    fn normalization_idempotent_and_sound(r in regex(true)) {
        let n = r.normalize();
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert_eq!(eval_bounded(&n, 5, &ab()), eval_bounded(&r, 5, &ab()));
    }

    #[test]
    fn sim_and_bisim_cohere(r in regex(false), s in regex(false)) {
        let (l, k) = (lang(&r), lang(&s));
        let both = sim_bounded(&l, &k, 5).holds() && sim_bounded(&k, &l, 5).holds();
        prop_assert_eq!(both, bisim_bounded(&l, &k, 5).holds());
        prop_assert_eq!(sim_bounded(&l, &k, 5).holds(), bisim_bounded(&ops::plus(&l, &k), &k, 5).holds());
    }

    #[test]
    fn exact_is_sound_against_bounded(r in regex(true), s in regex(true)) {
        let sigma = ab();
        match equiv_regex(&r, &s, &sigma, 10_000).unwrap() {
            Verdict::Holds(cert) => {
                prop_assert!(cert.check(&sigma).is_ok());
                prop_assert!(bisim_bounded(&lang(&r), &lang(&s), 6).holds());
            }
            Verdict::Refuted(c) => {
                prop_assert_ne!(lang(&r).member(&c.word), lang(&s).member(&c.word));
                prop_assert_eq!(c.lhs, lang(&r).member(&c.word));
            }
        }
    }

    #[test]
    fn derivative_closure_is_finite(r in regex(true)) {
        let sigma = ab();
        let mut seen = BTreeSet::from([r.normalize()]);
        let mut todo = vec![r.normalize()];
        while let Some(x) = todo.pop() {
            for a in sigma.symbols() {
                let d = x.deriv_normalized(a);
                if seen.insert(d.clone()) {
                    todo.push(d);
                }
            }
            prop_assert!(seen.len() < 10_000);
        }
    }

    #[test]
    fn deferred_and_direct_agree(r in regex(false), s in regex(false)) {
        let (l, k) = (lang(&r), lang(&s));
        prop_assert!(bisim_bounded(&ops::concat(&l, &k), &ops::concat_direct(&l, &k), 5).holds());
        prop_assert!(bisim_bounded(&ops::star(&l), &ops::star_direct(&l), 5).holds());
        prop_assert!(bisim_bounded(&ops::shuffle(&l, &k), &ops::shuffle_direct(&l, &k), 5).holds());
    }

    #[test]
    fn shuffle_of_words_is_interleavings(w in word(3), v in word(3)) {
        let s = ab();
        let lit = |w: &Word| w.letters().iter().fold(Regex::One, |acc, &a| Regex::concat(&acc, &Regex::Atom(a)));
        let sh = ops::shuffle(&lit(&w).denote(&s), &lit(&v).denote(&s));
        prop_assert_eq!(sh.out_bounded(w.len() + v.len()).into_words(), interleavings(&w, &v));
    }

    #[test]
    fn grammar_triangle(w in word(7)) {
        let g = Grammar::parse("S -> \"\" | a S b S", None).unwrap();
        let start = SententialForm(vec![GSym::N(g.start())]);
        let by_lang = g.lang().unwrap().member(&w);
        prop_assert_eq!(by_lang, g.member_od(&BTreeSet::from([start.clone()]), &w));
        prop_assert_eq!(by_lang, g.derives(start.symbols(), &w));
    }
}

/// Concatenation rebuilt by hand from a plain unfold over pairs of tries,
/// following the derivative equation, must agree with the library's.
#[test]
fn pair_coiteration_reproduces_concat() {
    let s = ab();
    let sigma = s.clone();
    let hand = |l: &Lang, k: &Lang| -> Lang {
        let sigma = sigma.clone();
        Trie::coiterate(
            &sigma.clone(),
            |ts: &Vec<(Lang, Lang)>| ts.iter().any(|(l, k)| l.accepts_now() && k.accepts_now()),
            move |ts, a| {
                let mut next = Vec::new();
                for (l, k) in ts {
                    next.push((l.derive(a), k.clone()));
                    if l.accepts_now() {
                        next.push((ops::one(&sigma), k.derive(a)));
                    }
                }
                next
            },
            vec![(l.clone(), k.clone())],
        )
    };
    let mut rng = cotrie::gen::seeded_rng(3);
    for _ in 0..50 {
        let cfg = cotrie::gen::GenConfig::default();
        let r = cotrie::gen::random_regex(&mut rng, &s, &cfg);
        let t = cotrie::gen::random_regex(&mut rng, &s, &cfg);
        let (l, k) = (r.denote(&s), t.denote(&s));
        assert!(bisim_bounded(&hand(&l, &k), &ops::concat(&l, &k), 5).holds());
    }
}
