//! Regular operations and shuffle on tries.
//!
//! Concatenation, iteration and shuffle come in two flavours. The deferred
//! flavour builds each node with exactly one constructor per step, pushing the
//! problematic sum into a doubled alphabet ([`Lang2`]) which [`collapse`] then
//! folds back. The `_direct` flavour states the derivative equations as they
//! are and leans on demand-driven node creation for productivity. Both are
//! observationally equal; the test suites check this.
//!
//! All binary operations panic when their operands use different alphabets.

use crate::alphabet::{Alphabet, Symbol};
use crate::trie::{FlaggedSymbol, Lang, Lang2, Letter, Step, Trie};

/// The empty language.
pub fn zero_of<A: Letter>(alphabet: &Alphabet) -> Trie<A> {
    Trie::empty(alphabet)
}

pub fn zero(alphabet: &Alphabet) -> Lang {
    zero_of(alphabet)
}

/// The language containing only the empty word.
pub fn one(alphabet: &Alphabet) -> Lang {
    let sigma = alphabet.clone();
    Trie::make(alphabet, true, move |_| zero(&sigma))
}

/// The language `{a}`.
pub fn atom(alphabet: &Alphabet, a: Symbol) -> Lang {
    assert!(alphabet.contains(a), "symbol {a:?} outside alphabet {alphabet:?}");
    let sigma = alphabet.clone();
    Trie::corecurse(
        alphabet,
        |_: &()| false,
        move |_, x| Step::Stop(if x == a { one(&sigma) } else { zero(&sigma) }),
        (),
    )
}

/// Union: labels combined by disjunction, pointwise.
/// Operands known to be empty (see [`Trie::is_known_empty`]) or physically
/// equal are short-circuited.
pub fn plus<A: Letter>(l: &Trie<A>, k: &Trie<A>) -> Trie<A> {
    l.assert_compatible(k);
    if l.is_known_empty() || l.ptr_eq(k) {
        return k.clone();
    }
    if k.is_known_empty() {
        return l.clone();
    }
    let (l1, k1) = (l.clone(), k.clone());
    let (l2, k2) = (l.clone(), k.clone());
    Trie::lazy(l.alphabet(), move || l1.accepts_now() || k1.accepts_now(), move |a| plus(&l2.derive(a), &k2.derive(a)))
}

/// Intersection: labels combined by conjunction, pointwise.
pub fn inter<A: Letter>(l: &Trie<A>, k: &Trie<A>) -> Trie<A> {
    l.assert_compatible(k);
    if l.is_known_empty() || l.ptr_eq(k) {
        return l.clone();
    }
    if k.is_known_empty() {
        return k.clone();
    }
    let (l1, k1) = (l.clone(), k.clone());
    let (l2, k2) = (l.clone(), k.clone());
    Trie::lazy(l.alphabet(), move || l1.accepts_now() && k1.accepts_now(), move |a| inter(&l2.derive(a), &k2.derive(a)))
}

/// Complement: every label inverted.
pub fn compl<A: Letter>(l: &Trie<A>) -> Trie<A> {
    let (l1, l2) = (l.clone(), l.clone());
    Trie::lazy(l.alphabet(), move || !l1.accepts_now(), move |a| compl(&l2.derive(a)))
}

/// Deferred concatenation over the doubled alphabet.
///
/// Reading `(x, true)` continues inside `l`; reading `(x, false)` jumps into
/// `k` (re-concatenated with `one` to keep the result type) provided `l`
/// accepts the empty word, and otherwise stops with the empty language.
pub fn deferred_concat(l: &Lang, k: &Lang) -> Lang2 {
    l.assert_compatible(k);
    let sigma = l.alphabet().clone();
    Trie::corecurse(
        l.alphabet(),
        |(l, k): &(Lang, Lang)| l.accepts_now() && k.accepts_now(),
        move |(l, k), FlaggedSymbol { base, flag }| {
            let next = if flag {
                (l.derive(base), k.clone())
            } else if l.accepts_now() {
                (k.derive(base), one(&sigma))
            } else {
                return Step::Stop(zero_of(&sigma));
            };
            if next.0.is_known_empty() || next.1.is_known_empty() {
                Step::Stop(zero_of(&sigma))
            } else {
                Step::Continue(next)
            }
        },
        (l.clone(), k.clone()),
    )
}

/// Folds a doubled-alphabet trie back by summing the `(x, true)` and
/// `(x, false)` subtrees.
pub fn collapse(m: &Lang2) -> Lang {
    let sigma = m.alphabet().clone();
    Trie::coiterate(
        &sigma,
        |m: &Lang2| m.accepts_now(),
        |m, x: Symbol| plus(&m.derive(FlaggedSymbol::new(x, true)), &m.derive(FlaggedSymbol::new(x, false))),
        m.clone(),
    )
}

/// Concatenation, as the collapse of deferred concatenation.
pub fn concat(l: &Lang, k: &Lang) -> Lang {
    collapse(&deferred_concat(l, k))
}

/// Concatenation straight from its derivative equation
/// `δ(L·K) x = (δL x)·K + (if ο L then δK x else 0)`.
pub fn concat_direct(l: &Lang, k: &Lang) -> Lang {
    l.assert_compatible(k);
    let (l1, k1) = (l.clone(), k.clone());
    let (l2, k2) = (l.clone(), k.clone());
    Trie::lazy(
        l.alphabet(),
        move || l1.accepts_now() && k1.accepts_now(),
        move |x| {
            let head = concat_direct(&l2.derive(x), &k2);
            if l2.accepts_now() {
                plus(&head, &k2.derive(x))
            } else {
                head
            }
        },
    )
}

/// Deferred iteration, denoting `L·K*`: each step pulls a fresh copy of `k`
/// into the first argument, via `L·K* = L·(1 + K)·K*`.
pub fn deferred_iter(l: &Lang, k: &Lang) -> Lang {
    l.assert_compatible(k);
    let one_k = plus(&one(l.alphabet()), k);
    Trie::coiterate(
        l.alphabet(),
        |(l, _): &(Lang, Lang)| l.accepts_now(),
        |(l, one_k), x| (concat(l, one_k).derive(x), one_k.clone()),
        (l.clone(), one_k),
    )
}

/// Kleene star, as deferred iteration seeded with `one`.
pub fn star(l: &Lang) -> Lang {
    deferred_iter(&one(l.alphabet()), l)
}

/// Kleene star straight from `ο L* = ⊤`, `δ(L*) x = (δL x)·L*`.
pub fn star_direct(l: &Lang) -> Lang {
    let l = l.clone();
    let sigma = l.alphabet().clone();
    Trie::make(&sigma, true, move |x| concat_direct(&l.derive(x), &star_direct(&l)))
}

/// Deferred shuffle over the doubled alphabet: `(x, true)` advances `l`,
/// `(x, false)` advances `k`.
pub fn deferred_shuffle(l: &Lang, k: &Lang) -> Lang2 {
    l.assert_compatible(k);
    Trie::coiterate(
        l.alphabet(),
        |(l, k): &(Lang, Lang)| l.accepts_now() && k.accepts_now(),
        |(l, k), FlaggedSymbol { base, flag }| {
            if flag {
                (l.derive(base), k.clone())
            } else {
                (l.clone(), k.derive(base))
            }
        },
        (l.clone(), k.clone()),
    )
}

/// Shuffle product: all interleavings of a word of `l` with a word of `k`.
pub fn shuffle(l: &Lang, k: &Lang) -> Lang {
    collapse(&deferred_shuffle(l, k))
}

/// Shuffle straight from `δ(L ∥ K) x = (δL x ∥ K) + (L ∥ δK x)`.
pub fn shuffle_direct(l: &Lang, k: &Lang) -> Lang {
    l.assert_compatible(k);
    let (l1, k1) = (l.clone(), k.clone());
    let (l2, k2) = (l.clone(), k.clone());
    Trie::lazy(
        l.alphabet(),
        move || l1.accepts_now() && k1.accepts_now(),
        move |x| plus(&shuffle_direct(&l2.derive(x), &k2), &shuffle_direct(&l2, &k2.derive(x))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Word;

    fn sigma() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn shown(l: &Lang, n: usize) -> Vec<String> {
        l.out_bounded(n).words().map(|w| w.display(l.alphabet()).to_string()).collect()
    }

    fn w(s: &Alphabet, t: &str) -> Word {
        s.parse_word(t).unwrap()
    }

    #[test]
    fn constants() {
        let s = sigma();
        assert!(shown(&zero(&s), 4).is_empty());
        assert_eq!(shown(&one(&s), 3), ["ε"]);
        let a = s.symbol("a").unwrap();
        assert_eq!(shown(&atom(&s, a), 3), ["a"]);
        assert!(!atom(&s, a).accepts_now());
    }

    #[test]
    fn boolean_ops() {
        let s = sigma();
        let (a, b) = (atom(&s, Symbol::new(0)), atom(&s, Symbol::new(1)));
        assert!(plus(&a, &b).member(&w(&s, "b")));
        assert!(compl(&zero(&s)).accepts_now());
        assert!(shown(&inter(&a, &b), 3).is_empty());
        assert_eq!(shown(&compl(&a), 1), ["ε", "b"]);
    }

    #[test]
    fn concatenation_flavours() {
        let s = sigma();
        let (a, b) = (atom(&s, Symbol::new(0)), atom(&s, Symbol::new(1)));
        assert_eq!(shown(&concat(&a, &b), 4), ["ab"]);
        assert_eq!(shown(&concat_direct(&a, &b), 4), ["ab"]);
        assert!(deferred_concat(&one(&s), &one(&s)).accepts_now());
    }

    #[test]
    fn deferred_concat_false_branch_without_nullable_head() {
        let s = sigma();
        let (a, b) = (atom(&s, Symbol::new(0)), atom(&s, Symbol::new(1)));
        let d = deferred_concat(&a, &b);
        let child = d.derive(FlaggedSymbol::new(Symbol::new(1), false));
        assert!(collapse(&child).out_bounded(4).is_empty());
    }

    #[test]
    fn iteration() {
        let s = sigma();
        let a = atom(&s, Symbol::new(0));
        assert_eq!(shown(&deferred_iter(&one(&s), &a), 3), ["ε", "a", "aa", "aaa"]);
        assert_eq!(shown(&star(&zero(&s)), 4), ["ε"]);
        assert_eq!(shown(&star_direct(&a), 2), ["ε", "a", "aa"]);
        assert!(star_direct(&a).derive(Symbol::new(1)).out_bounded(5).is_empty());
    }

    #[test]
    fn membership_example() {
        let s = sigma();
        let (a, b) = (atom(&s, Symbol::new(0)), atom(&s, Symbol::new(1)));
        let r = star(&concat(&a, &plus(&a, &b)));
        assert!(r.member(&w(&s, "abaa")));
        assert!(!r.member(&w(&s, "aba")));
    }

    #[test]
    fn shuffle_of_two_words() {
        let s = Alphabet::from_chars("abcd").unwrap();
        let lit = |t: &str| {
            t.chars().map(|c| atom(&s, s.symbol(&c.to_string()).unwrap())).reduce(|x, y| concat(&x, &y)).unwrap()
        };
        let expect = ["abcd", "acbd", "acdb", "cabd", "cadb", "cdab"];
        assert_eq!(shown(&shuffle(&lit("ab"), &lit("cd")), 4), expect);
        assert_eq!(shown(&shuffle_direct(&lit("ab"), &lit("cd")), 4), expect);
        assert!(deferred_shuffle(&one(&s), &one(&s)).accepts_now());
    }

    #[test]
    #[should_panic(expected = "alphabet mismatch")]
    fn mismatched_alphabets_panic() {
        let other = Alphabet::from_chars("xyz").unwrap();
        plus(&one(&sigma()), &one(&other));
    }
}
