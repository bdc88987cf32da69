//! Languages as infinite tries.
//!
//! A [`Trie`] node exposes two observations: whether the empty word is
//! accepted at this node, and, for every letter, the subtrie reached by
//! reading that letter. Both are computed on demand and cached in the node,
//! so a trie is only ever materialized as far as somebody has looked at it.
//!
//! Nodes are immutable apart from those caches and are reference counted, so
//! cloning a [`Trie`] is cheap and shares all work already done. The caches
//! are not synchronized; tries are deliberately `!Send`.

use std::cell::OnceCell;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::rc::Rc;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::oracle::BoundedLang;

/// Index type a trie branches over.
///
/// Ordinary languages branch over [`Symbol`]; the deferred constructions
/// branch over [`FlaggedSymbol`], i.e. the alphabet doubled by a boolean.
pub trait Letter: Copy + Eq + fmt::Debug + 'static {
    /// Number of branches for the given base alphabet.
    fn width(alphabet: &Alphabet) -> usize;
    fn index(self) -> usize;
    fn from_index(index: usize) -> Self;
}

impl Letter for Symbol {
    fn width(alphabet: &Alphabet) -> usize {
        alphabet.len()
    }

    fn index(self) -> usize {
        self.id()
    }

    fn from_index(index: usize) -> Self {
        Symbol::new(index)
    }
}

/// A letter of the doubled alphabet: a base symbol tagged with a flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlaggedSymbol {
    pub base: Symbol,
    pub flag: bool,
}

impl FlaggedSymbol {
    pub fn new(base: Symbol, flag: bool) -> Self {
        FlaggedSymbol { base, flag }
    }
}

impl Letter for FlaggedSymbol {
    fn width(alphabet: &Alphabet) -> usize {
        2 * alphabet.len()
    }

    fn index(self) -> usize {
        2 * self.base.id() + self.flag as usize
    }

    fn from_index(index: usize) -> Self {
        FlaggedSymbol { base: Symbol::new(index / 2), flag: index % 2 == 1 }
    }
}

/// One step of a coalgebra: the observations a trie node is built from.
pub trait Unfold<A: Letter> {
    fn accepts(&self) -> bool;
    fn step(&self, letter: A) -> Trie<A>;
}

struct FnUnfold<F, G> {
    accepts: F,
    step: G,
}

impl<A, F, G> Unfold<A> for FnUnfold<F, G>
where
    A: Letter,
    F: Fn() -> bool,
    G: Fn(A) -> Trie<A>,
{
    fn accepts(&self) -> bool {
        (self.accepts)()
    }

    fn step(&self, letter: A) -> Trie<A> {
        (self.step)(letter)
    }
}

struct Node<A: Letter> {
    alphabet: Alphabet,
    accept: OnceCell<bool>,
    children: Box<[OnceCell<Trie<A>>]>,
    unfold: Box<dyn Unfold<A>>,
    /// Set only on nodes built by [`Trie::empty`].
    known_empty: bool,
}

/// A lazily unfolded trie over letters of type `A`.
pub struct Trie<A: Letter> {
    node: Rc<Node<A>>,
}

/// A language over an alphabet.
pub type Lang = Trie<Symbol>;

/// A language over the doubled alphabet `Σ × bool`.
pub type Lang2 = Trie<FlaggedSymbol>;

impl<A: Letter> Clone for Trie<A> {
    fn clone(&self) -> Self {
        Trie { node: Rc::clone(&self.node) }
    }
}

impl<A: Letter> fmt::Debug for Trie<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Trie")
            .field("alphabet", &self.node.alphabet)
            .field("accept", &self.node.accept.get())
            .finish_non_exhaustive()
    }
}

/// Result of one corecursor step: stop with a finished trie, or keep going
/// from a new state.
pub enum Step<A: Letter, S> {
    Stop(Trie<A>),
    Continue(S),
}

impl<A: Letter> Trie<A> {
    pub fn from_unfold(alphabet: &Alphabet, unfold: impl Unfold<A> + 'static) -> Self {
        let width = A::width(alphabet);
        Trie {
            node: Rc::new(Node {
                alphabet: alphabet.clone(),
                accept: OnceCell::new(),
                children: (0..width).map(|_| OnceCell::new()).collect(),
                unfold: Box::new(unfold),
                known_empty: false,
            }),
        }
    }

    /// The empty language, tagged so that operations can recognize it
    /// without exploring it.
    pub fn empty(alphabet: &Alphabet) -> Self {
        let sigma = alphabet.clone();
        let width = A::width(alphabet);
        let accept = OnceCell::new();
        let _ = accept.set(false);
        Trie {
            node: Rc::new(Node {
                alphabet: alphabet.clone(),
                accept,
                children: (0..width).map(|_| OnceCell::new()).collect(),
                unfold: Box::new(FnUnfold { accepts: || false, step: move |_: A| Trie::empty(&sigma) }),
                known_empty: true,
            }),
        }
    }

    /// Whether this node was built by [`Trie::empty`]. `false` says nothing:
    /// other tries may denote the empty language too.
    pub fn is_known_empty(&self) -> bool {
        self.node.known_empty
    }

    /// Builds a node from two deferred observations.
    pub fn lazy(
        alphabet: &Alphabet,
        accepts: impl Fn() -> bool + 'static,
        step: impl Fn(A) -> Trie<A> + 'static,
    ) -> Self {
        Self::from_unfold(alphabet, FnUnfold { accepts, step })
    }

    /// The trie constructor: a root label and a subtrie for each letter.
    pub fn make(alphabet: &Alphabet, accept: bool, step: impl Fn(A) -> Trie<A> + 'static) -> Self {
        let t = Self::lazy(alphabet, move || accept, step);
        let _ = t.node.accept.set(accept);
        t
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.node.alphabet
    }

    /// Whether the empty word is accepted at this node.
    pub fn accepts_now(&self) -> bool {
        *self.node.accept.get_or_init(|| self.node.unfold.accepts())
    }

    /// The subtrie reached by reading `letter`.
    ///
    /// Panics if `letter` is outside the trie's alphabet.
    pub fn derive(&self, letter: A) -> Trie<A> {
        let i = letter.index();
        assert!(i < self.node.children.len(), "letter {letter:?} outside alphabet {:?}", self.node.alphabet);
        self.node.children[i]
            .get_or_init(|| {
                let child = self.node.unfold.step(letter);
                debug_assert!(child.alphabet().same(self.alphabet()));
                child
            })
            .clone()
    }

    /// Iterated [`derive`](Self::derive) along a sequence of letters.
    pub fn derive_word(&self, letters: &[A]) -> Trie<A> {
        letters.iter().fold(self.clone(), |t, &a| t.derive(a))
    }

    pub fn member_letters(&self, letters: &[A]) -> bool {
        self.derive_word(letters).accepts_now()
    }

    /// Every letter of this trie's branching type, in index order.
    pub fn letters(&self) -> impl Iterator<Item = A> {
        (0..self.node.children.len()).map(A::from_index)
    }

    pub fn ptr_eq(&self, other: &Trie<A>) -> bool {
        Rc::ptr_eq(&self.node, &other.node)
    }

    /// Panics unless both tries have the same alphabet.
    pub(crate) fn assert_compatible(&self, other: &Trie<A>) {
        assert!(
            self.alphabet().same(other.alphabet()),
            "alphabet mismatch: {:?} vs {:?}",
            self.alphabet(),
            other.alphabet()
        );
    }

    /// The unique coalgebra morphism from `(obs, trans)` into tries, starting
    /// at state `s0`.
    pub fn coiterate<S: 'static>(
        alphabet: &Alphabet,
        obs: impl Fn(&S) -> bool + 'static,
        trans: impl Fn(&S, A) -> S + 'static,
        s0: S,
    ) -> Self {
        coiter_node(alphabet, Rc::new(obs), Rc::new(trans), s0)
    }

    /// Like [`coiterate`](Self::coiterate), but a transition may stop with a
    /// finished trie instead of a new state.
    pub fn corecurse<S: 'static>(
        alphabet: &Alphabet,
        obs: impl Fn(&S) -> bool + 'static,
        trans: impl Fn(&S, A) -> Step<A, S> + 'static,
        s0: S,
    ) -> Self {
        corec_node(alphabet, Rc::new(obs), Rc::new(trans), s0)
    }
}

type Obs<S> = Rc<dyn Fn(&S) -> bool>;
type Trans<S, A, R> = Rc<dyn Fn(&S, A) -> R>;

fn coiter_node<A: Letter, S: 'static>(alphabet: &Alphabet, obs: Obs<S>, trans: Trans<S, A, S>, s: S) -> Trie<A> {
    let state = Rc::new(s);
    let st = Rc::clone(&state);
    let o = Rc::clone(&obs);
    let sigma = alphabet.clone();
    Trie::lazy(
        alphabet,
        move || o(&st),
        move |a| coiter_node(&sigma, Rc::clone(&obs), Rc::clone(&trans), trans(&state, a)),
    )
}

fn corec_node<A: Letter, S: 'static>(
    alphabet: &Alphabet,
    obs: Obs<S>,
    trans: Trans<S, A, Step<A, S>>,
    s: S,
) -> Trie<A> {
    let state = Rc::new(s);
    let st = Rc::clone(&state);
    let o = Rc::clone(&obs);
    let sigma = alphabet.clone();
    Trie::lazy(
        alphabet,
        move || o(&st),
        move |a| match trans(&state, a) {
            Step::Stop(t) => t,
            Step::Continue(next) => corec_node(&sigma, Rc::clone(&obs), Rc::clone(&trans), next),
        },
    )
}

impl Trie<Symbol> {
    pub fn member(&self, word: &Word) -> bool {
        self.member_letters(word.letters())
    }

    /// The trie of an arbitrary set of words, given by its characteristic
    /// predicate. `p` must be total.
    pub fn from_predicate(alphabet: &Alphabet, p: impl Fn(&Word) -> bool + 'static) -> Lang {
        Trie::coiterate(alphabet, move |w: &Word| p(w), |w: &Word, a| w.pushed(a), Word::empty())
    }

    /// The accepted words of length at most `n`.
    pub fn out_bounded(&self, n: usize) -> BoundedLang {
        let mut words = BTreeSet::new();
        let mut queue = VecDeque::from([(Word::empty(), self.clone())]);
        while let Some((w, t)) = queue.pop_front() {
            if t.accepts_now() {
                words.insert(w.clone());
            }
            if w.len() < n {
                for a in self.alphabet().symbols() {
                    queue.push_back((w.pushed(a), t.derive(a)));
                }
            }
        }
        BoundedLang::from_words(self.alphabet().clone(), n, words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn even(sigma: &Alphabet) -> Lang {
        let s = sigma.clone();
        Lang::make(sigma, true, move |_| odd(&s))
    }

    fn odd(sigma: &Alphabet) -> Lang {
        let s = sigma.clone();
        Lang::make(sigma, false, move |_| even(&s))
    }

    #[test]
    fn make_round_trip() {
        let sigma = ab();
        let s = sigma.clone();
        let t = Lang::make(&sigma, true, move |_| ops::zero(&s));
        assert!(t.accepts_now());
        for a in sigma.symbols() {
            assert!(!t.derive(a).accepts_now());
        }
    }

    #[test]
    fn even_labels_by_depth() {
        let sigma = ab();
        let e = even(&sigma);
        for w in sigma.words_up_to(6) {
            assert_eq!(e.member(&w), w.len() % 2 == 0, "{}", w.display(&sigma));
        }
        let shown: Vec<String> = e.out_bounded(2).words().map(|w| w.display(&sigma).to_string()).collect();
        assert_eq!(shown, ["ε", "aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn children_are_cached() {
        let sigma = ab();
        let e = even(&sigma);
        let a = sigma.symbol("a").unwrap();
        assert!(e.derive(a).ptr_eq(&e.derive(a)));
    }

    #[test]
    fn derive_does_not_force_child() {
        use std::cell::Cell;
        let sigma = ab();
        let forced = Rc::new(Cell::new(false));
        let f = Rc::clone(&forced);
        let s = sigma.clone();
        let t = Lang::make(&sigma, false, move |_| {
            let f = Rc::clone(&f);
            let s2 = s.clone();
            Lang::lazy(
                &s,
                move || {
                    f.set(true);
                    true
                },
                move |_| ops::zero(&s2),
            )
        });
        let child = t.derive(Symbol::new(0));
        assert!(!forced.get());
        assert!(child.accepts_now());
        assert!(forced.get());
    }

    #[test]
    fn accept_is_computed_once() {
        use std::cell::Cell;
        let sigma = ab();
        let count = Rc::new(Cell::new(0));
        let c = Rc::clone(&count);
        let s = sigma.clone();
        let t = Lang::lazy(
            &sigma,
            move || {
                c.set(c.get() + 1);
                true
            },
            move |_| ops::zero(&s),
        );
        assert!(t.accepts_now() && t.accepts_now());
        assert_eq!(count.get(), 1);
    }

    #[test]
    #[should_panic(expected = "outside alphabet")]
    fn derive_outside_alphabet_panics() {
        ops::one(&ab()).derive(Symbol::new(7));
    }

    #[test]
    fn from_predicate_matches_predicate() {
        let sigma = ab();
        let t = Lang::from_predicate(&sigma, |w| w.letters().iter().filter(|s| s.id() == 0).count() == 2);
        for w in sigma.words_up_to(5) {
            let expect = w.letters().iter().filter(|s| s.id() == 0).count() == 2;
            assert_eq!(t.member(&w), expect);
        }
    }

    #[test]
    fn coiterate_parity() {
        let sigma = ab();
        let t = Lang::coiterate(&sigma, |n: &u32| n.is_multiple_of(2), |n, _| n + 1, 0);
        for w in sigma.words_up_to(6) {
            assert_eq!(t.member(&w), w.len() % 2 == 0);
        }
    }

    #[test]
    fn corecurse_one_and_atom() {
        let sigma = ab();
        let s = sigma.clone();
        let one = Lang::corecurse(&sigma, |_: &()| true, move |_, _| Step::Stop(ops::zero(&s)), ());
        assert_eq!(one.out_bounded(3).len(), 1);

        let a = sigma.symbol("a").unwrap();
        let s = sigma.clone();
        let atom = Lang::corecurse(
            &sigma,
            |_: &()| false,
            move |_, x| Step::Stop(if x == a { ops::one(&s) } else { ops::zero(&s) }),
            (),
        );
        let words: Vec<_> = atom.out_bounded(3).words().cloned().collect();
        assert_eq!(words, vec![Word::from(vec![a])]);
    }

    #[test]
    fn flagged_symbol_indexing() {
        for i in 0..10 {
            assert_eq!(FlaggedSymbol::from_index(i).index(), i);
        }
        assert_eq!(FlaggedSymbol::new(Symbol::new(1), true).index(), 3);
    }
}
