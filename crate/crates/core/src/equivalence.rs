//! Checking language equality and inclusion.
//!
//! Two families of checkers live here. The bounded ones unfold a pair of
//! tries in lockstep up to a depth and compare labels; they work for any
//! tries but only speak about words up to that length. The exact ones work on
//! regular expressions: they build a bisimulation (or simulation) out of pairs
//! of normalized derivatives, which is finite, so they decide the question
//! outright and hand back the relation as a certificate.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::ops;
use crate::syntax::Regex;
use crate::trie::Lang;

/// A word on which two languages disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub word: Word,
    pub lhs: bool,
    pub rhs: bool,
}

/// Outcome of a check: it holds (with some evidence), or it is refuted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<E> {
    Holds(E),
    Refuted(Counterexample),
}

impl<E> Verdict<E> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Holds(_) => None,
            Verdict::Refuted(c) => Some(c),
        }
    }
}

/// Which relation a check or certificate is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// Language equality; acceptance must agree.
    Equal,
    /// Language inclusion; lhs acceptance must imply rhs acceptance.
    Included,
}

impl Relation {
    fn ok(self, lhs: bool, rhs: bool) -> bool {
        match self {
            Relation::Equal => lhs == rhs,
            Relation::Included => !lhs || rhs,
        }
    }
}

fn bounded(rel: Relation, l: &Lang, k: &Lang, depth: usize) -> Verdict<()> {
    l.assert_compatible(k);
    let mut queue = VecDeque::from([(Word::empty(), l.clone(), k.clone())]);
    while let Some((w, x, y)) = queue.pop_front() {
        let (lhs, rhs) = (x.accepts_now(), y.accepts_now());
        if !rel.ok(lhs, rhs) {
            return Verdict::Refuted(Counterexample { word: w, lhs, rhs });
        }
        if w.len() < depth {
            for a in l.alphabet().symbols() {
                queue.push_back((w.pushed(a), x.derive(a), y.derive(a)));
            }
        }
    }
    Verdict::Holds(())
}

/// Compares `l` and `k` on every word of length at most `depth`. On failure
/// the counterexample is the shortlex-least word that separates them.
pub fn bisim_bounded(l: &Lang, k: &Lang, depth: usize) -> Verdict<()> {
    bounded(Relation::Equal, l, k, depth)
}

/// Checks `l ⊆ k` on every word of length at most `depth`.
pub fn sim_bounded(l: &Lang, k: &Lang, depth: usize) -> Verdict<()> {
    bounded(Relation::Included, l, k, depth)
}

/// Inclusion through its definition `L ≤ K ⟺ L + K = K`. Agrees with
/// [`sim_bounded`]; the counterexample reports `l`'s verdict as `lhs`.
pub fn sim_bounded_via_plus(l: &Lang, k: &Lang, depth: usize) -> Verdict<()> {
    match bisim_bounded(&ops::plus(l, k), k, depth) {
        Verdict::Holds(()) => Verdict::Holds(()),
        Verdict::Refuted(c) => Verdict::Refuted(Counterexample { lhs: l.member(&c.word), ..c }),
    }
}

type Pair = (Regex, Regex);

/// A finite relation on normalized expressions, closed under derivatives and
/// respecting acceptance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisimCertificate {
    pub relation: Relation,
    pub root: (Regex, Regex),
    pub pairs: BTreeSet<(Regex, Regex)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("root pair missing from the relation")]
    MissingRoot,
    #[error("pair {index} violates the acceptance condition")]
    Acceptance { index: usize },
    #[error("derivative of pair {index} is not in the relation")]
    NotClosed { index: usize },
}

impl BisimCertificate {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Re-verifies the certificate from scratch: the root pair is present,
    /// every pair satisfies the acceptance condition and every derivative
    /// pair is again in the relation.
    pub fn check(&self, alphabet: &Alphabet) -> Result<(), CertificateError> {
        let root = (self.root.0.normalize(), self.root.1.normalize());
        if !self.pairs.contains(&root) {
            return Err(CertificateError::MissingRoot);
        }
        for (index, (r, s)) in self.pairs.iter().enumerate() {
            if !self.relation.ok(r.nullable(), s.nullable()) {
                return Err(CertificateError::Acceptance { index });
            }
            for a in alphabet.symbols() {
                if !self.pairs.contains(&(r.deriv(a), s.deriv(a))) {
                    return Err(CertificateError::NotClosed { index });
                }
            }
        }
        Ok(())
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let sep = match self.relation {
            Relation::Equal => "~",
            Relation::Included => "<=",
        };
        let mut out = String::new();
        for (r, s) in &self.pairs {
            let _ = writeln!(out, "{} {sep} {}", r.display(alphabet), s.display(alphabet));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("inconclusive: explored {cap} pairs without closing the relation")]
    PairCapExceeded { cap: usize },
}

pub const DEFAULT_PAIR_CAP: usize = 100_000;

fn exact(
    rel: Relation,
    r: &Regex,
    s: &Regex,
    alphabet: &Alphabet,
    cap: usize,
) -> Result<Verdict<BisimCertificate>, EquivError> {
    let root = (r.normalize(), s.normalize());
    // pair -> (parent pair index, letter), for spelling counterexamples
    let mut seen: HashMap<Pair, usize> = HashMap::new();
    let mut order: Vec<(Pair, Option<(usize, Symbol)>)> = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(root.clone(), 0);
    order.push((root.clone(), None));
    queue.push_back(0usize);

    while let Some(i) = queue.pop_front() {
        let (x, y) = order[i].0.clone();
        let (lhs, rhs) = (x.nullable(), y.nullable());
        if !rel.ok(lhs, rhs) {
            let mut letters = Vec::new();
            let mut cur = i;
            while let Some((parent, a)) = order[cur].1 {
                letters.push(a);
                cur = parent;
            }
            letters.reverse();
            return Ok(Verdict::Refuted(Counterexample { word: Word::from(letters), lhs, rhs }));
        }
        for a in alphabet.symbols() {
            let next = (x.deriv_normalized(a), y.deriv_normalized(a));
            if !seen.contains_key(&next) {
                if order.len() >= cap {
                    return Err(EquivError::PairCapExceeded { cap });
                }
                seen.insert(next.clone(), order.len());
                queue.push_back(order.len());
                order.push((next, Some((i, a))));
            }
        }
    }
    let pairs = order.into_iter().map(|(p, _)| p).collect();
    Ok(Verdict::Holds(BisimCertificate { relation: rel, root: (r.clone(), s.clone()), pairs }))
}

/// Decides `L(r) = L(s)` by exploring pairs of derivatives breadth first.
/// Counterexamples are shortlex-least.
pub fn equiv_regex(
    r: &Regex,
    s: &Regex,
    alphabet: &Alphabet,
    cap: usize,
) -> Result<Verdict<BisimCertificate>, EquivError> {
    exact(Relation::Equal, r, s, alphabet, cap)
}

/// Decides `L(r) ⊆ L(s)`.
///
/// Complement is not monotone, so expressions containing `~` are not checked
/// by simulation; they go through `r + s = s` instead, and the certificate
/// returned is then an equality certificate for that pair.
pub fn leq_regex(
    r: &Regex,
    s: &Regex,
    alphabet: &Alphabet,
    cap: usize,
) -> Result<Verdict<BisimCertificate>, EquivError> {
    if r.contains_not() || s.contains_not() {
        leq_regex_via_plus(r, s, alphabet, cap)
    } else {
        exact(Relation::Included, r, s, alphabet, cap)
    }
}

/// Inclusion as the equation `r + s = s`.
pub fn leq_regex_via_plus(
    r: &Regex,
    s: &Regex,
    alphabet: &Alphabet,
    cap: usize,
) -> Result<Verdict<BisimCertificate>, EquivError> {
    let sum = Regex::raw_plus(r.clone(), s.clone());
    Ok(match equiv_regex(&sum, s, alphabet, cap)? {
        Verdict::Holds(c) => Verdict::Holds(c),
        Verdict::Refuted(c) => {
            let lhs = r.denote(alphabet).member(&c.word);
            Verdict::Refuted(Counterexample { lhs, ..c })
        }
    })
}

/// The deterministic automaton whose states are the distinct normalized
/// iterated derivatives of an expression.
#[derive(Clone, Debug)]
pub struct DerivativeAutomaton {
    alphabet: Alphabet,
    states: Vec<Regex>,
    accepting: Vec<bool>,
    // transitions[state][symbol id]
    transitions: Vec<Vec<usize>>,
}

impl DerivativeAutomaton {
    /// Explores derivatives breadth first; states are numbered in discovery
    /// order, the initial state is 0. Fails if more than `cap` states appear.
    pub fn build(r: &Regex, alphabet: &Alphabet, cap: usize) -> Result<Self, EquivError> {
        let mut ids: HashMap<Regex, usize> = HashMap::new();
        let mut states = vec![r.normalize()];
        ids.insert(states[0].clone(), 0);
        let mut transitions: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let mut row = Vec::with_capacity(alphabet.len());
            for a in alphabet.symbols() {
                let d = states[i].deriv_normalized(a);
                let id = match ids.get(&d) {
                    Some(&id) => id,
                    None => {
                        if states.len() >= cap {
                            return Err(EquivError::PairCapExceeded { cap });
                        }
                        ids.insert(d.clone(), states.len());
                        states.push(d);
                        states.len() - 1
                    }
                };
                row.push(id);
            }
            transitions.push(row);
            i += 1;
        }
        let accepting = states.iter().map(Regex::nullable).collect();
        Ok(DerivativeAutomaton { alphabet: alphabet.clone(), states, accepting, transitions })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn state(&self, id: usize) -> &Regex {
        &self.states[id]
    }

    pub fn is_accepting(&self, id: usize) -> bool {
        self.accepting[id]
    }

    pub fn next(&self, id: usize, a: Symbol) -> usize {
        self.transitions[id][a.id()]
    }

    pub fn accepts(&self, w: &Word) -> bool {
        let end = w.letters().iter().fold(0, |q, &a| self.next(q, a));
        self.accepting[end]
    }

    /// Graphviz rendering. Nodes carry their expression as label and accepting
    /// states are drawn as double circles. Output is deterministic.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph derivatives {\n  rankdir=LR;\n  init [shape=point];\n  init -> 0;\n");
        for (i, r) in self.states.iter().enumerate() {
            let shape = if self.accepting[i] { "doublecircle" } else { "circle" };
            let label = r.display(&self.alphabet).to_string().replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(out, "  {i} [label=\"{label}\", shape={shape}];");
        }
        for (i, row) in self.transitions.iter().enumerate() {
            for (a, &j) in self.alphabet.symbols().zip(row) {
                let _ = writeln!(out, "  {i} -> {j} [label=\"{}\"];", self.alphabet.name(a));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_regex;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn re(t: &str) -> Regex {
        parse_regex(t, &ab()).unwrap()
    }

    fn cex_word(v: &Verdict<BisimCertificate>) -> String {
        v.counterexample().unwrap().word.display(&ab()).to_string()
    }

    #[test]
    fn bounded_checks() {
        let s = ab();
        let l = re("(a+b.a)*").denote(&s);
        assert!(bisim_bounded(&ops::plus(&ops::zero(&s), &l), &l, 6).holds());
        let c = bisim_bounded(&ops::one(&s), &ops::zero(&s), 3);
        assert_eq!(c, Verdict::Refuted(Counterexample { word: Word::empty(), lhs: true, rhs: false }));
        assert!(bisim_bounded(&re("(a+b)*").denote(&s), &re("(a*.b*)*").denote(&s), 6).holds());
        assert!(sim_bounded(&l, &ops::plus(&l, &ops::one(&s)), 6).holds());
        assert!(sim_bounded(&re("1+a.(a*)").denote(&s), &re("a*").denote(&s), 6).holds());
        assert!(!sim_bounded(&ops::one(&s), &ops::zero(&s), 2).holds());
    }

    #[test]
    fn bounded_counterexample_is_shortlex_least() {
        let s = ab();
        let c = bisim_bounded(&re("a.b+b.a").denote(&s), &re("b.a+b.b").denote(&s), 4);
        assert_eq!(c.counterexample().unwrap().word, s.parse_word("ab").unwrap());
    }

    #[test]
    fn exact_checks() {
        let s = ab();
        let v = equiv_regex(&re("(a+b)*"), &re("(a*.b*)*"), &s, DEFAULT_PAIR_CAP).unwrap();
        let Verdict::Holds(cert) = &v else { panic!("expected equal") };
        cert.check(&s).unwrap();
        assert!(equiv_regex(&re("a*"), &re("1+a.a*"), &s, DEFAULT_PAIR_CAP).unwrap().holds());
        let v = equiv_regex(&re("a"), &re("b"), &s, DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(cex_word(&v), "a");
        let v = equiv_regex(&re("a*"), &re("1+a"), &s, DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(cex_word(&v), "aa");
    }

    #[test]
    fn reflexive_certificate_is_a_diagonal() {
        let s = ab();
        let r = re("(a.(a+b))*");
        let Verdict::Holds(cert) = equiv_regex(&r, &r, &s, DEFAULT_PAIR_CAP).unwrap() else { panic!() };
        assert!(cert.pairs.iter().all(|(x, y)| x == y));
        cert.check(&s).unwrap();
    }

    #[test]
    fn inclusion() {
        let s = ab();
        assert!(leq_regex(&re("a"), &re("a+b"), &s, DEFAULT_PAIR_CAP).unwrap().holds());
        assert!(leq_regex(&re("1+a.(a*)"), &re("a*"), &s, DEFAULT_PAIR_CAP).unwrap().holds());
        let v = leq_regex(&re("a*"), &re("a"), &s, DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(v.counterexample().unwrap().word, Word::empty());
        let v = leq_regex(&re("a*"), &re("1+a"), &s, DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(cex_word(&v), "aa");
        // complement routes through r + s = s
        let v = leq_regex(&re("~(a+b)"), &re("~a"), &s, DEFAULT_PAIR_CAP).unwrap();
        let Verdict::Holds(cert) = v else { panic!() };
        assert_eq!(cert.relation, Relation::Equal);
        cert.check(&s).unwrap();
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let s = ab();
        let Verdict::Holds(mut cert) = equiv_regex(&re("a*"), &re("1+a.a*"), &s, DEFAULT_PAIR_CAP).unwrap() else {
            panic!()
        };
        let first = cert.pairs.iter().next().unwrap().clone();
        cert.pairs.remove(&first);
        assert!(cert.check(&s).is_err());

        let bogus = BisimCertificate {
            relation: Relation::Equal,
            root: (re("a"), re("b")),
            pairs: [
                (re("a"), re("b")),
                (Regex::One, Regex::Zero),
                (Regex::Zero, Regex::One),
                (Regex::Zero, Regex::Zero),
            ]
            .into_iter()
            .collect(),
        };
        assert!(matches!(bogus.check(&s), Err(CertificateError::Acceptance { .. })));
    }

    #[test]
    fn pair_cap_is_reported() {
        let s = ab();
        let r = re("(a+b)*.a.(a+b).(a+b).(a+b)");
        assert_eq!(equiv_regex(&r, &r, &s, 3), Err(EquivError::PairCapExceeded { cap: 3 }));
    }

    #[test]
    fn automata() {
        let s = ab();
        let m = DerivativeAutomaton::build(&re("a*"), &s, DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.is_accepting(0) && !m.is_accepting(1));
        assert_eq!(m.state(1), &Regex::Zero);
        assert_eq!((m.next(0, s.symbol("a").unwrap()), m.next(0, s.symbol("b").unwrap())), (0, 1));
        let z = DerivativeAutomaton::build(&re("0"), &s, DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(z.len(), 1);
        assert!(!z.is_accepting(0));
        let dot = m.to_dot();
        assert!(dot.contains("0 [label=\"a*\", shape=doublecircle];"));
        assert!(dot.contains("0 -> 1 [label=\"b\"];"));
        assert_eq!(dot, m.to_dot());
    }
}
