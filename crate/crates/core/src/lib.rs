//! Formal languages as lazily unfolded infinite tries.
//!
//! A language is a trie branching over a finite alphabet whose nodes are
//! labelled with "accept" bits: the root label says whether the empty word is
//! in the language, and the subtrie under letter `a` is the language of words
//! `w` with `a·w` in it. Nodes are built only when observed.
//!
//! On top of that representation the crate provides
//!
//! * the regular operations and shuffle ([`ops`]), each in a deferred,
//!   one-constructor-per-step form and a direct form;
//! * regular expressions with a text syntax, denotation and syntactic
//!   derivatives ([`syntax`]);
//! * tries for context-free grammars in weak Greibach normal form ([`cfg`]);
//! * bounded bisimulation and simulation checks, and an exact equivalence
//!   and inclusion checker for expressions that returns checkable
//!   certificates ([`equivalence`]);
//! * a naive set-of-words semantics used as a test oracle ([`oracle`]) and a
//!   randomized battery of Kleene algebra laws ([`laws`]).
//!
//! ```
//! use cotrie::{parse_regex, Alphabet};
//!
//! let ab = Alphabet::from_chars("ab").unwrap();
//! let r = parse_regex("(a.(a+b))*", &ab).unwrap();
//! assert!(r.denote(&ab).member(&ab.parse_word("abaa").unwrap()));
//! ```

pub mod alphabet;
pub mod cfg;
pub mod equivalence;
pub mod gen;
pub mod laws;
pub mod ops;
pub mod oracle;
pub mod syntax;
pub mod trie;

pub use alphabet::{Alphabet, AlphabetError, Symbol, Word};
pub use cfg::{GSym, Grammar, GrammarError, NonTerminal, SententialForm, StateSet, WgnfViolation};
pub use equivalence::{
    bisim_bounded, equiv_regex, leq_regex, sim_bounded, BisimCertificate, Counterexample, DerivativeAutomaton,
    EquivError, Relation, Verdict, DEFAULT_PAIR_CAP,
};
pub use oracle::{eval_bounded, interleavings, BoundedLang};
pub use syntax::{parse_regex, ParseError, Regex};
pub use trie::{FlaggedSymbol, Lang, Lang2, Letter, Step, Trie, Unfold};
