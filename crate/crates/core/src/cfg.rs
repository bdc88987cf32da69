//! Context-free grammars in weak Greibach normal form and their tries.
//!
//! A grammar is in weak Greibach normal form when every right-hand side is
//! either empty or starts with a terminal. For such grammars a set of
//! sentential forms can be advanced one terminal at a time, which is all the
//! trie construction needs: [`Grammar::close`] turns a set of states into a
//! trie whose children are the stepped state sets.
//!
//! Grammar text format, one rule per line:
//!
//! ```text
//! # palindromes over {a, b}
//! terminals: a b        (optional)
//! start: S              (optional, defaults to the first rule)
//! S -> "" | a | b | a S a | b S b
//! ```
//!
//! Tokens are whitespace separated and `""` (or `ε`) is the empty
//! alternative. Tokens starting with an uppercase letter are non-terminals
//! unless listed in the `terminals:` header; everything else is a terminal.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::alphabet::{Alphabet, AlphabetError, Symbol, Word};
use crate::trie::Lang;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NonTerminal(u32);

impl NonTerminal {
    pub fn id(self) -> usize {
        self.0 as usize
    }
}

/// A symbol of a sentential form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GSym {
    T(Symbol),
    N(NonTerminal),
}

/// A state of a leftmost derivation: a mixed string of terminals and
/// non-terminals. Ordered length-first, then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SententialForm(pub Vec<GSym>);

impl SententialForm {
    pub fn single(n: NonTerminal) -> Self {
        SententialForm(vec![GSym::N(n)])
    }

    pub fn symbols(&self) -> &[GSym] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for SententialForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for SententialForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A canonically ordered set of derivation states.
pub type StateSet = BTreeSet<SententialForm>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WgnfViolation {
    pub nonterminal: String,
    pub production: String,
}

impl fmt::Display for WgnfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "production `{} -> {}` starts with a non-terminal", self.nonterminal, self.production)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("non-terminal `{0}` declared twice")]
    DuplicateNonterminal(String),
    #[error("`{0}` is not a declared non-terminal")]
    UnknownNonterminal(String),
    #[error("`{0}` is neither a terminal nor a non-terminal")]
    UnknownSymbol(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("grammar has no rules")]
    NoRules,
    #[error("grammar is not in weak Greibach normal form: {0}")]
    NotWeakGnf(WgnfViolation),
}

#[derive(Clone, Debug)]
pub struct Grammar {
    terminals: Alphabet,
    nonterminals: Vec<String>,
    start: NonTerminal,
    productions: Vec<BTreeSet<SententialForm>>,
}

impl Grammar {
    /// A grammar with the given symbols and no productions yet.
    pub fn new<I, S>(terminals: Alphabet, nonterminals: I, start: &str) -> Result<Self, GrammarError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = Vec::new();
        for n in nonterminals {
            let n = n.into();
            if names.contains(&n) {
                return Err(GrammarError::DuplicateNonterminal(n));
            }
            names.push(n);
        }
        let start =
            names.iter().position(|n| n == start).ok_or_else(|| GrammarError::UnknownNonterminal(start.to_string()))?;
        let productions = vec![BTreeSet::new(); names.len()];
        Ok(Grammar { terminals, nonterminals: names, start: NonTerminal(start as u32), productions })
    }

    /// Adds `lhs -> rhs`. Each token is resolved as a non-terminal if one by
    /// that name is declared, otherwise as a terminal.
    pub fn add_production(&mut self, lhs: &str, rhs: &[&str]) -> Result<(), GrammarError> {
        let n = self.nonterminal(lhs).ok_or_else(|| GrammarError::UnknownNonterminal(lhs.into()))?;
        let form = rhs
            .iter()
            .map(|tok| {
                self.nonterminal(tok)
                    .map(GSym::N)
                    .or_else(|| self.terminals.symbol(tok).map(GSym::T))
                    .ok_or_else(|| GrammarError::UnknownSymbol(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.productions[n.id()].insert(SententialForm(form));
        Ok(())
    }

    /// Parses the text format described in the module docs. `terminals`
    /// fixes the terminal alphabet when the text has no `terminals:` header;
    /// without either, terminals are collected in order of first appearance.
    pub fn parse(text: &str, terminals: Option<&Alphabet>) -> Result<Self, GrammarError> {
        let mut declared: Option<Vec<String>> = None;
        let mut start: Option<String> = None;
        let mut rules: Vec<(usize, String, Vec<Vec<String>>)> = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("terminals:") {
                declared = Some(rest.split_whitespace().map(String::from).collect());
                continue;
            }
            if let Some(rest) = line.strip_prefix("start:") {
                start = Some(rest.trim().to_string());
                continue;
            }
            let Some((lhs, rhs)) = line.split_once("->") else {
                return Err(GrammarError::Syntax { line: line_no, msg: "expected `->`".into() });
            };
            let lhs = lhs.trim();
            if lhs.is_empty() || lhs.split_whitespace().count() != 1 {
                return Err(GrammarError::Syntax {
                    line: line_no,
                    msg: "left-hand side must be one non-terminal".into(),
                });
            }
            let mut alts = Vec::new();
            for alt in rhs.split('|') {
                let toks: Vec<String> = alt.split_whitespace().map(String::from).collect();
                let toks = match toks.as_slice() {
                    [] => {
                        return Err(GrammarError::Syntax {
                            line: line_no,
                            msg: "empty alternative; write \"\" for the empty word".into(),
                        })
                    }
                    [t] if t == "\"\"" || t == "ε" => Vec::new(),
                    _ if toks.iter().any(|t| t == "\"\"" || t == "ε") => {
                        return Err(GrammarError::Syntax {
                            line: line_no,
                            msg: "\"\" must stand alone in its alternative".into(),
                        })
                    }
                    _ => toks,
                };
                alts.push(toks);
            }
            rules.push((line_no, lhs.to_string(), alts));
        }
        if rules.is_empty() {
            return Err(GrammarError::NoRules);
        }

        let mut nonterminals: Vec<String> = Vec::new();
        for (_, lhs, _) in &rules {
            if !nonterminals.contains(lhs) {
                nonterminals.push(lhs.clone());
            }
        }
        let is_terminal = |tok: &str| match &declared {
            Some(d) if d.iter().any(|t| t == tok) => true,
            _ => !tok.chars().next().is_some_and(char::is_uppercase),
        };
        for (_, _, alts) in &rules {
            for tok in alts.iter().flatten() {
                if !is_terminal(tok) && !nonterminals.contains(tok) {
                    return Err(GrammarError::UnknownNonterminal(tok.clone()));
                }
            }
        }

        let alphabet = match (&declared, terminals) {
            (Some(d), _) => Alphabet::new(d.iter().cloned())?,
            (None, Some(a)) => a.clone(),
            (None, None) => {
                let mut seen: Vec<String> = Vec::new();
                for tok in rules.iter().flat_map(|(_, _, alts)| alts.iter().flatten()) {
                    if is_terminal(tok) && !seen.contains(tok) {
                        seen.push(tok.clone());
                    }
                }
                if seen.is_empty() {
                    // Only the empty word can be derived; any alphabet will do.
                    seen.push("a".into());
                }
                Alphabet::new(seen)?
            }
        };

        let start = start.unwrap_or_else(|| rules[0].1.clone());
        let mut g = Grammar::new(alphabet, nonterminals, &start)?;
        for (_, lhs, alts) in &rules {
            let n = g.nonterminal(lhs).expect("collected above");
            for alt in alts {
                let form = alt
                    .iter()
                    .map(|tok| {
                        if is_terminal(tok) {
                            g.terminals.symbol(tok).map(GSym::T).ok_or_else(|| GrammarError::UnknownSymbol(tok.clone()))
                        } else {
                            Ok(GSym::N(g.nonterminal(tok).expect("checked above")))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                g.productions[n.id()].insert(SententialForm(form));
            }
        }
        Ok(g)
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    pub fn start(&self) -> NonTerminal {
        self.start
    }

    pub fn nonterminal(&self, name: &str) -> Option<NonTerminal> {
        self.nonterminals.iter().position(|n| n == name).map(|i| NonTerminal(i as u32))
    }

    pub fn nonterminal_name(&self, n: NonTerminal) -> &str {
        &self.nonterminals[n.id()]
    }

    pub fn nonterminals(&self) -> impl Iterator<Item = NonTerminal> {
        (0..self.nonterminals.len()).map(|i| NonTerminal(i as u32))
    }

    pub fn productions(&self, n: NonTerminal) -> &BTreeSet<SententialForm> {
        &self.productions[n.id()]
    }

    fn has_empty(&self, n: NonTerminal) -> bool {
        self.productions[n.id()].contains(&SententialForm::default())
    }

    pub fn show_form(&self, form: &SententialForm) -> String {
        if form.is_empty() {
            return "\"\"".into();
        }
        form.0
            .iter()
            .map(|s| match s {
                GSym::T(t) => self.terminals.name(*t),
                GSym::N(n) => self.nonterminal_name(*n),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Checks that every production is empty or starts with a terminal.
    /// Reports the first offending production in declaration order.
    pub fn validate_wgnf(&self) -> Result<(), WgnfViolation> {
        for n in self.nonterminals() {
            for form in self.productions(n) {
                if let Some(GSym::N(_)) = form.0.first() {
                    return Err(WgnfViolation {
                        nonterminal: self.nonterminal_name(n).to_string(),
                        production: self.show_form(form),
                    });
                }
            }
        }
        Ok(())
    }

    /// Whether `state` can derive the empty word: it must consist of
    /// non-terminals that each have an empty production.
    pub fn state_nullable(&self, state: &[GSym]) -> bool {
        state.iter().all(|s| match s {
            GSym::T(_) => false,
            GSym::N(n) => self.has_empty(*n),
        })
    }

    /// The states reachable from `state` by reading terminal `a` at the left.
    pub fn state_step(&self, state: &[GSym], a: Symbol) -> StateSet {
        let mut out = StateSet::new();
        self.step_into(state, a, &mut out);
        out
    }

    fn step_into(&self, state: &[GSym], a: Symbol, out: &mut StateSet) {
        let Some((head, rest)) = state.split_first() else { return };
        match *head {
            GSym::T(b) => {
                if a == b {
                    out.insert(SententialForm(rest.to_vec()));
                }
            }
            GSym::N(n) => {
                for form in self.productions(n) {
                    if let Some((GSym::T(b), beta)) = form.0.split_first() {
                        if *b == a {
                            let mut next = beta.to_vec();
                            next.extend_from_slice(rest);
                            out.insert(SententialForm(next));
                        }
                    }
                }
                if self.has_empty(n) {
                    self.step_into(rest, a, out);
                }
            }
        }
    }

    /// Steps every state of `states` by `a` and unions the results.
    pub fn step_set(&self, states: &StateSet, a: Symbol) -> StateSet {
        let mut out = StateSet::new();
        for s in states {
            self.step_into(&s.0, a, &mut out);
        }
        out
    }

    /// The trie of all words derivable from some state in `states`.
    ///
    /// State sets are interned and their transitions memoized, so the
    /// explored part of the trie is a deterministic automaton over state sets.
    pub fn close(&self, states: StateSet) -> Lang {
        let space = Rc::new(RefCell::new(StateSpace::new(self.clone())));
        let id = space.borrow_mut().intern(states);
        let (obs_space, step_space) = (Rc::clone(&space), space);
        Lang::coiterate(
            &self.terminals,
            move |id: &usize| obs_space.borrow_mut().accepting(*id),
            move |id, a| step_space.borrow_mut().step(*id, a),
            id,
        )
    }

    /// The trie of the grammar's language. Refuses grammars that are not in
    /// weak Greibach normal form.
    pub fn lang(&self) -> Result<Lang, GrammarError> {
        self.validate_wgnf().map_err(GrammarError::NotWeakGnf)?;
        Ok(self.close(BTreeSet::from([SententialForm::single(self.start)])))
    }

    /// Inductive reading of `close`: the empty word needs a nullable state,
    /// `a·w` needs `w` from the stepped set.
    pub fn member_od(&self, states: &StateSet, w: &Word) -> bool {
        let mut current = states.clone();
        for &a in w.letters() {
            current = self.step_set(&current, a);
        }
        current.iter().any(|s| self.state_nullable(&s.0))
    }

    /// Whether `w` has a leftmost derivation from `state`.
    ///
    /// Searches the derivation rules directly, bounded by a fuel budget counted
    /// in rule applications. For weak GNF grammars the budget
    /// `2|w| + |state| + |w|·r + 1`, with `r` the longest right-hand side, is
    /// never exhausted: terminal matches and non-empty expansions are each at
    /// most `|w|`, and every empty expansion removes one of at most
    /// `|state| + |w|·(r - 1)` non-terminal occurrences.
    pub fn derives(&self, state: &[GSym], w: &Word) -> bool {
        let longest = self.productions.iter().flatten().map(SententialForm::len).max().unwrap_or(0);
        let n = w.len();
        let fuel = 2 * n + state.len() + n * longest + 1;
        self.search(state.to_vec(), w.letters(), fuel)
    }

    fn search(&self, state: Vec<GSym>, w: &[Symbol], fuel: usize) -> bool {
        if fuel == 0 {
            return false;
        }
        if state.iter().filter(|s| matches!(s, GSym::T(_))).count() > w.len() {
            return false;
        }
        match state.split_first() {
            None => w.is_empty(),
            Some((GSym::T(a), rest)) => w.first() == Some(a) && self.search(rest.to_vec(), &w[1..], fuel - 1),
            Some((GSym::N(n), rest)) => self.productions(*n).iter().any(|beta| {
                let mut next = beta.0.clone();
                next.extend_from_slice(rest);
                self.search(next, w, fuel - 1)
            }),
        }
    }
}

struct StateSpace {
    grammar: Grammar,
    ids: HashMap<StateSet, usize>,
    sets: Vec<StateSet>,
    accepting: Vec<Option<bool>>,
    edges: BTreeMap<(usize, Symbol), usize>,
}

impl StateSpace {
    fn new(grammar: Grammar) -> Self {
        StateSpace { grammar, ids: HashMap::new(), sets: Vec::new(), accepting: Vec::new(), edges: BTreeMap::new() }
    }

    fn intern(&mut self, set: StateSet) -> usize {
        if let Some(&id) = self.ids.get(&set) {
            return id;
        }
        let id = self.sets.len();
        self.ids.insert(set.clone(), id);
        self.sets.push(set);
        self.accepting.push(None);
        id
    }

    fn accepting(&mut self, id: usize) -> bool {
        if let Some(b) = self.accepting[id] {
            return b;
        }
        let b = self.sets[id].iter().any(|s| self.grammar.state_nullable(&s.0));
        self.accepting[id] = Some(b);
        b
    }

    fn step(&mut self, id: usize, a: Symbol) -> usize {
        if let Some(&next) = self.edges.get(&(id, a)) {
            return next;
        }
        let set = self.grammar.step_set(&self.sets[id], a);
        let next = self.intern(set);
        self.edges.insert((id, a), next);
        next
    }
}
