//! Finite alphabets, symbols and words.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

/// A letter, stored as its index into the owning [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u32);

impl Symbol {
    pub fn new(id: usize) -> Self {
        Symbol(id as u32)
    }

    pub fn id(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("alphabet must contain at least one symbol")]
    Empty,
    #[error("symbol `{0}` declared twice")]
    Duplicate(String),
    #[error("symbol name must not be empty")]
    EmptyName,
    #[error("letter `{letter}` at position {pos} is not in the alphabet")]
    UnknownLetter { letter: String, pos: usize },
}

struct Inner {
    names: Vec<String>,
    index: HashMap<String, Symbol>,
}

/// A nonempty, ordered set of distinct symbol names.
///
/// Cloning is cheap; clones share storage. Two alphabets compare equal when
/// they list the same names in the same order.
#[derive(Clone)]
pub struct Alphabet(Rc<Inner>);

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut list = Vec::new();
        let mut index = HashMap::new();
        for name in names {
            let name = name.into();
            if name.is_empty() {
                return Err(AlphabetError::EmptyName);
            }
            if index.contains_key(&name) {
                return Err(AlphabetError::Duplicate(name));
            }
            index.insert(name.clone(), Symbol::new(list.len()));
            list.push(name);
        }
        if list.is_empty() {
            return Err(AlphabetError::Empty);
        }
        Ok(Alphabet(Rc::new(Inner { names: list, index })))
    }

    /// One symbol per character, e.g. `"ab"` gives `{a, b}`.
    pub fn from_chars(letters: &str) -> Result<Self, AlphabetError> {
        Self::new(letters.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> impl DoubleEndedIterator<Item = Symbol> + ExactSizeIterator + Clone {
        (0..self.len()).map(Symbol::new)
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.0.index.get(name).copied()
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        sym.id() < self.len()
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.0.names[sym.id()]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    /// Parses a word written one character per symbol. `""` and `"ε"` (when
    /// `ε` is not itself a symbol) both denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, AlphabetError> {
        if text == "ε" && self.symbol("ε").is_none() {
            return Ok(Word::empty());
        }
        text.chars()
            .enumerate()
            .map(|(pos, c)| {
                let mut buf = [0u8; 4];
                self.symbol(c.encode_utf8(&mut buf))
                    .ok_or_else(|| AlphabetError::UnknownLetter { letter: c.to_string(), pos })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word::from)
    }

    /// Every word of length exactly `len`, in lexicographic order.
    pub fn words_of_len(&self, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out.into_iter().flat_map(|w| self.symbols().map(move |s| w.pushed(s))).collect();
        }
        out
    }

    /// Every word of length at most `n`, in length-lexicographic order.
    pub fn words_up_to(&self, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|len| self.words_of_len(len)).collect()
    }

    pub fn same(&self, other: &Alphabet) -> bool {
        Rc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.names()).finish()
    }
}

/// A finite word.
///
/// Words are ordered length-first, then lexicographically by symbol index
/// ("shortlex"), which is the order used for enumeration and for choosing
/// minimal counterexamples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn pushed(&self, s: Symbol) -> Word {
        let mut w = self.clone();
        w.push(s);
        w
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayWord<'a> {
        DisplayWord { word: self, alphabet }
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders a word by concatenating symbol names; the empty word is `ε`.
pub struct DisplayWord<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("ε");
        }
        for &s in self.word.letters() {
            f.write_str(self.alphabet.name(s))?;
        }
        Ok(())
    }
}
