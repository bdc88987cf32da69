//! Naive set-of-words semantics, truncated to a length bound.
//!
//! Everything here works on explicit finite sets of words and shares no code
//! with the trie operations, so it can serve as ground truth for them.

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::syntax::Regex;

/// A finite set of words of length at most `bound`, kept in shortlex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedLang {
    alphabet: Alphabet,
    bound: usize,
    words: BTreeSet<Word>,
}

impl BoundedLang {
    /// Drops every word longer than `bound`.
    pub fn from_words(alphabet: Alphabet, bound: usize, words: impl IntoIterator<Item = Word>) -> Self {
        let words = words.into_iter().filter(|w| w.len() <= bound).collect();
        BoundedLang { alphabet, bound, words }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn into_words(self) -> BTreeSet<Word> {
        self.words
    }

    pub fn truncate(&self, bound: usize) -> BoundedLang {
        BoundedLang::from_words(self.alphabet.clone(), bound, self.words.iter().cloned())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.words.iter().map(|w| w.display(&self.alphabet).to_string()).collect()
    }
}

/// The words of `r` up to length `n`, by structural recursion on sets.
pub fn eval_bounded(r: &Regex, n: usize, alphabet: &Alphabet) -> BoundedLang {
    BoundedLang::from_words(alphabet.clone(), n, eval(r, n, alphabet))
}

fn eval(r: &Regex, n: usize, sigma: &Alphabet) -> BTreeSet<Word> {
    match r {
        Regex::Zero => BTreeSet::new(),
        Regex::One => BTreeSet::from([Word::empty()]),
        Regex::Atom(a) => {
            if n >= 1 {
                BTreeSet::from([Word::from(vec![*a])])
            } else {
                BTreeSet::new()
            }
        }
        Regex::Plus(x, y) => &eval(x, n, sigma) | &eval(y, n, sigma),
        Regex::Inter(x, y) => &eval(x, n, sigma) & &eval(y, n, sigma),
        Regex::Not(x) => {
            let inner = eval(x, n, sigma);
            sigma.words_up_to(n).into_iter().filter(|w| !inner.contains(w)).collect()
        }
        Regex::Concat(x, y) => product(&eval(x, n, sigma), &eval(y, n, sigma), n),
        Regex::Star(x) => {
            let base = eval(x, n, sigma);
            let mut acc = BTreeSet::from([Word::empty()]);
            // Each round adds at least one letter to the shortest new word.
            for _ in 0..=n {
                let next = &acc | &product(&acc, &base, n);
                if next == acc {
                    break;
                }
                acc = next;
            }
            acc
        }
        Regex::Shuffle(x, y) => {
            let (xs, ys) = (eval(x, n, sigma), eval(y, n, sigma));
            let mut out = BTreeSet::new();
            for u in &xs {
                for v in ys.iter().filter(|v| u.len() + v.len() <= n) {
                    out.extend(interleavings(u, v));
                }
            }
            out
        }
    }
}

fn product(xs: &BTreeSet<Word>, ys: &BTreeSet<Word>, n: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for u in xs {
        for v in ys.iter().filter(|v| u.len() + v.len() <= n) {
            out.insert(u.concat(v));
        }
    }
    out
}

/// Every merge of `w` and `v` that keeps the letters of each in order.
pub fn interleavings(w: &Word, v: &Word) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut buf = Vec::with_capacity(w.len() + v.len());
    merge(w.letters(), v.letters(), &mut buf, &mut out);
    out
}

fn merge(w: &[Symbol], v: &[Symbol], buf: &mut Vec<Symbol>, out: &mut BTreeSet<Word>) {
    match (w.split_first(), v.split_first()) {
        (None, None) => {
            out.insert(Word::from(buf.clone()));
        }
        (w0, v0) => {
            if let Some((&a, rest)) = w0 {
                buf.push(a);
                merge(rest, v, buf, out);
                buf.pop();
            }
            if let Some((&b, rest)) = v0 {
                buf.push(b);
                merge(w, rest, buf, out);
                buf.pop();
            }
        }
    }
}
