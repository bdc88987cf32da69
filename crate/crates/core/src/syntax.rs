//! Regular expressions: AST, text syntax, denotation into tries and
//! syntactic (Brzozowski) derivatives.
//!
//! Text syntax, loosest binding first:
//!
//! ```text
//! sum     := shuffle ('+' sum)?              right associative
//! shuffle := inter ('||' inter)*             left associative
//! inter   := concat ('&' concat)*            left associative
//! concat  := unary ('.' concat)?             right associative
//! unary   := '~' unary | postfix
//! postfix := primary '*'*
//! primary := '0' | '1' | letter | '(' sum ')'
//! ```
//!
//! Whitespace between tokens is ignored. `~r*` parses as `~(r*)`.

use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::alphabet::{Alphabet, Symbol};
use crate::ops;
use crate::trie::Lang;

/// A regular expression extended with intersection, complement and shuffle.
///
/// The derived `Ord` (constructor tag first, then children left to right) is
/// the total order used to sort summands during normalization.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regex {
    Zero,
    One,
    Atom(Symbol),
    Plus(Rc<Regex>, Rc<Regex>),
    Inter(Rc<Regex>, Rc<Regex>),
    Not(Rc<Regex>),
    Concat(Rc<Regex>, Rc<Regex>),
    Star(Rc<Regex>),
    Shuffle(Rc<Regex>, Rc<Regex>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("letter `{letter}` at position {pos} is not in the alphabet")]
    UnknownLetter { letter: char, pos: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

/// Raw (unnormalized) constructors, mirroring the enum variants.
impl Regex {
    pub fn atom(a: Symbol) -> Regex {
        Regex::Atom(a)
    }

    pub fn raw_plus(r: Regex, s: Regex) -> Regex {
        Regex::Plus(Rc::new(r), Rc::new(s))
    }

    pub fn raw_inter(r: Regex, s: Regex) -> Regex {
        Regex::Inter(Rc::new(r), Rc::new(s))
    }

    pub fn raw_not(r: Regex) -> Regex {
        Regex::Not(Rc::new(r))
    }

    pub fn raw_concat(r: Regex, s: Regex) -> Regex {
        Regex::Concat(Rc::new(r), Rc::new(s))
    }

    pub fn raw_star(r: Regex) -> Regex {
        Regex::Star(Rc::new(r))
    }

    pub fn raw_shuffle(r: Regex, s: Regex) -> Regex {
        Regex::Shuffle(Rc::new(r), Rc::new(s))
    }
}

// Smart constructors. Given normalized arguments they return normalized
// results: sums (and intersections) flattened, sorted, deduplicated and right
// nested; unit and absorber laws applied for concatenation and shuffle;
// concatenation right nested; `~~r = r`; stars collapsed.
impl Regex {
    pub fn plus(r: &Regex, s: &Regex) -> Regex {
        let mut terms = Vec::new();
        collect(r, &mut terms, Kind::Plus);
        collect(s, &mut terms, Kind::Plus);
        terms.retain(|t| **t != Regex::Zero);
        rebuild(terms, Regex::Zero, Regex::Plus)
    }

    pub fn inter(r: &Regex, s: &Regex) -> Regex {
        let mut terms = Vec::new();
        collect(r, &mut terms, Kind::Inter);
        collect(s, &mut terms, Kind::Inter);
        if terms.iter().any(|t| **t == Regex::Zero) {
            return Regex::Zero;
        }
        rebuild(terms, Regex::raw_not(Regex::Zero), Regex::Inter)
    }

    pub fn not(r: &Regex) -> Regex {
        match r {
            Regex::Not(inner) => (**inner).clone(),
            _ => Regex::raw_not(r.clone()),
        }
    }

    pub fn concat(r: &Regex, s: &Regex) -> Regex {
        match (r, s) {
            (Regex::Zero, _) | (_, Regex::Zero) => Regex::Zero,
            (Regex::One, _) => s.clone(),
            (_, Regex::One) => r.clone(),
            (Regex::Concat(r1, r2), _) => Regex::concat(r1, &Regex::concat(r2, s)),
            _ => Regex::raw_concat(r.clone(), s.clone()),
        }
    }

    pub fn star(r: &Regex) -> Regex {
        match r {
            Regex::Zero | Regex::One => Regex::One,
            Regex::Star(_) => r.clone(),
            _ => Regex::raw_star(r.clone()),
        }
    }

    pub fn shuffle(r: &Regex, s: &Regex) -> Regex {
        match (r, s) {
            (Regex::Zero, _) | (_, Regex::Zero) => Regex::Zero,
            (Regex::One, _) => s.clone(),
            (_, Regex::One) => r.clone(),
            _ => Regex::raw_shuffle(r.clone(), s.clone()),
        }
    }

    /// Rebuilds the expression bottom-up with the smart constructors.
    /// Idempotent and language-preserving.
    pub fn normalize(&self) -> Regex {
        match self {
            Regex::Zero | Regex::One | Regex::Atom(_) => self.clone(),
            Regex::Plus(r, s) => Regex::plus(&r.normalize(), &s.normalize()),
            Regex::Inter(r, s) => Regex::inter(&r.normalize(), &s.normalize()),
            Regex::Not(r) => Regex::not(&r.normalize()),
            Regex::Concat(r, s) => Regex::concat(&r.normalize(), &s.normalize()),
            Regex::Star(r) => Regex::star(&r.normalize()),
            Regex::Shuffle(r, s) => Regex::shuffle(&r.normalize(), &s.normalize()),
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Plus,
    Inter,
}

fn collect(r: &Regex, out: &mut Vec<Rc<Regex>>, kind: Kind) {
    match (r, kind) {
        (Regex::Plus(a, b), Kind::Plus) | (Regex::Inter(a, b), Kind::Inter) => {
            collect(a, out, kind);
            collect(b, out, kind);
        }
        _ => out.push(Rc::new(r.clone())),
    }
}

fn rebuild(mut terms: Vec<Rc<Regex>>, unit: Regex, node: fn(Rc<Regex>, Rc<Regex>) -> Regex) -> Regex {
    terms.sort();
    terms.dedup();
    let mut iter = terms.into_iter().rev();
    let Some(last) = iter.next() else { return unit };
    let acc = iter.fold(last, |acc, t| Rc::new(node(t, acc)));
    Rc::try_unwrap(acc).unwrap_or_else(|rc| (*rc).clone())
}

impl Regex {
    /// Whether the empty word is in the language.
    pub fn nullable(&self) -> bool {
        match self {
            Regex::Zero | Regex::Atom(_) => false,
            Regex::One | Regex::Star(_) => true,
            Regex::Plus(r, s) => r.nullable() || s.nullable(),
            Regex::Inter(r, s) | Regex::Concat(r, s) | Regex::Shuffle(r, s) => r.nullable() && s.nullable(),
            Regex::Not(r) => !r.nullable(),
        }
    }

    /// Brzozowski derivative, in normal form.
    pub fn deriv(&self, a: Symbol) -> Regex {
        self.normalize().deriv_normalized(a)
    }

    /// Derivative of an expression that is already normalized. Skips the
    /// up-front normalization pass of [`deriv`](Self::deriv).
    pub fn deriv_normalized(&self, a: Symbol) -> Regex {
        match self {
            Regex::Zero | Regex::One => Regex::Zero,
            Regex::Atom(b) => {
                if *b == a {
                    Regex::One
                } else {
                    Regex::Zero
                }
            }
            Regex::Plus(r, s) => Regex::plus(&r.deriv_normalized(a), &s.deriv_normalized(a)),
            Regex::Inter(r, s) => Regex::inter(&r.deriv_normalized(a), &s.deriv_normalized(a)),
            Regex::Not(r) => Regex::not(&r.deriv_normalized(a)),
            Regex::Concat(r, s) => {
                let head = Regex::concat(&r.deriv_normalized(a), s);
                if r.nullable() {
                    Regex::plus(&head, &s.deriv_normalized(a))
                } else {
                    head
                }
            }
            Regex::Star(r) => Regex::concat(&r.deriv_normalized(a), self),
            Regex::Shuffle(r, s) => {
                Regex::plus(&Regex::shuffle(&r.deriv_normalized(a), s), &Regex::shuffle(r, &s.deriv_normalized(a)))
            }
        }
    }

    pub fn contains_not(&self) -> bool {
        match self {
            Regex::Zero | Regex::One | Regex::Atom(_) => false,
            Regex::Not(_) => true,
            Regex::Star(r) => r.contains_not(),
            Regex::Plus(r, s) | Regex::Inter(r, s) | Regex::Concat(r, s) | Regex::Shuffle(r, s) => {
                r.contains_not() || s.contains_not()
            }
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Regex::Zero | Regex::One | Regex::Atom(_) => 1,
            Regex::Not(r) | Regex::Star(r) => 1 + r.size(),
            Regex::Plus(r, s) | Regex::Inter(r, s) | Regex::Concat(r, s) | Regex::Shuffle(r, s) => {
                1 + r.size() + s.size()
            }
        }
    }

    /// The trie of this expression, built from the trie operations.
    pub fn denote(&self, alphabet: &Alphabet) -> Lang {
        match self {
            Regex::Zero => ops::zero(alphabet),
            Regex::One => ops::one(alphabet),
            Regex::Atom(a) => ops::atom(alphabet, *a),
            Regex::Plus(r, s) => ops::plus(&r.denote(alphabet), &s.denote(alphabet)),
            Regex::Inter(r, s) => ops::inter(&r.denote(alphabet), &s.denote(alphabet)),
            Regex::Not(r) => ops::compl(&r.denote(alphabet)),
            Regex::Concat(r, s) => ops::concat(&r.denote(alphabet), &s.denote(alphabet)),
            Regex::Star(r) => ops::star(&r.denote(alphabet)),
            Regex::Shuffle(r, s) => ops::shuffle(&r.denote(alphabet), &s.denote(alphabet)),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayRegex<'a> {
        DisplayRegex { regex: self, alphabet }
    }
}

/// Prints a regex in the text syntax, with the minimal parentheses needed
/// to parse back to the same tree.
pub struct DisplayRegex<'a> {
    regex: &'a Regex,
    alphabet: &'a Alphabet,
}

// Binding strength, loosest first.
const P_SUM: u8 = 0;
const P_SHUFFLE: u8 = 1;
const P_INTER: u8 = 2;
const P_CONCAT: u8 = 3;
const P_UNARY: u8 = 4;
const P_POSTFIX: u8 = 5;

impl DisplayRegex<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, r: &Regex, min: u8) -> fmt::Result {
        let prec = match r {
            Regex::Zero | Regex::One | Regex::Atom(_) => P_POSTFIX + 1,
            Regex::Plus(..) => P_SUM,
            Regex::Shuffle(..) => P_SHUFFLE,
            Regex::Inter(..) => P_INTER,
            Regex::Concat(..) => P_CONCAT,
            Regex::Not(_) => P_UNARY,
            Regex::Star(_) => P_POSTFIX,
        };
        let paren = prec < min;
        if paren {
            f.write_str("(")?;
        }
        match r {
            Regex::Zero => f.write_str("0")?,
            Regex::One => f.write_str("1")?,
            Regex::Atom(a) => f.write_str(self.alphabet.name(*a))?,
            Regex::Plus(x, y) => {
                self.write(f, x, P_SUM + 1)?;
                f.write_str("+")?;
                self.write(f, y, P_SUM)?;
            }
            Regex::Shuffle(x, y) => {
                self.write(f, x, P_SHUFFLE)?;
                f.write_str("||")?;
                self.write(f, y, P_SHUFFLE + 1)?;
            }
            Regex::Inter(x, y) => {
                self.write(f, x, P_INTER)?;
                f.write_str("&")?;
                self.write(f, y, P_INTER + 1)?;
            }
            Regex::Concat(x, y) => {
                self.write(f, x, P_CONCAT + 1)?;
                f.write_str(".")?;
                self.write(f, y, P_CONCAT)?;
            }
            Regex::Not(x) => {
                f.write_str("~")?;
                self.write(f, x, P_UNARY)?;
            }
            Regex::Star(x) => {
                self.write(f, x, P_POSTFIX)?;
                f.write_str("*")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for DisplayRegex<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.regex, P_SUM)
    }
}

/// Parses the text syntax; letters must be single-character symbol names of
/// `alphabet`. Returns the raw tree, without normalization.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, alphabet };
    let r = p.sum()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(r)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        let n = tok.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(tok.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn error(&self, msg: String) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg }
    }

    fn sum(&mut self) -> Result<Regex, ParseError> {
        let lhs = self.shuffle()?;
        if self.eat("+") {
            Ok(Regex::raw_plus(lhs, self.sum()?))
        } else {
            Ok(lhs)
        }
    }

    fn shuffle(&mut self) -> Result<Regex, ParseError> {
        let mut lhs = self.inter()?;
        while self.eat("||") {
            lhs = Regex::raw_shuffle(lhs, self.inter()?);
        }
        Ok(lhs)
    }

    fn inter(&mut self) -> Result<Regex, ParseError> {
        let mut lhs = self.concat()?;
        while self.eat("&") {
            lhs = Regex::raw_inter(lhs, self.concat()?);
        }
        Ok(lhs)
    }

    fn concat(&mut self) -> Result<Regex, ParseError> {
        let lhs = self.unary()?;
        if self.eat(".") {
            Ok(Regex::raw_concat(lhs, self.concat()?))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Regex, ParseError> {
        if self.eat("~") {
            Ok(Regex::raw_not(self.unary()?))
        } else {
            self.postfix()
        }
    }

    fn postfix(&mut self) -> Result<Regex, ParseError> {
        let mut r = self.primary()?;
        while self.eat("*") {
            r = Regex::raw_star(r);
        }
        Ok(r)
    }

    fn primary(&mut self) -> Result<Regex, ParseError> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input".into()));
        };
        match c {
            '(' => {
                self.pos += 1;
                let r = self.sum()?;
                if !self.eat(")") {
                    return Err(self.error("expected `)`".into()));
                }
                Ok(r)
            }
            '0' => {
                self.pos += 1;
                Ok(Regex::Zero)
            }
            '1' => {
                self.pos += 1;
                Ok(Regex::One)
            }
            _ => {
                let mut buf = [0u8; 4];
                if let Some(sym) = self.alphabet.symbol(c.encode_utf8(&mut buf)) {
                    self.pos += 1;
                    Ok(Regex::Atom(sym))
                } else if c.is_alphanumeric() {
                    Err(ParseError::UnknownLetter { letter: c, pos: self.pos })
                } else {
                    Err(self.error(format!("unexpected `{c}`")))
                }
            }
        }
    }
}
