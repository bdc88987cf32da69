//! Seeded random regular expressions for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, Symbol};
use crate::syntax::Regex;

/// Shape of generated expressions.
#[derive(Clone, Debug)]
pub struct GenConfig {
    /// Maximum AST depth (a leaf has depth 0).
    pub max_depth: u32,
    /// Also generate `&`, `~` and `||`.
    pub extended: bool,
    /// Probability of stopping early with a leaf at an inner position.
    pub leaf_prob: f64,
    /// Weight of `*` relative to the binary constructors (which weigh 1).
    pub star_weight: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { max_depth: 3, extended: false, leaf_prob: 0.25, star_weight: 0.5 }
    }
}

impl GenConfig {
    pub fn extended(max_depth: u32) -> Self {
        GenConfig { max_depth, extended: true, ..Self::default() }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy)]
enum Ctor {
    Plus,
    Concat,
    Star,
    Inter,
    Not,
    Shuffle,
}

/// Draws one expression. Leaves are `0`, `1` or an atom, atoms being twice
/// as likely as each constant.
pub fn random_regex<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, cfg: &GenConfig) -> Regex {
    gen(rng, alphabet, cfg, cfg.max_depth)
}

fn gen<R: Rng + ?Sized>(rng: &mut R, sigma: &Alphabet, cfg: &GenConfig, depth: u32) -> Regex {
    if depth == 0 || rng.random_bool(cfg.leaf_prob) {
        return leaf(rng, sigma);
    }
    let mut table = vec![(Ctor::Plus, 1.0), (Ctor::Concat, 1.0), (Ctor::Star, cfg.star_weight)];
    if cfg.extended {
        table.extend([(Ctor::Inter, 1.0), (Ctor::Not, 0.5), (Ctor::Shuffle, 1.0)]);
    }
    let total: f64 = table.iter().map(|(_, w)| w).sum();
    let mut pick = rng.random_range(0.0..total);
    let mut ctor = table[0].0;
    for &(c, w) in &table {
        if pick < w {
            ctor = c;
            break;
        }
        pick -= w;
    }
    let sub = |rng: &mut R| gen(rng, sigma, cfg, depth - 1);
    match ctor {
        Ctor::Plus => Regex::raw_plus(sub(rng), sub(rng)),
        Ctor::Concat => Regex::raw_concat(sub(rng), sub(rng)),
        Ctor::Star => Regex::raw_star(sub(rng)),
        Ctor::Inter => Regex::raw_inter(sub(rng), sub(rng)),
        Ctor::Not => Regex::raw_not(sub(rng)),
        Ctor::Shuffle => Regex::raw_shuffle(sub(rng), sub(rng)),
    }
}

fn leaf<R: Rng + ?Sized>(rng: &mut R, sigma: &Alphabet) -> Regex {
    let n = sigma.len();
    let k = rng.random_range(0..n * 2 + 2);
    match k {
        0 => Regex::Zero,
        1 => Regex::One,
        _ => Regex::Atom(Symbol::new((k - 2) / 2)),
    }
}

/// Smaller expressions to try when shrinking a failing case: constants,
/// atoms and immediate subterms, all strictly smaller than `r`.
pub fn shrink_candidates(r: &Regex, alphabet: &Alphabet) -> Vec<Regex> {
    let mut out = vec![Regex::Zero, Regex::One];
    out.extend(alphabet.symbols().map(Regex::Atom));
    match r {
        Regex::Zero | Regex::One | Regex::Atom(_) => {}
        Regex::Not(x) | Regex::Star(x) => out.push((**x).clone()),
        Regex::Plus(x, y) | Regex::Inter(x, y) | Regex::Concat(x, y) | Regex::Shuffle(x, y) => {
            out.push((**x).clone());
            out.push((**y).clone());
        }
    }
    out.retain(|c| c.size() < r.size() && c != r);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn depth(r: &Regex) -> u32 {
        match r {
            Regex::Zero | Regex::One | Regex::Atom(_) => 0,
            Regex::Not(x) | Regex::Star(x) => 1 + depth(x),
            Regex::Plus(x, y) | Regex::Inter(x, y) | Regex::Concat(x, y) | Regex::Shuffle(x, y) => {
                1 + depth(x).max(depth(y))
            }
        }
    }

    #[test]
    fn respects_depth_and_is_deterministic() {
        let s = Alphabet::from_chars("ab").unwrap();
        let cfg = GenConfig::extended(3);
        let a: Vec<Regex> = {
            let mut rng = seeded_rng(7);
            (0..200).map(|_| random_regex(&mut rng, &s, &cfg)).collect()
        };
        let mut rng = seeded_rng(7);
        let b: Vec<Regex> = (0..200).map(|_| random_regex(&mut rng, &s, &cfg)).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| depth(r) <= 3));
        assert!(a.iter().any(|r| matches!(r, Regex::Shuffle(..))));
    }

    #[test]
    fn shrink_candidates_are_smaller() {
        let s = Alphabet::from_chars("ab").unwrap();
        let mut rng = seeded_rng(1);
        for _ in 0..100 {
            let r = random_regex(&mut rng, &s, &GenConfig::extended(3));
            assert!(shrink_candidates(&r, &s).iter().all(|c| c.size() < r.size()));
        }
    }
}
