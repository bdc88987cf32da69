//! A randomized battery of Kleene algebra laws, checked by bounded
//! bisimulation and simulation on random operands.
//!
//! The operations under test are supplied through [`LangOps`], so a
//! deliberately broken implementation can be plugged in to make sure the
//! battery actually notices.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Alphabet;
use crate::equivalence::{bisim_bounded, sim_bounded, Counterexample, Verdict};
use crate::gen::{random_regex, shrink_candidates, GenConfig};
use crate::ops;
use crate::syntax::Regex;
use crate::trie::Lang;

/// The operations a law battery exercises. Defaults are the library's own.
pub trait LangOps {
    fn zero(&self, s: &Alphabet) -> Lang {
        ops::zero(s)
    }
    fn one(&self, s: &Alphabet) -> Lang {
        ops::one(s)
    }
    fn plus(&self, l: &Lang, k: &Lang) -> Lang {
        ops::plus(l, k)
    }
    fn concat(&self, l: &Lang, k: &Lang) -> Lang {
        ops::concat(l, k)
    }
    fn star(&self, l: &Lang) -> Lang {
        ops::star(l)
    }
    fn shuffle(&self, l: &Lang, k: &Lang) -> Lang {
        ops::shuffle(l, k)
    }
}

pub struct StandardOps;

impl LangOps for StandardOps {}

/// Denotes `r` using `ops` for the operations it provides.
pub fn denote_with(ops: &dyn LangOps, r: &Regex, s: &Alphabet) -> Lang {
    let d = |x: &Regex| denote_with(ops, x, s);
    match r {
        Regex::Zero => ops.zero(s),
        Regex::One => ops.one(s),
        Regex::Atom(a) => ops::atom(s, *a),
        Regex::Plus(x, y) => ops.plus(&d(x), &d(y)),
        Regex::Inter(x, y) => ops::inter(&d(x), &d(y)),
        Regex::Not(x) => ops::compl(&d(x)),
        Regex::Concat(x, y) => ops.concat(&d(x), &d(y)),
        Regex::Star(x) => ops.star(&d(x)),
        Regex::Shuffle(x, y) => ops.shuffle(&d(x), &d(y)),
    }
}

/// What a law asks for on one instance.
pub enum Obligation {
    Equal(Lang, Lang),
    Leq(Lang, Lang),
    /// The instance does not satisfy the law's premise.
    Vacuous,
}

type Build = fn(&dyn LangOps, &Alphabet, &[Lang; 3]) -> Obligation;

pub struct Law {
    pub name: &'static str,
    build: Build,
}

macro_rules! law {
    ($name:expr, |$o:ident, $s:ident, $l:ident, $k:ident, $m:ident| $body:expr) => {
        Law {
            name: $name,
            build: |$o: &dyn LangOps, $s: &Alphabet, [$l, $k, $m]: &[Lang; 3]| {
                let _ = (&$s, &$l, &$k, &$m);
                $body
            },
        }
    };
}

/// Every law in the battery.
pub fn laws() -> Vec<Law> {
    use Obligation::{Equal, Leq, Vacuous};
    vec![
        law!("0+L=L", |o, s, l, k, m| Equal(o.plus(&o.zero(s), l), l.clone())),
        law!("L+L=L", |o, s, l, k, m| Equal(o.plus(l, l), l.clone())),
        law!("L+K=K+L", |o, s, l, k, m| Equal(o.plus(l, k), o.plus(k, l))),
        law!("(L+K)+M=L+(K+M)", |o, s, l, k, m| Equal(o.plus(&o.plus(l, k), m), o.plus(l, &o.plus(k, m)))),
        law!("0.L=0", |o, s, l, k, m| Equal(o.concat(&o.zero(s), l), o.zero(s))),
        law!("L.0=0", |o, s, l, k, m| Equal(o.concat(l, &o.zero(s)), o.zero(s))),
        law!("1.L=L", |o, s, l, k, m| Equal(o.concat(&o.one(s), l), l.clone())),
        law!("L.1=L", |o, s, l, k, m| Equal(o.concat(l, &o.one(s)), l.clone())),
        law!("(L.K).M=L.(K.M)", |o, s, l, k, m| Equal(o.concat(&o.concat(l, k), m), o.concat(l, &o.concat(k, m)))),
        law!("(L+K).M=L.M+K.M", |o, s, l, k, m| Equal(
            o.concat(&o.plus(l, k), m),
            o.plus(&o.concat(l, m), &o.concat(k, m))
        )),
        law!("M.(L+K)=M.L+M.K", |o, s, l, k, m| Equal(
            o.concat(m, &o.plus(l, k)),
            o.plus(&o.concat(m, l), &o.concat(m, k))
        )),
        law!("L*=1+L.L*", |o, s, l, k, m| Equal(o.star(l), o.plus(&o.one(s), &o.concat(l, &o.star(l))))),
        law!("1+L.L*<=L*", |o, s, l, k, m| Leq(o.plus(&o.one(s), &o.concat(l, &o.star(l))), o.star(l))),
        law!("o(L) => 1+L=L", |o, s, l, k, m| if l.accepts_now() {
            Equal(o.plus(&o.one(s), l), l.clone())
        } else {
            Vacuous
        }),
        law!("o(K) => L<=L.K", |o, s, l, k, m| if k.accepts_now() { Leq(l.clone(), o.concat(l, k)) } else { Vacuous }),
        // M is chosen as (L + X).K*, which always satisfies the premise.
        law!("L+M.K<=M => L.K*<=M", |o, s, l, k, x| {
            let m = o.concat(&o.plus(l, x), &o.star(k));
            Leq(o.concat(l, &o.star(k)), m)
        }),
        law!("L||K=K||L", |o, s, l, k, m| Equal(o.shuffle(l, k), o.shuffle(k, l))),
        law!("(L||K)||M=L||(K||M)", |o, s, l, k, m| Equal(
            o.shuffle(&o.shuffle(l, k), m),
            o.shuffle(l, &o.shuffle(k, m))
        )),
        law!("1||L=L", |o, s, l, k, m| Equal(o.shuffle(&o.one(s), l), l.clone())),
    ]
}

impl Law {
    pub fn obligation(&self, ops: &dyn LangOps, s: &Alphabet, operands: &[Regex; 3]) -> Obligation {
        let langs = operands.clone().map(|r| denote_with(ops, &r, s));
        (self.build)(ops, s, &langs)
    }

    /// `None` if the instance is vacuous, otherwise the check's verdict.
    pub fn check(&self, ops: &dyn LangOps, s: &Alphabet, operands: &[Regex; 3], depth: usize) -> Option<Verdict<()>> {
        match self.obligation(ops, s, operands) {
            Obligation::Equal(l, k) => Some(bisim_bounded(&l, &k, depth)),
            Obligation::Leq(l, k) => Some(sim_bounded(&l, &k, depth)),
            Obligation::Vacuous => None,
        }
    }

    /// For the conditional law on `M`, whether the instance satisfies
    /// `L + M·K ≤ M` up to `depth`. Other laws report `true`.
    pub fn premise_holds(&self, ops: &dyn LangOps, s: &Alphabet, operands: &[Regex; 3], depth: usize) -> bool {
        if self.name != "L+M.K<=M => L.K*<=M" {
            return true;
        }
        let [l, k, x] = operands.clone().map(|r| denote_with(ops, &r, s));
        let m = ops.concat(&ops.plus(&l, &x), &ops.star(&k));
        sim_bounded(&ops.plus(&l, &ops.concat(&m, &k)), &m, depth).holds()
    }
}

#[derive(Clone, Debug)]
pub struct BatteryConfig {
    pub seed: u64,
    pub trials: usize,
    pub depth: usize,
    pub gen: GenConfig,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig { seed: 0x5eed, trials: 100, depth: 5, gen: GenConfig::default() }
    }
}

#[derive(Clone, Debug)]
pub struct Failure {
    /// Shrunk operands, in text syntax.
    pub operands: [String; 3],
    pub witness: Counterexample,
}

#[derive(Clone, Debug)]
pub struct LawReport {
    pub name: &'static str,
    pub trials: usize,
    pub passed: usize,
    pub vacuous: usize,
    pub failure: Option<Failure>,
}

#[derive(Clone, Debug)]
pub struct BatteryReport {
    pub laws: Vec<LawReport>,
}

impl BatteryReport {
    pub fn failures(&self) -> usize {
        self.laws.iter().filter(|l| l.failure.is_some()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }
}

/// Runs every law on `cfg.trials` random operand triples. Each law draws from
/// its own stream derived from the seed, and stops at its first failure,
/// which is shrunk before being reported.
pub fn run_battery(ops: &dyn LangOps, s: &Alphabet, cfg: &BatteryConfig) -> BatteryReport {
    let laws = laws()
        .iter()
        .enumerate()
        .map(|(i, law)| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add((i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)));
            let mut report = LawReport { name: law.name, trials: 0, passed: 0, vacuous: 0, failure: None };
            for _ in 0..cfg.trials {
                let operands: [Regex; 3] = std::array::from_fn(|_| random_regex(&mut rng, s, &cfg.gen));
                report.trials += 1;
                match law.check(ops, s, &operands, cfg.depth) {
                    None => report.vacuous += 1,
                    Some(Verdict::Holds(())) => report.passed += 1,
                    Some(Verdict::Refuted(_)) => {
                        report.failure = Some(shrink(law, ops, s, operands, cfg.depth));
                        break;
                    }
                }
            }
            report
        })
        .collect();
    BatteryReport { laws }
}

fn shrink(law: &Law, ops: &dyn LangOps, s: &Alphabet, mut operands: [Regex; 3], depth: usize) -> Failure {
    let fails = |o: &[Regex; 3]| matches!(law.check(ops, s, o, depth), Some(Verdict::Refuted(_)));
    'outer: loop {
        for i in 0..3 {
            for cand in shrink_candidates(&operands[i], s) {
                let mut trial = operands.clone();
                trial[i] = cand;
                if fails(&trial) {
                    operands = trial;
                    continue 'outer;
                }
            }
        }
        break;
    }
    let Some(Verdict::Refuted(witness)) = law.check(ops, s, &operands, depth) else {
        unreachable!("shrinking only keeps failing instances")
    };
    Failure { operands: operands.map(|r| r.display(s).to_string()), witness }
}
