use std::fmt;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cotrie::laws::{run_battery, BatteryConfig, StandardOps};
use cotrie::{
    bisim_bounded, equiv_regex, leq_regex, parse_regex, sim_bounded, Alphabet, BisimCertificate, DerivativeAutomaton,
    EquivError, Grammar, Lang, Verdict, Word, DEFAULT_PAIR_CAP,
};

/// Languages as lazy infinite tries: matching, enumeration, equivalence.
#[derive(Parser, Debug)]
#[command(name = "cotrie", version)]
struct Cli {
    /// Alphabet, one character per letter.
    #[arg(long, global = true)]
    alphabet: Option<String>,

    /// Depth for bounded checks (default 6; the axiom battery defaults to 5).
    #[arg(long, global = true)]
    depth: Option<usize>,

    /// Maximum number of derivative pairs the exact checker may explore.
    #[arg(long, global = true, default_value_t = DEFAULT_PAIR_CAP)]
    cap: usize,

    /// Seed for the axiom battery.
    #[arg(long, global = true, default_value_t = BatteryConfig::default().seed)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    JsonLines,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Regex,
    Grammar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Bounded,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a word is in the language.
    Match {
        kind: Kind,
        /// Regex text, or a grammar file (inline grammar text also works).
        spec: String,
        /// The word; "" is the empty word.
        word: String,
    },
    /// List every word up to a length, in shortlex order.
    Enum { kind: Kind, spec: String, maxlen: usize },
    /// Compare two regular expressions.
    Equiv {
        r: String,
        s: String,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Check inclusion of the first in the second instead of equality.
        #[arg(long)]
        leq: bool,
        /// Also print the certificate of an exact verdict.
        #[arg(long)]
        certificate: bool,
    },
    /// Run the randomized Kleene algebra battery.
    Axioms {
        #[arg(long, default_value_t = BatteryConfig::default().trials)]
        trials: usize,
    },
    /// Print the derivative automaton of an expression in Graphviz format.
    Dot { r: String },
}

struct InputError(String);

impl<E: fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Ctx {
    alphabet: Option<Alphabet>,
    format: Format,
}

impl Ctx {
    fn alphabet(&self) -> Alphabet {
        self.alphabet.clone().unwrap_or_else(|| Alphabet::from_chars("ab").expect("nonempty"))
    }

    fn json(&self, kind: &str, input: serde_json::Value, verdict: &str, witness: Option<String>) {
        println!("{}", json!({ "kind": kind, "input": input, "verdict": verdict, "witness": witness }));
    }
}

fn load_lang(ctx: &Ctx, kind: Kind, spec: &str) -> Result<(Lang, Alphabet), InputError> {
    match kind {
        Kind::Regex => {
            let sigma = ctx.alphabet();
            let r = parse_regex(spec, &sigma)?;
            Ok((r.denote(&sigma), sigma))
        }
        Kind::Grammar => {
            let text = if Path::new(spec).is_file() {
                fs::read_to_string(spec).map_err(|e| InputError(format!("{spec}: {e}")))?
            } else if spec.contains("->") {
                spec.to_string()
            } else {
                return Err(InputError(format!("{spec}: no such grammar file")));
            };
            let g = Grammar::parse(&text, ctx.alphabet.as_ref())?;
            let sigma = g.terminals().clone();
            Ok((g.lang()?, sigma))
        }
    }
}

fn show(w: &Word, sigma: &Alphabet) -> String {
    w.display(sigma).to_string()
}

fn cmd_match(ctx: &Ctx, kind: Kind, spec: &str, word: &str) -> Result<ExitCode, InputError> {
    let (lang, sigma) = load_lang(ctx, kind, spec)?;
    let w = sigma.parse_word(word)?;
    let member = lang.member(&w);
    match ctx.format {
        Format::JsonLines => {
            ctx.json("match", json!({ "kind": kind_name(kind), "spec": spec, "word": word }), &member.to_string(), None)
        }
        _ => println!("{member}"),
    }
    Ok(ExitCode::from(if member { 0 } else { 1 }))
}

fn cmd_enum(ctx: &Ctx, kind: Kind, spec: &str, maxlen: usize) -> Result<ExitCode, InputError> {
    let (lang, sigma) = load_lang(ctx, kind, spec)?;
    for w in lang.out_bounded(maxlen).words() {
        let w = show(w, &sigma);
        match ctx.format {
            Format::JsonLines => ctx.json("enum", json!(spec), "member", Some(w)),
            _ => println!("{w}"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_equiv(
    ctx: &Ctx,
    (r_text, s_text): (&str, &str),
    mode: Mode,
    leq: bool,
    certificate: bool,
    depth: usize,
    cap: usize,
) -> Result<ExitCode, InputError> {
    let sigma = ctx.alphabet();
    let r = parse_regex(r_text, &sigma)?;
    let s = parse_regex(s_text, &sigma)?;
    let holds_word = if leq { "leq" } else { "equal" };
    let input = json!([r_text, s_text]);

    let (verdict, cert): (Verdict<()>, Option<BisimCertificate>) = match mode {
        Mode::Bounded => {
            let (l, k) = (r.denote(&sigma), s.denote(&sigma));
            let v = if leq { sim_bounded(&l, &k, depth) } else { bisim_bounded(&l, &k, depth) };
            (v, None)
        }
        Mode::Exact => {
            let result = if leq { leq_regex(&r, &s, &sigma, cap) } else { equiv_regex(&r, &s, &sigma, cap) };
            match result {
                Ok(Verdict::Holds(c)) => (Verdict::Holds(()), Some(c)),
                Ok(Verdict::Refuted(c)) => (Verdict::Refuted(c), None),
                Err(e @ EquivError::PairCapExceeded { .. }) => {
                    match ctx.format {
                        Format::JsonLines => ctx.json("equiv", input, "inconclusive", None),
                        _ => println!("inconclusive: {e}"),
                    }
                    return Ok(ExitCode::from(2));
                }
            }
        }
    };

    match (&verdict, ctx.format) {
        (Verdict::Holds(()), Format::JsonLines) => ctx.json("equiv", input, holds_word, None),
        (Verdict::Refuted(c), Format::JsonLines) => {
            ctx.json("equiv", input, "counterexample", Some(show(&c.word, &sigma)))
        }
        (Verdict::Holds(()), _) => {
            println!("{holds_word}");
            if let (true, Some(c)) = (certificate, &cert) {
                println!("certificate: {} pairs", c.len());
                print!("{}", c.render(&sigma));
            }
        }
        (Verdict::Refuted(c), _) => println!("counterexample: {}", show(&c.word, &sigma)),
    }
    Ok(ExitCode::from(if verdict.holds() { 0 } else { 1 }))
}

fn cmd_axioms(ctx: &Ctx, seed: u64, trials: usize, depth: Option<usize>) -> Result<ExitCode, InputError> {
    let sigma = ctx.alphabet();
    let defaults = BatteryConfig::default();
    let cfg = BatteryConfig { seed, trials, depth: depth.unwrap_or(defaults.depth), ..defaults };
    let report = run_battery(&StandardOps, &sigma, &cfg);
    for law in report.laws.iter().filter(|l| l.trials > 0) {
        let witness = law.failure.as_ref().map(|f| show(&f.witness.word, &sigma));
        match ctx.format {
            Format::JsonLines => println!(
                "{}",
                json!({
                    "kind": "axiom",
                    "input": law.name,
                    "verdict": if law.failure.is_some() { "counterexample" } else { "pass" },
                    "witness": witness,
                    "operands": law.failure.as_ref().map(|f| f.operands.to_vec()),
                    "trials": law.trials,
                    "passed": law.passed,
                    "vacuous": law.vacuous,
                })
            ),
            _ => {
                let mut line = format!("{}: {}/{} passed", law.name, law.passed, law.trials);
                if law.vacuous > 0 {
                    line.push_str(&format!(" ({} vacuous)", law.vacuous));
                }
                println!("{line}");
                if let Some(f) = &law.failure {
                    let [l, k, m] = &f.operands;
                    println!("  counterexample: {} with L = {l}, K = {k}, M = {m}", show(&f.witness.word, &sigma));
                }
            }
        }
    }
    if ctx.format != Format::JsonLines {
        println!("{} counterexamples", report.failures());
    }
    Ok(ExitCode::from(if report.all_passed() { 0 } else { 1 }))
}

fn cmd_dot(ctx: &Ctx, r_text: &str, cap: usize) -> Result<ExitCode, InputError> {
    let sigma = ctx.alphabet();
    let r = parse_regex(r_text, &sigma)?;
    let dfa = DerivativeAutomaton::build(&r, &sigma, cap)?;
    print!("{}", dfa.to_dot());
    Ok(ExitCode::SUCCESS)
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Regex => "regex",
        Kind::Grammar => "grammar",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let alphabet = match cli.alphabet.as_deref().map(Alphabet::from_chars).transpose() {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: --alphabet: {e}");
            return ExitCode::from(2);
        }
    };
    let ctx = Ctx { alphabet, format: cli.format };
    let depth = cli.depth.unwrap_or(6);
    let (result, input_error_code) = match &cli.command {
        Command::Match { kind, spec, word } => (cmd_match(&ctx, *kind, spec, word), 2),
        Command::Enum { kind, spec, maxlen } => (cmd_enum(&ctx, *kind, spec, *maxlen), 2),
        Command::Equiv { r, s, mode, leq, certificate } => {
            (cmd_equiv(&ctx, (r, s), *mode, *leq, *certificate, depth, cli.cap), 3)
        }
        Command::Axioms { trials } => (cmd_axioms(&ctx, cli.seed, *trials, cli.depth), 2),
        Command::Dot { r } => (cmd_dot(&ctx, r, cli.cap), 2),
    };
    result.unwrap_or_else(|InputError(msg)| {
        eprintln!("error: {msg}");
        ExitCode::from(input_error_code)
    })
}
