use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cotrie::laws::{run_battery, BatteryConfig, StandardOps};
use cotrie::{bisim_bounded, equiv_regex, ops, parse_regex, Alphabet, Grammar, DEFAULT_PAIR_CAP};

fn ab() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

fn member(c: &mut Criterion) {
    let s = ab();
    let r = parse_regex("(a.(a+b))*.(b+a.b*)*", &s).unwrap();
    let mut group = c.benchmark_group("member");
    for len in [8usize, 32, 128] {
        let word = s.words_of_len(len).pop().unwrap();
        group.bench_with_input(BenchmarkId::new("fresh", len), &word, |b, w| {
            b.iter(|| r.denote(&s).member(black_box(w)))
        });
        let warm = r.denote(&s);
        group.bench_with_input(BenchmarkId::new("memoized", len), &word, |b, w| b.iter(|| warm.member(black_box(w))));
    }
    group.finish();
}

fn deferred_vs_direct(c: &mut Criterion) {
    let s = ab();
    let l = parse_regex("(a+b.a)*", &s).unwrap().denote(&s);
    let k = parse_regex("b*.a", &s).unwrap().denote(&s);
    let mut group = c.benchmark_group("concat_star");
    group.bench_function("deferred", |b| b.iter(|| ops::star(&ops::concat(&l, &k)).out_bounded(black_box(7)).len()));
    group.bench_function("direct", |b| {
        b.iter(|| ops::star_direct(&ops::concat_direct(&l, &k)).out_bounded(black_box(7)).len())
    });
    group.finish();
}

fn bisim(c: &mut Criterion) {
    let s = ab();
    let l = parse_regex("(a+b)*", &s).unwrap();
    let k = parse_regex("(a*.b*)*", &s).unwrap();
    let mut group = c.benchmark_group("bisim_bounded");
    for depth in [4usize, 6, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(depth), &depth, |b, &d| {
            b.iter(|| bisim_bounded(&l.denote(&s), &k.denote(&s), d).holds())
        });
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let s = ab();
    let pairs = [("(a+b)*", "(a*.b*)*"), ("a*", "1+a.a*"), ("(a.b+b)*.a", "a+(a.b+b).(a.b+b)*.a")];
    let mut group = c.benchmark_group("equiv_regex");
    for (r, q) in pairs {
        let (r, q) = (parse_regex(r, &s).unwrap(), parse_regex(q, &s).unwrap());
        group.bench_function(format!("{} = {}", r.display(&s), q.display(&s)), |b| {
            b.iter(|| equiv_regex(&r, &q, &s, DEFAULT_PAIR_CAP).unwrap().holds())
        });
    }
    group.finish();
}

fn grammar(c: &mut Criterion) {
    let g = Grammar::parse("S -> \"\" | a S b S", None).unwrap();
    c.bench_function("grammar_enum_10", |b| b.iter(|| g.lang().unwrap().out_bounded(black_box(10)).len()));
}

fn battery(c: &mut Criterion) {
    let s = ab();
    let cfg = BatteryConfig { trials: 5, ..BatteryConfig::default() };
    let mut group = c.benchmark_group("battery");
    group.sample_size(10);
    group.bench_function("5_trials", |b| b.iter(|| run_battery(&StandardOps, &s, &cfg).all_passed()));
    group.finish();
}

criterion_group!(benches, member, deferred_vs_direct, bisim, exact, grammar, battery);
criterion_main!(benches);
