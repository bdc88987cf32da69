//! Criterion benchmarks for `cotrie`; see `benches/tries.rs`.
