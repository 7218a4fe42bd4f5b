//! Criterion benchmarks for `jetsym-core`; see `benches/engine.rs`.
