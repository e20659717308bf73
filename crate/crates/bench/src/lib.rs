//! Criterion benchmarks for rootmult; see `benches/engine.rs`.
