//! Criterion benchmarks for `sechain`. See `benches/`.
