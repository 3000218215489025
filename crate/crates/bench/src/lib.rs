//! Criterion benchmarks for biphoton-core live in `benches/`.
