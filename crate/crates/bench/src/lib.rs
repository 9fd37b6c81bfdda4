//! Criterion benchmarks for the partition engine live under `benches/`.
