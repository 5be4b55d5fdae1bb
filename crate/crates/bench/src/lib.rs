//! Benchmarks for the exact algebra engine live under `benches/`.
