//! Benchmarks for the state-sum evaluators live under `benches/`.
