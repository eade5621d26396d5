//! Benchmarks for the core calculus live under `benches/`.
