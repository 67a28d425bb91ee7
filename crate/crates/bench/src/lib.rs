//! Benchmarks for `radix-select-core` live in `benches/`.
