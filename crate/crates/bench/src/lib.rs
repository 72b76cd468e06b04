//! Criterion benchmarks for the hot kernels of `qdr-core`; see `benches/kernels.rs`.
