//! Criterion benchmarks for the binmat kernels live in `benches/`.
