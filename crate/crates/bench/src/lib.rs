//! Criterion benchmarks for `toa-core`; see `benches/`.
