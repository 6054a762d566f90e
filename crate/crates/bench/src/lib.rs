//! Benchmarks for `poncelet-core`; see `benches/`.
