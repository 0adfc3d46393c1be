//! Criterion benchmarks for the nfold construction engine; see `benches/`.
