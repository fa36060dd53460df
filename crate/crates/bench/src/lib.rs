//! Criterion benchmarks for the operator engine, the Lie-table checks, the
//! integrator and the verification suites. See `benches/engine.rs`.
