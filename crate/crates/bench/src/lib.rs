//! Benchmark harness package; the measurements live in `benches/`.
//! Run with `cargo bench -p cergen-bench`.
