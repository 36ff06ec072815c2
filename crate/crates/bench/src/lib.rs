//! Benchmark harness crate; the measurements live under `benches/`.
