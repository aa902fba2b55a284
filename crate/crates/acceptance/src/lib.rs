//! Acceptance suite for the toolkit. The library is empty; the criteria
//! live in `tests/acceptance.rs` and print one pass/fail line each (visible
//! with `cargo test -p acceptance -- --nocapture`).
