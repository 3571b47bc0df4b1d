//! Holds the acceptance target (`tests/acceptance.rs`). It lives in its own
//! package so that `cargo test --workspace` runs it after every other
//! target.
