//! Workspace-level acceptance checks; see `tests/acceptance.rs`.
