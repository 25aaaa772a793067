//! Acceptance checks (in progress).
