//! Empirical verification suites (in progress).
