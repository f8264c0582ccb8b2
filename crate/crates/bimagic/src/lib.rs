//! Universal bimagic squares built from complete sets of digit strings.
//!
//! A square of order N is filled with the *complete* set of N² fixed-width
//! strings over a digit alphabet — every binary string of width 6 for
//! order 8, width 8 for order 16, every ternary string of width 4 for
//! order 9 — each used exactly once and read as a decimal number. The
//! squares constructed here make every row, column, principal diagonal,
//! and block of a tiling agree on the sum S1 of those numbers *and* on the
//! sum S2 of their squares, and they stay that way under two digit-wise
//! transforms:
//!
//! * 180° rotation, where each cell travels to the opposite position and
//!   its digits, read upside down, map 0↔0, 1↔1, 2↔2, 5↔5, 6↔9, 8↔8;
//! * mirroring, where each cell reflects across the vertical axis and its
//!   digits map 0↔0, 1↔1, 8↔8, 2↔5.
//!
//! Both transforms reverse the digit order of every entry. The binary
//! squares are fixed by either map digit-wise; the ternary square maps to
//! a square over {0, 1, 5} with its own constants.
//!
//! Module map:
//!
//! * [`digitspace`] — alphabets, fixed-width entries, complete-set sums,
//!   and the published constants with their erratum status;
//! * [`grid`] — the square itself, line families, block tilings, and the
//!   completeness check;
//! * [`transform`] — the rotation and mirror digit maps and whole-grid
//!   transforms;
//! * [`verify`] — property checks from plain line sums up to the full
//!   universality report;
//! * [`construct`] — the seeded search for linear digit functionals and
//!   grid assembly;
//! * [`oracle`] — exhaustive small-order search used to certify
//!   feasibility and infeasibility claims;
//! * [`error`] — the crate-wide error type.

pub mod construct;
pub mod digitspace;
pub mod error;
pub mod grid;
pub mod oracle;
pub mod transform;
pub mod verify;

pub use construct::{
    assemble_grid, closed_form_targets_crosscheck, generate, generate_with, search_functionals,
    search_functionals_with, DigitFunctionalSystem, LinearForm, TargetsCrosscheck, NODE_BUDGET,
    RESTARTS,
};
pub use digitspace::{
    compare_published, enumerate_entries, published_constants, sum_targets, Alphabet, Entry,
    ErratumRecord, PublishedConstants, SumTargets, MAX_WIDTH,
};
pub use error::{Error, Result};
pub use grid::{completeness_check, line_sets, BlockShape, Completeness, Grid, LineKind, LineSet};
pub use oracle::{
    oracle_search, OracleOutcome, OracleProperty, DEFAULT_ORACLE_BUDGET, MAX_ORACLE_ORDER,
};
pub use transform::{mirror, rotate180, transform_entry, DigitMap, TransformKind, TransformedGrid};
pub use verify::{
    check_bimagic, check_digit_balance, check_magic, check_pair_uniformity, check_universal,
    full_report, ImageDetail, ImageReport, LineRef, PropertyReport, Subject, Verdict,
    VerificationReport, Violation,
};
