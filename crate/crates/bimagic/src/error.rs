//! Error types shared across the library.

use thiserror::Error;

/// Everything that can go wrong while building, transforming, or searching
/// for squares. Verification never fails with an `Error`: a grid that merely
/// lacks a property yields a report, not an error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An alphabet must contain at least one digit.
    #[error("alphabet is empty")]
    EmptyAlphabet,

    /// Alphabet digits are decimal digits.
    #[error("digit {digit} is not a decimal digit (0-9)")]
    NonDecimalDigit { digit: u8 },

    /// Alphabet digits must be pairwise distinct.
    #[error("digit {digit} appears more than once in the alphabet")]
    DuplicateDigit { digit: u8 },

    /// Entry widths are positive.
    #[error("entry width must be at least 1")]
    WidthZero,

    /// Entry widths are bounded so values fit exact 64-bit arithmetic.
    #[error("entry width {width} exceeds the supported maximum of {max}")]
    WidthTooLarge { width: usize, max: usize },

    /// The complete digit-string set must tile an order×order square.
    #[error("complete set of {set_size} entries does not fill a {order}×{order} square")]
    ShapeMismatch { set_size: usize, order: usize },

    /// The complete-set sum is not divisible by the order, so no magic
    /// arrangement of the set can exist and no target constant is defined.
    #[error("complete-set sum {sum} is not divisible by order {order}; no line constant exists")]
    IndivisibleSum { sum: u128, order: usize },

    /// Grid rows must all have exactly `order` cells.
    #[error("row {row} has {found} cells, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },

    /// Every cell entry must have the grid's declared width.
    #[error("cell ({row},{col}) has width {found}, expected {expected}")]
    CellWidthMismatch {
        row: usize,
        col: usize,
        found: usize,
        expected: usize,
    },

    /// Every cell digit must belong to the grid's declared alphabet.
    #[error("cell ({row},{col}) contains digit {digit}, which is outside the alphabet")]
    ForeignDigit { row: usize, col: usize, digit: u8 },

    /// Block shapes must tile the grid exactly.
    #[error("block shape {rows}×{cols} does not tile an order-{order} square")]
    InvalidBlockShape {
        order: usize,
        rows: usize,
        cols: usize,
    },

    /// A digit with no printed form under the requested transform.
    #[error("digit {digit} at position {position} has no image under the {transform} map")]
    UnmappableDigit {
        digit: u8,
        position: usize,
        transform: &'static str,
    },

    /// Grid-level wrapper for `UnmappableDigit`, naming the offending cell.
    #[error("cell ({row},{col}): digit {digit} has no image under the {transform} map")]
    UnmappableCell {
        row: usize,
        col: usize,
        digit: u8,
        transform: &'static str,
    },

    /// Construction is implemented for the three first-class orders only.
    #[error("order {order} is not supported for construction (supported: 8, 9, 16)")]
    UnsupportedOrder { order: usize },

    /// The functional search ran out of its node budget on every restart.
    #[error(
        "search for an order-{order} system exhausted its budget \
         ({restarts} restarts × {budget} nodes) without success"
    )]
    SearchExhausted {
        order: usize,
        budget: u64,
        restarts: u32,
    },

    /// Exhaustive oracle runs are only meaningful at desk scale.
    #[error("order {order} is too large for the exhaustive oracle (maximum 4)")]
    OracleOrderTooLarge { order: usize },

    /// The two independent target computations disagreed; indicates a bug,
    /// never a property of the input.
    #[error(
        "internal cross-check failure for order {order}: brute-force {brute} vs formula {formula}"
    )]
    CrosscheckMismatch {
        order: usize,
        brute: u128,
        formula: u128,
    },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
