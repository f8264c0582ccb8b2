//! The N×N square, its checked line structure, and completeness.
//!
//! A "line" is any cell group whose sums are checked: the N rows, the N
//! columns, the two principal diagonals, and — when a block shape is given —
//! the N blocks of an exact tiling. Broken/pandiagonal lines are out of
//! scope: only the two principal diagonals are checked.

use crate::digitspace::{enumerate_entries, Alphabet, Entry};
use crate::error::{Error, Result};

/// An N×N arrangement of fixed-width entries over a declared alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    order: usize,
    alphabet: Alphabet,
    width: usize,
    /// Row-major cells, length order².
    cells: Vec<Entry>,
}

impl Grid {
    /// Validates and builds a grid from rows of entries. Every row must have
    /// `order` cells, every entry the declared width, and every digit must
    /// belong to the alphabet; violations name the offending cell.
    pub fn new(
        order: usize,
        alphabet: Alphabet,
        width: usize,
        rows: Vec<Vec<Entry>>,
    ) -> Result<Self> {
        if rows.len() != order {
            return Err(Error::RaggedRow {
                row: rows.len().min(order),
                found: rows.len(),
                expected: order,
            });
        }
        let mut cells = Vec::with_capacity(order * order);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != order {
                return Err(Error::RaggedRow {
                    row: r,
                    found: row.len(),
                    expected: order,
                });
            }
            for (c, entry) in row.into_iter().enumerate() {
                if entry.width() != width {
                    return Err(Error::CellWidthMismatch {
                        row: r,
                        col: c,
                        found: entry.width(),
                        expected: width,
                    });
                }
                if let Some(&digit) = entry.digits().iter().find(|&&d| !alphabet.contains(d)) {
                    return Err(Error::ForeignDigit { row: r, col: c, digit });
                }
                cells.push(entry);
            }
        }
        Ok(Grid {
            order,
            alphabet,
            width,
            cells,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// The entry at row `r`, column `c`.
    pub fn get(&self, r: usize, c: usize) -> Entry {
        self.cells[r * self.order + c]
    }

    /// All entries in row-major order.
    pub fn entries(&self) -> &[Entry] {
        &self.cells
    }

    /// The cells of one row as a slice.
    pub fn row(&self, r: usize) -> &[Entry] {
        &self.cells[r * self.order..(r + 1) * self.order]
    }
}

/// The kinds of checked lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineKind {
    Rows,
    Columns,
    MainDiagonal,
    AntiDiagonal,
    Blocks,
}

impl LineKind {
    pub fn name(self) -> &'static str {
        match self {
            LineKind::Rows => "row",
            LineKind::Columns => "column",
            LineKind::MainDiagonal => "main-diagonal",
            LineKind::AntiDiagonal => "anti-diagonal",
            LineKind::Blocks => "block",
        }
    }
}

/// An indexed family of same-kind cell groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSet {
    pub kind: LineKind,
    /// Each group is a list of (row, col) coordinates.
    pub groups: Vec<Vec<(usize, usize)>>,
}

/// A block tiling shape: `rows` × `cols` cells per block, with
/// `rows · cols = N` so each block holds exactly one line's worth of cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockShape {
    pub rows: usize,
    pub cols: usize,
}

impl BlockShape {
    /// Validates a block shape against an order: the blocks must hold N
    /// cells each and tile the square exactly.
    pub fn new(order: usize, rows: usize, cols: usize) -> Result<Self> {
        let valid = rows > 0
            && cols > 0
            && rows * cols == order
            && order.is_multiple_of(rows)
            && order.is_multiple_of(cols);
        if !valid {
            return Err(Error::InvalidBlockShape { order, rows, cols });
        }
        Ok(BlockShape { rows, cols })
    }

    /// The first-class tilings: 2×4 for order 8, 4×4 for order 16, 3×3 for
    /// order 9. Other orders have no default.
    pub fn default_for(order: usize) -> Option<Self> {
        match order {
            8 => Some(BlockShape { rows: 2, cols: 4 }),
            16 => Some(BlockShape { rows: 4, cols: 4 }),
            9 => Some(BlockShape { rows: 3, cols: 3 }),
            _ => None,
        }
    }
}

impl std::fmt::Display for BlockShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// Builds the checked line structure for an order: rows, columns, the two
/// principal diagonals, and — when a block shape is supplied — the block
/// tiling, laid out row-major (blocks left-to-right then top-to-bottom,
/// cells row-major within each block).
pub fn line_sets(order: usize, block: Option<BlockShape>) -> Vec<LineSet> {
    let mut sets = Vec::with_capacity(5);
    sets.push(LineSet {
        kind: LineKind::Rows,
        groups: (0..order)
            .map(|r| (0..order).map(|c| (r, c)).collect())
            .collect(),
    });
    sets.push(LineSet {
        kind: LineKind::Columns,
        groups: (0..order)
            .map(|c| (0..order).map(|r| (r, c)).collect())
            .collect(),
    });
    sets.push(LineSet {
        kind: LineKind::MainDiagonal,
        groups: vec![(0..order).map(|i| (i, i)).collect()],
    });
    sets.push(LineSet {
        kind: LineKind::AntiDiagonal,
        groups: vec![(0..order).map(|i| (i, order - 1 - i)).collect()],
    });
    if let Some(shape) = block {
        let mut groups = Vec::with_capacity(order);
        for band in (0..order).step_by(shape.rows) {
            for left in (0..order).step_by(shape.cols) {
                let mut cells = Vec::with_capacity(order);
                for dr in 0..shape.rows {
                    for dc in 0..shape.cols {
                        cells.push((band + dr, left + dc));
                    }
                }
                groups.push(cells);
            }
        }
        sets.push(LineSet {
            kind: LineKind::Blocks,
            groups,
        });
    }
    sets
}

/// Outcome of a completeness check: whether the grid's entries are exactly
/// the complete digit-string set, with the discrepancies when not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completeness {
    pub complete: bool,
    /// Entries of the complete set absent from the grid, ascending.
    pub missing: Vec<Entry>,
    /// Entries appearing more than once, ascending, one record per extra
    /// occurrence.
    pub duplicates: Vec<Entry>,
}

/// Tests whether the grid holds every fixed-width string over its alphabet
/// exactly once. Purely a multiset comparison, so any cell permutation gives
/// the same outcome.
pub fn completeness_check(grid: &Grid) -> Completeness {
    let expected = enumerate_entries(grid.alphabet(), grid.width())
        .expect("grid invariants guarantee a valid alphabet and width");
    let mut present = grid.entries().to_vec();
    present.sort();
    let mut missing = Vec::new();
    let mut duplicates = Vec::new();
    let mut i = 0;
    for &want in &expected {
        let mut count = 0;
        while i < present.len() && present[i] == want {
            count += 1;
            i += 1;
        }
        if count == 0 {
            missing.push(want);
        }
        for _ in 1..count.max(1) {
            duplicates.push(want);
        }
    }
    // Entries outside the enumerated set cannot occur: grid construction
    // restricts digits to the alphabet and widths are uniform.
    let complete = missing.is_empty() && duplicates.is_empty() && present.len() == expected.len();
    Completeness {
        complete,
        missing,
        duplicates,
    }
}
