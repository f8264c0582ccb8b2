//! Small-order exhaustive search, used to certify feasibility claims.
//!
//! The constructive search only ever exhibits squares; it cannot show that
//! a property has *no* arrangement at a given shape. For orders small
//! enough to enumerate (≤ 4), this module walks every placement of the
//! complete digit-string set into the grid, cell by cell in row-major
//! order with entries tried in ascending value order, and either produces
//! the arrangements satisfying a property or proves there are none. The
//! ascending order makes the first reported solution the lexicographically
//! least one, which pins the output for regression tests.
//!
//! Pruning is the classical partial-sum bound: every entry is nonnegative,
//! so once a candidate overflows its row, column, or diagonal budget, all
//! larger candidates do too and the remainder of the candidate list is
//! skipped. Completed lines are checked exactly the moment their last cell
//! is placed.

use crate::digitspace::{enumerate_entries, sum_targets, Alphabet, Entry, SumTargets};
use crate::error::{Error, Result};
use crate::grid::Grid;

/// Largest order the oracle will exhaust. 4×4 means 16! cell orders in the
/// worst case, which pruning cuts to well under a million visits for the
/// properties of interest.
pub const MAX_ORACLE_ORDER: usize = 4;

/// Default node budget; a visit is one accepted cell placement.
pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000_000;

/// How many solutions are retained in full; the count keeps running.
pub const KEPT_SOLUTIONS: usize = 64;

/// What the oracle is asked to decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleProperty {
    /// Any arrangement of the complete set (a sanity baseline: always
    /// satisfiable, counts permutations).
    Completeness,
    /// Rows, columns, and both diagonals all reach S1.
    Magic,
    /// Magic, and the same lines also reach S2.
    Bimagic,
}

impl OracleProperty {
    pub fn name(&self) -> &'static str {
        match self {
            OracleProperty::Completeness => "completeness",
            OracleProperty::Magic => "magic",
            OracleProperty::Bimagic => "bimagic",
        }
    }
}

/// The oracle's verdict for one (order, alphabet, width, property) shape.
#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub order: usize,
    pub property: OracleProperty,
    /// Forced constants, when the property concerns sums and they exist.
    pub targets: Option<SumTargets>,
    /// Up to [`KEPT_SOLUTIONS`] witnesses, lexicographically least first.
    pub solutions: Vec<Grid>,
    /// Total arrangements found, including ones not retained.
    pub total_found: u64,
    /// Accepted placements visited.
    pub nodes: u64,
    /// True when the search space was fully explored within budget; only
    /// then does an empty result prove infeasibility.
    pub exhaustive: bool,
    /// Human-readable remark (early infeasibility, budget exhaustion).
    pub note: Option<String>,
}

struct OracleState<'a> {
    n: usize,
    entries: &'a [Entry],
    values: Vec<u64>,
    property: OracleProperty,
    s1: u64,
    s2: u128,
    used: Vec<bool>,
    cells: Vec<usize>,
    row_sum: Vec<u64>,
    col_sum: Vec<u64>,
    diag_sum: u64,
    anti_sum: u64,
    row_sq: Vec<u128>,
    col_sq: Vec<u128>,
    diag_sq: u128,
    anti_sq: u128,
    budget: u64,
    nodes: u64,
    truncated: bool,
    total_found: u64,
    kept: Vec<Vec<usize>>,
}

impl<'a> OracleState<'a> {
    fn checks_sums(&self) -> bool {
        !matches!(self.property, OracleProperty::Completeness)
    }

    fn checks_squares(&self) -> bool {
        matches!(self.property, OracleProperty::Bimagic)
    }

    fn search(&mut self, index: usize) {
        let n = self.n;
        if index == n * n {
            self.total_found += 1;
            if self.kept.len() < KEPT_SOLUTIONS {
                self.kept.push(self.cells.clone());
            }
            return;
        }
        let (r, c) = (index / n, index % n);
        let on_diag = r == c;
        let on_anti = r + c == n - 1;
        for e in 0..self.entries.len() {
            if self.used[e] {
                continue;
            }
            let v = self.values[e];
            let sq = u128::from(v) * u128::from(v);
            if self.checks_sums() {
                // Entries ascend, so the first overflow ends the loop.
                if self.row_sum[r] + v > self.s1 || self.col_sum[c] + v > self.s1 {
                    break;
                }
                if on_diag && self.diag_sum + v > self.s1 {
                    break;
                }
                if on_anti && self.anti_sum + v > self.s1 {
                    break;
                }
                if self.checks_squares() {
                    if self.row_sq[r] + sq > self.s2 || self.col_sq[c] + sq > self.s2 {
                        break;
                    }
                    if on_diag && self.diag_sq + sq > self.s2 {
                        break;
                    }
                    if on_anti && self.anti_sq + sq > self.s2 {
                        break;
                    }
                }
                // Exact checks for every line this placement completes.
                if c == n - 1 && self.row_sum[r] + v != self.s1 {
                    continue;
                }
                if r == n - 1 && self.col_sum[c] + v != self.s1 {
                    continue;
                }
                if on_diag && r == n - 1 && self.diag_sum + v != self.s1 {
                    continue;
                }
                if on_anti && c == 0 && self.anti_sum + v != self.s1 {
                    continue;
                }
                if self.checks_squares() {
                    if c == n - 1 && self.row_sq[r] + sq != self.s2 {
                        continue;
                    }
                    if r == n - 1 && self.col_sq[c] + sq != self.s2 {
                        continue;
                    }
                    if on_diag && r == n - 1 && self.diag_sq + sq != self.s2 {
                        continue;
                    }
                    if on_anti && c == 0 && self.anti_sq + sq != self.s2 {
                        continue;
                    }
                }
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.truncated = true;
                return;
            }
            self.used[e] = true;
            self.cells.push(e);
            self.row_sum[r] += v;
            self.col_sum[c] += v;
            self.row_sq[r] += sq;
            self.col_sq[c] += sq;
            if on_diag {
                self.diag_sum += v;
                self.diag_sq += sq;
            }
            if on_anti {
                self.anti_sum += v;
                self.anti_sq += sq;
            }
            self.search(index + 1);
            self.used[e] = false;
            self.cells.pop();
            self.row_sum[r] -= v;
            self.col_sum[c] -= v;
            self.row_sq[r] -= sq;
            self.col_sq[c] -= sq;
            if on_diag {
                self.diag_sum -= v;
                self.diag_sq -= sq;
            }
            if on_anti {
                self.anti_sum -= v;
                self.anti_sq -= sq;
            }
            if self.truncated {
                return;
            }
        }
    }
}

/// Exhausts arrangements of the complete (alphabet, width) set on an
/// order-n grid, deciding the property. An `Ok` outcome with no solutions
/// and `exhaustive: true` is a proof of infeasibility for that shape.
pub fn oracle_search(
    order: usize,
    alphabet: &Alphabet,
    width: usize,
    property: OracleProperty,
    budget: u64,
) -> Result<OracleOutcome> {
    if order == 0 || order > MAX_ORACLE_ORDER {
        return Err(Error::OracleOrderTooLarge { order });
    }
    let entries = enumerate_entries(alphabet, width)?;
    if entries.len() != order * order {
        return Err(Error::ShapeMismatch {
            set_size: entries.len(),
            order,
        });
    }
    let (targets, note) = if matches!(property, OracleProperty::Completeness) {
        (None, None)
    } else {
        match sum_targets(alphabet, width, order) {
            Ok(t) => (Some(t), None),
            Err(Error::IndivisibleSum { sum, order }) => {
                // No arrangement can equalize lines whose total does not
                // divide evenly; that is already a proof.
                let note = format!(
                    "infeasible without search: complete-set sum {sum} is not divisible by order {order}"
                );
                return Ok(OracleOutcome {
                    order,
                    property,
                    targets: None,
                    solutions: Vec::new(),
                    total_found: 0,
                    nodes: 0,
                    exhaustive: true,
                    note: Some(note),
                });
            }
            Err(e) => return Err(e),
        }
    };
    let values: Vec<u64> = entries.iter().map(|e| e.value()).collect();
    let (s1, s2) = targets
        .as_ref()
        .map(|t| (t.s1, t.s2))
        .unwrap_or((u64::MAX, u128::MAX));
    let mut state = OracleState {
        n: order,
        entries: &entries,
        values,
        property,
        s1,
        s2,
        used: vec![false; entries.len()],
        cells: Vec::with_capacity(entries.len()),
        row_sum: vec![0; order],
        col_sum: vec![0; order],
        diag_sum: 0,
        anti_sum: 0,
        row_sq: vec![0; order],
        col_sq: vec![0; order],
        diag_sq: 0,
        anti_sq: 0,
        budget,
        nodes: 0,
        truncated: false,
        total_found: 0,
        kept: Vec::new(),
    };
    state.search(0);
    let solutions: Result<Vec<Grid>> = state
        .kept
        .iter()
        .map(|cells| {
            let rows: Vec<Vec<Entry>> = (0..order)
                .map(|r| {
                    (0..order)
                        .map(|c| entries[cells[r * order + c]])
                        .collect()
                })
                .collect();
            Grid::new(order, alphabet.clone(), width, rows)
        })
        .collect();
    let exhaustive = !state.truncated;
    let note = if state.truncated {
        Some(format!(
            "budget of {budget} nodes exhausted; the search was cut short and absence of solutions proves nothing"
        ))
    } else {
        note
    };
    Ok(OracleOutcome {
        order,
        property,
        targets,
        solutions: solutions?,
        total_found: state.total_found,
        nodes: state.nodes,
        exhaustive,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{completeness_check, line_sets};
    use crate::verify::{check_magic, Verdict};

    fn grid_strings(grid: &Grid) -> Vec<Vec<String>> {
        (0..grid.order())
            .map(|r| grid.row(r).iter().map(|e| e.to_string()).collect())
            .collect()
    }

    #[test]
    fn ternary_3x3_magic_squares_are_exactly_eight() {
        let outcome = oracle_search(
            3,
            &Alphabet::ternary(),
            2,
            OracleProperty::Magic,
            DEFAULT_ORACLE_BUDGET,
        )
        .unwrap();
        assert!(outcome.exhaustive);
        assert_eq!(outcome.total_found, 8);
        assert_eq!(outcome.solutions.len(), 8);
        assert_eq!(outcome.targets.unwrap().s1, 33);
        assert_eq!(
            grid_strings(&outcome.solutions[0]),
            vec![
                vec!["01", "20", "12"],
                vec!["22", "11", "00"],
                vec!["10", "02", "21"],
            ],
            "lexicographically least solution is pinned"
        );
    }

    #[test]
    fn oracle_magic_witnesses_satisfy_the_verifier() {
        let outcome = oracle_search(
            3,
            &Alphabet::ternary(),
            2,
            OracleProperty::Magic,
            DEFAULT_ORACLE_BUDGET,
        )
        .unwrap();
        let sets = line_sets(3, None);
        for grid in &outcome.solutions {
            assert!(completeness_check(grid).complete);
            let magic = check_magic(grid, &sets);
            assert_eq!(magic.verdict, Verdict::True);
            assert_eq!(magic.constant, Some(33));
        }
    }

    #[test]
    fn ternary_3x3_bimagic_is_infeasible() {
        let outcome = oracle_search(
            3,
            &Alphabet::ternary(),
            2,
            OracleProperty::Bimagic,
            DEFAULT_ORACLE_BUDGET,
        )
        .unwrap();
        assert!(outcome.exhaustive, "proof requires full exploration");
        assert_eq!(outcome.total_found, 0);
        let targets = outcome.targets.unwrap();
        assert_eq!(targets.s1, 33);
        assert_eq!(targets.s2, 565);
    }

    #[test]
    fn binary_2x2_magic_is_infeasible() {
        let outcome = oracle_search(
            2,
            &Alphabet::binary(),
            2,
            OracleProperty::Magic,
            DEFAULT_ORACLE_BUDGET,
        )
        .unwrap();
        assert!(outcome.exhaustive);
        assert_eq!(outcome.total_found, 0);
        assert_eq!(outcome.targets.unwrap().s1, 11);
    }

    #[test]
    fn binary_2x2_completeness_counts_all_arrangements() {
        let outcome = oracle_search(
            2,
            &Alphabet::binary(),
            2,
            OracleProperty::Completeness,
            DEFAULT_ORACLE_BUDGET,
        )
        .unwrap();
        assert!(outcome.exhaustive);
        assert_eq!(outcome.total_found, 24, "4! placements of four strings");
        assert_eq!(outcome.solutions.len(), 24);
        assert!(outcome.targets.is_none());
        for grid in &outcome.solutions {
            assert!(completeness_check(grid).complete);
        }
    }

    #[test]
    fn binary_4x4_bimagic_is_infeasible() {
        let outcome = oracle_search(
            4,
            &Alphabet::binary(),
            4,
            OracleProperty::Bimagic,
            DEFAULT_ORACLE_BUDGET,
        )
        .unwrap();
        assert!(outcome.exhaustive);
        assert_eq!(outcome.total_found, 0);
        let targets = outcome.targets.unwrap();
        assert_eq!(targets.s1, 2222);
        assert_eq!(targets.s2, 2244422);
    }

    #[test]
    fn oversized_orders_are_refused() {
        let err = oracle_search(
            5,
            &Alphabet::binary(),
            2,
            OracleProperty::Magic,
            DEFAULT_ORACLE_BUDGET,
        )
        .unwrap_err();
        assert_eq!(err, Error::OracleOrderTooLarge { order: 5 });
    }

    #[test]
    fn mismatched_shapes_are_refused() {
        let err = oracle_search(
            3,
            &Alphabet::binary(),
            2,
            OracleProperty::Magic,
            DEFAULT_ORACLE_BUDGET,
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::ShapeMismatch {
                set_size: 4,
                order: 3
            }
        );
    }

    #[test]
    fn tiny_budgets_yield_inconclusive_outcomes() {
        let outcome = oracle_search(
            4,
            &Alphabet::binary(),
            4,
            OracleProperty::Bimagic,
            10,
        )
        .unwrap();
        assert!(!outcome.exhaustive);
        assert!(outcome.note.unwrap().contains("budget"));
    }
}
