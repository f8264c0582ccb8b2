//! Property checks and the aggregated verification report.
//!
//! Everything here is report-style: a grid that lacks a property yields a
//! `False` verdict with violation records, never an error. The two
//! structural properties — digit balance and pair uniformity — are stronger
//! than the sum properties they explain: a line whose digit positions each
//! carry every alphabet digit equally often has a forced sum, and one whose
//! position *pairs* are jointly uniform has a forced sum of squares. The
//! checks are still all computed independently; no implication is assumed.

use crate::digitspace::{compare_published, ErratumRecord, Alphabet, SumTargets};
use crate::grid::{line_sets, BlockShape, Completeness, Grid, LineKind, LineSet};
use crate::grid::completeness_check;
use crate::transform::{mirror, rotate180, TransformKind};

/// Three-valued outcome: a property can hold, fail, or make no sense for
/// the grid at hand (e.g. pair uniformity when |alphabet|² does not divide
/// the order, or universality when a digit has no image).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    NotApplicable,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::True
    }

    /// True unless the verdict is an outright failure.
    pub fn passes(self) -> bool {
        self != Verdict::False
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

/// Identifies one line group within the checked structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineRef {
    pub kind: LineKind,
    pub index: usize,
}

impl std::fmt::Display for LineRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.kind.name(), self.index)
    }
}

/// What a violation is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subject {
    /// Sum of entry values over the line.
    Sum,
    /// Sum of squared entry values over the line.
    SquareSum,
    /// Occurrences of `digit` at `position` within the line.
    DigitCount { position: usize, digit: u8 },
    /// Joint occurrences of `(digit_a, digit_b)` at `(position_a, position_b)`.
    PairCount {
        position_a: usize,
        position_b: usize,
        digit_a: u8,
        digit_b: u8,
    },
}

impl std::fmt::Display for Subject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Subject::Sum => write!(f, "sum"),
            Subject::SquareSum => write!(f, "sum of squares"),
            Subject::DigitCount { position, digit } => {
                write!(f, "count of digit {digit} at position {position}")
            }
            Subject::PairCount {
                position_a,
                position_b,
                digit_a,
                digit_b,
            } => write!(
                f,
                "count of pair ({digit_a},{digit_b}) at positions ({position_a},{position_b})"
            ),
        }
    }
}

/// One concrete discrepancy: which line, what was measured, what was
/// expected, what was observed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub line: LineRef,
    pub subject: Subject,
    pub expected: u128,
    pub observed: u128,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} expected {} observed {}",
            self.line, self.subject, self.expected, self.observed
        )
    }
}

/// Result of one property check. `constant` is the common value when the
/// property is a sum property and holds; `kind_constants` breaks the
/// observed common value down per line kind (None for a kind whose groups
/// disagree internally). Every `False` verdict carries at least one
/// violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub verdict: Verdict,
    pub constant: Option<u128>,
    pub kind_constants: Vec<(LineKind, Option<u128>)>,
    pub violations: Vec<Violation>,
    /// Present only for `NotApplicable`, saying why.
    pub note: Option<String>,
}

impl PropertyReport {
    fn not_applicable(note: String) -> Self {
        PropertyReport {
            verdict: Verdict::NotApplicable,
            constant: None,
            kind_constants: Vec::new(),
            violations: Vec::new(),
            note: Some(note),
        }
    }
}

/// The sum of every group, with the most common value used as the expected
/// constant (ties broken toward the smallest). Reporting deviations from the
/// mode shows both sums when a grid has, say, two distinct row sums.
fn check_sums(
    grid: &Grid,
    lines: &[LineSet],
    square: bool,
) -> PropertyReport {
    let subject = if square { Subject::SquareSum } else { Subject::Sum };
    let mut sums: Vec<(LineRef, u128)> = Vec::new();
    for set in lines {
        for (index, group) in set.groups.iter().enumerate() {
            let sum: u128 = group
                .iter()
                .map(|&(r, c)| {
                    let v = u128::from(grid.get(r, c).value());
                    if square {
                        v * v
                    } else {
                        v
                    }
                })
                .sum();
            sums.push((
                LineRef {
                    kind: set.kind,
                    index,
                },
                sum,
            ));
        }
    }
    if sums.is_empty() {
        return PropertyReport::not_applicable("no lines to check".to_string());
    }
    let mut counts: std::collections::BTreeMap<u128, usize> = std::collections::BTreeMap::new();
    for &(_, s) in &sums {
        *counts.entry(s).or_insert(0) += 1;
    }
    let (&mode, _) = counts
        .iter()
        .max_by_key(|&(&sum, &count)| (count, std::cmp::Reverse(sum)))
        .expect("nonempty");
    let violations: Vec<Violation> = sums
        .iter()
        .filter(|&&(_, s)| s != mode)
        .map(|&(line, s)| Violation {
            line,
            subject,
            expected: mode,
            observed: s,
        })
        .collect();
    let mut kind_constants = Vec::new();
    for set in lines {
        let of_kind: Vec<u128> = sums
            .iter()
            .filter(|(l, _)| l.kind == set.kind)
            .map(|&(_, s)| s)
            .collect();
        let common = of_kind
            .first()
            .filter(|&&first| of_kind.iter().all(|&s| s == first))
            .copied();
        kind_constants.push((set.kind, common));
    }
    PropertyReport {
        verdict: if violations.is_empty() {
            Verdict::True
        } else {
            Verdict::False
        },
        constant: if violations.is_empty() {
            Some(mode)
        } else {
            None
        },
        kind_constants,
        violations,
        note: None,
    }
}

/// True iff every given line group has the same sum of entry values.
pub fn check_magic(grid: &Grid, lines: &[LineSet]) -> PropertyReport {
    check_sums(grid, lines, false)
}

/// True iff every given line group has the same sum of squared entry values.
pub fn check_bimagic(grid: &Grid, lines: &[LineSet]) -> PropertyReport {
    check_sums(grid, lines, true)
}

/// True iff within every line group, every digit position carries each
/// alphabet digit exactly N/|alphabet| times.
pub fn check_digit_balance(grid: &Grid, lines: &[LineSet]) -> PropertyReport {
    let n = grid.order();
    let a = grid.alphabet().len();
    if !n.is_multiple_of(a) {
        return PropertyReport::not_applicable(format!(
            "order {n} is not divisible by alphabet size {a}; no line can be balanced"
        ));
    }
    let expected = (n / a) as u128;
    let mut violations = Vec::new();
    for set in lines {
        for (index, group) in set.groups.iter().enumerate() {
            for position in 0..grid.width() {
                let mut counts = [0u128; 10];
                for &(r, c) in group {
                    counts[grid.get(r, c).digit(position) as usize] += 1;
                }
                for &digit in grid.alphabet().digits() {
                    let observed = counts[digit as usize];
                    if observed != expected {
                        violations.push(Violation {
                            line: LineRef {
                                kind: set.kind,
                                index,
                            },
                            subject: Subject::DigitCount { position, digit },
                            expected,
                            observed,
                        });
                    }
                }
            }
        }
    }
    PropertyReport {
        verdict: if violations.is_empty() {
            Verdict::True
        } else {
            Verdict::False
        },
        constant: None,
        kind_constants: Vec::new(),
        violations,
        note: None,
    }
}

/// True iff within every line group, every unordered pair of digit
/// positions takes each digit-pair combination exactly N/|alphabet|² times.
pub fn check_pair_uniformity(grid: &Grid, lines: &[LineSet]) -> PropertyReport {
    let n = grid.order();
    let a = grid.alphabet().len();
    if !n.is_multiple_of(a * a) {
        return PropertyReport::not_applicable(format!(
            "order {n} is not divisible by squared alphabet size {}; no line can be pair-uniform",
            a * a
        ));
    }
    let expected = (n / (a * a)) as u128;
    let mut violations = Vec::new();
    for set in lines {
        for (index, group) in set.groups.iter().enumerate() {
            for pa in 0..grid.width() {
                for pb in pa + 1..grid.width() {
                    let mut counts = [[0u128; 10]; 10];
                    for &(r, c) in group {
                        let e = grid.get(r, c);
                        counts[e.digit(pa) as usize][e.digit(pb) as usize] += 1;
                    }
                    for &da in grid.alphabet().digits() {
                        for &db in grid.alphabet().digits() {
                            let observed = counts[da as usize][db as usize];
                            if observed != expected {
                                violations.push(Violation {
                                    line: LineRef {
                                        kind: set.kind,
                                        index,
                                    },
                                    subject: Subject::PairCount {
                                        position_a: pa,
                                        position_b: pb,
                                        digit_a: da,
                                        digit_b: db,
                                    },
                                    expected,
                                    observed,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    PropertyReport {
        verdict: if violations.is_empty() {
            Verdict::True
        } else {
            Verdict::False
        },
        constant: None,
        kind_constants: Vec::new(),
        violations,
        note: None,
    }
}

/// The verification of one transformed image. `universal` is True iff the
/// image is magic — that is the bar for universality; the image's bimagic
/// and block statuses are reported separately, as are its own constants
/// (which legitimately differ from the source's for the ternary mirror).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageReport {
    pub transform: TransformKind,
    pub universal: Verdict,
    /// `None` exactly when some digit is unmappable, with the reason.
    pub detail: Option<ImageDetail>,
    pub note: Option<String>,
}

/// Full check results on a transformed grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageDetail {
    pub alphabet: Alphabet,
    pub complete: bool,
    pub magic: PropertyReport,
    pub bimagic: PropertyReport,
    pub block_magic: PropertyReport,
    pub block_bimagic: PropertyReport,
}

impl ImageReport {
    /// The image's observed S1 when it is magic.
    pub fn s1(&self) -> Option<u128> {
        self.detail.as_ref().and_then(|d| d.magic.constant)
    }

    /// The image's observed S2 when it is bimagic.
    pub fn s2(&self) -> Option<u128> {
        self.detail.as_ref().and_then(|d| d.bimagic.constant)
    }
}

fn check_image(
    grid: &Grid,
    transform: TransformKind,
    block: Option<BlockShape>,
) -> ImageReport {
    let transformed = match transform {
        TransformKind::Rotation => rotate180(grid),
        TransformKind::Mirror => mirror(grid),
    };
    let image = match transformed {
        Ok(t) => t.grid,
        Err(e) => {
            return ImageReport {
                transform,
                universal: Verdict::NotApplicable,
                detail: None,
                note: Some(e.to_string()),
            }
        }
    };
    let (base, blocks) = split_line_sets(image.order(), block);
    let magic = check_magic(&image, &base);
    let bimagic = check_bimagic(&image, &base);
    let (block_magic, block_bimagic) = match &blocks {
        Some(sets) => (check_magic(&image, sets), check_bimagic(&image, sets)),
        None => (
            PropertyReport::not_applicable("no block shape given".to_string()),
            PropertyReport::not_applicable("no block shape given".to_string()),
        ),
    };
    ImageReport {
        transform,
        universal: magic.verdict,
        detail: Some(ImageDetail {
            alphabet: image.alphabet().clone(),
            complete: completeness_check(&image).complete,
            magic,
            bimagic,
            block_magic,
            block_bimagic,
        }),
        note: None,
    }
}

/// Applies both transforms and re-runs the sum checks on each image.
/// This is literally transform-then-verify; there is no shortcut path.
pub fn check_universal(grid: &Grid, block: Option<BlockShape>) -> (ImageReport, ImageReport) {
    (
        check_image(grid, TransformKind::Rotation, block),
        check_image(grid, TransformKind::Mirror, block),
    )
}

fn split_line_sets(order: usize, block: Option<BlockShape>) -> (Vec<LineSet>, Option<Vec<LineSet>>) {
    let mut sets = line_sets(order, block);
    let blocks: Vec<LineSet> = sets
        .iter()
        .filter(|s| s.kind == LineKind::Blocks)
        .cloned()
        .collect();
    sets.retain(|s| s.kind != LineKind::Blocks);
    (sets, if blocks.is_empty() { None } else { Some(blocks) })
}

/// Everything the checker can say about one grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub order: usize,
    pub width: usize,
    pub alphabet: Alphabet,
    pub block: Option<BlockShape>,
    pub completeness: Completeness,
    /// Rows, columns, and both diagonals share one value sum.
    pub magic: PropertyReport,
    /// Rows, columns, and both diagonals share one squared-value sum.
    pub bimagic: PropertyReport,
    /// All blocks share one value sum (NotApplicable without a block shape).
    pub block_magic: PropertyReport,
    /// All blocks share one squared-value sum.
    pub block_bimagic: PropertyReport,
    /// Digit balance over every checked line, blocks included.
    pub digit_balanced: PropertyReport,
    /// Pair uniformity over every checked line, blocks included.
    pub pair_uniform: PropertyReport,
    pub rotation: ImageReport,
    pub mirror: ImageReport,
    /// Mismatches between observed constants and the published prints for
    /// this order (empty when they all agree or nothing was published).
    pub errata: Vec<ErratumRecord>,
}

impl VerificationReport {
    /// The overall pass verdict used by callers that need a single answer:
    /// completeness, magic, and bimagic must hold outright; block and
    /// universality verdicts must not be outright failures (a grid without
    /// a block tiling or with unmappable digits can still pass).
    pub fn passes(&self) -> bool {
        self.completeness.complete
            && self.magic.verdict.holds()
            && self.bimagic.verdict.holds()
            && self.block_magic.verdict.passes()
            && self.block_bimagic.verdict.passes()
            && self.rotation.universal.passes()
            && self.mirror.universal.passes()
    }
}

/// Runs every check and aggregates the outcome. Deterministic: identical
/// grids yield identical reports.
pub fn full_report(grid: &Grid, block: Option<BlockShape>) -> VerificationReport {
    let (base, blocks) = split_line_sets(grid.order(), block);
    let completeness = completeness_check(grid);
    let magic = check_magic(grid, &base);
    let bimagic = check_bimagic(grid, &base);
    let (block_magic, block_bimagic) = match &blocks {
        Some(sets) => (check_magic(grid, sets), check_bimagic(grid, sets)),
        None => (
            PropertyReport::not_applicable("no block shape given".to_string()),
            PropertyReport::not_applicable("no block shape given".to_string()),
        ),
    };
    let mut all_sets = base.clone();
    if let Some(sets) = &blocks {
        all_sets.extend(sets.iter().cloned());
    }
    let digit_balanced = check_digit_balance(grid, &all_sets);
    let pair_uniform = check_pair_uniformity(grid, &all_sets);
    let (rotation, mirror) = check_universal(grid, block);

    // Observed-vs-published comparison, only meaningful when the grid
    // actually achieves common constants.
    let errata = match (magic.constant, bimagic.constant) {
        (Some(s1), Some(s2)) => {
            let targets = SumTargets {
                s1: s1 as u64,
                s2,
            };
            compare_published(grid.order(), &targets)
                .into_iter()
                .filter(|r| !r.agrees)
                .collect()
        }
        _ => Vec::new(),
    };

    VerificationReport {
        order: grid.order(),
        width: grid.width(),
        alphabet: grid.alphabet().clone(),
        block,
        completeness,
        magic,
        bimagic,
        block_magic,
        block_bimagic,
        digit_balanced,
        pair_uniform,
        rotation,
        mirror,
        errata,
    }
}
