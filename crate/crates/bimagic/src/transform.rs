//! 180°-rotation ("upside down") and mirror transforms.
//!
//! Both transforms act on *printed* numbers. Turning a page upside down or
//! holding it to a mirror reverses the digit order of every number and
//! replaces each digit glyph by what it looks like afterwards. Only some
//! digits survive: 3, 4, and 7 have no rotated form, and 3, 4, 6, 7, 9 have
//! no mirrored form. The digit 2 rotates to itself but mirrors to 5 (and
//! vice versa), which is why a mirrored ternary square lives over the
//! alphabet {0,1,5}.
//!
//! At the grid level, rotation moves cell (r,c) to (N−1−r, N−1−c) and the
//! mirror (vertical axis, left-right reflection) moves it to (r, N−1−c);
//! in both cases the entry itself is transformed too.

use crate::digitspace::{Alphabet, Entry};
use crate::error::{Error, Result};
use crate::grid::Grid;

/// Which transform a digit map or transformed grid belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Rotation,
    Mirror,
}

impl TransformKind {
    pub fn name(self) -> &'static str {
        match self {
            TransformKind::Rotation => "rotation",
            TransformKind::Mirror => "mirror",
        }
    }
}

/// A partial digit→digit map induced by a physical transform of the printed
/// page. Both maps are involutions on their domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitMap {
    kind: TransformKind,
    /// `image[d]` is the image of digit `d`, or `None` when `d` has no
    /// printed form under the transform.
    image: [Option<u8>; 10],
}

impl DigitMap {
    /// The 180°-rotation map: 0→0, 1→1, 2→2, 5→5, 6→9, 8→8, 9→6;
    /// undefined on 3, 4, 7.
    pub fn rotation() -> Self {
        let mut image = [None; 10];
        for (d, img) in [(0, 0), (1, 1), (2, 2), (5, 5), (6, 9), (8, 8), (9, 6)] {
            image[d as usize] = Some(img);
        }
        DigitMap {
            kind: TransformKind::Rotation,
            image,
        }
    }

    /// The mirror map: 0→0, 1→1, 8→8, 2→5, 5→2; undefined on 3, 4, 6, 7, 9.
    pub fn mirror() -> Self {
        let mut image = [None; 10];
        for (d, img) in [(0, 0), (1, 1), (8, 8), (2, 5), (5, 2)] {
            image[d as usize] = Some(img);
        }
        DigitMap {
            kind: TransformKind::Mirror,
            image,
        }
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    /// The image of a digit, or `None` when it has no printed form.
    pub fn apply(&self, digit: u8) -> Option<u8> {
        self.image.get(digit as usize).copied().flatten()
    }

    /// The image alphabet, or `None` if any digit is unmappable. The result
    /// is canonical (ascending) — e.g. mirror({0,1,2}) = {0,1,5}.
    pub fn map_alphabet(&self, alphabet: &Alphabet) -> Option<Alphabet> {
        let mut digits = Vec::with_capacity(alphabet.len());
        for &d in alphabet.digits() {
            digits.push(self.apply(d)?);
        }
        Some(Alphabet::new(&digits).expect("image of a valid alphabet is valid"))
    }
}

/// Transforms a single entry: digit order is reversed and every digit is
/// replaced by its image. Width is preserved. Fails on the first digit
/// (by original position, most significant first) outside the map's domain.
pub fn transform_entry(entry: Entry, map: &DigitMap) -> Result<Entry> {
    let digits = entry.digits();
    let mut out = Vec::with_capacity(digits.len());
    for (position, &d) in digits.iter().enumerate() {
        match map.apply(d) {
            Some(img) => out.push(img),
            None => {
                return Err(Error::UnmappableDigit {
                    digit: d,
                    position,
                    transform: map.kind().name(),
                })
            }
        }
    }
    out.reverse();
    Entry::from_digits(&out)
}

/// A grid produced by a transform, tagged with which one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformedGrid {
    pub grid: Grid,
    pub provenance: TransformKind,
}

fn transform_grid(
    grid: &Grid,
    map: &DigitMap,
    source_cell: impl Fn(usize, usize) -> (usize, usize),
) -> Result<TransformedGrid> {
    let n = grid.order();
    let alphabet = map
        .map_alphabet(grid.alphabet())
        .expect("checked per-cell below; alphabets only contain used digits");
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            let (sr, sc) = source_cell(r, c);
            let entry = transform_entry(grid.get(sr, sc), map).map_err(|e| match e {
                Error::UnmappableDigit { digit, transform, .. } => Error::UnmappableCell {
                    row: sr,
                    col: sc,
                    digit,
                    transform,
                },
                other => other,
            })?;
            row.push(entry);
        }
        rows.push(row);
    }
    Ok(TransformedGrid {
        grid: Grid::new(n, alphabet, grid.width(), rows)?,
        provenance: map.kind(),
    })
}

/// Rotates the whole grid 180°: cell (r,c) of the result is the transformed
/// entry of source cell (N−1−r, N−1−c).
pub fn rotate180(grid: &Grid) -> Result<TransformedGrid> {
    let n = grid.order();
    let map = DigitMap::rotation();
    check_all_mappable(grid, &map)?;
    transform_grid(grid, &map, |r, c| (n - 1 - r, n - 1 - c))
}

/// Reflects the whole grid in a vertical mirror: cell (r,c) of the result
/// is the transformed entry of source cell (r, N−1−c).
pub fn mirror(grid: &Grid) -> Result<TransformedGrid> {
    let n = grid.order();
    let map = DigitMap::mirror();
    check_all_mappable(grid, &map)?;
    transform_grid(grid, &map, |r, c| (r, n - 1 - c))
}

/// Pre-checks mappability so `transform_grid`'s alphabet image cannot panic
/// and errors name the first offending cell in row-major order.
fn check_all_mappable(grid: &Grid, map: &DigitMap) -> Result<()> {
    for r in 0..grid.order() {
        for c in 0..grid.order() {
            for d in grid.get(r, c).digits() {
                if map.apply(d).is_none() {
                    return Err(Error::UnmappableCell {
                        row: r,
                        col: c,
                        digit: d,
                        transform: map.kind().name(),
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{line_sets, BlockShape, LineKind};

    #[test]
    fn rotation_map_table() {
        let m = DigitMap::rotation();
        let expected = [
            (0, Some(0)),
            (1, Some(1)),
            (2, Some(2)),
            (3, None),
            (4, None),
            (5, Some(5)),
            (6, Some(9)),
            (7, None),
            (8, Some(8)),
            (9, Some(6)),
        ];
        for (d, img) in expected {
            assert_eq!(m.apply(d), img, "rotation of {d}");
        }
    }

    #[test]
    fn mirror_map_table() {
        let m = DigitMap::mirror();
        let expected = [
            (0, Some(0)),
            (1, Some(1)),
            (2, Some(5)),
            (3, None),
            (4, None),
            (5, Some(2)),
            (6, None),
            (7, None),
            (8, Some(8)),
            (9, None),
        ];
        for (d, img) in expected {
            assert_eq!(m.apply(d), img, "mirror of {d}");
        }
    }

    #[test]
    fn digit_maps_are_involutions_on_their_domains() {
        for m in [DigitMap::rotation(), DigitMap::mirror()] {
            for d in 0..=9u8 {
                if let Some(img) = m.apply(d) {
                    assert_eq!(m.apply(img), Some(d), "{} twice on {d}", m.kind().name());
                }
            }
        }
    }

    #[test]
    fn transform_entry_examples() {
        let rot = DigitMap::rotation();
        let mir = DigitMap::mirror();
        assert_eq!(
            transform_entry(Entry::parse("100110").unwrap(), &rot).unwrap(),
            Entry::parse("011001").unwrap()
        );
        assert_eq!(
            transform_entry(Entry::parse("2101").unwrap(), &mir).unwrap(),
            Entry::parse("1015").unwrap()
        );
        assert_eq!(
            transform_entry(Entry::parse("3").unwrap(), &rot),
            Err(Error::UnmappableDigit {
                digit: 3,
                position: 0,
                transform: "rotation",
            })
        );
    }

    #[test]
    fn transform_entry_preserves_width() {
        // 0690 reads the same upside down; 0691 does not.
        let fixed = Entry::parse("0690").unwrap();
        assert_eq!(
            transform_entry(fixed, &DigitMap::rotation()).unwrap(),
            fixed
        );
        let e = Entry::parse("0691").unwrap();
        let r = transform_entry(e, &DigitMap::rotation()).unwrap();
        assert_eq!(r.width(), 4);
        assert_eq!(r.to_string(), "1690");
    }

    #[test]
    fn mirror_maps_ternary_alphabet() {
        let img = DigitMap::mirror().map_alphabet(&Alphabet::ternary()).unwrap();
        assert_eq!(img.digits(), &[0, 1, 5]);
        assert_eq!(DigitMap::rotation().map_alphabet(&Alphabet::ternary()),
                   Some(Alphabet::ternary()));
    }

    fn small_grid() -> Grid {
        let rows = vec![
            vec![Entry::parse("00").unwrap(), Entry::parse("01").unwrap()],
            vec![Entry::parse("10").unwrap(), Entry::parse("11").unwrap()],
        ];
        Grid::new(2, Alphabet::binary(), 2, rows).unwrap()
    }

    #[test]
    fn rotate180_cell_placement() {
        let g = small_grid();
        let r = rotate180(&g).unwrap();
        // source (1,1)="11" reversed lands at (0,0)
        assert_eq!(r.grid.get(0, 0).to_string(), "11");
        assert_eq!(r.grid.get(0, 1).to_string(), "01"); // source (1,0)=10 reversed
        assert_eq!(r.grid.get(1, 0).to_string(), "10"); // source (0,1)=01 reversed
        assert_eq!(r.grid.get(1, 1).to_string(), "00");
        assert_eq!(r.provenance, TransformKind::Rotation);
    }

    #[test]
    fn mirror_cell_placement() {
        let g = small_grid();
        let m = mirror(&g).unwrap();
        assert_eq!(m.grid.get(0, 0).to_string(), "10"); // source (0,1)=01 reversed
        assert_eq!(m.grid.get(0, 1).to_string(), "00");
        assert_eq!(m.grid.get(1, 0).to_string(), "11");
        assert_eq!(m.grid.get(1, 1).to_string(), "01");
    }

    #[test]
    fn grid_transforms_are_involutions() {
        let g = small_grid();
        assert_eq!(rotate180(&rotate180(&g).unwrap().grid).unwrap().grid, g);
        assert_eq!(mirror(&mirror(&g).unwrap().grid).unwrap().grid, g);
    }

    #[test]
    fn rotation_of_all_zero_grid_is_identity() {
        let zero = Entry::parse("0").unwrap();
        let rows = vec![vec![zero, zero], vec![zero, zero]];
        let g = Grid::new(2, Alphabet::new(&[0]).unwrap(), 1, rows).unwrap();
        assert_eq!(rotate180(&g).unwrap().grid, g);
    }

    #[test]
    fn unmappable_cell_is_named() {
        let rows = vec![
            vec![Entry::parse("15").unwrap(), Entry::parse("19").unwrap()],
            vec![Entry::parse("11").unwrap(), Entry::parse("55").unwrap()],
        ];
        let g = Grid::new(2, Alphabet::new(&[1, 5, 9]).unwrap(), 2, rows).unwrap();
        assert_eq!(
            mirror(&g),
            Err(Error::UnmappableCell {
                row: 0,
                col: 1,
                digit: 9,
                transform: "mirror",
            })
        );
        assert!(rotate180(&g).is_ok(), "1, 5, 9 all rotate");
    }

    #[test]
    fn binary_transforms_preserve_value_multiset() {
        let g = small_grid();
        let mut original: Vec<u64> = g.entries().iter().map(|e| e.value()).collect();
        original.sort_unstable();
        for t in [rotate180(&g).unwrap(), mirror(&g).unwrap()] {
            let mut got: Vec<u64> = t.grid.entries().iter().map(|e| e.value()).collect();
            got.sort_unstable();
            assert_eq!(got, original);
        }
    }

    /// Rotation and column-mirror permute the line structure: rows map to
    /// rows, columns to columns, the diagonal pair to itself, and the block
    /// tiling to itself.
    #[test]
    fn transforms_commute_with_line_structure() {
        for (order, br, bc) in [(8, 2, 4), (16, 4, 4), (9, 3, 3)] {
            let block = BlockShape::new(order, br, bc).unwrap();
            let sets = line_sets(order, Some(block));
            let normalize = |groups: &[Vec<(usize, usize)>]| -> Vec<Vec<(usize, usize)>> {
                let mut gs: Vec<Vec<(usize, usize)>> = groups
                    .iter()
                    .map(|g| {
                        let mut g = g.clone();
                        g.sort_unstable();
                        g
                    })
                    .collect();
                gs.sort();
                gs
            };
            for set in &sets {
                let rotated: Vec<Vec<(usize, usize)>> = set
                    .groups
                    .iter()
                    .map(|g| {
                        g.iter()
                            .map(|&(r, c)| (order - 1 - r, order - 1 - c))
                            .collect()
                    })
                    .collect();
                let mirrored: Vec<Vec<(usize, usize)>> = set
                    .groups
                    .iter()
                    .map(|g| g.iter().map(|&(r, c)| (r, order - 1 - c)).collect())
                    .collect();
                let base = normalize(&set.groups);
                assert_eq!(normalize(&rotated), base, "{:?} under rotation", set.kind);
                match set.kind {
                    // The vertical mirror swaps the two diagonals; every
                    // other family maps to itself group-for-group.
                    LineKind::MainDiagonal | LineKind::AntiDiagonal => {}
                    _ => assert_eq!(normalize(&mirrored), base, "{:?} under mirror", set.kind),
                }
            }
            // the diagonal pair as a whole is preserved by the mirror
            let diag_pair: Vec<_> = sets
                .iter()
                .filter(|s| {
                    matches!(s.kind, LineKind::MainDiagonal | LineKind::AntiDiagonal)
                })
                .flat_map(|s| s.groups.clone())
                .collect();
            let mirrored_pair: Vec<Vec<(usize, usize)>> = diag_pair
                .iter()
                .map(|g| g.iter().map(|&(r, c)| (r, order - 1 - c)).collect())
                .collect();
            let normalize_all = |gs: &[Vec<(usize, usize)>]| {
                let mut out: Vec<Vec<(usize, usize)>> = gs
                    .iter()
                    .map(|g| {
                        let mut g = g.clone();
                        g.sort_unstable();
                        g
                    })
                    .collect();
                out.sort();
                out
            };
            assert_eq!(normalize_all(&mirrored_pair), normalize_all(&diag_pair));
        }
    }
}
