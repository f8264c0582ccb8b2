//! Complete sets of fixed-width digit strings and their forced line-sum
//! constants.
//!
//! A square of order N whose entries are exactly the |alphabet|^width
//! distinct digit strings (each used once) has no freedom in its line sums:
//! if every row is to sum to the same value, that value must be the total of
//! the complete set divided by N, and likewise for the sum of squared
//! values. This module enumerates the sets and computes those two constants
//! — S1 for plain sums, S2 for squared sums — in exact integer arithmetic.

use crate::error::{Error, Result};

/// Widths are capped so entry values stay well inside `u64` and squared
/// values inside `u128`.
pub const MAX_WIDTH: usize = 18;

/// An ordered set of admissible decimal digits, e.g. {0,1} or {0,1,2}.
///
/// Digits are stored in ascending order regardless of construction order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    digits: Vec<u8>,
}

impl Alphabet {
    /// Builds an alphabet from the given digits, which must be decimal and
    /// pairwise distinct. Input order is irrelevant; the canonical order is
    /// ascending.
    pub fn new(digits: &[u8]) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut sorted = digits.to_vec();
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateDigit { digit: pair[0] });
            }
        }
        if let Some(&digit) = sorted.iter().find(|&&d| d > 9) {
            return Err(Error::NonDecimalDigit { digit });
        }
        Ok(Alphabet { digits: sorted })
    }

    /// The binary digit set {0,1} used by the order-8 and order-16 squares.
    pub fn binary() -> Self {
        Alphabet { digits: vec![0, 1] }
    }

    /// The ternary digit set {0,1,2} used by the order-9 square.
    pub fn ternary() -> Self {
        Alphabet {
            digits: vec![0, 1, 2],
        }
    }

    /// The digits in ascending order.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Number of digits in the alphabet.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    /// True only for the (rejected-at-construction) empty set; present to
    /// satisfy the usual `len`/`is_empty` pairing.
    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, digit: u8) -> bool {
        self.digits.binary_search(&digit).is_ok()
    }
}

impl std::fmt::Display for Alphabet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// A fixed-width decimal digit string. Leading zeros are significant:
/// `000000` is a six-digit entry with value 0, distinct from any other
/// width's zero. The value is the ordinary decimal reading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    value: u64,
    width: usize,
}

impl Entry {
    /// Builds an entry from its digits, most significant first.
    pub fn from_digits(digits: &[u8]) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::WidthZero);
        }
        if digits.len() > MAX_WIDTH {
            return Err(Error::WidthTooLarge {
                width: digits.len(),
                max: MAX_WIDTH,
            });
        }
        let mut value: u64 = 0;
        for &d in digits {
            if d > 9 {
                return Err(Error::NonDecimalDigit { digit: d });
            }
            value = value * 10 + u64::from(d);
        }
        Ok(Entry {
            value,
            width: digits.len(),
        })
    }

    /// Parses a digit string such as `"000101"`; the width is the string
    /// length.
    pub fn parse(s: &str) -> Result<Self> {
        let mut digits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c.to_digit(10) {
                Some(d) => digits.push(d as u8),
                None => {
                    let byte = if c.is_ascii() { c as u8 } else { u8::MAX };
                    return Err(Error::NonDecimalDigit { digit: byte });
                }
            }
        }
        Entry::from_digits(&digits)
    }

    /// The decimal value of the digit string.
    pub fn value(self) -> u64 {
        self.value
    }

    /// The declared number of digits, counting leading zeros.
    pub fn width(self) -> usize {
        self.width
    }

    /// The digits, most significant first.
    pub fn digits(self) -> Vec<u8> {
        let mut out = vec![0u8; self.width];
        let mut v = self.value;
        for slot in out.iter_mut().rev() {
            *slot = (v % 10) as u8;
            v /= 10;
        }
        out
    }

    /// The digit at `position` (0 = most significant).
    pub fn digit(self, position: usize) -> u8 {
        debug_assert!(position < self.width);
        let shift = self.width - 1 - position;
        ((self.value / 10u64.pow(shift as u32)) % 10) as u8
    }
}

impl std::fmt::Display for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:0width$}", self.value, width = self.width)
    }
}

/// The decimal value of an entry. Free-function form of [`Entry::value`].
pub fn entry_value(entry: Entry) -> u64 {
    entry.value()
}

/// Enumerates the complete set of fixed-width digit strings over an
/// alphabet, in lexicographic order of the digit sequence (equivalently,
/// ascending value, since the alphabet is ascending).
pub fn enumerate_entries(alphabet: &Alphabet, width: usize) -> Result<Vec<Entry>> {
    if width == 0 {
        return Err(Error::WidthZero);
    }
    if width > MAX_WIDTH {
        return Err(Error::WidthTooLarge {
            width,
            max: MAX_WIDTH,
        });
    }
    let mut entries = Vec::with_capacity(alphabet.len().pow(width as u32));
    let mut digits = vec![0usize; width]; // indices into the alphabet
    loop {
        let ds: Vec<u8> = digits.iter().map(|&i| alphabet.digits()[i]).collect();
        entries.push(Entry::from_digits(&ds)?);
        // lexicographic increment
        let mut pos = width;
        loop {
            if pos == 0 {
                return Ok(entries);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < alphabet.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// The two forced line constants for a complete-set square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumTargets {
    /// Forced sum of entry values along any line of a magic arrangement.
    pub s1: u64,
    /// Forced sum of squared entry values along any line of a bimagic
    /// arrangement.
    pub s2: u128,
}

/// Computes the forced constants by brute-force summation over the complete
/// set: S1 = Σ value / order, S2 = Σ value² / order.
///
/// Requires |alphabet|^width = order² (the set must exactly fill the
/// square). Fails with [`Error::IndivisibleSum`] if either total is not an
/// exact multiple of the order, in which case no magic arrangement of the
/// set exists at all.
pub fn sum_targets(alphabet: &Alphabet, width: usize, order: usize) -> Result<SumTargets> {
    let entries = enumerate_entries(alphabet, width)?;
    if order == 0 || entries.len() != order * order {
        return Err(Error::ShapeMismatch {
            set_size: entries.len(),
            order,
        });
    }
    let total: u128 = entries.iter().map(|e| u128::from(e.value())).sum();
    let total_sq: u128 = entries
        .iter()
        .map(|e| u128::from(e.value()) * u128::from(e.value()))
        .sum();
    let order = order as u128;
    if !total.is_multiple_of(order) {
        return Err(Error::IndivisibleSum {
            sum: total,
            order: order as usize,
        });
    }
    if !total_sq.is_multiple_of(order) {
        return Err(Error::IndivisibleSum {
            sum: total_sq,
            order: order as usize,
        });
    }
    Ok(SumTargets {
        s1: (total / order) as u64,
        s2: total_sq / order,
    })
}

/// The sum constants as originally published for the three first-class
/// squares, kept verbatim (including misprints) so reports can show exactly
/// what was corrected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedConstants {
    pub order: usize,
    /// The printed S1 value.
    pub s1_printed: &'static str,
    /// The printed S2 value(s). The order-9 square was printed with two
    /// conflicting S2 values, so this is a list.
    pub s2_printed: &'static [&'static str],
}

/// Published values for orders 8, 16, and 9; `None` for anything else.
pub fn published_constants(order: usize) -> Option<PublishedConstants> {
    match order {
        8 => Some(PublishedConstants {
            order: 8,
            s1_printed: "44444",
            s2_printed: &["44893328844"],
        }),
        16 => Some(PublishedConstants {
            order: 16,
            s1_printed: "88888888",
            s2_printed: &["897867554657688"],
        }),
        9 => Some(PublishedConstants {
            order: 9,
            s1_printed: "9999",
            s2_printed: &["17169395", "17169495"],
        }),
        _ => None,
    }
}

/// One comparison between a computed constant and a published print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErratumRecord {
    pub order: usize,
    /// Which constant: `"S1"` or `"S2"`.
    pub constant: &'static str,
    /// The value as originally printed.
    pub printed: String,
    /// The value forced by exact computation.
    pub computed: String,
    /// True when print and computation agree.
    pub agrees: bool,
}

/// Compares computed targets against every published print for the order.
/// Returns one record per printed value (two for the order-9 S2, which was
/// printed inconsistently); empty when the order has no published values.
pub fn compare_published(order: usize, targets: &SumTargets) -> Vec<ErratumRecord> {
    let Some(published) = published_constants(order) else {
        return Vec::new();
    };
    let mut records = Vec::new();
    let s1 = targets.s1.to_string();
    records.push(ErratumRecord {
        order,
        constant: "S1",
        printed: published.s1_printed.to_string(),
        computed: s1.clone(),
        agrees: published.s1_printed == s1,
    });
    let s2 = targets.s2.to_string();
    for &printed in published.s2_printed {
        records.push(ErratumRecord {
            order,
            constant: "S2",
            printed: printed.to_string(),
            computed: s2.clone(),
            agrees: printed == s2,
        });
    }
    records
}
