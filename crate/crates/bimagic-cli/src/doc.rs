//! The grid document text format.
//!
//! Line 1 is a header of `key=value` tokens: `order`, `alphabet`, and
//! `width` are required; `blocks`, `seed`, and `provenance` are optional.
//! The next N lines carry N space-separated fixed-width digit strings
//! each. A `#` starts a comment that runs to the end of its line; blank
//! lines are ignored. Example:
//!
//! ```text
//! order=3 alphabet=012 width=2 seed=1
//! 01 20 12
//! 22 11 00   # comments may trail content
//! 10 02 21
//! ```
//!
//! Parsing reports the 1-based line and column of the first offense.
//! Serialization is canonical (single spaces, fixed key order), so
//! documents round-trip bit-exactly through parse → serialize.

use std::fmt;

use bimagic::{Alphabet, BlockShape, Entry, Grid};

/// A parsed document: the grid plus the header's bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridDocument {
    pub grid: Grid,
    pub blocks: Option<BlockShape>,
    pub seed: Option<u64>,
    pub provenance: Option<String>,
}

/// A parse failure, located in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line in the original text.
    pub line: usize,
    /// 1-based column of the offending token.
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

/// Whitespace-separated tokens of one line with their 1-based columns,
/// after stripping any `#` comment.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let content = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &content[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &content[s..]));
    }
    out
}

/// Parses the `RxC` syntax of the `blocks` key and block-shape flags.
pub fn parse_block_spec(order: usize, spec: &str) -> Result<BlockShape, String> {
    let (r, c) = spec
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("block shape `{spec}` is not of the form RxC"))?;
    let rows: usize = r
        .parse()
        .map_err(|_| format!("block rows `{r}` is not a number"))?;
    let cols: usize = c
        .parse()
        .map_err(|_| format!("block columns `{c}` is not a number"))?;
    BlockShape::new(order, rows, cols).map_err(|e| e.to_string())
}

struct Header {
    order: usize,
    alphabet: Alphabet,
    width: usize,
    blocks: Option<BlockShape>,
    seed: Option<u64>,
    provenance: Option<String>,
}

fn parse_header(line_no: usize, line: &str) -> Result<Header, ParseError> {
    let mut order = None;
    let mut alphabet = None;
    let mut width = None;
    let mut blocks: Option<(usize, String)> = None;
    let mut seed = None;
    let mut provenance = None;
    for (col, token) in tokens(line) {
        let (key, value) = token.split_once('=').ok_or_else(|| {
            ParseError::new(line_no, col, format!("expected key=value, found `{token}`"))
        })?;
        let dup = |name: &str| {
            ParseError::new(line_no, col, format!("duplicate header key `{name}`"))
        };
        match key {
            "order" => {
                if order.is_some() {
                    return Err(dup(key));
                }
                let n: usize = value.parse().map_err(|_| {
                    ParseError::new(line_no, col, format!("order `{value}` is not a number"))
                })?;
                if n == 0 {
                    return Err(ParseError::new(line_no, col, "order must be positive"));
                }
                order = Some(n);
            }
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(dup(key));
                }
                let digits: Vec<u8> = value
                    .chars()
                    .map(|ch| {
                        ch.to_digit(10).map(|d| d as u8).ok_or_else(|| {
                            ParseError::new(
                                line_no,
                                col,
                                format!("alphabet character `{ch}` is not a decimal digit"),
                            )
                        })
                    })
                    .collect::<Result<_, _>>()?;
                alphabet = Some(Alphabet::new(&digits).map_err(|e| {
                    ParseError::new(line_no, col, e.to_string())
                })?);
            }
            "width" => {
                if width.is_some() {
                    return Err(dup(key));
                }
                let w: usize = value.parse().map_err(|_| {
                    ParseError::new(line_no, col, format!("width `{value}` is not a number"))
                })?;
                width = Some(w);
            }
            "blocks" => {
                if blocks.is_some() {
                    return Err(dup(key));
                }
                // Validated against the order once the whole header is read.
                blocks = Some((col, value.to_string()));
            }
            "seed" => {
                if seed.is_some() {
                    return Err(dup(key));
                }
                seed = Some(value.parse().map_err(|_| {
                    ParseError::new(line_no, col, format!("seed `{value}` is not a number"))
                })?);
            }
            "provenance" => {
                if provenance.is_some() {
                    return Err(dup(key));
                }
                provenance = Some(value.to_string());
            }
            other => {
                return Err(ParseError::new(
                    line_no,
                    col,
                    format!("unknown header key `{other}`"),
                ));
            }
        }
    }
    let order = order.ok_or_else(|| ParseError::new(line_no, 1, "header is missing `order`"))?;
    let alphabet =
        alphabet.ok_or_else(|| ParseError::new(line_no, 1, "header is missing `alphabet`"))?;
    let width = width.ok_or_else(|| ParseError::new(line_no, 1, "header is missing `width`"))?;
    let blocks = blocks
        .map(|(col, spec)| {
            parse_block_spec(order, &spec)
                .map_err(|msg| ParseError::new(line_no, col, msg))
        })
        .transpose()?;
    Ok(Header {
        order,
        alphabet,
        width,
        blocks,
        seed,
        provenance,
    })
}

/// Parses a grid document from text.
pub fn parse(text: &str) -> Result<GridDocument, ParseError> {
    let mut content = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line))
        .filter(|(_, line)| !tokens(line).is_empty());
    let (header_line, header_text) = content
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty document: no header line"))?;
    let header = parse_header(header_line, header_text)?;
    let mut rows: Vec<Vec<Entry>> = Vec::with_capacity(header.order);
    let mut last_line = header_line;
    for (line_no, line) in content.by_ref() {
        if rows.len() == header.order {
            let col = tokens(line)[0].0;
            return Err(ParseError::new(
                line_no,
                col,
                format!("unexpected content after {} grid rows", header.order),
            ));
        }
        last_line = line_no;
        let toks = tokens(line);
        if toks.len() != header.order {
            return Err(ParseError::new(
                line_no,
                toks.get(header.order).map_or(1, |&(c, _)| c),
                format!(
                    "grid row {} has {} cells, expected {}",
                    rows.len() + 1,
                    toks.len(),
                    header.order
                ),
            ));
        }
        let mut row = Vec::with_capacity(header.order);
        for (col, tok) in toks {
            let entry = Entry::parse(tok)
                .map_err(|e| ParseError::new(line_no, col, e.to_string()))?;
            if entry.width() != header.width {
                return Err(ParseError::new(
                    line_no,
                    col,
                    format!(
                        "cell `{tok}` has width {}, expected {}",
                        entry.width(),
                        header.width
                    ),
                ));
            }
            if let Some(&bad) = entry.digits().iter().find(|d| !header.alphabet.contains(**d)) {
                return Err(ParseError::new(
                    line_no,
                    col,
                    format!(
                        "cell `{tok}` uses digit {bad}, not in alphabet {}",
                        header.alphabet
                    ),
                ));
            }
            row.push(entry);
        }
        rows.push(row);
    }
    if rows.len() != header.order {
        return Err(ParseError::new(
            last_line,
            1,
            format!(
                "expected {} grid rows, found {}",
                header.order,
                rows.len()
            ),
        ));
    }
    let grid = Grid::new(header.order, header.alphabet, header.width, rows)
        .map_err(|e| ParseError::new(header_line, 1, e.to_string()))?;
    Ok(GridDocument {
        grid,
        blocks: header.blocks,
        seed: header.seed,
        provenance: header.provenance,
    })
}

/// Canonical text for a document: fixed key order, single spaces, one
/// trailing newline.
pub fn serialize(doc: &GridDocument) -> String {
    let grid = &doc.grid;
    let mut out = format!(
        "order={} alphabet={} width={}",
        grid.order(),
        grid.alphabet(),
        grid.width()
    );
    if let Some(blocks) = doc.blocks {
        out.push_str(&format!(" blocks={blocks}"));
    }
    if let Some(seed) = doc.seed {
        out.push_str(&format!(" seed={seed}"));
    }
    if let Some(provenance) = &doc.provenance {
        out.push_str(&format!(" provenance={provenance}"));
    }
    out.push('\n');
    for r in 0..grid.order() {
        let cells: Vec<String> = grid.row(r).iter().map(|e| e.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
