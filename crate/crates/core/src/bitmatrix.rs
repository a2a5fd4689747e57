//! Bit-packed (0,1)-matrices and submatrix pattern containment.
//!
//! Rows are stored contiguously, 64 entries per `u64` word; matrices with
//! more than 64 columns span several words per row. Dimensions may be zero
//! and an `m x 0` matrix is distinct from a `0 x n` one. All values are
//! immutable after construction.

use std::fmt;

use thiserror::Error;

const WORD_BITS: usize = 64;

/// A rectangular matrix over {0,1} with bit-packed row-major storage.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

/// Error raised by [`BitMatrix::parse`], carrying 1-based line/column positions.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing header line (expected \"<rows> <cols>\")")]
    MissingHeader,
    #[error("line 1: malformed header {0:?} (expected \"<rows> <cols>\")")]
    BadHeader(String),
    #[error("line {line}: expected {expected} characters, found {found}")]
    RowLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {col}: illegal character {ch:?} (expected '0' or '1')")]
    IllegalCharacter { line: usize, col: usize, ch: char },
    #[error("expected {expected} matrix rows, found {found}")]
    RowCount { expected: usize, found: usize },
}

impl BitMatrix {
    /// All-zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(WORD_BITS);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    /// Builds a matrix by evaluating `entry(i, j)` at every position.
    pub fn from_fn(rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if entry(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Parses the canonical text format: a `"<rows> <cols>"` header line
    /// followed by one line of `0`/`1` characters per row. Surrounding
    /// whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or(ParseError::MissingHeader)?;
        let mut parts = header.split_whitespace();
        let rows: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ParseError::BadHeader(header.to_string()))?;
        let cols: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ParseError::BadHeader(header.to_string()))?;
        if parts.next().is_some() {
            return Err(ParseError::BadHeader(header.to_string()));
        }

        let mut m = Self::zeros(rows, cols);
        let mut filled = 0;
        for (line_no, line) in lines {
            if filled == rows {
                return Err(ParseError::RowCount {
                    expected: rows,
                    found: filled + 1,
                });
            }
            if line.chars().count() != cols {
                // Report the first bad character if the length mismatch is
                // caused by stray non-bit characters.
                if let Some((col, ch)) =
                    line.chars().enumerate().find(|(_, c)| *c != '0' && *c != '1')
                {
                    return Err(ParseError::IllegalCharacter {
                        line: line_no,
                        col: col + 1,
                        ch,
                    });
                }
                return Err(ParseError::RowLength {
                    line: line_no,
                    expected: cols,
                    found: line.chars().count(),
                });
            }
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(filled, col, true),
                    _ => {
                        return Err(ParseError::IllegalCharacter {
                            line: line_no,
                            col: col + 1,
                            ch,
                        })
                    }
                }
            }
            filled += 1;
        }
        if filled != rows && cols > 0 {
            return Err(ParseError::RowCount {
                expected: rows,
                found: filled,
            });
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        let word = i * self.words_per_row + j / WORD_BITS;
        self.bits[word] >> (j % WORD_BITS) & 1 != 0
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "entry out of bounds");
        let word = i * self.words_per_row + j / WORD_BITS;
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            self.bits[word] |= mask;
        } else {
            self.bits[word] &= !mask;
        }
    }

    /// The packed words of row `i`; bits at column positions `>= cols` are zero.
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        let start = i * self.words_per_row;
        &self.bits[start..start + self.words_per_row]
    }

    /// Number of 1 entries in the whole matrix.
    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of 1 entries per row.
    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|i| self.row_words(i).iter().map(|w| w.count_ones() as usize).sum())
            .collect()
    }

    /// Number of 1 entries per column.
    pub fn col_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.cols];
        for i in 0..self.rows {
            for (j, s) in sums.iter_mut().enumerate() {
                *s += self.get(i, j) as usize;
            }
        }
        sums
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// The matrix with every entry inverted.
    pub fn complement(&self) -> BitMatrix {
        BitMatrix::from_fn(self.rows, self.cols, |i, j| !self.get(i, j))
    }

    /// The canonical text form accepted by [`BitMatrix::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.push(if self.get(i, j) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{})", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "\n  ")?;
            for j in 0..self.cols {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Tests whether `pattern` occurs as a classical submatrix of `a`: strictly
/// increasing row indices and strictly increasing column indices selecting
/// entries equal to the pattern everywhere.
///
/// Two-row patterns (the hot case) are matched with word-parallel column
/// typing; everything else falls back to backtracking over row tuples.
pub fn contains_pattern(a: &BitMatrix, pattern: &BitMatrix) -> bool {
    assert!(
        pattern.rows() > 0 && pattern.cols() > 0,
        "pattern must be nonempty"
    );
    if pattern.rows() > a.rows() || pattern.cols() > a.cols() {
        return false;
    }
    if pattern.rows() == 2 {
        return contains_two_row(a, pattern);
    }
    contains_generic(a, pattern)
}

/// Word-parallel matcher for 2-row patterns.
///
/// For each ordered row pair of `a`, columns are typed by the bit pair they
/// carry in those rows; the pattern's column-type word must then occur as a
/// subsequence of the column sequence, which greedy earliest matching decides.
fn contains_two_row(a: &BitMatrix, pattern: &BitMatrix) -> bool {
    debug_assert_eq!(pattern.rows(), 2);
    let want: Vec<(bool, bool)> = (0..pattern.cols())
        .map(|t| (pattern.get(0, t), pattern.get(1, t)))
        .collect();
    let words = a.words_per_row;
    let mut masks = vec![0u64; words];
    for i1 in 0..a.rows() {
        for i2 in i1 + 1..a.rows() {
            let r1 = a.row_words(i1);
            let r2 = a.row_words(i2);
            let mut pos = 0usize;
            let mut ok = true;
            for &(top, bottom) in &want {
                for w in 0..words {
                    let t = if top { r1[w] } else { !r1[w] };
                    let b = if bottom { r2[w] } else { !r2[w] };
                    masks[w] = t & b;
                }
                match next_one(&masks, pos, a.cols()) {
                    Some(j) => pos = j + 1,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return true;
            }
        }
    }
    false
}

/// First set bit at position `>= from` within `[0, limit)`, over packed words.
fn next_one(words: &[u64], from: usize, limit: usize) -> Option<usize> {
    if from >= limit {
        return None;
    }
    let mut w = from / WORD_BITS;
    let mut word = words[w] & (!0u64 << (from % WORD_BITS));
    loop {
        if word != 0 {
            let j = w * WORD_BITS + word.trailing_zeros() as usize;
            return (j < limit).then_some(j);
        }
        w += 1;
        if w * WORD_BITS >= limit || w >= words.len() {
            return None;
        }
        word = words[w];
    }
}

fn contains_generic(a: &BitMatrix, pattern: &BitMatrix) -> bool {
    let mut chosen = Vec::with_capacity(pattern.rows());
    choose_rows(a, pattern, 0, &mut chosen)
}

fn choose_rows(a: &BitMatrix, pattern: &BitMatrix, start: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == pattern.rows() {
        return columns_match(a, pattern, chosen);
    }
    let needed = pattern.rows() - chosen.len();
    for i in start..=a.rows().saturating_sub(needed) {
        chosen.push(i);
        if choose_rows(a, pattern, i + 1, chosen) {
            chosen.pop();
            return true;
        }
        chosen.pop();
    }
    false
}

/// Greedy left-to-right column matching for a fixed row selection. Taking the
/// earliest column that matches each pattern column is complete: any valid
/// increasing column selection can be exchanged down to the greedy one.
fn columns_match(a: &BitMatrix, pattern: &BitMatrix, rows: &[usize]) -> bool {
    let mut t = 0;
    for j in 0..a.cols() {
        if a.cols() - j < pattern.cols() - t {
            return false;
        }
        let matches = rows
            .iter()
            .enumerate()
            .all(|(s, &i)| a.get(i, j) == pattern.get(s, t));
        if matches {
            t += 1;
            if t == pattern.cols() {
                return true;
            }
        }
    }
    false
}
