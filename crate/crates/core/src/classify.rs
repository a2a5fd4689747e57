//! Lonesum tests, block-diagonal decomposability, and the unique Ferrers
//! decomposition.
//!
//! A matrix is lonesum when its row supports form a chain under inclusion;
//! it is decomposable when every connected component of its bipartite
//! support graph induces a lonesum submatrix. Decomposability fails exactly
//! when some 2x3 or 3x2 forbidden pattern occurs, and [`classify`] reports
//! such an occurrence as the witness.

use serde::Serialize;

use crate::bitmatrix::BitMatrix;

/// Result of [`classify`]: the block count, or a forbidden-pattern location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Decomposable { order: usize },
    NotDecomposable { witness: PatternWitness },
}

impl Classification {
    pub fn is_decomposable(&self) -> bool {
        matches!(self, Classification::Decomposable { .. })
    }
}

/// Row and column indices (strictly increasing) of a forbidden submatrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// One maximal nonzero block: original indices plus the partition shape the
/// block sorts to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FerrersBlock {
    #[serde(rename = "rows")]
    pub row_indices: Vec<usize>,
    #[serde(rename = "cols")]
    pub col_indices: Vec<usize>,
    pub shape: Vec<usize>,
}

impl FerrersBlock {
    pub fn cell_count(&self) -> usize {
        self.shape.iter().sum()
    }

    fn min_row(&self) -> usize {
        *self.row_indices.iter().min().expect("block has rows")
    }
}

/// Canonical decomposition: blocks plus the untouched zero rows/columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub order: usize,
    pub blocks: Vec<FerrersBlock>,
    pub zero_rows: Vec<usize>,
    pub zero_cols: Vec<usize>,
}

impl Decomposition {
    /// Rebuilds the original matrix from the block data alone.
    pub fn reassemble(&self) -> BitMatrix {
        let rows = self.blocks.iter().map(|b| b.row_indices.len()).sum::<usize>()
            + self.zero_rows.len();
        let cols = self.blocks.iter().map(|b| b.col_indices.len()).sum::<usize>()
            + self.zero_cols.len();
        let mut m = BitMatrix::zeros(rows, cols);
        for block in &self.blocks {
            for (s, &i) in block.row_indices.iter().enumerate() {
                for &j in &block.col_indices[..block.shape[s]] {
                    m.set(i, j, true);
                }
            }
        }
        m
    }
}

/// Thm-2-style joint classification of a matrix and its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    /// Both sides decomposable because the matrix itself is lonesum.
    Lonesum,
    /// Both sides decomposable: two all-ones diagonal blocks (up to
    /// row/column permutation), no zero rows or columns.
    TwoOnesBlocks,
    OnlyAFails,
    OnlyComplementFails,
    BothFail,
}

/// True iff the 1s are upper-left justified: every row a prefix of 1s and
/// row sums weakly decreasing.
pub fn is_ferrers(a: &BitMatrix) -> bool {
    let sums = a.row_sums();
    sums.windows(2).all(|w| w[0] >= w[1])
        && (0..a.rows()).all(|i| (0..sums[i]).all(|j| a.get(i, j)))
}

fn support_subset(a: &BitMatrix, small: usize, big: usize) -> bool {
    a.row_words(small)
        .iter()
        .zip(a.row_words(big))
        .all(|(s, b)| s & !b == 0)
}

/// True iff the matrix is uniquely determined by its margins; decided by the
/// chain condition on row supports (sort by row sum descending, require each
/// support to contain the next).
pub fn is_lonesum(a: &BitMatrix) -> bool {
    let sums = a.row_sums();
    let mut order: Vec<usize> = (0..a.rows()).collect();
    order.sort_by(|&i, &j| sums[j].cmp(&sums[i]));
    order
        .windows(2)
        .all(|w| support_subset(a, w[1], w[0]))
}

/// Connected components of the bipartite support graph (rows and columns as
/// vertices, 1-entries as edges), plus the all-zero rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// (row indices, column indices) per component, both ascending; listed
    /// by smallest row index.
    pub blocks: Vec<(Vec<usize>, Vec<usize>)>,
    pub zero_rows: Vec<usize>,
    pub zero_cols: Vec<usize>,
}

pub fn components(a: &BitMatrix) -> Components {
    let (m, n) = (a.rows(), a.cols());
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..m {
        for j in 0..n {
            if a.get(i, j) {
                col_rows[j].push(i);
            }
        }
    }
    let row_sums = a.row_sums();
    let mut row_seen = vec![false; m];
    let mut col_seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..m {
        if row_seen[start] || row_sums[start] == 0 {
            continue;
        }
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        let mut queue = vec![start];
        row_seen[start] = true;
        while let Some(i) = queue.pop() {
            rows.push(i);
            for j in 0..n {
                if a.get(i, j) && !col_seen[j] {
                    col_seen[j] = true;
                    cols.push(j);
                    for &i2 in &col_rows[j] {
                        if !row_seen[i2] {
                            row_seen[i2] = true;
                            queue.push(i2);
                        }
                    }
                }
            }
        }
        rows.sort_unstable();
        cols.sort_unstable();
        blocks.push((rows, cols));
    }
    Components {
        blocks,
        zero_rows: (0..m).filter(|&i| row_sums[i] == 0).collect(),
        zero_cols: (0..n).filter(|&j| col_rows[j].is_empty()).collect(),
    }
}

fn component_is_lonesum(a: &BitMatrix, rows: &[usize]) -> bool {
    // Component rows carry their full supports, so the chain condition can
    // be checked on whole rows without building the induced submatrix.
    let sums = a.row_sums();
    let mut order: Vec<usize> = rows.to_vec();
    order.sort_by(|&i, &j| sums[j].cmp(&sums[i]));
    order
        .windows(2)
        .all(|w| support_subset(a, w[1], w[0]))
}

/// Decides decomposability via components, reporting the number of nonzero
/// blocks or a forbidden-pattern witness. All-zero and empty matrices are
/// `Decomposable { order: 0 }`.
pub fn classify(a: &BitMatrix) -> Classification {
    let comps = components(a);
    if comps
        .blocks
        .iter()
        .all(|(rows, _)| component_is_lonesum(a, rows))
    {
        Classification::Decomposable {
            order: comps.blocks.len(),
        }
    } else {
        Classification::NotDecomposable {
            witness: find_witness(a).expect("non-decomposable matrix has a witness"),
        }
    }
}

/// Locates a forbidden 2x3 or 3x2 submatrix, preferring the candidate whose
/// concatenated (rows, cols) index 5-tuple is lexicographically smallest.
///
/// A 2x3 occurrence is equivalent to a row pair whose supports intersect
/// with private columns on both sides; the column triple then consists of
/// one column of each type (both, first-only, second-only). Dually for 3x2.
fn find_witness(a: &BitMatrix) -> Option<PatternWitness> {
    let two_by_three = find_bad_pair(a.rows(), a.cols(), |i, j| a.get(i, j))
        .map(|(i1, i2, js)| (
            [i1, i2, js[0], js[1], js[2]],
            PatternWitness {
                rows: vec![i1, i2],
                cols: js.to_vec(),
            },
        ));
    let three_by_two = find_bad_pair(a.cols(), a.rows(), |j, i| a.get(i, j))
        .map(|(j1, j2, is)| (
            [is[0], is[1], is[2], j1, j2],
            PatternWitness {
                rows: is.to_vec(),
                cols: vec![j1, j2],
            },
        ));
    match (two_by_three, three_by_two) {
        (Some((ka, wa)), Some((kb, wb))) => Some(if ka <= kb { wa } else { wb }),
        (Some((_, w)), None) | (None, Some((_, w))) => Some(w),
        (None, None) => None,
    }
}

/// First line pair (lexicographic) whose supports are neither disjoint nor
/// nested, together with the smallest increasing position triple realizing
/// the types (1,1), (1,0), (0,1) in some order.
fn find_bad_pair(
    lines: usize,
    positions: usize,
    entry: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize, [usize; 3])> {
    for l1 in 0..lines {
        for l2 in l1 + 1..lines {
            let mut both = None;
            let mut first = None;
            let mut second = None;
            for p in 0..positions {
                match (entry(l1, p), entry(l2, p)) {
                    (true, true) => both = both.or(Some(p)),
                    (true, false) => first = first.or(Some(p)),
                    (false, true) => second = second.or(Some(p)),
                    (false, false) => {}
                }
            }
            if let (Some(b), Some(f), Some(s)) = (both, first, second) {
                let mut triple = [b, f, s];
                triple.sort_unstable();
                return Some((l1, l2, triple));
            }
        }
    }
    None
}

/// Computes the canonical decomposition, or the witness when the input is
/// not decomposable.
///
/// Within a block, rows are sorted by (row sum desc, index asc) and columns
/// by (column sum desc, index asc); blocks are sorted by (cell count desc,
/// shape lexicographically desc, smallest row index asc).
pub fn decompose(a: &BitMatrix) -> Result<Decomposition, PatternWitness> {
    let comps = components(a);
    let row_sums = a.row_sums();
    let col_sums = a.col_sums();
    let mut blocks = Vec::with_capacity(comps.blocks.len());
    for (rows, cols) in &comps.blocks {
        if !component_is_lonesum(a, rows) {
            return Err(find_witness(a).expect("non-decomposable matrix has a witness"));
        }
        let mut row_indices = rows.clone();
        row_indices.sort_by(|&i, &j| row_sums[j].cmp(&row_sums[i]).then(i.cmp(&j)));
        let mut col_indices = cols.clone();
        col_indices.sort_by(|&i, &j| col_sums[j].cmp(&col_sums[i]).then(i.cmp(&j)));
        let shape: Vec<usize> = row_indices.iter().map(|&i| row_sums[i]).collect();
        for (s, &i) in row_indices.iter().enumerate() {
            for (t, &j) in col_indices.iter().enumerate() {
                assert_eq!(
                    a.get(i, j),
                    t < shape[s],
                    "sorted block is not a Ferrers matrix"
                );
            }
        }
        blocks.push(FerrersBlock {
            row_indices,
            col_indices,
            shape,
        });
    }
    blocks.sort_by(|x, y| {
        y.cell_count()
            .cmp(&x.cell_count())
            .then_with(|| y.shape.cmp(&x.shape))
            .then_with(|| x.min_row().cmp(&y.min_row()))
    });
    Ok(Decomposition {
        order: blocks.len(),
        blocks,
        zero_rows: comps.zero_rows,
        zero_cols: comps.zero_cols,
    })
}

/// True iff the decomposition is exactly two all-ones rectangular blocks
/// with no zero rows or columns.
pub fn is_two_ones_blocks(a: &BitMatrix) -> bool {
    match decompose(a) {
        Ok(d) => {
            d.order == 2
                && d.zero_rows.is_empty()
                && d.zero_cols.is_empty()
                && d.blocks
                    .iter()
                    .all(|b| b.shape.iter().all(|&part| part == b.col_indices.len()))
        }
        Err(_) => false,
    }
}

/// Joint classification of the matrix and its complement.
pub fn pair_classify(a: &BitMatrix) -> PairClass {
    let a_ok = classify(a).is_decomposable();
    let c_ok = classify(&a.complement()).is_decomposable();
    match (a_ok, c_ok) {
        (true, true) => {
            if is_lonesum(a) {
                PairClass::Lonesum
            } else {
                debug_assert!(is_two_ones_blocks(a));
                PairClass::TwoOnesBlocks
            }
        }
        (false, true) => PairClass::OnlyAFails,
        (true, false) => PairClass::OnlyComplementFails,
        (false, false) => PairClass::BothFail,
    }
}
