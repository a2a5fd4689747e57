//! Exhaustive ground truth for small shapes.
//!
//! Everything here recomputes facts about (0,1)-matrices by brute force,
//! independently of the closed forms in [`crate::count`] and the series in
//! [`crate::series`]. The enumeration walks every bit pattern of an m x n
//! matrix, so all entry points guard on the cell count.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bitmatrix::BitMatrix;
use crate::classify;

/// Default cell-count guard for [`enumerate`].
pub const DEFAULT_MAX_CELLS: usize = 28;

/// Default cell-count guard for [`acyclic_orientations`].
pub const DEFAULT_ORIENTATION_CELLS: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("shape {m}x{n} has {} cells, above the guard of {max_cells}", m * n)]
    TooManyCells { m: usize, n: usize, max_cells: usize },
}

/// Tallies from one exhaustive sweep over all 2^(m*n) matrices.
///
/// `d_by_order[k]` counts matrices that decompose into exactly `k` blocks;
/// the `tilde` variants count only matrices with no zero row and no zero
/// column. `lonesum` always equals `d_by_order[0] + d_by_order[1]`.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub m: usize,
    pub n: usize,
    pub total: u64,
    pub lonesum: u64,
    pub tilde_lonesum: u64,
    pub d_by_order: Vec<u64>,
    pub tilde_d_by_order: Vec<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone)]
struct Tally {
    d: Vec<u64>,
    tilde_d: Vec<u64>,
}

impl Tally {
    fn new(orders: usize) -> Self {
        Tally { d: vec![0; orders], tilde_d: vec![0; orders] }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.d.iter_mut().zip(&other.d) {
            *a += b;
        }
        for (a, b) in self.tilde_d.iter_mut().zip(&other.tilde_d) {
            *a += b;
        }
        self
    }
}

/// Splits `code` into row bitmasks, low rows first, `n` bits per row.
#[inline]
fn decode_rows(code: u64, m: usize, n: usize, rows: &mut [u32]) {
    let mask = if n == 0 { 0 } else { (1u64 << n) - 1 };
    for (i, slot) in rows.iter_mut().enumerate().take(m) {
        *slot = ((code >> (i * n)) & mask) as u32;
    }
}

/// Block count of the matrix given as row bitmasks, or `None` if it is not
/// a disjoint union of chain blocks.
///
/// A matrix decomposes exactly when every pair of row supports and every
/// pair of column supports is disjoint or nested; the order is then the
/// number of connected components of the intersection graph on nonzero
/// rows. This route shares no code with [`crate::classify`], which the
/// tests exploit for cross-validation.
fn mask_order(rows: &[u32], n: usize) -> Option<usize> {
    for i in 0..rows.len() {
        let ri = rows[i];
        if ri == 0 {
            continue;
        }
        for &rj in &rows[i + 1..] {
            let inter = ri & rj;
            if inter != 0 && inter != ri && inter != rj {
                return None;
            }
        }
    }

    let mut cols = [0u32; 32];
    for (i, &row) in rows.iter().enumerate() {
        let mut r = row;
        while r != 0 {
            let j = r.trailing_zeros() as usize;
            cols[j] |= 1 << i;
            r &= r - 1;
        }
    }
    for a in 0..n {
        let ca = cols[a];
        if ca == 0 {
            continue;
        }
        for &cb in &cols[a + 1..n] {
            let inter = ca & cb;
            if inter != 0 && inter != ca && inter != cb {
                return None;
            }
        }
    }

    // Rows sharing a column intersect, so merging overlapping unions
    // computes the components of the intersection graph.
    let mut blocks = [0u32; 32];
    let mut nb = 0;
    for &r in rows {
        if r == 0 {
            continue;
        }
        let mut cur = r;
        let mut kept = 0;
        for t in 0..nb {
            if blocks[t] & cur != 0 {
                cur |= blocks[t];
            } else {
                blocks[kept] = blocks[t];
                kept += 1;
            }
        }
        blocks[kept] = cur;
        nb = kept + 1;
    }
    Some(nb)
}

/// Classifies every m x n bit pattern and tallies the outcomes.
///
/// Runs in parallel over contiguous code ranges; the tallies are plain sums,
/// so the result does not depend on the worker count. Refuses shapes with
/// more than `max_cells` cells.
pub fn enumerate(m: usize, n: usize, max_cells: usize) -> Result<OracleReport, OracleError> {
    if m * n > max_cells {
        return Err(OracleError::TooManyCells { m, n, max_cells });
    }
    let start = Instant::now();
    let total: u64 = 1 << (m * n);
    let orders = m.min(n) + 1;
    let full: u32 = if n == 0 { 0 } else { ((1u64 << n) - 1) as u32 };

    let tally = (0..total)
        .into_par_iter()
        .fold(
            || Tally::new(orders),
            |mut tally, code| {
                let mut rows = [0u32; 32];
                decode_rows(code, m, n, &mut rows);
                let rows = &rows[..m];
                if let Some(k) = mask_order(rows, n) {
                    tally.d[k] += 1;
                    let mut union = 0u32;
                    let mut zero_row = false;
                    for &r in rows {
                        union |= r;
                        zero_row |= r == 0;
                    }
                    if !zero_row && union == full {
                        tally.tilde_d[k] += 1;
                    }
                }
                tally
            },
        )
        .reduce(|| Tally::new(orders), Tally::merge);

    let sum_first_two = |v: &[u64]| v.iter().take(2).sum::<u64>();
    Ok(OracleReport {
        m,
        n,
        total,
        lonesum: sum_first_two(&tally.d),
        tilde_lonesum: sum_first_two(&tally.tilde_d),
        d_by_order: tally.d,
        tilde_d_by_order: tally.tilde_d,
        elapsed: start.elapsed(),
    })
}

/// Number of (0,1)-matrices with the given row and column sums.
///
/// Counts by placing rows one at a time, memoized on the multiset of
/// remaining column capacities; symmetric capacity classes contribute
/// binomial factors. Infeasible margins, including mismatched totals or
/// out-of-range entries, count zero matrices rather than erroring.
pub fn count_with_margins(row_sums: &[usize], col_sums: &[usize]) -> BigInt {
    let n = col_sums.len();
    let m = row_sums.len();
    if row_sums.iter().any(|&r| r > n) || col_sums.iter().any(|&c| c > m) {
        return BigInt::zero();
    }
    if row_sums.iter().sum::<usize>() != col_sums.iter().sum::<usize>() {
        return BigInt::zero();
    }

    // Placement order does not change the count; descending row sums make
    // the feasibility cut fire early.
    let mut rows: Vec<usize> = row_sums.to_vec();
    rows.sort_unstable_by(|a, b| b.cmp(a));
    let mut caps: Vec<usize> = col_sums.to_vec();
    caps.sort_unstable_by(|a, b| b.cmp(a));

    let binom = crate::series::pascal_rows(n.max(1));
    let mut memo: HashMap<(usize, Vec<usize>), BigInt> = HashMap::new();
    place(0, caps, &rows, &binom, &mut memo)
}

/// Feasibility cut: with remaining demands sorted descending, every prefix
/// must fit under the capacities clipped at the prefix length.
fn margins_feasible(demands: &[usize], caps: &[usize]) -> bool {
    let mut prefix = 0usize;
    for t in 1..=demands.len() {
        prefix += demands[t - 1];
        let supply: usize = caps.iter().map(|&c| c.min(t)).sum();
        if prefix > supply {
            return false;
        }
    }
    true
}

fn place(
    i: usize,
    caps: Vec<usize>,
    rows: &[usize],
    binom: &[Vec<BigInt>],
    memo: &mut HashMap<(usize, Vec<usize>), BigInt>,
) -> BigInt {
    if i == rows.len() {
        return if caps.iter().all(|&c| c == 0) { BigInt::one() } else { BigInt::zero() };
    }
    if let Some(hit) = memo.get(&(i, caps.clone())) {
        return hit.clone();
    }
    if !margins_feasible(&rows[i..], &caps) {
        memo.insert((i, caps), BigInt::zero());
        return BigInt::zero();
    }

    // Group equal capacities; choosing t columns out of a class of c equal
    // ones contributes binom(c, t) labelled placements.
    let mut classes: Vec<(usize, usize)> = Vec::new();
    for &c in &caps {
        if c == 0 {
            continue;
        }
        match classes.last_mut() {
            Some((v, cnt)) if *v == c => *cnt += 1,
            _ => classes.push((c, 1)),
        }
    }
    let zeros = caps.len() - classes.iter().map(|&(_, c)| c).sum::<usize>();

    let mut total = BigInt::zero();
    let mut takes = vec![0usize; classes.len()];
    distribute(0, rows[i], &classes, &mut takes, &mut |takes| {
        let mut ways = BigInt::one();
        let mut next: Vec<usize> = Vec::with_capacity(caps.len());
        for (g, &(v, cnt)) in classes.iter().enumerate() {
            ways *= &binom[cnt][takes[g]];
            for _ in 0..cnt - takes[g] {
                next.push(v);
            }
            for _ in 0..takes[g] {
                next.push(v - 1);
            }
        }
        next.extend(std::iter::repeat(0).take(zeros));
        next.sort_unstable_by(|a, b| b.cmp(a));
        total += ways * place(i + 1, next, rows, binom, memo);
    });

    memo.insert((i, caps), total.clone());
    total
}

/// Enumerates all ways to take `remaining` columns across capacity classes.
fn distribute(
    g: usize,
    remaining: usize,
    classes: &[(usize, usize)],
    takes: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if g == classes.len() {
        if remaining == 0 {
            emit(takes);
        }
        return;
    }
    let available: usize = classes[g..].iter().map(|&(_, c)| c).sum();
    if remaining > available {
        return;
    }
    let cap = classes[g].1.min(remaining);
    for t in 0..=cap {
        takes[g] = t;
        distribute(g + 1, remaining - t, classes, takes, emit);
    }
    takes[g] = 0;
}

/// The twelve minimal obstructions to decomposability: all row and column
/// permutations of a fixed 2x3 matrix and of its transpose.
pub fn forbidden_set() -> Vec<BitMatrix> {
    const SHAPES: [(&str, usize, usize); 12] = [
        ("110101", 2, 3),
        ("101110", 2, 3),
        ("110011", 2, 3),
        ("011110", 2, 3),
        ("101011", 2, 3),
        ("011101", 2, 3),
        ("111001", 3, 2),
        ("110110", 3, 2),
        ("101101", 3, 2),
        ("011110", 3, 2),
        ("100111", 3, 2),
        ("011011", 3, 2),
    ];
    SHAPES
        .iter()
        .map(|&(bits, m, n)| {
            let bytes = bits.as_bytes();
            BitMatrix::from_fn(m, n, |i, j| bytes[i * n + j] == b'1')
        })
        .collect()
}

/// Checks, over every m x n bit pattern, that the classifier accepts a
/// matrix exactly when it contains none of the twelve obstructions.
pub fn thm1_equivalence(m: usize, n: usize, max_cells: usize) -> Result<bool, OracleError> {
    if m * n > max_cells {
        return Err(OracleError::TooManyCells { m, n, max_cells });
    }
    let patterns = forbidden_set();
    let total: u64 = 1 << (m * n);
    Ok((0..total).into_par_iter().all(|code| {
        let a = matrix_from_code(code, m, n);
        let decomposable = classify::classify(&a).is_decomposable();
        let clean = patterns.iter().all(|p| !crate::bitmatrix::contains_pattern(&a, p));
        decomposable == clean
    }))
}

/// Checks, over every m x n bit pattern, that a matrix and its complement
/// are both decomposable exactly when the matrix is lonesum or splits into
/// two full blocks covering every row and column.
pub fn thm2_equivalence(m: usize, n: usize, max_cells: usize) -> Result<bool, OracleError> {
    if m * n > max_cells {
        return Err(OracleError::TooManyCells { m, n, max_cells });
    }
    let total: u64 = 1 << (m * n);
    Ok((0..total).into_par_iter().all(|code| {
        let a = matrix_from_code(code, m, n);
        let both = classify::classify(&a).is_decomposable()
            && classify::classify(&a.complement()).is_decomposable();
        let structural = classify::is_lonesum(&a) || classify::is_two_ones_blocks(&a);
        both == structural
    }))
}

/// Number of acyclic orientations of the complete bipartite graph with
/// parts of sizes `m` and `n`, by checking all 2^(m*n) orientations.
pub fn acyclic_orientations(m: usize, n: usize, max_cells: usize) -> Result<BigInt, OracleError> {
    if m * n > max_cells {
        return Err(OracleError::TooManyCells { m, n, max_cells });
    }
    let total: u64 = 1 << (m * n);
    let count = (0..total)
        .into_par_iter()
        .filter(|&code| orientation_is_acyclic(code, m, n))
        .count();
    Ok(BigInt::from(count))
}

/// Kahn peeling on the orientation encoded by `code`: bit i*n+j set means
/// the edge runs from row vertex i to column vertex j.
fn orientation_is_acyclic(code: u64, m: usize, n: usize) -> bool {
    let verts = m + n;
    let mut indegree = [0u32; 64];
    for i in 0..m {
        for j in 0..n {
            if code >> (i * n + j) & 1 == 1 {
                indegree[m + j] += 1;
            } else {
                indegree[i] += 1;
            }
        }
    }
    let mut stack = [0usize; 64];
    let mut top = 0;
    for v in 0..verts {
        if indegree[v] == 0 {
            stack[top] = v;
            top += 1;
        }
    }
    let mut removed = 0;
    while top > 0 {
        top -= 1;
        let v = stack[top];
        removed += 1;
        if v < m {
            for j in 0..n {
                if code >> (v * n + j) & 1 == 1 {
                    indegree[m + j] -= 1;
                    if indegree[m + j] == 0 {
                        stack[top] = m + j;
                        top += 1;
                    }
                }
            }
        } else {
            let j = v - m;
            for i in 0..m {
                if code >> (i * n + j) & 1 == 0 {
                    indegree[i] -= 1;
                    if indegree[i] == 0 {
                        stack[top] = i;
                        top += 1;
                    }
                }
            }
        }
    }
    removed == verts
}

fn matrix_from_code(code: u64, m: usize, n: usize) -> BitMatrix {
    BitMatrix::from_fn(m, n, |i, j| code >> (i * n + j) & 1 == 1)
}
