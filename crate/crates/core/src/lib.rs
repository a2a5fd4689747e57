//! Exact classification, decomposition and enumeration of
//! lonesum-decomposable (0,1)-matrices.
//!
//! A (0,1)-matrix is *lonesum* when it is the only matrix with its row and
//! column sums, which happens exactly when its row supports form a chain
//! under inclusion. A matrix is *lonesum-decomposable* when some row and
//! column permutation turns it into a block-diagonal matrix whose diagonal
//! blocks are lonesum with no zero rows or columns; the number of blocks is
//! the *order* of the matrix and the blocks themselves are unique up to
//! arrangement.
//!
//! The crate computes the same counting sequences by several unrelated
//! routes and insists they agree:
//!
//! * [`count`] evaluates closed forms built from Stirling numbers, exactly,
//!   over big integers, together with prime congruences satisfied by the
//!   counts.
//! * [`series`] extracts coefficients from truncated two-variable
//!   exponential generating functions over exact rationals, and evaluates
//!   the counts a third way through finite multiple-polylogarithm sums.
//! * [`oracle`] enumerates every matrix of a small shape and tallies what
//!   it sees, which keeps the formulas honest.
//!
//! [`bitmatrix`] holds the packed matrix representation and submatrix
//! pattern matching, [`classify`] the structural algorithms, and [`cli`]
//! the command-line frontend.

pub mod bitmatrix;
pub mod classify;
pub mod cli;
pub mod count;
pub mod oracle;
pub mod reference;
pub mod series;
