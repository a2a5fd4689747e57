//! Exact truncated EGF engine and the generating functions for lonesum and
//! decomposable matrix counts.
//!
//! Everything is driven by the kernel g = e^x + e^y - e^(x+y):
//! 1/g generates the counts with no zero rows or columns, e^(x+y)/g the
//! lonesum counts, e^(x+y)/k! (1/g - 1)^k the order-k decomposable counts,
//! and exp(1/g + x + y - 1) their total.

pub mod biseries;
pub mod polybernoulli;
pub mod uniseries;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use biseries::BiSeries;
pub use polybernoulli::{
    kst_script_b, li_star_series, multi_pb_star, poly_bernoulli_polynomial, verify_eq16,
    verify_prop6,
};
pub use uniseries::UniSeries;

/// Default total-degree truncation; every built-in check needs at most 10.
pub const DEFAULT_ORDER: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("reciprocal requires constant term exactly 1")]
    NonUnitConstant,
    #[error("exponential requires constant term 0")]
    NonzeroConstant,
    #[error("positive polylogarithm index {0} is not supported")]
    PositiveIndex(i64),
    #[error("coefficient at ({m},{n}) is not an integer: {value}")]
    NonInteger { m: usize, n: usize, value: String },
}

/// Pascal triangle rows 0..=n as big integers.
pub(crate) fn pascal_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for r in 1..=n {
        let prev = &rows[r - 1];
        let mut row = vec![BigInt::from(1); r + 1];
        for k in 1..r {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows
}

/// The kernel g = e^x + e^y - e^(x+y).
pub fn egf_core(order: usize) -> BiSeries {
    BiSeries::elementary(1, 0, order)
        .add(&BiSeries::elementary(0, 1, order))
        .sub(&BiSeries::elementary(1, 1, order))
}

/// 1/g: generates the lonesum counts with no zero rows or columns.
pub fn egf_tilde_lonesum(order: usize) -> BiSeries {
    egf_core(order)
        .recip()
        .expect("kernel has unit constant term")
}

/// e^(x+y)/g: generates L(m,n).
pub fn egf_lonesum(order: usize) -> BiSeries {
    BiSeries::elementary(1, 1, order).mul(&egf_tilde_lonesum(order))
}

/// e^(x+y)/k! (1/g - 1)^k: generates D_k(m,n).
pub fn egf_dk(k: usize, order: usize) -> BiSeries {
    let bracket = egf_tilde_lonesum(order).sub(&BiSeries::one(order));
    let mut kfact = BigInt::from(1);
    for t in 2..=k {
        kfact *= BigInt::from(t);
    }
    BiSeries::elementary(1, 1, order)
        .mul(&bracket.pow(k))
        .scale(&BigRational::new(BigInt::from(1), kfact))
}

/// exp(1/g + x + y - 1): generates D(m,n).
pub fn egf_d(order: usize) -> BiSeries {
    let argument = egf_tilde_lonesum(order)
        .sub(&BiSeries::one(order))
        .add(&BiSeries::x_plus_y(order));
    argument.exp().expect("argument has zero constant term")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::CountTable;
    use num_traits::Zero;

    #[test]
    fn dk_series_matches_table_values() {
        let d1 = egf_dk(1, 8);
        assert_eq!(d1.extract_int(2, 2), Ok(BigInt::from(13)));
        assert_eq!(d1.extract_int(3, 2), Ok(BigInt::from(45)));
        let d2 = egf_dk(2, 8);
        assert_eq!(d2.extract_int(3, 3), Ok(BigInt::from(108)));
        let d3 = egf_dk(3, 8);
        assert_eq!(d3.extract_int(2, 2), Ok(BigInt::from(0)));
    }

    #[test]
    fn order_zero_series_is_all_ones() {
        let d0 = egf_dk(0, 6);
        for m in 0..=6usize {
            for n in 0..=(6 - m) {
                assert_eq!(d0.extract_int(m, n), Ok(BigInt::from(1)));
            }
        }
    }

    #[test]
    fn total_series_matches_table_values() {
        let d = egf_d(8);
        assert_eq!(d.extract_int(0, 0), Ok(BigInt::from(1)));
        assert_eq!(d.extract_int(2, 2), Ok(BigInt::from(16)));
        assert_eq!(d.extract_int(3, 3), Ok(BigInt::from(344)));
        assert_eq!(d.extract_int(3, 4), Ok(BigInt::from(1786)));
    }

    #[test]
    fn total_series_is_sum_over_orders() {
        let order = 8;
        let d = egf_d(order);
        let by_order: Vec<BiSeries> = (0..=order).map(|k| egf_dk(k, order)).collect();
        for m in 0..=order {
            for n in 0..=(order - m) {
                let sum: BigRational = (0..=m.min(n)).map(|k| by_order[k].extract(m, n)).sum();
                assert_eq!(d.extract(m, n), sum, "at ({m},{n})");
            }
        }
    }

    #[test]
    fn lonesum_series_matches_closed_form() {
        let mut t = CountTable::new();
        let l = egf_lonesum(8);
        for m in 0..=8usize {
            for n in 0..=(8 - m) {
                assert_eq!(l.extract_int(m, n), Ok(t.lonesum_count(m, n)), "at ({m},{n})");
            }
        }
        assert_eq!(l.extract_int(2, 2), Ok(BigInt::from(14)));
    }

    #[test]
    fn tilde_series_counts_are_nonnegative_integers() {
        let lt = egf_tilde_lonesum(8);
        assert_eq!(lt.extract_int(1, 1), Ok(BigInt::from(1)));
        assert_eq!(lt.extract_int(0, 0), Ok(BigInt::from(1)));
        assert_eq!(lt.extract_int(1, 0), Ok(BigInt::from(0)));
        for m in 0..=8usize {
            for n in 0..=(8 - m) {
                let v = lt.extract_int(m, n).expect("integer coefficient");
                assert!(v >= BigInt::zero(), "negative count at ({m},{n})");
            }
        }
    }

    #[test]
    fn series_and_closed_form_agree_for_dk() {
        let mut t = CountTable::new();
        for k in 0..=4usize {
            let s = egf_dk(k, 8);
            for m in 0..=8usize {
                for n in 0..=(8 - m) {
                    assert_eq!(
                        s.extract_int(m, n),
                        Ok(t.d_k(k, m, n)),
                        "at k={k}, ({m},{n})"
                    );
                }
            }
        }
    }
}
