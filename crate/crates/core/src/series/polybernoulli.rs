//! Poly-Bernoulli polynomials of nonpositive index, their multi-index star
//! variant, and the matrix-count identities built on them.
//!
//! The star polylogarithm with indices k_1..k_r (all <= 0 here) is
//! Li*(z) = sum over 1 <= m_1 <= ... <= m_r of z^{m_r} / prod m_i^{k_i};
//! with nonpositive indices every weight is a finite integer, accumulated by
//! iterated prefix sums. B_{n,*}^{(k_1..k_r)}(x) is the n-th EGF coefficient
//! of e^{-xt} Li*(1-e^{-t})/(1-e^{-t}); the r = 1 case is the ordinary
//! poly-Bernoulli polynomial B_n^{(k)}(x), and B_n^{(-m)}(0) = L(m,n).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::uniseries::UniSeries;
use super::{egf_core, SeriesError};
use crate::count::CountTable;

/// Weight of z^M in Li*: c[M] = M^{-k_r} * sum over chains
/// m_1 <= ... <= m_{r-1} <= M of prod m_i^{-k_i}, computed by prefix sums.
fn star_weights(indices: &[i64], max_m: usize) -> Result<Vec<BigInt>, SeriesError> {
    assert!(!indices.is_empty(), "at least one index required");
    if let Some(&k) = indices.iter().find(|&&k| k > 0) {
        return Err(SeriesError::PositiveIndex(k));
    }
    let mut w = vec![BigInt::one(); max_m + 1];
    for &k in &indices[..indices.len() - 1] {
        let e = (-k) as u32;
        let mut next = vec![BigInt::zero(); max_m + 1];
        let mut acc = BigInt::zero();
        for m in 1..=max_m {
            acc += BigInt::from(m).pow(e) * &w[m];
            next[m] = acc.clone();
        }
        w = next;
    }
    let e = (-indices[indices.len() - 1]) as u32;
    Ok((0..=max_m)
        .map(|m| {
            if m == 0 {
                BigInt::zero()
            } else {
                BigInt::from(m).pow(e) * &w[m]
            }
        })
        .collect())
}

/// Li*_{k_1..k_r}(1 - e^(-t)) truncated at the given order.
pub fn li_star_series(indices: &[i64], order: usize) -> Result<UniSeries, SeriesError> {
    let c = star_weights(indices, order)?;
    let z = UniSeries::one_minus_exp_neg(order);
    let mut zp = UniSeries::one(order);
    let mut acc = UniSeries::zeros(order);
    for coeff in c.iter().skip(1) {
        zp = zp.mul(&z);
        acc = acc.add(&zp.scale_int(coeff));
    }
    Ok(acc)
}

/// Li*(1-e^(-t)) / (1-e^(-t)) truncated at the given order. Dividing out z
/// symbolically (z^M / z = z^{M-1}) avoids inverting a series with zero
/// constant term.
fn li_star_over_z(indices: &[i64], order: usize) -> Result<UniSeries, SeriesError> {
    let c = star_weights(indices, order + 1)?;
    let z = UniSeries::one_minus_exp_neg(order);
    let mut zp = UniSeries::one(order);
    let mut acc = zp.scale_int(&c[1]);
    for coeff in c.iter().skip(2) {
        zp = zp.mul(&z);
        acc = acc.add(&zp.scale_int(coeff));
    }
    Ok(acc)
}

/// B_{n,*}^{(k_1..k_r)}(x0): n-th EGF coefficient of
/// e^(-x0 t) Li*(1-e^(-t))/(1-e^(-t)).
pub fn multi_pb_star(
    indices: &[i64],
    x0: &BigRational,
    n: usize,
) -> Result<BigRational, SeriesError> {
    let ratio = li_star_over_z(indices, n)?;
    let damp = UniSeries::exp_t(&-x0.clone(), n);
    Ok(damp.mul(&ratio).coeff(n))
}

/// The ordinary poly-Bernoulli polynomial B_n^{(k)}(x0), k <= 0.
pub fn poly_bernoulli_polynomial(
    index: i64,
    x0: &BigRational,
    n: usize,
) -> Result<BigRational, SeriesError> {
    multi_pb_star(&[index], x0, n)
}

fn int_rat(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

fn sign(parity: usize) -> BigInt {
    if parity % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Checks D_k(m,n) = ((-1)^k/k!) (1 + sum_{i=1}^k C(k,i)(-1)^i
/// B_{n,*}^{(0^{i-1},-m)}(i-1)) against the closed form.
pub fn verify_prop6(table: &mut CountTable, k: usize, m: usize, n: usize) -> bool {
    let mut inner = BigRational::one();
    for i in 1..=k {
        let mut indices = vec![0i64; i - 1];
        indices.push(-(m as i64));
        let x0 = int_rat(BigInt::from(i as i64 - 1));
        let b = multi_pb_star(&indices, &x0, n).expect("nonpositive indices");
        inner += int_rat(sign(i) * table.binom(k, i)) * b;
    }
    let rhs = inner * int_rat(sign(k)) / int_rat(table.factorial(k));
    rhs == int_rat(table.d_k(k, m, n))
}

/// Checks D_k(m,n) = ((-1)^k/k!) (1 + sum_{i=0}^{k-1} ((-1)^{i+1}/i!)
/// C(k,i+1) sum_{j=0}^i [i,j] B_n^{(-m-j)}(i)) against the closed form,
/// where [i,j] is the unsigned Stirling number of the first kind.
pub fn verify_eq16(table: &mut CountTable, k: usize, m: usize, n: usize) -> bool {
    let mut inner = BigRational::one();
    for i in 0..k {
        let x0 = int_rat(BigInt::from(i as i64));
        let mut js = BigRational::zero();
        for j in 0..=i {
            let b = poly_bernoulli_polynomial(-((m + j) as i64), &x0, n)
                .expect("nonpositive index");
            js += int_rat(table.stirling1u(i, j)) * b;
        }
        inner += int_rat(sign(i + 1) * table.binom(k, i + 1)) * js / int_rat(table.factorial(i));
    }
    let rhs = inner * int_rat(sign(k)) / int_rat(table.factorial(k));
    rhs == int_rat(table.d_k(k, m, n))
}

/// The Stirling-transformed value script-B_m^{(-l)}(n), computed two ways
/// and asserted equal:
/// (a) sum_{j=0}^n [n,j] B_m^{(-l-j)}(n);
/// (b) the (l,m) EGF coefficient of n! e^(x+y)/(e^x+e^y-e^(x+y))^{n+1}.
/// A mismatch is an implementation bug, so it panics rather than returning.
pub fn kst_script_b(table: &mut CountTable, l: usize, m: usize, n: usize) -> BigInt {
    let mut by_definition = BigRational::zero();
    for j in 0..=n {
        let x0 = int_rat(BigInt::from(n as i64));
        let b = poly_bernoulli_polynomial(-((l + j) as i64), &x0, m).expect("nonpositive index");
        by_definition += int_rat(table.stirling1u(n, j)) * b;
    }

    let order = l + m;
    let kernel = egf_core(order);
    let inv_pow = kernel
        .recip()
        .expect("kernel has unit constant term")
        .pow(n + 1);
    let series = super::biseries::BiSeries::elementary(1, 1, order)
        .mul(&inv_pow)
        .scale(&int_rat(table.factorial(n)));
    let by_coefficient = series.extract(l, m);

    assert_eq!(
        by_definition, by_coefficient,
        "script-B routes disagree at (l={l}, m={m}, n={n})"
    );
    assert!(
        by_definition.is_integer(),
        "script-B value at (l={l}, m={m}, n={n}) is not an integer"
    );
    by_definition.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn single_index_reproduces_lonesum_counts() {
        let mut t = CountTable::new();
        for m in 0..=8usize {
            for n in 0..=8usize {
                let b = poly_bernoulli_polynomial(-(m as i64), &rat(0), n).unwrap();
                assert_eq!(b, int_rat(t.lonesum_count(m, n)), "at ({m},{n})");
            }
        }
    }

    #[test]
    fn zeroth_coefficient_is_one() {
        for m in 0..5i64 {
            assert_eq!(poly_bernoulli_polynomial(-m, &rat(0), 0).unwrap(), rat(1));
            assert_eq!(poly_bernoulli_polynomial(-m, &rat(7), 0).unwrap(), rat(1));
        }
    }

    #[test]
    fn li_star_has_no_constant_term() {
        for indices in [vec![0i64], vec![-2], vec![0, -1], vec![0, 0, -3]] {
            let s = li_star_series(&indices, 5).unwrap();
            assert_eq!(s.coeff(0), rat(0));
        }
    }

    #[test]
    fn positive_indices_are_rejected() {
        assert_eq!(
            li_star_series(&[2], 4),
            Err(SeriesError::PositiveIndex(2))
        );
        assert_eq!(
            multi_pb_star(&[0, 1], &rat(0), 3),
            Err(SeriesError::PositiveIndex(1))
        );
    }

    /// Independent route: expand the defining double sum with literal nested
    /// loops over 1 <= m_1 <= m_2 <= M and explicit powers of z.
    #[test]
    fn li_star_matches_naive_nested_sum() {
        let order = 6;
        let indices = [0i64, -1];
        let fast = li_star_series(&indices, order).unwrap();
        let z = UniSeries::one_minus_exp_neg(order);
        let mut naive = UniSeries::zeros(order);
        for m2 in 1..=order {
            let mut weight = BigInt::zero();
            for m1 in 1..=m2 {
                weight += BigInt::from(m1).pow(0) * BigInt::from(m2).pow(1);
            }
            let mut zp = UniSeries::one(order);
            for _ in 0..m2 {
                zp = zp.mul(&z);
            }
            naive = naive.add(&zp.scale_int(&weight));
        }
        assert_eq!(fast, naive);
    }

    #[test]
    fn frozen_star_value() {
        // B_{2,*}^{(0,-2)}(1): weights M^3, so the ratio series is
        // 1 + 8z + 27z^2 + ...; with e^(-t) this gives 46 - 16 + 1 = 31.
        assert_eq!(multi_pb_star(&[0, -2], &rat(1), 2).unwrap(), rat(31));
    }

    #[test]
    fn prop6_identity_holds() {
        let mut t = CountTable::new();
        assert!(verify_prop6(&mut t, 1, 2, 2));
        assert!(verify_prop6(&mut t, 2, 1, 1));
        assert!(verify_prop6(&mut t, 0, 3, 2));
        for k in 0..=2 {
            for m in 0..=4 {
                for n in 0..=4 {
                    assert!(verify_prop6(&mut t, k, m, n), "fails at ({k},{m},{n})");
                }
            }
        }
    }

    #[test]
    fn eq16_identity_holds() {
        let mut t = CountTable::new();
        assert!(verify_eq16(&mut t, 1, 2, 2));
        assert!(verify_eq16(&mut t, 3, 1, 1));
        for k in 0..=2 {
            for m in 0..=4 {
                for n in 0..=4 {
                    assert!(verify_eq16(&mut t, k, m, n), "fails at ({k},{m},{n})");
                }
            }
        }
    }

    #[test]
    fn script_b_values() {
        let mut t = CountTable::new();
        assert_eq!(kst_script_b(&mut t, 2, 2, 0), BigInt::from(14));
        assert_eq!(kst_script_b(&mut t, 1, 1, 1), BigInt::from(3));
        // At m = 0 both routes reduce to n!.
        for l in 0..=3usize {
            for n in 0..=3usize {
                assert_eq!(kst_script_b(&mut t, l, 0, n), t.factorial(n));
            }
        }
        for l in 0..=3 {
            for m in 0..=3 {
                for n in 0..=2 {
                    kst_script_b(&mut t, l, m, n);
                }
            }
        }
    }
}
