//! Truncated univariate series with exact rational coefficients, stored in
//! EGF normalization: `coeffs[n]` is the coefficient of t^n/n!.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::pascal_rows;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniSeries {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl UniSeries {
    pub fn zeros(order: usize) -> Self {
        UniSeries {
            order,
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize) -> BigRational) -> Self {
        UniSeries {
            order,
            coeffs: (0..=order).map(|n| f(n)).collect(),
        }
    }

    /// z = 1 - e^(-t), the substitution argument of the polylogarithms.
    pub fn one_minus_exp_neg(order: usize) -> Self {
        Self::from_fn(order, |n| {
            if n == 0 {
                BigRational::zero()
            } else if n % 2 == 1 {
                BigRational::one()
            } else {
                -BigRational::one()
            }
        })
    }

    /// e^(c t): EGF coefficients c^n.
    pub fn exp_t(c: &BigRational, order: usize) -> Self {
        let mut power = BigRational::one();
        Self::from_fn(order, |n| {
            if n == 0 {
                BigRational::one()
            } else {
                power *= c;
                power.clone()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// n!·[t^n], i.e. the stored EGF coefficient.
    pub fn coeff(&self, n: usize) -> BigRational {
        assert!(n <= self.order, "coefficient {n} beyond order {}", self.order);
        self.coeffs[n].clone()
    }

    pub fn add(&self, other: &UniSeries) -> UniSeries {
        assert_eq!(self.order, other.order, "order mismatch");
        UniSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> UniSeries {
        UniSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> UniSeries {
        self.scale(&BigRational::from_integer(c.clone()))
    }

    /// Binomial-convolution product (the EGF product), truncated.
    pub fn mul(&self, other: &UniSeries) -> UniSeries {
        assert_eq!(self.order, other.order, "order mismatch");
        let binom = pascal_rows(self.order);
        UniSeries::from_fn(self.order, |n| {
            let mut acc = BigRational::zero();
            for i in 0..=n {
                let a = &self.coeffs[i];
                if a.is_zero() {
                    continue;
                }
                let b = &other.coeffs[n - i];
                if b.is_zero() {
                    continue;
                }
                acc += a * b * BigRational::from_integer(binom[n][i].clone());
            }
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn z_coefficients_alternate() {
        let z = UniSeries::one_minus_exp_neg(5);
        let got: Vec<BigRational> = (0..=5).map(|n| z.coeff(n)).collect();
        assert_eq!(got, vec![rat(0), rat(1), rat(-1), rat(1), rat(-1), rat(1)]);
    }

    #[test]
    fn exponentials_multiply_by_adding_rates() {
        let a = UniSeries::exp_t(&rat(2), 8);
        let b = UniSeries::exp_t(&rat(-5), 8);
        assert_eq!(a.mul(&b), UniSeries::exp_t(&rat(-3), 8));
        assert_eq!(a.coeff(3), rat(8));
    }

    #[test]
    fn one_is_multiplicative_identity() {
        let z = UniSeries::one_minus_exp_neg(6);
        assert_eq!(z.mul(&UniSeries::one(6)), z);
    }

    #[test]
    fn square_of_z_by_hand() {
        // z^2 = (1-e^(-t))^2 = 1 - 2e^(-t) + e^(-2t): EGF coeff at n >= 1 is
        // -2(-1)^n + (-2)^n.
        let z = UniSeries::one_minus_exp_neg(6);
        let sq = z.mul(&z);
        assert_eq!(sq.coeff(0), rat(0));
        for n in 1..=6i64 {
            let expected = rat(-2) * rat((-1i64).pow(n as u32)) + rat((-2i64).pow(n as u32));
            assert_eq!(sq.coeff(n as usize), expected, "at n = {n}");
        }
    }

    #[test]
    #[should_panic(expected = "beyond order")]
    fn coefficient_access_is_bounded() {
        UniSeries::one(3).coeff(4);
    }
}
