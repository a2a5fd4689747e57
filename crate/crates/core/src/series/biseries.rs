//! Truncated bivariate series with exact rational coefficients in EGF
//! normalization: `coeffs[m][n]` is the coefficient of x^m y^n/(m! n!),
//! kept for total degree m+n <= order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{pascal_rows, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    order: usize,
    coeffs: Vec<Vec<BigRational>>,
}

impl BiSeries {
    pub fn zeros(order: usize) -> Self {
        BiSeries {
            order,
            coeffs: (0..=order)
                .map(|m| vec![BigRational::zero(); order + 1 - m])
                .collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0][0] = BigRational::one();
        s
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        BiSeries {
            order,
            coeffs: (0..=order)
                .map(|m| (0..=order - m).map(|n| f(m, n)).collect())
                .collect(),
        }
    }

    /// e^(ax+by): EGF coefficients a^m b^n.
    pub fn elementary(a: i64, b: i64, order: usize) -> Self {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        Self::from_fn(order, |m, n| {
            BigRational::from_integer(a.pow(m as u32) * b.pow(n as u32))
        })
    }

    /// The series x + y (not an exponential; used as an exp argument).
    pub fn x_plus_y(order: usize) -> Self {
        Self::from_fn(order, |m, n| {
            if m + n == 1 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &BiSeries) -> BiSeries {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &BiSeries, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> BiSeries {
        assert_eq!(self.order, other.order, "order mismatch");
        BiSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| f(a, b)).collect())
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> BiSeries {
        BiSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|a| a * c).collect())
                .collect(),
        }
    }

    /// Binomial-convolution product:
    /// (fg)_{m,n} = sum_{i,j} C(m,i) C(n,j) f_{i,j} g_{m-i,n-j}.
    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        assert_eq!(self.order, other.order, "order mismatch");
        let binom = pascal_rows(self.order);
        BiSeries::from_fn(self.order, |m, n| {
            let mut acc = BigRational::zero();
            for i in 0..=m {
                for j in 0..=n {
                    let a = &self.coeffs[i][j];
                    if a.is_zero() {
                        continue;
                    }
                    let b = &other.coeffs[m - i][n - j];
                    if b.is_zero() {
                        continue;
                    }
                    acc += a * b * BigRational::from_integer(&binom[m][i] * &binom[n][j]);
                }
            }
            acc
        })
    }

    pub fn pow(&self, mut e: usize) -> BiSeries {
        let mut base = self.clone();
        let mut acc = BiSeries::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse by Newton iteration g <- g(2 - fg), which
    /// doubles the correct total degree each step. Requires constant term 1.
    pub fn recip(&self) -> Result<BiSeries, SeriesError> {
        if self.coeffs[0][0] != BigRational::one() {
            return Err(SeriesError::NonUnitConstant);
        }
        let two = BiSeries::one(self.order).scale(&BigRational::from_integer(BigInt::from(2)));
        let mut g = BiSeries::one(self.order);
        let mut correct = 1usize;
        while correct <= self.order {
            g = g.mul(&two.sub(&self.mul(&g)));
            correct *= 2;
        }
        Ok(g)
    }

    /// exp(f) for f with zero constant term, via the derivative recurrence:
    /// the m=0 row comes from h' = f' h in y alone, then
    /// h_{m+1,n} = sum C(m,i) C(n,j) f_{i+1,j} h_{m-i,n-j}.
    pub fn exp(&self) -> Result<BiSeries, SeriesError> {
        if !self.coeffs[0][0].is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let order = self.order;
        let binom = pascal_rows(order);
        let mut h = BiSeries::zeros(order);
        h.coeffs[0][0] = BigRational::one();
        for n in 0..order {
            let mut acc = BigRational::zero();
            for j in 0..=n {
                let f = &self.coeffs[0][j + 1];
                if f.is_zero() {
                    continue;
                }
                acc += f * &h.coeffs[0][n - j] * BigRational::from_integer(binom[n][j].clone());
            }
            h.coeffs[0][n + 1] = acc;
        }
        for m in 0..order {
            for n in 0..=order - m - 1 {
                let mut acc = BigRational::zero();
                for i in 0..=m {
                    for j in 0..=n {
                        let f = &self.coeffs[i + 1][j];
                        if f.is_zero() {
                            continue;
                        }
                        acc += f
                            * &h.coeffs[m - i][n - j]
                            * BigRational::from_integer(&binom[m][i] * &binom[n][j]);
                    }
                }
                h.coeffs[m + 1][n] = acc;
            }
        }
        Ok(h)
    }

    /// m!·n!·[x^m y^n], i.e. the stored EGF coefficient. Panics beyond the
    /// truncation order; that is a caller bug, not an input condition.
    pub fn extract(&self, m: usize, n: usize) -> BigRational {
        assert!(
            m + n <= self.order,
            "coefficient ({m},{n}) beyond order {}",
            self.order
        );
        self.coeffs[m][n].clone()
    }

    /// Like [`extract`](Self::extract) but demands an integer value.
    pub fn extract_int(&self, m: usize, n: usize) -> Result<BigInt, SeriesError> {
        let v = self.extract(m, n);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(SeriesError::NonInteger {
                m,
                n,
                value: v.to_string(),
            })
        }
    }
}
