//! Exact big-integer counting tables.
//!
//! Central objects: L(m,n), the number of m x n lonesum matrices, and
//! D_k(m,n), the number of m x n lonesum-decomposable matrices whose
//! decomposition has exactly k nonzero blocks. Everything is computed from
//! Stirling/binomial tables by the closed form
//!
//!   D_k(m,n) = (1/k!) * sum_{j=k}^{min(m,n)} C(j-1,k-1) (j!)^2 S(m+1,j+1) S(n+1,j+1)
//!
//! (S = Stirling second kind), with D_0 = 1 by convention. The congruence
//! checker recomputes every residue through a separate u64 mod-p route so a
//! big-integer bug cannot silently confirm itself.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Memoized Stirling, binomial, factorial, and matrix-count tables.
#[derive(Default)]
pub struct CountTable {
    stirling2: Vec<Vec<BigInt>>,
    stirling1u: Vec<Vec<BigInt>>,
    binom: Vec<Vec<BigInt>>,
    factorial: Vec<BigInt>,
    dk_memo: HashMap<(usize, usize, usize), BigInt>,
}

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Stirling number of the second kind: partitions of an n-set into k
    /// nonempty blocks.
    pub fn stirling2(&mut self, n: usize, k: usize) -> BigInt {
        if self.stirling2.is_empty() {
            self.stirling2.push(vec![BigInt::one()]);
        }
        while self.stirling2.len() <= n {
            let prev = self.stirling2.last().unwrap();
            let len = prev.len();
            let mut row = vec![BigInt::zero(); len + 1];
            for k in 1..=len {
                row[k] = &prev[k - 1]
                    + if k < len {
                        BigInt::from(k) * &prev[k]
                    } else {
                        BigInt::zero()
                    };
            }
            self.stirling2.push(row);
        }
        self.stirling2[n].get(k).cloned().unwrap_or_default()
    }

    /// Unsigned Stirling number of the first kind: permutations of an n-set
    /// with exactly k cycles.
    pub fn stirling1u(&mut self, n: usize, k: usize) -> BigInt {
        if self.stirling1u.is_empty() {
            self.stirling1u.push(vec![BigInt::one()]);
        }
        while self.stirling1u.len() <= n {
            let m = self.stirling1u.len();
            let prev = self.stirling1u.last().unwrap();
            let len = prev.len();
            let mut row = vec![BigInt::zero(); len + 1];
            for k in 1..=len {
                row[k] = &prev[k - 1]
                    + if k < len {
                        BigInt::from(m - 1) * &prev[k]
                    } else {
                        BigInt::zero()
                    };
            }
            self.stirling1u.push(row);
        }
        self.stirling1u[n].get(k).cloned().unwrap_or_default()
    }

    pub fn binom(&mut self, n: usize, k: usize) -> BigInt {
        if self.binom.is_empty() {
            self.binom.push(vec![BigInt::one()]);
        }
        while self.binom.len() <= n {
            let prev = self.binom.last().unwrap();
            let len = prev.len();
            let mut row = vec![BigInt::one(); len + 1];
            for k in 1..len {
                row[k] = &prev[k - 1] + &prev[k];
            }
            self.binom.push(row);
        }
        self.binom[n].get(k).cloned().unwrap_or_default()
    }

    pub fn factorial(&mut self, n: usize) -> BigInt {
        if self.factorial.is_empty() {
            self.factorial.push(BigInt::one());
        }
        while self.factorial.len() <= n {
            let m = self.factorial.len();
            let next = self.factorial.last().unwrap() * BigInt::from(m);
            self.factorial.push(next);
        }
        self.factorial[n].clone()
    }

    /// L(m,n): the number of m x n lonesum matrices,
    /// sum_{j=0}^{min(m,n)} (j!)^2 S(m+1,j+1) S(n+1,j+1).
    pub fn lonesum_count(&mut self, m: usize, n: usize) -> BigInt {
        let mut sum = BigInt::zero();
        for j in 0..=m.min(n) {
            let f = self.factorial(j);
            let s1 = self.stirling2(m + 1, j + 1);
            let s2 = self.stirling2(n + 1, j + 1);
            sum += &f * &f * s1 * s2;
        }
        sum
    }

    /// The poly-Bernoulli number B_n^(-m); numerically identical to L(m,n).
    pub fn poly_bernoulli_neg(&mut self, m: usize, n: usize) -> BigInt {
        self.lonesum_count(m, n)
    }

    /// D_k(m,n): decomposable m x n matrices with exactly k nonzero blocks.
    /// The division by k! is asserted exact.
    pub fn d_k(&mut self, k: usize, m: usize, n: usize) -> BigInt {
        if k == 0 {
            return BigInt::one();
        }
        if let Some(v) = self.dk_memo.get(&(k, m, n)) {
            return v.clone();
        }
        let mut sum = BigInt::zero();
        for j in k..=m.min(n) {
            let c = self.binom(j - 1, k - 1);
            let f = self.factorial(j);
            let s1 = self.stirling2(m + 1, j + 1);
            let s2 = self.stirling2(n + 1, j + 1);
            sum += c * &f * &f * s1 * s2;
        }
        let (q, r) = sum.div_rem(&self.factorial(k));
        assert!(r.is_zero(), "k! does not divide the D_{k}({m},{n}) sum");
        self.dk_memo.insert((k, m, n), q.clone());
        q
    }

    /// D(m,n) = sum_{k>=0} D_k(m,n); the k=0 term is the zero matrix.
    pub fn d_total(&mut self, m: usize, n: usize) -> BigInt {
        let mut sum = BigInt::one();
        for k in 1..=m.min(n) {
            sum += self.d_k(k, m, n);
        }
        sum
    }

    /// Verifies the row-extension recurrence
    /// D_k(m+1,n) = D_k(m,n)
    ///            + sum_{l=0}^{n-1} C(n,l) [(k-1) D_k(m,l) + D_{k-1}(m,l) + D_k(m,l+1)]
    /// with all values taken from the closed form.
    pub fn recurrence_check(&mut self, k: usize, m: usize, n: usize) -> bool {
        assert!(k >= 1, "recurrence is stated for k >= 1");
        let lhs = self.d_k(k, m + 1, n);
        let mut rhs = self.d_k(k, m, n);
        for l in 0..n {
            let c = self.binom(n, l);
            let inner = BigInt::from(k as i64 - 1) * self.d_k(k, m, l)
                + self.d_k(k - 1, m, l)
                + self.d_k(k, m, l + 1);
            rhs += c * inner;
        }
        lhs == rhs
    }

    /// Sweeps the four prime congruences over k <= k_max, m,n <= mn_max.
    /// Every residue is computed both from the big-integer table and from an
    /// independent u64 mod-p evaluation of the closed form; the two must
    /// agree (asserted), and the returned report lists congruence violations
    /// (expected none).
    pub fn congruence_report(
        &mut self,
        p: u64,
        k_max: usize,
        mn_max: usize,
    ) -> Result<CongruenceReport, CountError> {
        if !is_prime(p) {
            return Err(CountError::NotPrime(p));
        }
        let tables = ModTables::new(p, mn_max + 1);
        let mut report = CongruenceReport {
            p,
            k_max,
            mn_max,
            checked: 0,
            violations: Vec::new(),
        };

        let residue = |table: &mut CountTable, k: usize, m: usize, n: usize| -> u64 {
            let fast = tables.d_k_mod(k, m, n);
            let big = mod_residue(&table.d_k(k, m, n), p);
            assert_eq!(
                fast, big,
                "mod-{p} routes disagree at D_{k}({m},{n})"
            );
            fast
        };

        // k >= p forces vanishing.
        for k in p as usize..=k_max {
            for m in 1..=mn_max {
                for n in 1..=mn_max {
                    let got = residue(self, k, m, n);
                    report.record(CongruenceRule::VanishesAboveP, k, m, n, got, 0);
                }
            }
        }
        // Period p-1 in each argument.
        for k in 1..=k_max {
            for m in 1..=mn_max.saturating_sub(p as usize - 1) {
                for n in 1..=mn_max {
                    let got = residue(self, k, m + p as usize - 1, n);
                    let expected = residue(self, k, m, n);
                    report.record(CongruenceRule::PeriodInM, k, m, n, got, expected);
                }
            }
            for m in 1..=mn_max {
                for n in 1..=mn_max.saturating_sub(p as usize - 1) {
                    let got = residue(self, k, m, n + p as usize - 1);
                    let expected = residue(self, k, m, n);
                    report.record(CongruenceRule::PeriodInN, k, m, n, got, expected);
                }
            }
        }
        // m = p-1 column: zero except at n divisible by p-1, where the value
        // is (-1)^(k-1)/(k-1)!; needs k < p so the inverse exists.
        if p as usize - 1 <= mn_max {
            for k in 1..=k_max.min(p as usize - 1) {
                let unit = {
                    let inv = inv_mod(mod_residue(&self.factorial(k - 1), p), p);
                    if (k - 1) % 2 == 0 {
                        inv
                    } else {
                        (p - inv) % p
                    }
                };
                for n in 1..=mn_max {
                    let expected = if n % (p as usize - 1) == 0 { unit } else { 0 };
                    let got = residue(self, k, p as usize - 1, n);
                    report.record(CongruenceRule::AtPMinusOne, k, p as usize - 1, n, got, expected);
                }
            }
        }
        // m = p row: 2^n - 1 for k = 1, zero for k >= 2.
        if p as usize <= mn_max {
            for k in 1..=k_max {
                for n in 1..=mn_max {
                    let expected = if k == 1 {
                        (pow_mod(2, n as u64, p) + p - 1) % p
                    } else {
                        0
                    };
                    let got = residue(self, k, p as usize, n);
                    report.record(CongruenceRule::AtP, k, p as usize, n, got, expected);
                }
            }
        }
        Ok(report)
    }

    /// Verifies the Stirling-table congruences used by the D_k congruences:
    /// (a) for 0 <= i <= p, S(m,i) mod p has period p-1 in m on the domain
    ///     m >= i (below i the value is 0 while the shifted one need not be);
    /// (b) S(p,i) vanishes mod p for 2 <= i <= p-1;
    /// (c) S(m,2) = 2^(m-1) - 1 exactly for m >= 1.
    pub fn stirling_lemma_check(&mut self, p: u64, range: usize) -> Result<bool, CountError> {
        if !is_prime(p) {
            return Err(CountError::NotPrime(p));
        }
        let period = p as usize - 1;
        for i in 0..=p as usize {
            for m in i.max(1)..=range.saturating_sub(period) {
                let a = mod_residue(&self.stirling2(m, i), p);
                let b = mod_residue(&self.stirling2(m + period, i), p);
                if a != b {
                    return Ok(false);
                }
            }
        }
        for i in 2..p as usize {
            if mod_residue(&self.stirling2(p as usize, i), p) != 0 {
                return Ok(false);
            }
        }
        for m in 1..=range {
            let expected = BigInt::from(2).pow(m as u32 - 1) - 1;
            if self.stirling2(m, 2) != expected {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Nonnegative residue of a big integer.
pub(crate) fn mod_residue(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    let digits = r.to_u64_digits().1;
    digits.first().copied().unwrap_or(0)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut base = base as u128 % p as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Modular inverse by extended gcd; requires gcd(a, p) = 1.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "inverse requires coprime inputs");
    s0.rem_euclid(p as i128) as u64
}

/// Mod-p Stirling/binomial/factorial tables sized for arguments <= size.
struct ModTables {
    p: u64,
    stirling2: Vec<Vec<u64>>,
    binom: Vec<Vec<u64>>,
    factorial: Vec<u64>,
}

impl ModTables {
    fn new(p: u64, size: usize) -> Self {
        let rows = size + 1;
        let mut stirling2 = vec![vec![0u64; rows + 1]; rows + 1];
        stirling2[0][0] = 1;
        for n in 1..=rows {
            for k in 1..=n {
                stirling2[n][k] =
                    (stirling2[n - 1][k - 1] + k as u64 % p * stirling2[n - 1][k] % p) % p;
            }
        }
        let mut binom = vec![vec![0u64; rows + 1]; rows + 1];
        for n in 0..=rows {
            binom[n][0] = 1;
            for k in 1..=n {
                binom[n][k] = (binom[n - 1][k - 1] + binom[n - 1][k]) % p;
            }
        }
        let mut factorial = vec![1u64; rows + 1];
        for n in 1..=rows {
            factorial[n] = factorial[n - 1] * (n as u64 % p) % p;
        }
        ModTables {
            p,
            stirling2,
            binom,
            factorial,
        }
    }

    /// D_k(m,n) mod p without big integers: the exact integer (j!)^2/k! is
    /// accumulated as (product of k+1..=j) * j! mod p, so no inversion is
    /// needed even when p divides k!.
    fn d_k_mod(&self, k: usize, m: usize, n: usize) -> u64 {
        let p = self.p;
        if k == 0 {
            return 1 % p;
        }
        let mut sum = 0u64;
        for j in k..=m.min(n) {
            let mut ratio = self.factorial[j];
            for t in k + 1..=j {
                ratio = ratio * (t as u64 % p) % p;
            }
            let term = self.binom[j - 1][k - 1] * ratio % p * self.stirling2[m + 1][j + 1] % p
                * self.stirling2[n + 1][j + 1]
                % p;
            sum = (sum + term) % p;
        }
        sum
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CongruenceRule {
    VanishesAboveP,
    PeriodInM,
    PeriodInN,
    AtPMinusOne,
    AtP,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub rule: CongruenceRule,
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub got: u64,
    pub expected: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CongruenceReport {
    pub p: u64,
    pub k_max: usize,
    pub mn_max: usize,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl CongruenceReport {
    fn record(
        &mut self,
        rule: CongruenceRule,
        k: usize,
        m: usize,
        n: usize,
        got: u64,
        expected: u64,
    ) {
        self.checked += 1;
        if got != expected {
            self.violations.push(Violation {
                rule,
                k,
                m,
                n,
                got,
                expected,
            });
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}
