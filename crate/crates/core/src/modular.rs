//! Eisenstein q-expansions, Bernoulli numbers and the rational values
//! `ζ(2k) / (2π)^{2k}`.
//!
//! Normalization: constant term 1, so
//! `E_2 = 1 - 24 Σ σ_1(n) q^n`, `E_4 = 1 + 240 Σ σ_3(n) q^n`,
//! `E_6 = 1 - 504 Σ σ_5(n) q^n`.

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, int, Rational};
use crate::series::QSeries;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `σ_k(n) = Σ_{d | n} d^k`.
pub fn divisor_sigma(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "divisor_sigma needs n >= 1");
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    total
}

/// Prefix `B_0 ..= B_n` of the Bernoulli numbers (`B_1 = -1/2`).
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliCache {
    values: Vec<Rational>,
}

impl BernoulliCache {
    /// Fills `B_0 ..= B_n` from `Σ_{k=0}^{m} C(m+1, k) B_k = 0`.
    pub fn up_to(n: usize) -> Self {
        let mut values: Vec<Rational> = Vec::with_capacity(n + 1);
        values.push(Rational::one());
        for m in 1..=n {
            if m >= 3 && m % 2 == 1 {
                values.push(Rational::zero());
                continue;
            }
            let mut acc = Rational::zero();
            for (k, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    acc += Rational::from_integer(binomial(m as u64 + 1, k as u64)) * b;
                }
            }
            values.push(-acc / int(m as i64 + 1));
        }
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

pub fn bernoulli(n: usize) -> Rational {
    BernoulliCache::up_to(n).values[n].clone()
}

/// `E_w(q)` for even `w >= 2`, truncated at `q^order`.
pub fn eisenstein(weight: i64, order: usize) -> Result<QSeries> {
    if weight < 2 || weight % 2 != 0 {
        return Err(Error::BadWeight(weight));
    }
    let factor = -int(2 * weight) / bernoulli(weight as usize);
    let k = (weight - 1) as u32;
    let coeffs = (0..=order).map(|n| {
        if n == 0 {
            Rational::one()
        } else {
            &factor * Rational::from_integer(divisor_sigma(k, n as u64))
        }
    });
    Ok(QSeries::from_coeffs(order, coeffs))
}

/// `ζ(2k) / (2π)^{2k} = (-1)^{k+1} B_{2k} / (2 (2k)!)`.
pub fn zeta_even_ratio(k: usize) -> Rational {
    assert!(k >= 1, "zeta_even_ratio needs k >= 1");
    let sign = if k % 2 == 1 { int(1) } else { int(-1) };
    sign * bernoulli(2 * k) / Rational::from_integer(BigInt::from(2) * factorial(2 * k as u64))
}
