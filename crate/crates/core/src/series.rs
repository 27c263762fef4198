//! Truncated formal power series in one variable `q`.
//!
//! A [`QSeries`] stores the coefficients of `q^0 ..= q^N` densely. The
//! truncation order `N` is fixed at construction and binary operations
//! return the smaller of the two operand orders; nothing is ever silently
//! extended.
//!
//! The coefficient ring is abstracted by [`Coefficient`]. Two rings are
//! provided: exact rationals and Laurent polynomials (see
//! [`crate::laurent`]).

use crate::error::{Error, Result};
use crate::rational::{int, to_wire, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt::Debug;

/// An exact commutative ring usable as the coefficient ring of a [`QSeries`].
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` if `self` is not a unit.
    fn inverse(&self) -> Option<Self>;
    /// Multiplication by a rational scalar (the rings here all contain Q).
    fn scale(&self, r: &Rational) -> Self;

    fn from_rational(r: &Rational) -> Self {
        Self::one().scale(r)
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QSeries<C = Rational> {
    order: usize,
    coeffs: Vec<C>,
}

impl<C: Coefficient> QSeries<C> {
    /// Builds a series from leading coefficients; missing ones are zero and
    /// coefficients beyond `order` are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = C>) -> Self {
        let mut v: Vec<C> = coeffs.into_iter().take(order + 1).collect();
        v.resize(order + 1, C::zero());
        Self { order, coeffs: v }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(order, [])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, C::one())
    }

    pub fn constant(order: usize, c: C) -> Self {
        Self::from_coeffs(order, [c])
    }

    /// `c * q^power`, which is zero when `power > order`.
    pub fn monomial(order: usize, power: usize, c: C) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> &C {
        &self.coeffs[power]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Drops precision down to `order` (no-op if already lower).
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|i| self.coeffs[i].add(&other.coeffs[i]))
            .collect();
        Self { order, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|i| self.coeffs[i].sub(&other.coeffs[i]))
            .collect();
        Self { order, coeffs }
    }

    pub fn neg(&self) -> Self {
        self.map(C::neg)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn scale_by(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Coefficientwise ring map, e.g. a specialization of Laurent variables.
    pub fn map_into<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> QSeries<D> {
        QSeries::from_coeffs(self.order, self.coeffs.iter().map(f))
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut coeffs = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Self { order, coeffs }
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inv(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0]
            .inverse()
            .ok_or_else(|| Error::NonUnitConstantTerm(format!("{:?}", self.coeffs[0])))?;
        let mut out: Vec<C> = Vec::with_capacity(self.order + 1);
        out.push(c0_inv.clone());
        for n in 1..=self.order {
            let mut acc = C::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc = acc.add(&a.mul(&out[n - k]));
                }
            }
            out.push(acc.mul(&c0_inv).neg());
        }
        Ok(Self {
            order: self.order,
            coeffs: out,
        })
    }

    /// Integer power; negative exponents go through [`QSeries::inv`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = Self::one(self.order);
        let mut power = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&power);
            }
            e >>= 1;
            if e > 0 {
                power = power.mul(&power);
            }
        }
        Ok(result)
    }

    /// Formal derivative `q d/dq`, which keeps the order.
    fn q_derivative(&self) -> Self {
        Self {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.scale(&int(n as i64)))
                .collect(),
        }
    }

    /// Formal exponential; requires a zero constant term.
    ///
    /// Uses `q F' = (q A') F`, i.e. `n f_n = sum_{k=1}^{n} k a_k f_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm(format!(
                "exp needs constant term 0, got {:?}",
                self.coeffs[0]
            )));
        }
        let da = self.q_derivative();
        let mut out: Vec<C> = Vec::with_capacity(self.order + 1);
        out.push(C::one());
        for n in 1..=self.order {
            let mut acc = C::zero();
            for k in 1..=n {
                if !da.coeffs[k].is_zero() {
                    acc = acc.add(&da.coeffs[k].mul(&out[n - k]));
                }
            }
            out.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(n))));
        }
        Ok(Self {
            order: self.order,
            coeffs: out,
        })
    }

    /// Formal logarithm; requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != C::one() {
            return Err(Error::BadConstantTerm(format!(
                "log needs constant term 1, got {:?}",
                self.coeffs[0]
            )));
        }
        // q (log f)' = q f' / f
        let ratio = self.q_derivative().mul(&self.inv()?);
        let coeffs = ratio
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n == 0 {
                    C::zero()
                } else {
                    c.scale(&Rational::new(BigInt::one(), BigInt::from(n)))
                }
            })
            .collect();
        Ok(Self {
            order: self.order,
            coeffs,
        })
    }

    /// Substitutes `q -> q^k`, keeping the order.
    pub fn dilate(&self, k: usize) -> Self {
        assert!(k >= 1, "dilation factor must be positive");
        let mut out = Self::zero(self.order);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k > self.order {
                break;
            }
            out.coeffs[i * k] = c.clone();
        }
        out
    }
}

/// `prod_{n=1}^{order} (1 - q^n)^exponent`.
pub fn eta_product(exponent: i64, order: usize) -> QSeries<Rational> {
    let factor =
        |n: usize| QSeries::from_coeffs(order, [int(1)]).sub(&QSeries::monomial(order, n, int(1)));
    geom_factor_product(factor, exponent, order).expect("constant term is 1")
}

/// `prod_{n=1}^{order} f_n(q)^exponent` where `f_n` is supplied already
/// evaluated at `q^n` (constant term must be 1).
///
/// Factors with `n > order` are `1 mod q^{order+1}` and are skipped.
pub fn geom_factor_product<C: Coefficient>(
    per_n_factor: impl Fn(usize) -> QSeries<C>,
    exponent: i64,
    order: usize,
) -> Result<QSeries<C>> {
    let mut acc = QSeries::one(order);
    for n in 1..=order {
        let f = per_n_factor(n).truncate(order);
        if f.order() < order {
            return Err(Error::InsufficientTruncation(format!(
                "factor {n} has order {} < {order}",
                f.order()
            )));
        }
        if f.coeff(0) != &C::one() {
            return Err(Error::BadConstantTerm(format!(
                "factor {n} has constant term {:?}",
                f.coeff(0)
            )));
        }
        acc = acc.mul(&f);
    }
    acc.pow(exponent)
}

/// `1 - c q^n` as a series of the given order.
pub fn one_minus<C: Coefficient>(c: C, n: usize, order: usize) -> QSeries<C> {
    QSeries::one(order).sub(&QSeries::monomial(order, n, c))
}

/// `1 + c q^n` as a series of the given order.
pub fn one_plus<C: Coefficient>(c: C, n: usize, order: usize) -> QSeries<C> {
    QSeries::one(order).add(&QSeries::monomial(order, n, c))
}

/// JSON wire form of a rational q-series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub var: String,
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl QSeries<Rational> {
    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            var: "q".to_string(),
            order: self.order,
            coeffs: self.coeffs.iter().map(to_wire).collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self> {
        if json.coeffs.len() != json.order + 1 {
            return Err(Error::Parse(format!(
                "series of order {} needs {} coefficients, got {}",
                json.order,
                json.order + 1,
                json.coeffs.len()
            )));
        }
        let coeffs = json
            .coeffs
            .iter()
            .map(|s| crate::rational::from_wire(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(json.order, coeffs))
    }

    /// One row per power: `power<TAB>coefficient`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("power\tcoefficient\n");
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{i}\t{}\n", to_wire(c)));
        }
        out
    }

    /// Coefficients as integers, if all are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn s(order: usize, cs: &[i64]) -> QSeries {
        QSeries::from_coeffs(order, cs.iter().map(|&c| int(c)))
    }

    #[test]
    fn addition_examples() {
        assert_eq!(s(3, &[1, 1]).add(&s(3, &[1, -1])), s(3, &[2]));
        assert_eq!(s(3, &[1, 2, 3]).add(&QSeries::zero(3)), s(3, &[1, 2, 3]));
        assert_eq!(s(2, &[1, 2, 3]).add(&s(2, &[0, 0, 1])), s(2, &[1, 2, 4]));
    }

    #[test]
    fn order_is_min_of_operands() {
        let a = s(5, &[1, 1]);
        let b = s(2, &[1, 1]);
        assert_eq!(a.add(&b).order(), 2);
        assert_eq!(a.mul(&b).order(), 2);
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(s(3, &[1, -1]).mul(&s(3, &[1, 1, 1, 1])), s(3, &[1]));
        assert_eq!(
            s(4, &[1, -1]).mul(&s(4, &[1, 1, 1, 1])),
            s(4, &[1, 0, 0, 0, -1])
        );
        assert_eq!(s(4, &[3, 1]).mul(&QSeries::one(4)), s(4, &[3, 1]));
        assert_eq!(s(3, &[1, 1]).pow(2).unwrap(), s(3, &[1, 2, 1]));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(QSeries::<Rational>::one(4).inv().unwrap(), QSeries::one(4));
        assert_eq!(s(4, &[1, -1]).inv().unwrap(), s(4, &[1, 1, 1, 1, 1]));
        assert!(matches!(
            s(4, &[0, 1]).inv(),
            Err(Error::NonUnitConstantTerm(_))
        ));
        // non-unit constant over Q is still invertible if nonzero
        assert_eq!(s(2, &[2]).inv().unwrap(), QSeries::constant(2, rat(1, 2)));
    }

    #[test]
    fn exp_log_examples() {
        assert_eq!(QSeries::<Rational>::zero(5).exp().unwrap(), QSeries::one(5));
        let mercator =
            QSeries::from_coeffs(4, [int(0), int(-1), rat(-1, 2), rat(-1, 3), rat(-1, 4)]);
        assert_eq!(s(4, &[1, -1]).log().unwrap(), mercator);
        let f = s(6, &[1, 1, 0, 5]);
        assert_eq!(f.log().unwrap().exp().unwrap(), f);
        assert!(matches!(
            s(3, &[1, 1]).exp(),
            Err(Error::BadConstantTerm(_))
        ));
        assert!(matches!(
            s(3, &[2, 1]).log(),
            Err(Error::BadConstantTerm(_))
        ));
    }

    #[test]
    fn eta_product_examples() {
        assert_eq!(eta_product(0, 10), QSeries::one(10));
        assert_eq!(eta_product(-1, 8), s(8, &[1, 1, 2, 3, 5, 7, 11, 15, 22]));
        // (1-q)(1-q^2)...(1-q^6) expanded by hand and truncated at q^6
        assert_eq!(eta_product(1, 6), s(6, &[1, -1, -1, 0, 0, 1, 0]));
    }

    #[test]
    fn geom_factor_consistency_with_eta() {
        let p = geom_factor_product(|n| one_minus(int(1), n, 7), 1, 7).unwrap();
        assert_eq!(p, eta_product(1, 7));
        let ones = geom_factor_product(|_| QSeries::<Rational>::one(5), -3, 5).unwrap();
        assert_eq!(ones, QSeries::one(5));
    }

    #[test]
    fn dilation() {
        assert_eq!(s(6, &[1, 1, 1]).dilate(2), s(6, &[1, 0, 1, 0, 1]));
        assert_eq!(s(3, &[1, 1]).dilate(5), s(3, &[1]));
    }

    #[test]
    fn json_and_tsv() {
        let a = QSeries::from_coeffs(2, [int(1), rat(-1, 2), int(0)]);
        let j = a.to_json();
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"var":"q","order":2,"coeffs":["1/1","-1/2","0/1"]}"#
        );
        assert_eq!(QSeries::from_json(&j).unwrap(), a);
        assert_eq!(a.to_tsv(), "power\tcoefficient\n0\t1/1\n1\t-1/2\n2\t0/1\n");
        let bad = SeriesJson {
            var: "q".into(),
            order: 3,
            coeffs: vec!["1".into()],
        };
        assert!(QSeries::from_json(&bad).is_err());
    }
}
