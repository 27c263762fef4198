//! Truncated series in `x = λ²` whose coefficients are q-series, i.e. the
//! ring `Q[[λ², q]]` truncated at `λ^{2X}` and `q^Q`.

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::series::QSeries;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaQSeries {
    q_order: usize,
    /// `terms[m]` is the coefficient of `λ^{2m}`.
    terms: Vec<QSeries>,
}

impl LambdaQSeries {
    /// `x_order` is the highest power of `λ²` kept.
    pub fn zero(x_order: usize, q_order: usize) -> Self {
        Self {
            q_order,
            terms: vec![QSeries::zero(q_order); x_order + 1],
        }
    }

    pub fn one(x_order: usize, q_order: usize) -> Self {
        let mut s = Self::zero(x_order, q_order);
        s.terms[0] = QSeries::one(q_order);
        s
    }

    /// Missing λ-terms are zero; the q-order is lowered to the shortest term.
    pub fn from_terms(
        x_order: usize,
        q_order: usize,
        terms: impl IntoIterator<Item = QSeries>,
    ) -> Self {
        let terms: Vec<QSeries> = terms.into_iter().take(x_order + 1).collect();
        let q_order = terms.iter().map(QSeries::order).fold(q_order, usize::min);
        let mut s = Self::zero(x_order, q_order);
        for (m, t) in terms.into_iter().enumerate() {
            s.terms[m] = t.truncate(q_order);
        }
        s
    }

    /// A pure λ-series (coefficients constant in q).
    pub fn from_lambda(q_order: usize, lambda: &QSeries) -> Self {
        Self::from_terms(
            lambda.order(),
            q_order,
            lambda
                .coeffs()
                .iter()
                .map(|c| QSeries::constant(q_order, c.clone())),
        )
    }

    /// A pure q-series (constant in λ).
    pub fn from_q(x_order: usize, q: &QSeries) -> Self {
        let mut s = Self::zero(x_order, q.order());
        s.terms[0] = q.clone();
        s
    }

    pub fn x_order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    pub fn term(&self, m: usize) -> &QSeries {
        &self.terms[m]
    }

    pub fn coeff(&self, m: usize, n: usize) -> &Rational {
        self.terms[m].coeff(n)
    }

    pub fn add(&self, other: &Self) -> Self {
        let xo = self.x_order().min(other.x_order());
        Self {
            q_order: self.q_order.min(other.q_order),
            terms: (0..=xo)
                .map(|m| self.terms[m].add(&other.terms[m]))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let xo = self.x_order().min(other.x_order());
        let qo = self.q_order.min(other.q_order);
        let mut out = Self::zero(xo, qo);
        for i in 0..=xo {
            if self.terms[i].is_zero() {
                continue;
            }
            for j in 0..=xo - i {
                if other.terms[j].is_zero() {
                    continue;
                }
                out.terms[i + j] = out.terms[i + j].add(&self.terms[i].mul(&other.terms[j]));
            }
        }
        out
    }

    /// Inverse; the `λ⁰` coefficient must be an invertible q-series.
    pub fn inv(&self) -> Result<Self> {
        let c0_inv = self.terms[0].inv()?;
        let xo = self.x_order();
        let mut out: Vec<QSeries> = vec![c0_inv.clone()];
        for m in 1..=xo {
            let mut acc = QSeries::zero(self.q_order);
            for k in 1..=m {
                acc = acc.add(&self.terms[k].mul(&out[m - k]));
            }
            out.push(acc.mul(&c0_inv).neg());
        }
        Ok(Self {
            q_order: self.q_order,
            terms: out,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one(self.x_order(), self.q_order);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Exponential in the λ direction; the `λ⁰` coefficient must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.terms[0].is_zero() {
            return Err(Error::BadConstantTerm(
                "exp needs a vanishing λ^0 coefficient".into(),
            ));
        }
        let xo = self.x_order();
        let mut out: Vec<QSeries> = vec![QSeries::one(self.q_order)];
        for m in 1..=xo {
            let mut acc = QSeries::zero(self.q_order);
            for k in 1..=m {
                if !self.terms[k].is_zero() {
                    acc = acc.add(&self.terms[k].mul(&out[m - k]).scale(&int(k as i64)));
                }
            }
            out.push(acc.scale(&Rational::new(1.into(), (m as i64).into())));
        }
        Ok(Self {
            q_order: self.q_order,
            terms: out,
        })
    }

    /// First differing `(λ-power, q-power)` bidegree, comparing over the
    /// common truncation.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let xo = self.x_order().min(other.x_order());
        let qo = self.q_order.min(other.q_order);
        for m in 0..=xo {
            for n in 0..=qo {
                if self.coeff(m, n) != other.coeff(m, n) {
                    return Some((2 * m, n));
                }
            }
        }
        None
    }

    pub fn is_zero(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.coeffs().iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::series::eta_product;

    #[test]
    fn inverse_round_trip() {
        let a = LambdaQSeries::from_terms(
            3,
            4,
            [
                eta_product(1, 4),
                QSeries::constant(4, int(2)),
                eta_product(-1, 4),
            ],
        );
        let prod = a.mul(&a.inv().unwrap());
        assert_eq!(prod, LambdaQSeries::one(3, 4));
    }

    #[test]
    fn exp_of_constant_lambda_series() {
        // exp(x) = 1 + x + x^2/2 + x^3/6
        let x = LambdaQSeries::from_lambda(2, &QSeries::from_coeffs(3, [int(0), int(1)]));
        let e = x.exp().unwrap();
        assert_eq!(e.coeff(2, 0), &rat(1, 2));
        assert_eq!(e.coeff(3, 0), &rat(1, 6));
        assert_eq!(e.coeff(3, 1), &int(0));
        assert!(LambdaQSeries::one(2, 2).exp().is_err());
    }
}
