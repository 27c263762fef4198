//! Finite Laurent polynomials in one or two variables over Q.
//!
//! Exponents encode `2H`, so a spin-`j` weight contributes the integer
//! exponent `2m`. Zero coefficients are never stored.

use crate::error::{Error, Result};
use crate::rational::{from_wire, int, to_wire, Rational};
use crate::series::Coefficient;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly<const N: usize> {
    terms: BTreeMap<[i64; N], Rational>,
}

/// One variable `t`.
pub type Laurent1 = LaurentPoly<1>;
/// Two variables `(t_L, t_R)`.
pub type Laurent2 = LaurentPoly<2>;

impl<const N: usize> Default for LaurentPoly<N> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<const N: usize> LaurentPoly<N> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn monomial(exp: [i64; N], c: Rational) -> Self {
        let mut p = Self::default();
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ([i64; N], Rational)>) -> Self {
        let mut p = Self::default();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: [i64; N], c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: [i64; N]) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64; N], &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `t = 1` in every variable.
    pub fn at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }

    /// Substitutes `t_i -> t_i^{-1}` in variable `var`.
    pub fn invert_var(&self, var: usize) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let mut e = *e;
            e[var] = -e[var];
            (e, c.clone())
        }))
    }

    /// Multiplies by the monomial `t^shift`.
    pub fn shift(&self, shift: [i64; N]) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = *e;
                    for i in 0..N {
                        e[i] += shift[i];
                    }
                    (e, c.clone())
                })
                .collect(),
        }
    }

    pub fn is_symmetric_in(&self, var: usize) -> bool {
        self.invert_var(var) == *self
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Coefficient::one(), |acc: Self, _| acc.mul_poly(self))
    }

    fn mul_poly(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for i in 0..N {
                    e[i] += eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn to_json(&self) -> LaurentJson {
        LaurentJson {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.to_vec(),
                    coeff: to_wire(c),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &LaurentJson) -> Result<Self> {
        let mut p = Self::default();
        for t in &json.terms {
            let exp: [i64; N] = t.exp.as_slice().try_into().map_err(|_| {
                Error::Parse(format!("expected {N} exponents, got {}", t.exp.len()))
            })?;
            p.add_term(exp, from_wire(&t.coeff)?);
        }
        Ok(p)
    }
}

impl Laurent1 {
    /// Exponent range `(min, max)`, or `None` for the zero polynomial.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        let min = self.terms.keys().next()?[0];
        let max = self.terms.keys().next_back()?[0];
        Some((min, max))
    }

    pub fn t(exp: i64) -> Self {
        Self::monomial([exp], Rational::one())
    }
}

impl Laurent2 {
    /// `t_L = t_R = t`.
    pub fn diagonal(&self) -> Laurent1 {
        Laurent1::from_terms(self.terms.iter().map(|(e, c)| ([e[0] + e[1]], c.clone())))
    }

    /// `t_R = 1`, leaving a polynomial in `t_L`.
    pub fn right_at_one(&self) -> Laurent1 {
        Laurent1::from_terms(self.terms.iter().map(|(e, c)| ([e[0]], c.clone())))
    }

    /// Exchanges `t_L` and `t_R`.
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| ([e[1], e[0]], c.clone())))
    }

    /// Groups by the `t_L` exponent: `p = sum_a t_L^a * r_a(t_R)`.
    pub fn by_left(&self) -> BTreeMap<i64, Laurent1> {
        let mut out: BTreeMap<i64, Laurent1> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e[0]).or_default().add_term([e[1]], c.clone());
        }
        out
    }

    /// `t_L^a * t_R^b` with coefficient 1.
    pub fn t(a: i64, b: i64) -> Self {
        Self::monomial([a, b], Rational::one())
    }

    /// Tensor product `l(t_L) * r(t_R)`.
    pub fn outer(l: &Laurent1, r: &Laurent1) -> Self {
        let mut out = Self::default();
        for (a, ca) in l.terms() {
            for (b, cb) in r.terms() {
                out.add_term([a[0], b[0]], ca * cb);
            }
        }
        out
    }
}

impl<const N: usize> Coefficient for LaurentPoly<N> {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(int(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_poly(other)
    }
    fn neg(&self) -> Self {
        self.scale(&int(-1))
    }
    /// Only nonzero monomials are units of the Laurent ring.
    fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let mut inv = *e;
        for x in inv.iter_mut() {
            *x = -*x;
        }
        Some(Self::monomial(inv, c.recip()))
    }
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::default();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }
}

impl<const N: usize> std::fmt::Display for LaurentPoly<N> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: &[&str] = if N == 1 { &["t"] } else { &["tL", "tR"] };
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, x) in e.iter().enumerate() {
                if *x != 0 {
                    write!(f, "*{}^{}", names.get(i).unwrap_or(&"t"), x)?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub terms: Vec<TermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn zero_terms_are_dropped() {
        let mut p = Laurent1::t(2);
        p.add_term([2], int(-1));
        assert!(p.is_empty());
        assert!(Coefficient::is_zero(&Laurent1::monomial([3], int(0))));
    }

    #[test]
    fn units_are_monomials() {
        let m = Laurent2::monomial([1, -2], rat(3, 2));
        assert_eq!(m.inverse().unwrap(), Laurent2::monomial([-1, 2], rat(2, 3)));
        let sum = Laurent1::t(1).add(&Laurent1::t(-1));
        assert!(sum.inverse().is_none());
    }

    #[test]
    fn specializations() {
        let p = Laurent2::t(1, 1)
            .add(&Laurent2::t(1, -1))
            .add(&Laurent2::constant(int(8)));
        assert_eq!(
            p.diagonal(),
            Laurent1::t(2).add(&Laurent1::constant(int(9)))
        );
        assert_eq!(
            p.right_at_one(),
            Laurent1::monomial([1], int(2)).add(&Laurent1::constant(int(8)))
        );
        assert_eq!(p.at_one(), int(10));
        assert_eq!(p.swap().coeff([-1, 1]), int(1));
    }

    #[test]
    fn json_round_trip() {
        let p = Laurent2::t(-1, -1).add(&Laurent2::constant(rat(1, 3)));
        assert_eq!(Laurent2::from_json(&p.to_json()).unwrap(), p);
        let bad = LaurentJson {
            terms: vec![TermJson {
                exp: vec![1],
                coeff: "1".into(),
            }],
        };
        assert!(Laurent2::from_json(&bad).is_err());
    }
}
