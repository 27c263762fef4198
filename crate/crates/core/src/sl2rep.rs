//! Characters of virtual `sl2` and `sl2 x sl2` representations.
//!
//! Spins are keyed by the doubled integer `2j`. Characters are *signed*:
//! the spin-`j` irreducible contributes `(-1)^{2j} (t^{2j} + t^{2j-2} + ... + t^{-2j})`.
//! `I_h = [(1/2) + 2(0)]^{⊗h}` then has character `u^h` with `u = 2 - t - 1/t`.

use crate::error::{Error, Result};
use crate::laurent::{Laurent1, Laurent2};
use crate::rational::{int, sign_power, to_integer, Rational};
use crate::series::Coefficient;
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{Map, Value};
use std::collections::BTreeMap;

/// Virtual multiplicities over spins, keyed by `2j`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpinDecomp {
    mult: BTreeMap<u32, BigInt>,
}

/// Virtual multiplicities over bi-spins, keyed by `(2j_L, 2j_R)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BiSpinDecomp {
    mult: BTreeMap<(u32, u32), BigInt>,
}

/// `Σ_h I_h ⊗ R_h` with each `R_h` a virtual right representation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IBasisDecomp {
    coeff: BTreeMap<u32, SpinDecomp>,
}

impl SpinDecomp {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut d = Self::new();
        for (two_j, m) in pairs {
            d.add(two_j, BigInt::from(m));
        }
        d
    }

    pub fn add(&mut self, two_j: u32, m: BigInt) {
        if m.is_zero() {
            return;
        }
        let e = self.mult.entry(two_j).or_insert_with(BigInt::zero);
        *e += m;
        if e.is_zero() {
            self.mult.remove(&two_j);
        }
    }

    pub fn get(&self, two_j: u32) -> BigInt {
        self.mult.get(&two_j).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &BigInt)> {
        self.mult.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// `Tr (-1)^{2H}`: the signed character at `t = 1`.
    pub fn signed_trace(&self) -> BigInt {
        self.mult
            .iter()
            .map(|(two_j, m)| m * BigInt::from(sign_power(*two_j as i64) * (*two_j as i64 + 1)))
            .sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Object(
            self.mult
                .iter()
                .map(|(j, m)| (format!("{j}/2"), bigint_json(m)))
                .collect(),
        )
    }
}

impl BiSpinDecomp {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = ((u32, u32), i64)>) -> Self {
        let mut d = Self::new();
        for (k, m) in pairs {
            d.add(k, BigInt::from(m));
        }
        d
    }

    pub fn add(&mut self, key: (u32, u32), m: BigInt) {
        if m.is_zero() {
            return;
        }
        let e = self.mult.entry(key).or_insert_with(BigInt::zero);
        *e += m;
        if e.is_zero() {
            self.mult.remove(&key);
        }
    }

    pub fn get(&self, key: (u32, u32)) -> BigInt {
        self.mult.get(&key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.mult.iter()
    }

    /// Signed bicharacter `Σ m (j_L)(t_L) (j_R)(t_R)`.
    pub fn signed_char(&self) -> Laurent2 {
        let mut out = Laurent2::zero();
        for ((l, r), m) in &self.mult {
            let term = Laurent2::outer(&spin_char(*l), &spin_char(*r));
            out = out.add(&term.scale(&Rational::from_integer(m.clone())));
        }
        out
    }

    /// Rewrites the left factor in the `I_h` basis.
    pub fn to_i_basis(&self) -> IBasisDecomp {
        let mut out = IBasisDecomp::default();
        for ((l, r), m) in &self.mult {
            for (h, c) in spin_to_i_basis(&SpinDecomp::from_pairs([(*l, 1)])) {
                out.coeff.entry(h).or_default().add(*r, m * c);
            }
        }
        out.coeff.retain(|_, d| !d.is_empty());
        out
    }
}

impl IBasisDecomp {
    pub fn get(&self, h: u32) -> Option<&SpinDecomp> {
        self.coeff.get(&h)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &SpinDecomp)> {
        self.coeff.iter()
    }

    /// `n_h = Tr_{R_h} (-1)^{2H_R}` for every `h` with nonzero value.
    pub fn bps(&self) -> BTreeMap<u32, BigInt> {
        self.coeff
            .iter()
            .map(|(h, r)| (*h, r.signed_trace()))
            .filter(|(_, n)| !n.is_zero())
            .collect()
    }

    /// `Σ_h u(t_L)^h ⊗ signed_char(R_h)(t_R)`.
    pub fn reconstruct(&self) -> Laurent2 {
        let mut out = Laurent2::zero();
        for (h, r) in &self.coeff {
            out = out.add(&Laurent2::outer(&char_i(*h), &signed_char(r)));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let inner: Map<String, Value> = self
            .coeff
            .iter()
            .map(|(h, r)| (h.to_string(), r.to_json()))
            .collect();
        let mut obj = Map::new();
        obj.insert("I_basis".to_string(), Value::Object(inner));
        Value::Object(obj)
    }
}

fn bigint_json(m: &BigInt) -> Value {
    match i64::try_from(m) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(m.to_string()),
    }
}

/// Signed character of the single spin `2j`.
pub fn spin_char(two_j: u32) -> Laurent1 {
    let sign = int(sign_power(two_j as i64));
    let tj = two_j as i64;
    Laurent1::from_terms((0..=two_j as i64).map(|k| ([tj - 2 * k], sign.clone())))
}

pub fn signed_char(d: &SpinDecomp) -> Laurent1 {
    let mut out = Laurent1::zero();
    for (two_j, m) in &d.mult {
        out = out.add(&spin_char(*two_j).scale(&Rational::from_integer(m.clone())));
    }
    out
}

/// `u = 2 - t - t^{-1}`, the character of `I_1`.
pub fn u_poly() -> Laurent1 {
    Laurent1::from_terms([([1], int(-1)), ([0], int(2)), ([-1], int(-1))])
}

/// Character of `I_h`, i.e. `u^h`.
pub fn char_i(h: u32) -> Laurent1 {
    u_poly().pow(h)
}

fn check_symmetric_integer(p: &Laurent1) -> Result<()> {
    if !p.is_symmetric_in(0) {
        return Err(Error::NotSymmetric(p.to_string()));
    }
    for (_, c) in p.terms() {
        to_integer(c)?;
    }
    Ok(())
}

/// Unique virtual spin content with the given signed character.
pub fn decompose_spins(p: &Laurent1) -> Result<SpinDecomp> {
    check_symmetric_integer(p)?;
    let mut rest = p.clone();
    let mut out = SpinDecomp::new();
    while let Some((_, top)) = rest.exponent_range() {
        let c = to_integer(&rest.coeff([top]))?;
        let m = c * BigInt::from(sign_power(top));
        rest = rest.sub(&spin_char(top as u32).scale(&Rational::from_integer(m.clone())));
        out.add(top as u32, m);
    }
    Ok(out)
}

/// Expands a symmetric `p(t)` as `Σ_h a_h u^h` by peeling the top exponent:
/// `u^h` has leading term `(-1)^h t^h`.
pub fn u_expand(p: &Laurent1) -> Result<BTreeMap<u32, Rational>> {
    if !p.is_symmetric_in(0) {
        return Err(Error::NotSymmetric(p.to_string()));
    }
    let mut rest = p.clone();
    let mut out = BTreeMap::new();
    while let Some((_, top)) = rest.exponent_range() {
        let a = rest.coeff([top]) * int(sign_power(top));
        rest = rest.sub(&char_i(top as u32).scale(&a));
        out.insert(top as u32, a);
    }
    Ok(out)
}

/// Integers `c_h` with `Σ_h c_h char(I_h) = signed_char(d)`.
pub fn spin_to_i_basis(d: &SpinDecomp) -> BTreeMap<u32, BigInt> {
    u_expand(&signed_char(d))
        .expect("signed characters are symmetric")
        .into_iter()
        .map(|(h, c)| (h, c.numer().clone()))
        .collect()
}

/// Bi-spin decomposition of a bigraded character, peeling `t_L` first.
pub fn bi_decompose(p: &Laurent2) -> Result<BiSpinDecomp> {
    if !p.is_symmetric_in(0) || !p.is_symmetric_in(1) {
        return Err(Error::NotSymmetric(p.to_string()));
    }
    for (_, c) in p.terms() {
        to_integer(c)?;
    }
    let mut rest = p.clone();
    let mut out = BiSpinDecomp::new();
    loop {
        let by_left = rest.by_left();
        let Some((&top, coeff)) = by_left.iter().next_back() else {
            break;
        };
        // multiplicity of left spin top/2, as a signed right character
        let right = coeff.scale(&int(sign_power(top)));
        let right_spins = decompose_spins(&right)?;
        for (two_jr, m) in right_spins.iter() {
            out.add((top as u32, *two_jr), m.clone());
        }
        rest = rest.sub(&Laurent2::outer(&spin_char(top as u32), &right));
    }
    Ok(out)
}

/// BPS numbers `n_h` of a bigraded character.
///
/// Computed twice: through the bi-spin decomposition rewritten in the
/// `I_h ⊗ R_h` basis, and by setting `t_R = 1` and expanding in `u`. The two
/// must agree.
pub fn bps_from_character(p: &Laurent2) -> Result<BTreeMap<u32, BigInt>> {
    let via_spins = bi_decompose(p)?.to_i_basis().bps();
    let via_u = bps_via_specialization(p)?;
    if via_spins != via_u {
        return Err(Error::CrossCheck(format!(
            "bi-spin route {via_spins:?} vs t_R=1 route {via_u:?}"
        )));
    }
    Ok(via_spins)
}

/// `t_R = 1` followed by the `u`-expansion.
pub fn bps_via_specialization(p: &Laurent2) -> Result<BTreeMap<u32, BigInt>> {
    u_expand(&p.right_at_one())?
        .into_iter()
        .map(|(h, c)| Ok((h, to_integer(&c)?)))
        .filter(|r| !matches!(r, Ok((_, n)) if n.is_zero()))
        .collect()
}

/// Renders `n_h` as sorted `(h, n)` pairs with zero entries removed.
pub fn nonzero(m: &BTreeMap<u32, BigInt>) -> Vec<(u32, BigInt)> {
    m.iter()
        .filter(|(_, n)| !n.is_zero())
        .map(|(h, n)| (*h, n.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l1(terms: &[(i64, i64)]) -> Laurent1 {
        Laurent1::from_terms(terms.iter().map(|&(e, c)| ([e], int(c))))
    }

    fn l2(terms: &[((i64, i64), i64)]) -> Laurent2 {
        Laurent2::from_terms(terms.iter().map(|&((a, b), c)| ([a, b], int(c))))
    }

    fn bmap(pairs: &[(u32, i64)]) -> BTreeMap<u32, BigInt> {
        pairs.iter().map(|&(h, n)| (h, BigInt::from(n))).collect()
    }

    #[test]
    fn signed_char_examples() {
        assert_eq!(
            signed_char(&SpinDecomp::from_pairs([(0, 1)])),
            l1(&[(0, 1)])
        );
        assert_eq!(
            signed_char(&SpinDecomp::from_pairs([(1, 1)])),
            l1(&[(1, -1), (-1, -1)])
        );
        let i1 = SpinDecomp::from_pairs([(1, 1), (0, 2)]);
        assert_eq!(signed_char(&i1), l1(&[(0, 2), (1, -1), (-1, -1)]));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            decompose_spins(&l1(&[(0, 1)])).unwrap(),
            SpinDecomp::from_pairs([(0, 1)])
        );
        assert_eq!(
            decompose_spins(&l1(&[(2, 1), (0, 1), (-2, 1)])).unwrap(),
            SpinDecomp::from_pairs([(2, 1)])
        );
        assert_eq!(
            decompose_spins(&l1(&[(0, 2), (1, -1), (-1, -1)])).unwrap(),
            SpinDecomp::from_pairs([(1, 1), (0, 2)])
        );
    }

    #[test]
    fn decompose_errors() {
        assert!(matches!(
            decompose_spins(&l1(&[(1, 1)])),
            Err(Error::NotSymmetric(_))
        ));
        let half = Laurent1::constant(crate::rational::rat(1, 2));
        assert!(matches!(
            decompose_spins(&half),
            Err(Error::NonIntegerCoefficient(_))
        ));
        assert!(matches!(
            bi_decompose(&l2(&[((1, 0), 1)])),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn i_basis_examples() {
        assert_eq!(
            spin_to_i_basis(&SpinDecomp::from_pairs([(0, 1)])),
            bmap(&[(0, 1)])
        );
        assert_eq!(
            spin_to_i_basis(&SpinDecomp::from_pairs([(1, 1)])),
            bmap(&[(1, 1), (0, -2)])
        );
        assert_eq!(
            spin_to_i_basis(&SpinDecomp::from_pairs([(2, 1)])),
            bmap(&[(2, 1), (1, -4), (0, 3)])
        );
    }

    #[test]
    fn char_i_is_power_of_u() {
        let mut acc = Laurent1::constant(int(1));
        for h in 0..=12 {
            assert_eq!(char_i(h), acc);
            acc = acc.mul(&u_poly());
        }
        let i1 = SpinDecomp::from_pairs([(1, 1), (0, 2)]);
        assert_eq!(char_i(1), signed_char(&i1));
    }

    #[test]
    fn bi_decompose_examples() {
        let blowup = l2(&[((0, 2), 1), ((0, -2), 1), ((0, 0), 2)]);
        assert_eq!(
            bi_decompose(&blowup).unwrap(),
            BiSpinDecomp::from_pairs([((0, 2), 1), ((0, 0), 1)])
        );
        let surface = l2(&[
            ((-1, -1), 1),
            ((1, -1), 1),
            ((-1, 1), 1),
            ((1, 1), 1),
            ((0, 0), 8),
        ]);
        assert_eq!(
            bi_decompose(&surface).unwrap(),
            BiSpinDecomp::from_pairs([((1, 1), 1), ((0, 0), 8)])
        );
        assert_eq!(
            bi_decompose(&l2(&[((0, 0), 1)])).unwrap(),
            BiSpinDecomp::from_pairs([((0, 0), 1)])
        );
    }

    #[test]
    fn bps_examples() {
        let elliptic = l2(&[((0, 0), 2), ((1, 0), -1), ((-1, 0), -1)]);
        assert_eq!(bps_from_character(&elliptic).unwrap(), bmap(&[(1, 1)]));
        assert_eq!(
            bps_from_character(&l2(&[((0, 0), 1)])).unwrap(),
            bmap(&[(0, 1)])
        );
        let surface = l2(&[
            ((-1, -1), 1),
            ((1, -1), 1),
            ((-1, 1), 1),
            ((1, 1), 1),
            ((0, 0), 8),
        ]);
        assert_eq!(
            bps_from_character(&surface).unwrap(),
            bmap(&[(0, 12), (1, -2)])
        );
    }

    #[test]
    fn blowup_fixture() {
        // left grading trivial, right grading -2, 0 (twice), 2
        let blowup = l2(&[((0, -2), 1), ((0, 0), 2), ((0, 2), 1)]);
        let ib = bi_decompose(&blowup).unwrap().to_i_basis();
        assert_eq!(ib.iter().count(), 1);
        assert_eq!(
            ib.get(0).unwrap(),
            &SpinDecomp::from_pairs([(2, 1), (0, 1)])
        );
        assert_eq!(bps_from_character(&blowup).unwrap(), bmap(&[(0, 4)]));
        assert_eq!(ib.reconstruct(), blowup);
    }

    #[test]
    fn json_shape() {
        let ib = BiSpinDecomp::from_pairs([((1, 1), 1), ((0, 0), 8)]).to_i_basis();
        let v = ib.to_json();
        assert_eq!(v["I_basis"]["1"]["1/2"], Value::from(1));
        assert_eq!(v["I_basis"]["0"]["0/2"], Value::from(8));
        assert_eq!(v["I_basis"]["0"]["1/2"], Value::from(-2));
    }
}
