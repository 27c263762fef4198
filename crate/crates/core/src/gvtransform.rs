//! The Gopakumar–Vafa transform between Gromov–Witten and BPS tables:
//!
//! ```text
//! Σ_{g,β} N_g(β) q^β λ^{2g-2} = Σ_{k≥1,h,β} n_h(β) (1/k) (2 sin(kλ/2))^{2h-2} q^{kβ}
//! ```
//!
//! Curve classes live in a rank-`r` effective cone `Z_{≥0}^r` with a positive
//! integer degree functional. Writing `(2 sin(kλ/2))^{2h-2} = (kλ)^{2h-2} s(kλ)^{2h-2}`
//! with `s(λ) = 2 sin(λ/2)/λ`, the class `kβ` receives
//! `n_h(β) k^{2g-3} [x^{g-h}] s(x)^{2h-2}` at genus `g` (with `x = λ²`).

use crate::error::{Error, Result};
use crate::rational::{from_wire, int, to_integer, to_wire, Rational};
use crate::series::QSeries;
use crate::trig::half_angle_sinc;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// A class `β = (c_1, ..., c_r)` of the effective cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass(pub Vec<u64>);

impl CurveClass {
    pub fn new(components: impl Into<Vec<u64>>) -> Self {
        Self(components.into())
    }

    pub fn components(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn degree(&self, weights: &[u64]) -> u64 {
        self.0.iter().zip(weights).map(|(c, w)| c * w).sum()
    }

    pub fn scale(&self, k: u64) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }

    /// `β / k` when every component is divisible by `k`.
    pub fn divide(&self, k: u64) -> Option<Self> {
        self.0
            .iter()
            .all(|c| c % k == 0)
            .then(|| Self(self.0.iter().map(|c| c / k).collect()))
    }
}

/// How entries missing from a table inside its truncation window are read.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Absent {
    #[default]
    Zero,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Gw,
    Bps,
}

/// Lattice and truncation window shared by both table kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMeta {
    pub degree_weights: Vec<u64>,
    pub max_genus: usize,
    pub max_degree: u64,
    pub absent: Absent,
}

impl TableMeta {
    pub fn new(degree_weights: Vec<u64>, max_genus: usize, max_degree: u64) -> Result<Self> {
        if degree_weights.is_empty() || degree_weights.contains(&0) {
            return Err(Error::InvalidInput(
                "degree weights must be a nonempty list of positive integers".into(),
            ));
        }
        Ok(Self {
            degree_weights,
            max_genus,
            max_degree,
            absent: Absent::Zero,
        })
    }

    pub fn with_absent(mut self, absent: Absent) -> Self {
        self.absent = absent;
        self
    }

    pub fn rank(&self) -> usize {
        self.degree_weights.len()
    }

    pub fn degree(&self, class: &CurveClass) -> u64 {
        class.degree(&self.degree_weights)
    }

    /// All nonzero effective classes of degree `<= max_degree`, ordered by
    /// degree then lexicographically.
    pub fn classes_up_to(&self, max_degree: u64) -> Vec<CurveClass> {
        let mut out = Vec::new();
        let mut current = vec![0u64; self.rank()];
        self.enumerate(0, 0, max_degree, &mut current, &mut out);
        out.retain(|c| !c.is_zero());
        out.sort_by(|a, b| self.degree(a).cmp(&self.degree(b)).then_with(|| a.cmp(b)));
        out
    }

    fn enumerate(
        &self,
        idx: usize,
        used: u64,
        max: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<CurveClass>,
    ) {
        if idx == self.rank() {
            out.push(CurveClass(current.clone()));
            return;
        }
        let w = self.degree_weights[idx];
        let mut c = 0;
        while used + c * w <= max {
            current[idx] = c;
            self.enumerate(idx + 1, used + c * w, max, current, out);
            c += 1;
        }
        current[idx] = 0;
    }

    fn check_class(&self, class: &CurveClass) -> Result<()> {
        if class.0.len() != self.rank() {
            return Err(Error::InvalidInput(format!(
                "class {:?} has {} components, lattice rank is {}",
                class.0,
                class.0.len(),
                self.rank()
            )));
        }
        if class.is_zero() {
            return Err(Error::InvalidInput(
                "the zero class carries no invariants".into(),
            ));
        }
        Ok(())
    }
}

/// Invariants indexed by `(genus, class)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table<V> {
    pub meta: TableMeta,
    entries: BTreeMap<(usize, CurveClass), V>,
}

/// `N_g(β)`.
pub type GwTable = Table<Rational>;
/// `n_h(β)`.
pub type BpsTable = Table<BigInt>;

impl<V: Clone + Zero> Table<V> {
    pub fn new(meta: TableMeta) -> Self {
        Self {
            meta,
            entries: BTreeMap::new(),
        }
    }

    /// Inserts an entry; zeros are recorded too, so that `Absent::Unknown`
    /// tables can state explicit zeros.
    pub fn insert(&mut self, genus: usize, class: CurveClass, value: V) -> Result<()> {
        self.meta.check_class(&class)?;
        if genus > self.meta.max_genus || self.meta.degree(&class) > self.meta.max_degree {
            return Err(Error::InvalidInput(format!(
                "entry (g={genus}, {:?}) lies outside the table window",
                class.0
            )));
        }
        self.entries.insert((genus, class), value);
        Ok(())
    }

    pub fn get(&self, genus: usize, class: &CurveClass) -> Option<&V> {
        self.entries.get(&(genus, class.clone()))
    }

    /// Value inside the window, honouring the absent-entry semantics.
    pub fn value(&self, genus: usize, class: &CurveClass) -> Result<V> {
        if genus > self.meta.max_genus || self.meta.degree(class) > self.meta.max_degree {
            return Err(Error::InsufficientTruncation(format!(
                "(g={genus}, {:?}) is outside the table window (max genus {}, max degree {})",
                class.0, self.meta.max_genus, self.meta.max_degree
            )));
        }
        match (self.entries.get(&(genus, class.clone())), self.meta.absent) {
            (Some(v), _) => Ok(v.clone()),
            (None, Absent::Zero) => Ok(V::zero()),
            (None, Absent::Unknown) => Err(Error::InsufficientTruncation(format!(
                "entry (g={genus}, {:?}) is unknown",
                class.0
            ))),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, CurveClass), &V)> {
        self.entries.iter()
    }

    /// Entries with nonzero value.
    pub fn nonzero(&self) -> impl Iterator<Item = (&(usize, CurveClass), &V)> {
        self.entries.iter().filter(|(_, v)| !v.is_zero())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A Laurent series in `λ` with only even exponents, starting at `λ^lowest`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaSeries {
    lowest: i64,
    /// `coeffs[i]` multiplies `λ^{lowest + 2i}`.
    coeffs: Vec<Rational>,
}

impl LambdaSeries {
    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    /// Highest exponent present, if any.
    pub fn highest(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.lowest + 2 * (self.coeffs.len() as i64 - 1))
    }

    /// Coefficient of `λ^exp` (zero for odd or out-of-range exponents).
    pub fn coeff(&self, exp: i64) -> Rational {
        let d = exp - self.lowest;
        if d < 0 || d % 2 != 0 {
            return Rational::zero();
        }
        self.coeffs
            .get((d / 2) as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.lowest + 2 * i as i64, c))
    }
}

/// `(2 sin(kλ/2))^{2h-2}` expanded exactly through `λ^lambda_order`.
pub fn sin_power_series(k: u64, h: usize, lambda_order: i64) -> LambdaSeries {
    assert!(k >= 1, "multicover degree must be positive");
    let lowest = 2 * h as i64 - 2;
    if lambda_order < lowest {
        return LambdaSeries {
            lowest,
            coeffs: Vec::new(),
        };
    }
    let terms = ((lambda_order - lowest) / 2) as usize;
    let sinc = half_angle_sinc(terms);
    let power: QSeries = sinc
        .pow(2 * h as i64 - 2)
        .expect("sinc has constant term 1");
    let k2 = Rational::from_integer(BigInt::from(k) * BigInt::from(k));
    // (kλ)^{2h-2} s(k²x)^{2h-2}
    let lead = Rational::from_integer(BigInt::from(k)).pow(2 * h as i32 - 2);
    let mut scale = lead;
    let coeffs = power
        .coeffs()
        .iter()
        .map(|c| {
            let v = c * &scale;
            scale = &scale * &k2;
            v
        })
        .collect();
    LambdaSeries { lowest, coeffs }
}

/// Highest genus visible at `λ^lambda_order`.
pub fn genus_for_lambda_order(lambda_order: i64) -> Result<usize> {
    if lambda_order < -2 {
        return Err(Error::InvalidInput(format!(
            "lambda order {lambda_order} is below the λ^-2 leading term"
        )));
    }
    Ok(((lambda_order + 2) / 2) as usize)
}

struct SinCache {
    lambda_order: i64,
    cache: HashMap<(u64, usize), LambdaSeries>,
}

impl SinCache {
    fn new(lambda_order: i64, max_k: u64, max_h: usize) -> Self {
        let cache = (1..=max_k)
            .flat_map(|k| (0..=max_h).map(move |h| (k, h)))
            .map(|(k, h)| ((k, h), sin_power_series(k, h, lambda_order)))
            .collect();
        Self {
            lambda_order,
            cache,
        }
    }

    /// `(1/k) [λ^{2g-2}] (2 sin(kλ/2))^{2h-2}`.
    fn weight(&self, k: u64, h: usize, g: usize) -> Rational {
        let s = match self.cache.get(&(k, h)) {
            Some(s) => s.coeff(2 * g as i64 - 2),
            None => sin_power_series(k, h, self.lambda_order).coeff(2 * g as i64 - 2),
        };
        s / int(k as i64)
    }
}

fn check_window(meta: &TableMeta, genus: usize, degree: u64, what: &str) -> Result<()> {
    if genus > meta.max_genus || degree > meta.max_degree {
        return Err(Error::InsufficientTruncation(format!(
            "{what} table covers genus <= {} and degree <= {}, but genus {genus} and degree {degree} are required",
            meta.max_genus, meta.max_degree
        )));
    }
    Ok(())
}

/// BPS table to GW table, through `λ^lambda_order` and class degree
/// `degree_order`.
pub fn gw_from_gv(bps: &BpsTable, lambda_order: i64, degree_order: u64) -> Result<GwTable> {
    let max_genus = genus_for_lambda_order(lambda_order)?;
    check_window(&bps.meta, max_genus, degree_order, "BPS")?;
    let meta = TableMeta {
        degree_weights: bps.meta.degree_weights.clone(),
        max_genus,
        max_degree: degree_order,
        absent: Absent::Zero,
    };
    let classes = meta.classes_up_to(degree_order);
    let sin = SinCache::new(lambda_order, degree_order.max(1), max_genus);

    // every (h, β) in the window is read up front so unknown entries fail fast
    let mut sources: Vec<(usize, CurveClass, BigInt)> = Vec::new();
    for beta in &classes {
        for h in 0..=max_genus {
            let n = bps.value(h, beta)?;
            if !n.is_zero() {
                sources.push((h, beta.clone(), n));
            }
        }
    }

    let contributions: Vec<Vec<((usize, CurveClass), Rational)>> = sources
        .par_iter()
        .map(|(h, beta, n)| {
            let deg = meta.degree(beta);
            let n = Rational::from_integer(n.clone());
            let mut out = Vec::new();
            let mut k = 1;
            while k * deg <= degree_order {
                let target = beta.scale(k);
                for g in *h..=max_genus {
                    let w = sin.weight(k, *h, g);
                    if !w.is_zero() {
                        out.push(((g, target.clone()), &n * w));
                    }
                }
                k += 1;
            }
            out
        })
        .collect();

    let mut sums: BTreeMap<(usize, CurveClass), Rational> = BTreeMap::new();
    for (key, v) in contributions.into_iter().flatten() {
        *sums.entry(key).or_insert_with(Rational::zero) += v;
    }
    let mut gw = GwTable::new(meta);
    for ((g, beta), v) in sums {
        if !v.is_zero() {
            gw.insert(g, beta, v)?;
        }
    }
    Ok(gw)
}

/// GW table to BPS table, solving degree by degree.
///
/// Fails with [`Error::NonIntegralBps`] when a solved value is not an
/// integer.
pub fn gv_from_gw(gw: &GwTable, lambda_order: i64, degree_order: u64) -> Result<BpsTable> {
    let max_genus = genus_for_lambda_order(lambda_order)?;
    check_window(&gw.meta, max_genus, degree_order, "GW")?;
    let meta = TableMeta {
        degree_weights: gw.meta.degree_weights.clone(),
        max_genus,
        max_degree: degree_order,
        absent: Absent::Zero,
    };
    let classes = meta.classes_up_to(degree_order);
    let sin = SinCache::new(lambda_order, degree_order.max(1), max_genus);

    let mut solved: BTreeMap<CurveClass, Vec<BigInt>> = BTreeMap::new();
    let mut level_start = 0;
    while level_start < classes.len() {
        let deg = meta.degree(&classes[level_start]);
        let level_end = classes[level_start..]
            .iter()
            .position(|c| meta.degree(c) != deg)
            .map_or(classes.len(), |p| level_start + p);
        let level = &classes[level_start..level_end];
        let results: Vec<Result<(CurveClass, Vec<BigInt>)>> = level
            .par_iter()
            .map(|beta| solve_class(gw, beta, max_genus, &sin, &solved).map(|n| (beta.clone(), n)))
            .collect();
        for r in results {
            let (beta, n) = r?;
            solved.insert(beta, n);
        }
        level_start = level_end;
    }

    let mut bps = BpsTable::new(meta);
    for (beta, ns) in solved {
        for (h, n) in ns.into_iter().enumerate() {
            if !n.is_zero() {
                bps.insert(h, beta.clone(), n)?;
            }
        }
    }
    Ok(bps)
}

fn solve_class(
    gw: &GwTable,
    beta: &CurveClass,
    max_genus: usize,
    sin: &SinCache,
    solved: &BTreeMap<CurveClass, Vec<BigInt>>,
) -> Result<Vec<BigInt>> {
    let mut residual: Vec<Rational> = (0..=max_genus)
        .map(|g| gw.value(g, beta))
        .collect::<Result<_>>()?;
    // multicover contributions of β/k, all of strictly smaller degree
    let max_k = beta.components().iter().copied().max().unwrap_or(1);
    for k in 2..=max_k {
        let Some(base) = beta.divide(k) else { continue };
        let ns = solved
            .get(&base)
            .expect("classes of smaller degree are solved first");
        for (h, n) in ns.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let n = Rational::from_integer(n.clone());
            for (g, r) in residual.iter_mut().enumerate().skip(h) {
                *r -= &n * sin.weight(k, h, g);
            }
        }
    }
    // k = 1 is unitriangular in (g, h)
    let mut out: Vec<BigInt> = Vec::with_capacity(max_genus + 1);
    for g in 0..=max_genus {
        let mut v = residual[g].clone();
        for (h, n) in out.iter().enumerate() {
            v -= Rational::from_integer(n.clone()) * sin.weight(1, h, g);
        }
        let n = to_integer(&v).map_err(|_| Error::NonIntegralBps {
            class: beta.0.clone(),
            genus: g,
            value: v.clone(),
        })?;
        out.push(n);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundtripDiff {
    pub genus: usize,
    pub class: CurveClass,
    pub expected: BigInt,
    pub got: BigInt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundtripReport {
    pub lambda_order: i64,
    pub degree_order: u64,
    pub diffs: Vec<RoundtripDiff>,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.diffs.is_empty()
    }
}

/// Checks `gv_from_gw(gw_from_gv(bps)) == bps` inside the truncation window.
pub fn roundtrip_check(
    bps: &BpsTable,
    lambda_order: i64,
    degree_order: u64,
) -> Result<RoundtripReport> {
    let gw = gw_from_gv(bps, lambda_order, degree_order)?;
    let back = gv_from_gw(&gw, lambda_order, degree_order)?;
    let max_genus = genus_for_lambda_order(lambda_order)?;
    let mut diffs = Vec::new();
    for beta in back.meta.classes_up_to(degree_order) {
        for h in 0..=max_genus {
            let expected = bps.value(h, &beta)?;
            let got = back.value(h, &beta)?;
            if expected != got {
                diffs.push(RoundtripDiff {
                    genus: h,
                    class: beta.clone(),
                    expected,
                    got,
                });
            }
        }
    }
    Ok(RoundtripReport {
        lambda_order,
        degree_order,
        diffs,
    })
}

/// Wire form of a table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub rank: usize,
    pub degree_weights: Vec<u64>,
    pub kind: TableKind,
    pub max_genus: usize,
    pub max_degree: u64,
    #[serde(default)]
    pub absent: Absent,
    pub entries: Vec<EntryJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub genus: usize,
    pub class: Vec<u64>,
    pub value: String,
}

fn meta_from_json(json: &TableJson) -> Result<TableMeta> {
    if json.rank != json.degree_weights.len() {
        return Err(Error::Parse(format!(
            "rank {} does not match {} degree weights",
            json.rank,
            json.degree_weights.len()
        )));
    }
    Ok(
        TableMeta::new(json.degree_weights.clone(), json.max_genus, json.max_degree)?
            .with_absent(json.absent),
    )
}

fn meta_to_json(meta: &TableMeta, kind: TableKind, entries: Vec<EntryJson>) -> TableJson {
    TableJson {
        rank: meta.rank(),
        degree_weights: meta.degree_weights.clone(),
        kind,
        max_genus: meta.max_genus,
        max_degree: meta.max_degree,
        absent: meta.absent,
        entries,
    }
}

fn fill<V: Clone + Zero>(
    table: &mut Table<V>,
    json: &TableJson,
    parse: impl Fn(&str) -> Result<V>,
) -> Result<()> {
    for e in &json.entries {
        let key = (e.genus, CurveClass(e.class.clone()));
        if table.entries.contains_key(&key) {
            return Err(Error::Parse(format!(
                "duplicate entry (g={}, {:?})",
                e.genus, e.class
            )));
        }
        table.insert(e.genus, key.1, parse(&e.value)?)?;
    }
    Ok(())
}

impl GwTable {
    pub fn from_json(json: &TableJson) -> Result<Self> {
        if json.kind != TableKind::Gw {
            return Err(Error::Parse("expected a table of kind \"gw\"".into()));
        }
        let mut t = Self::new(meta_from_json(json)?);
        fill(&mut t, json, from_wire)?;
        Ok(t)
    }

    pub fn to_json(&self) -> TableJson {
        let entries = self
            .entries
            .iter()
            .map(|((g, c), v)| EntryJson {
                genus: *g,
                class: c.0.clone(),
                value: to_wire(v),
            })
            .collect();
        meta_to_json(&self.meta, TableKind::Gw, entries)
    }
}

impl BpsTable {
    pub fn from_json(json: &TableJson) -> Result<Self> {
        if json.kind != TableKind::Bps {
            return Err(Error::Parse("expected a table of kind \"bps\"".into()));
        }
        let mut t = Self::new(meta_from_json(json)?);
        fill(&mut t, json, |s| {
            to_integer(&from_wire(s)?)
                .map_err(|_| Error::Parse(format!("BPS value {s:?} is not an integer")))
        })?;
        Ok(t)
    }

    pub fn to_json(&self) -> TableJson {
        let entries = self
            .entries
            .iter()
            .map(|((g, c), v)| EntryJson {
                genus: *g,
                class: c.0.clone(),
                value: to_wire(&Rational::from_integer(v.clone())),
            })
            .collect();
        meta_to_json(&self.meta, TableKind::Bps, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn rank1(max_genus: usize, max_degree: u64) -> TableMeta {
        TableMeta::new(vec![1], max_genus, max_degree).unwrap()
    }

    #[test]
    fn class_enumeration() {
        let meta = TableMeta::new(vec![1, 2], 0, 3).unwrap();
        let classes: Vec<Vec<u64>> = meta.classes_up_to(3).into_iter().map(|c| c.0).collect();
        assert_eq!(
            classes,
            vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![3, 0]]
        );
        assert!(TableMeta::new(vec![0], 0, 1).is_err());
    }

    #[test]
    fn sin_power_examples() {
        let one = sin_power_series(1, 1, 8);
        assert_eq!(one.coeff(0), int(1));
        assert_eq!(one.coeff(2), int(0));
        let inv = sin_power_series(1, 0, 4);
        assert_eq!(inv.lowest(), -2);
        assert_eq!(inv.coeff(-2), int(1));
        assert_eq!(inv.coeff(0), rat(1, 12));
        assert_eq!(inv.coeff(2), rat(1, 240));
        let k2 = sin_power_series(2, 2, 4);
        assert_eq!(k2.coeff(2), int(4));
        assert_eq!(k2.coeff(4), rat(-4, 3));
        assert_eq!(k2.highest(), Some(4));
    }

    #[test]
    fn genus_zero_multicover_law() {
        let mut bps = BpsTable::new(rank1(4, 6));
        bps.insert(0, CurveClass::new([1]), BigInt::from(1))
            .unwrap();
        let gw = gw_from_gv(&bps, 6, 6).unwrap();
        for k in 1..=6i64 {
            assert_eq!(
                gw.value(0, &CurveClass::new([k as u64])).unwrap(),
                rat(1, k * k * k)
            );
        }
    }

    #[test]
    fn elliptic_tower() {
        let mut bps = BpsTable::new(rank1(4, 6));
        for n in 1..=6 {
            bps.insert(1, CurveClass::new([n]), BigInt::from(1))
                .unwrap();
        }
        let gw = gw_from_gv(&bps, 6, 6).unwrap();
        for n in 1..=6u64 {
            let sigma_over_n = (1..=n)
                .filter(|d| n % d == 0)
                .fold(Rational::zero(), |a, d| a + rat(1, d as i64));
            assert_eq!(gw.value(1, &CurveClass::new([n])).unwrap(), sigma_over_n);
            for g in [0, 2, 3, 4] {
                assert!(gw.value(g, &CurveClass::new([n])).unwrap().is_zero());
            }
        }
        let back = gv_from_gw(&gw, 6, 6).unwrap();
        assert_eq!(back.nonzero().count(), 6);
    }

    #[test]
    fn zero_tables() {
        let bps = BpsTable::new(rank1(3, 4));
        let gw = gw_from_gv(&bps, 4, 4).unwrap();
        assert!(gw.is_empty());
        assert!(gv_from_gw(&gw, 4, 4).unwrap().is_empty());
    }

    #[test]
    fn non_integral_input_is_reported() {
        let mut gw = GwTable::new(rank1(2, 2));
        gw.insert(0, CurveClass::new([1]), rat(1, 2)).unwrap();
        match gv_from_gw(&gw, 2, 2) {
            Err(Error::NonIntegralBps {
                class,
                genus,
                value,
            }) => {
                assert_eq!(class, vec![1]);
                assert_eq!(genus, 0);
                assert_eq!(value, rat(1, 2));
            }
            other => panic!("expected NonIntegralBps, got {other:?}"),
        }
    }

    #[test]
    fn unknown_entries_are_hard_errors() {
        let meta = rank1(1, 2).with_absent(Absent::Unknown);
        let mut bps = BpsTable::new(meta);
        bps.insert(0, CurveClass::new([1]), BigInt::from(1))
            .unwrap();
        assert!(matches!(
            gw_from_gv(&bps, 0, 2),
            Err(Error::InsufficientTruncation(_))
        ));
        // window beyond the declared truncation
        let bps = BpsTable::new(rank1(1, 2));
        assert!(matches!(
            gw_from_gv(&bps, 4, 2),
            Err(Error::InsufficientTruncation(_))
        ));
        assert!(matches!(
            gw_from_gv(&bps, 0, 3),
            Err(Error::InsufficientTruncation(_))
        ));
    }

    #[test]
    fn lambda_parity() {
        for k in 1..4 {
            for h in 0..4 {
                let s = sin_power_series(k, h, 10);
                assert!(s.terms().all(|(e, _)| e % 2 == 0));
            }
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let mut bps = BpsTable::new(TableMeta::new(vec![1, 1], 2, 3).unwrap());
        bps.insert(1, CurveClass::new([1, 2]), BigInt::from(-3))
            .unwrap();
        let j = bps.to_json();
        assert_eq!(j.entries[0].value, "-3/1");
        assert_eq!(BpsTable::from_json(&j).unwrap(), bps);
        assert!(GwTable::from_json(&j).is_err());

        let mut bad = j.clone();
        bad.entries[0].value = "1/2".into();
        assert!(BpsTable::from_json(&bad).is_err());
        let mut bad = j.clone();
        bad.entries.push(bad.entries[0].clone());
        assert!(BpsTable::from_json(&bad).is_err());
        let mut bad = j.clone();
        bad.entries[0].class = vec![1];
        assert!(BpsTable::from_json(&bad).is_err());
        let mut bad = j;
        bad.rank = 3;
        assert!(BpsTable::from_json(&bad).is_err());
    }
}
