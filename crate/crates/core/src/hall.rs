//! Hall polynomials of the cyclic quiver and the Hall algebra they define.
//!
//! `c^κ_{κ′,κ″}(q)` counts subrepresentations `W′ ⊂ W` with `W ≅ κ`, `W′ ≅ κ′`
//! (the sub) and `W/W′ ≅ κ″` (the quotient), and
//! `S_{κ′} · S_{κ″} = Σ_κ c^κ_{κ′,κ″}(q) S_κ`.
//!
//! Polynomials are found by sampling the brute-force count over the field sizes
//! in [`SUPPORTED_Q`] until two consecutive interpolants agree, then checking one
//! further sample against the candidate.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::SUPPORTED_Q;
use crate::poly::{interpolate_integer, interpolate_rational, HallPolynomial};
use crate::quiver::{build_rep, subrep_census, SubrepCensus};
use crate::root_data::{cartan_pairing, kostant_partitions, DimVector, Flavor, Multisegment, Segment};

/// Enumeration limits. Brute force fails loudly instead of running away.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest `|wt(W)|` for which counts are attempted.
    pub max_weight: u32,
    /// Largest number of candidate subspaces visited for a single census.
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_weight: 8, max_nodes: 20_000_000 }
    }
}

/// `(W, sub, quot)` identifying one structure constant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HallKey {
    pub w: Multisegment,
    pub sub: Multisegment,
    pub quot: Multisegment,
}

impl HallKey {
    pub fn new(w: Multisegment, sub: Multisegment, quot: Multisegment) -> Result<Self> {
        let n = w.rank();
        for m in [&sub, &quot] {
            if m.rank() != n {
                return Err(Error::RankMismatch { expected: n, got: m.rank() });
            }
        }
        if &sub.weight() + &quot.weight() != w.weight() {
            return Err(Error::WeightMismatch(format!("wt({sub}) + wt({quot}) != wt({w})")));
        }
        Ok(Self { w, sub, quot })
    }

    pub fn rank(&self) -> usize {
        self.w.rank()
    }
}

/// An interpolated polynomial together with the field sizes it was sampled at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallRecord {
    pub poly: HallPolynomial,
    pub samples: Vec<u32>,
}

/// Memoizing evaluator of structure constants.
///
/// Censuses are shared between all `(sub, quot)` pairs of the same dimension
/// vector, so a product `S_a·S_b` costs one enumeration per target class and field.
#[derive(Debug, Default)]
pub struct HallEngine {
    budget: Budget,
    censuses: BTreeMap<(Multisegment, DimVector, u32), SubrepCensus>,
    computed: BTreeMap<HallKey, HallRecord>,
    preloaded: BTreeMap<HallKey, HallRecord>,
    products: BTreeMap<(Multisegment, Multisegment), Vec<(Multisegment, HallPolynomial)>>,
    rejected_preloads: usize,
}

impl HallEngine {
    pub fn new(budget: Budget) -> Self {
        Self { budget, ..Self::default() }
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Offers a previously computed polynomial. It is re-checked against a q = 2
    /// count the first time it is used and dropped if that check fails.
    pub fn preload(&mut self, key: HallKey, record: HallRecord) {
        if !self.computed.contains_key(&key) {
            self.preloaded.insert(key, record);
        }
    }

    /// Polynomials established in this engine (accepted preloads included).
    pub fn records(&self) -> &BTreeMap<HallKey, HallRecord> {
        &self.computed
    }

    /// Number of preloaded polynomials that failed re-verification.
    pub fn rejected_preloads(&self) -> usize {
        self.rejected_preloads
    }

    fn census(&mut self, w: &Multisegment, sub_dims: &DimVector, q: u32) -> Result<&SubrepCensus> {
        let key = (w.clone(), sub_dims.clone(), q);
        if !self.censuses.contains_key(&key) {
            let rep = build_rep(w, q)?;
            let census = subrep_census(&rep, sub_dims, self.budget.max_nodes)?;
            self.censuses.insert(key.clone(), census);
        }
        Ok(&self.censuses[&key])
    }

    fn check_budget(&self, w: &Multisegment) -> Result<()> {
        let total = w.weight().total();
        if total > self.budget.max_weight {
            return Err(Error::BudgetExceeded(format!(
                "|wt({w})| = {total} exceeds the Hall counting budget {}",
                self.budget.max_weight
            )));
        }
        Ok(())
    }

    /// `c^W_{sub,quot}` evaluated at one field size by brute force.
    pub fn count(&mut self, key: &HallKey, q: u32) -> Result<u64> {
        self.check_budget(&key.w)?;
        let census = self.census(&key.w, &key.sub.weight(), q)?;
        Ok(census.get(&(key.sub.clone(), key.quot.clone())).copied().unwrap_or(0))
    }

    /// The full sampled record for `c^W_{sub,quot}(q)`.
    pub fn hall_record(&mut self, key: &HallKey) -> Result<HallRecord> {
        if let Some(r) = self.computed.get(key) {
            return Ok(r.clone());
        }
        if let Some(r) = self.preloaded.remove(key) {
            let y = self.count(key, 2)?;
            if r.poly.eval(2) == i128::from(y) {
                self.computed.insert(key.clone(), r.clone());
                return Ok(r);
            }
            self.rejected_preloads += 1;
        }
        let record = self.sample(key)?;
        self.computed.insert(key.clone(), record.clone());
        Ok(record)
    }

    pub fn hall_polynomial(&mut self, key: &HallKey) -> Result<HallPolynomial> {
        Ok(self.hall_record(key)?.poly)
    }

    /// Hall polynomial with the quotient/sub roles exchanged, `c^W_{quot,sub}`.
    pub fn hall_polynomial_swapped(&mut self, key: &HallKey) -> Result<HallPolynomial> {
        let swapped = HallKey::new(key.w.clone(), key.quot.clone(), key.sub.clone())?;
        self.hall_polynomial(&swapped)
    }

    fn sample(&mut self, key: &HallKey) -> Result<HallRecord> {
        let mut points: Vec<(i64, i128)> = Vec::new();
        let mut candidate: Option<Vec<BigRational>> = None;
        for &q in SUPPORTED_Q.iter() {
            let y = i128::from(self.count(key, q)?);
            if let Some(c) = &candidate {
                if eval_rational(c, q) == BigRational::from_integer(BigInt::from(y)) {
                    points.push((i64::from(q), y));
                    let poly = interpolate_integer(&points[..points.len() - 2])?;
                    let samples = points.iter().map(|&(x, _)| x as u32).collect();
                    return Ok(HallRecord { poly, samples });
                }
                candidate = None;
            }
            let prev = if points.is_empty() { None } else { Some(interpolate_rational(&points)) };
            points.push((i64::from(q), y));
            if let Some(prev) = prev {
                if eval_rational(&prev, q) == BigRational::from_integer(BigInt::from(y)) {
                    candidate = Some(prev);
                }
            }
        }
        Err(Error::NonStabilizing(format!(
            "c^{{{}}}_{{{},{}}} did not stabilize over q in {:?}",
            key.w, key.sub, key.quot, SUPPORTED_Q
        )))
    }

    /// `S_a · S_b` as a list of `(κ, c^κ_{a,b}(q))` with nonzero coefficients.
    pub fn basis_product(&mut self, a: &Multisegment, b: &Multisegment) -> Result<Vec<(Multisegment, HallPolynomial)>> {
        if a.rank() != b.rank() {
            return Err(Error::RankMismatch { expected: a.rank(), got: b.rank() });
        }
        let pair = (a.clone(), b.clone());
        if let Some(p) = self.products.get(&pair) {
            return Ok(p.clone());
        }
        let n = a.rank();
        let weight = &a.weight() + &b.weight();
        if weight.total() > self.budget.max_weight {
            return Err(Error::BudgetExceeded(format!(
                "product weight {} exceeds the Hall counting budget {}",
                weight.total(),
                self.budget.max_weight
            )));
        }
        let mut out = Vec::new();
        for kappa in kostant_partitions(n, &weight, Flavor::Gl)? {
            let key = HallKey { w: kappa.clone(), sub: a.clone(), quot: b.clone() };
            let c = self.hall_polynomial(&key)?;
            if !c.is_zero() {
                out.push((kappa, c));
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        self.products.insert(pair, out.clone());
        Ok(out)
    }

    /// Bilinear extension of [`HallEngine::basis_product`].
    pub fn multiply<C: Coefficient>(&mut self, a: &HallElement<C>, b: &HallElement<C>) -> Result<HallElement<C>> {
        if a.n != b.n {
            return Err(Error::RankMismatch { expected: a.n, got: b.n });
        }
        let mut out = HallElement::zero(a.n);
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let coef = ca.mul(cb);
                for (k, c) in self.basis_product(ka, kb)? {
                    out.add_term(k, coef.mul(&C::from_hall(&c)));
                }
            }
        }
        Ok(out)
    }
}

fn eval_rational(coeffs: &[BigRational], q: u32) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(q));
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

/// One-shot `c^W_{sub,quot}(q)` with a fresh engine and default budget.
pub fn hall_polynomial(w: &Multisegment, sub: &Multisegment, quot: &Multisegment) -> Result<HallPolynomial> {
    let key = HallKey::new(w.clone(), sub.clone(), quot.clone())?;
    HallEngine::new(Budget::default()).hall_polynomial(&key)
}

/// One-shot brute-force count over `F_q`.
pub fn count_subreps(w: &Multisegment, sub: &Multisegment, quot: &Multisegment, q: u32) -> Result<u64> {
    let key = HallKey::new(w.clone(), sub.clone(), quot.clone())?;
    HallEngine::new(Budget::default()).count(&key, q)
}

/// Coefficient ring of a Hall element: `Z[q]` for the generic algebra, `Z` at `q = 1`.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_int(c: i64) -> Self;
    fn from_hall(p: &HallPolynomial) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn write_term(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

impl Coefficient for HallPolynomial {
    fn zero() -> Self {
        HallPolynomial::zero()
    }
    fn is_zero(&self) -> bool {
        HallPolynomial::is_zero(self)
    }
    fn from_int(c: i64) -> Self {
        HallPolynomial::constant(c)
    }
    fn from_hall(p: &HallPolynomial) -> Self {
        p.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn write_term(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl Coefficient for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_int(c: i64) -> Self {
        c
    }
    fn from_hall(p: &HallPolynomial) -> Self {
        i64::try_from(p.eval(1)).expect("q = 1 specialization fits in i64")
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn write_term(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite linear combination of basis elements `S_κ`.
#[derive(Clone, Debug, PartialEq)]
pub struct HallElement<C> {
    n: usize,
    terms: BTreeMap<Multisegment, C>,
}

/// Element of the generic Hall algebra over `Z[q]`.
pub type GenericElement = HallElement<HallPolynomial>;
/// Element of the `q = 1` specialization.
pub type SpecializedElement = HallElement<i64>;

impl<C: Coefficient> HallElement<C> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    /// The basis element `S_κ`.
    pub fn basis(kappa: Multisegment) -> Self {
        let n = kappa.rank();
        let mut terms = BTreeMap::new();
        terms.insert(kappa, C::from_int(1));
        Self { n, terms }
    }

    /// The unit `S_∅`.
    pub fn unit(n: usize) -> Result<Self> {
        Ok(Self::basis(Multisegment::empty(n)?))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Multisegment, C> {
        &self.terms
    }

    pub fn coefficient(&self, kappa: &Multisegment) -> C {
        self.terms.get(kappa).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, kappa: Multisegment, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&kappa) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&kappa);
        } else {
            self.terms.insert(kappa, sum);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, c: &C) -> Self {
        let mut out = Self::zero(self.n);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.mul(c));
        }
        out
    }
}

impl<C: Coefficient> fmt::Display for HallElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            c.write_term(f)?;
            write!(f, "*<{k}>")?;
        }
        Ok(())
    }
}

/// `K(κ)`: the Hall-algebra filtration degree of `S_κ`.
pub fn filtration_level(kappa: &Multisegment) -> usize {
    kappa.num_parts()
}

fn binomial(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// Leading-term law of the `q = 1` product: the union `κ₁ ⊎ κ₂` appears with the
/// multinomial `∏_θ binom(m_{κ₁⊎κ₂}(θ), m_{κ₁}(θ))` and every other term has
/// fewer than `K(κ₁) + K(κ₂)` parts.
pub fn gr_leading_check(engine: &mut HallEngine, k1: &Multisegment, k2: &Multisegment) -> Result<bool> {
    let product = engine.multiply(&SpecializedElement::basis(k1.clone()), &SpecializedElement::basis(k2.clone()))?;
    let union = k1.union(k2);
    let m1 = k1.multiplicities();
    let expected: i64 = union
        .multiplicities()
        .iter()
        .map(|(seg, &m)| binomial(u64::from(m), u64::from(m1.get(seg).copied().unwrap_or(0))))
        .product();
    if product.coefficient(&union) != expected {
        return Ok(false);
    }
    let top = k1.num_parts() + k2.num_parts();
    Ok(product.terms().keys().all(|k| k == &union || k.num_parts() < top))
}

/// The image `S_{{i}}` of the Chevalley generator `e_i`.
pub fn chevalley_e<C: Coefficient>(n: usize, i: usize) -> Result<HallElement<C>> {
    if i >= n {
        return Err(Error::VertexOutOfRange { vertex: i, n });
    }
    Ok(HallElement::basis(Multisegment::single(Segment::new(n, i, 1)?)))
}

/// The left-hand side `Σ_k (-1)^k binom(N,k) e_i^k e_j e_i^{N-k}` of the Serre
/// relation at `q = 1`, with `N = 1 - ⟨i′, j⟩`.
pub fn serre_element(engine: &mut HallEngine, n: usize, i: usize, j: usize) -> Result<SpecializedElement> {
    if i == j {
        return Err(Error::Parse(String::from("Serre relation needs distinct vertices")));
    }
    let ei = chevalley_e::<i64>(n, i)?;
    let ej = chevalley_e::<i64>(n, j)?;
    let big_n = usize::try_from(1 - cartan_pairing(n, i, &DimVector::unit(n, j)?)?).expect("off-diagonal Cartan entries are ≤ 0");
    let mut powers = vec![SpecializedElement::unit(n)?];
    for k in 1..=big_n {
        let next = engine.multiply(&powers[k - 1], &ei)?;
        powers.push(next);
    }
    let mut total = SpecializedElement::zero(n);
    for k in 0..=big_n {
        let left = engine.multiply(&powers[k], &ej)?;
        let term = engine.multiply(&left, &powers[big_n - k])?;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        total = total.plus(&term.scaled(&(sign * binomial(big_n as u64, k as u64))));
    }
    Ok(total)
}

pub fn serre_check(engine: &mut HallEngine, n: usize, i: usize, j: usize) -> Result<bool> {
    Ok(serre_element(engine, n, i, j)?.is_zero())
}
