//! Stalk polynomials on the defect strata `(γ, Γ, P)` of Uhlenbeck flag spaces.
//!
//! A stalk `⊕_r V_r[2r]` is stored as the list `dim V_r`, printed as a polynomial in
//! `t` with `t^{2r}`. The overall `[2|γ|]` shift of a stratum is kept apart as
//! [`Stratum::base_shift`], so stalks of different strata compare coefficientwise.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly::write_poly;
use crate::root_data::{delta, kostant_partitions, DimVector, Flavor, Multisegment};

/// `Σ_r c_r t^{2r}` with nonnegative integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StalkPolynomial {
    coeffs: Vec<u64>,
}

impl StalkPolynomial {
    /// Coefficients by `r`, i.e. `coeffs[r]` multiplies `t^{2r}`.
    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// `t^{2r}`.
    pub fn monomial(r: usize) -> Self {
        let mut coeffs = vec![0; r + 1];
        coeffs[r] = 1;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, r: usize) -> u64 {
        self.coeffs.get(r).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `r` with a nonzero coefficient.
    pub fn top_r(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Smallest `r` with a nonzero coefficient.
    pub fn bottom_r(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// Top exponent of `t`.
    pub fn top_degree(&self) -> Option<usize> {
        self.top_r().map(|r| 2 * r)
    }

    /// Sum of all coefficients, the total dimension.
    pub fn total_dim(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..len).map(|r| self.coeff(r) + other.coeff(r)).collect())
    }

    /// Tensor product of graded spaces.
    pub fn convolve(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn power(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.convolve(self))
    }

    /// Multiplication by `t^{2r}`.
    pub fn shifted(&self, r: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; r];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Coefficientwise `self ≤ other`, i.e. `self` is a graded summand of `other`.
    pub fn dominated_by(&self, other: &Self) -> bool {
        self.coeffs.iter().enumerate().all(|(r, &c)| c <= other.coeff(r))
    }
}

impl fmt::Display for StalkPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().enumerate().map(|(r, &c)| (2 * r, i128::from(c))), "t")
    }
}

/// Stratum data `(γ, Γ, P)`.
///
/// `colored` lists `(β_l, n_l)`: `n_l` points on the base curve carrying defect `β_l`.
/// `punctual` lists `(d_l, k_l)`: `k_l` points of the open surface with length `d_l`.
/// Both lists are kept sorted with distinct keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stratum {
    n: usize,
    gamma: DimVector,
    colored: Vec<(DimVector, u32)>,
    punctual: Vec<(u32, u32)>,
}

impl Stratum {
    pub fn new(gamma: DimVector, colored: Vec<(DimVector, u32)>, punctual: Vec<(u32, u32)>) -> Result<Self> {
        let n = gamma.rank();
        let mut c: BTreeMap<DimVector, u32> = BTreeMap::new();
        for (beta, m) in colored {
            if beta.rank() != n {
                return Err(Error::RankMismatch { expected: n, got: beta.rank() });
            }
            if beta.is_zero() {
                return Err(Error::InvalidStratum(String::from("colored defect must be nonzero")));
            }
            if m == 0 {
                return Err(Error::InvalidStratum(String::from("colored multiplicity must be positive")));
            }
            *c.entry(beta).or_default() += m;
        }
        let mut p: BTreeMap<u32, u32> = BTreeMap::new();
        for (d, k) in punctual {
            if d == 0 || k == 0 {
                return Err(Error::InvalidStratum(String::from("punctual lengths and multiplicities must be positive")));
            }
            *p.entry(d).or_default() += k;
        }
        Ok(Self { n, gamma, colored: c.into_iter().collect(), punctual: p.into_iter().collect() })
    }

    /// The open stratum of `α`: no defect at all.
    pub fn open(alpha: DimVector) -> Self {
        Self { n: alpha.rank(), gamma: alpha, colored: Vec::new(), punctual: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> &DimVector {
        &self.gamma
    }

    pub fn colored(&self) -> &[(DimVector, u32)] {
        &self.colored
    }

    pub fn punctual(&self) -> &[(u32, u32)] {
        &self.punctual
    }

    pub fn is_open(&self) -> bool {
        self.colored.is_empty() && self.punctual.is_empty()
    }

    /// `K(Γ)`: number of colored points.
    pub fn colored_points(&self) -> u32 {
        self.colored.iter().map(|(_, m)| m).sum()
    }

    /// `K(P)`: number of punctual points.
    pub fn punctual_points(&self) -> u32 {
        self.punctual.iter().map(|(_, k)| k).sum()
    }

    /// Total punctual length `d`.
    pub fn punctual_length(&self) -> u32 {
        self.punctual.iter().map(|(d, k)| d * k).sum()
    }

    /// `α = γ + Σ n_l β_l + d·δ₀`.
    pub fn alpha(&self) -> DimVector {
        let mut a = self.gamma.clone();
        for (beta, m) in &self.colored {
            a = &a + &beta.scale(*m);
        }
        let d = delta(self.n).expect("rank validated");
        &a + &d.scale(self.punctual_length())
    }

    /// `2|γ|`, the shift carried outside the stalk polynomials.
    pub fn base_shift(&self) -> u32 {
        2 * self.gamma.total()
    }

    /// `dim = 2|γ| + K(Γ) + 2K(P)`.
    pub fn dim(&self) -> u32 {
        2 * self.gamma.total() + self.colored_points() + 2 * self.punctual_points()
    }

    /// `2|α| − dim`.
    pub fn codim(&self) -> u32 {
        2 * self.alpha().total() - self.dim()
    }

    /// Upper bound on the fiber dimension of the resolution over this stratum:
    /// `Σ n_l(|β_l| − 1) + Σ k_l(n·d_l − 1)`.
    pub fn max_fiber(&self) -> u32 {
        let colored: u32 = self.colored.iter().map(|(b, m)| m * (b.total() - 1)).sum();
        let punctual: u32 = self.punctual.iter().map(|(d, k)| k * (self.n as u32 * d - 1)).sum();
        colored + punctual
    }

    /// One point per colored and punctual defect, with labels `x1, x2, …` and
    /// `y1, y2, …`; always in generic position.
    pub fn generic_configuration(&self) -> PointConfiguration {
        let mut colored = Vec::new();
        for (beta, m) in &self.colored {
            for _ in 0..*m {
                colored.push((beta.clone(), format!("x{}", colored.len() + 1)));
            }
        }
        let mut punctual = Vec::new();
        for (d, k) in &self.punctual {
            for _ in 0..*k {
                punctual.push((*d, format!("y{}", punctual.len() + 1)));
            }
        }
        PointConfiguration { gamma: self.gamma.clone(), colored, punctual }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gamma=({}) colored=[", self.gamma)?;
        for (i, (b, m)) in self.colored.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({b})x{m}")?;
        }
        f.write_str("] punctual=[")?;
        for (i, (d, k)) in self.punctual.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}x{k}")?;
        }
        f.write_str("]")
    }
}

/// Defect points with explicit base-curve coordinates (opaque labels).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    pub gamma: DimVector,
    /// `(β, coordinate)` for each colored point.
    pub colored: Vec<(DimVector, String)>,
    /// `(d, coordinate)` for each punctual point; the coordinate is its projection to the base curve.
    pub punctual: Vec<(u32, String)>,
}

impl PointConfiguration {
    /// Rejects coinciding base-curve coordinates.
    pub fn check_generic(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for label in self.colored.iter().map(|(_, c)| c).chain(self.punctual.iter().map(|(_, c)| c)) {
            if !seen.insert(label.as_str()) {
                return Err(Error::NonGeneric(format!("two defect points share the coordinate {label}")));
            }
        }
        Ok(())
    }

    pub fn stratum(&self) -> Result<Stratum> {
        Stratum::new(
            self.gamma.clone(),
            self.colored.iter().map(|(b, _)| (b.clone(), 1)).collect(),
            self.punctual.iter().map(|(d, _)| (*d, 1)).collect(),
        )
    }
}

/// Memoized graded dimensions for one rank `n`.
#[derive(Clone, Debug)]
pub struct StalkTables {
    n: usize,
    nplus: BTreeMap<DimVector, StalkPolynomial>,
    hall: BTreeMap<DimVector, StalkPolynomial>,
    u: BTreeMap<(u32, Flavor), StalkPolynomial>,
}

impl StalkTables {
    pub fn new(n: usize) -> Result<Self> {
        delta(n)?;
        Ok(Self { n, nplus: BTreeMap::new(), hall: BTreeMap::new(), u: BTreeMap::new() })
    }

    fn check(&self, beta: &DimVector) -> Result<()> {
        if beta.rank() != self.n {
            return Err(Error::RankMismatch { expected: self.n, got: beta.rank() });
        }
        Ok(())
    }

    /// `dim Sym^r(n̂₊)_β`.
    pub fn sym_nplus(&mut self, beta: &DimVector) -> Result<StalkPolynomial> {
        self.check(beta)?;
        if let Some(p) = self.nplus.get(beta) {
            return Ok(p.clone());
        }
        let p = parts_histogram(&kostant_partitions(self.n, beta, Flavor::Sl)?);
        self.nplus.insert(beta.clone(), p.clone());
        Ok(p)
    }

    /// Graded dimension of the Hall algebra in weight `β`, graded by number of parts.
    pub fn hall_graded(&mut self, beta: &DimVector) -> Result<StalkPolynomial> {
        self.check(beta)?;
        if let Some(p) = self.hall.get(beta) {
            return Ok(p.clone());
        }
        let p = parts_histogram(&kostant_partitions(self.n, beta, Flavor::Gl)?);
        self.hall.insert(beta.clone(), p.clone());
        Ok(p)
    }

    pub fn sym_u(&mut self, d: u32, flavor: Flavor) -> StalkPolynomial {
        self.u.entry((d, flavor)).or_insert_with(|| sym_u_dims(self.n, d, flavor)).clone()
    }

    pub fn ic_stalk(&mut self, s: &Stratum) -> Result<StalkPolynomial> {
        self.check(s.gamma())?;
        let mut acc = StalkPolynomial::one();
        for (beta, m) in s.colored() {
            acc = acc.convolve(&self.sym_nplus(beta)?.power(*m));
        }
        for (d, k) in s.punctual() {
            acc = acc.convolve(&self.sym_u(*d, Flavor::Sl).power(*k));
        }
        Ok(acc)
    }

    pub fn pushforward_stalk(&mut self, s: &Stratum) -> Result<StalkPolynomial> {
        self.check(s.gamma())?;
        let mut acc = StalkPolynomial::one();
        for (beta, m) in s.colored() {
            acc = acc.convolve(&self.hall_graded(beta)?.power(*m));
        }
        for (d, k) in s.punctual() {
            acc = acc.convolve(&self.sym_u(*d, Flavor::Gl).power(*k));
        }
        Ok(acc)
    }

    /// Contribution of one punctual point of length `w` under the placement rule:
    /// `Σ_Q sym_u_sl(w − ΣQ)·t^{2|Q|}` over multisets `Q` with `ΣQ ≤ w`.
    pub fn punctual_placements(&mut self, w: u32) -> StalkPolynomial {
        let mut acc = StalkPolynomial::zero();
        for s in 0..=w {
            let residual = self.sym_u(w - s, Flavor::Sl);
            for q in integer_partitions(s) {
                acc = acc.plus(&residual.shifted(q.len()));
            }
        }
        acc
    }

    /// Contribution of one colored point of weight `β`:
    /// `Σ_{m,Q ⊢ m} sym_nplus(β − m·δ₀)·t^{2|Q|}`.
    pub fn colored_placements(&mut self, beta: &DimVector) -> Result<StalkPolynomial> {
        self.check(beta)?;
        let d = delta(self.n)?;
        let mut acc = StalkPolynomial::zero();
        let mut m = 0u32;
        while let Some(rest) = beta.checked_sub(&d.scale(m)) {
            let residual = self.sym_nplus(&rest)?;
            for q in integer_partitions(m) {
                acc = acc.plus(&residual.shifted(q.len()));
            }
            m += 1;
        }
        Ok(acc)
    }

    /// Sum over summands and preimage points, assembled point by point.
    pub fn decomposition_rhs(&mut self, config: &PointConfiguration) -> Result<StalkPolynomial> {
        config.check_generic()?;
        let mut acc = StalkPolynomial::one();
        for (beta, _) in &config.colored {
            acc = acc.convolve(&self.colored_placements(beta)?);
        }
        for (w, _) in &config.punctual {
            acc = acc.convolve(&self.punctual_placements(*w));
        }
        Ok(acc)
    }

    pub fn decomposition_check(&mut self, config: &PointConfiguration) -> Result<bool> {
        let rhs = self.decomposition_rhs(config)?;
        let lhs = self.pushforward_stalk(&config.stratum()?)?;
        Ok(lhs == rhs)
    }
}

fn parts_histogram(list: &[Multisegment]) -> StalkPolynomial {
    let mut coeffs = Vec::new();
    for k in list {
        let r = k.num_parts();
        if coeffs.len() <= r {
            coeffs.resize(r + 1, 0);
        }
        coeffs[r] += 1;
    }
    StalkPolynomial::from_coeffs(coeffs)
}

pub fn sym_nplus_dims(n: usize, beta: &DimVector) -> Result<StalkPolynomial> {
    StalkTables::new(n)?.sym_nplus(beta)
}

pub fn hall_graded_dims(n: usize, beta: &DimVector) -> Result<StalkPolynomial> {
    StalkTables::new(n)?.hall_graded(beta)
}

/// Graded dimension of `Sym(u)` in degree `d`, where `u` has one generator in each
/// bidegree `(d′, k)`, `d′ ≥ 1`, with `1 ≤ k ≤ n` (gl) or `2 ≤ k ≤ n` (sl); graded by `Σk`.
pub fn sym_u_dims(n: usize, d: u32, flavor: Flavor) -> StalkPolynomial {
    let d = d as usize;
    let k_min = match flavor {
        Flavor::Gl => 1,
        Flavor::Sl => 2,
    };
    let width = n * d + 1;
    // table[x][r]: multisets of generators with Σd′ = x and Σk = r
    let mut table = vec![vec![0u64; width]; d + 1];
    table[0][0] = 1;
    for dd in 1..=d {
        for k in k_min..=n {
            for x in dd..=d {
                for r in k..width {
                    table[x][r] += table[x - dd][r - k];
                }
            }
        }
    }
    StalkPolynomial::from_coeffs(table[d].clone())
}

pub fn ic_stalk(s: &Stratum) -> Result<StalkPolynomial> {
    StalkTables::new(s.rank())?.ic_stalk(s)
}

pub fn pushforward_stalk(s: &Stratum) -> Result<StalkPolynomial> {
    StalkTables::new(s.rank())?.pushforward_stalk(s)
}

pub fn decomposition_check(config: &PointConfiguration) -> Result<bool> {
    StalkTables::new(config.gamma.rank())?.decomposition_check(config)
}

pub fn stratum_dim(s: &Stratum) -> u32 {
    s.dim()
}

/// Partitions of `m` as weakly decreasing part lists; `[[]]` for `m = 0`.
pub fn integer_partitions(m: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// Multisets of nonzero vectors summing to `total`, as sorted `(vector, multiplicity)` lists.
pub fn vector_partitions(total: &DimVector) -> Vec<Vec<(DimVector, u32)>> {
    let candidates: Vec<DimVector> = total.below().into_iter().filter(|v| !v.is_zero()).collect();
    fn rec(
        cands: &[DimVector],
        idx: usize,
        rest: DimVector,
        cur: &mut Vec<(DimVector, u32)>,
        out: &mut Vec<Vec<(DimVector, u32)>>,
    ) {
        if rest.is_zero() {
            out.push(cur.clone());
            return;
        }
        if idx == cands.len() {
            return;
        }
        rec(cands, idx + 1, rest.clone(), cur, out);
        let mut m = 1;
        while let Some(r) = rest.checked_sub(&cands[idx].scale(m)) {
            cur.push((cands[idx].clone(), m));
            rec(cands, idx + 1, r, cur, out);
            cur.pop();
            m += 1;
        }
    }
    let mut out = Vec::new();
    rec(&candidates, 0, total.clone(), &mut Vec::new(), &mut out);
    out
}

fn integer_partitions_grouped(m: u32) -> Vec<Vec<(u32, u32)>> {
    integer_partitions(m)
        .into_iter()
        .map(|parts| {
            let mut grouped: BTreeMap<u32, u32> = BTreeMap::new();
            for p in parts {
                *grouped.entry(p).or_default() += 1;
            }
            grouped.into_iter().collect()
        })
        .collect()
}

/// Every stratum of `α`, in a fixed order (punctual length, then partition, then colored weight, then Γ).
pub fn strata(alpha: &DimVector) -> Result<Vec<Stratum>> {
    let n = alpha.rank();
    let d0 = delta(n)?;
    let mut out = Vec::new();
    let mut d = 0u32;
    while let Some(rest) = alpha.checked_sub(&d0.scale(d)) {
        for p in integer_partitions_grouped(d) {
            for beta in rest.below() {
                let gamma = rest.checked_sub(&beta).expect("beta below rest");
                for gamma_parts in vector_partitions(&beta) {
                    out.push(Stratum { n, gamma: gamma.clone(), colored: gamma_parts, punctual: p.clone() });
                }
            }
        }
        d += 1;
    }
    Ok(out)
}

/// One line of the semismallness audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemismallEntry {
    pub stratum: Stratum,
    pub codim: u32,
    pub max_fiber: u32,
    /// `2·max_fiber = codim`.
    pub relevant: bool,
    /// Bound holds and equality occurs exactly on strata without colored defect.
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemismallReport {
    pub alpha: DimVector,
    pub entries: Vec<SemismallEntry>,
}

impl SemismallReport {
    pub fn violations(&self) -> usize {
        self.entries.iter().filter(|e| !e.ok).count()
    }
}

pub fn semismall_audit(alpha: &DimVector, max_weight: u32) -> Result<SemismallReport> {
    check_audit_budget(alpha, max_weight)?;
    let entries = strata(alpha)?
        .into_iter()
        .map(|s| {
            let codim = s.codim();
            let max_fiber = s.max_fiber();
            let relevant = 2 * max_fiber == codim;
            let ok = 2 * max_fiber <= codim && relevant == s.colored().is_empty();
            SemismallEntry { stratum: s, codim, max_fiber, relevant, ok }
        })
        .collect();
    Ok(SemismallReport { alpha: alpha.clone(), entries })
}

fn check_audit_budget(alpha: &DimVector, max_weight: u32) -> Result<()> {
    if alpha.total() > max_weight {
        return Err(Error::BudgetExceeded(format!("|alpha| = {} exceeds the audit budget {max_weight}", alpha.total())));
    }
    Ok(())
}

/// Degree of the lowest-`r` piece of the IC stalk, measured from the generic
/// degree of the open stratum: `2|α| − 2|γ| − 2·r_min`.
/// Perversity requires it to be strictly below the codimension off the open stratum.
pub fn support_degree(tables: &mut StalkTables, s: &Stratum) -> Result<u32> {
    let stalk = tables.ic_stalk(s)?;
    let r_min = stalk.bottom_r().unwrap_or(0) as u32;
    Ok(2 * s.alpha().total() - s.base_shift() - 2 * r_min)
}

/// Outcome of the support and summand checks on one stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportEntry {
    pub stratum: Stratum,
    pub ic: StalkPolynomial,
    pub push: StalkPolynomial,
    pub degree: u32,
    pub codim: u32,
    pub ok: bool,
}

/// Support condition on every non-open stratum of `α`, plus `ic ≤ push` everywhere.
pub fn support_audit(tables: &mut StalkTables, alpha: &DimVector, max_weight: u32) -> Result<Vec<SupportEntry>> {
    check_audit_budget(alpha, max_weight)?;
    let mut out = Vec::new();
    for s in strata(alpha)? {
        let ic = tables.ic_stalk(&s)?;
        let push = tables.pushforward_stalk(&s)?;
        let degree = support_degree(tables, &s)?;
        let codim = s.codim();
        let support = s.is_open() || degree < codim;
        let ok = support && ic.dominated_by(&push);
        out.push(SupportEntry { stratum: s, ic, push, degree, codim, ok });
    }
    Ok(out)
}

/// Local data at one point `x_r` of a Hecke correspondence stratum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HeckePoint {
    /// `γ_r > 0`.
    pub gamma: DimVector,
    /// Defect class `κ′_r` of the larger sheaf.
    pub before: Multisegment,
    /// Defect class `κ̃_r` of the smaller sheaf; `wt κ̃_r = wt κ′_r + γ_r`.
    pub after: Multisegment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeReport {
    pub dim_b: u32,
    pub bound: i64,
    /// Closed form `dim B + 2|α| + |γ| + Σ(1 − K(κ′_r) − K(κ̃_r))`.
    pub stratum_dim: i64,
    /// Same quantity through the saturation fibers,
    /// `dim B + 2|α − γ′| + m + Σ(‖κ′_r‖ − K(κ′_r)) + Σ(‖κ̃_r‖ − K(κ̃_r))`.
    pub fiber_route_dim: i64,
    /// `stratum_dim − bound`.
    pub margin: i64,
    pub top_dimensional: bool,
    /// Every `K(κ′_r) = 0` and `K(κ̃_r) = 1`.
    pub predicted_top: bool,
    /// Cohomological degree shift of the corresponding Hecke operator.
    pub degree_shift: u32,
}

impl HeckeReport {
    pub fn ok(&self) -> bool {
        self.margin <= 0 && self.stratum_dim == self.fiber_route_dim && self.top_dimensional == self.predicted_top
    }
}

pub fn hecke_dim_audit(alpha: &DimVector, gamma: &DimVector, points: &[HeckePoint]) -> Result<HeckeReport> {
    let n = alpha.rank();
    if gamma.rank() != n {
        return Err(Error::RankMismatch { expected: n, got: gamma.rank() });
    }
    let mut gamma_sum = DimVector::zero(n)?;
    let mut before_sum = DimVector::zero(n)?;
    for p in points {
        for m in [&p.before, &p.after] {
            if m.rank() != n {
                return Err(Error::RankMismatch { expected: n, got: m.rank() });
            }
        }
        if p.gamma.rank() != n {
            return Err(Error::RankMismatch { expected: n, got: p.gamma.rank() });
        }
        if p.gamma.is_zero() {
            return Err(Error::InvalidStratum(String::from("each gamma_r must be nonzero")));
        }
        if p.after.weight() != &p.before.weight() + &p.gamma {
            return Err(Error::WeightMismatch(format!("wt({}) != wt({}) + ({})", p.after, p.before, p.gamma)));
        }
        gamma_sum = &gamma_sum + &p.gamma;
        before_sum = &before_sum + &p.before.weight();
    }
    if &gamma_sum != gamma {
        return Err(Error::WeightMismatch(format!("gamma_r sum to ({gamma_sum}), expected ({gamma})")));
    }
    let Some(saturated) = alpha.checked_sub(&before_sum) else {
        return Err(Error::WeightMismatch(format!("saturation defect ({before_sum}) exceeds alpha ({alpha})")));
    };
    let dim_b = (n * (n - 1) / 2) as u32;
    let a = i64::from(alpha.total());
    let g = i64::from(gamma.total());
    let bound = i64::from(dim_b) + 2 * a + g;
    let k = |m: &Multisegment| m.num_parts() as i64;
    let norm = |m: &Multisegment| i64::from(m.weight().total());
    let stratum_dim = bound + points.iter().map(|p| 1 - k(&p.before) - k(&p.after)).sum::<i64>();
    let fiber_route_dim = i64::from(dim_b)
        + 2 * i64::from(saturated.total())
        + points.len() as i64
        + points.iter().map(|p| norm(&p.before) - k(&p.before)).sum::<i64>()
        + points.iter().map(|p| norm(&p.after) - k(&p.after)).sum::<i64>();
    let predicted_top = points.iter().all(|p| k(&p.before) == 0 && k(&p.after) == 1);
    Ok(HeckeReport {
        dim_b,
        bound,
        stratum_dim,
        fiber_route_dim,
        margin: stratum_dim - bound,
        top_dimensional: stratum_dim == bound,
        predicted_top,
        degree_shift: gamma.total(),
    })
}

/// Every admissible Hecke input for `(α, γ)`, each listed once up to reordering the points.
pub fn hecke_inputs(alpha: &DimVector, gamma: &DimVector) -> Result<Vec<Vec<HeckePoint>>> {
    let n = alpha.rank();
    let mut out = BTreeSet::new();
    for parts in vector_partitions(gamma) {
        let gammas: Vec<DimVector> = parts.iter().flat_map(|(v, m)| core::iter::repeat_n(v.clone(), *m as usize)).collect();
        let mut cur = Vec::new();
        hecke_rec(n, &gammas, 0, alpha.clone(), &mut cur, &mut out)?;
    }
    Ok(out.into_iter().collect())
}

fn hecke_rec(
    n: usize,
    gammas: &[DimVector],
    idx: usize,
    room: DimVector,
    cur: &mut Vec<HeckePoint>,
    out: &mut BTreeSet<Vec<HeckePoint>>,
) -> Result<()> {
    if idx == gammas.len() {
        let mut sorted = cur.clone();
        sorted.sort();
        out.insert(sorted);
        return Ok(());
    }
    for before_wt in room.below() {
        let rest = room.checked_sub(&before_wt).expect("below room");
        let after_wt = &before_wt + &gammas[idx];
        for before in kostant_partitions(n, &before_wt, Flavor::Gl)? {
            for after in kostant_partitions(n, &after_wt, Flavor::Gl)? {
                cur.push(HeckePoint { gamma: gammas[idx].clone(), before: before.clone(), after });
                hecke_rec(n, gammas, idx + 1, rest.clone(), cur, out)?;
                cur.pop();
            }
        }
    }
    Ok(())
}

/// Parses `"1,1:x1"` / `"1,1"` (colored) or `"2:y1"` / `"2"` (punctual) point specs.
pub fn parse_point(spec: &str) -> (String, Option<String>) {
    match spec.split_once(':') {
        Some((v, label)) => (v.trim().to_string(), Some(label.trim().to_string())),
        None => (spec.trim().to_string(), None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(s: &str) -> DimVector {
        s.parse().unwrap()
    }

    fn sp(c: &[u64]) -> StalkPolynomial {
        StalkPolynomial::from_coeffs(c.to_vec())
    }

    #[test]
    fn stalk_display() {
        assert_eq!(format!("{}", sp(&[1, 2, 1])), "1 + 2*t^2 + t^4");
        assert_eq!(format!("{}", sp(&[0, 1])), "t^2");
        assert_eq!(format!("{}", StalkPolynomial::zero()), "0");
    }

    #[test]
    fn graded_dims_examples() {
        assert_eq!(sym_nplus_dims(2, &dv("1,1")).unwrap(), sp(&[0, 1, 1]));
        assert_eq!(sym_nplus_dims(3, &dv("0,0,0")).unwrap(), StalkPolynomial::one());
        assert_eq!(sym_nplus_dims(2, &dv("1,0")).unwrap(), sp(&[0, 1]));
        assert_eq!(hall_graded_dims(2, &dv("1,1")).unwrap(), sp(&[0, 2, 1]));
        assert_eq!(hall_graded_dims(2, &dv("0,0")).unwrap(), StalkPolynomial::one());
        assert_eq!(hall_graded_dims(3, &dv("1,1,0")).unwrap(), sp(&[0, 1, 1]));
    }

    #[test]
    fn sym_u_examples() {
        assert_eq!(sym_u_dims(2, 1, Flavor::Gl), sp(&[0, 1, 1]));
        assert_eq!(sym_u_dims(2, 1, Flavor::Sl), sp(&[0, 0, 1]));
        assert_eq!(sym_u_dims(2, 2, Flavor::Gl), sp(&[0, 1, 2, 1, 1]));
        assert_eq!(sym_u_dims(4, 0, Flavor::Sl), StalkPolynomial::one());
    }

    #[test]
    fn stalk_examples() {
        let open = Stratum::open(dv("2,1"));
        assert_eq!(ic_stalk(&open).unwrap(), StalkPolynomial::one());
        assert_eq!(pushforward_stalk(&open).unwrap(), StalkPolynomial::one());
        let colored = Stratum::new(dv("0,0"), vec![(dv("1,1"), 1)], vec![]).unwrap();
        assert_eq!(ic_stalk(&colored).unwrap(), sp(&[0, 1, 1]));
        assert_eq!(pushforward_stalk(&colored).unwrap(), sp(&[0, 2, 1]));
        let punctual = Stratum::new(dv("0,0"), vec![], vec![(1, 1)]).unwrap();
        assert_eq!(ic_stalk(&punctual).unwrap(), sp(&[0, 0, 1]));
        let p2 = Stratum::new(dv("0,0"), vec![], vec![(2, 1)]).unwrap();
        assert_eq!(pushforward_stalk(&p2).unwrap(), sp(&[0, 1, 2, 1, 1]));
    }

    #[test]
    fn decomposition_examples() {
        let mut t = StalkTables::new(2).unwrap();
        let colored = Stratum::new(dv("0,0"), vec![(dv("1,1"), 1)], vec![]).unwrap();
        assert_eq!(t.colored_placements(&dv("1,1")).unwrap(), sp(&[0, 2, 1]));
        assert!(t.decomposition_check(&colored.generic_configuration()).unwrap());
        assert_eq!(t.punctual_placements(2), sp(&[0, 1, 2, 1, 1]));
        let p2 = Stratum::new(dv("0,0"), vec![], vec![(2, 1)]).unwrap();
        assert!(t.decomposition_check(&p2.generic_configuration()).unwrap());
        assert!(t.decomposition_check(&Stratum::open(dv("1,2")).generic_configuration()).unwrap());
    }

    #[test]
    fn non_generic_configurations_are_rejected() {
        let config = PointConfiguration {
            gamma: dv("0,0"),
            colored: vec![(dv("1,0"), "x".into())],
            punctual: vec![(1, "x".into())],
        };
        assert!(matches!(decomposition_check(&config), Err(Error::NonGeneric(_))));
    }

    #[test]
    fn stratum_dims() {
        let open = Stratum::open(dv("2,1"));
        assert_eq!(stratum_dim(&open), 6);
        let colored = Stratum::new(dv("0,0"), vec![(dv("1,1"), 1)], vec![]).unwrap();
        assert_eq!(stratum_dim(&colored), 1);
        assert_eq!(colored.codim(), 3);
        let punctual = Stratum::new(dv("0,0"), vec![], vec![(1, 1)]).unwrap();
        assert_eq!(stratum_dim(&punctual), 2);
        assert_eq!(punctual.codim(), 2);
        assert_eq!(punctual.max_fiber(), 1);
        assert_eq!(colored.max_fiber(), 1);
    }

    #[test]
    fn strata_of_delta() {
        let all = strata(&dv("1,1")).unwrap();
        // open, (1,0)+(0,1) colored with γ pieces, δ₀ colored, punctual
        assert!(all.contains(&Stratum::open(dv("1,1"))));
        assert!(all.contains(&Stratum::new(dv("0,0"), vec![], vec![(1, 1)]).unwrap()));
        assert!(all.iter().all(|s| s.alpha() == dv("1,1")));
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        // γ ∈ {(1,1), (1,0), (0,1), 0} × Γ: 1 + 1 + 1 + 2, plus the punctual stratum
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn semismall_examples() {
        let report = semismall_audit(&dv("1,1"), 8).unwrap();
        assert_eq!(report.violations(), 0);
        let find = |s: &Stratum| report.entries.iter().find(|e| &e.stratum == s).unwrap().clone();
        let p = find(&Stratum::new(dv("0,0"), vec![], vec![(1, 1)]).unwrap());
        assert!(p.relevant && p.codim == 2 && p.max_fiber == 1);
        let c = find(&Stratum::new(dv("0,0"), vec![(dv("1,1"), 1)], vec![]).unwrap());
        assert!(!c.relevant && c.codim == 3);
        let o = find(&Stratum::open(dv("1,1")));
        assert!(o.relevant && o.codim == 0);
        assert!(matches!(semismall_audit(&dv("5,5"), 8), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn hecke_examples() {
        let ms = |s: &str| Multisegment::parse(2, s).unwrap();
        let top = hecke_dim_audit(
            &dv("1,1"),
            &dv("1,1"),
            &[
                HeckePoint { gamma: dv("1,0"), before: ms("0"), after: ms("(0,1)") },
                HeckePoint { gamma: dv("0,1"), before: ms("0"), after: ms("(1,1)") },
            ],
        )
        .unwrap();
        assert_eq!(top.margin, 0);
        assert!(top.top_dimensional && top.ok());
        assert_eq!(top.degree_shift, 2);
        let low = hecke_dim_audit(
            &dv("1,1"),
            &dv("1,1"),
            &[HeckePoint { gamma: dv("1,1"), before: ms("0"), after: ms("(0,1)+(1,1)") }],
        )
        .unwrap();
        assert!(low.margin <= -1 && low.ok());
        let none = hecke_dim_audit(&dv("1,1"), &dv("0,0"), &[]).unwrap();
        assert_eq!(none.stratum_dim, 1 + 4);
        let bad = hecke_dim_audit(&dv("1,1"), &dv("1,0"), &[HeckePoint { gamma: dv("1,0"), before: ms("0"), after: ms("(1,1)") }]);
        assert!(matches!(bad, Err(Error::WeightMismatch(_))));
    }

    #[test]
    fn partitions() {
        assert_eq!(integer_partitions(0), vec![Vec::<u32>::new()]);
        assert_eq!(integer_partitions(4).len(), 5);
        assert_eq!(vector_partitions(&dv("1,1")).len(), 2);
        assert_eq!(vector_partitions(&dv("2,0")).len(), 2);
    }
}
