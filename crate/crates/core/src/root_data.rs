//! Lattice and root combinatorics of the affine algebras of type `A_{n-1}^{(1)}`.
//!
//! Dimension vectors live in `N[Z/n]`. A [`Segment`] is a positive root of the
//! affine `gl_n` (equivalently an indecomposable nilpotent representation of the
//! cyclic quiver), and a [`Multisegment`] is a Kostant partition.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Which positive roots are allowed in a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    /// All segments.
    Gl,
    /// Segments `(0, kn)` removed.
    Sl,
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gl" => Ok(Flavor::Gl),
            "sl" => Ok(Flavor::Sl),
            other => Err(Error::Parse(format!("unknown flavor {other:?}"))),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Gl => "gl",
            Flavor::Sl => "sl",
        })
    }
}

fn check_rank(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::RankTooSmall(n))
    } else {
        Ok(())
    }
}

/// An element of `N[Z/n]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimVector {
    coeffs: Vec<u32>,
}

impl DimVector {
    pub fn new(coeffs: Vec<u32>) -> Result<Self> {
        check_rank(coeffs.len())?;
        Ok(Self { coeffs })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    /// The simple coroot at vertex `i`.
    pub fn unit(n: usize, i: usize) -> Result<Self> {
        let mut v = Self::zero(n)?;
        if i >= n {
            return Err(Error::VertexOutOfRange { vertex: i, n });
        }
        v.coeffs[i] = 1;
        Ok(v)
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn get(&self, i: usize) -> u32 {
        self.coeffs[i % self.coeffs.len()]
    }

    /// `|α|`, the sum of the entries.
    pub fn total(&self) -> u32 {
        self.coeffs.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b)
    }

    /// `self - other`, if it stays nonnegative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if !other.le(self) {
            return None;
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Some(Self { coeffs })
    }

    pub fn scale(&self, k: u32) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Every vector `v` with `0 ≤ v ≤ self`, in lexicographic order.
    pub fn below(&self) -> Vec<DimVector> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.coeffs.len()];
        loop {
            out.push(DimVector { coeffs: cur.clone() });
            let mut i = cur.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < self.coeffs[i] {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
        }
    }

    /// All vectors of rank `n` with `|v| ≤ max_total`, in lexicographic order.
    pub fn all_up_to(n: usize, max_total: u32) -> Result<Vec<DimVector>> {
        let bound = DimVector::new(vec![max_total; n])?;
        Ok(bound.below().into_iter().filter(|v| v.total() <= max_total).collect())
    }
}

impl Add for &DimVector {
    type Output = DimVector;

    fn add(self, rhs: &DimVector) -> DimVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in DimVector addition");
        DimVector { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for DimVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad entry {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        DimVector::new(coeffs)
    }
}

/// The imaginary coroot `δ₀`, the all-ones vector.
pub fn delta(n: usize) -> Result<DimVector> {
    DimVector::new(vec![1; n])
}

/// The interval `[start, start+len)` read along the arrows `i → i+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    n: usize,
    start: usize,
    len: usize,
}

impl Segment {
    pub fn new(n: usize, start: usize, len: usize) -> Result<Self> {
        check_rank(n)?;
        if start >= n {
            return Err(Error::VertexOutOfRange { vertex: start, n });
        }
        if len == 0 {
            return Err(Error::Parse("segment length must be positive".into()));
        }
        Ok(Self { n, start, len })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn start(&self) -> usize {
        self.start
    }

    #[allow(clippy::len_without_is_empty)] // segments are never empty
    pub fn len(&self) -> usize {
        self.len
    }

    /// Vertex carrying the last basis vector (the socle of the indecomposable).
    pub fn end_vertex(&self) -> usize {
        (self.start + self.len - 1) % self.n
    }

    pub fn weight(&self) -> DimVector {
        let mut coeffs = vec![0u32; self.n];
        for p in self.start..self.start + self.len {
            coeffs[p % self.n] += 1;
        }
        DimVector { coeffs }
    }

    pub fn is_imaginary(&self) -> bool {
        self.len.is_multiple_of(self.n)
    }

    /// The segments `(0, kn)` that are absent from the `sl` root set.
    pub fn is_removed_for_sl(&self) -> bool {
        self.start == 0 && self.is_imaginary()
    }

    pub fn admissible(&self, flavor: Flavor) -> bool {
        flavor == Flavor::Gl || !self.is_removed_for_sl()
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.start, self.len)
    }
}

/// A multiset of segments kept in canonical `(start, len)` order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multisegment {
    n: usize,
    parts: Vec<Segment>,
}

impl Multisegment {
    pub fn empty(n: usize) -> Result<Self> {
        check_rank(n)?;
        Ok(Self { n, parts: Vec::new() })
    }

    pub fn new(n: usize, mut parts: Vec<Segment>) -> Result<Self> {
        check_rank(n)?;
        if let Some(s) = parts.iter().find(|s| s.n != n) {
            return Err(Error::RankMismatch { expected: n, got: s.n });
        }
        parts.sort();
        Ok(Self { n, parts })
    }

    pub fn single(seg: Segment) -> Self {
        Self { n: seg.n, parts: vec![seg] }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[Segment] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `K(κ)`: the number of parts with multiplicity.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> DimVector {
        let mut coeffs = vec![0u32; self.n];
        for s in &self.parts {
            for p in s.start..s.start + s.len {
                coeffs[p % self.n] += 1;
            }
        }
        DimVector { coeffs }
    }

    pub fn multiplicities(&self) -> BTreeMap<Segment, u32> {
        let mut m = BTreeMap::new();
        for s in &self.parts {
            *m.entry(*s).or_insert(0) += 1;
        }
        m
    }

    /// Multiset union `κ₁ ⊎ κ₂`.
    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "rank mismatch in multisegment union");
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort();
        Self { n: self.n, parts }
    }

    pub fn is_admissible(&self, flavor: Flavor) -> bool {
        self.parts.iter().all(|s| s.admissible(flavor))
    }

    /// Parses the canonical text form, e.g. `2*(0,1)+(1,2)`; `0` is the empty multisegment.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "0" || s == "∅" {
            return Self::empty(n);
        }
        let mut parts = Vec::new();
        for term in s.split('+') {
            let (mult, seg) = match term.split_once('*') {
                Some((m, rest)) => {
                    let m = m.parse::<usize>().map_err(|_| Error::Parse(format!("bad multiplicity in {term:?}")))?;
                    (m, rest)
                }
                None => (1, term),
            };
            let inner = seg
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("bad segment {seg:?}")))?;
            let (a, b) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("bad segment {seg:?}")))?;
            let start = a.parse::<usize>().map_err(|_| Error::Parse(format!("bad start in {seg:?}")))?;
            let len = b.parse::<usize>().map_err(|_| Error::Parse(format!("bad length in {seg:?}")))?;
            let segment = Segment::new(n, start, len)?;
            for _ in 0..mult {
                parts.push(segment);
            }
        }
        Self::new(n, parts)
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        for (i, (seg, m)) in self.multiplicities().iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if *m > 1 {
                write!(f, "{m}*")?;
            }
            write!(f, "{seg}")?;
        }
        Ok(())
    }
}

/// All flavor-admissible segments whose weight fits under `bound`, ordered by `(len, start)`.
pub fn enumerate_segments(n: usize, bound: &DimVector, flavor: Flavor) -> Result<Vec<Segment>> {
    check_rank(n)?;
    if bound.rank() != n {
        return Err(Error::RankMismatch { expected: n, got: bound.rank() });
    }
    let mut out = Vec::new();
    for len in 1..=bound.total() as usize {
        for start in 0..n {
            let seg = Segment { n, start, len };
            if seg.admissible(flavor) && seg.weight().le(bound) {
                out.push(seg);
            }
        }
    }
    Ok(out)
}

/// All Kostant partitions of `alpha`, sorted by number of parts and then by parts.
pub fn kostant_partitions(n: usize, alpha: &DimVector, flavor: Flavor) -> Result<Vec<Multisegment>> {
    let segments = enumerate_segments(n, alpha, flavor)?;
    let weights: Vec<DimVector> = segments.iter().map(Segment::weight).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    partitions_rec(&segments, &weights, 0, alpha.clone(), &mut chosen, &mut out);
    let mut result: Vec<Multisegment> = out.into_iter().map(|parts| Multisegment::new(n, parts).expect("rank checked")).collect();
    result.sort_by(|a, b| a.num_parts().cmp(&b.num_parts()).then_with(|| a.parts.cmp(&b.parts)));
    Ok(result)
}

fn partitions_rec(
    segments: &[Segment],
    weights: &[DimVector],
    idx: usize,
    remaining: DimVector,
    chosen: &mut Vec<Segment>,
    out: &mut Vec<Vec<Segment>>,
) {
    if remaining.is_zero() {
        out.push(chosen.clone());
        return;
    }
    if idx == segments.len() {
        return;
    }
    // Skip this segment entirely, or take it one more time and stay on it.
    partitions_rec(segments, weights, idx + 1, remaining.clone(), chosen, out);
    if let Some(rest) = remaining.checked_sub(&weights[idx]) {
        chosen.push(segments[idx]);
        partitions_rec(segments, weights, idx, rest, chosen, out);
        chosen.pop();
    }
}

/// Truncated expansion of `∏_θ (1 - x^{wt θ})^{-1}` over all `x^α` with `α ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostantSeries {
    bound: DimVector,
    coeffs: Vec<u64>,
}

impl KostantSeries {
    fn index(&self, alpha: &DimVector) -> Option<usize> {
        if !alpha.le(&self.bound) {
            return None;
        }
        let mut idx = 0usize;
        for (a, b) in alpha.coeffs.iter().zip(&self.bound.coeffs) {
            idx = idx * (*b as usize + 1) + *a as usize;
        }
        Some(idx)
    }

    pub fn bound(&self) -> &DimVector {
        &self.bound
    }

    /// Coefficient at `x^α`; `None` outside the truncation box.
    pub fn coeff(&self, alpha: &DimVector) -> Option<u64> {
        self.index(alpha).map(|i| self.coeffs[i])
    }
}

pub fn kostant_count_gf(n: usize, bound: &DimVector, flavor: Flavor) -> Result<KostantSeries> {
    let segments = enumerate_segments(n, bound, flavor)?;
    let vectors = bound.below();
    let mut series = KostantSeries { bound: bound.clone(), coeffs: vec![0; vectors.len()] };
    series.coeffs[0] = 1;
    // Multiplying by a geometric series is a forward prefix sum along the step wt(θ).
    for seg in &segments {
        let w = seg.weight();
        for v in &vectors {
            if let Some(prev) = v.checked_sub(&w) {
                let i = series.index(v).expect("inside box");
                let j = series.index(&prev).expect("inside box");
                series.coeffs[i] += series.coeffs[j];
            }
        }
    }
    Ok(series)
}

/// `⟨i′, α⟩` for the affine Cartan matrix of type `A_{n-1}^{(1)}`.
pub fn cartan_pairing(n: usize, i: usize, alpha: &DimVector) -> Result<i64> {
    check_rank(n)?;
    if i >= n {
        return Err(Error::VertexOutOfRange { vertex: i, n });
    }
    if alpha.rank() != n {
        return Err(Error::RankMismatch { expected: n, got: alpha.rank() });
    }
    let a = |k: usize| i64::from(alpha.get(k));
    Ok(if n == 2 {
        2 * a(i) - 2 * a(1 - i)
    } else {
        2 * a(i) - a((i + n - 1) % n) - a((i + 1) % n)
    })
}

/// Eigenvalue of `h_i` on the degree-`α` piece: `⟨i′, α⟩ + 2`.
pub fn h_scalar(n: usize, i: usize, alpha: &DimVector) -> Result<i64> {
    Ok(cartan_pairing(n, i, alpha)? + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(s: &str) -> DimVector {
        s.parse().unwrap()
    }

    fn seg(n: usize, s: usize, l: usize) -> Segment {
        Segment::new(n, s, l).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(2).unwrap(), dv("1,1"));
        assert_eq!(delta(3).unwrap(), dv("1,1,1"));
        assert_eq!(delta(4).unwrap().total(), 4);
        assert_eq!(delta(1), Err(Error::RankTooSmall(1)));
    }

    #[test]
    fn segment_enumeration_examples() {
        let gl = enumerate_segments(2, &dv("1,1"), Flavor::Gl).unwrap();
        assert_eq!(gl, vec![seg(2, 0, 1), seg(2, 1, 1), seg(2, 0, 2), seg(2, 1, 2)]);
        let sl = enumerate_segments(2, &dv("1,1"), Flavor::Sl).unwrap();
        assert_eq!(sl, vec![seg(2, 0, 1), seg(2, 1, 1), seg(2, 1, 2)]);
        let one = enumerate_segments(3, &dv("1,0,0"), Flavor::Gl).unwrap();
        assert_eq!(one, vec![seg(3, 0, 1)]);
    }

    #[test]
    fn imaginary_segments_per_length() {
        for n in 2..=4 {
            let bound = delta(n).unwrap().scale(2);
            let gl = enumerate_segments(n, &bound, Flavor::Gl).unwrap();
            let sl = enumerate_segments(n, &bound, Flavor::Sl).unwrap();
            for k in 1..=2 {
                let gl_k: Vec<_> = gl.iter().filter(|s| s.len() == k * n).collect();
                assert_eq!(gl_k.len(), n);
                assert!(gl_k.iter().all(|s| s.weight() == delta(n).unwrap().scale(k as u32)));
                let sl_k: Vec<_> = sl.iter().filter(|s| s.len() == k * n).collect();
                assert_eq!(sl_k.len(), n - 1);
                assert!(sl_k.iter().all(|s| s.start() != 0));
            }
        }
    }

    #[test]
    fn kostant_examples() {
        let gl = kostant_partitions(2, &dv("1,1"), Flavor::Gl).unwrap();
        let text: Vec<String> = gl.iter().map(|k| format!("{k}")).collect();
        assert_eq!(text, vec!["(0,2)", "(1,2)", "(0,1)+(1,1)"]);
        assert_eq!(kostant_partitions(2, &dv("1,1"), Flavor::Sl).unwrap().len(), 2);
        let empty = kostant_partitions(2, &dv("0,0"), Flavor::Gl).unwrap();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].is_empty());
    }

    #[test]
    fn gf_examples() {
        let gl = kostant_count_gf(2, &dv("2,2"), Flavor::Gl).unwrap();
        assert_eq!(gl.coeff(&dv("1,1")), Some(3));
        assert_eq!(gl.coeff(&dv("0,0")), Some(1));
        let sl = kostant_count_gf(2, &dv("2,2"), Flavor::Sl).unwrap();
        assert_eq!(sl.coeff(&dv("1,1")), Some(2));
        assert_eq!(sl.coeff(&dv("3,0")), None);
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(cartan_pairing(3, 0, &dv("1,0,0")).unwrap(), 2);
        assert_eq!(cartan_pairing(2, 0, &dv("1,1")).unwrap(), 0);
        assert_eq!(cartan_pairing(3, 1, &dv("1,1,1")).unwrap(), 0);
        assert_eq!(h_scalar(2, 0, &dv("0,0")).unwrap(), 2);
        assert_eq!(h_scalar(2, 0, &dv("1,1")).unwrap(), 2);
        assert_eq!(h_scalar(3, 1, &dv("0,1,0")).unwrap(), 4);
        assert!(cartan_pairing(3, 3, &dv("1,0,0")).is_err());
    }

    #[test]
    fn text_forms() {
        let k = Multisegment::parse(2, "(1,2)+2*(0,1)").unwrap();
        assert_eq!(format!("{k}"), "2*(0,1)+(1,2)");
        assert_eq!(Multisegment::parse(2, &format!("{k}")).unwrap(), k);
        assert_eq!(format!("{}", Multisegment::empty(3).unwrap()), "0");
        assert!(Multisegment::parse(2, "(2,1)").is_err());
        assert!(Multisegment::parse(2, "(0,0)").is_err());
        assert_eq!(format!("{}", dv("3,0,1")), "3,0,1");
        assert!("1".parse::<DimVector>().is_err());
    }

    #[test]
    fn removed_segments() {
        assert!(seg(3, 0, 3).is_removed_for_sl());
        assert!(seg(3, 0, 6).is_removed_for_sl());
        assert!(!seg(3, 1, 3).is_removed_for_sl());
        assert!(!seg(3, 0, 2).is_removed_for_sl());
        assert_eq!(seg(3, 2, 2).end_vertex(), 0);
        assert_eq!(seg(3, 2, 2).weight(), dv("1,0,1"));
    }
}
