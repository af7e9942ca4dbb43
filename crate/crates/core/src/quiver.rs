//! Nilpotent representations of the cyclic quiver over `F_q`.
//!
//! The isomorphism class of a nilpotent representation is a [`Multisegment`];
//! it is recovered from the ranks of all arrow composites ([`RankTable`]). The
//! subrepresentation census enumerates graded subspaces vertex by vertex in
//! row-echelon form, keeping only those stable under the arrows.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::root_data::{DimVector, Multisegment, Segment};

/// A dense matrix over `F_q`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, field: &FiniteField, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    let src = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                    field.axpy(&mut out.data[i * rhs.cols..(i + 1) * rhs.cols], a, src);
                }
            }
        }
        out
    }

    pub fn rank(&self, field: &FiniteField) -> usize {
        let mut buf = self.data.clone();
        field.rank_in_place(&mut buf, self.cols)
    }

    /// Images of the given row vectors (`count × cols`) as rows (`count × rows`).
    fn apply_rows(&self, field: &FiniteField, vectors: &[u8], out: &mut Vec<u8>) {
        out.clear();
        let count = vectors.len().checked_div(self.cols).unwrap_or(0);
        for v in 0..count {
            let x = &vectors[v * self.cols..(v + 1) * self.cols];
            for r in 0..self.rows {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                let mut acc = 0u8;
                for (a, b) in row.iter().zip(x) {
                    acc = field.add(acc, field.mul(*a, *b));
                }
                out.push(acc);
            }
        }
    }

    /// Column space as a family of row vectors of length `rows`.
    fn column_vectors(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for c in 0..self.cols {
            for r in 0..self.rows {
                out.push(self.get(r, c));
            }
        }
        out
    }
}

/// A nilpotent representation of the cyclic quiver on `Z/n` over `F_q`.
#[derive(Clone, Debug)]
pub struct NilRepFq {
    field: FiniteField,
    dims: DimVector,
    /// `arrows[i]` maps the space at `i` to the space at `i+1`: `dims[i+1] × dims[i]`.
    arrows: Vec<Mat>,
}

impl NilRepFq {
    pub fn rank(&self) -> usize {
        self.dims.rank()
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn arrow(&self, i: usize) -> &Mat {
        &self.arrows[i % self.rank()]
    }

    /// The composite of `m` consecutive arrows starting at vertex `j`.
    pub fn composite(&self, j: usize, m: usize) -> Mat {
        let n = self.rank();
        let mut acc = Mat::identity(self.dims.get(j) as usize);
        for step in 0..m {
            acc = self.arrows[(j + step) % n].mul(&self.field, &acc);
        }
        acc
    }

    /// Matrix ranks of every composite, in the layout of [`RankTable`].
    pub fn rank_table(&self) -> RankTable {
        let n = self.rank();
        let max_len = self.dims.total() as usize;
        let mut ranks = vec![0u32; n * max_len];
        for j in 0..n {
            for m in 1..=max_len {
                ranks[j * max_len + m - 1] = self.composite(j, m).rank(&self.field) as u32;
            }
        }
        RankTable { dims: self.dims.clone(), max_len, ranks }
    }
}

/// Direct sum of segment representations: for a segment `[i, i+l)` the basis
/// `b_i, …, b_{i+l-1}` with `b_p ↦ b_{p+1}` and `b_{i+l-1} ↦ 0`.
pub fn build_rep(kappa: &Multisegment, q: u32) -> Result<NilRepFq> {
    let field = FiniteField::new(q)?;
    let n = kappa.rank();
    let dims = kappa.weight();
    let mut next_index = vec![0usize; n];
    // local index of every basis vector, part by part
    let mut local: Vec<Vec<usize>> = Vec::with_capacity(kappa.num_parts());
    for seg in kappa.parts() {
        let mut idx = Vec::with_capacity(seg.len());
        for p in seg.start()..seg.start() + seg.len() {
            let v = p % n;
            idx.push(next_index[v]);
            next_index[v] += 1;
        }
        local.push(idx);
    }
    let mut arrows: Vec<Mat> = (0..n).map(|i| Mat::zeros(dims.get(i + 1) as usize, dims.get(i) as usize)).collect();
    for (seg, idx) in kappa.parts().iter().zip(&local) {
        for t in 0..seg.len() - 1 {
            let v = (seg.start() + t) % n;
            let a = &mut arrows[v];
            let cols = a.cols;
            a.data[idx[t + 1] * cols + idx[t]] = 1;
        }
    }
    Ok(NilRepFq { field, dims, arrows })
}

/// Ranks `r(j, m)` of the length-`m` composites out of every vertex `j`, `1 ≤ m ≤ max_len`.
/// Composites longer than `max_len` are taken to vanish.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankTable {
    dims: DimVector,
    max_len: usize,
    ranks: Vec<u32>,
}

impl RankTable {
    pub fn new(dims: DimVector, max_len: usize, ranks: Vec<u32>) -> Result<Self> {
        if ranks.len() != dims.rank() * max_len {
            return Err(Error::InconsistentRanks(format!(
                "expected {} entries, got {}",
                dims.rank() * max_len,
                ranks.len()
            )));
        }
        Ok(Self { dims, max_len, ranks })
    }

    /// A table whose only nonzero ranks are given as `(j, m, rank)`.
    pub fn from_entries(dims: DimVector, entries: &[(usize, usize, u32)]) -> Result<Self> {
        let max_len = dims.total() as usize;
        let n = dims.rank();
        let mut ranks = vec![0u32; n * max_len];
        for &(j, m, r) in entries {
            if j >= n || m == 0 || m > max_len {
                return Err(Error::InconsistentRanks(format!("entry ({j},{m}) outside table")));
            }
            ranks[j * max_len + m - 1] = r;
        }
        Ok(Self { dims, max_len, ranks })
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// `r(j, m)`; `m = 0` gives the dimension at `j`.
    pub fn get(&self, j: usize, m: usize) -> u32 {
        let n = self.dims.rank();
        let j = j % n;
        if m == 0 {
            self.dims.get(j)
        } else if m > self.max_len {
            0
        } else {
            self.ranks[j * self.max_len + m - 1]
        }
    }
}

/// Combinatorial rank of the length-`m` composite out of vertex `j` in the representation `kappa`.
pub fn path_rank(kappa: &Multisegment, j: usize, m: usize) -> u32 {
    let n = kappa.rank();
    let j = j % n;
    let mut total = 0u32;
    for seg in kappa.parts() {
        let (i, l) = (seg.start(), seg.len());
        if m + 1 > l {
            continue;
        }
        // lifts p ≡ j with i ≤ p ≤ i + l - 1 - m
        let first = i + (j + n - i % n) % n;
        let last = i + l - 1 - m;
        if first <= last {
            total += ((last - first) / n + 1) as u32;
        }
    }
    total
}

pub fn path_rank_table(kappa: &Multisegment) -> RankTable {
    let dims = kappa.weight();
    let n = kappa.rank();
    let max_len = dims.total() as usize;
    let mut ranks = vec![0u32; n * max_len];
    for j in 0..n {
        for m in 1..=max_len {
            ranks[j * max_len + m - 1] = path_rank(kappa, j, m);
        }
    }
    RankTable { dims, max_len, ranks }
}

/// Recovers the isomorphism class from dimensions and path ranks.
///
/// The number of segments of length `l` starting at `j` is
/// `r(j,l-1) - r(j-1,l) - r(j,l) + r(j-1,l+1)` with `r(j,0) = dim_j`.
pub fn multisegment_from_ranks(n: usize, dims: &DimVector, ranks: &RankTable) -> Result<Multisegment> {
    if dims.rank() != n || ranks.dims() != dims {
        return Err(Error::InconsistentRanks("dimension vector does not match rank table".into()));
    }
    let total = dims.total() as usize;
    let r = |j: usize, m: usize| i64::from(ranks.get(j, m));
    let mut parts = Vec::new();
    for j in 0..n {
        let prev = (j + n - 1) % n;
        for l in 1..=total {
            let count = r(j, l - 1) - r(prev, l) - r(j, l) + r(prev, l + 1);
            if count < 0 {
                return Err(Error::InconsistentRanks(format!("negative segment count at ({j},{l})")));
            }
            let seg = Segment::new(n, j, l)?;
            for _ in 0..count {
                parts.push(seg);
            }
        }
    }
    let kappa = Multisegment::new(n, parts)?;
    if kappa.weight() != *dims || path_rank_table(&kappa).ranks_up_to(ranks.max_len) != ranks.ranks {
        return Err(Error::InconsistentRanks("rank table is not realized by any representation".into()));
    }
    Ok(kappa)
}

impl RankTable {
    fn ranks_up_to(&self, max_len: usize) -> Vec<u32> {
        let n = self.dims.rank();
        let mut out = Vec::with_capacity(n * max_len);
        for j in 0..n {
            for m in 1..=max_len {
                out.push(self.get(j, m));
            }
        }
        out
    }
}

/// The orbit-closure order as rank dominance: `κ ≤ κ′` iff every path rank of `κ`
/// is at most the corresponding rank of `κ′`.
pub fn closure_leq(kappa: &Multisegment, kappa_prime: &Multisegment) -> Result<bool> {
    if kappa.rank() != kappa_prime.rank() {
        return Err(Error::RankMismatch { expected: kappa.rank(), got: kappa_prime.rank() });
    }
    let w = kappa.weight();
    if w != kappa_prime.weight() {
        return Err(Error::WeightMismatch(format!("{kappa} and {kappa_prime} have different weights")));
    }
    let n = kappa.rank();
    let total = w.total() as usize;
    for j in 0..n {
        for m in 1..=total {
            if path_rank(kappa, j, m) > path_rank(kappa_prime, j, m) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Counts of subrepresentations `U ⊂ W` of a fixed dimension vector, keyed by
/// `(class of U, class of W/U)`.
pub type SubrepCensus = BTreeMap<(Multisegment, Multisegment), u64>;

/// Enumerates every arrow-stable graded subspace of `rep` with dimension vector
/// `sub_dims` and tallies the classes of sub and quotient. Gives up with
/// [`Error::BudgetExceeded`] after visiting `node_limit` candidate subspaces.
pub fn subrep_census(rep: &NilRepFq, sub_dims: &DimVector, node_limit: u64) -> Result<SubrepCensus> {
    let n = rep.rank();
    if sub_dims.rank() != n {
        return Err(Error::RankMismatch { expected: n, got: sub_dims.rank() });
    }
    if !sub_dims.le(rep.dims()) {
        return Ok(SubrepCensus::new());
    }
    let max_len = rep.dims().total() as usize;
    let mut probes = Vec::new();
    for j in 0..n {
        for m in 1..=max_len {
            let c = rep.composite(j, m);
            if !c.is_zero() {
                let image = c.column_vectors();
                probes.push(Probe { j, m, target: (j + m) % n, mat: c, image });
            }
        }
    }
    let mut walker = Walker {
        rep,
        sub_dims: sub_dims.coeffs().iter().map(|&d| d as usize).collect(),
        dims: rep.dims().coeffs().iter().map(|&d| d as usize).collect(),
        probes,
        chosen: vec![Vec::new(); n],
        raw: BTreeMap::new(),
        nodes: 0,
        node_limit,
        scratch: Vec::new(),
        scratch2: Vec::new(),
    };
    walker.descend(0)?;

    let quot_dims = rep.dims().checked_sub(sub_dims).expect("checked above");
    let mut census = SubrepCensus::new();
    for (key, count) in walker.raw {
        let half = key.len() / 2;
        let mut sub_entries = Vec::new();
        let mut quot_entries = Vec::new();
        for (p, probe) in walker.probes.iter().enumerate() {
            sub_entries.push((probe.j, probe.m, u32::from(key[p])));
            quot_entries.push((probe.j, probe.m, u32::from(key[half + p])));
        }
        let sub = class_from_entries(n, sub_dims, &sub_entries)?;
        let quot = class_from_entries(n, &quot_dims, &quot_entries)?;
        *census.entry((sub, quot)).or_insert(0) += count;
    }
    Ok(census)
}

fn class_from_entries(n: usize, dims: &DimVector, entries: &[(usize, usize, u32)]) -> Result<Multisegment> {
    let max_len = dims.total() as usize;
    if entries.iter().any(|&(_, m, r)| m > max_len && r != 0) {
        return Err(Error::InconsistentRanks("nonzero composite beyond nilpotency bound".into()));
    }
    let kept: Vec<(usize, usize, u32)> = entries.iter().copied().filter(|&(_, m, _)| m <= max_len).collect();
    let table = RankTable::from_entries(dims.clone(), &kept)?;
    multisegment_from_ranks(n, dims, &table)
}

struct Probe {
    j: usize,
    m: usize,
    target: usize,
    mat: Mat,
    image: Vec<u8>,
}

struct Walker<'a> {
    rep: &'a NilRepFq,
    sub_dims: Vec<usize>,
    dims: Vec<usize>,
    probes: Vec<Probe>,
    /// basis rows of the chosen subspace at each vertex
    chosen: Vec<Vec<u8>>,
    raw: BTreeMap<Vec<u8>, u64>,
    nodes: u64,
    node_limit: u64,
    scratch: Vec<u8>,
    scratch2: Vec<u8>,
}

impl Walker<'_> {
    fn descend(&mut self, vertex: usize) -> Result<()> {
        let n = self.dims.len();
        if vertex == n {
            return self.leaf();
        }
        let rep = self.rep;
        let field = rep.field();
        let d = self.dims[vertex];
        let k = self.sub_dims[vertex];
        // the subspace at this vertex must contain the image of the previous one
        let forced = if vertex == 0 {
            Vec::new()
        } else {
            let mut img = Vec::new();
            self.rep.arrow(vertex - 1).apply_rows(field, &self.chosen[vertex - 1], &mut img);
            rref(field, &mut img, d);
            img
        };
        let s = forced.len().checked_div(d).unwrap_or(0);
        if s > k {
            return Ok(());
        }
        let pivots = pivot_columns(&forced, d);
        let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let mut rows = RrefIter::new(field.order(), free.len(), k - s);
        while let Some(t) = rows.next_matrix() {
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return Err(Error::BudgetExceeded(format!(
                    "subrepresentation enumeration visited more than {} subspaces",
                    self.node_limit
                )));
            }
            let mut basis = core::mem::take(&mut self.chosen[vertex]);
            basis.clear();
            basis.extend_from_slice(&forced);
            for row in t.chunks(free.len().max(1)).take(k - s) {
                let at = basis.len();
                basis.resize(at + d, 0);
                for (c, &x) in free.iter().zip(row) {
                    basis[at + *c] = x;
                }
            }
            self.chosen[vertex] = basis;
            self.descend(vertex + 1)?;
        }
        Ok(())
    }

    fn leaf(&mut self) -> Result<()> {
        let n = self.dims.len();
        let rep = self.rep;
        let field = rep.field();
        // wrap-around arrow n-1 → 0
        if self.sub_dims[0] < self.dims[0] {
            let mut img = Vec::new();
            self.rep.arrow(n - 1).apply_rows(field, &self.chosen[n - 1], &mut img);
            if !img.iter().all(|&x| x == 0) {
                let d0 = self.dims[0];
                self.scratch.clear();
                self.scratch.extend_from_slice(&self.chosen[0]);
                self.scratch.extend_from_slice(&img);
                if field.rank_in_place(&mut self.scratch, d0) != self.sub_dims[0] {
                    return Ok(());
                }
            }
        }
        let mut key = vec![0u8; 2 * self.probes.len()];
        let count = self.probes.len();
        for (p, probe) in self.probes.iter().enumerate() {
            let src = &self.chosen[probe.j];
            let width = self.dims[probe.target];
            probe.mat.apply_rows(field, src, &mut self.scratch);
            let sub_rank = field.rank_in_place(&mut self.scratch, width);
            self.scratch2.clear();
            self.scratch2.extend_from_slice(&probe.image);
            self.scratch2.extend_from_slice(&self.chosen[probe.target]);
            let joint = field.rank_in_place(&mut self.scratch2, width);
            key[p] = sub_rank as u8;
            key[count + p] = (joint - self.sub_dims[probe.target]) as u8;
        }
        *self.raw.entry(key).or_insert(0) += 1;
        Ok(())
    }
}

fn pivot_columns(rows: &[u8], width: usize) -> Vec<usize> {
    if width == 0 {
        return Vec::new();
    }
    rows.chunks(width).filter_map(|r| r.iter().position(|&x| x != 0)).collect()
}

/// Reduced row-echelon form in place; zero rows are dropped.
fn rref(field: &FiniteField, rows: &mut Vec<u8>, width: usize) {
    if width == 0 {
        rows.clear();
        return;
    }
    let count = rows.len() / width;
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..count).find(|&r| rows[r * width + col] != 0) else {
            continue;
        };
        for c in 0..width {
            rows.swap(pivot * width + c, rank * width + c);
        }
        let inv = field.inv(rows[rank * width + col]);
        for c in 0..width {
            rows[rank * width + c] = field.mul(rows[rank * width + c], inv);
        }
        let prow: Vec<u8> = rows[rank * width..(rank + 1) * width].to_vec();
        for r in 0..count {
            if r != rank {
                let f = rows[r * width + col];
                if f != 0 {
                    field.axpy(&mut rows[r * width..(r + 1) * width], field.neg(f), &prow);
                }
            }
        }
        rank += 1;
        if rank == count {
            break;
        }
    }
    rows.truncate(rank * width);
}

/// Walks every `k × r` matrix in reduced row-echelon form of rank `k` with
/// entries in `0..q` (row-major, `k·r` entries).
pub(crate) struct RrefIter {
    q: usize,
    r: usize,
    k: usize,
    pivots: Vec<usize>,
    slots: Vec<usize>,
    digits: Vec<u8>,
    m: Vec<u8>,
    started: bool,
    done: bool,
}

impl RrefIter {
    pub(crate) fn new(q: usize, r: usize, k: usize) -> Self {
        let mut it = Self {
            q,
            r,
            k,
            pivots: (0..k).collect(),
            slots: Vec::new(),
            digits: Vec::new(),
            m: Vec::new(),
            started: false,
            done: k > r,
        };
        if !it.done {
            it.reset_pattern();
        }
        it
    }

    fn reset_pattern(&mut self) {
        let (r, k) = (self.r, self.k);
        self.slots.clear();
        for (t, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..r {
                if !self.pivots.contains(&c) {
                    self.slots.push(t * r + c);
                }
            }
        }
        self.m.clear();
        self.m.resize(k * r, 0);
        for (t, &p) in self.pivots.iter().enumerate() {
            self.m[t * r + p] = 1;
        }
        self.digits.clear();
        self.digits.resize(self.slots.len(), 0);
    }

    fn advance(&mut self) -> bool {
        for i in 0..self.digits.len() {
            self.digits[i] += 1;
            if (self.digits[i] as usize) < self.q {
                self.m[self.slots[i]] = self.digits[i];
                return true;
            }
            self.digits[i] = 0;
            self.m[self.slots[i]] = 0;
        }
        // next pivot combination
        let (r, k) = (self.r, self.k);
        let mut t = k;
        loop {
            if t == 0 {
                return false;
            }
            t -= 1;
            if self.pivots[t] < r - k + t {
                self.pivots[t] += 1;
                for u in t + 1..k {
                    self.pivots[u] = self.pivots[u - 1] + 1;
                }
                self.reset_pattern();
                return true;
            }
        }
    }

    pub(crate) fn next_matrix(&mut self) -> Option<&[u8]> {
        if self.done {
            return None;
        }
        if self.started {
            if !self.advance() {
                self.done = true;
                return None;
            }
        } else {
            self.started = true;
        }
        Some(&self.m)
    }
}

#[cfg(test)]
fn for_each_rref(q: usize, r: usize, k: usize, f: &mut dyn FnMut(&[u8])) {
    let mut it = RrefIter::new(q, r, k);
    while let Some(m) = it.next_matrix() {
        f(m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(n: usize, s: &str) -> Multisegment {
        Multisegment::parse(n, s).unwrap()
    }

    #[test]
    fn build_rep_examples() {
        let r = build_rep(&ms(2, "(0,1)"), 2).unwrap();
        assert_eq!(r.dims().coeffs(), &[1, 0]);
        assert!(r.arrow(0).is_zero() && r.arrow(1).is_zero());

        let r = build_rep(&ms(2, "(1,2)"), 3).unwrap();
        assert_eq!(r.dims().coeffs(), &[1, 1]);
        assert_eq!(r.arrow(1).data, vec![1]);
        assert!(r.arrow(0).is_zero());

        let r = build_rep(&ms(2, "2*(0,1)"), 2).unwrap();
        assert_eq!(r.dims().coeffs(), &[2, 0]);
        assert!(r.arrow(0).is_zero());
        assert!(build_rep(&ms(2, "(0,1)"), 6).is_err());
    }

    #[test]
    fn path_rank_examples() {
        let k = ms(2, "(1,2)");
        assert_eq!(path_rank(&k, 1, 1), 1);
        assert_eq!(path_rank(&k, 0, 1), 0);
        assert_eq!(path_rank(&k, 1, 3), 0);
        let long = ms(3, "(2,7)");
        assert_eq!(path_rank(&long, 2, 7), 0);
        assert_eq!(path_rank(&long, 2, 6), 1);
        assert_eq!(path_rank(&long, 2, 3), 2);
    }

    #[test]
    fn ranks_to_multisegment_examples() {
        let dims: DimVector = "1,1".parse().unwrap();
        let table = RankTable::from_entries(dims.clone(), &[]).unwrap();
        assert_eq!(multisegment_from_ranks(2, &dims, &table).unwrap(), ms(2, "(0,1)+(1,1)"));
        let table = RankTable::from_entries(dims.clone(), &[(1, 1, 1)]).unwrap();
        assert_eq!(multisegment_from_ranks(2, &dims, &table).unwrap(), ms(2, "(1,2)"));
        let zero: DimVector = "0,0".parse().unwrap();
        let table = RankTable::from_entries(zero.clone(), &[]).unwrap();
        assert!(multisegment_from_ranks(2, &zero, &table).unwrap().is_empty());
        // both arrows of rank one in dimension (1,1) is not nilpotent
        let bad = RankTable::from_entries(dims.clone(), &[(0, 1, 1), (1, 1, 1)]).unwrap();
        assert!(matches!(multisegment_from_ranks(2, &dims, &bad), Err(Error::InconsistentRanks(_))));
    }

    #[test]
    fn closure_examples() {
        assert!(closure_leq(&ms(2, "(0,1)+(1,1)"), &ms(2, "(0,2)")).unwrap());
        assert!(!closure_leq(&ms(2, "(0,2)"), &ms(2, "(1,2)")).unwrap());
        assert!(!closure_leq(&ms(2, "(1,2)"), &ms(2, "(0,2)")).unwrap());
        let k = ms(3, "(0,2)+(2,1)");
        assert!(closure_leq(&k, &k).unwrap());
        assert!(matches!(closure_leq(&ms(2, "(0,1)"), &ms(2, "(1,1)")), Err(Error::WeightMismatch(_))));
    }

    #[test]
    fn rref_enumeration_counts_are_gaussian_binomials() {
        let mut c = 0;
        for_each_rref(3, 4, 2, &mut |_| c += 1);
        // [4 choose 2]_3 = (3^4-1)(3^3-1)/((3^2-1)(3-1)) = 130
        assert_eq!(c, 130);
        let mut c = 0;
        for_each_rref(2, 3, 0, &mut |_| c += 1);
        assert_eq!(c, 1);
    }

    #[test]
    fn census_examples() {
        let rep = build_rep(&ms(2, "2*(0,1)"), 3).unwrap();
        let census = subrep_census(&rep, &"1,0".parse().unwrap(), u64::MAX).unwrap();
        assert_eq!(census.get(&(ms(2, "(0,1)"), ms(2, "(0,1)"))), Some(&4));

        let rep = build_rep(&ms(2, "(1,2)"), 2).unwrap();
        let census = subrep_census(&rep, &"1,0".parse().unwrap(), u64::MAX).unwrap();
        assert_eq!(census.len(), 1);
        assert_eq!(census.get(&(ms(2, "(0,1)"), ms(2, "(1,1)"))), Some(&1));
        let census = subrep_census(&rep, &"0,1".parse().unwrap(), u64::MAX).unwrap();
        assert!(census.is_empty());
    }

    #[test]
    fn census_respects_node_limit() {
        let rep = build_rep(&ms(2, "4*(0,1)"), 3).unwrap();
        let err = subrep_census(&rep, &"2,0".parse().unwrap(), 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded(_)));
    }
}
