//! ADHM quadruples `(B₁, B₂, ı, ȷ)` over `Q`, the affine action on the plane and
//! the spectral divisor `θ`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

/// Dense matrix over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rational::one())
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// Rows must share a length; `cols` is used when there are no rows.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(cols, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidDatum(format!("ragged matrix rows, expected {c} columns")));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// `diag(A, B)`, also for non-square blocks.
    pub fn block_diag(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..rhs.rows {
            for c in 0..rhs.cols {
                out.set(self.rows + r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        out
    }

    /// `[A | B]`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        out
    }

    /// `[A ; B]`.
    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Self { rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    /// `det(t·Id − A)` by Faddeev–LeVerrier.
    pub fn char_poly(&self) -> RationalPoly {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k−1} + c_{n−k+1}·Id,  c_{n−k} = −tr(A·M_k)/k
            m = self.mul(&m).add(&Self::scalar(n, &coeffs[n - k + 1]));
            coeffs[n - k] = -self.mul(&m).trace() / int(k as i64);
        }
        RationalPoly::from_coeffs(coeffs)
    }
}

/// Univariate polynomial over `Q` in `t`, ascending coefficients, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![Rational::one()] }
    }

    /// `t − c`.
    pub fn linear_root(c: &Rational) -> Self {
        Self { coeffs: vec![-c.clone(), Rational::one()] }
    }

    /// `∏ (t − r)`.
    pub fn from_roots<'a, I: IntoIterator<Item = &'a Rational>>(roots: I) -> Self {
        roots.into_iter().fold(Self::one(), |acc, r| acc.mul(&Self::linear_root(r)))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self { coeffs: Vec::new() };
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let coef = if mag.is_integer() { format!("{}", mag.to_integer()) } else { format!("{}/{}", mag.numer(), mag.denom()) };
            match (k, mag.is_one()) {
                (0, _) => f.write_str(&coef)?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{coef}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{coef}*t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Effective divisor on the affine line, stored as its monic defining polynomial.
pub type CharDivisor = RationalPoly;

/// `(B₁, B₂, ı, ȷ)` with `B₁, B₂: W → W`, `ı: V → W`, `ȷ: W → V`, `dim W = a`, `dim V = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdhmDatum {
    a: usize,
    n: usize,
    b1: RatMatrix,
    b2: RatMatrix,
    i: RatMatrix,
    j: RatMatrix,
}

impl AdhmDatum {
    /// Checks shapes only; use [`AdhmDatum::validate`] for the moment-map relation.
    pub fn new(a: usize, n: usize, b1: RatMatrix, b2: RatMatrix, i: RatMatrix, j: RatMatrix) -> Result<Self> {
        let shapes = [("B1", &b1, a, a), ("B2", &b2, a, a), ("i", &i, a, n), ("j", &j, n, a)];
        for (name, m, r, c) in shapes {
            if (m.rows(), m.cols()) != (r, c) {
                return Err(Error::InvalidDatum(format!("{name} is {}x{}, expected {r}x{c}", m.rows(), m.cols())));
            }
        }
        Ok(Self { a, n, b1, b2, i, j })
    }

    /// The empty datum of rank `n`.
    pub fn empty(n: usize) -> Self {
        Self {
            a: 0,
            n,
            b1: RatMatrix::zeros(0, 0),
            b2: RatMatrix::zeros(0, 0),
            i: RatMatrix::zeros(0, n),
            j: RatMatrix::zeros(n, 0),
        }
    }

    /// Completes an arbitrary pair `B₁, B₂` to a valid datum with `n = a`,
    /// `ı = −[B₁, B₂]` and `ȷ = Id`.
    pub fn with_identity_framing(b1: RatMatrix, b2: RatMatrix) -> Result<Self> {
        let a = b1.rows();
        let i = b1.commutator(&b2).scale(&-Rational::one());
        Self::new(a, a, b1, b2, i, RatMatrix::identity(a))
    }

    /// `k` points `(z, t)` of the plane as `1×1` blocks with `ı = ȷ = 0`.
    pub fn point_data(n: usize, points: &[(Rational, Rational)]) -> Self {
        points.iter().fold(Self::empty(n), |acc, (z, t)| {
            let block = Self {
                a: 1,
                n,
                b1: RatMatrix::scalar(1, z),
                b2: RatMatrix::scalar(1, t),
                i: RatMatrix::zeros(1, n),
                j: RatMatrix::zeros(n, 1),
            };
            acc.direct_sum(&block).expect("ranks agree")
        })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b1(&self) -> &RatMatrix {
        &self.b1
    }

    pub fn b2(&self) -> &RatMatrix {
        &self.b2
    }

    pub fn i_map(&self) -> &RatMatrix {
        &self.i
    }

    pub fn j_map(&self) -> &RatMatrix {
        &self.j
    }

    /// `[B₁, B₂] + ıȷ = 0`.
    pub fn validate(&self) -> bool {
        self.b1.commutator(&self.b2).add(&self.i.mul(&self.j)).is_zero()
    }

    fn require_valid(&self) -> Result<()> {
        if self.validate() {
            Ok(())
        } else {
            Err(Error::InvalidDatum(format!("[B1,B2] + ij != 0 for a datum with a={}", self.a)))
        }
    }

    /// Block sum; `ı` and `ȷ` are stacked along `W`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch { expected: self.n, got: other.n });
        }
        Ok(Self {
            a: self.a + other.a,
            n: self.n,
            b1: self.b1.block_diag(&other.b1),
            b2: self.b2.block_diag(&other.b2),
            i: self.i.vstack(&other.i),
            j: self.j.hstack(&other.j),
        })
    }
}

/// `(x, y) ↦ (g₁₁x + g₁₂y + g₁, g₂₁x + g₂₂y + g₂)` with invertible linear part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineTransform2 {
    pub g11: Rational,
    pub g12: Rational,
    pub g21: Rational,
    pub g22: Rational,
    pub g1: Rational,
    pub g2: Rational,
}

impl AffineTransform2 {
    pub fn new(g11: Rational, g12: Rational, g21: Rational, g22: Rational, g1: Rational, g2: Rational) -> Result<Self> {
        let g = Self { g11, g12, g21, g22, g1, g2 };
        if g.det().is_zero() {
            return Err(Error::SingularTransform);
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        Self::translation(Rational::zero(), Rational::zero())
    }

    pub fn translation(g1: Rational, g2: Rational) -> Self {
        Self { g11: int(1), g12: int(0), g21: int(0), g22: int(1), g1, g2 }
    }

    pub fn det(&self) -> Rational {
        &self.g11 * &self.g22 - &self.g12 * &self.g21
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            g11: &self.g11 * &other.g11 + &self.g12 * &other.g21,
            g12: &self.g11 * &other.g12 + &self.g12 * &other.g22,
            g21: &self.g21 * &other.g11 + &self.g22 * &other.g21,
            g22: &self.g21 * &other.g12 + &self.g22 * &other.g22,
            g1: &self.g11 * &other.g1 + &self.g12 * &other.g2 + &self.g1,
            g2: &self.g21 * &other.g1 + &self.g22 * &other.g2 + &self.g2,
        }
    }

    /// Second coordinate of the image of `(z, t)`: where the point projects on the spectral line.
    pub fn project(&self, z: &Rational, t: &Rational) -> Rational {
        &self.g21 * z + &self.g22 * t + &self.g2
    }

    pub fn to_array(&self) -> [Rational; 6] {
        [self.g11.clone(), self.g12.clone(), self.g21.clone(), self.g22.clone(), self.g1.clone(), self.g2.clone()]
    }
}

/// `g·(B₁,B₂,ı,ȷ) = (g₁₁B₁+g₁₂B₂+g₁, g₂₁B₁+g₂₂B₂+g₂, det(g)·ı, ȷ)`.
pub fn act(g: &AffineTransform2, d: &AdhmDatum) -> Result<AdhmDatum> {
    if g.det().is_zero() {
        return Err(Error::SingularTransform);
    }
    d.require_valid()?;
    Ok(act_unchecked(g, d))
}

fn act_unchecked(g: &AffineTransform2, d: &AdhmDatum) -> AdhmDatum {
    let id = RatMatrix::identity(d.a);
    AdhmDatum {
        a: d.a,
        n: d.n,
        b1: d.b1.scale(&g.g11).add(&d.b2.scale(&g.g12)).add(&id.scale(&g.g1)),
        b2: d.b1.scale(&g.g21).add(&d.b2.scale(&g.g22)).add(&id.scale(&g.g2)),
        i: d.i.scale(&g.det()),
        j: d.j.clone(),
    }
}

/// `det(t·Id − (g₂₁B₁ + g₂₂B₂ + g₂))`, the divisor cut out on the spectral line.
pub fn theta(d: &AdhmDatum, g: &AffineTransform2) -> Result<CharDivisor> {
    d.require_valid()?;
    if g.det().is_zero() {
        return Err(Error::SingularTransform);
    }
    Ok(act_unchecked(g, d).b2.char_poly())
}

/// `θ(d ⊕ points) = θ(d) · ∏ (t − g-projection of each point)`.
pub fn additivity_check(d_free: &AdhmDatum, points: &[(Rational, Rational)], g: &AffineTransform2) -> Result<bool> {
    let whole = d_free.direct_sum(&AdhmDatum::point_data(d_free.n, points))?;
    let lhs = theta(&whole, g)?;
    let projections: Vec<Rational> = points.iter().map(|(z, t)| g.project(z, t)).collect();
    let rhs = theta(d_free, g)?.mul(&RationalPoly::from_roots(&projections));
    Ok(lhs == rhs)
}
