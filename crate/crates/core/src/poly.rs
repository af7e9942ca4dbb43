//! Integer polynomials in `q` and exact interpolation.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A polynomial in `q` with integer coefficients, ascending powers, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HallPolynomial {
    coeffs: Vec<i64>,
}

impl HallPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The polynomial `q`.
    pub fn q() -> Self {
        Self::from_coeffs(vec![0, 1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: i64) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| acc * i128::from(q) + i128::from(c))
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl Add for &HallPolynomial {
    type Output = HallPolynomial;

    fn add(self, rhs: &HallPolynomial) -> HallPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coeffs.get(i).copied().unwrap_or(0) + rhs.coeffs.get(i).copied().unwrap_or(0))
            .collect();
        HallPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &HallPolynomial {
    type Output = HallPolynomial;

    fn sub(self, rhs: &HallPolynomial) -> HallPolynomial {
        self + &rhs.scale(-1)
    }
}

impl Mul for &HallPolynomial {
    type Output = HallPolynomial;

    fn mul(self, rhs: &HallPolynomial) -> HallPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return HallPolynomial::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        HallPolynomial::from_coeffs(coeffs)
    }
}

/// Writes `Σ c_k v^k` in ascending order, e.g. `1 + 2*q^2`.
pub(crate) fn write_poly<I>(f: &mut fmt::Formatter<'_>, terms: I, var: &str) -> fmt::Result
where
    I: IntoIterator<Item = (usize, i128)>,
{
    let mut first = true;
    for (k, c) in terms {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        if first {
            if c < 0 {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c < 0 { " - " } else { " + " })?;
        }
        first = false;
        match (k, mag) {
            (0, m) => write!(f, "{m}")?,
            (1, 1) => f.write_str(var)?,
            (1, m) => write!(f, "{m}*{var}")?,
            (k, 1) => write!(f, "{var}^{k}")?,
            (k, m) => write!(f, "{m}*{var}^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for HallPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().enumerate().map(|(k, &c)| (k, i128::from(c))), "q")
    }
}

/// Lagrange interpolation through `(x_i, y_i)` with exact rational arithmetic.
/// Returns the coefficients of the unique polynomial of degree `< points.len()`.
pub fn interpolate_rational(points: &[(i64, i128)]) -> Vec<BigRational> {
    let m = points.len();
    let mut result = vec![BigRational::zero(); m];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // basis polynomial ∏_{j≠i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(BigInt::from(xj));
            }
            basis = next;
            denom *= BigInt::from(xi - xj);
        }
        let scale = BigRational::new(BigInt::from(yi), denom);
        for (k, c) in basis.iter().enumerate() {
            result[k] += c * &scale;
        }
    }
    result
}

/// Interpolates and insists on integer coefficients.
pub fn interpolate_integer(points: &[(i64, i128)]) -> Result<HallPolynomial> {
    let coeffs = interpolate_rational(points);
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if !c.is_integer() {
            return Err(Error::NonStabilizing(format!("non-integral interpolant coefficient {c}")));
        }
        let v = c.to_integer().to_i64().ok_or_else(|| Error::NonStabilizing(String::from("coefficient overflow")))?;
        out.push(v);
    }
    Ok(HallPolynomial::from_coeffs(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(format!("{}", HallPolynomial::from_coeffs(vec![1, 1])), "1 + q");
        assert_eq!(format!("{}", HallPolynomial::from_coeffs(vec![0, -1, 0, 3])), "-q + 3*q^3");
        assert_eq!(format!("{}", HallPolynomial::zero()), "0");
        assert_eq!(format!("{}", HallPolynomial::from_coeffs(vec![2, 0, 0])), "2");
    }

    #[test]
    fn arithmetic() {
        let a = HallPolynomial::from_coeffs(vec![1, 1]);
        let b = HallPolynomial::from_coeffs(vec![-1, 1]);
        assert_eq!(&a * &b, HallPolynomial::from_coeffs(vec![-1, 0, 1]));
        assert_eq!(&a - &a, HallPolynomial::zero());
        assert_eq!((&a + &b).coeffs(), &[0, 2]);
        assert_eq!(a.eval(7), 8);
        assert_eq!(HallPolynomial::zero().degree(), None);
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        let p = HallPolynomial::from_coeffs(vec![3, -2, 0, 1]);
        let pts: Vec<(i64, i128)> = [2, 3, 4, 5].iter().map(|&x| (x, p.eval(x))).collect();
        assert_eq!(interpolate_integer(&pts).unwrap(), p);
        // x/2 through (2,1), (4,2)
        let pts = [(2, 1), (4, 2)];
        assert!(matches!(interpolate_integer(&pts), Err(Error::NonStabilizing(_))));
    }
}
