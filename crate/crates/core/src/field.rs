//! Small finite fields `F_q`, `q ≤ 16`, as lookup tables.
//!
//! Elements are `u8` in `0..q`. Prime fields use residues; `F_4`, `F_8`, `F_16`
//! and `F_9` encode a polynomial over the prime field in base `p`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Field sizes accepted by [`FiniteField::new`], in increasing order.
pub const SUPPORTED_Q: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

#[derive(Clone, Debug)]
pub struct FiniteField {
    q: usize,
    p: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

// (p, k, low coefficients of a monic irreducible of degree k over F_p)
fn extension_data(q: u32) -> Option<(usize, usize, &'static [usize])> {
    match q {
        4 => Some((2, 2, &[1, 1])),       // x^2 + x + 1
        8 => Some((2, 3, &[1, 1, 0])),    // x^3 + x + 1
        16 => Some((2, 4, &[1, 1, 0, 0])), // x^4 + x + 1
        9 => Some((3, 2, &[1, 0])),       // x^2 + 1
        _ => None,
    }
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        if !SUPPORTED_Q.contains(&q) {
            return Err(Error::UnsupportedField(q));
        }
        let qs = q as usize;
        let (p, k, modulus) = extension_data(q).unwrap_or((qs, 1, &[]));
        let digits = |x: usize| -> Vec<usize> {
            let mut d = vec![0; k];
            let mut x = x;
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let encode = |d: &[usize]| d.iter().rev().fold(0usize, |acc, &c| acc * p + c);
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            let da = digits(a);
            for b in 0..qs {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = encode(&sum) as u8;
                let product = if k == 1 {
                    (a * b) % p
                } else {
                    let mut prod = vec![0usize; 2 * k - 1];
                    for (i, x) in da.iter().enumerate() {
                        for (j, y) in db.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    // Reduce modulo x^k + Σ modulus[i] x^i.
                    for deg in (k..2 * k - 1).rev() {
                        let c = prod[deg];
                        if c != 0 {
                            prod[deg] = 0;
                            for (i, m) in modulus.iter().enumerate() {
                                let shift = deg - k + i;
                                prod[shift] = (prod[shift] + p * p - c * m % p) % p;
                            }
                        }
                    }
                    encode(&prod[..k])
                };
                mul[a * qs + b] = product as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).expect("additive inverse") as u8;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).expect("field has inverses") as u8;
            }
        }
        Ok(Self { q: qs, p, add, mul, neg, inv })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `inv(0)` is `0`.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// `row_a += c * row_b`.
    #[inline]
    pub fn axpy(&self, dst: &mut [u8], c: u8, src: &[u8]) {
        if c == 0 {
            return;
        }
        let row = &self.mul[c as usize * self.q..(c as usize + 1) * self.q];
        for (d, s) in dst.iter_mut().zip(src) {
            *d = self.add[*d as usize * self.q + row[*s as usize] as usize];
        }
    }

    /// Rank of a family of vectors of common length `width`, stored row-major in `rows`.
    /// The buffer is reduced in place.
    pub fn rank_in_place(&self, rows: &mut [u8], width: usize) -> usize {
        if width == 0 {
            return 0;
        }
        let count = rows.len() / width;
        let mut rank = 0;
        for col in 0..width {
            if rank == count {
                break;
            }
            let Some(pivot) = (rank..count).find(|&r| rows[r * width + col] != 0) else {
                continue;
            };
            if pivot != rank {
                for c in 0..width {
                    rows.swap(pivot * width + c, rank * width + c);
                }
            }
            let inv = self.inv(rows[rank * width + col]);
            for c in 0..width {
                rows[rank * width + c] = self.mul(rows[rank * width + c], inv);
            }
            let (head, tail) = rows.split_at_mut((rank + 1) * width);
            let prow = &head[rank * width..];
            for r in 0..count - rank - 1 {
                let row = &mut tail[r * width..(r + 1) * width];
                let f = row[col];
                if f != 0 {
                    self.axpy(row, self.neg(f), prow);
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold_for_every_supported_q() {
        for &q in &SUPPORTED_Q {
            let f = FiniteField::new(q).unwrap();
            let qs = q as u8;
            for a in 0..qs {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                }
                for b in 0..qs {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if a != 0 && b != 0 {
                        assert_ne!(f.mul(a, b), 0, "zero divisor in q={q}");
                    }
                    for c in 0..qs {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
            // p·1 = 0
            let mut x = 0u8;
            for _ in 0..f.characteristic() {
                x = f.add(x, 1);
            }
            assert_eq!(x, 0);
        }
    }

    #[test]
    fn unsupported_sizes_are_rejected() {
        for q in [0, 1, 6, 10, 12, 17] {
            assert_eq!(FiniteField::new(q).unwrap_err(), Error::UnsupportedField(q));
        }
    }

    #[test]
    fn rank_of_small_matrices() {
        let f = FiniteField::new(3).unwrap();
        let mut m = vec![1, 2, 0, 2, 1, 0, 0, 0, 1];
        // second row is 2 * first row over F_3
        assert_eq!(f.rank_in_place(&mut m, 3), 2);
        let mut z = vec![0u8; 6];
        assert_eq!(f.rank_in_place(&mut z, 2), 0);
    }
}
