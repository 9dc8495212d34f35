//! Matrices of bivariate polynomials with boolean coefficients.
//!
//! Each cell holds, for every x-degree, a packed bit vector over y-degrees.
//! Coefficients only ever need to be tested for nonzero-ness, so addition is
//! OR and coefficient multiplication is AND; multiplying two polynomials is
//! an OR of shifted copies.

use crate::error::{Error, Result};

/// Hard cap on the number of 64-bit words a product may allocate.
const MAX_WORDS: usize = 1 << 28;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BoolPolyMatrix {
    nrows: usize,
    ncols: usize,
    xlen: usize,
    ywords: usize,
    data: Vec<u64>,
}

impl BoolPolyMatrix {
    pub fn zeros(nrows: usize, ncols: usize, xlen: usize, ybits: usize) -> Result<Self> {
        let ywords = ybits.div_ceil(64).max(1);
        let words = nrows
            .checked_mul(ncols)
            .and_then(|c| c.checked_mul(xlen))
            .and_then(|c| c.checked_mul(ywords))
            .filter(|&w| w <= MAX_WORDS)
            .ok_or(Error::MemoryCap {
                needed: nrows as u128 * ncols as u128 * xlen as u128 * ywords as u128,
                cap: MAX_WORDS as u128,
            })?;
        Ok(BoolPolyMatrix {
            nrows,
            ncols,
            xlen,
            ywords,
            data: vec![0; words],
        })
    }

    #[inline]
    fn at(&self, r: usize, c: usize, x: usize) -> usize {
        ((r * self.ncols + c) * self.xlen + x) * self.ywords
    }

    pub fn xlen(&self) -> usize {
        self.xlen
    }

    /// Sets the coefficient of `x^x y^y` in cell `(r, c)`.
    pub fn set_monomial(&mut self, r: usize, c: usize, x: usize, y: usize) {
        let base = self.at(r, c, x);
        self.data[base + y / 64] |= 1u64 << (y % 64);
    }

    /// Smallest y-degree with a nonzero coefficient of `x^x` in `(r, c)`.
    pub fn min_y(&self, r: usize, c: usize, x: usize) -> Option<usize> {
        let base = self.at(r, c, x);
        self.data[base..base + self.ywords]
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Polynomial matrix product; the result has room for y-degrees up to
    /// `ybits_out - 1`, which must cover the sum of both operands' degrees.
    pub fn mul(&self, other: &BoolPolyMatrix, ybits_out: usize) -> Result<BoolPolyMatrix> {
        assert_eq!(self.ncols, other.nrows);
        let xlen = (self.xlen + other.xlen).saturating_sub(1);
        let mut out = BoolPolyMatrix::zeros(self.nrows, other.ncols, xlen, ybits_out)?;
        let ow = out.ywords;
        let bw = other.ywords;
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                for x1 in 0..self.xlen {
                    let abase = self.at(i, k, x1);
                    for (wi, &word) in self.data[abase..abase + self.ywords].iter().enumerate() {
                        let mut bits = word;
                        while bits != 0 {
                            let y1 = wi * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            let (ws, bs) = (y1 / 64, (y1 % 64) as u32);
                            for j in 0..other.ncols {
                                for x2 in 0..other.xlen {
                                    let bbase = other.at(k, j, x2);
                                    let obase = out.at(i, j, x1 + x2);
                                    let src = &other.data[bbase..bbase + bw];
                                    let dst = &mut out.data[obase..obase + ow];
                                    shift_or(dst, src, ws, bs);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `dst |= src << (64 * ws + bs)`, truncated to `dst`'s length.
#[inline]
fn shift_or(dst: &mut [u64], src: &[u64], ws: usize, bs: u32) {
    for (t, &w) in src.iter().enumerate() {
        if w == 0 {
            continue;
        }
        let lo = t + ws;
        if lo >= dst.len() {
            break;
        }
        dst[lo] |= w << bs;
        if bs > 0 && lo + 1 < dst.len() {
            dst[lo + 1] |= w >> (64 - bs);
        }
    }
}
