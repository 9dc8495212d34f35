use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::kernels::poly::BoolPolyMatrix;
use crate::kernels::product::product_acc;
use crate::matrix::DistMatrix;

/// Hop-indexed run of equally shaped matrices; `mats[p]` is hop `offset + p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixSeq {
    offset: i64,
    rows: Vec<usize>,
    cols: Vec<usize>,
    mats: Vec<DistMatrix>,
}

impl MatrixSeq {
    pub fn new(offset: i64, rows: Vec<usize>, cols: Vec<usize>, mats: Vec<DistMatrix>) -> Result<Self> {
        if mats.iter().any(|m| m.rows() != rows.as_slice() || m.cols() != cols.as_slice()) {
            return Err(Error::DimensionMismatch("sequence elements differ in shape".into()));
        }
        Ok(MatrixSeq {
            offset,
            rows,
            cols,
            mats,
        })
    }

    /// Shape taken from the first matrix; `mats` must be non-empty.
    pub fn from_mats(offset: i64, mats: Vec<DistMatrix>) -> Result<Self> {
        let first = mats
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty sequence has no shape".into()))?;
        let (rows, cols) = (first.rows().to_vec(), first.cols().to_vec());
        Self::new(offset, rows, cols, mats)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn mats(&self) -> &[DistMatrix] {
        &self.mats
    }

    pub fn into_mats(self) -> Vec<DistMatrix> {
        self.mats
    }

    /// Matrix for hop `h`, if stored.
    pub fn get(&self, h: i64) -> Option<&DistMatrix> {
        let p = h - self.offset;
        if p < 0 {
            None
        } else {
            self.mats.get(p as usize)
        }
    }

    /// Sub-run for hops `lo..=hi`; hops outside the stored range become
    /// all-`inf` matrices.
    pub fn window(&self, lo: i64, hi: i64) -> MatrixSeq {
        let mats = (lo..=hi)
            .map(|h| {
                self.get(h)
                    .cloned()
                    .unwrap_or_else(|| DistMatrix::infinite(self.rows.clone(), self.cols.clone()))
            })
            .collect();
        MatrixSeq {
            offset: lo,
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            mats,
        }
    }

    fn max_abs_finite(&self) -> i64 {
        self.mats.iter().map(DistMatrix::max_abs_finite).max().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MatSeqStrategy {
    /// Every `(x, y)` pair through the min-plus product.
    #[default]
    Naive,
    /// Bivariate boolean-polynomial matrix product. `bound` is the declared
    /// magnitude bound on finite entries; `None` measures it from the inputs.
    Polynomial { bound: Option<u64> },
}

/// `C_z = min_{x+y=z} A_x * B_y` over the full output range.
pub fn matseq_convolution(a: &MatrixSeq, b: &MatrixSeq, strategy: MatSeqStrategy) -> Result<MatrixSeq> {
    let lo = a.offset + b.offset;
    let hi = lo + (a.len() + b.len()) as i64 - 2;
    matseq_convolution_range(a, b, lo, hi, strategy)
}

/// Same as [`matseq_convolution`] restricted to output hops `lo..=hi`.
pub fn matseq_convolution_range(
    a: &MatrixSeq,
    b: &MatrixSeq,
    lo: i64,
    hi: i64,
    strategy: MatSeqStrategy,
) -> Result<MatrixSeq> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(
            "convolution needs A's columns to equal B's rows".into(),
        ));
    }
    match strategy {
        MatSeqStrategy::Naive => Ok(naive(a, b, lo, hi)),
        MatSeqStrategy::Polynomial { bound } => polynomial(a, b, lo, hi, bound),
    }
}

fn naive(a: &MatrixSeq, b: &MatrixSeq, lo: i64, hi: i64) -> MatrixSeq {
    let (nk, nc) = (a.cols.len(), b.cols.len());
    let a_live: Vec<bool> = a.mats.iter().map(|m| !m.is_all_inf()).collect();
    let b_live: Vec<bool> = b.mats.iter().map(|m| !m.is_all_inf()).collect();
    let mats = (lo..=hi)
        .map(|z| {
            let mut acc = DistMatrix::infinite(a.rows.clone(), b.cols.clone());
            for (xp, am) in a.mats.iter().enumerate() {
                if !a_live[xp] {
                    continue;
                }
                let y = z - a.offset - xp as i64 - b.offset;
                if y < 0 || y as usize >= b.mats.len() || !b_live[y as usize] {
                    continue;
                }
                product_acc(am.cells(), b.mats[y as usize].cells(), acc.cells_mut(), nk, nc);
            }
            acc
        })
        .collect();
    MatrixSeq {
        offset: lo,
        rows: a.rows.clone(),
        cols: b.cols.clone(),
        mats,
    }
}

fn polynomial(a: &MatrixSeq, b: &MatrixSeq, lo: i64, hi: i64, bound: Option<u64>) -> Result<MatrixSeq> {
    let measured = a.max_abs_finite().max(b.max_abs_finite());
    let bound = match bound {
        Some(m) => {
            let m = i64::try_from(m).unwrap_or(i64::MAX);
            if measured > m {
                return Err(Error::BoundExceeded { value: measured, bound: m });
            }
            m
        }
        None => measured,
    };
    if bound > (i64::MAX - 1) / 4 {
        return Err(Error::BoundExceeded {
            value: bound,
            bound: (i64::MAX - 1) / 4,
        });
    }
    // finite entries shift into [0, 2M]; products land in [0, 4M]
    let span_in = (2 * bound + 1) as usize;
    let span_out = (4 * bound + 1) as usize;
    let (nr, nk, nc) = (a.rows.len(), a.cols.len(), b.cols.len());
    if a.is_empty() || b.is_empty() {
        return Ok(naive(a, b, lo, hi));
    }

    let encode = |s: &MatrixSeq, r: usize, c: usize, ybits: usize| -> Result<BoolPolyMatrix> {
        let mut p = BoolPolyMatrix::zeros(r, c, s.len(), ybits)?;
        for (x, m) in s.mats.iter().enumerate() {
            for i in 0..r {
                for j in 0..c {
                    if let Some(v) = m.get(i, j).finite() {
                        p.set_monomial(i, j, x, (v + bound) as usize);
                    }
                }
            }
        }
        Ok(p)
    };
    let pa = encode(a, nr, nk, span_in)?;
    // B is laid out at output width so shifted copies stay in range
    let pb = encode(b, nk, nc, span_out)?;
    let pc = pa.mul(&pb, span_out)?;

    let base = a.offset + b.offset;
    let mats = (lo..=hi)
        .map(|z| {
            let mut m = DistMatrix::infinite(a.rows.clone(), b.cols.clone());
            let x = z - base;
            if x >= 0 && (x as usize) < pc.xlen() {
                for i in 0..nr {
                    for j in 0..nc {
                        if let Some(y) = pc.min_y(i, j, x as usize) {
                            m.set(i, j, Dist::new(y as i64 - 2 * bound));
                        }
                    }
                }
            }
            m
        })
        .collect();
    Ok(MatrixSeq {
        offset: lo,
        rows: a.rows.clone(),
        cols: b.cols.clone(),
        mats,
    })
}

/// Min-plus product of matrices with entries in `{-M..M} ∪ {inf}` through
/// the polynomial kernel (a length-one convolution).
pub fn bounded_product(a: &DistMatrix, b: &DistMatrix, bound: u64) -> Result<DistMatrix> {
    let sa = MatrixSeq::from_mats(0, vec![a.clone()])?;
    let sb = MatrixSeq::from_mats(0, vec![b.clone()])?;
    let c = matseq_convolution(&sa, &sb, MatSeqStrategy::Polynomial { bound: Some(bound) })?;
    Ok(c.into_mats().pop().expect("length-one output"))
}
