use rayon::prelude::*;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::matrix::DistMatrix;

/// Work (multiply-adds) above which a product is split across threads.
const PAR_THRESHOLD: usize = 1 << 18;

/// Min-plus product kernel selector. Only the explicit triple loop exists;
/// the enum is the extension point for faster kernels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ProductStrategy {
    #[default]
    Naive,
}

/// `out[i][j] = min(out[i][j], min_k a[i][k] + b[k][j])` on raw row-major
/// slices. `a` is `nr x nk`, `b` is `nk x nc`.
pub(crate) fn product_acc(a: &[Dist], b: &[Dist], out: &mut [Dist], nk: usize, nc: usize) {
    if nc == 0 {
        return;
    }
    let row_job = |(arow, orow): (&[Dist], &mut [Dist])| {
        for (k, &aik) in arow.iter().enumerate() {
            if aik.is_inf() {
                continue;
            }
            let brow = &b[k * nc..(k + 1) * nc];
            for (o, &bkj) in orow.iter_mut().zip(brow) {
                let s = aik + bkj;
                if s < *o {
                    *o = s;
                }
            }
        }
    };
    let nr = out.len() / nc;
    if nk == 0 {
        return;
    }
    if nr * nk * nc >= PAR_THRESHOLD && nr > 1 {
        a.par_chunks(nk)
            .zip(out.par_chunks_mut(nc))
            .for_each(row_job);
    } else {
        a.chunks(nk).zip(out.chunks_mut(nc)).for_each(row_job);
    }
}

fn check_chain(a: &DistMatrix, b: &DistMatrix) -> Result<()> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "product of {}x{} and {}x{} (or mismatched labels)",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    Ok(())
}

/// `C[i,j] = min_k A[i,k] + B[k,j]` under saturating addition.
pub fn minplus_product(a: &DistMatrix, b: &DistMatrix) -> Result<DistMatrix> {
    check_chain(a, b)?;
    let mut c = DistMatrix::infinite(a.rows().to_vec(), b.cols().to_vec());
    product_acc(a.cells(), b.cells(), c.cells_mut(), a.ncols(), b.ncols());
    Ok(c)
}

/// Accumulating variant: `acc = min(acc, A * B)`.
pub fn minplus_product_acc(a: &DistMatrix, b: &DistMatrix, acc: &mut DistMatrix) -> Result<()> {
    check_chain(a, b)?;
    if acc.rows() != a.rows() || acc.cols() != b.cols() {
        return Err(Error::DimensionMismatch("accumulator shape".into()));
    }
    let (nk, nc) = (a.ncols(), b.ncols());
    product_acc(a.cells(), b.cells(), acc.cells_mut(), nk, nc);
    Ok(())
}

/// `W^q` under the min-plus product, by repeated squaring.
pub fn minplus_power(w: &DistMatrix, q: usize) -> Result<DistMatrix> {
    if w.rows() != w.cols() {
        return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
    }
    if q < 1 {
        return Err(Error::Precondition("matrix power needs q >= 1".into()));
    }
    let mut result: Option<DistMatrix> = None;
    let mut base = w.clone();
    let mut q = q;
    loop {
        if q & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => minplus_product(&r, &base)?,
            });
        }
        q >>= 1;
        if q == 0 {
            break;
        }
        base = minplus_product(&base, &base)?;
    }
    Ok(result.expect("q >= 1"))
}
