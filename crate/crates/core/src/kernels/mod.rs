//! Min-plus kernels: matrix products, scalar sequence convolution and
//! convolution of matrix sequences.

mod matseq;
mod poly;
mod product;
mod seqconv;

pub use matseq::{bounded_product, matseq_convolution, matseq_convolution_range, MatSeqStrategy, MatrixSeq};
pub use product::{minplus_power, minplus_product, minplus_product_acc, ProductStrategy};
pub use seqconv::{is_non_increasing, seq_convolution, seq_convolution_range, DistSeq, ScalarConvStrategy};

pub(crate) use seqconv::min_conv_into;

/// Kernel choices threaded through the solvers and oracles.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConvStrategy {
    pub matseq: MatSeqStrategy,
    pub scalar: ScalarConvStrategy,
    pub product: ProductStrategy,
}

impl ConvStrategy {
    pub fn naive() -> Self {
        Self::default()
    }

    /// Monotone scalar kernel. The polynomial sequence kernel only pays off
    /// with a fast boolean matrix product, so sequences stay naive here.
    pub fn fast() -> Self {
        ConvStrategy {
            matseq: MatSeqStrategy::Naive,
            scalar: ScalarConvStrategy::Monotone,
            product: ProductStrategy::Naive,
        }
    }

    /// Polynomial matrix-sequence kernel with the bound measured per call.
    pub fn polynomial() -> Self {
        ConvStrategy {
            matseq: MatSeqStrategy::Polynomial { bound: None },
            scalar: ScalarConvStrategy::Monotone,
            product: ProductStrategy::Naive,
        }
    }
}
