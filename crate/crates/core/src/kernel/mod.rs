//! Exact univariate polynomials, real algebraic numbers and root isolation.

pub mod algebraic;
pub mod isolate;
pub mod poly;

pub use algebraic::{format_decimal, rational_to_f64, AlgebraicReal, GridCell};
pub use isolate::{
    descartes_bound, isolate_roots, square_free_part, Kernel, KernelOptions, KernelStats, NextRoot, RootCache,
};
pub use poly::{IntPoly, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("multiple root at {0}")]
    MultipleRoot(String),
}
