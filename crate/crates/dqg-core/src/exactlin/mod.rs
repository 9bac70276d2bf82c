//! Exact linear algebra over the Gaussian rationals, plus a small
//! floating-point companion for spectral computations.

pub mod gram;
pub mod matrix;
pub mod numeric;
pub mod quotient;
pub mod scalar;

pub use gram::{is_psd_hermitian, GramMap, GramSpace};
pub use matrix::{in_span, span_equal, span_rank, GMatrix};
pub use numeric::{
    hermitian_eigen, hermitian_function, min_eigenvalue, numeric_is_psd, numeric_psd_sqrt, C64,
    CMatrix,
};
pub use quotient::Subquotient;
pub use scalar::{parse_rational, GRat};
