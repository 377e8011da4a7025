//! Exact linear algebra over Q and Q(t).

pub mod dense;
pub mod laurent;
pub mod sparse;

pub use laurent::{det_laurent, rank_laurent, LaurentMatrix, LaurentPoly, Poly};
pub use sparse::SparseMatrix;
