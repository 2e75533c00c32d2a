//! Exact-arithmetic kernel for border-rank certificates.
//!
//! Everything is computed over the Gaussian rationals Q(i): flattening
//! lower bounds (standard and Koszul), secant-multidrop expansions of
//! tensor powers with their certificate verification, line-restriction
//! multiplicity probes for secant hypersurfaces, and the asymptotic
//! bound tables B(r,k) / kappa_r. No floating point anywhere; decimal
//! output is produced from big-integer roots with proven digits.

pub mod bounds;
pub mod catalog;
pub mod field;
pub mod hypersurface;
pub mod linalg;
pub mod multidrop;
pub mod poly;
mod roots;
pub mod tensor;

pub use field::GaussianRational;
pub use linalg::ExactMatrix;
pub use poly::{MultivariatePoly, UnivariatePoly};
pub use tensor::{FlatteningSpec, Tensor};
