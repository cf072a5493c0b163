//! Prime-field arithmetic, polynomials over F_p and dense linear algebra.

mod field;
mod matrix;
mod poly;

pub use field::{is_prime, Fp, PrimeField, MAX_PRIME};
pub use matrix::{span_basis, subspace_intersect, Echelon, MatrixModP};
pub use poly::Poly;

/// Basis of `ker M`.
pub fn mat_kernel(m: &MatrixModP) -> Vec<Vec<Fp>> {
    m.kernel()
}

/// `rank(M^g)` for a square `M` of size `g`.
pub fn stable_rank(m: &MatrixModP) -> crate::Result<usize> {
    m.stable_rank()
}
