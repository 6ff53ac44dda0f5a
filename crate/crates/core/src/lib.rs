//! Exact computer algebra for the Sergeev algebra `H_n = S_n ⋉ A_n`,
//! the fusion elements `Ψ_λ`, and the Capelli operators of the queer
//! Lie superalgebra `q_N`.
//!
//! Everything is computed over the multi-quadratic field
//! `K = Q(√m : m signed squarefree)` with zero-tolerance arithmetic:
//! equality is structural equality of canonical forms throughout.

pub mod capelli;
pub mod field;
pub mod fusion;
pub mod laurent;
pub mod matrixrep;
pub mod sergeev;
pub mod shifted;
pub mod superdiff;

pub use field::{FieldElement, Rational};
pub use laurent::LaurentSeries;
pub use sergeev::SergeevElement;
pub use shifted::StrictPartition;
