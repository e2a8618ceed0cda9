//! Exact combinatorics of Iwahori level structure for `GL_n` and `GSp_2n`.
//!
//! The crate covers the extended affine Weyl group `W̃ = X_* ⋊ W₀` with its
//! length function and Bruhat order, admissible and permissible sets,
//! Kottwitz-Rapoport strata, Newton points and `B(G, μ)`, the Iwahori-Hecke
//! algebra with its Bernstein center elements, and brute-force point counts
//! of local models over small finite fields.

pub mod affine;
pub mod bruhat;
pub mod error;
pub mod figure;
pub mod group;
pub mod hecke;
pub mod latmodel;
pub mod laurent;
pub mod newton;
pub mod scalar;
pub mod stratify;

pub use affine::AffineElt;
pub use bruhat::bruhat_leq;
pub use error::{Error, Result};
pub use group::{build_group_datum, pairing, Coweight, Family, Group, GroupDatum, Perm, Root};
pub use hecke::Hecke;
pub use laurent::Laurent;
pub use latmodel::ChainPoint;
pub use newton::{KottwitzPoint, NewtonPoint};
pub use scalar::{Coeff, Rational};

/// Laurent polynomials in `v` with integer coefficients.
pub type LaurentPoly = Laurent<i64>;
/// Hecke algebra elements with integer coefficients.
pub type HeckeElt = Hecke<i64>;
/// Hecke algebra elements with arbitrary precision coefficients.
pub type BigHecke = Hecke<num_bigint::BigInt>;
