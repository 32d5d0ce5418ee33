//! Exact combinatorial and rational-homotopy invariants of the rank
//! filtration of the spectral category of matrix algebras.
//!
//! The crate is organized bottom-up:
//!
//! * [`combinat`]: pointed multisets and the wedge-summand indexing of the
//!   rank filtration on finite pointed sets.
//! * [`orbitspace`]: descriptors of orbit spaces `U(k)/H` and the coinvariant
//!   (Molien) engine for their rational cohomology.
//! * [`cartan`]: the Cartan/Koszul engine, valid for any connected `H` plus
//!   a finite group of block permutations, and the engine dispatcher.
//! * [`decomp`]: types of direct-sum decompositions, chains of them, and the
//!   cube whose total cofiber is the suspended decomposition complex.
//! * [`spectra`]: per-`(k, l)` filtration reports.
//!
//! All arithmetic is exact. Engines are generic over a [`Scalar`] field; the
//! aliases below fix the usual choices.

pub mod cartan;
pub mod combinat;
pub mod decomp;
pub mod error;
pub mod linalg;
pub mod orbitspace;
pub mod poly;
pub mod scalar;
pub mod spectra;

pub use error::{Error, Result};
pub use orbitspace::{OrbitDescriptor, PoincareCache};
pub use poly::{PoincarePoly, Poly, SignedPoly};
pub use scalar::Scalar;

/// Arbitrary-precision rationals, the default field.
pub type Rational = num_rational::BigRational;
/// Machine-word rationals; fine for small Molien averages, may overflow in
/// large eliminations.
pub type Rational64 = num_rational::Rational64;
/// Polynomials in `q` over the default field.
pub type QPoly = Poly<Rational>;
/// Cycle indices over the default field.
pub type QCycleIndex = orbitspace::cycle_index::CycleIndex<Rational>;
