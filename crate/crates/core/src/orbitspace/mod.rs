//! Unitary orbit spaces `U(k)/H`: canonical descriptors and the coinvariant
//! (Molien) engine for their rational Poincaré polynomials.
//!
//! Degrees follow one convention everywhere: a power of `q` in the
//! coinvariant algebra has cohomological degree 2.

mod cache;
pub mod cycle_index;
pub mod descriptor;
pub mod molien;

pub use cache::PoincareCache;
pub use descriptor::{Block, Factor, OrbitDescriptor};
pub use molien::{flag_poincare_oracle, graded_char_coinv, molien_poincare, molien_poincare_in};
