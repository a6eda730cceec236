//! Euler calculus and curvature calculus on finite simplicial complexes.
//!
//! Integration against the Euler characteristic (simple functions, the
//! floor/ceiling integrals, the barycenter integral) and against curvature
//! measures (Banchoff angle sums, averaged Morse indices of linear
//! projections), together with pushforwards along simplicial maps, the two
//! Fubini theorems, and the adiabatic limit on surfaces of revolution.
//!
//! The crate is `no_std` and needs only `alloc`. Combinatorial quantities use
//! exact rationals; geometric quantities are `f64` and carry an error bound.
//! Enable the `parallel` feature to spread Monte Carlo batches across threads;
//! results are identical either way.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod adiabatic;
pub mod complex;
pub mod curvature;
pub mod embedding;
mod error;
pub mod euler;
pub mod fixtures;
pub mod map;
pub mod morse;
pub mod pl;
pub mod product;
pub mod pushforward;
pub mod rational;
pub mod sampling;
pub mod subdivision;

pub use complex::{Simplex, SimplicialComplex, VertexId};
pub use embedding::Embedding;
pub use error::Error;
pub use euler::ConstructibleFunction;
pub use map::SimplicialMap;
pub use pl::PlFunction;
pub use product::{ProductCell, ProductCellComplex};
pub use rational::Rational;
pub use sampling::Estimate;

pub type Result<T, E = Error> = core::result::Result<T, E>;
