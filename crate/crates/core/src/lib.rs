//! Exact Duistermaat-Heckman densities of regular coadjoint orbits.
//!
//! The crate works entirely in the real-weight picture: weights live in the
//! fundamental-weight basis, root-lattice vectors in the simple-root basis,
//! and every quantity except the Monte Carlo sampler in [`orbit`] is an
//! exact rational or big integer.
//!
//! Layout:
//!
//! - [`rootsys`]: Cartan data, coordinate changes, coroot pairings.
//! - [`weyl`]: the Weyl group as integer matrices on weight coordinates.
//! - [`lattice`]: integer kernels and determinants.
//! - [`kostant`]: the Kostant partition function.
//! - [`polytope`]: fiber polytopes of the positive-root map and their
//!   lattice-normalized volumes (the asymptotic partition function).
//! - [`dh`]: the alternating Weyl sums for the DH density and for weight
//!   multiplicities, a Freudenthal cross-check, the Pfaffian sign check and
//!   the scaled-multiplicity convergence series.
//! - [`orbit`]: Haar sampling of SU(2)/SU(3) coadjoint orbits and comparison
//!   of the empirical moment-map pushforward with the exact density.

pub mod dh;
pub mod error;
pub mod lattice;
pub mod kostant;
pub mod num;
pub mod orbit;
pub mod polytope;
pub mod rootsys;
pub mod weyl;

pub use error::{Error, Result};
pub use num::Rational;
pub use rootsys::{LieType, RootSystem, RootVector, SimpleFactor, Weight};
pub use weyl::{WeylElement, WeylGroup};
