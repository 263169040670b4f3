//! Monte Carlo oracle for SU(2) and SU(3).
//!
//! Haar-random `g` conjugates the diagonal matrix representing lambda; the
//! diagonal of `g Λ g†` is the torus moment-map image of a uniformly
//! distributed orbit point (the orbit is homogeneous, so the normalized
//! Liouville measure is the Haar pushforward). Histograms of these images are
//! compared with the exact density after normalizing both to mass one.
//!
//! This is the only floating-point module in the crate.

pub mod chevalley;
pub mod compare;
pub mod sampling;

pub use chevalley::{build_chevalley, embed_lambda, ChevalleyTriple};
pub use compare::{compare_to_exact, compare_to_masses, exact_bin_masses, noise_floor, ComparisonReport};
pub use sampling::{
    haar_special_unitary, moment_image, sample_moment_points, sample_pushforward, BinSpec, EmpiricalDensity,
    OrbitSampleConfig,
};
