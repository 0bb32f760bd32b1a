//! Spectral structure of the Neumann Laplacian on 2-rep-tile domains: the
//! isosceles right triangle and boxes with edge ratio 2^(1/n).
//!
//! The crate enumerates spectra exactly, folds and unfolds eigenfunctions
//! between a domain and its half, builds the k-frames on which whole
//! eigenspaces vanish, counts nodal domains and decides Courant-sharpness
//! for every eigenvalue below a cutoff.

pub mod acceptance;
pub mod algebra;
pub mod courant;
pub mod eigenfn;
pub mod error;
pub mod folding;
pub mod nodal;
pub mod qlattice;
pub mod raster;
pub mod sampling;
pub mod spectrum;

pub use algebra::{AlgebraicValue, Cutoff, Parity};
pub use error::{Error, Result};
pub use qlattice::{Bc, Domain, Problem, QuantumNumber};
