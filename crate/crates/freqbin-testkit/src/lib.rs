//! Independent reference implementations for testing `freqbin`.
//!
//! Everything here recomputes quantities the main crate produces, by a
//! different mathematical route: Bessel power series and quadrature
//! instead of FFTs, Gram–Schmidt unitaries instead of physical cascades.
//! Tests freeze agreements between the two routes; this crate is a
//! dev-dependency only and ships no production code.

mod bessel;
mod coefficients;
mod random;

pub use bessel::bessel_j;
pub use coefficients::{jacobi_anger_coefficients, quadrature_coefficient};
pub use random::{
    random_drive, random_two_photon_state, random_unitary, random_unitary_transform,
};
