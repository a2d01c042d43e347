//! States on the mass shell: quadrature for the invariant measure, momentum
//! profiles, the unitary action, reduced spin matrices and two-particle
//! entanglement.

pub mod montecarlo;
pub mod profile;
pub mod quadrature;
pub mod reduced;
pub mod state;
pub mod two_particle;

pub use profile::MomentumProfile;
pub use quadrature::{gauss_legendre, Quadrature, QuadratureInfo};
pub use reduced::{
    pauli_lubansky_reduced, spin_reduced_density, von_neumann_entropy, ReducedKind, ReducedMatrix,
};
pub use state::{QuadratureRule, Section, SingleParticleState};
pub use two_particle::{concurrence, entanglement_entropy, TwoParticleState};

use nalgebra::Vector3;

use crate::error::Result;
use crate::lorentz::Shell;

/// Builds the quadrature `build_quadrature(m, shell, center, P, order)` on
/// the cube of half-width `P`, as a single Gauss-Legendre panel per axis.
pub fn build_quadrature(m: f64, shell: Shell, center: Vector3<f64>, half_width: f64, order: usize) -> Result<Quadrature> {
    Quadrature::new(m, shell, center, half_width, order, 1)
}
