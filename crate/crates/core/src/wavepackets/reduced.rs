//! Reduced spin matrices `tau` (boosting) and `sigma` (perception) and the
//! von Neumann entropy.

use nalgebra::DMatrix;
use serde::Serialize;

use super::quadrature::Quadrature;
use super::state::SingleParticleState;
use crate::error::{Error, Result};
use crate::fibers::Description;
use crate::minkowski::C64;
use crate::spin_rep::{SpinMatrix, SpinVector};

/// Trace slack accepted by [`von_neumann_entropy`].
pub const TRACE_TOL: f64 = 1e-5;
/// Eigenvalues down to `-EIGEN_SLACK` are clipped to zero.
pub const EIGEN_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReducedKind {
    Tau,
    Sigma,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedMatrix {
    pub matrix: SpinMatrix,
    pub kind: ReducedKind,
    pub normalized: bool,
}

impl ReducedMatrix {
    pub fn new(matrix: SpinMatrix, kind: ReducedKind) -> Self {
        Self { matrix, kind, normalized: false }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Divides by the trace.
    pub fn normalize(&self) -> Self {
        let t = self.trace();
        Self { matrix: &self.matrix / C64::new(t, 0.0), kind: self.kind, normalized: true }
    }

    /// `||M - M^dagger||_F`.
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).norm()
    }

    /// Ascending eigenvalues of the Hermitian part.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }
}

/// `(M + M^dagger)/2`.
pub fn hermitian_part(m: &SpinMatrix) -> SpinMatrix {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Ascending eigenvalues of the Hermitian part of `m`.
pub fn hermitian_eigenvalues(m: &SpinMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = hermitian_part(m).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// `int v(p) v(p)^dagger dmu` for the stacked vector `v`.
pub fn outer_integral<F>(quadrature: &Quadrature, dim: usize, f: F) -> SpinMatrix
where
    F: Fn(&crate::minkowski::FourVector) -> SpinVector + Sync,
{
    if quadrature.is_empty() {
        return DMatrix::zeros(dim, dim);
    }
    quadrature.reduce(
        |p, w, acc: &mut Option<SpinMatrix>| {
            let v = f(p);
            let acc = acc.get_or_insert_with(|| DMatrix::zeros(dim, dim));
            acc.gerc(C64::new(w, 0.0), &v, &v, C64::new(1.0, 0.0));
        },
        |a, b| a + b,
    )
}

/// `int psi psi^dagger dmu` in the state's own quadrature.
pub fn state_outer_integral(state: &SingleParticleState) -> SpinMatrix {
    outer_integral(state.quadrature(), state.rep().dim(), |p| state.eval(p))
}

/// `tau = int psi(p) psi(p)^dagger dmu(p)` for a boosting state.
pub fn spin_reduced_density(state: &SingleParticleState) -> Result<ReducedMatrix> {
    if state.desc() != Description::Boosting {
        return Err(Error::WrongDescription { expected: "boosting" });
    }
    Ok(ReducedMatrix::new(state_outer_integral(state), ReducedKind::Tau))
}

/// `sigma = int phi(p) phi(p)^dagger dmu(p)` for a perception state. Not
/// trace-normalized.
pub fn pauli_lubansky_reduced(state: &SingleParticleState) -> Result<ReducedMatrix> {
    if state.desc() != Description::Perception {
        return Err(Error::WrongDescription { expected: "perception" });
    }
    Ok(ReducedMatrix::new(state_outer_integral(state), ReducedKind::Sigma))
}

/// `-sum lambda log2 lambda` of a trace-one density matrix.
pub fn von_neumann_entropy(rho: &ReducedMatrix) -> Result<f64> {
    entropy_bits(&rho.matrix)
}

pub fn entropy_bits(rho: &SpinMatrix) -> Result<f64> {
    let trace = rho.trace().re;
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::BadTrace { trace });
    }
    let mut s = 0.0;
    for lambda in hermitian_eigenvalues(rho) {
        if lambda < -EIGEN_SLACK {
            return Err(Error::NegativeEigenvalue { value: lambda });
        }
        let l = lambda.clamp(0.0, 1.0);
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    Ok(s.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[f64]) -> SpinMatrix {
        DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(v.len(), v.iter().map(|&x| C64::new(x, 0.0))))
    }

    #[test]
    fn entropy_of_pure_and_maximally_mixed() {
        assert_eq!(entropy_bits(&diag(&[1.0, 0.0])).unwrap(), 0.0);
        assert!((entropy_bits(&diag(&[0.5, 0.5])).unwrap() - 1.0).abs() < 1e-15);
        assert!((entropy_bits(&diag(&[0.25; 4])).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn entropy_rejects_bad_input() {
        assert!(matches!(entropy_bits(&diag(&[0.7, 0.7])), Err(Error::BadTrace { .. })));
        assert!(matches!(entropy_bits(&diag(&[1.1, -0.1])), Err(Error::NegativeEigenvalue { .. })));
    }

    #[test]
    fn normalization_divides_by_trace() {
        let r = ReducedMatrix::new(diag(&[2.0, 2.0]), ReducedKind::Sigma).normalize();
        assert!(r.normalized);
        assert!((r.trace() - 1.0).abs() < 1e-15);
    }
}
