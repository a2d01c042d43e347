//! Four-vectors, the Minkowski metric and the two isomorphisms between
//! `R^4` and the real vector space of 2x2 Hermitian matrices.
//!
//! Components are always stored contravariantly, `x = (x^0, x^1, x^2, x^3)`,
//! with signature `(+, -, -, -)` and natural units. Lowering an index is an
//! explicit operation ([`FourVector::lower`]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix2, Matrix4, Vector3, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;

/// Absolute Frobenius tolerance for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// The Minkowski metric `diag(1, -1, -1, -1)`.
pub fn eta() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

#[derive(Clone, Copy, PartialEq, Default)]
pub struct FourVector(pub Vector4<f64>);

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self(Vector4::new(t, x, y, z))
    }

    pub fn zero() -> Self {
        Self(Vector4::zeros())
    }

    pub fn from_parts(t: f64, spatial: Vector3<f64>) -> Self {
        Self::new(t, spatial.x, spatial.y, spatial.z)
    }

    /// Unit basis vector `e_mu`.
    pub fn basis(mu: usize) -> Self {
        let mut v = Vector4::zeros();
        v[mu] = 1.0;
        Self(v)
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> Vector3<f64> {
        Vector3::new(self.0[1], self.0[2], self.0[3])
    }

    /// Covariant components `x_mu = eta_{mu nu} x^nu`.
    pub fn lower(&self) -> [f64; 4] {
        [self.0[0], -self.0[1], -self.0[2], -self.0[3]]
    }

    pub fn dot(&self, other: &FourVector) -> f64 {
        minkowski_dot(self, other)
    }

    /// `<x, x>`.
    pub fn square(&self) -> f64 {
        minkowski_dot(self, self)
    }

    pub fn max_abs_diff(&self, other: &FourVector) -> f64 {
        (self.0 - other.0).amax()
    }
}

impl fmt::Debug for FourVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:.6e}, {:.6e}, {:.6e}, {:.6e})",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector(self.0 + rhs.0)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector(self.0 - rhs.0)
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector(-self.0)
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, rhs: f64) -> FourVector {
        FourVector(self.0 * rhs)
    }
}

/// `<x, y> = x^0 y^0 - x^1 y^1 - x^2 y^2 - x^3 y^3`.
pub fn minkowski_dot(x: &FourVector, y: &FourVector) -> f64 {
    x.0[0] * y.0[0] - x.0[1] * y.0[1] - x.0[2] * y.0[2] - x.0[3] * y.0[3]
}

/// Pauli matrix `tau^mu` with `tau^0 = I`.
pub fn pauli(mu: usize) -> Mat2 {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match mu {
        0 => Mat2::new(l, o, o, l),
        1 => Mat2::new(o, l, l, o),
        2 => Mat2::new(o, -i, i, o),
        3 => Mat2::new(l, o, o, -l),
        _ => panic!("Pauli index {mu} out of range"),
    }
}

/// 2x2 Hermitian matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Herm2(Mat2);

impl Herm2 {
    /// Validates Hermiticity within [`HERMITIAN_TOL`].
    pub fn new(m: Mat2) -> Result<Self> {
        let defect = (m - m.adjoint()).norm();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian { defect });
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn into_inner(self) -> Mat2 {
        self.0
    }
}

/// `x~ = x^0 tau^0 + x . tau`.
pub fn tilde(x: &FourVector) -> Herm2 {
    let [t, a, b, c] = [x.0[0], x.0[1], x.0[2], x.0[3]];
    Herm2(Mat2::new(
        C64::new(t + c, 0.0),
        C64::new(a, -b),
        C64::new(a, b),
        C64::new(t - c, 0.0),
    ))
}

/// `x_~ = x_mu tau^mu`, i.e. the tilde of the spatially reflected vector.
pub fn utilde(x: &FourVector) -> Herm2 {
    let [t, a, b, c] = x.lower();
    Herm2(Mat2::new(
        C64::new(t + c, 0.0),
        C64::new(a, -b),
        C64::new(a, b),
        C64::new(t - c, 0.0),
    ))
}

/// Inverse of [`tilde`]: `x^0 = tr(H)/2`, `x^j = tr(H tau^j)/2`.
pub fn untilde(h: &Herm2) -> FourVector {
    untilde_unchecked(&h.0)
}

/// [`untilde`] on a raw matrix, rejecting non-Hermitian input.
pub fn untilde_checked(m: &Mat2) -> Result<FourVector> {
    Herm2::new(*m).map(|h| untilde(&h))
}

pub(crate) fn untilde_unchecked(m: &Mat2) -> FourVector {
    let comp = |mu: usize| (m * pauli(mu)).trace().re / 2.0;
    FourVector::new(comp(0), comp(1), comp(2), comp(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature() {
        let e0 = FourVector::basis(0);
        let e1 = FourVector::basis(1);
        assert_eq!(minkowski_dot(&e0, &e0), 1.0);
        assert_eq!(minkowski_dot(&e1, &e1), -1.0);
        let pm = FourVector::new(2.5, 0.0, 0.0, 0.0);
        assert_eq!(pm.square(), 6.25);
    }

    #[test]
    fn tilde_examples() {
        let pm = FourVector::new(1.7, 0.0, 0.0, 0.0);
        assert_eq!(*tilde(&pm).matrix(), pauli(0) * C64::new(1.7, 0.0));
        assert_eq!(*tilde(&FourVector::basis(3)).matrix(), pauli(3));
        assert_eq!(untilde(&Herm2::new(pauli(0)).unwrap()), FourVector::basis(0));
        assert_eq!(untilde(&Herm2::new(pauli(1)).unwrap()), FourVector::basis(1));
    }

    #[test]
    fn tilde_and_utilde_differ_by_spatial_sign() {
        let x = FourVector::new(0.3, -1.2, 0.7, 2.0);
        let reflected = FourVector::from_parts(x.time(), -x.spatial());
        assert_eq!(utilde(&x), tilde(&reflected));
        let t = FourVector::new(4.0, 0.0, 0.0, 0.0);
        assert_eq!(utilde(&t), tilde(&t));
    }

    #[test]
    fn untilde_rejects_non_hermitian() {
        let mut m = pauli(1);
        m[(0, 1)] = C64::new(2.0, 0.0);
        assert!(matches!(untilde_checked(&m), Err(Error::NotHermitian { .. })));
    }
}
