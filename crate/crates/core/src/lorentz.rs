//! `SL(2,C)`, its double cover of the proper orthochronous Lorentz group,
//! standard boosts on both mass shells and Wigner rotations.

use std::fmt;
use std::ops::Mul;

use nalgebra::{Matrix4, Vector3};

use crate::error::{Error, Result};
use crate::minkowski::{pauli, tilde, untilde_unchecked, FourVector, Mat2, C64};

/// Tolerance on `|det A - 1|` for [`Sl2c`].
pub const DET_TOL: f64 = 1e-12;
/// Relative tolerance on `|p.p - m^2| / m^2` for mass-shell membership.
pub const SHELL_TOL: f64 = 1e-9;

/// The two sheets of the mass hyperboloid `p.p = m^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shell {
    Plus,
    Minus,
}

impl Shell {
    pub fn sign(self) -> f64 {
        match self {
            Shell::Plus => 1.0,
            Shell::Minus => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Shell::Plus => "plus",
            Shell::Minus => "minus",
        }
    }

    /// The rest momentum `p_m^+- = (+-m, 0, 0, 0)`.
    pub fn rest_momentum(self, m: f64) -> FourVector {
        FourVector::new(self.sign() * m, 0.0, 0.0, 0.0)
    }

    /// Lifts a three-momentum onto this shell.
    pub fn lift(self, m: f64, p: &Vector3<f64>) -> FourVector {
        FourVector::from_parts(self.sign() * (m * m + p.norm_squared()).sqrt(), *p)
    }
}

impl fmt::Display for Shell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Fails unless `p` lies on the given shell of mass `m`.
pub fn check_on_shell(p: &FourVector, shell: Shell, m: f64) -> Result<()> {
    if !(m > 0.0) {
        return Err(Error::InvalidParameter(format!("mass must be positive, got {m}")));
    }
    let residual = (p.square() - m * m).abs() / (m * m);
    if residual > SHELL_TOL || p.time() * shell.sign() <= 0.0 {
        return Err(Error::OffShell { shell: shell.name(), residual });
    }
    Ok(())
}

/// A 2x2 complex matrix of unit determinant.
#[derive(Clone, Copy, PartialEq)]
pub struct Sl2c(Mat2);

impl fmt::Debug for Sl2c {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sl2c({:?})", self.0)
    }
}

impl Sl2c {
    pub fn new(m: Mat2) -> Result<Self> {
        let defect = (m.determinant() - C64::new(1.0, 0.0)).norm();
        if defect > DET_TOL {
            return Err(Error::NotUnimodular { defect });
        }
        Ok(Self(m))
    }

    /// Rescales an invertible matrix by `det^{-1/2}`.
    pub fn normalized(m: Mat2) -> Result<Self> {
        let det = m.determinant();
        if det.norm() < 1e-300 {
            return Err(Error::NotUnimodular { defect: 1.0 });
        }
        Ok(Self(m / det.sqrt()))
    }

    pub(crate) fn from_matrix_unchecked(m: Mat2) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(Mat2::identity())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        // det = 1 so the inverse is the adjugate.
        let m = &self.0;
        Self(Mat2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]))
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn neg(&self) -> Self {
        Self(-self.0)
    }

    /// `||A^dagger A - I||_F`, zero exactly on `SU(2)`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.0.adjoint() * self.0 - Mat2::identity()).norm()
    }

    /// Acts on a four-vector through the covering map.
    pub fn act(&self, x: &FourVector) -> FourVector {
        untilde_unchecked(&(self.0 * tilde(x).into_inner() * self.0.adjoint()))
    }

    /// `exp(rapidity * n.tau / 2)`: pure boost along the unit axis `n`.
    pub fn boost(axis: &Vector3<f64>, rapidity: f64) -> Result<Self> {
        let n = unit(axis)?;
        let (c, s) = ((rapidity / 2.0).cosh(), (rapidity / 2.0).sinh());
        Ok(Self(Mat2::identity() * C64::new(c, 0.0) + dot_tau(&n) * C64::new(s, 0.0)))
    }

    /// `exp(-i angle n.tau / 2)`: rotation by `angle` about the unit axis `n`.
    pub fn rotation(axis: &Vector3<f64>, angle: f64) -> Result<Self> {
        let n = unit(axis)?;
        let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
        Ok(Self(Mat2::identity() * C64::new(c, 0.0) - dot_tau(&n) * C64::new(0.0, s)))
    }
}

impl Mul for Sl2c {
    type Output = Sl2c;
    fn mul(self, rhs: Sl2c) -> Sl2c {
        Sl2c(self.0 * rhs.0)
    }
}

impl Mul for &Sl2c {
    type Output = Sl2c;
    fn mul(self, rhs: &Sl2c) -> Sl2c {
        Sl2c(self.0 * rhs.0)
    }
}

fn unit(axis: &Vector3<f64>) -> Result<Vector3<f64>> {
    let norm = axis.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::NonUnitDirection { norm });
    }
    Ok(axis / norm)
}

fn dot_tau(n: &Vector3<f64>) -> Mat2 {
    pauli(1) * C64::new(n.x, 0.0) + pauli(2) * C64::new(n.y, 0.0) + pauli(3) * C64::new(n.z, 0.0)
}

/// A real 4x4 matrix in `SO+(1,3)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lorentz4(pub Matrix4<f64>);

impl Lorentz4 {
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn apply(&self, x: &FourVector) -> FourVector {
        FourVector(self.0 * x.0)
    }

    /// `||L^T eta L - eta||` in the max norm.
    pub fn metric_defect(&self) -> f64 {
        let eta = crate::minkowski::eta();
        (self.0.transpose() * eta * self.0 - eta).amax()
    }
}

/// The covering homomorphism `SL(2,C) -> SO+(1,3)`, defined by
/// `(kappa(A) x)~ = A x~ A^dagger`.
///
/// Built column by column from the images of the basis vectors.
pub fn kappa(a: &Sl2c) -> Lorentz4 {
    let mut out = Matrix4::zeros();
    for mu in 0..4 {
        let col = a.act(&FourVector::basis(mu));
        out.set_column(mu, &col.0);
    }
    Lorentz4(out)
}

/// [`kappa`] on an arbitrary matrix, validating the determinant first.
pub fn kappa_checked(m: &Mat2) -> Result<Lorentz4> {
    Sl2c::new(*m).map(|a| kappa(&a))
}

/// The standard boost `L^+-(p) = (+-p~ + m I) / sqrt(2m(m +- p^0))`,
/// the positive square root of `+-p~/m`, sending `p_m^+-` to `p`.
pub fn standard_boost(p: &FourVector, shell: Shell, m: f64) -> Result<Sl2c> {
    check_on_shell(p, shell, m)?;
    Ok(standard_boost_unchecked(p, shell, m))
}

pub(crate) fn standard_boost_unchecked(p: &FourVector, shell: Shell, m: f64) -> Sl2c {
    let sign = shell.sign();
    let norm = (2.0 * m * (m + sign * p.time())).sqrt();
    let mat = (tilde(p).into_inner() * C64::new(sign, 0.0) + Mat2::identity() * C64::new(m, 0.0))
        / C64::new(norm, 0.0);
    Sl2c(mat)
}

/// `R(p_hat)`: the rotation taking `z_hat` to `p_hat`, as a product of a
/// rotation about `y` by the polar angle and about `z` by the azimuth.
pub fn rotation_to(p_hat: &Vector3<f64>) -> Result<Sl2c> {
    let norm = p_hat.norm();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NonUnitDirection { norm });
    }
    let theta = p_hat.z.clamp(-1.0, 1.0).acos();
    let phi = p_hat.y.atan2(p_hat.x);
    let azimuth = Mat2::new(
        C64::from_polar(1.0, -phi / 2.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::from_polar(1.0, phi / 2.0),
    );
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let polar = Mat2::new(
        C64::new(c, 0.0),
        C64::new(-s, 0.0),
        C64::new(s, 0.0),
        C64::new(c, 0.0),
    );
    Ok(Sl2c(azimuth * polar))
}

/// `B_m(|p|)`: boost along `z` taking `p_m` to `(p^0, 0, 0, |p|)`.
pub fn boost_z(m: f64, pmag: f64) -> Result<Sl2c> {
    if !(m > 0.0) || !(pmag >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "boost_z needs m > 0 and |p| >= 0, got m = {m}, |p| = {pmag}"
        )));
    }
    let p0 = (m * m + pmag * pmag).sqrt();
    let up = ((p0 + pmag) / m).sqrt();
    // (p0 - |p|)/m = m/(p0 + |p|) avoids cancellation.
    let down = (m / (p0 + pmag)).sqrt();
    Ok(Sl2c(Mat2::new(
        C64::new(up, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(down, 0.0),
    )))
}

/// `W(A, p) = L(A p)^{-1} A L(p)`, an element of the little group `SU(2)`.
pub fn wigner_rotation(a: &Sl2c, p: &FourVector, shell: Shell, m: f64) -> Result<Sl2c> {
    check_on_shell(p, shell, m)?;
    Ok(wigner_rotation_unchecked(a, p, shell, m))
}

pub(crate) fn wigner_rotation_unchecked(a: &Sl2c, p: &FourVector, shell: Shell, m: f64) -> Sl2c {
    let lp = standard_boost_unchecked(p, shell, m);
    let ap = shell.lift(m, &a.act(p).spatial());
    let lap = standard_boost_unchecked(&ap, shell, m);
    lap.inverse() * *a * lp
}

/// An element `(a, A)` of the Poincare cover `R^4 x| SL(2,C)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoincareElement {
    pub translation: FourVector,
    pub lorentz: Sl2c,
}

impl PoincareElement {
    pub fn new(translation: FourVector, lorentz: Sl2c) -> Self {
        Self { translation, lorentz }
    }

    pub fn identity() -> Self {
        Self::new(FourVector::zero(), Sl2c::identity())
    }

    pub fn translation(a: FourVector) -> Self {
        Self::new(a, Sl2c::identity())
    }

    pub fn lorentz(a: Sl2c) -> Self {
        Self::new(FourVector::zero(), a)
    }

    /// `(a, A)(a', A') = (a + kappa(A) a', A A')`.
    pub fn compose(&self, other: &PoincareElement) -> PoincareElement {
        PoincareElement {
            translation: self.translation + self.lorentz.act(&other.translation),
            lorentz: self.lorentz * other.lorentz,
        }
    }

    pub fn inverse(&self) -> PoincareElement {
        let inv = self.lorentz.inverse();
        PoincareElement { translation: -inv.act(&self.translation), lorentz: inv }
    }
}

impl Mul for PoincareElement {
    type Output = PoincareElement;
    fn mul(self, rhs: PoincareElement) -> PoincareElement {
        self.compose(&rhs)
    }
}
