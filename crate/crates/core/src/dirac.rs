//! Bispinors: Weyl-basis gamma matrices, the extension
//! `Phi(A) = diag(A, A^{dagger -1})`, the range bundles
//! `R^+- = {p_mu gamma^mu z = m z}`, the rest spaces `V^+- = {(a, +-a)}` and
//! the Foldy-Wouthuysen transform between them.

use nalgebra::{DMatrix, Matrix4, Vector3, Vector4};

use crate::error::{Error, Result};
use crate::lorentz::{check_on_shell, standard_boost_unchecked, Shell, Sl2c};
use crate::minkowski::{pauli, tilde, untilde_checked, utilde, FourVector, Mat2, C64};
use crate::spin_rep::SpinMatrix;

pub type Mat4 = Matrix4<C64>;
pub type Spinor4 = Vector4<C64>;

/// Relative tolerance for membership in `R^+-`.
pub const RANGE_TOL: f64 = 1e-9;
/// Absolute tolerance for membership in `V^+-`.
pub const REST_TOL: f64 = 1e-12;

fn blocks(a: &Mat2, b: &Mat2, c: &Mat2, d: &Mat2) -> Mat4 {
    let mut out = Mat4::zeros();
    out.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    out.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    out.fixed_view_mut::<2, 2>(2, 0).copy_from(c);
    out.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    out
}

/// `gamma^mu = [[0, tau_mu], [tau^mu, 0]]`.
pub fn gamma(mu: usize) -> Mat4 {
    let upper = pauli(mu);
    let lower = if mu == 0 { upper } else { -upper };
    blocks(&Mat2::zeros(), &lower, &upper, &Mat2::zeros())
}

/// `p_mu gamma^mu = [[0, p~], [p_, 0]]`.
pub fn slash(p: &FourVector) -> Mat4 {
    blocks(&Mat2::zeros(), tilde(p).matrix(), utilde(p).matrix(), &Mat2::zeros())
}

/// `p . gamma = p^j gamma^j` for the spatial part only.
pub fn spatial_slash(p: &Vector3<f64>) -> Mat4 {
    (0..3).fold(Mat4::zeros(), |acc, j| acc + gamma(j + 1) * C64::new(p[j], 0.0))
}

/// `diag(A, A^{dagger -1})` for any invertible `A`.
pub fn phi_bispinor_matrix(a: &Mat2) -> SpinMatrix {
    let inv = a.adjoint().try_inverse().expect("bispinor extension of a singular matrix");
    let m = blocks(a, &Mat2::zeros(), &Mat2::zeros(), &inv);
    DMatrix::from_iterator(4, 4, m.iter().cloned())
}

pub fn phi_bispinor(a: &Sl2c) -> Mat4 {
    let m = a.matrix();
    let inv = Sl2c::from_matrix_unchecked(m.adjoint()).inverse();
    blocks(m, &Mat2::zeros(), &Mat2::zeros(), inv.matrix())
}

/// `u^+-(chi) = (chi, +-chi)/sqrt 2`, the isometry `C^2 -> V^+-`.
pub fn embed_rest_qubit(chi: &[C64; 2], shell: Shell) -> Spinor4 {
    let r = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let s = C64::new(shell.sign(), 0.0);
    Spinor4::new(chi[0] * r, chi[1] * r, chi[0] * s * r, chi[1] * s * r)
}

/// `||p_mu gamma^mu z - m z|| / (m ||z||)`.
pub fn range_residual(p: &FourVector, z: &Spinor4, m: f64) -> f64 {
    let n = z.norm();
    if n == 0.0 {
        return 0.0;
    }
    (slash(p) * z - z * C64::new(m, 0.0)).norm() / (m * n)
}

/// `||(z1, z2) -+ (z3, z4)||`.
pub fn rest_residual(z: &Spinor4, shell: Shell) -> f64 {
    let s = C64::new(shell.sign(), 0.0);
    ((z[0] - s * z[2]).norm_sqr() + (z[1] - s * z[3]).norm_sqr()).sqrt()
}

pub fn check_in_range(p: &FourVector, z: &Spinor4, m: f64) -> Result<()> {
    let residual = range_residual(p, z, m);
    if residual > RANGE_TOL {
        return Err(Error::NotInRange { residual });
    }
    Ok(())
}

pub fn check_in_rest_space(z: &Spinor4, shell: Shell) -> Result<()> {
    let residual = rest_residual(z, shell) / z.norm().max(1.0);
    if residual > REST_TOL {
        return Err(Error::NotInRange { residual });
    }
    Ok(())
}

/// Fiber metric on `R^+-`: `v^dagger Phi(+-p_/m) w`.
pub fn h_dirac(p: &FourVector, v: &Spinor4, w: &Spinor4, shell: Shell, m: f64) -> Result<C64> {
    Ok(h_dirac_forms(p, v, w, shell, m)?[0])
}

/// The three equal expressions of the metric:
/// `v^dagger Phi(+-p_/m) w`, `+-v^dagger gamma^0 w` and `(m/|p^0|) v^dagger w`.
pub fn h_dirac_forms(p: &FourVector, v: &Spinor4, w: &Spinor4, shell: Shell, m: f64) -> Result<[C64; 3]> {
    check_on_shell(p, shell, m)?;
    check_in_range(p, v, m)?;
    check_in_range(p, w, m)?;
    let sign = shell.sign();
    let metric = phi_bispinor_matrix(&(utilde(p).into_inner() * C64::new(sign / m, 0.0)));
    let metric = Mat4::from_iterator(metric.iter().cloned());
    Ok([
        v.dotc(&(metric * w)),
        v.dotc(&(gamma(0) * w)) * sign,
        v.dotc(w) * (m / p.time().abs()),
    ])
}

/// Foldy-Wouthuysen transform `(m I + p_mu gamma^mu) z / sqrt(2m(m +- p^0))`,
/// equal to `Phi(L(p)) z` on `V^+-`.
pub fn foldy_wouthuysen(p: &FourVector, z: &Spinor4, shell: Shell, m: f64) -> Result<Spinor4> {
    check_on_shell(p, shell, m)?;
    check_in_rest_space(z, shell)?;
    Ok(fw_unchecked(p, z, shell, m))
}

pub(crate) fn fw_unchecked(p: &FourVector, z: &Spinor4, shell: Shell, m: f64) -> Spinor4 {
    let norm = (2.0 * m * (m + shell.sign() * p.time())).sqrt();
    (slash(p) * z + z * C64::new(m, 0.0)) / C64::new(norm, 0.0)
}

/// The second closed form `((m +- p^0) I - p . gamma) z / sqrt(2m(m +- p^0))`.
pub fn foldy_wouthuysen_spatial(p: &FourVector, z: &Spinor4, shell: Shell, m: f64) -> Result<Spinor4> {
    check_on_shell(p, shell, m)?;
    check_in_rest_space(z, shell)?;
    let mp = m + shell.sign() * p.time();
    let norm = (2.0 * m * mp).sqrt();
    Ok((z * C64::new(mp, 0.0) - spatial_slash(&p.spatial()) * z) / C64::new(norm, 0.0))
}

/// Inverse transform `Phi(L(p))^-1`, from `R^+-` back to `V^+-`.
pub fn foldy_wouthuysen_inverse(p: &FourVector, z: &Spinor4, shell: Shell, m: f64) -> Result<Spinor4> {
    check_on_shell(p, shell, m)?;
    check_in_range(p, z, m)?;
    Ok(phi_bispinor(&standard_boost_unchecked(p, shell, m).inverse()) * z)
}

fn upper_left(z: &Spinor4) -> Mat2 {
    Mat2::new(
        z[0] * z[0].conj(),
        z[0] * z[1].conj(),
        z[1] * z[0].conj(),
        z[1] * z[1].conj(),
    )
}

/// Spin direction of a flat-normalized `c in V^+-`: `tau . n = 4 (c c^dagger)_11 - I`.
pub fn bispinor_spin_direction(c: &Spinor4) -> Result<Vector3<f64>> {
    let norm = c.norm();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    if (norm - 1.0).abs() > crate::fibers::NORM_TOL {
        return Err(Error::NotNormalized { what: "|c|", value: norm });
    }
    let t = upper_left(c) * C64::new(4.0, 0.0) - Mat2::identity();
    let comp = |j: usize| (t * pauli(j)).trace().re / 2.0;
    Ok(Vector3::new(comp(1), comp(2), comp(3)))
}

/// Pauli-Lubansky vector of an `h`-normalized `d in R^+-`:
/// `w~ = 2m (d d^dagger)_11 -+ p~/2`.
pub fn bispinor_pl_vector(p: &FourVector, d: &Spinor4, shell: Shell, m: f64) -> Result<FourVector> {
    if d.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let h = h_dirac(p, d, d, shell, m)?.re;
    if (h - 1.0).abs() > crate::fibers::NORM_TOL {
        return Err(Error::NotNormalized { what: "h(d, d)", value: h });
    }
    let w = upper_left(d) * C64::new(2.0 * m, 0.0) - tilde(p).into_inner() * C64::new(shell.sign() / 2.0, 0.0);
    untilde_checked(&w)
}

/// `(m I + p_mu gamma^mu) / 2m`, the projector onto `R^+-` over `p`.
pub fn range_projector(p: &FourVector, m: f64) -> Mat4 {
    (slash(p) + Mat4::identity() * C64::new(m, 0.0)) / C64::new(2.0 * m, 0.0)
}

/// Boosting-description product state `f(p) u^+-(chi)`.
pub fn product_state(
    m: f64,
    shell: Shell,
    profile: crate::wavepackets::MomentumProfile,
    chi: &[C64; 2],
    rule: crate::wavepackets::QuadratureRule,
) -> Result<crate::wavepackets::SingleParticleState> {
    let z = embed_rest_qubit(chi, shell);
    crate::wavepackets::SingleParticleState::product(
        crate::fibers::Representation::Dirac,
        shell,
        m,
        crate::fibers::Description::Boosting,
        profile,
        crate::wavepackets::Section::Constant(nalgebra::DVector::from_column_slice(z.as_slice())),
        rule,
    )
}
