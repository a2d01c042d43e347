//! Massive spin 1 on complexified Minkowski space: the range bundle
//! `R_p = {p_mu v^mu = 0}`, its metric `-v^dagger eta w`, and the helicity
//! polarization basis.
//!
//! The rest space `C^3` is the subspace `{v^0 = 0}` of `C^4`.

use nalgebra::{DMatrix, Matrix4, Vector4};

use crate::error::{Error, Result};
use crate::lorentz::{check_on_shell, kappa, standard_boost_unchecked, Shell};
use crate::minkowski::{eta, tilde, untilde_unchecked, utilde, FourVector, Mat2, C64};
use crate::spin_rep::SpinMatrix;

pub type CVector4 = Vector4<C64>;

/// Tolerance on the relative constraint residual.
pub const CONSTRAINT_TOL: f64 = 1e-9;

/// `X -> A X A^dagger` on Hermitian matrices, as a 4x4 matrix on `C^4`.
pub fn kappa_complex_matrix(a: &Mat2) -> SpinMatrix {
    let mut out = DMatrix::zeros(4, 4);
    for mu in 0..4 {
        let image = untilde_unchecked(&(a * tilde(&FourVector::basis(mu)).into_inner() * a.adjoint()));
        for nu in 0..4 {
            out[(nu, mu)] = C64::new(image.0[nu], 0.0);
        }
    }
    out
}

pub fn complexify(m: &Matrix4<f64>) -> Matrix4<C64> {
    m.map(|x| C64::new(x, 0.0))
}

/// `p_mu v^mu`.
pub fn contract(p: &FourVector, v: &CVector4) -> C64 {
    let low = p.lower();
    (0..4).map(|mu| v[mu] * low[mu]).sum()
}

/// `|p_mu v^mu| / (|p^0| ||v||)`.
pub fn constraint_residual(p: &FourVector, v: &CVector4) -> f64 {
    let n = v.norm();
    if n == 0.0 {
        return 0.0;
    }
    contract(p, v).norm() / (p.time().abs() * n)
}

pub fn check_in_range(p: &FourVector, v: &CVector4) -> Result<()> {
    let residual = constraint_residual(p, v);
    if residual > CONSTRAINT_TOL {
        return Err(Error::NotInRange { residual });
    }
    Ok(())
}

/// `kappa(L(p))`, mapping `{v^0 = 0}` onto `R_p`.
pub fn proca_boost(p: &FourVector, shell: Shell, m: f64) -> Result<Matrix4<f64>> {
    check_on_shell(p, shell, m)?;
    Ok(kappa(&standard_boost_unchecked(p, shell, m)).0)
}

/// Fiber metric `-v^dagger eta w` on `R_p`.
pub fn h_proca(p: &FourVector, v: &CVector4, w: &CVector4) -> Result<C64> {
    check_in_range(p, v)?;
    check_in_range(p, w)?;
    Ok(minus_eta_product(v, w))
}

/// `-v^dagger eta w` with no constraint check. It is indefinite on `C^4`.
pub fn minus_eta_product(v: &CVector4, w: &CVector4) -> C64 {
    -v.dotc(&(complexify(&eta()) * w))
}

/// Both expressions of the metric: `v^dagger kappa(+-p_/m) w` and `-v^dagger eta w`.
pub fn h_proca_forms(p: &FourVector, v: &CVector4, w: &CVector4, shell: Shell, m: f64) -> Result<[C64; 2]> {
    check_on_shell(p, shell, m)?;
    let scaled = utilde(p).into_inner() * C64::new(shell.sign() / m, 0.0);
    let k = Matrix4::from_iterator(kappa_complex_matrix(&scaled).iter().cloned());
    Ok([v.dotc(&(k * w)), h_proca(p, v, w)?])
}

/// Rest-frame `J^3` on `{v^0 = 0}`.
pub fn j3() -> Matrix4<C64> {
    let mut out = Matrix4::zeros();
    out[(1, 2)] = C64::new(0.0, -1.0);
    out[(2, 1)] = C64::new(0.0, 1.0);
    out
}

/// Rest-frame polarizations with helicity `1, 0, -1`:
/// `(1, i, 0)/sqrt 2`, `(0, 0, 1)`, `(i, 1, 0)/sqrt 2`.
pub fn rest_polarizations() -> [CVector4; 3] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    [
        CVector4::new(z, C64::new(r, 0.0), C64::new(0.0, r), z),
        CVector4::new(z, z, z, C64::new(1.0, 0.0)),
        CVector4::new(z, C64::new(0.0, r), C64::new(r, 0.0), z),
    ]
}

/// `kappa(L(p))` applied to [`rest_polarizations`].
pub fn polarization_basis(p: &FourVector, shell: Shell, m: f64) -> Result<[CVector4; 3]> {
    let l = complexify(&proca_boost(p, shell, m)?);
    Ok(rest_polarizations().map(|e| l * e))
}

/// Boosting-description product state `f(p) e` for a rest polarization
/// `e` with `e^0 = 0`.
pub fn product_state(
    m: f64,
    shell: Shell,
    profile: crate::wavepackets::MomentumProfile,
    polarization: &CVector4,
    rule: crate::wavepackets::QuadratureRule,
) -> Result<crate::wavepackets::SingleParticleState> {
    if polarization[0].norm() > CONSTRAINT_TOL * polarization.norm() {
        return Err(Error::NotInRange { residual: polarization[0].norm() });
    }
    crate::wavepackets::SingleParticleState::product(
        crate::fibers::Representation::Proca,
        shell,
        m,
        crate::fibers::Description::Boosting,
        profile,
        crate::wavepackets::Section::Constant(nalgebra::DVector::from_column_slice(polarization.as_slice())),
        rule,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Vector3;

    const M: f64 = 1.7;

    #[test]
    fn rest_boost_is_identity() {
        for shell in [Shell::Plus, Shell::Minus] {
            let b = proca_boost(&shell.rest_momentum(M), shell, M).unwrap();
            assert!((b - Matrix4::identity()).amax() < 1e-15);
        }
    }

    #[test]
    fn rest_polarizations_are_helicity_eigenvectors() {
        let [e1, e0, em1] = rest_polarizations();
        let j = j3();
        assert!((j * e1 - e1).norm() < 1e-15);
        assert!((j * e0).norm() < 1e-15);
        assert!((j * em1 + em1).norm() < 1e-15);
    }

    #[test]
    fn timelike_vectors_have_negative_norm() {
        let p = Shell::Plus.lift(M, &Vector3::new(0.2, 0.5, -0.4));
        let v = complexify(&Matrix4::identity()) * CVector4::from_iterator(p.0.iter().map(|&x| C64::new(x, 0.0)));
        assert!(minus_eta_product(&v, &v).re < 0.0);
        assert!(matches!(h_proca(&p, &v, &v), Err(Error::NotInRange { .. })));
    }
}
