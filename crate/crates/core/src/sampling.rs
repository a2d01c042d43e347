//! Random group elements, momenta and fiber vectors for sweeps and
//! Monte-Carlo estimates.

use nalgebra::Vector3;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::lorentz::{Shell, Sl2c};
use crate::minkowski::{FourVector, Mat2, C64};
use crate::spin_rep::SpinVector;

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, sigma: f64) -> Vector3<f64> {
    Vector3::new(normal(rng), normal(rng), normal(rng)) * sigma
}

/// Haar rotation times a boost times a rotation, with Gaussian rapidity and
/// angle vectors of size `scale`.
pub fn random_sl2c<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Sl2c {
    let rot = gaussian_vector(rng, scale);
    let boost = gaussian_vector(rng, scale);
    let rapidity = boost.norm();
    let angle = rot.norm();
    let b = if rapidity > 0.0 { Sl2c::boost(&boost, rapidity).unwrap() } else { Sl2c::identity() };
    let r = if angle > 0.0 { Sl2c::rotation(&rot, angle).unwrap() } else { Sl2c::identity() };
    let r2 = random_su2(rng);
    r2 * b * r
}

/// Haar-random element of `SU(2)` from a uniform point on `S^3`.
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> Sl2c {
    let mut q = [0.0f64; 4];
    let mut norm = 0.0;
    while norm < 1e-8 {
        for x in q.iter_mut() {
            *x = normal(rng);
        }
        norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    }
    let [a, b, c, d] = q.map(|x| x / norm);
    let alpha = C64::new(a, b);
    let beta = C64::new(c, d);
    Sl2c::normalized(Mat2::new(alpha, -beta.conj(), beta, alpha.conj())).unwrap()
}

/// On-shell momentum with Gaussian three-momentum of width `scale`.
pub fn random_on_shell<R: Rng + ?Sized>(rng: &mut R, m: f64, shell: Shell, scale: f64) -> FourVector {
    shell.lift(m, &gaussian_vector(rng, scale))
}

pub fn random_four_vector<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> FourVector {
    FourVector::new(normal(rng), normal(rng), normal(rng), normal(rng)) * scale
}

/// Complex Gaussian vector of the given dimension (not normalized).
pub fn random_spin_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> SpinVector {
    SpinVector::from_fn(dim, |_, _| C64::new(normal(rng), normal(rng)))
}

/// Uniform unit vector in `C^dim`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> SpinVector {
    let v = random_spin_vector(rng, dim);
    let n = v.norm();
    v / C64::new(n, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid_group_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let a = random_sl2c(&mut rng, 1.0);
            assert!((a.matrix().determinant() - C64::new(1.0, 0.0)).norm() < 1e-10);
            assert!(random_su2(&mut rng).unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn momenta_lie_on_the_shell() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for shell in [Shell::Plus, Shell::Minus] {
            let p = random_on_shell(&mut rng, 1.5, shell, 2.0);
            assert!((p.square() - 2.25).abs() < 1e-12);
            assert_eq!(p.time().signum(), shell.sign());
        }
    }

    #[test]
    fn unit_vectors_have_unit_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert!((random_unit_vector(&mut rng, 5).norm() - 1.0).abs() < 1e-14);
    }
}
