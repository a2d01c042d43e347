//! Monte-Carlo estimate of the spin density of a boosted product state,
//! independent of the quadrature machinery.
//!
//! For `psi = f chi` boosted by `Lambda`, invariance of the measure gives
//! `tau = int |f(q)|^2 W(Lambda, q) chi chi^dagger W(Lambda, q)^dagger dmu(q)`.
//! Momenta are drawn from `|f|^2` by sampling the Gaussian and accepting
//! with probability `m / q^0`.

use nalgebra::{DMatrix, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::profile::MomentumProfile;
use crate::error::{Error, Result};
use crate::lorentz::{wigner_rotation_unchecked, Shell, Sl2c};
use crate::sampling::normal;
use crate::spin_rep::{phi_s, SpinMatrix, SpinVector, SpinWeight};
use crate::minkowski::C64;

const CHUNK: usize = 1 << 14;

/// Draws one accepted momentum.
fn draw<R: Rng>(rng: &mut R, m: f64, center: &Vector3<f64>, width: f64) -> Vector3<f64> {
    loop {
        let q = center + Vector3::new(normal(rng), normal(rng), normal(rng)) * width;
        let q0 = (m * m + q.norm_squared()).sqrt();
        if rng.gen::<f64>() * q0 < m {
            return q;
        }
    }
}

/// Estimate of `tau` from `samples` accepted momenta on the plus shell.
///
/// Chunks use independent ChaCha streams, so the result depends only on
/// `seed` and `samples`.
pub fn boosted_tau_mc(
    m: f64,
    profile: &MomentumProfile,
    chi: &SpinVector,
    lambda: &Sl2c,
    samples: usize,
    seed: u64,
) -> Result<SpinMatrix> {
    let (center, width) = match profile {
        MomentumProfile::Gaussian { center, width, .. } => (*center, *width),
        MomentumProfile::Custom { .. } => {
            return Err(Error::InvalidParameter("Monte-Carlo oracle needs a Gaussian profile".into()))
        }
    };
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let s = SpinWeight::new(chi.len() as u32 - 1)?;
    let dim = chi.len();
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<SpinMatrix> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let n = CHUNK.min(samples - c * CHUNK);
            let mut acc = DMatrix::zeros(dim, dim);
            for _ in 0..n {
                let q = Shell::Plus.lift(m, &draw(&mut rng, m, &center, width));
                let w = wigner_rotation_unchecked(lambda, &q, Shell::Plus, m);
                let v = phi_s(&w, s) * chi;
                acc.gerc(C64::new(1.0, 0.0), &v, &v, C64::new(1.0, 0.0));
            }
            acc
        })
        .collect();
    let total = partial.into_iter().fold(DMatrix::zeros(dim, dim), |a, b| a + b);
    Ok(total / C64::new(samples as f64, 0.0))
}
