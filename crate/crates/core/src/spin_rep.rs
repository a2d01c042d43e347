//! Spin-`s` representations as the `2s`-fold symmetric power of `C^2`.
//!
//! `V_s` has the orthonormal basis `e_k = sqrt(C(2s, k)) u^k v^(2s-k)`,
//! `0 <= k <= 2s`, with `u = (1, 0)` and `v = (0, 1)`. Coordinates are
//! stored in descending `J^3` order: storage slot `i` holds the coefficient
//! of `e_(2s-i)`, whose `J^3` eigenvalue is `s - i`. With this ordering the
//! spin-1/2 representation is the identity map on 2x2 matrices and the
//! generators reduce to `tau / 2`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::Sl2c;
use crate::minkowski::{Mat2, C64};

pub type SpinMatrix = DMatrix<C64>;
pub type SpinVector = DVector<C64>;

/// Largest supported `2s`.
pub const MAX_TWICE_S: u32 = 60;

/// A spin value stored as the integer `2s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinWeight {
    twice_s: u32,
}

impl SpinWeight {
    pub fn new(twice_s: u32) -> Result<Self> {
        if twice_s > MAX_TWICE_S {
            return Err(Error::SpinTooLarge { twice_s, max: MAX_TWICE_S });
        }
        Ok(Self { twice_s })
    }

    pub const HALF: SpinWeight = SpinWeight { twice_s: 1 };
    pub const ONE: SpinWeight = SpinWeight { twice_s: 2 };

    pub fn twice_s(self) -> u32 {
        self.twice_s
    }

    pub fn s(self) -> f64 {
        self.twice_s as f64 / 2.0
    }

    pub fn dim(self) -> usize {
        self.twice_s as usize + 1
    }

    /// Storage slot of the basis vector `e_k`.
    pub fn slot(self, k: usize) -> usize {
        self.twice_s as usize - k
    }

    /// The basis vector `e_k` as a coordinate vector.
    pub fn basis_vector(self, k: usize) -> SpinVector {
        let mut v = SpinVector::zeros(self.dim());
        v[self.slot(k)] = C64::new(1.0, 0.0);
        v
    }
}

/// Exact binomial coefficients up to `n = MAX_TWICE_S`, by Pascal's rule.
fn binomial(n: usize, k: usize) -> f64 {
    use std::sync::OnceLock;
    static TABLE: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let n_max = MAX_TWICE_S as usize;
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut row = vec![1u64; n + 1];
            for k in 1..n {
                row[k] = rows[n - 1][k - 1] + rows[n - 1][k];
            }
            rows.push(row);
        }
        rows
    });
    if k > n {
        0.0
    } else {
        table[n][k] as f64
    }
}

/// `sqrt(C(n, k))`, the norm of the monomial `u^k v^(n-k)` times `e_k`.
fn basis_weight(n: usize, k: usize) -> f64 {
    binomial(n, k).sqrt()
}

/// Matrix of `Sigma^{2s}(A)` in the orthonormal basis.
///
/// `A = [[a, b], [c, d]]` sends `u -> a u + c v` and `v -> b u + d v`;
/// expanding `(a u + c v)^k (b u + d v)^(n-k)` binomially gives the image
/// of each monomial.
pub fn phi_s(a: &Sl2c, s: SpinWeight) -> SpinMatrix {
    symmetric_power(a.matrix(), s)
}

/// [`phi_s`] for any 2x2 matrix (the symmetric power is a functor on all of
/// `GL(2)`; the metric `Phi_s(p_/m)` uses this).
pub fn symmetric_power(mat: &Mat2, s: SpinWeight) -> SpinMatrix {
    let n = s.twice_s as usize;
    let (a, b, c, d) = (mat[(0, 0)], mat[(0, 1)], mat[(1, 0)], mat[(1, 1)]);
    let pow = |z: C64, e: usize| z.powu(e as u32);
    let mut out = SpinMatrix::zeros(n + 1, n + 1);
    for k in 0..=n {
        // Image of the monomial u^k v^(n-k): coefficients on u^kp v^(n-kp).
        let mut image = vec![C64::new(0.0, 0.0); n + 1];
        for j in 0..=k {
            let left = pow(a, j) * pow(c, k - j) * binomial(k, j);
            for l in 0..=(n - k) {
                let right = pow(b, l) * pow(d, n - k - l) * binomial(n - k, l);
                image[j + l] += left * right;
            }
        }
        for (kp, coeff) in image.into_iter().enumerate() {
            let scale = basis_weight(n, k) / basis_weight(n, kp);
            out[(s.slot(kp), s.slot(k))] = coeff * scale;
        }
    }
    out
}

/// The derived representation `(Phi_s)_*(B)` of `B` in `sl(2,C)`, acting as a
/// derivation on symmetric products.
pub fn phi_s_algebra(mat: &Mat2, s: SpinWeight) -> SpinMatrix {
    let n = s.twice_s as usize;
    let (alpha, beta, gamma, delta) = (mat[(0, 0)], mat[(0, 1)], mat[(1, 0)], mat[(1, 1)]);
    let mut out = SpinMatrix::zeros(n + 1, n + 1);
    for k in 0..=n {
        let col = s.slot(k);
        let kf = k as f64;
        let rest = (n - k) as f64;
        // D(u^k v^(n-k)) = (k alpha + (n-k) delta) u^k v^(n-k)
        //                + k gamma u^(k-1) v^(n-k+1) + (n-k) beta u^(k+1) v^(n-k-1)
        out[(col, col)] = alpha * kf + delta * rest;
        if k > 0 {
            let w = basis_weight(n, k) / basis_weight(n, k - 1);
            out[(s.slot(k - 1), col)] = gamma * kf * w;
        }
        if k < n {
            let w = basis_weight(n, k) / basis_weight(n, k + 1);
            out[(s.slot(k + 1), col)] = beta * rest * w;
        }
    }
    out
}

/// The Hermitian generators `(J^1, J^2, J^3)` on `V_s`.
///
/// Built from the monomial relations
/// `J^1 u^k v^(n-k) = k/2 u^(k-1) v^(n-k+1) + (n-k)/2 u^(k+1) v^(n-k-1)`,
/// `J^2 u^k v^(n-k) = ik/2 u^(k-1) v^(n-k+1) - i(n-k)/2 u^(k+1) v^(n-k-1)`,
/// `J^3 u^k v^(n-k) = (k - s) u^k v^(n-k)`,
/// rescaled to the orthonormal basis.
pub fn j_operators(s: SpinWeight) -> [SpinMatrix; 3] {
    let n = s.twice_s as usize;
    let dim = n + 1;
    let mut j1 = SpinMatrix::zeros(dim, dim);
    let mut j2 = SpinMatrix::zeros(dim, dim);
    let mut j3 = SpinMatrix::zeros(dim, dim);
    let i = C64::new(0.0, 1.0);
    for k in 0..=n {
        let col = s.slot(k);
        let kf = k as f64;
        let rest = (n - k) as f64;
        j3[(col, col)] = C64::new(kf - s.s(), 0.0);
        if k > 0 {
            let w = basis_weight(n, k) / basis_weight(n, k - 1);
            j1[(s.slot(k - 1), col)] = C64::new(kf / 2.0 * w, 0.0);
            j2[(s.slot(k - 1), col)] = i * (kf / 2.0 * w);
        }
        if k < n {
            let w = basis_weight(n, k) / basis_weight(n, k + 1);
            j1[(s.slot(k + 1), col)] = C64::new(rest / 2.0 * w, 0.0);
            j2[(s.slot(k + 1), col)] = -i * (rest / 2.0 * w);
        }
    }
    [j1, j2, j3]
}

/// Raising and lowering operators `J^1 +- i J^2`.
pub fn ladder_operators(s: SpinWeight) -> (SpinMatrix, SpinMatrix) {
    let [j1, j2, _] = j_operators(s);
    let i = C64::new(0.0, 1.0);
    (&j1 + &j2 * i, &j1 - &j2 * i)
}

/// Angular-momentum generator `J^j = -(i/2) tau^j` of `su(2)`.
pub fn rotation_generator(j: usize) -> Mat2 {
    crate::minkowski::pauli(j) * C64::new(0.0, -0.5)
}

/// Boost generator `K^j = tau^j / 2`.
pub fn boost_generator(j: usize) -> Mat2 {
    crate::minkowski::pauli(j) * C64::new(0.5, 0.0)
}

/// `exp(B)` for a 2x2 matrix, via `B = (tr B / 2) I + B0` and
/// `B0^2 = -det(B0) I`.
pub fn exp2(b: &Mat2) -> Mat2 {
    let half_trace = b.trace() / 2.0;
    let b0 = b - Mat2::identity() * half_trace;
    let delta = (-b0.determinant()).sqrt();
    let cosh = delta.cosh();
    // sinh(delta)/delta with its series near zero.
    let sinhc = if delta.norm() < 1e-4 {
        C64::new(1.0, 0.0) + delta * delta / 6.0 + delta.powu(4) / 120.0
    } else {
        delta.sinh() / delta
    };
    (Mat2::identity() * cosh + b0 * sinhc) * half_trace.exp()
}

/// Central finite-difference derivative of `t -> phi_s(exp(t B))` at zero,
/// compared with [`phi_s_algebra`]; returns the max-norm deviation.
pub fn generator_check(b: &Mat2, s: SpinWeight, step: f64) -> f64 {
    let numeric = finite_difference_generator(b, s, step);
    (numeric - phi_s_algebra(b, s)).camax()
}

pub fn finite_difference_generator(b: &Mat2, s: SpinWeight, step: f64) -> SpinMatrix {
    let plus = Sl2c::normalized(exp2(&(b * C64::new(step, 0.0)))).expect("exp is invertible");
    let minus = Sl2c::normalized(exp2(&(b * C64::new(-step, 0.0)))).expect("exp is invertible");
    (phi_s(&plus, s) - phi_s(&minus, s)) / C64::new(2.0 * step, 0.0)
}
