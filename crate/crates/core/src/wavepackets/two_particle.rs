//! Two-particle states as short sums of products, their 4x4 (or `d^2`)
//! spin density matrix, entanglement entropy and concurrence.

use nalgebra::{DMatrix, DVector};

use super::reduced::{entropy_bits, hermitian_eigenvalues, hermitian_part, outer_integral};
use super::state::SingleParticleState;
use crate::error::{Error, Result};
use crate::fibers::Description;
use crate::lorentz::PoincareElement;
use crate::minkowski::C64;
use crate::spin_rep::SpinMatrix;
use crate::wavepackets::quadrature::Quadrature;

pub const MAX_TERMS: usize = 4;

/// `Psi(p, q) = sum_k c_k psi_k(p) (x) phi_k(q)`.
#[derive(Clone, Debug)]
pub struct TwoParticleState {
    coefficients: Vec<C64>,
    first: Vec<SingleParticleState>,
    second: Vec<SingleParticleState>,
}

impl TwoParticleState {
    pub fn new(terms: Vec<(C64, SingleParticleState, SingleParticleState)>) -> Result<Self> {
        if terms.is_empty() || terms.len() > MAX_TERMS {
            return Err(Error::InvalidParameter(format!(
                "two-particle states take 1 to {MAX_TERMS} product terms, got {}",
                terms.len()
            )));
        }
        let (r1, r2, desc) = (terms[0].1.rep(), terms[0].2.rep(), terms[0].1.desc());
        for (_, a, b) in &terms {
            if a.rep() != r1 || b.rep() != r2 {
                return Err(Error::Dimension { expected: r1.dim(), got: a.rep().dim() });
            }
            if a.desc() != desc || b.desc() != desc {
                return Err(Error::WrongDescription { expected: desc.name() });
            }
        }
        let mut coefficients = Vec::new();
        let mut first = Vec::new();
        let mut second = Vec::new();
        for (c, a, b) in terms {
            coefficients.push(c);
            first.push(a);
            second.push(b);
        }
        Ok(Self { coefficients, first, second })
    }

    pub fn terms(&self) -> usize {
        self.coefficients.len()
    }

    pub fn desc(&self) -> Description {
        self.first[0].desc()
    }

    /// Fiber dimensions of the two particles.
    pub fn dims(&self) -> (usize, usize) {
        (self.first[0].rep().dim(), self.second[0].rep().dim())
    }

    /// `U(g) (x) U(g)`.
    pub fn apply_unitary(&self, g: &PoincareElement) -> Result<Self> {
        Ok(Self {
            coefficients: self.coefficients.clone(),
            first: self.first.iter().map(|s| s.apply_unitary(g)).collect::<Result<_>>()?,
            second: self.second.iter().map(|s| s.apply_unitary(g)).collect::<Result<_>>()?,
        })
    }

    /// `int int Psi Psi^dagger dmu dmu`, not normalized.
    pub fn spin_density(&self) -> Result<SpinMatrix> {
        if self.desc() != Description::Boosting {
            return Err(Error::WrongDescription { expected: "boosting" });
        }
        let (d1, d2) = self.dims();
        let a = gram_blocks(&self.first)?;
        let b = gram_blocks(&self.second)?;
        let n = self.terms();
        let mut tau = DMatrix::zeros(d1 * d2, d1 * d2);
        for k in 0..n {
            for l in 0..n {
                let c = self.coefficients[k] * self.coefficients[l].conj();
                let akl = a.view((k * d1, l * d1), (d1, d1));
                let bkl = b.view((k * d2, l * d2), (d2, d2));
                tau += akl.kronecker(&bkl) * c;
            }
        }
        Ok(tau)
    }

    pub fn norm_squared(&self) -> Result<f64> {
        Ok(self.spin_density()?.trace().re)
    }
}

/// Blocks `A_kl = int psi_k psi_l^dagger dmu` from one stacked integral on
/// a box covering every factor.
fn gram_blocks(states: &[SingleParticleState]) -> Result<SpinMatrix> {
    let q = covering_quadrature(states)?;
    let d = states[0].rep().dim();
    let n = states.len();
    Ok(outer_integral(&q, n * d, |p| {
        let mut v = DVector::zeros(n * d);
        for (k, s) in states.iter().enumerate() {
            v.rows_mut(k * d, d).copy_from(&s.eval(p));
        }
        v
    }))
}

fn covering_quadrature(states: &[SingleParticleState]) -> Result<Quadrature> {
    let q0 = states[0].quadrature();
    let same = states.iter().all(|s| {
        let q = s.quadrature();
        q.center() == q0.center()
            && q.half_widths() == q0.half_widths()
            && q.order() == q0.order()
            && q.panels() == q0.panels()
    });
    if same {
        return Ok(q0.clone());
    }
    let mut lo = q0.center() - q0.half_widths();
    let mut hi = q0.center() + q0.half_widths();
    let mut order = q0.order();
    let mut panel_width = f64::INFINITY;
    for s in states {
        let q = s.quadrature();
        lo = lo.inf(&(q.center() - q.half_widths()));
        hi = hi.sup(&(q.center() + q.half_widths()));
        order = order.max(q.order());
        for k in 0..3 {
            panel_width = panel_width.min(2.0 * q.half_widths()[k] / q.panels()[k] as f64);
        }
    }
    let panels = std::array::from_fn(|k| ((hi[k] - lo[k]) / panel_width).ceil().max(1.0) as usize);
    Quadrature::with_panels(q0.m(), q0.shell(), (lo + hi) / 2.0, (hi - lo) / 2.0, order, panels)
}

/// Traces out the second factor of a `d1 d2` square matrix.
pub fn partial_trace_second(rho: &SpinMatrix, d1: usize, d2: usize) -> SpinMatrix {
    DMatrix::from_fn(d1, d1, |i, j| (0..d2).map(|k| rho[(i * d2 + k, j * d2 + k)]).sum())
}

/// Traces out the first factor.
pub fn partial_trace_first(rho: &SpinMatrix, d1: usize, d2: usize) -> SpinMatrix {
    DMatrix::from_fn(d2, d2, |i, j| (0..d1).map(|k| rho[(k * d2 + i, k * d2 + j)]).sum())
}

/// `S(Tr_2 rho)` in bits after trace normalization.
pub fn entanglement_entropy(rho: &SpinMatrix, d1: usize, d2: usize) -> Result<f64> {
    let t = rho.trace().re;
    let reduced = partial_trace_second(rho, d1, d2) / C64::new(t, 0.0);
    entropy_bits(&reduced)
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)` of a two-qubit density
/// matrix, where `l_i` are the square roots of the eigenvalues of
/// `rho (Y (x) Y) rho* (Y (x) Y)` in decreasing order. `rho` is normalized
/// by its trace first.
pub fn concurrence(rho: &SpinMatrix) -> Result<f64> {
    if rho.nrows() != 4 || rho.ncols() != 4 {
        return Err(Error::NotQubits);
    }
    let rho = hermitian_part(rho) / C64::new(rho.trace().re, 0.0);
    let i = C64::new(0.0, 1.0);
    let y = DMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), -i, i, C64::new(0.0, 0.0)]);
    let yy = y.kronecker(&y);
    let flipped = &yy * rho.map(|z| z.conj()) * &yy;
    // l_i^2 are the eigenvalues of sqrt(rho) flipped sqrt(rho), which is Hermitian.
    let root = psd_sqrt(&rho);
    let h = &root * flipped * &root;
    let mut l: Vec<f64> = hermitian_eigenvalues(&h).into_iter().map(|x| x.max(0.0).sqrt()).collect();
    l.sort_by(|a, b| b.total_cmp(a));
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Square root of a positive semidefinite Hermitian matrix.
pub fn psd_sqrt(m: &SpinMatrix) -> SpinMatrix {
    let eig = hermitian_part(m).symmetric_eigen();
    let d = eig.eigenvalues.map(|x| C64::new(x.max(0.0).sqrt(), 0.0));
    &eig.eigenvectors * DMatrix::from_diagonal(&d) * eig.eigenvectors.adjoint()
}
