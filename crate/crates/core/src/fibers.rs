//! Fiberwise structure of the two bundle descriptions.
//!
//! A fiber vector is a pair `(p, v)` with `p` on a mass shell and `v` in the
//! representation space. In the perception description the fiber over `p`
//! carries the metric `Phi(+-p_/m)` and `Lambda` acts by `Phi(Lambda)`; in the
//! boosting description the metric is flat and `Lambda` acts through the
//! Wigner rotation `W(Lambda, p)`. The intertwiner [`alpha`] is `Phi(L(p)^-1)`.
//!
//! Perception vectors are normalized in `h`, boosting vectors in the flat
//! product. Functions that need a normalized input say which.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::{
    check_on_shell, kappa, standard_boost, standard_boost_unchecked, wigner_rotation_unchecked,
    PoincareElement, Shell, Sl2c,
};
use crate::minkowski::{pauli, tilde, untilde_checked, utilde, FourVector, Mat2, C64};
use crate::spin_rep::{j_operators, symmetric_power, SpinMatrix, SpinVector, SpinWeight};
use crate::{dirac, proca};

/// Tolerance used when a function requires a normalized input.
pub const NORM_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Description {
    Perception,
    Boosting,
}

impl Description {
    pub fn name(self) -> &'static str {
        match self {
            Description::Perception => "perception",
            Description::Boosting => "boosting",
        }
    }
}

/// Which extension of the little-group representation lives in the fibers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Representation {
    /// `Phi_s` on the symmetric power `V_s`.
    Spin(SpinWeight),
    /// `Phi(A) = diag(A, A^{dagger -1})` on bispinors.
    Dirac,
    /// `kappa(A)` on complexified Minkowski space.
    Proca,
}

impl Representation {
    pub fn dim(self) -> usize {
        match self {
            Representation::Spin(s) => s.dim(),
            Representation::Dirac | Representation::Proca => 4,
        }
    }

    /// The representation matrix of an `SL(2,C)` element.
    pub fn phi(self, a: &Sl2c) -> SpinMatrix {
        self.phi_matrix(a.matrix())
    }

    /// The same formula applied to any invertible 2x2 matrix. For the metric
    /// this is evaluated on the positive matrix `+-p_/m`.
    pub fn phi_matrix(self, a: &Mat2) -> SpinMatrix {
        match self {
            Representation::Spin(s) => symmetric_power(a, s),
            Representation::Dirac => dirac::phi_bispinor_matrix(a),
            Representation::Proca => proca::kappa_complex_matrix(a),
        }
    }

    /// The perception metric `Phi(+-p_/m)` over `p`.
    pub fn perception_metric(self, p: &FourVector, shell: Shell, m: f64) -> SpinMatrix {
        let scaled = utilde(p).into_inner() * C64::new(shell.sign() / m, 0.0);
        self.phi_matrix(&scaled)
    }
}

/// A vector in the fiber over an on-shell momentum.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberVector {
    pub p: FourVector,
    pub v: SpinVector,
    pub desc: Description,
    pub rep: Representation,
    pub shell: Shell,
    pub m: f64,
}

impl FiberVector {
    pub fn new(
        p: FourVector,
        v: SpinVector,
        desc: Description,
        rep: Representation,
        shell: Shell,
        m: f64,
    ) -> Result<Self> {
        check_on_shell(&p, shell, m)?;
        if v.len() != rep.dim() {
            return Err(Error::Dimension { expected: rep.dim(), got: v.len() });
        }
        Ok(Self { p, v, desc, rep, shell, m })
    }

    /// Spin-`s` fiber vector.
    pub fn spin(
        p: FourVector,
        v: SpinVector,
        desc: Description,
        s: SpinWeight,
        shell: Shell,
        m: f64,
    ) -> Result<Self> {
        Self::new(p, v, desc, Representation::Spin(s), shell, m)
    }

    fn same_fiber(&self, other: &FiberVector) -> Result<()> {
        let scale = self.p.0.amax().max(self.m);
        if self.rep != other.rep
            || self.shell != other.shell
            || self.p.max_abs_diff(&other.p) > 1e-12 * scale
        {
            return Err(Error::MismatchedBase);
        }
        Ok(())
    }

    /// The metric of this vector's own description.
    pub fn inner(&self, other: &FiberVector) -> Result<C64> {
        match self.desc {
            Description::Perception => h_perception(self, other),
            Description::Boosting => h_boosting(self, other),
        }
    }

    pub fn norm_squared(&self) -> f64 {
        self.inner(self).map(|z| z.re).unwrap_or(f64::NAN)
    }
}

fn require(desc: Description, a: &FiberVector) -> Result<()> {
    if a.desc != desc {
        return Err(Error::WrongDescription { expected: desc.name() });
    }
    Ok(())
}

/// `h(a, b) = v^dagger Phi(+-p_/m) w`.
pub fn h_perception(a: &FiberVector, b: &FiberVector) -> Result<C64> {
    require(Description::Perception, a)?;
    require(Description::Perception, b)?;
    a.same_fiber(b)?;
    let h = a.rep.perception_metric(&a.p, a.shell, a.m);
    Ok(a.v.dotc(&(h * &b.v)))
}

/// Flat product `v^dagger w` on the boosting fibers.
pub fn h_boosting(a: &FiberVector, b: &FiberVector) -> Result<C64> {
    require(Description::Boosting, a)?;
    require(Description::Boosting, b)?;
    a.same_fiber(b)?;
    Ok(a.v.dotc(&b.v))
}

/// `v -> Phi(L(p)^-1) v`, from perception to boosting.
pub fn alpha(a: &FiberVector) -> Result<FiberVector> {
    require(Description::Perception, a)?;
    let l = standard_boost(&a.p, a.shell, a.m)?;
    Ok(FiberVector { v: a.rep.phi(&l.inverse()) * &a.v, desc: Description::Boosting, ..a.clone() })
}

/// `v -> Phi(L(p)) v`, from boosting to perception.
pub fn alpha_inv(a: &FiberVector) -> Result<FiberVector> {
    require(Description::Boosting, a)?;
    let l = standard_boost(&a.p, a.shell, a.m)?;
    Ok(FiberVector { v: a.rep.phi(&l) * &a.v, desc: Description::Perception, ..a.clone() })
}

/// `e^{-i<q, a>}` for the translated base point `q`.
pub fn translation_phase(q: &FourVector, a: &FourVector) -> C64 {
    C64::from_polar(1.0, -q.dot(a))
}

/// Base point `Lambda p`, re-lifted onto the shell so that round-off never
/// pushes it off.
pub(crate) fn moved_base(lambda: &Sl2c, p: &FourVector, shell: Shell, m: f64) -> FourVector {
    shell.lift(m, &lambda.act(p).spatial())
}

/// Fiber matrix of the perception action, without the phase.
pub fn perception_fiber_map(rep: Representation, lambda: &Sl2c) -> SpinMatrix {
    rep.phi(lambda)
}

/// Fiber matrix of the boosting action at `p`, without the phase.
pub fn boosting_fiber_map(rep: Representation, lambda: &Sl2c, p: &FourVector, shell: Shell, m: f64) -> SpinMatrix {
    rep.phi(&wigner_rotation_unchecked(lambda, p, shell, m))
}

/// `(p, v) -> (Lambda p, e^{-i<Lambda p, a>} Phi(Lambda) v)`.
pub fn act_perception(g: &PoincareElement, a: &FiberVector) -> Result<FiberVector> {
    require(Description::Perception, a)?;
    check_on_shell(&a.p, a.shell, a.m)?;
    let q = moved_base(&g.lorentz, &a.p, a.shell, a.m);
    let v = perception_fiber_map(a.rep, &g.lorentz) * &a.v * translation_phase(&q, &g.translation);
    Ok(FiberVector { p: q, v, ..a.clone() })
}

/// `(p, v) -> (Lambda p, e^{-i<Lambda p, a>} Phi(W(Lambda, p)) v)`.
pub fn act_boosting(g: &PoincareElement, a: &FiberVector) -> Result<FiberVector> {
    require(Description::Boosting, a)?;
    check_on_shell(&a.p, a.shell, a.m)?;
    let q = moved_base(&g.lorentz, &a.p, a.shell, a.m);
    let w = boosting_fiber_map(a.rep, &g.lorentz, &a.p, a.shell, a.m);
    let v = w * &a.v * translation_phase(&q, &g.translation);
    Ok(FiberVector { p: q, v, ..a.clone() })
}

/// Dispatches on the description of `a`.
pub fn act(g: &PoincareElement, a: &FiberVector) -> Result<FiberVector> {
    match a.desc {
        Description::Perception => act_perception(g, a),
        Description::Boosting => act_boosting(g, a),
    }
}

fn qubit(chi: &SpinVector) -> Result<(C64, C64)> {
    if chi.len() != 2 {
        return Err(Error::Dimension { expected: 2, got: chi.len() });
    }
    Ok((chi[0], chi[1]))
}

fn outer2(a: C64, b: C64) -> Mat2 {
    Mat2::new(a * a.conj(), a * b.conj(), b * a.conj(), b * b.conj())
}

fn shell_of(p: &FourVector) -> Shell {
    if p.time() >= 0.0 {
        Shell::Plus
    } else {
        Shell::Minus
    }
}

/// Pauli-Lubansky vector of a perception qubit: `w~ = m chi chi^dagger -+ p~/2`.
///
/// `chi` must be normalized in the perception metric. On the plus shell at
/// rest a spin-up qubit gives `w = (0, 0, 0, m/2)`.
pub fn pl_vector_of_qubit(p: &FourVector, chi: &SpinVector, m: f64) -> Result<FourVector> {
    let shell = shell_of(p);
    check_on_shell(p, shell, m)?;
    let (a, b) = qubit(chi)?;
    let h = Representation::Spin(SpinWeight::HALF).perception_metric(p, shell, m);
    let norm = chi.dotc(&(h * chi)).re;
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { what: "h(chi, chi)", value: norm });
    }
    let w = outer2(a, b) * C64::new(m, 0.0) - tilde(p).into_inner() * C64::new(shell.sign() / 2.0, 0.0);
    untilde_checked(&w)
}

/// Newton-Wigner spin `s = (w - w^0 p / (m + p^0)) / m`, the rest-frame
/// image of `w` under `L(p)^-1` divided by `m`.
pub fn newton_wigner_spin(p: &FourVector, w: &FourVector, m: f64) -> Result<Vector3<f64>> {
    if !(m > 0.0) {
        return Err(Error::InvalidParameter(format!("mass must be positive, got {m}")));
    }
    if m + p.time() <= 1e-12 * m {
        return Err(Error::OffShell { shell: "plus", residual: (p.square() - m * m).abs() / (m * m) });
    }
    Ok((w.spatial() - p.spatial() * (w.time() / (m + p.time()))) / m)
}

/// Bloch vector `(chi^dagger tau^j chi)_j` of a flat-normalized qubit.
pub fn spin_direction(chi: &SpinVector) -> Result<Vector3<f64>> {
    let (a, b) = qubit(chi)?;
    let norm = chi.norm();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { what: "|chi|", value: norm });
    }
    let rho = outer2(a, b);
    let comp = |j: usize| (rho * pauli(j)).trace().re;
    Ok(Vector3::new(comp(1), comp(2), comp(3)))
}

/// Spin observable along `L(p) z`: `Phi_s(L(p)) J^3 Phi_s(L(p))^-1`.
///
/// Hermitian for the perception metric, with eigenvalues `-s, ..., s` and
/// eigenvectors `Phi_s(L(p)) e_k`.
pub fn spin_observable(s: SpinWeight, p: &FourVector, m: f64) -> Result<SpinMatrix> {
    let shell = shell_of(p);
    let l = standard_boost(p, shell, m)?;
    let [_, _, j3] = j_operators(s);
    Ok(symmetric_power(l.matrix(), s) * j3 * symmetric_power(l.inverse().matrix(), s))
}

/// `kappa(L(p))`, the standard boost as a Lorentz matrix.
pub fn boost_matrix(p: &FourVector, shell: Shell, m: f64) -> Result<nalgebra::Matrix4<f64>> {
    check_on_shell(p, shell, m)?;
    Ok(kappa(&standard_boost_unchecked(p, shell, m)).0)
}
