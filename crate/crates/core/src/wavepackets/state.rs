//! Single-particle states as closures on the mass shell.

use std::fmt;
use std::sync::Arc;

use nalgebra::Vector3;

use super::profile::MomentumProfile;
use super::quadrature::Quadrature;
use crate::error::{Error, Result};
use crate::fibers::{translation_phase, Description, Representation};
use crate::lorentz::{standard_boost_unchecked, wigner_rotation_unchecked, PoincareElement, Shell, Sl2c};
use crate::minkowski::{FourVector, C64};
use crate::spin_rep::SpinVector;

pub type SectionFn = Arc<dyn Fn(&FourVector) -> SpinVector + Send + Sync>;

/// Fiber part of a product state `f(p) chi(p)`.
#[derive(Clone)]
pub enum Section {
    Constant(SpinVector),
    Function(SectionFn),
}

impl Section {
    fn into_fn(self) -> SectionFn {
        match self {
            Section::Constant(v) => Arc::new(move |_| v.clone()),
            Section::Function(f) => f,
        }
    }
}

/// Composite Gauss-Legendre rule and box size, in units of the profile width.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadratureRule {
    pub order: usize,
    pub panels: usize,
    pub box_widths: f64,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self { order: 16, panels: 4, box_widths: 7.0 }
    }
}

impl QuadratureRule {
    pub fn new(order: usize, panels: usize, box_widths: f64) -> Self {
        Self { order, panels, box_widths }
    }

    /// Rule on the box around `profile`.
    pub fn build(&self, m: f64, shell: Shell, profile: &MomentumProfile) -> Result<Quadrature> {
        let half = self.box_widths * profile.width();
        Quadrature::new(m, shell, profile.center(), half, self.order, self.panels)
    }
}

/// A wave function `p -> psi(p)` in one of the two descriptions, together
/// with the quadrature that covers its support.
#[derive(Clone)]
pub struct SingleParticleState {
    rep: Representation,
    shell: Shell,
    m: f64,
    desc: Description,
    eval: SectionFn,
    quadrature: Quadrature,
}

impl fmt::Debug for SingleParticleState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SingleParticleState")
            .field("rep", &self.rep)
            .field("shell", &self.shell)
            .field("m", &self.m)
            .field("desc", &self.desc)
            .field("quadrature", &self.quadrature.info())
            .finish()
    }
}

impl SingleParticleState {
    /// `p -> f(p) chi(p)`.
    pub fn product(
        rep: Representation,
        shell: Shell,
        m: f64,
        desc: Description,
        profile: MomentumProfile,
        section: Section,
        rule: QuadratureRule,
    ) -> Result<Self> {
        if let Section::Constant(v) = &section {
            if v.len() != rep.dim() {
                return Err(Error::Dimension { expected: rep.dim(), got: v.len() });
            }
        }
        let quadrature = rule.build(m, shell, &profile)?;
        let chi = section.into_fn();
        let eval: SectionFn = Arc::new(move |p: &FourVector| chi(p) * profile.eval(&p.spatial()));
        Ok(Self { rep, shell, m, desc, eval, quadrature })
    }

    /// Wraps an arbitrary closure.
    pub fn from_fn(
        rep: Representation,
        shell: Shell,
        m: f64,
        desc: Description,
        eval: SectionFn,
        quadrature: Quadrature,
    ) -> Self {
        Self { rep, shell, m, desc, eval, quadrature }
    }

    pub fn rep(&self) -> Representation {
        self.rep
    }

    pub fn shell(&self) -> Shell {
        self.shell
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn desc(&self) -> Description {
        self.desc
    }

    pub fn quadrature(&self) -> &Quadrature {
        &self.quadrature
    }

    pub fn eval(&self, p: &FourVector) -> SpinVector {
        (self.eval)(p)
    }

    pub fn eval_fn(&self) -> SectionFn {
        self.eval.clone()
    }

    /// Same state integrated with a different quadrature.
    pub fn with_quadrature(&self, quadrature: Quadrature) -> Self {
        Self { quadrature, ..self.clone() }
    }

    /// Fiber metric of the state's own description at `p`.
    pub fn pointwise_norm_squared(&self, p: &FourVector) -> f64 {
        let v = self.eval(p);
        match self.desc {
            Description::Boosting => v.norm_squared(),
            Description::Perception => {
                let h = self.rep.perception_metric(p, self.shell, self.m);
                v.dotc(&(h * &v)).re
            }
        }
    }

    /// `int h(psi, psi) dmu`.
    pub fn norm_squared(&self) -> f64 {
        self.quadrature.integrate(|p| self.pointwise_norm_squared(p))
    }

    pub fn scaled(&self, c: C64) -> Self {
        let eval = self.eval.clone();
        Self { eval: Arc::new(move |p| eval(p) * c), ..self.clone() }
    }

    /// `(U(a, Lambda) psi)(p) = e^{-i<p,a>} M(Lambda, q) psi(q)` with
    /// `q = Lambda^-1 p`, where `M` is `Phi(Lambda)` in the perception
    /// description and `Phi(W(Lambda, q))` in the boosting one.
    ///
    /// The quadrature box is enlarged to contain the image of the old one.
    pub fn apply_unitary(&self, g: &PoincareElement) -> Result<Self> {
        let lambda = g.lorentz;
        let inv = lambda.inverse();
        let a = g.translation;
        let (rep, shell, m) = (self.rep, self.shell, self.m);
        let old = self.eval.clone();
        let eval: SectionFn = match self.desc {
            Description::Perception => {
                let phi = rep.phi(&lambda);
                Arc::new(move |p: &FourVector| {
                    let q = shell.lift(m, &inv.act(p).spatial());
                    &phi * old(&q) * translation_phase(p, &a)
                })
            }
            Description::Boosting => Arc::new(move |p: &FourVector| {
                let q = shell.lift(m, &inv.act(p).spatial());
                let w = wigner_rotation_unchecked(&lambda, &q, shell, m);
                rep.phi(&w) * old(&q) * translation_phase(p, &a)
            }),
        };
        let quadrature = image_quadrature(&self.quadrature, &lambda)?;
        Ok(Self { eval, quadrature, ..self.clone() })
    }

    /// Pointwise intertwiner `Phi(L(p)^-1)`, perception to boosting.
    pub fn to_boosting(&self) -> Result<Self> {
        if self.desc != Description::Perception {
            return Err(Error::WrongDescription { expected: "perception" });
        }
        let (rep, shell, m) = (self.rep, self.shell, self.m);
        let old = self.eval.clone();
        let eval: SectionFn =
            Arc::new(move |p| rep.phi(&standard_boost_unchecked(p, shell, m).inverse()) * old(p));
        Ok(Self { eval, desc: Description::Boosting, ..self.clone() })
    }

    /// Pointwise `Phi(L(p))`, boosting to perception.
    pub fn to_perception(&self) -> Result<Self> {
        if self.desc != Description::Boosting {
            return Err(Error::WrongDescription { expected: "boosting" });
        }
        let (rep, shell, m) = (self.rep, self.shell, self.m);
        let old = self.eval.clone();
        let eval: SectionFn = Arc::new(move |p| rep.phi(&standard_boost_unchecked(p, shell, m)) * old(p));
        Ok(Self { eval, desc: Description::Perception, ..self.clone() })
    }
}

/// Latitude circles sampled when bounding the image of an ellipsoid.
const IMAGE_SAMPLES: usize = 24;

/// Quadrature with the same order on the bounding box of the image of the
/// old box's inscribed ellipsoid. Panels are added so that panel widths do
/// not grow.
pub fn image_quadrature(q: &Quadrature, lambda: &Sl2c) -> Result<Quadrature> {
    let (center, half) = image_box(q.center(), q.half_widths(), q.m(), q.shell(), lambda);
    let old = q.half_widths();
    let panels = std::array::from_fn(|k| {
        let width = old[k] / q.panels()[k] as f64;
        (half[k] / width).ceil().max(1.0) as usize
    });
    Quadrature::with_panels(q.m(), q.shell(), center, half, q.order(), panels)
}

/// Bounding box of the image under `Lambda` of the ellipsoid inscribed in a
/// momentum box, from a latitude-longitude lattice, padded by 5%.
pub fn image_box(
    center: Vector3<f64>,
    half: Vector3<f64>,
    m: f64,
    shell: Shell,
    lambda: &Sl2c,
) -> (Vector3<f64>, Vector3<f64>) {
    let n = IMAGE_SAMPLES;
    let mut lo = Vector3::repeat(f64::INFINITY);
    let mut hi = Vector3::repeat(f64::NEG_INFINITY);
    for i in 0..=n {
        let theta = std::f64::consts::PI * i as f64 / n as f64;
        for j in 0..2 * n {
            let phi = std::f64::consts::PI * j as f64 / n as f64;
            let u = Vector3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos());
            let p = shell.lift(m, &(center + half.component_mul(&u)));
            let image = lambda.act(&p).spatial();
            lo = lo.inf(&image);
            hi = hi.sup(&image);
        }
    }
    let mid = (lo + hi) / 2.0;
    let half = (hi - lo) / 2.0 * 1.05;
    (mid, half)
}
