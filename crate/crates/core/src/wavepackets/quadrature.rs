//! Tensor-product Gauss-Legendre quadrature for the invariant measure
//! `d^3p / |p^0|` on a mass shell.
//!
//! Each axis of the momentum box is split into equal panels carrying
//! `order` Gauss-Legendre nodes each. The tensor structure is kept so that
//! callers (position-space synthesis) can contract axis by axis.

use std::ops::Range;

use nalgebra::Vector3;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lorentz::Shell;
use crate::minkowski::FourVector;

/// Leaves of the summation tree are summed sequentially.
const LEAF: usize = 256;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre order must be positive");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, z);
            dp = d;
            let step = p / d;
            z -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, z);
        if d != 0.0 {
            dp = d;
        }
        let weight = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = weight;
        w[n - 1 - i] = weight;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

/// `(P_n(z), P_n'(z))` by the three-term recurrence.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Composite Gauss-Legendre rule on `[a, b]` with `panels` equal panels.
pub fn composite_rule(a: f64, b: f64, order: usize, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(order * panels);
    let mut weights = Vec::with_capacity(order * panels);
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(mid + 0.5 * h * xi);
            weights.push(0.5 * h * wi);
        }
    }
    (nodes, weights)
}

/// Summary of a quadrature for report provenance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadratureInfo {
    pub shell: Shell,
    pub m: f64,
    pub center: [f64; 3],
    pub half_widths: [f64; 3],
    pub order: usize,
    pub panels: [usize; 3],
    pub nodes: usize,
}

#[derive(Clone, Debug)]
pub struct Quadrature {
    m: f64,
    shell: Shell,
    center: Vector3<f64>,
    half_widths: Vector3<f64>,
    order: usize,
    panels: [usize; 3],
    axes: [Vec<f64>; 3],
    axis_weights: [Vec<f64>; 3],
    nodes: Vec<FourVector>,
    weights: Vec<f64>,
}

impl Quadrature {
    /// Cube `[center - P, center + P]^3` with `order` nodes per panel.
    pub fn new(m: f64, shell: Shell, center: Vector3<f64>, half_width: f64, order: usize, panels: usize) -> Result<Self> {
        Self::with_box(m, shell, center, Vector3::repeat(half_width), order, panels)
    }

    pub fn with_box(
        m: f64,
        shell: Shell,
        center: Vector3<f64>,
        half_widths: Vector3<f64>,
        order: usize,
        panels: usize,
    ) -> Result<Self> {
        Self::with_panels(m, shell, center, half_widths, order, [panels; 3])
    }

    /// Box with its own panel count along each axis.
    pub fn with_panels(
        m: f64,
        shell: Shell,
        center: Vector3<f64>,
        half_widths: Vector3<f64>,
        order: usize,
        panels: [usize; 3],
    ) -> Result<Self> {
        if !(m > 0.0) {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {m}")));
        }
        if half_widths.iter().any(|&h| !(h > 0.0) || !h.is_finite()) {
            return Err(Error::InvalidParameter(format!("box half-widths must be positive, got {half_widths:?}")));
        }
        if order < 2 || panels.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "need order >= 2 and at least one panel, got order {order}, panels {panels:?}"
            )));
        }
        let rule = |k: usize| composite_rule(center[k] - half_widths[k], center[k] + half_widths[k], order, panels[k]);
        let (x, wx) = rule(0);
        let (y, wy) = rule(1);
        let (z, wz) = rule(2);
        let n = x.len() * y.len() * z.len();
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                for (k, zk) in z.iter().enumerate() {
                    let p = shell.lift(m, &Vector3::new(*xi, *yj, *zk));
                    weights.push(wx[i] * wy[j] * wz[k] / p.time().abs());
                    nodes.push(p);
                }
            }
        }
        Ok(Self {
            m,
            shell,
            center,
            half_widths,
            order,
            panels,
            axes: [x, y, z],
            axis_weights: [wx, wy, wz],
            nodes,
            weights,
        })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn shell(&self) -> Shell {
        self.shell
    }

    pub fn center(&self) -> Vector3<f64> {
        self.center
    }

    pub fn half_widths(&self) -> Vector3<f64> {
        self.half_widths
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn panels(&self) -> [usize; 3] {
        self.panels
    }

    pub fn nodes(&self) -> &[FourVector] {
        &self.nodes
    }

    /// Weights for `d^3p / |p^0|`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node coordinates along one axis.
    pub fn axis(&self, k: usize) -> &[f64] {
        &self.axes[k]
    }

    /// Plain `dp_k` weights along one axis.
    pub fn axis_weights(&self, k: usize) -> &[f64] {
        &self.axis_weights[k]
    }

    /// Same box and panels with a different order, used for error estimates.
    pub fn with_order(&self, order: usize) -> Result<Self> {
        Self::with_panels(self.m, self.shell, self.center, self.half_widths, order, self.panels)
    }

    pub fn info(&self) -> QuadratureInfo {
        QuadratureInfo {
            shell: self.shell,
            m: self.m,
            center: self.center.into(),
            half_widths: self.half_widths.into(),
            order: self.order,
            panels: self.panels,
            nodes: self.len(),
        }
    }

    /// `sum_i w_i f(p_i)` for a real integrand.
    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(&FourVector) -> f64 + Sync,
    {
        tree_reduce(
            0..self.len(),
            &|r: Range<usize>| r.map(|i| self.weights[i] * f(&self.nodes[i])).sum::<f64>(),
            &|a, b| a + b,
        )
    }

    /// Deterministic parallel reduction over the nodes: `leaf` folds a
    /// contiguous index range, `combine` merges neighbours.
    pub fn reduce<T, L, C>(&self, leaf: L, combine: C) -> T
    where
        T: Send,
        L: Fn(&FourVector, f64, &mut Option<T>) + Sync,
        C: Fn(T, T) -> T + Sync,
    {
        tree_reduce(
            0..self.len(),
            &|r: Range<usize>| {
                let mut acc = None;
                for i in r {
                    leaf(&self.nodes[i], self.weights[i], &mut acc);
                }
                acc
            },
            &|a: Option<T>, b: Option<T>| match (a, b) {
                (Some(a), Some(b)) => Some(combine(a, b)),
                (a, None) => a,
                (None, b) => b,
            },
        )
        .expect("quadrature has at least one node")
    }
}

/// Fixed-shape binary tree over `range`, so the result does not depend on
/// thread scheduling.
pub fn tree_reduce<T, L, C>(range: Range<usize>, leaf: &L, combine: &C) -> T
where
    T: Send,
    L: Fn(Range<usize>) -> T + Sync,
    C: Fn(T, T) -> T + Sync,
{
    if range.len() <= LEAF {
        return leaf(range);
    }
    let mid = range.start + range.len() / 2;
    let (a, b) = rayon::join(
        || tree_reduce(range.start..mid, leaf, combine),
        || tree_reduce(mid..range.end, leaf, combine),
    );
    combine(a, b)
}

/// Pairwise sum of a slice.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    tree_reduce(0..values.len(), &|r: Range<usize>| values[r].iter().sum::<f64>(), &|a, b| a + b)
}

/// Evaluates `f` at every node in parallel, preserving node order.
pub fn par_map<T, F>(nodes: &[FourVector], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&FourVector) -> T + Sync + Send,
{
    nodes.par_iter().map(f).collect()
}
