//! Fourier synthesis of perception-description Dirac and Proca states onto
//! spacetime grids, and finite-difference residuals of their field equations.
//!
//! `psi(t, x) = (2 pi)^{-3/2} int dmu(p) w(p) e^{-i p.x} phi(p)` with
//! `w = sqrt m` for Dirac and `w = sqrt |p^0|` for Proca. The momentum
//! integral is the state's tensor-product quadrature, contracted one axis at
//! a time, so the field is a finite sum of exact plane waves and the
//! residuals below measure finite-difference truncation only.

use std::io::Write;

use nalgebra::{Vector3, Vector4};
use rayon::prelude::*;
use serde::Serialize;

use crate::dirac::gamma;
use crate::error::{Error, Result};
use crate::fibers::{Description, Representation};
use crate::minkowski::C64;
use crate::wavepackets::quadrature::pairwise_sum;
use crate::wavepackets::SingleParticleState;

/// Boundary-to-peak amplitude ratio above which a field carries a warning.
pub const COVERAGE_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Dirac,
    Proca,
}

/// `n^3` points with spacing `h` centered on `center`, at each time slice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub n: usize,
    pub spacing: f64,
    pub center: [f64; 3],
    pub t_slices: Vec<f64>,
}

impl GridSpec {
    /// Grid of `n` points per axis covering `[c - L/2, c + L/2)` per axis.
    pub fn cube(n: usize, extent: f64, center: Vector3<f64>, t_slices: Vec<f64>) -> Self {
        Self { n, spacing: extent / n as f64, center: center.into(), t_slices }
    }

    /// Coordinate of index `i` along axis `k`.
    pub fn coord(&self, k: usize, i: usize) -> f64 {
        self.center[k] + (i as f64 - (self.n as f64 - 1.0) / 2.0) * self.spacing
    }

    pub fn points_per_slice(&self) -> usize {
        self.n * self.n * self.n
    }

    fn validate(&self) -> Result<()> {
        if self.n < 3 || !(self.spacing > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "grid needs n >= 3 and positive spacing, got n = {}, h = {}",
                self.n, self.spacing
            )));
        }
        if self.t_slices.is_empty() {
            return Err(Error::InsufficientSlices { needed: 1, got: 0 });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpacetimeField {
    pub grid: GridSpec,
    pub kind: FieldKind,
    pub m: f64,
    /// Row-major `[t][x][y][z]`.
    #[serde(skip)]
    pub values: Vec<Vector4<C64>>,
    /// Largest boundary amplitude over the largest amplitude.
    pub coverage: f64,
    pub warnings: Vec<String>,
}

impl SpacetimeField {
    fn index(&self, t: usize, i: usize, j: usize, k: usize) -> usize {
        let n = self.grid.n;
        ((t * n + i) * n + j) * n + k
    }

    pub fn at(&self, t: usize, i: usize, j: usize, k: usize) -> &Vector4<C64> {
        &self.values[self.index(t, i, j, k)]
    }

    pub fn slice(&self, t: usize) -> &[Vector4<C64>] {
        let len = self.grid.points_per_slice();
        &self.values[t * len..(t + 1) * len]
    }

    /// `h^3 sum psi^dagger psi` (Dirac) or `h^3 sum psi^dagger (-eta) psi`
    /// (Proca) on one slice.
    pub fn slice_norm_squared(&self, t: usize) -> f64 {
        let h3 = self.grid.spacing.powi(3);
        let dens: Vec<f64> = self.slice(t).iter().map(|v| pairing(self.kind, v)).collect();
        h3 * pairwise_sum(&dens)
    }

    /// Writes `#`-prefixed metadata lines followed by one CSV row per point:
    /// `t,ix,iy,iz,re0,im0,...,re3,im3`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let meta = serde_json::to_string(&self).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        writeln!(out, "# {meta}").map_err(io)?;
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["t".to_string(), "ix".into(), "iy".into(), "iz".into()];
        for c in 0..4 {
            header.push(format!("re{c}"));
            header.push(format!("im{c}"));
        }
        w.write_record(&header).map_err(csv_err)?;
        let n = self.grid.n;
        for t in 0..self.grid.t_slices.len() {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let v = self.at(t, i, j, k);
                        let mut row = vec![t.to_string(), i.to_string(), j.to_string(), k.to_string()];
                        for c in v.iter() {
                            row.push(format!("{:e}", c.re));
                            row.push(format!("{:e}", c.im));
                        }
                        w.write_record(&row).map_err(csv_err)?;
                    }
                }
            }
        }
        w.flush().map_err(io)?;
        Ok(())
    }

    /// JSON document with the metadata and `values` as `[re, im]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        let mut doc = serde_json::to_value(self).expect("field metadata serializes");
        let values: Vec<Vec<[f64; 2]>> =
            self.values.iter().map(|v| v.iter().map(|c| [c.re, c.im]).collect()).collect();
        doc["values"] = serde_json::json!(values);
        doc
    }
}

fn io(e: std::io::Error) -> Error {
    Error::InvalidParameter(format!("I/O error: {e}"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidParameter(format!("CSV error: {e}"))
}

fn pairing(kind: FieldKind, v: &Vector4<C64>) -> f64 {
    match kind {
        FieldKind::Dirac => v.norm_squared(),
        FieldKind::Proca => v[1].norm_sqr() + v[2].norm_sqr() + v[3].norm_sqr() - v[0].norm_sqr(),
    }
}

/// Evaluates the field of a perception-description Dirac or Proca state on
/// `grid`.
pub fn synthesize(state: &SingleParticleState, grid: &GridSpec) -> Result<SpacetimeField> {
    grid.validate()?;
    if state.desc() != Description::Perception {
        return Err(Error::WrongDescription { expected: "perception" });
    }
    let kind = match state.rep() {
        Representation::Dirac => FieldKind::Dirac,
        Representation::Proca => FieldKind::Proca,
        Representation::Spin(_) => {
            return Err(Error::InvalidParameter("synthesis needs a Dirac or Proca state".into()))
        }
    };
    let q = state.quadrature();
    let m = state.m();
    let (nx, ny, nz) = (q.axis(0).len(), q.axis(1).len(), q.axis(2).len());
    let n = grid.n;
    let norm = (2.0 * std::f64::consts::PI).powf(-1.5);

    // Node coefficients without the time phase: weight * w(p) * phi(p).
    let nodes = q.nodes();
    let weights = q.weights();
    let coeff: Vec<Vector4<C64>> = (0..nodes.len())
        .into_par_iter()
        .map(|i| {
            let p = &nodes[i];
            let amp = match kind {
                FieldKind::Dirac => m.sqrt(),
                FieldKind::Proca => p.time().abs().sqrt(),
            };
            let v = state.eval(p);
            Vector4::new(v[0], v[1], v[2], v[3]) * C64::new(norm * weights[i] * amp, 0.0)
        })
        .collect();

    // e^{i p_k x_k} tables, [node][grid].
    let phases = |k: usize| -> Vec<C64> {
        let axis = q.axis(k);
        let mut out = Vec::with_capacity(axis.len() * n);
        for &pk in axis {
            for g in 0..n {
                out.push(C64::from_polar(1.0, pk * grid.coord(k, g)));
            }
        }
        out
    };
    let (ex, ey, ez) = (phases(0), phases(1), phases(2));

    let mut values = Vec::with_capacity(grid.t_slices.len() * n * n * n);
    for &t in &grid.t_slices {
        // Stage 1: contract z. a[(i, j), gz]
        let a: Vec<Vector4<C64>> = (0..nx * ny)
            .into_par_iter()
            .flat_map_iter(|ij| {
                let mut row = vec![Vector4::zeros(); n];
                for kz in 0..nz {
                    let idx = ij * nz + kz;
                    let c = coeff[idx] * C64::from_polar(1.0, -nodes[idx].time() * t);
                    for (g, r) in row.iter_mut().enumerate() {
                        *r += c * ez[kz * n + g];
                    }
                }
                row
            })
            .collect();
        // Stage 2: contract y. b[(i, gy), gz]
        let b: Vec<Vector4<C64>> = (0..nx)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut block = vec![Vector4::zeros(); n * n];
                for j in 0..ny {
                    let src = &a[(i * ny + j) * n..(i * ny + j + 1) * n];
                    for gy in 0..n {
                        let e = ey[j * n + gy];
                        let dst = &mut block[gy * n..(gy + 1) * n];
                        for (d, s) in dst.iter_mut().zip(src) {
                            *d += s * e;
                        }
                    }
                }
                block
            })
            .collect();
        // Stage 3: contract x. psi[gx, gy, gz]
        let slice: Vec<Vector4<C64>> = (0..n)
            .into_par_iter()
            .flat_map_iter(|gx| {
                let mut block = vec![Vector4::zeros(); n * n];
                for i in 0..nx {
                    let e = ex[i * n + gx];
                    let src = &b[i * n * n..(i + 1) * n * n];
                    for (d, s) in block.iter_mut().zip(src) {
                        *d += s * e;
                    }
                }
                block
            })
            .collect();
        values.extend(slice);
    }

    let mut field = SpacetimeField { grid: grid.clone(), kind, m, values, coverage: 0.0, warnings: Vec::new() };
    field.coverage = coverage(&field);
    if field.coverage > COVERAGE_TOL {
        field.warnings.push(format!(
            "field reaches the grid boundary: boundary/peak amplitude {:.3e} exceeds {:.0e}",
            field.coverage, COVERAGE_TOL
        ));
    }
    Ok(field)
}

fn coverage(field: &SpacetimeField) -> f64 {
    let n = field.grid.n;
    let mut peak = 0.0f64;
    let mut edge = 0.0f64;
    for t in 0..field.grid.t_slices.len() {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = field.at(t, i, j, k).norm();
                    peak = peak.max(a);
                    if [i, j, k].iter().any(|&x| x == 0 || x == n - 1) {
                        edge = edge.max(a);
                    }
                }
            }
        }
    }
    if peak == 0.0 {
        0.0
    } else {
        edge / peak
    }
}

/// Relative residual norms over the interior of the middle time slice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residuals {
    /// Dirac: `||i gamma^mu d_mu psi - m psi|| / (m ||psi||)`.
    pub dirac: Option<f64>,
    /// Proca: `||d_mu psi^mu|| / (m ||psi||)`.
    pub divergence: Option<f64>,
    /// Proca: `||(d_t^2 - lap) psi + m^2 psi|| / (m^2 ||psi||)`.
    pub klein_gordon: Option<f64>,
}

/// Central-difference residuals of the field equations. Needs three equally
/// spaced time slices; the middle one is used.
pub fn pde_residual(field: &SpacetimeField) -> Result<Residuals> {
    let ts = &field.grid.t_slices;
    if ts.len() < 3 {
        return Err(Error::InsufficientSlices { needed: 3, got: ts.len() });
    }
    let mid = ts.len() / 2;
    let dt = ts[mid] - ts[mid - 1];
    if !(dt > 0.0) || ((ts[mid + 1] - ts[mid]) - dt).abs() > 1e-12 * dt.abs().max(1.0) {
        return Err(Error::UnevenSlices);
    }
    let n = field.grid.n;
    let h = field.grid.spacing;
    let m = field.m;
    let gammas: Vec<_> = (0..4).map(gamma).collect();
    let i_unit = C64::new(0.0, 1.0);

    let per_point: Vec<[f64; 4]> = (1..n - 1)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::with_capacity((n - 2) * (n - 2));
            for j in 1..n - 1 {
                for k in 1..n - 1 {
                    let psi = *field.at(mid, i, j, k);
                    let d = [
                        (field.at(mid + 1, i, j, k) - field.at(mid - 1, i, j, k)) / C64::new(2.0 * dt, 0.0),
                        (field.at(mid, i + 1, j, k) - field.at(mid, i - 1, j, k)) / C64::new(2.0 * h, 0.0),
                        (field.at(mid, i, j + 1, k) - field.at(mid, i, j - 1, k)) / C64::new(2.0 * h, 0.0),
                        (field.at(mid, i, j, k + 1) - field.at(mid, i, j, k - 1)) / C64::new(2.0 * h, 0.0),
                    ];
                    let mut row = [psi.norm_squared(), 0.0, 0.0, 0.0];
                    match field.kind {
                        FieldKind::Dirac => {
                            let mut r = -psi * C64::new(m, 0.0);
                            for mu in 0..4 {
                                r += gammas[mu] * d[mu] * i_unit;
                            }
                            row[1] = r.norm_squared();
                        }
                        FieldKind::Proca => {
                            let div: C64 = (0..4).map(|mu| d[mu][mu]).sum();
                            row[2] = div.norm_sqr();
                            let second = |a: &Vector4<C64>, b: &Vector4<C64>, step: f64| {
                                (a + b - psi * C64::new(2.0, 0.0)) / C64::new(step * step, 0.0)
                            };
                            let dtt = second(field.at(mid + 1, i, j, k), field.at(mid - 1, i, j, k), dt);
                            let lap = second(field.at(mid, i + 1, j, k), field.at(mid, i - 1, j, k), h)
                                + second(field.at(mid, i, j + 1, k), field.at(mid, i, j - 1, k), h)
                                + second(field.at(mid, i, j, k + 1), field.at(mid, i, j, k - 1), h);
                            let kg = dtt - lap + psi * C64::new(m * m, 0.0);
                            row[3] = kg.norm_squared();
                        }
                    }
                    out.push(row);
                }
            }
            out
        })
        .collect();
    let total = |c: usize| pairwise_sum(&per_point.iter().map(|r| r[c]).collect::<Vec<_>>()).sqrt();
    let psi = total(0);
    if psi == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(match field.kind {
        FieldKind::Dirac => Residuals { dirac: Some(total(1) / (m * psi)), divergence: None, klein_gordon: None },
        FieldKind::Proca => Residuals {
            dirac: None,
            divergence: Some(total(2) / (m * psi)),
            klein_gordon: Some(total(3) / (m * m * psi)),
        },
    })
}
