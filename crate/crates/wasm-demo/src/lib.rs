//! Browser bindings: a Wigner rotation explorer and two rapidity sweeps.
//!
//! The plain functions are what the tests exercise; the `wasm_bindgen`
//! wrappers only flatten results into `Vec<f64>` for JavaScript.

use nalgebra::Vector3;
use rqi_bundle::lorentz::{wigner_rotation, PoincareElement, Shell, Sl2c};
use rqi_bundle::minkowski::pauli;
use rqi_bundle::scenarios::{bell_state, pst_tau, ScenarioConfig, ScenarioName};
use rqi_bundle::wavepackets::reduced::entropy_bits;
use rqi_bundle::wavepackets::{concurrence, QuadratureRule};
use wasm_bindgen::prelude::*;

/// Coarse rule that keeps a sweep interactive in a single-threaded page.
fn demo_rule(order: usize) -> QuadratureRule {
    QuadratureRule::new(order.clamp(4, 24), 4, 7.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WignerSummary {
    /// Rotation angle in `[0, 2 pi]`.
    pub angle: f64,
    pub axis: Vector3<f64>,
    /// Spatial part of the boosted momentum.
    pub boosted: Vector3<f64>,
}

/// Angle and axis of `W(Lambda, p)` for a boost of the given rapidity along
/// `boost_axis` acting on the plus-shell momentum with spatial part `p`.
pub fn wigner_summary(m: f64, p: Vector3<f64>, boost_axis: Vector3<f64>, rapidity: f64) -> Result<WignerSummary, String> {
    let lambda = if rapidity == 0.0 {
        Sl2c::identity()
    } else {
        Sl2c::boost(&boost_axis, rapidity).map_err(|e| e.to_string())?
    };
    let pp = Shell::Plus.lift(m, &p);
    let w = wigner_rotation(&lambda, &pp, Shell::Plus, m).map_err(|e| e.to_string())?;
    let wm = w.matrix();
    // W = cos(t/2) I - i sin(t/2) n.tau
    let c = (wm.trace().re / 2.0).clamp(-1.0, 1.0);
    let angle = 2.0 * c.acos();
    let s = (angle / 2.0).sin();
    let axis = if s.abs() < 1e-14 {
        Vector3::z()
    } else {
        Vector3::from_fn(|j, _| -(wm * pauli(j + 1)).trace().im / (2.0 * s))
    };
    Ok(WignerSummary { angle, axis, boosted: lambda.act(&pp).spatial() })
}

fn rapidities(max: f64, steps: usize) -> Vec<f64> {
    let steps = steps.max(1);
    (0..=steps).map(|i| max * i as f64 / steps as f64).collect()
}

fn config(scenario: ScenarioName, m: f64, width: f64) -> ScenarioConfig {
    let mut cfg = ScenarioConfig::new(scenario);
    cfg.m = m;
    cfg.width = Some(width);
    cfg
}

/// Spin entropy (bits) of a boosted spin-up Gaussian, boost along `x`.
pub fn pst_entropy_sweep(m: f64, width: f64, max_rapidity: f64, steps: usize, order: usize) -> Result<Vec<f64>, String> {
    let cfg = config(ScenarioName::PstEntropy, m, width);
    rapidities(max_rapidity, steps)
        .into_iter()
        .map(|eta| {
            let (tau, _) = pst_tau(&cfg, eta, demo_rule(order)).map_err(|e| e.to_string())?;
            entropy_bits(&tau).map_err(|e| e.to_string())
        })
        .collect()
}

/// Concurrence of a Bell pair sharing one Gaussian, boost along `z`.
pub fn bell_concurrence_sweep(m: f64, width: f64, max_rapidity: f64, steps: usize, order: usize) -> Result<Vec<f64>, String> {
    let cfg = config(ScenarioName::GaConcurrence, m, width);
    let state = bell_state(&cfg, demo_rule(order)).map_err(|e| e.to_string())?;
    rapidities(max_rapidity, steps)
        .into_iter()
        .map(|eta| {
            let g = if eta == 0.0 {
                PoincareElement::identity()
            } else {
                PoincareElement::lorentz(Sl2c::boost(&cfg.axis(), eta).map_err(|e| e.to_string())?)
            };
            let tau = state.apply_unitary(&g).and_then(|s| s.spin_density()).map_err(|e| e.to_string())?;
            concurrence(&tau).map_err(|e| e.to_string())
        })
        .collect()
}

/// `[angle, axis_x, axis_y, axis_z, boosted_x, boosted_y, boosted_z]`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn wigner_rotation_explorer(
    m: f64,
    px: f64,
    py: f64,
    pz: f64,
    ax: f64,
    ay: f64,
    az: f64,
    rapidity: f64,
) -> Result<Vec<f64>, JsError> {
    let w = wigner_summary(m, Vector3::new(px, py, pz), Vector3::new(ax, ay, az), rapidity)
        .map_err(|e| JsError::new(&e))?;
    Ok(vec![w.angle, w.axis.x, w.axis.y, w.axis.z, w.boosted.x, w.boosted.y, w.boosted.z])
}

/// Entropies at `steps + 1` evenly spaced rapidities in `[0, max_rapidity]`.
#[wasm_bindgen]
pub fn pst_entropy_curve(m: f64, width: f64, max_rapidity: f64, steps: usize, order: usize) -> Result<Vec<f64>, JsError> {
    pst_entropy_sweep(m, width, max_rapidity, steps, order).map_err(|e| JsError::new(&e))
}

/// Concurrences at `steps + 1` evenly spaced rapidities in `[0, max_rapidity]`.
#[wasm_bindgen]
pub fn bell_concurrence_curve(m: f64, width: f64, max_rapidity: f64, steps: usize, order: usize) -> Result<Vec<f64>, JsError> {
    bell_concurrence_sweep(m, width, max_rapidity, steps, order).map_err(|e| JsError::new(&e))
}
