//! Browser bindings for the demo page in `www/`. Every entry point returns a
//! JSON string; the `*_json` functions are the same operations for native
//! callers and tests.

use ropelength::experiments::gamma_series;
use ropelength::optimize::{anneal, perturb, AnnealConfig};
use ropelength::smooth::{inscribe_equilateral, rescale_unit, w1inf_distance, CurvePreset};
use ropelength::thickness::delta_n;
use ropelength::{Polygon, Vec3};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest polygon the page may request; keeps the O(n²) scans interactive.
pub const MAX_N: usize = 1024;

fn points(v: &[Vec3]) -> Value {
    Value::Array(v.iter().map(|p| json!([p.x, p.y, p.z])).collect())
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn check_n(n: usize) -> Result<(), String> {
    if (3..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(format!("n must lie in 3..={MAX_N}, got {n}"))
    }
}

/// Inscribes an equilateral `n`-gon in a preset curve, rescales it to length
/// 1 and reports its thickness and its distance to the curve.
pub fn inscribe_json(curve: &str, n: usize, samples: usize) -> Result<String, String> {
    check_n(n)?;
    let preset: CurvePreset = curve
        .parse()
        .map_err(|e: ropelength::Error| e.to_string())?;
    let g = preset.curve(samples).map_err(|e| e.to_string())?;
    let ins = inscribe_equilateral(&g, n).map_err(|e| e.to_string())?;
    let p = rescale_unit(&ins.polygon);
    let w = w1inf_distance(&p, &g, 10 * n);
    let curve_pts: Vec<Vec3> = (0..512).map(|k| g.point(k as f64 / 512.0)).collect();
    Ok(json!({
        "curve": preset.to_string(),
        "vertices": points(p.vertices()),
        "curve_points": points(&curve_pts),
        "report": delta_n(&p).to_json(),
        "position_sup": w.position,
        "derivative_sup": w.derivative,
        "regular_bound": 2.0 * n as f64 * (std::f64::consts::PI / n as f64).tan(),
    })
    .to_string())
}

/// Convergence sweep; `ns` is a comma-separated list of sizes.
pub fn gamma_json(curve: &str, ns: &str, m_proxy: usize) -> Result<String, String> {
    let preset: CurvePreset = curve
        .parse()
        .map_err(|e: ropelength::Error| e.to_string())?;
    let ns = ns
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad size {s:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    for &n in &ns {
        check_n(n)?;
    }
    let s = gamma_series(&preset, &ns, m_proxy).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = s
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "inv_delta_n": finite(r.inv_delta_n),
                "binding": r.binding,
                "position_sup": finite(r.position_sup),
                "derivative_sup": finite(r.derivative_sup),
                "failure": r.failure,
            })
        })
        .collect();
    Ok(json!({
        "curve": s.curve,
        "proxy_inv": finite(1.0 / s.proxy.delta),
        "rows": rows,
    })
    .to_string())
}

/// Anneals a randomly perturbed regular `n`-gon and returns the start, the
/// best polygon and the best-so-far objective curve (at most 400 points).
pub fn anneal_json(n: usize, seed: u64, max_steps: usize) -> Result<String, String> {
    if !(4..=64).contains(&n) {
        return Err(format!("n must lie in 4..=64, got {n}"));
    }
    let reg = Polygon::regular(n).map_err(|e| e.to_string())?;
    let start = perturb(&reg, 5 * n, 1.0, seed).map_err(|e| e.to_string())?;
    let cfg = AnnealConfig {
        seed,
        max_steps: Some(max_steps),
        ..AnnealConfig::default()
    };
    let (best, trace) = anneal(&start, &cfg).map_err(|e| e.to_string())?;
    let stride = trace.records.len().div_ceil(400).max(1);
    let curve: Vec<Value> = trace
        .records
        .iter()
        .step_by(stride)
        .map(|r| json!([r.step, r.best]))
        .collect();
    Ok(json!({
        "start": points(start.vertices()),
        "best": points(best.vertices()),
        "initial": trace.initial,
        "best_objective": trace.best_objective,
        "regular_bound": 2.0 * n as f64 * (std::f64::consts::PI / n as f64).tan(),
        "proposals": trace.records.len(),
        "accepted": trace.accepted().count(),
        "curve": curve,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn inscribe(curve: &str, n: usize, samples: usize) -> Result<String, JsError> {
    inscribe_json(curve, n, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn gamma(curve: &str, ns: &str, m_proxy: usize) -> Result<String, JsError> {
    gamma_json(curve, ns, m_proxy).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = annealPolygon)]
pub fn anneal_polygon(n: usize, seed: u32, max_steps: usize) -> Result<String, JsError> {
    anneal_json(n, u64::from(seed), max_steps).map_err(|e| JsError::new(&e))
}
