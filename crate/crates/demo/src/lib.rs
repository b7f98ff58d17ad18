//! Browser bindings: mixing heatmap, convergence of the time average, and the
//! bound sandwich on the marked block. Each export returns a JSON string.

use nalgebra::DVector;
use serde_json::json;
use wasm_bindgen::prelude::*;

use qwalk_core::analysis::{mss_lower_bound_for, mss_upper_bound_for};
use qwalk_core::graph::presets::parse_preset;
use qwalk_core::walk::{transition_matrix_general, MarkedWalk};
use qwalk_core::Graph;

fn parse_marked(s: &str) -> Result<Vec<usize>, String> {
    let v: Result<Vec<usize>, _> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| format!("marked `{t}`: {e}")))
        .collect();
    let v = v?;
    if v.is_empty() {
        return Err("no marked vertices".into());
    }
    Ok(v)
}

fn setup(preset: &str, marked: &str) -> Result<(Graph, MarkedWalk), String> {
    let g = parse_preset(preset).map_err(|e| e.to_string())?;
    let walk = MarkedWalk::new(&g, &parse_marked(marked)?).map_err(|e| e.to_string())?;
    Ok((g, walk))
}

fn rows(m: &nalgebra::DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

pub fn mixing_json(preset: &str, marked: &str) -> Result<String, String> {
    let (g, walk) = setup(preset, marked)?;
    let m = walk.mixing();
    Ok(json!({
        "n": g.vertex_count(),
        "edges": g.edges(),
        "marked": walk.marked(),
        "matrix": rows(&m.matrix),
    })
    .to_string())
}

/// `max |M̂(t) − M̂|` for the running Cesàro average, sampled `samples` times up to `horizon`.
pub fn convergence_json(preset: &str, marked: &str, horizon: usize, samples: usize) -> Result<String, String> {
    let (g, walk) = setup(preset, marked)?;
    if horizon == 0 || samples == 0 {
        return Err("horizon and samples must be positive".into());
    }
    let limit = walk.mixing().matrix;
    let u = transition_matrix_general(&g, walk.marked()).map_err(|e| e.to_string())?.u;
    let n = g.vertex_count();
    let k = walk.k();
    let mut states: Vec<DVector<f64>> = (0..n)
        .map(|v| {
            let mut x = DVector::zeros(g.arc_count());
            for a in g.out_arcs(v) {
                x[a] = 1.0 / k.sqrt();
            }
            x
        })
        .collect();
    // acc[v][a] accumulates |(Uᵗ x_v)_a|².
    let mut acc: Vec<DVector<f64>> = vec![DVector::zeros(g.arc_count()); n];
    let out_arcs: Vec<Vec<usize>> = (0..n).map(|w| g.out_arcs(w)).collect();
    let step = (horizon / samples).max(1);
    let mut points = Vec::new();
    for t in 1..=horizon {
        for (x, a) in states.iter_mut().zip(acc.iter_mut()) {
            *a += x.component_mul(x);
            *x = &u * &*x;
        }
        if t % step == 0 || t == horizon {
            let mut worst: f64 = 0.0;
            for (v, a) in acc.iter().enumerate() {
                for (w, arcs) in out_arcs.iter().enumerate() {
                    let p: f64 = arcs.iter().map(|&i| a[i]).sum::<f64>() / t as f64;
                    worst = worst.max((p - limit[(w, v)]).abs());
                }
            }
            points.push(json!([t, worst]));
        }
    }
    Ok(json!({ "horizon": horizon, "points": points }).to_string())
}

pub fn sandwich_json(preset: &str, marked: &str) -> Result<String, String> {
    let (_, walk) = setup(preset, marked)?;
    let m = walk.mixing();
    let lower = mss_lower_bound_for(&walk, &m).map_err(|e| e.to_string())?;
    let upper = mss_upper_bound_for(&walk, &m).map_err(|e| e.to_string())?;
    Ok(json!({
        "labels": lower.labels,
        "lower": rows(&lower.bound),
        "value": rows(&lower.target),
        "upper": rows(&upper.bound),
        "lower_tight": lower.tight,
        "upper_tight": upper.tight,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn mixing(preset: &str, marked: &str) -> Result<String, JsError> {
    mixing_json(preset, marked).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn convergence(preset: &str, marked: &str, horizon: usize, samples: usize) -> Result<String, JsError> {
    convergence_json(preset, marked, horizon, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sandwich(preset: &str, marked: &str) -> Result<String, JsError> {
    sandwich_json(preset, marked).map_err(|e| JsError::new(&e))
}
