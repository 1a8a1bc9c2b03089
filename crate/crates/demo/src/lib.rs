//! Browser bindings for the `granset` demo page.
//!
//! Every export takes and returns JSON text so the page stays plain
//! JavaScript. The `*_json` functions hold the logic and are what the
//! native tests exercise; the `#[wasm_bindgen]` wrappers only convert
//! errors into JavaScript exceptions. Seeds cross the boundary as `u32`
//! so the page can pass plain numbers.

use granset::io::{self, IntervalFormat};
use granset::{
    approximate, fuse, graded_fusion, granular_from_chain, random_graded, sample_n, simulate_round_at, Interval,
    SimConfig,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn fusion_sweep(intervals: &[Interval]) -> Result<Value, granset::Error> {
    let graded = graded_fusion(intervals, 0, intervals.len() - 1)?;
    Ok(json!({
        "intervals": io::intervals_value(intervals),
        "fused": io::graded_intervals_value(&graded),
    }))
}

/// Fuses a JSON interval list for every fault count `0..L`.
pub fn fusion_sweep_json(intervals_json: &str) -> Result<String, String> {
    let intervals = io::parse_intervals(intervals_json, IntervalFormat::Json).map_err(|e| e.to_string())?;
    if intervals.is_empty() {
        return Err(granset::Error::NoMeasurements.to_string());
    }
    let value = fusion_sweep(&intervals).map_err(|e| e.to_string())?;
    Ok(io::to_canonical_string(&value))
}

/// One simulated round plus its fusion sweep; `faulty_indices` marks the
/// injected faults.
pub fn simulated_sweep_json(
    sensors: usize,
    faulty: usize,
    truth: f64,
    seed: u64,
    round: u64,
) -> Result<String, String> {
    let config = SimConfig {
        num_sensors: sensors,
        truth,
        correct_halfwidth_max: 1.0,
        num_faulty: faulty,
        fault_offset_min: 1.25,
        seed,
    };
    let outcome = simulate_round_at(&config, round).map_err(|e| e.to_string())?;
    let mut value = fusion_sweep(&outcome.intervals).map_err(|e| e.to_string())?;
    value["faulty_indices"] = json!(outcome.faulty_indices);
    value["truth"] = json!(truth);
    value["truth_containment"] = json!(outcome.truth_containment);
    Ok(io::to_canonical_string(&value))
}

/// Pushes a pmf over fault counts through fusion and tallies `draws`
/// seeded samples per atom.
pub fn random_graded_json(intervals_json: &str, dist_json: &str, draws: usize, seed: u64) -> Result<String, String> {
    let intervals = io::parse_intervals(intervals_json, IntervalFormat::Json).map_err(|e| e.to_string())?;
    let faults = io::parse_fault_distribution(dist_json).map_err(|e| e.to_string())?;
    let dist = random_graded(&intervals, &faults).map_err(|e| e.to_string())?;
    let samples = sample_n(&dist, seed, draws);
    let counts: Vec<usize> = dist
        .atoms()
        .iter()
        .map(|(atom, _)| samples.iter().filter(|s| *s == atom).count())
        .collect();
    let mut value = io::distribution_value(&dist);
    value["counts"] = json!(counts);
    value["draws"] = json!(draws);
    Ok(io::to_canonical_string(&value))
}

/// Granular set for an attribute chain plus the approximations of
/// `target` (comma-separated ids) at every chain level.
pub fn granulate_json(table_csv: &str, chain_json: &str, target: &str) -> Result<String, String> {
    let table = io::parse_table(table_csv).map_err(|e| e.to_string())?;
    let chain = io::parse_chain(chain_json).map_err(|e| e.to_string())?;
    let granular = granular_from_chain(&table, &chain).map_err(|e| e.to_string())?;
    let target = io::parse_name_list(target);
    let approximations = chain
        .levels()
        .iter()
        .map(|attrs| approximate(&table, attrs, &target).map(|p| io::approximation_value(&p)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let value = json!({
        "objects": table.objects(),
        "chain": chain.levels(),
        "granular": io::granular_value(&granular),
        "approximations": approximations,
    });
    Ok(io::to_canonical_string(&value))
}

/// Fusion of a JSON interval list with a single fault count.
pub fn fuse_json(intervals_json: &str, faults: usize) -> Result<String, String> {
    let intervals = io::parse_intervals(intervals_json, IntervalFormat::Json).map_err(|e| e.to_string())?;
    let fused = fuse(&intervals, faults).map_err(|e| e.to_string())?;
    Ok(io::serialize_fusion(&fused))
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = fusionSweep)]
pub fn fusion_sweep_js(intervals_json: &str) -> Result<String, JsValue> {
    js(fusion_sweep_json(intervals_json))
}

#[wasm_bindgen(js_name = simulatedSweep)]
pub fn simulated_sweep_js(sensors: usize, faulty: usize, truth: f64, seed: u32, round: u32) -> Result<String, JsValue> {
    js(simulated_sweep_json(sensors, faulty, truth, seed.into(), round.into()))
}

#[wasm_bindgen(js_name = randomGraded)]
pub fn random_graded_js(intervals_json: &str, dist_json: &str, draws: usize, seed: u32) -> Result<String, JsValue> {
    js(random_graded_json(intervals_json, dist_json, draws, seed.into()))
}

#[wasm_bindgen(js_name = granulate)]
pub fn granulate_js(table_csv: &str, chain_json: &str, target: &str) -> Result<String, JsValue> {
    js(granulate_json(table_csv, chain_json, target))
}

#[wasm_bindgen(js_name = fuse)]
pub fn fuse_js(intervals_json: &str, faults: usize) -> Result<String, JsValue> {
    js(fuse_json(intervals_json, faults))
}
