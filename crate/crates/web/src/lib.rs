//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function takes plain strings/numbers and returns a string
//! (JSON or report text). The `*_impl` functions hold the logic so they can be
//! tested natively.

use oscm_core::io::{emit_two_layer_svg, parse_instance, serialize_instance_with_comments};
use oscm_core::reduction::measure_offset;
use oscm_core::search::{find_cyclic_counterexamples, paper_named_instance, CounterexampleWitness};
use oscm_core::solvers::{barycenter, greedy_switch, harrigan_healy, median, solve_exact};
use oscm_core::{build_penalty_graph, crossing_matrix, Instance, SolveResult};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest star count the offset explorer accepts; the exact solver has to
/// order 4n free vertices.
pub const MAX_STARS: usize = 6;
pub const MAX_TRIALS: usize = 50;

#[derive(Serialize)]
struct Solved {
    method: &'static str,
    /// External free ids, top to bottom.
    ordering: Vec<usize>,
    crossings: u64,
    lower_bound: u64,
    svg: String,
    /// Set when the topological-order method hit a cycle.
    cycle: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct Penalty {
    arcs: Vec<[u64; 3]>,
    acyclic: bool,
    cycle: Option<Vec<usize>>,
}

fn free_ids(inst: &Instance, vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| inst.n_fixed() + v + 1).collect()
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

pub fn solve_impl(text: &str, method: &str) -> Result<String, String> {
    let inst = parse_instance(text).map_err(|e| e.to_string())?;
    let m = crossing_matrix(&inst);
    let result: SolveResult = match method {
        "exact" => solve_exact(&inst).map_err(|e| e.to_string())?,
        "bary" => barycenter(&inst),
        "median" => median(&inst),
        "greedy" => greedy_switch(&inst, barycenter(&inst).ordering()).map_err(|e| e.to_string())?,
        "hh" => match harrigan_healy(&inst) {
            Some(r) => r,
            None => {
                // still draw something: the barycenter order, flagged with the cycle
                let cycle = build_penalty_graph(&m).find_cycle().unwrap_or_default();
                let fallback = barycenter(&inst);
                return to_json(&Solved {
                    method: "harrigan-healy",
                    ordering: free_ids(&inst, fallback.ordering().as_slice()),
                    crossings: fallback.crossings(),
                    lower_bound: m.lower_bound(),
                    svg: emit_two_layer_svg(&inst, fallback.ordering()),
                    cycle: Some(free_ids(&inst, &cycle)),
                });
            }
        },
        other => return Err(format!("unknown method `{other}`")),
    };
    to_json(&Solved {
        method: result.method().name(),
        ordering: free_ids(&inst, result.ordering().as_slice()),
        crossings: result.crossings(),
        lower_bound: m.lower_bound(),
        svg: emit_two_layer_svg(&inst, result.ordering()),
        cycle: None,
    })
}

pub fn penalty_impl(text: &str) -> Result<String, String> {
    let inst = parse_instance(text).map_err(|e| e.to_string())?;
    let pg = build_penalty_graph(&crossing_matrix(&inst));
    let off = inst.n_fixed() as u64 + 1;
    let cycle = pg.find_cycle();
    to_json(&Penalty {
        arcs: pg
            .arcs()
            .iter()
            .map(|a| [a.from as u64 + off, a.to as u64 + off, a.weight])
            .collect(),
        acyclic: cycle.is_none(),
        cycle: cycle.map(|c| free_ids(&inst, &c)),
    })
}

/// Instance text of the smallest tree with a cyclic penalty digraph.
pub fn smallest_cyclic_tree_impl(max_vertices: usize) -> Result<String, String> {
    let outcome = find_cyclic_counterexamples(max_vertices).map_err(|e| e.to_string())?;
    let Some(w) = outcome.witnesses.first() else {
        return Err(format!("no tree with at most {max_vertices} vertices has a cyclic penalty digraph"));
    };
    let instance = paper_named_instance(w).unwrap_or_else(|| w.instance.clone());
    // annotate the relabeled instance, not the canonical one
    let shown = CounterexampleWitness {
        cycle: build_penalty_graph(&crossing_matrix(&instance))
            .find_cycle()
            .ok_or("relabeling lost the cycle")?,
        instance,
        ..w.clone()
    };
    let mut comments = vec![format!("{} vertices", shown.n_total)];
    comments.extend(shown.annotation());
    Ok(serialize_instance_with_comments(&shown.instance, &comments))
}

pub fn offset_report_impl(stars: usize, trials: usize, seed: u64) -> Result<String, String> {
    if !(1..=MAX_STARS).contains(&stars) {
        return Err(format!("stars must be between 1 and {MAX_STARS}"));
    }
    if !(1..=MAX_TRIALS).contains(&trials) {
        return Err(format!("trials must be between 1 and {MAX_TRIALS}"));
    }
    measure_offset(stars, trials, seed)
        .map(|r| r.to_string())
        .map_err(|e| e.to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn solve(text: &str, method: &str) -> Result<String, JsValue> {
    js(solve_impl(text, method))
}

#[wasm_bindgen]
pub fn penalty(text: &str) -> Result<String, JsValue> {
    js(penalty_impl(text))
}

#[wasm_bindgen]
pub fn smallest_cyclic_tree(max_vertices: usize) -> Result<String, JsValue> {
    js(smallest_cyclic_tree_impl(max_vertices))
}

#[wasm_bindgen]
pub fn offset_report(stars: usize, trials: usize, seed: u32) -> Result<String, JsValue> {
    js(offset_report_impl(stars, trials, seed as u64))
}
