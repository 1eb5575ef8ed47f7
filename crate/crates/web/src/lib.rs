//! Browser bindings. Every export takes and returns plain strings; results
//! are JSON objects with an `error` field on failure.

use cubulate::charge::classify_vcs;
use cubulate::cube_complex::{check_npc, hyperplanes, specialness_report};
use cubulate::io::{parse_complex, parse_manifold};
use cubulate::manifold::Slope;
use cubulate::wallspace::{dual_cube_complex_with_budget, torus_line_wallspace};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const DUAL_BUDGET: usize = 20_000;

fn error(msg: impl ToString) -> Value {
    json!({ "error": msg.to_string() })
}

fn parse_slopes(text: &str) -> Result<Vec<Slope>, String> {
    text.split(|c: char| c == ';' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (p, q) = s.split_once(',').ok_or_else(|| format!("slope `{s}` is not p,q"))?;
            let p: i64 = p.trim().parse().map_err(|_| format!("bad integer in `{s}`"))?;
            let q: i64 = q.trim().parse().map_err(|_| format!("bad integer in `{s}`"))?;
            Slope::new(p, q).map_err(|e| e.to_string())
        })
        .collect()
}

/// Lines of the given slopes on the universal cover of the torus, and the
/// dual cube complex laid out by summing the signed unit normals.
pub fn torus_arrangement_value(slopes: &str, window: i64) -> Value {
    let slopes = match parse_slopes(slopes) {
        Ok(s) => s,
        Err(e) => return error(e),
    };
    let arr = match torus_line_wallspace(&slopes, window) {
        Ok(a) => a,
        Err(e) => return error(e),
    };
    let dual = match dual_cube_complex_with_budget(&arr.wallspace, DUAL_BUDGET) {
        Ok(d) => d,
        Err(e) => return error(e),
    };
    let normals: Vec<(f64, f64)> = arr
        .lines
        .iter()
        .map(|l| {
            let (p, q) = (l.slope.p() as f64, l.slope.q() as f64);
            let n = p.hypot(q);
            (q / n, -p / n)
        })
        .collect();
    let positions: Vec<[f64; 2]> = dual
        .orientations
        .iter()
        .map(|o| {
            o.iter().zip(&normals).fold([0.0, 0.0], |[x, y], (&side, &(nx, ny))| {
                let s = if side { 0.5 } else { -0.5 };
                [x + s * nx, y + s * ny]
            })
        })
        .collect();
    let c = &dual.complex;
    let squares: Vec<[usize; 4]> = c
        .squares()
        .iter()
        .map(|s| {
            let k = &s.corners;
            [k[0], k[1], k[3], k[2]]
        })
        .collect();
    let n = slopes.len();
    let interior = (0..c.vertices().len()).filter(|&v| c.degree(v) == 2 * n).count();
    json!({
        "lines": arr.lines.iter().map(|l| json!({"p": l.slope.p(), "q": l.slope.q(), "c": l.offset})).collect::<Vec<_>>(),
        "radius": arr.radius.to_integer().to_string().parse::<f64>().unwrap_or(1.0),
        "chambers": arr.wallspace.chambers(),
        "dual": {
            "positions": positions,
            "edges": c.edges(),
            "squares": squares,
            "dimension": c.dimension(),
            "maximal_cubes": c.maximal_cubes().len(),
            "hyperplanes": hyperplanes(c).len(),
            "interior_vertices": interior,
        },
    })
}

/// Verdict for a manifold description.
pub fn classify_value(text: &str) -> Value {
    let m = match parse_manifold(text) {
        Ok(m) => m,
        Err(e) => return error(e),
    };
    match classify_vcs(&m) {
        Ok(v) => json!({
            "vcs": v.vcs,
            "summary": v.to_string(),
            "blocks": v.verdicts.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        Err(e) => error(e),
    }
}

/// Link condition and hyperplane pathologies of a cube complex description.
pub fn special_check_value(text: &str) -> Value {
    let c = match parse_complex(text) {
        Ok(c) => c,
        Err(e) => return error(e),
    };
    let link = match check_npc(&c) {
        Ok(l) => l,
        Err(e) => return error(e),
    };
    let report = specialness_report(&c);
    let name = |&(u, v): &(usize, usize)| format!("{}-{}", c.vertices()[u], c.vertices()[v]);
    let planes: Vec<Value> = report
        .hyperplanes
        .iter()
        .zip(&report.per_hyperplane)
        .map(|(h, r)| {
            json!({
                "id": h.id,
                "edges": h.edges.iter().map(name).collect::<Vec<_>>(),
                "one_sided": r.one_sided,
                "self_intersecting": r.self_intersecting,
                "self_osculating": r.self_osculating,
            })
        })
        .collect();
    json!({
        "npc": link.is_npc(),
        "link_issues": link.issues.iter().map(|i| i.describe(&c)).collect::<Vec<_>>(),
        "hyperplanes": planes,
        "inter_osculating": report.inter_osculating,
        "special": link.is_npc() && report.special,
    })
}

#[wasm_bindgen]
pub fn torus_arrangement(slopes: &str, window: i32) -> String {
    torus_arrangement_value(slopes, window.into()).to_string()
}

#[wasm_bindgen]
pub fn classify(text: &str) -> String {
    classify_value(text).to_string()
}

#[wasm_bindgen]
pub fn special_check(text: &str) -> String {
    special_check_value(text).to_string()
}
