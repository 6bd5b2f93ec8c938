//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON document; failures come back as `{"error": "..."}` so the
//! page can show them without exception plumbing.

use infconv::plcone::{self, PlKatetovFn};
use infconv::rational::{self, Rational};
use infconv::zline::{self, CyclicMode, CyclicSeq};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn parse_q(field: &str, s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|_| format!("{field}: cannot read {s:?} as a rational"))
}

/// Breakpoints written as `x:v` pairs separated by spaces or commas,
/// e.g. `"-1:1 0:1/2 2:3/2"`.
fn parse_curve(field: &str, s: &str) -> Result<PlKatetovFn, String> {
    let points = s
        .split([' ', ',', '\n'])
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (x, v) = t.split_once(':').ok_or_else(|| format!("{field}: expected x:v, got {t:?}"))?;
            Ok((parse_q(field, x)?, parse_q(field, v)?))
        })
        .collect::<Result<Vec<_>, String>>()?;
    PlKatetovFn::new(points).map_err(|e| format!("{field}: {e}"))
}

fn curve_json(f: &PlKatetovFn) -> Value {
    json!({
        "breakpoints": f.breakpoints().iter().map(|(x, v)| [rational::format(x), rational::format(v)]).collect::<Vec<_>>(),
        "points": f.breakpoints().iter().map(|(x, v)| [rational::to_f64(x), rational::to_f64(v)]).collect::<Vec<_>>(),
        "c_minus": rational::to_f64(&f.c_minus()),
        "c_plus": rational::to_f64(&f.c_plus()),
    })
}

pub fn pl_convolve_impl(f: &str, g: &str) -> Result<Value, String> {
    let (f, g) = (parse_curve("f", f)?, parse_curve("g", g)?);
    let h = plcone::pl_infconv(&f, &g);
    Ok(json!({ "f": curve_json(&f), "g": curve_json(&g), "conv": curve_json(&h) }))
}

/// Inf-convolution of two convex Katetov curves on the line.
#[wasm_bindgen]
pub fn pl_convolve(f: &str, g: &str) -> String {
    respond(pl_convolve_impl(f, g))
}

pub fn fixed_point_impl(lambda: &str, g: &str, tol: &str) -> Result<Value, String> {
    let lambda = parse_q("lambda", lambda)?;
    let tol = parse_q("tol", tol)?;
    let g = parse_curve("g", g)?;
    let r = plcone::fixed_point_solve(&lambda, &g, &tol).map_err(|e| e.to_string())?;
    // Replay the first iterates for drawing.
    let mut iterates = Vec::new();
    let mut f = PlKatetovFn::gamma(rational::zero());
    for _ in 0..r.iterations.min(8) {
        f = plcone::contraction_map(&lambda, &g, &f);
        iterates.push(curve_json(&f));
    }
    Ok(json!({
        "converged": r.converged,
        "iterations": r.iterations,
        "steps": r.trace.iter().map(|s| rational::to_f64(&s.step)).collect::<Vec<_>>(),
        "residual": rational::format(&r.residual),
        "error_bound": rational::to_f64(&r.error_bound),
        "solution": curve_json(&r.solution),
        "iterates": iterates,
    }))
}

/// Picard iteration of `f -> (lambda * f) (+) g` from `|x|`.
#[wasm_bindgen]
pub fn fixed_point(lambda: &str, g: &str, tol: &str) -> String {
    respond(fixed_point_impl(lambda, g, tol))
}

fn parse_seq(field: &str, s: &str) -> Result<CyclicSeq, String> {
    let values = s
        .split([' ', ',', '\n'])
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_q(field, t))
        .collect::<Result<Vec<_>, String>>()?;
    CyclicSeq::new(values).map_err(|e| format!("{field}: {e}"))
}

pub fn cyclic_convolve_impl(u: &str, v: &str, mode: &str) -> Result<Value, String> {
    let (u, v) = (parse_seq("u", u)?, parse_seq("v", v)?);
    let mode = match mode {
        "naive" => CyclicMode::Naive,
        "merge" => CyclicMode::Merge,
        "smawk" => CyclicMode::Smawk,
        _ => return Err(format!("unknown mode {mode:?}")),
    };
    let w = zline::cyclic_minplus(&u, &v, mode).map_err(|e| e.to_string())?;
    let show = |s: &CyclicSeq| s.values().iter().map(rational::format).collect::<Vec<_>>();
    Ok(json!({
        "u": show(&u),
        "v": show(&v),
        "result": show(&w),
        "plot": w.values().iter().map(rational::to_f64).collect::<Vec<_>>(),
        "in_linf_dis": w.in_linf_dis(),
    }))
}

/// Cyclic min-plus convolution of two periodic sequences.
#[wasm_bindgen]
pub fn cyclic_convolve(u: &str, v: &str, mode: &str) -> String {
    respond(cyclic_convolve_impl(u, v, mode))
}
