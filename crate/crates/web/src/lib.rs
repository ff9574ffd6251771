//! Browser bindings. Each operation has a plain Rust form returning
//! `Result<String, String>` and a thin `wasm_bindgen` wrapper.

use std::fmt::Write;

use semihull::cli::{classify_json, subshift_json};
use semihull::spectrum::Spectrum;
use semihull::subshift::{language_semigroup, SubshiftSpec};
use semihull::Semigroup;
use serde_json::json;
use wasm_bindgen::prelude::*;

const NODE_W: f64 = 110.0;
const ROW_H: f64 = 80.0;
const PAD: f64 = 30.0;

fn text<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Classification flags of a multiplication table given as JSON.
pub fn classify(table: &str) -> Result<String, String> {
    let s = Semigroup::from_json(table).map_err(text)?;
    let v = classify_json(&s).map_err(text)?;
    Ok(serde_json::to_string_pretty(&v).expect("plain data"))
}

/// Hasse diagram of the constructible sets as SVG. Each nonempty set is
/// the minimum of exactly one character, and its node is colored by that
/// character's class.
pub fn hasse_svg(table: &str) -> Result<String, String> {
    let s = Semigroup::from_json(table).map_err(text)?;
    let sp = Spectrum::new(&s).map_err(text)?;
    let l = sp.lattice();
    let n = l.len();

    // rank = longest chain down to the empty set
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| l.members(i).len());
    let covers = l.covers();
    let mut rank = vec![0usize; n];
    for &j in &order {
        for &(a, b) in &covers {
            if b == j {
                rank[j] = rank[j].max(rank[a] + 1);
            }
        }
    }
    let rows = rank.iter().max().map_or(1, |r| r + 1);
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); rows];
    for &i in &order {
        levels[rank[i]].push(i);
    }
    for level in &mut levels {
        level.sort_by_key(|&i| s.set_names(l.members(i)).join(","));
    }
    let widest = levels.iter().map(Vec::len).max().unwrap_or(1);
    let width = widest as f64 * NODE_W + 2.0 * PAD;
    let height = (rows - 1) as f64 * ROW_H + 2.0 * PAD;
    let mut pos = vec![(0.0, 0.0); n];
    for (r, level) in levels.iter().enumerate() {
        let offset = (width - level.len() as f64 * NODE_W) / 2.0 + NODE_W / 2.0;
        for (k, &i) in level.iter().enumerate() {
            pos[i] = (offset + k as f64 * NODE_W, height - PAD - r as f64 * ROW_H);
        }
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}" font-family="monospace" font-size="12">"#
    );
    for (a, b) in covers {
        let ((x1, y1), (x2, y2)) = (pos[a], pos[b]);
        let _ = writeln!(out, r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#888"/>"##);
    }
    for (i, &(x, y)) in pos.iter().enumerate() {
        let label = format!("{{{}}}", s.set_names(l.members(i)).join(","));
        let (class, title) = match sp.char_with_min(i) {
            None => ("empty", String::from("empty set")),
            Some(c) => {
                let k = sp.classify_character(c);
                let kind = if k.ground { "ground" } else if k.open { "open" } else { "non-open" };
                let class = if k.ultra { "ultra" } else { kind };
                (class, format!("{kind}{}", if k.ultra { ", ultra" } else { "" }))
            }
        };
        let fill = match class {
            "ultra" => "#f4c542",
            "open" => "#9fd3a8",
            "ground" => "#c9b3e6",
            "non-open" => "#9cc3e6",
            _ => "#eee",
        };
        let w = (label.len() as f64 * 7.5 + 12.0).min(NODE_W - 6.0);
        let _ = writeln!(
            out,
            r##"<g class="{class}"><title>{title}</title><rect x="{}" y="{}" width="{w}" height="22" rx="5" fill="{fill}" stroke="#333"/><text x="{x}" y="{}" text-anchor="middle">{}</text></g>"##,
            x - w / 2.0,
            y - 11.0,
            y + 4.0,
            escape(&label),
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Words, follower sets and ground ultra report of a subshift given as JSON.
/// `depth` of 0 keeps the depth from the spec.
pub fn explore_subshift(spec: &str, depth: usize, lambda_bound: usize) -> Result<String, String> {
    let spec = SubshiftSpec::from_json(spec).map_err(text)?;
    let shift = language_semigroup(&spec, (depth > 0).then_some(depth)).map_err(text)?;
    let mut v = subshift_json(&shift, lambda_bound).map_err(text)?;
    v["table"] = json!(shift.semigroup().to_document());
    Ok(serde_json::to_string_pretty(&v).expect("plain data"))
}

#[wasm_bindgen(js_name = classify)]
pub fn classify_js(table: &str) -> Result<String, JsError> {
    classify(table).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = hasseSvg)]
pub fn hasse_svg_js(table: &str) -> Result<String, JsError> {
    hasse_svg(table).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = exploreSubshift)]
pub fn explore_subshift_js(spec: &str, depth: usize, lambda_bound: usize) -> Result<String, JsError> {
    explore_subshift(spec, depth, lambda_bound).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN: &str = r#"{"elements":["0","1","a","aa"],"zero":"0",
        "table":[["0","0","0","0"],["0","1","a","aa"],["0","a","aa","0"],["0","aa","0","0"]]}"#;

    #[test]
    fn svg_has_a_node_per_constructible_set() {
        let svg = hasse_svg(CHAIN).unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<g class=").count(), 7);
        assert_eq!(svg.matches(r#"class="ultra""#).count(), 3);
        assert_eq!(svg.matches("<line").count(), 9);
    }

    #[test]
    fn classify_round_trips_json() {
        let v: serde_json::Value = serde_json::from_str(&classify(CHAIN).unwrap()).unwrap();
        assert_eq!(v["zero_left_cancellative"]["holds"], true);
    }

    #[test]
    fn subshift_explorer() {
        let spec = r#"{"alphabet":["0","1"],"forbidden":["11"],"depth":3}"#;
        let v: serde_json::Value = serde_json::from_str(&explore_subshift(spec, 0, 2).unwrap()).unwrap();
        assert_eq!(v["words"].as_array().unwrap().len(), 10);
        assert_eq!(v["zero"], "_0");
        assert!(explore_subshift("{}", 0, 2).is_err());
    }

    #[test]
    fn errors_are_messages() {
        assert!(classify("not json").is_err());
        assert!(hasse_svg(r#"{"elements":["0"],"zero":"0","table":[["1"]]}"#).is_err());
    }
}
