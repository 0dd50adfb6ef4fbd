//! Browser demo: λ-semidirect products, Artin glueings and the Hasse
//! diagram of weakly Schreier extensions for a few small monoids.
//!
//! Every export returns a JSON string; failures come back as
//! `{"error": "..."}` so the page never has to catch exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use wschreier::dot::{fingerprint, hasse};
use wschreier::fixtures;
use wschreier::lambda::DEFAULT_ACTION_SEARCH_LIMIT;
use wschreier::{
    artin_glueing, check_frame, enumerate_inverse_actions, enumerate_wactions, glueing_equals_lambda,
    inverse_structure, lambda_product, waction_leq, EnumerationBound, FiniteMonoid, MeetHom, WActPair,
};

const PRESETS: [&str; 6] = ["T1", "C2", "SL2", "SL3", "B2", "R2"];

fn preset(name: &str) -> Result<FiniteMonoid, String> {
    Ok(match name {
        "T1" => fixtures::t1(),
        "C2" => fixtures::c2(),
        "SL2" => fixtures::sl2(),
        "SL3" => fixtures::sl3(),
        "B2" => fixtures::boolean4(),
        "R2" => fixtures::r2(),
        _ => return Err(format!("unknown monoid {name:?}")),
    })
}

fn labels(m: &FiniteMonoid) -> Vec<String> {
    m.elements().map(|x| m.label(x)).collect()
}

fn rows(m: &FiniteMonoid) -> Vec<Vec<usize>> {
    m.elements().map(|a| m.row(a).to_vec()).collect()
}

fn to_json(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

pub fn presets_value() -> Value {
    let list: Vec<Value> = PRESETS
        .iter()
        .map(|&name| {
            let m = preset(name).expect("preset names are known");
            json!({
                "name": name,
                "labels": labels(&m),
                "inverse": inverse_structure(&m).is_ok(),
                "frame": check_frame(&m).is_ok(),
            })
        })
        .collect();
    Value::Array(list)
}

/// The inverse actions of `h` on `n`, and the λ-product of the chosen one.
pub fn lambda_value(n: &str, h: &str, index: usize) -> Result<Value, String> {
    let (nm, hm) = (preset(n)?, preset(h)?);
    let ni = inverse_structure(&nm).map_err(|e| format!("{n} is not inverse: {e}"))?;
    let hi = inverse_structure(&hm).map_err(|e| format!("{h} is not inverse: {e}"))?;
    let actions = enumerate_inverse_actions(&ni, &hi, DEFAULT_ACTION_SEARCH_LIMIT).map_err(|e| e.to_string())?;
    let a = actions.get(index).ok_or_else(|| format!("only {} actions", actions.len()))?;
    let lp = lambda_product(a).map_err(|e| e.to_string())?;
    let carrier: Vec<String> =
        lp.carrier().iter().map(|&(x, y)| format!("({},{})", nm.label(x), hm.label(y))).collect();
    let tables: Vec<Vec<usize>> =
        actions.iter().map(|a| (0..hm.size()).flat_map(|y| nm.elements().map(move |x| (y, x))).map(|(y, x)| a.apply(y, x)).collect()).collect();
    Ok(json!({
        "actions": tables,
        "n_labels": labels(&nm),
        "h_labels": labels(&hm),
        "carrier": carrier,
        "table": rows(lp.monoid()),
    }))
}

/// The glueing along `map: h -> n`.
pub fn glue_value(n: &str, h: &str, map: &[usize]) -> Result<Value, String> {
    let (nm, hm) = (preset(n)?, preset(h)?);
    let nf = check_frame(&nm).map_err(|e| format!("{n} is not a frame: {e}"))?;
    let hf = check_frame(&hm).map_err(|e| format!("{h} is not a frame: {e}"))?;
    let f = MeetHom::new(&hf, &nf, map).map_err(|e| format!("not meet-preserving: {e}"))?;
    let gl = artin_glueing(&f);
    let carrier: Vec<String> = gl.carrier.iter().map(|&(x, y)| format!("({},{})", nm.label(x), hm.label(y))).collect();
    Ok(json!({
        "carrier": carrier,
        "table": rows(gl.frame.base()),
        "lambda_agrees": glueing_equals_lambda(&f),
    }))
}

/// Hasse diagram of the admissible pairs over `n` and `h`, with a rank per
/// node for layered drawing.
pub fn poset_value(n: &str, h: &str) -> Result<Value, String> {
    let (nm, hm) = (preset(n)?, preset(h)?);
    let pairs: Vec<WActPair> =
        enumerate_wactions(&nm, &hm, EnumerationBound::default()).map_err(|e| e.to_string())?.collect();
    let d = hasse(pairs.len(), |a, b| waction_leq(&pairs[a], &pairs[b]));
    let mut rank = vec![0usize; d.classes.len()];
    // covers only go upward, so relaxing |classes| times settles every rank
    for _ in 0..d.classes.len() {
        for &(a, b) in &d.covers {
            rank[b] = rank[b].max(rank[a] + 1);
        }
    }
    let nodes: Vec<Value> = d
        .classes
        .iter()
        .zip(&rank)
        .map(|(class, r)| {
            let p = &pairs[class[0]];
            json!({
                "members": class.len(),
                "g": p.relation().num_classes(),
                "fp": fingerprint(p),
                "rank": r,
            })
        })
        .collect();
    Ok(json!({ "nodes": nodes, "edges": d.covers }))
}

#[wasm_bindgen]
pub fn presets() -> String {
    presets_value().to_string()
}

#[wasm_bindgen]
pub fn lambda(n: &str, h: &str, index: usize) -> String {
    to_json(lambda_value(n, h, index))
}

#[wasm_bindgen]
pub fn glue(n: &str, h: &str, map: Vec<usize>) -> String {
    to_json(glue_value(n, h, &map))
}

#[wasm_bindgen]
pub fn poset(n: &str, h: &str) -> String {
    to_json(poset_value(n, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_listed() {
        let v = presets_value();
        assert_eq!(v.as_array().unwrap().len(), PRESETS.len());
        assert_eq!(v[2]["frame"], true);
        assert_eq!(v[5]["inverse"], false);
    }

    #[test]
    fn lambda_on_two_chains() {
        let v = lambda_value("SL2", "SL2", 2).unwrap();
        assert_eq!(v["actions"].as_array().unwrap().len(), 3);
        assert_eq!(v["carrier"].as_array().unwrap().len(), 3);
        assert!(lambda_value("R2", "SL2", 0).is_err());
        assert!(lambda_value("SL2", "SL2", 9).is_err());
    }

    #[test]
    fn glueing_of_identity() {
        let v = glue_value("SL2", "SL2", &[0, 1]).unwrap();
        assert_eq!(v["carrier"], json!(["(1,1)", "(0,1)", "(0,0)"]));
        assert_eq!(v["lambda_agrees"], true);
        assert!(glue_value("C2", "SL2", &[0, 1]).is_err());
    }

    #[test]
    fn poset_on_two_chains() {
        let v = poset_value("SL2", "SL2").unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 3);
        assert_eq!(v["edges"], json!([[1, 0], [2, 0]]));
        assert_eq!(v["nodes"][0]["rank"], 1);
        assert!(to_json(poset_value("SL3", "B2")).contains("error"));
    }
}
