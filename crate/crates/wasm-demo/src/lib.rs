//! Browser bindings for the interactive demo page.
//!
//! Each export takes plain strings and returns a JSON string, so the page
//! stays framework-free and big integers never pass through JavaScript
//! number types. The same functions compile and run natively, which is how
//! the unit tests exercise them.

use num_traits::ToPrimitive;
use serde_json::json;
use wasm_bindgen::prelude::*;

use gapfactor::db::{Recipe, TestDatabase};
use gapfactor::factor::{try_multiplier, TestOutcome};
use gapfactor::harness::factor_with_db;
use gapfactor::yields::{fractions_of_set, tau, yield_prefix_counts};
use gapfactor::Natural;

fn err_json(message: impl std::fmt::Display) -> String {
    json!({ "ok": false, "error": message.to_string() }).to_string()
}

/// Factors `n` by scanning the database described by `recipe`; returns the
/// outcome, the winning multiplier's split, and the scan cost.
#[wasm_bindgen]
pub fn factor_info(n: &str, recipe: &str, max_scan: Option<u32>) -> String {
    let n: Natural = match n.trim().parse() {
        Ok(n) => n,
        Err(_) => return err_json("N must be a decimal integer"),
    };
    if n < Natural::from(4u32) {
        return err_json("N must be at least 4");
    }
    let recipe = match Recipe::parse(recipe.trim()) {
        Ok(r) => r,
        Err(e) => return err_json(e),
    };
    let db = match TestDatabase::from_recipe(recipe) {
        Ok(db) => db,
        Err(e) => return err_json(e),
    };
    let record = factor_with_db(&n, &db, max_scan.map(u64::from));
    if !record.success {
        return json!({
            "ok": true,
            "success": false,
            "n": n.to_string(),
            "recipe": db.recipe().to_string(),
            "cost": record.cost,
            "dbLen": db.len().to_string(),
        })
        .to_string();
    }
    let d = record.winning_d.expect("successful record has winning_d");
    let res = match try_multiplier(&n, &d) {
        Ok(TestOutcome::Factored(res)) => res,
        _ => return err_json("internal: winning multiplier did not refactor"),
    };
    json!({
        "ok": true,
        "success": true,
        "n": n.to_string(),
        "recipe": db.recipe().to_string(),
        "cost": record.cost,
        "dbLen": db.len().to_string(),
        "d": d.to_string(),
        "t": res.gap_root.to_string(),
        "u": res.split_hi.to_string(),
        "v": res.split_lo.to_string(),
        "factors": [res.factors.0.to_string(), res.factors.1.to_string()],
    })
    .to_string()
}

/// Yield of a multiplier or comma-separated multiplier set: the count plus
/// every realized fraction with a float position for plotting on the unit
/// interval.
#[wasm_bindgen]
pub fn yield_info(input: &str) -> String {
    let mut values = Vec::new();
    for token in input.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        match token.parse::<Natural>() {
            Ok(v) if v >= Natural::from(1u32) => values.push(v),
            _ => return err_json(format!("'{token}' is not a positive integer")),
        }
    }
    if values.is_empty() {
        return err_json("enter at least one multiplier");
    }
    let fractions = fractions_of_set(&values);
    let label = if values.len() == 1 {
        format!("Y({})", values[0])
    } else {
        "Y(S)".to_string()
    };
    let rendered: Vec<serde_json::Value> = fractions
        .iter()
        .map(|f| {
            let value = f.numer().to_f64().unwrap_or(f64::NAN)
                / f.denom().to_f64().unwrap_or(f64::NAN);
            json!({ "text": f.to_string(), "value": value })
        })
        .collect();
    json!({
        "ok": true,
        "label": label,
        "count": fractions.len(),
        "fractions": rendered,
    })
    .to_string()
}

/// Growth of the consecutive-database yield: `Y([1..=m])` for every
/// `m <= m_max`, together with the running divisor sum (the upper bound).
#[wasm_bindgen]
pub fn consecutive_yield_curve(m_max: u32) -> String {
    if m_max == 0 {
        return err_json("m must be at least 1");
    }
    let m_max = m_max.min(2000); // keep the page responsive
    let yields = yield_prefix_counts(m_max as u64);
    let mut tau_sums = Vec::with_capacity(m_max as usize);
    let mut acc = 0u64;
    for m in 1..=m_max as u64 {
        acc += u64::try_from(&tau(&Natural::from(m))).unwrap_or(0);
        tau_sums.push(acc);
    }
    json!({
        "ok": true,
        "mMax": m_max,
        "yields": yields,
        "tauSums": tau_sums,
    })
    .to_string()
}
