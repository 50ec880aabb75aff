//! WebAssembly bindings for the browser demo: three small computations that
//! return pretty-printed JSON reports.
//!
//! The plain functions are what the tests call; the `wasm_bindgen` exports
//! only convert errors into JavaScript exceptions.

use theta_core::pairs::{build_pair, degree_j, DualPairDescriptor, Family};
use theta_core::spectra::{theta_character_spectrum, CharacterDatum};
use theta_core::verifier::verify_howe_image;
use wasm_bindgen::prelude::*;

/// Largest cutoff the page accepts; larger spectra are slow in the browser.
pub const MAX_CUTOFF: u32 = 24;

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

/// K̃-types of the lift of a character, one line per type.
pub fn spectrum_report(pair: &str, character: &str, cutoff: u32) -> Result<String, String> {
    if cutoff > MAX_CUTOFF {
        return Err(format!("cutoff {cutoff} is above the demo limit {MAX_CUTOFF}"));
    }
    let pair: DualPairDescriptor = pair.parse().map_err(|e| format!("{e}"))?;
    let d = CharacterDatum::parse(pair, character).map_err(|e| e.to_string())?;
    let s = theta_character_spectrum(&d, cutoff).map_err(|e| e.to_string())?;
    let rows: Vec<serde_json::Value> = s
        .graded_entries()
        .map(|g| g.iter().map(|((deg, l), m)| serde_json::json!({ "degree": deg, "label": l.to_string(), "multiplicity": m })).collect())
        .unwrap_or_else(|| s.iter().map(|(l, m)| serde_json::json!({ "label": l.to_string(), "multiplicity": m })).collect());
    Ok(pretty(&serde_json::json!({ "pair": pair.to_string(), "char": character, "cutoff": cutoff, "types": rows })))
}

/// Howe's image check at filtration `k`.
pub fn howe_report(pair: &str, k: u32) -> Result<String, String> {
    let pair: DualPairDescriptor = pair.parse().map_err(|e| format!("{e}"))?;
    let built = build_pair(&pair).map_err(|e| e.to_string())?;
    verify_howe_image(&built, k).map(|r| pretty(&r)).map_err(|e| e.to_string())
}

/// `j(p,q)` for every admissible `(p,q)` at fixed `(r,s)`.
pub fn degree_grid(family: &str, r: u32, s: u32) -> Result<String, String> {
    let family: Family = family.parse().map_err(|e| format!("{e}"))?;
    let mut rows = Vec::new();
    for p in 0..=r {
        for q in 0..=s {
            if let Ok(j) = degree_j(family, r, s, p, q) {
                rows.push(serde_json::json!({ "p": p, "q": q, "j": j }));
            }
        }
    }
    Ok(pretty(&serde_json::json!({ "family": family.to_string(), "r": r, "s": s, "rows": rows })))
}

#[wasm_bindgen]
pub fn theta_spectrum(pair: &str, character: &str, cutoff: u32) -> Result<String, JsError> {
    spectrum_report(pair, character, cutoff).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn howe_image(pair: &str, k: u32) -> Result<String, JsError> {
    howe_report(pair, k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn transfer_degrees(family: &str, r: u32, s: u32) -> Result<String, JsError> {
    degree_grid(family, r, s).map_err(|e| JsError::new(&e))
}
