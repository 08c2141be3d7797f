//! Bindings behind `www/index.html`.  Each export has a plain Rust twin
//! returning `Result<_, String>` so the logic is testable off the browser.

use serde_json::json;
use toeplitz_sym::io::symbol_from_json;
use toeplitz_sym::operators::commutator_section;
use toeplitz_sym::symbol::mobius;
use toeplitz_sym::symmetry::{clambda_symmetry_test, uet_family_test};
use toeplitz_sym::winding::{mobius_family_index, mobius_family_witness, nowhere_winding_check, CurveSamples};
use toeplitz_sym::C64;
use wasm_bindgen::prelude::*;

const MAX_SECTION: usize = 128;

/// Curve `z + conj(q phi_b(z))` as interleaved `x, y` samples.
pub fn family_curve(q: C64, b: C64, grid: usize) -> Result<Vec<f64>, String> {
    let curve = CurveSamples::from_fn(|z| z + (q * mobius(b, z)).conj(), grid).map_err(|e| e.to_string())?;
    Ok(curve.points().iter().flat_map(|p| [p.re, p.im]).collect())
}

/// Verdict for the family, the witness point and its index when not symmetric.
pub fn family_report(q: C64, b: C64) -> Result<String, String> {
    let verdict = uet_family_test(q, b).map_err(|e| e.to_string())?;
    let mut out = json!({ "gap": (q * b - b.conj()).norm(), "verdict": verdict });
    if !verdict.is_symmetric() {
        let s = mobius_family_witness(q, b);
        out["witness"] = json!([s.re, s.im]);
        out["index"] = json!(mobius_family_index(q, b, s).map_err(|e| e.to_string())?);
    } else {
        let curve = CurveSamples::from_fn(|z| z + (q * mobius(b, z)).conj(), 4096).map_err(|e| e.to_string())?;
        out["sweep"] = json!(nowhere_winding_check(&curve, 41));
    }
    Ok(out.to_string())
}

/// `C_lambda` verdict for a symbol given as `{"coeffs": [[n, re, im], ...]}`.
pub fn symbol_verdict(symbol: &str) -> Result<String, String> {
    let phi = symbol_from_json(symbol).map_err(|e| e.to_string())?;
    if phi.is_zero() {
        return Err("symbol has no nonzero coefficients".into());
    }
    let v = clambda_symmetry_test(&phi);
    Ok(json!({ "bandwidth": phi.bandwidth(), "verdict": v }).to_string())
}

/// Moduli of `[T_phi^*, T_phi]` on the `n`-section, row-major, followed by
/// the real and imaginary part of its trace.
pub fn commutator_moduli(symbol: &str, n: usize) -> Result<Vec<f64>, String> {
    if n > MAX_SECTION {
        return Err(format!("section size is capped at {MAX_SECTION}"));
    }
    let phi = symbol_from_json(symbol).map_err(|e| e.to_string())?;
    let c = commutator_section(&phi, n).map_err(|e| e.to_string())?;
    let mut out: Vec<f64> = (0..n).flat_map(|j| (0..n).map(move |k| (j, k))).map(|(j, k)| c.get(j, k).norm()).collect();
    let t = c.trace();
    out.extend([t.re, t.im]);
    Ok(out)
}

#[wasm_bindgen(js_name = familyCurve)]
pub fn family_curve_js(q_re: f64, q_im: f64, b_re: f64, b_im: f64, grid: usize) -> Result<Vec<f64>, JsValue> {
    family_curve(C64::new(q_re, q_im), C64::new(b_re, b_im), grid).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = familyReport)]
pub fn family_report_js(q_re: f64, q_im: f64, b_re: f64, b_im: f64) -> Result<String, JsValue> {
    family_report(C64::new(q_re, q_im), C64::new(b_re, b_im)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = symbolVerdict)]
pub fn symbol_verdict_js(symbol: &str) -> Result<String, JsValue> {
    symbol_verdict(symbol).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = commutatorModuli)]
pub fn commutator_moduli_js(symbol: &str, n: usize) -> Result<Vec<f64>, JsValue> {
    commutator_moduli(symbol, n).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_has_one_point_per_sample() {
        let pts = family_curve(C64::new(1.0, 0.0), C64::new(0.3, 0.0), 512).unwrap();
        assert_eq!(pts.len(), 1024);
        assert!(family_curve(C64::new(1.0, 0.0), C64::new(0.3, 0.0), 8).is_err());
    }

    #[test]
    fn family_report_distinguishes_the_symmetric_stratum() {
        let b = C64::new(0.3, 0.4);
        let sym: serde_json::Value = serde_json::from_str(&family_report(b.conj() / b, b).unwrap()).unwrap();
        assert_eq!(sym["verdict"]["status"], "symmetric");
        assert_eq!(sym["sweep"]["nowhere_winding"], true);
        let not: serde_json::Value = serde_json::from_str(&family_report(C64::new(1.0, 0.0), b).unwrap()).unwrap();
        assert_eq!(not["verdict"]["status"], "not_symmetric");
        assert_eq!(not["index"], 1);
    }

    #[test]
    fn verdict_and_commutator() {
        let v: serde_json::Value = serde_json::from_str(&symbol_verdict(r#"{"coeffs":[[1,1,0],[-1,0,1]]}"#).unwrap()).unwrap();
        assert_eq!(v["verdict"]["status"], "symmetric");
        assert!(symbol_verdict("{}").is_err());
        // [T_z^*, T_z] is the rank-one projection onto constants
        let m = commutator_moduli(r#"{"coeffs":[[1,1,0]]}"#, 4).unwrap();
        assert_eq!(m.len(), 18);
        assert!((m[0] - 1.0).abs() < 1e-15 && m[1..16].iter().all(|x| *x < 1e-15));
        assert!((m[16] - 1.0).abs() < 1e-15);
        assert!(commutator_moduli(r#"{"coeffs":[[1,1,0]]}"#, 1000).is_err());
    }
}
