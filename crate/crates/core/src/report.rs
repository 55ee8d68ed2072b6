//! Shared helpers for stable machine-readable output.

use serde_json::{json, Value};

/// Version tag carried by every JSON document the CLI emits.
pub const SCHEMA_VERSION: u32 = 1;

const DECIMALS: i32 = 12;

/// A float rounded to a fixed number of decimals, so that equal inputs
/// always print identically. Non-finite values become strings.
pub fn fixed(v: f64) -> Value {
    if !v.is_finite() {
        return json!(v.to_string());
    }
    let scale = 10f64.powi(DECIMALS);
    let r = (v * scale).round() / scale;
    if r.is_finite() {
        json!(if r == 0.0 { 0.0 } else { r })
    } else {
        json!(v)
    }
}

/// Adds the schema version to a JSON object.
pub fn versioned(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    v
}
