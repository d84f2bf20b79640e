//! Output formatting: 10-significant-digit floats, small-rational
//! annotations, and JSON assembly for witnesses.

use serde_json::{json, Value};
use setpair::cuts::Witness;
use setpair::SetPair;

/// Round to 10 significant digits so printed values are stable across runs.
pub fn round_sig10(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.9e}").parse().expect("scientific float round-trips")
}

/// JSON number carrying the rounded value.
pub fn json_value(v: f64) -> Value {
    match serde_json::Number::from_f64(round_sig10(v)) {
        Some(n) => Value::Number(n),
        None => Value::String(v.to_string()),
    }
}

/// `p/q` with the smallest `q <= 1000` within 1e-9 of `v`, if any.
pub fn rational_hint(v: f64) -> Option<String> {
    if !v.is_finite() {
        return None;
    }
    for q in 1..=1000i64 {
        let p = (v * q as f64).round();
        if (v - p / q as f64).abs() <= 1e-9 && p.abs() < 1e15 {
            return Some(format!("{}/{}", p as i64, q));
        }
    }
    None
}

/// Attach `value` (rounded) and, when close to a small rational,
/// `value_rational` to a JSON object.
pub fn put_value(obj: &mut serde_json::Map<String, Value>, key: &str, v: f64) {
    obj.insert(key.to_string(), json_value(v));
    if let Some(r) = rational_hint(v) {
        obj.insert(format!("{key}_rational"), Value::String(r));
    }
}

pub fn pair_json(p: &SetPair) -> Value {
    json!({ "a": p.a().labels(), "b": p.b().labels() })
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        // 2-cut witnesses print as the pair (S, S^c) so they can be re-fed
        // to `eval --pair` uniformly.
        Witness::Set(s) => json!({ "a": s.labels(), "b": s.complement().labels() }),
        Witness::Pair(p) => pair_json(p),
        Witness::Triple([a, b, c]) => {
            json!({ "a": a.labels(), "b": b.labels(), "c": c.labels() })
        }
        Witness::Partition(p) => {
            json!({ "parts": p.parts().iter().map(|s| s.labels()).collect::<Vec<_>>() })
        }
    }
}
