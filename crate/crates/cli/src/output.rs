//! Report rendering. Floats always print with 17 significant digits so
//! identical inputs give byte-identical reports.

use std::fmt::Write;

use serde_json::Value;

fn number(n: &serde_json::Number) -> String {
    match (n.as_i64(), n.as_u64()) {
        (Some(i), _) if !n.is_f64() => i.to_string(),
        (_, Some(u)) if !n.is_f64() => u.to_string(),
        _ => float(n.as_f64().unwrap_or(f64::NAN)),
    }
}

pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // JSON has no non-finite numbers
        format!("\"{x}\"")
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "null".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => number(n),
        Value::String(s) => Value::String(s.clone()).to_string(),
        _ => unreachable!(),
    }
}

fn json_into(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        // keep [re, im] pairs and other flat lists on one line
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&scalar(x));
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                json_into(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", "  ".repeat(indent));
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                let _ = write!(out, "{pad}{}: ", Value::String(k.clone()));
                json_into(out, x, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", "  ".repeat(indent));
        }
        _ => out.push_str(&scalar(v)),
    }
}

pub fn to_json(v: &Value) -> String {
    let mut out = String::new();
    json_into(&mut out, v, 0);
    out.push('\n');
    out
}

fn text_into(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_scalar(x) || x.as_array().is_some_and(|a| a.iter().all(is_scalar)) {
                    let _ = writeln!(out, "{pad}{k}: {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    text_into(out, x, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_scalar(x) || x.as_array().is_some_and(|a| a.iter().all(is_scalar)) {
                    let _ = writeln!(out, "{pad}- {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    text_into(out, x, indent + 1);
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{}", inline(v));
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        _ => scalar(v),
    }
}

pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    text_into(&mut out, v, 0);
    out
}
