//! Deterministic JSON and CSV emission.
//!
//! Numbers are printed with 17 significant digits (`{:.16e}`), enough for
//! bit-exact f64 round-trips in any language; non-finite values become the
//! strings "inf"/"-inf"/"nan" in JSON and bare words in CSV. Line endings
//! are LF, decimals use `.`, and nothing depends on the locale or the
//! clock, so identical invocations produce byte-identical files.

use std::fmt::Write as _;

/// 17-significant-digit float, or a bare word for non-finite values.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// JSON value text for a float (non-finite values are quoted).
pub fn json_num(x: f64) -> String {
    if x.is_finite() {
        num(x)
    } else {
        format!("\"{}\"", num(x))
    }
}

pub fn json_opt_num(x: Option<f64>) -> String {
    match x {
        Some(v) => json_num(v),
        None => "null".into(),
    }
}

pub fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Minimal ordered JSON object/array builder.
pub enum Json {
    Raw(String),
    Object(Vec<(&'static str, Json)>),
    Array(Vec<Json>),
}

impl Json {
    pub fn num(x: f64) -> Json {
        Json::Raw(json_num(x))
    }

    pub fn opt_num(x: Option<f64>) -> Json {
        Json::Raw(json_opt_num(x))
    }

    pub fn str(s: &str) -> Json {
        Json::Raw(json_str(s))
    }

    pub fn usize(x: usize) -> Json {
        Json::Raw(x.to_string())
    }

    pub fn bool(x: bool) -> Json {
        Json::Raw(x.to_string())
    }

    pub fn render(&self, out: &mut String, indent: usize) {
        match self {
            Json::Raw(s) => out.push_str(s),
            Json::Object(fields) => {
                out.push('{');
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    for _ in 0..indent + 2 {
                        out.push(' ');
                    }
                    out.push_str(&json_str(key));
                    out.push_str(": ");
                    value.render(out, indent + 2);
                }
                if !fields.is_empty() {
                    out.push('\n');
                    for _ in 0..indent {
                        out.push(' ');
                    }
                }
                out.push('}');
            }
            Json::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    item.render(out, indent);
                }
                out.push(']');
            }
        }
    }

    pub fn to_string_pretty(&self) -> String {
        let mut out = String::new();
        self.render(&mut out, 0);
        out.push('\n');
        out
    }
}

/// The metadata object every output carries.
pub fn meta(command: &str, seed: Option<u64>, tol_matrix: f64, tol_value: f64) -> Json {
    let mut fields = vec![
        ("version", Json::str(env!("CARGO_PKG_VERSION"))),
        ("command", Json::str(command)),
    ];
    if let Some(seed) = seed {
        fields.push(("seed", Json::Raw(seed.to_string())));
    }
    fields.push((
        "tolerances",
        Json::Object(vec![
            ("matrix", Json::num(tol_matrix)),
            ("value", Json::num(tol_value)),
        ]),
    ));
    Json::Object(fields)
}

/// `# ergoswitch <version> command=... key=value ...` comment line carrying
/// the same metadata on CSV outputs.
pub fn csv_meta_line(command: &str, extras: &[(&str, String)]) -> String {
    let mut line = format!(
        "# ergoswitch {} command={command}",
        env!("CARGO_PKG_VERSION")
    );
    for (key, value) in extras {
        let _ = write!(line, " {key}={value}");
    }
    line.push('\n');
    line
}
