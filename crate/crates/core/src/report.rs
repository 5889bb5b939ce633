//! Report rendering: fixed-width text tables or a single JSON object.

use serde::Serialize;
use serde_json::{json, Value};

use crate::chartab::{CharacterTable, ClassFunction};
use crate::cyclotomic::Cyclotomic;
use crate::groupfile::LoadedGroup;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

/// `{conductor, terms: [[exponent, numerator, denominator], ...], display}`.
pub fn cyclotomic_json(c: &Cyclotomic) -> Value {
    let terms: Vec<Value> = c.to_triples().into_iter().map(|(e, n, d)| json!([e, n, d])).collect();
    json!({ "conductor": c.conductor(), "terms": terms, "display": c.to_string() })
}

pub fn values_json(chi: &ClassFunction) -> Vec<Value> {
    chi.values().iter().map(cyclotomic_json).collect()
}

pub fn group_json(g: &LoadedGroup) -> Value {
    let t = &g.group;
    let normals: Vec<Value> = g
        .normals
        .iter()
        .map(|(name, s)| json!({ "name": name, "order": s.order() }))
        .collect();
    json!({
        "name": g.file.name,
        "order": t.order(),
        "exponent": t.exponent(),
        "classes": t.classes().len(),
        "normal_subgroups": normals,
    })
}

/// Degree and values of `θ`, so that a θ index can be audited.
pub fn theta_json(index: Option<usize>, theta: &ClassFunction) -> Value {
    json!({
        "index": index,
        "degree": theta.degree().to_string(),
        "values": values_json(theta),
    })
}

pub fn theta_line(index: Option<usize>, theta: &ClassFunction) -> String {
    let vals: Vec<String> = theta.values().iter().map(ToString::to_string).collect();
    let index = index.map_or_else(|| "?".to_string(), |i| i.to_string());
    format!("theta[{index}] degree {} values [{}]", theta.degree(), vals.join(", "))
}

pub fn class_header(chars: &CharacterTable) -> Vec<Value> {
    let g = chars.group();
    let cl = g.classes();
    (0..cl.len())
        .map(|c| json!({ "class": c, "order": cl.element_order(c), "size": cl.size(c), "rep": cl.rep(c) }))
        .collect()
}

pub fn chartab_json(chars: &CharacterTable) -> Value {
    let rows: Vec<Value> = chars
        .irreducibles()
        .iter()
        .enumerate()
        .map(|(i, chi)| {
            json!({
                "index": i,
                "degree": chi.degree().to_string(),
                "indicator": chi.fs_indicator().to_string(),
                "values": values_json(chi),
            })
        })
        .collect();
    json!({ "conductor": chars.conductor(), "classes": class_header(chars), "irreducibles": rows })
}

pub fn chartab_text(chars: &CharacterTable) -> String {
    let cl = chars.group().classes();
    let mut headers = vec!["".to_string(), "ind".to_string()];
    headers.extend((0..cl.len()).map(|c| format!("{}{}", cl.element_order(c), class_letter(chars, c))));
    let mut sizes = vec!["size".to_string(), String::new()];
    sizes.extend((0..cl.len()).map(|c| cl.size(c).to_string()));
    let mut rows = vec![sizes];
    for (i, chi) in chars.irreducibles().iter().enumerate() {
        let mut r = vec![format!("X.{i}"), indicator_symbol(chi)];
        r.extend(chi.values().iter().map(ToString::to_string));
        rows.push(r);
    }
    table(&headers, &rows)
}

/// `a`, `b`, ... numbering the classes of one element order.
fn class_letter(chars: &CharacterTable, c: usize) -> String {
    let cl = chars.group().classes();
    let k = (0..c).filter(|&d| cl.element_order(d) == cl.element_order(c)).count();
    let mut s = String::new();
    let mut k = k;
    loop {
        s.insert(0, (b'a' + (k % 26) as u8) as char);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s
}

fn indicator_symbol(chi: &ClassFunction) -> String {
    match chi.fs_indicator().is_rational_integer() {
        Some(1) => "+".into(),
        Some(-1) => "-".into(),
        Some(0) => "o".into(),
        _ => "?".into(),
    }
}

/// Left-aligned fixed-width table.
pub fn table<S: AsRef<str>>(headers: &[S], rows: &[Vec<String>]) -> String {
    let cols = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.as_ref().chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut out = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            out.push_str(cell);
            if i + 1 < cols {
                out.push_str(&" ".repeat(w - cell.chars().count() + 2));
            }
        }
        out.trim_end().to_string()
    };
    let mut out = line(headers.iter().map(AsRef::as_ref).collect());
    out.push('\n');
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&line(rule.iter().map(String::as_str).collect()));
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

/// A finished command result.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: Vec<String>,
    pub group: Option<Value>,
    pub payload: Value,
    pub text: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let doc = StructuredReport {
                    engine: "clifford-count",
                    version: ENGINE_VERSION,
                    command: &self.command,
                    group: self.group.as_ref(),
                    result: &self.payload,
                };
                let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = format!("clifford-count {ENGINE_VERSION}: {}\n", self.command.join(" "));
                if let Some(g) = &self.group {
                    s.push_str(&format!(
                        "group {} order {} exponent {} classes {}\n",
                        g["name"].as_str().unwrap_or("?"),
                        g["order"],
                        g["exponent"],
                        g["classes"]
                    ));
                }
                s.push('\n');
                s.push_str(&self.text);
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }
}

#[derive(Serialize)]
struct StructuredReport<'a> {
    engine: &'static str,
    version: &'static str,
    command: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<&'a Value>,
    result: &'a Value,
}
