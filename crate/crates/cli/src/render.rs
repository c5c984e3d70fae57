use std::fmt::Write as _;

use mapspace_core::{BettiTable, VerificationReport};
use serde_json::{json, Map, Value};

use crate::failure::Failure;

fn header(table: &BettiTable) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("space".into(), json!(table.space.variant.to_string()));
    m.insert("n".into(), json!(table.space.n));
    m.insert("field".into(), json!(table.space.field.label()));
    m.insert("grading".into(), json!(table.grading.to_string()));
    m.insert("cutoff".into(), json!(table.cutoff));
    m
}

pub fn json(table: &BettiTable, series: bool) -> String {
    let mut root = header(table);
    let mut components = Map::new();
    for &k in table.components() {
        let column: Map<String, Value> = table
            .column(k)
            .into_iter()
            .map(|(d, v)| (d.to_string(), json!(v)))
            .collect();
        components.insert(k.to_string(), Value::Object(column));
    }
    root.insert("components".into(), Value::Object(components));
    if series {
        let s: Map<String, Value> = table
            .components()
            .iter()
            .map(|&k| (k.to_string(), json!(table.poincare_series(k).to_string())))
            .collect();
        root.insert("series".into(), Value::Object(s));
    }
    let mut out = Value::Object(root).to_string();
    out.push('\n');
    out
}

pub fn csv(table: &BettiTable) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::io("<csv>", std::io::Error::other(e));
    w.write_record(["component", "degree", "dimension"]).map_err(io)?;
    for (k, d, v) in table.entries() {
        w.write_record([k.to_string(), d.to_string(), v.to_string()])
            .map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::io("<csv>", std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

pub fn text(table: &BettiTable, series: bool, label: &str) -> String {
    let mut out = format!(
        "{label} space={} n={} field={} grading={} cutoff={}\n",
        table.space.variant,
        table.space.n,
        table.space.field.label(),
        table.grading,
        table.cutoff
    );
    for &k in table.components() {
        let cells: Vec<String> = table.column(k).iter().map(|(d, v)| format!("{d}:{v}")).collect();
        let _ = writeln!(out, "component {k}: {}", cells.join(" "));
        if series {
            let _ = writeln!(out, "series {k}: {}", table.poincare_series(k));
        }
    }
    out
}

pub fn report_text(report: &VerificationReport, details: bool) -> String {
    let mut out = format!("{report}\n");
    if details {
        for line in &report.details {
            let _ = writeln!(out, "  {line}");
        }
    }
    out
}

pub fn report_json(report: &VerificationReport, details: bool) -> String {
    let mut m = Map::new();
    m.insert("check".into(), json!(report.check));
    m.insert("parameters".into(), json!(report.parameters));
    m.insert("verdict".into(), json!(report.verdict.to_string()));
    m.insert("witness".into(), json!(report.witness));
    if details {
        m.insert("details".into(), json!(report.details));
    }
    let mut out = Value::Object(m).to_string();
    out.push('\n');
    out
}
