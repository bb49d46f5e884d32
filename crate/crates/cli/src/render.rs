//! Rendering: human-readable text and deterministic structured JSON.
//! Structured output serializes maps with sorted keys (serde_json's
//! default map), so identical inputs give byte-identical reports.

use serde_json::{json, Value};

use sigma_lattice::catalog::CatalogEntry;
use sigma_lattice::rational::format_rational;
use sigma_lattice::report::LawReport;
use sigma_lattice::search::Counterexample;
use sigma_lattice::sigma::SigmaField;
use sigma_lattice::space::SpaceRef;

use crate::queries::{Outcome, Ran};

pub fn field_json(f: &SigmaField) -> Value {
    json!({ "blocks": f.label_blocks() })
}

pub fn space_json(space: &SpaceRef) -> Value {
    let probs: Vec<String> = (0..space.len())
        .map(|o| format_rational(space.weight(o)))
        .collect();
    json!({ "outcomes": space.labels(), "probs": probs })
}

pub fn space_human(space: &SpaceRef) -> String {
    let parts: Vec<String> = (0..space.len())
        .map(|o| format!("{}:{}", space.label(o), format_rational(space.weight(o))))
        .collect();
    parts.join(" ")
}

pub fn report_json(r: &LawReport) -> Value {
    let checks = |cs: &[sigma_lattice::report::Check]| -> Vec<Value> {
        cs.iter()
            .map(|c| json!({ "name": c.name, "holds": c.holds }))
            .collect()
    };
    json!({
        "law": r.law,
        "hypotheses": checks(&r.hypotheses),
        "details": checks(&r.details),
        "conclusion": r.conclusion,
        "witness": r.witness,
    })
}

pub fn report_human(r: &LawReport, indent: &str) -> String {
    let mut lines = vec![format!("{indent}law {}", r.law)];
    for c in &r.hypotheses {
        lines.push(format!("{indent}  hypothesis {}: {}", c.name, c.holds));
    }
    for c in &r.details {
        lines.push(format!("{indent}  detail {}: {}", c.name, c.holds));
    }
    match r.conclusion {
        Some(v) => lines.push(format!("{indent}  conclusion: {v}")),
        None => lines.push(format!("{indent}  conclusion: not evaluated")),
    }
    if let Some(w) = &r.witness {
        lines.push(format!("{indent}  witness: {w}"));
    }
    lines.join("\n")
}

pub fn ran_json(r: &Ran) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("index".into(), json!(r.index));
    obj.insert("query".into(), json!(r.text));
    if let Some(n) = &r.name {
        obj.insert("name".into(), json!(n));
    }
    let result = match &r.outcome {
        Outcome::Field(f) => field_json(f),
        Outcome::Bool(b) => json!(b),
        Outcome::Complements { list, searched } => json!({
            "complements": list.iter().map(field_json).collect::<Vec<_>>(),
            "searched": searched.to_string(),
        }),
        Outcome::Vector(pairs) => json!({
            "values": pairs
                .iter()
                .map(|(l, v)| json!([l, format_rational(v)]))
                .collect::<Vec<_>>(),
        }),
        Outcome::Report(rep) => report_json(rep),
        Outcome::Inline(e) => {
            obj.insert("error".into(), json!(e));
            Value::Null
        }
    };
    if !result.is_null() {
        obj.insert("result".into(), result);
    }
    Value::Object(obj)
}

pub fn ran_human(r: &Ran) -> String {
    let head = match &r.name {
        Some(n) => format!("[{}] {} = {}", r.index + 1, n, r.text),
        None => format!("[{}] {}", r.index + 1, r.text),
    };
    match &r.outcome {
        Outcome::Field(f) => format!("{head} -> {}", f.render()),
        Outcome::Bool(b) => format!("{head} -> {b}"),
        Outcome::Complements { list, searched } => {
            if list.is_empty() {
                format!("{head} -> none ({searched} candidates searched)")
            } else {
                let items: Vec<String> = list.iter().map(SigmaField::render).collect();
                format!(
                    "{head} -> {} ({searched} candidates searched)",
                    items.join(", ")
                )
            }
        }
        Outcome::Vector(pairs) => {
            let items: Vec<String> = pairs
                .iter()
                .map(|(l, v)| format!("{l}: {}", format_rational(v)))
                .collect();
            format!("{head} -> [{}]", items.join(", "))
        }
        Outcome::Report(rep) => {
            format!("{head}\n{}", report_human(rep, "    "))
        }
        Outcome::Inline(e) => format!("{head} -> error: {e}"),
    }
}

pub fn eval_json(space: &SpaceRef, rans: &[Ran]) -> Value {
    json!({
        "space": space_json(space),
        "queries": rans.iter().map(ran_json).collect::<Vec<_>>(),
    })
}

pub fn eval_human(space: &SpaceRef, rans: &[Ran]) -> String {
    let mut lines = vec![format!("space: {}", space_human(space))];
    for r in rans {
        lines.push(ran_human(r));
    }
    lines.join("\n")
}

pub fn entry_json(entry: &CatalogEntry, facts: &[(String, bool)]) -> Value {
    let fields: serde_json::Map<String, Value> = entry
        .fields
        .iter()
        .map(|(n, f)| (n.clone(), field_json(f)))
        .collect();
    json!({
        "id": entry.id,
        "level": entry.level,
        "space": space_json(&entry.space),
        "fields": fields,
        "facts": facts
            .iter()
            .map(|(d, p)| json!({ "description": d, "pass": p }))
            .collect::<Vec<_>>(),
    })
}

pub fn entry_human(entry: &CatalogEntry, facts: &[(String, bool)]) -> String {
    let mut lines = Vec::new();
    match entry.level {
        Some(n) => lines.push(format!("catalog {} (level {n})", entry.id)),
        None => lines.push(format!("catalog {}", entry.id)),
    }
    lines.push(format!("space: {}", space_human(&entry.space)));
    for (n, f) in &entry.fields {
        lines.push(format!("  {n} = {}", f.render()));
    }
    lines.push("facts:".into());
    for (d, p) in facts {
        lines.push(format!(
            "  [{}] {d}",
            if *p { "pass" } else { "FAIL" }
        ));
    }
    lines.join("\n")
}

pub fn counterexample_human(cex: &Counterexample) -> String {
    let mut lines = vec![format!(
        "counterexample for {} ({} mode) at trial {} of seed {}",
        cex.instance.law, cex.mode, cex.trial, cex.seed
    )];
    if let Some(space) = cex.instance.space() {
        lines.push(format!("space: {}", space_human(space)));
    }
    lines.push(report_human(&cex.report, "  "));
    if !cex.shrink_trace.is_empty() {
        lines.push(format!("shrink: {}", cex.shrink_trace.join("; ")));
    }
    lines.join("\n")
}

/// Final serialization for structured output: pretty JSON + newline,
/// identical bytes for identical values.
pub fn to_bytes(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
