use serde_json::{json, Value};
use superwalk_core::counting::{Mismatch, TheoremOutcome};
use superwalk_core::oracle::WalkRecord;
use superwalk_core::spectral::{EvolvedState, HeatKernel, SuperHeatKernel};
use superwalk_core::{Graph, VerificationReport};

use super::matrix::{float_value, format_f64, matrix_json_value, write_matrix, MatrixFormat};
use super::FormatError;

/// One JSON line: `{"kind", "start", "steps": [{"via", "to", "sign"}], "sign"}`.
pub fn walk_record_json(g: &Graph, record: &WalkRecord) -> String {
    let steps: Vec<Value> = record
        .steps()
        .iter()
        .map(|s| json!({ "via": s.via.label(g), "to": s.to.label(g), "sign": s.sign.value() }))
        .collect();
    json!({
        "kind": record.kind().name(),
        "start": record.start().label(g),
        "steps": steps,
        "sign": record.sign().value(),
    })
    .to_string()
}

fn mismatch_value(m: &Mismatch) -> Value {
    json!({
        "from": m.from,
        "to": m.to,
        "length": m.length,
        "matrix": m.matrix_value.to_string(),
        "oracle": m.oracle_value.to_string(),
    })
}

fn outcome_value(o: &TheoremOutcome) -> Value {
    json!({
        "theorem": o.theorem.name(),
        "matrix": o.theorem.matrix_name(),
        "status": if o.passed() { "pass" } else { "fail" },
        "entries_checked": o.entries_checked,
        "mismatch": o.mismatch.as_ref().map(mismatch_value),
    })
}

fn report_value(r: &VerificationReport) -> Value {
    json!({
        "vertices": r.vertices,
        "edges": r.edges,
        "max_length": r.max_length,
        "flipped_edge": r.flipped_edge,
        "pass": r.passed(),
        "theorems": r.outcomes.iter().map(outcome_value).collect::<Vec<_>>(),
    })
}

pub fn report_json(r: &VerificationReport) -> String {
    report_value(r).to_string()
}

/// A list of reports (as produced by a flip sweep) under one verdict.
pub fn reports_json(reports: &[VerificationReport]) -> String {
    json!({
        "pass": reports.iter().all(VerificationReport::passed),
        "reports": reports.iter().map(report_value).collect::<Vec<_>>(),
    })
    .to_string()
}

fn kernel_value(k: &HeatKernel) -> Value {
    let mut v = matrix_json_value(&k.matrix);
    let obj = v.as_object_mut().expect("matrix value is an object");
    obj.insert("truncation_order".into(), json!(k.truncation_order));
    obj.insert("remainder_bound".into(), float_value(k.remainder_bound));
    v
}

/// Both heat kernels with their truncation metadata.
pub fn kernel_json(k: &SuperHeatKernel) -> String {
    json!({
        "t": float_value(k.even.t),
        "even": kernel_value(&k.even),
        "odd": kernel_value(&k.odd),
    })
    .to_string()
}

/// Both heat kernels as CSV blocks, each preceded by a `#` metadata line.
pub fn kernel_csv(k: &SuperHeatKernel) -> String {
    let mut out = String::new();
    for (name, kernel) in [("even", &k.even), ("odd", &k.odd)] {
        out.push_str(&format!(
            "# kernel={name} t={} truncation_order={} remainder_bound={}\n",
            format_f64(kernel.t),
            kernel.truncation_order,
            format_f64(kernel.remainder_bound)
        ));
        out.push_str(&write_matrix(&kernel.matrix, MatrixFormat::Csv));
    }
    out
}

fn state_labels(g: &Graph) -> Vec<&str> {
    g.vertex_labels()
        .iter()
        .map(String::as_str)
        .chain(g.edge_ids().map(|e| g.edge_label(e)))
        .collect()
}

pub fn evolved_state_json(g: &Graph, s: &EvolvedState) -> String {
    json!({
        "t": float_value(s.t),
        "truncation_order": s.truncation_order,
        "remainder_bound": float_value(s.remainder_bound),
        "labels": state_labels(g),
        "state": s.state.iter().map(|&x| float_value(x)).collect::<Vec<_>>(),
    })
    .to_string()
}

pub fn evolved_state_csv(g: &Graph, s: &EvolvedState) -> String {
    let mut out = format!(
        "# t={} truncation_order={} remainder_bound={}\nlabel,value\n",
        format_f64(s.t),
        s.truncation_order,
        format_f64(s.remainder_bound)
    );
    for (label, x) in state_labels(g).into_iter().zip(&s.state) {
        out.push_str(&format!("{label},{}\n", format_f64(*x)));
    }
    out
}

/// Reads a state over vertices ⊕ edges: either a bare JSON array of numbers
/// or an object with a `state` array (the evolved-state output format).
pub fn parse_state(text: &str) -> Result<Vec<f64>, FormatError> {
    let doc: Value = serde_json::from_str(text)?;
    let items = match &doc {
        Value::Array(items) => items,
        Value::Object(obj) => obj
            .get("state")
            .and_then(Value::as_array)
            .ok_or_else(|| FormatError::State("object must contain a `state` array".into()))?,
        _ => return Err(FormatError::State("expected an array of numbers".into())),
    };
    items
        .iter()
        .map(|v| {
            v.as_f64()
                .ok_or_else(|| FormatError::State(format!("`{v}` is not a number")))
        })
        .collect()
}
