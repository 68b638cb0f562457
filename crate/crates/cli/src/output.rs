use crate::args::Format;
use mlcm_core::verify::ValidationReport;
use serde_json::{json, Value};
use std::fmt::Write;

/// Fixed notation with `digits` significant digits for moderate magnitudes,
/// scientific otherwise.
pub fn number(v: f64, full: bool) -> String {
    if full {
        return format!("{v:.16e}");
    }
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exponent = v.abs().log10().floor() as i32;
    if (-5..15).contains(&exponent) {
        let decimals = (9 - exponent).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.9e}")
    }
}

pub fn error_estimate(v: f64, full: bool) -> String {
    if full {
        format!("{v:.16e}")
    } else {
        format!("{v:.3e}")
    }
}

#[derive(Debug, Clone)]
pub struct Row {
    pub x: f64,
    pub value: f64,
    pub error_estimate: f64,
    pub method: String,
}

pub fn rows(rows: &[Row], format: Format, full: bool, meta: Value) -> String {
    match format {
        Format::Plain => {
            let mut s = String::new();
            for r in rows {
                let _ = writeln!(
                    s,
                    "{} {} {} {}",
                    number(r.x, full),
                    number(r.value, full),
                    error_estimate(r.error_estimate, full),
                    r.method
                );
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("x,value,error_estimate,method\n");
            for r in rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    number(r.x, full),
                    number(r.value, full),
                    error_estimate(r.error_estimate, full),
                    r.method
                );
            }
            s
        }
        Format::Json => {
            let data: Vec<Value> = rows
                .iter()
                .map(|r| json!({"x": r.x, "value": r.value, "error_estimate": r.error_estimate, "method": r.method}))
                .collect();
            pretty(json!({"meta": meta, "data": data}))
        }
    }
}

pub fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values always serialize");
    s.push('\n');
    s
}

fn case_inputs(c: &mlcm_core::verify::CaseRecord, full: bool) -> String {
    c.inputs
        .iter()
        .map(|(k, v)| format!("{k}={}", number(*v, full)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn reports(reports: &[ValidationReport], format: Format, full: bool, meta: Value) -> String {
    match format {
        Format::Plain => {
            let mut s = String::new();
            for r in reports {
                let verdict = if r.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "{}: {verdict} ({} cases, tolerance {}, {})",
                    r.suite_name,
                    r.cases.len(),
                    error_estimate(r.tolerance, full),
                    r.metric
                );
                if let Some(w) = r.worst() {
                    let d = w
                        .max_discrepancy
                        .map_or("route failed".to_string(), |d| error_estimate(d, full));
                    let _ = writeln!(s, "  worst: {} discrepancy {d}", case_inputs(w, full));
                }
                for c in &r.checks {
                    let verdict = if c.passed { "ok" } else { "FAIL" };
                    let _ = writeln!(
                        s,
                        "  {}: {} (limit {}) {verdict}",
                        c.name,
                        error_estimate(c.value, full),
                        error_estimate(c.tolerance, full)
                    );
                }
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("suite,inputs,max_discrepancy,tolerance,passed\n");
            for r in reports {
                for c in &r.cases {
                    let d = c
                        .max_discrepancy
                        .map_or(String::new(), |d| error_estimate(d, full));
                    let _ = writeln!(
                        s,
                        "{},{},{d},{},{}",
                        r.suite_name,
                        case_inputs(c, full),
                        error_estimate(c.tolerance, full),
                        c.passed
                    );
                }
            }
            s
        }
        Format::Json => {
            let report = if reports.len() == 1 {
                serde_json::to_value(&reports[0])
            } else {
                serde_json::to_value(reports)
            }
            .expect("reports serialize");
            pretty(json!({"meta": meta, "report": report}))
        }
    }
}
