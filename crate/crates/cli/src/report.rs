//! The machine-readable report, schema `df-report/1`.
//!
//! Exponents are integers and every digit or real value is a string, so a
//! report survives a JSON round trip unchanged.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "df-report/1";

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    /// The arguments after the program name, verbatim.
    pub echo: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub approximations: Vec<ApproxRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub digits: Vec<DigitRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub slopes: Vec<SlopeRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub numbers: Vec<NumberRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub caches: Vec<CacheRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

impl Report {
    pub fn new(command: &str, echo: Vec<String>) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            echo,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxRecord {
    pub method: String,
    pub index: u64,
    pub terms: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    /// `absolute` or `relative`.
    pub error_scale: String,
    pub apriori_error_log10: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured_error_log10: Option<i64>,
    /// Set when the error is below what the reference resolves; the
    /// exponent is then that floor.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub below_floor: bool,
    pub precision_bits: u64,
    /// Certified digits of the value, truncated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitRecord {
    pub target: String,
    pub position: u64,
    pub base: u32,
    pub digit: String,
    pub stable: bool,
    pub method: String,
    pub index: u64,
    pub precision_bits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeRecord {
    pub method: String,
    /// Decimal text, six places.
    pub slope: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub within_5_percent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberRecord {
    pub kind: String,
    pub index: u64,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub kind: String,
    pub path: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_index: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

fn table(out: &mut String, header: &[&str], rows: Vec<Vec<String>>) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(header.to_vec())).unwrap();
    for row in &rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect())).unwrap();
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_else(|| "-".into())
}

/// Human-readable rendering.
pub fn render_table(r: &Report) -> String {
    let mut out = String::new();
    if !r.approximations.is_empty() {
        let rows = r
            .approximations
            .iter()
            .map(|a| {
                vec![
                    a.method.clone(),
                    a.index.to_string(),
                    a.terms.to_string(),
                    opt(&a.variant),
                    a.apriori_error_log10.to_string(),
                    match a.measured_error_log10 {
                        Some(e) if a.below_floor => format!("<{e}"),
                        other => opt(&other),
                    },
                    a.precision_bits.to_string(),
                    opt(&a.value),
                ]
            })
            .collect();
        table(
            &mut out,
            &["method", "n", "terms", "variant", "apriori", "measured", "bits", "value"],
            rows,
        );
    }
    if !r.digits.is_empty() {
        let rows = r
            .digits
            .iter()
            .map(|d| {
                vec![
                    d.target.clone(),
                    d.position.to_string(),
                    d.base.to_string(),
                    d.digit.clone(),
                    d.stable.to_string(),
                    d.method.clone(),
                    d.index.to_string(),
                    d.precision_bits.to_string(),
                ]
            })
            .collect();
        table(
            &mut out,
            &["target", "position", "base", "digit", "stable", "method", "index", "bits"],
            rows,
        );
    }
    if !r.slopes.is_empty() {
        let rows = r
            .slopes
            .iter()
            .map(|s| vec![s.method.clone(), s.slope.clone(), opt(&s.expected), opt(&s.within_5_percent)])
            .collect();
        table(&mut out, &["method", "slope", "expected", "within 5%"], rows);
    }
    if !r.numbers.is_empty() {
        let rows = r
            .numbers
            .iter()
            .map(|n| vec![n.kind.clone(), n.index.to_string(), n.value.clone()])
            .collect();
        table(&mut out, &["kind", "index", "value"], rows);
    }
    if !r.caches.is_empty() {
        let rows = r
            .caches
            .iter()
            .map(|c| vec![c.kind.clone(), c.status.clone(), opt(&c.max_index), c.path.clone(), opt(&c.detail)])
            .collect();
        table(&mut out, &["kind", "status", "max index", "path", "detail"], rows);
    }
    if !r.checks.is_empty() {
        let rows = r
            .checks
            .iter()
            .map(|c| {
                vec![
                    if c.passed { "PASS" } else { "FAIL" }.to_string(),
                    c.name.clone(),
                    c.detail.clone(),
                ]
            })
            .collect();
        table(&mut out, &["result", "check", "detail"], rows);
    }
    for w in &r.warnings {
        writeln!(out, "warning: {w}").unwrap();
    }
    if let Some(e) = &r.error {
        writeln!(out, "error ({}): {}", e.kind, e.message).unwrap();
    }
    if let Some(us) = r.elapsed_us {
        writeln!(out, "elapsed: {:.3} s", us as f64 / 1e6).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("approx", vec!["approx".into(), "--n".into(), "10".into()]);
        r.approximations.push(ApproxRecord {
            method: "euler_basic".into(),
            index: 10,
            terms: 0,
            variant: None,
            error_scale: "absolute".into(),
            apriori_error_log10: -10,
            measured_error_log10: Some(-11),
            below_floor: false,
            precision_bits: 300,
            value: Some("3.14159265".into()),
        });
        r.slopes.push(SlopeRecord {
            method: "ratio_euler_sq".into(),
            slope: "-0.954243".into(),
            expected: Some("-0.954243".into()),
            within_5_percent: Some(true),
        });
        r.elapsed_us = Some(1234);
        let text = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.contains("\"schema\":\"df-report/1\""));
    }

    #[test]
    fn table_has_headers() {
        let mut r = Report::new("numbers", vec![]);
        r.numbers.push(NumberRecord {
            kind: "euler".into(),
            index: 4,
            value: "5".into(),
        });
        let t = render_table(&r);
        assert!(t.starts_with("kind"));
        assert!(t.contains("euler  4      5"));
    }
}
