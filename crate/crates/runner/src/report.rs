//! Text and line-oriented JSON rendering of run reports.

use std::fmt::Write as _;

use premon_core::twined::ValidationReport;
use premon_core::verify::{CheckResult, DefectKind};
use serde::Serialize;

use crate::config::{ModuleSpec, RunConfig};
use crate::run::RunReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Jsonlike,
}

impl Format {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "text" => Some(Format::Text),
            "jsonlike" => Some(Format::Jsonlike),
            _ => None,
        }
    }
}

pub fn emit_report(report: &RunReport, format: Format) -> Vec<u8> {
    match format {
        Format::Text => render_text(report).into_bytes(),
        Format::Jsonlike => render_jsonlike(report).into_bytes(),
    }
}

fn round_ms(ms: f64) -> f64 {
    (ms * 1000.0).round() / 1000.0
}

#[derive(Serialize)]
struct ConfigRecord<'a> {
    record: &'static str,
    algebra: &'a str,
    modules: Vec<String>,
    #[serde(rename = "K")]
    k: String,
    gamma: String,
    checks: Vec<&'static str>,
    require_s_odd: bool,
    max_tuple_rank: usize,
}

#[derive(Serialize)]
struct ValidationRecord<'a> {
    record: &'static str,
    status: &'static str,
    checked: usize,
    issues: Vec<IssueRecord<'a>>,
}

#[derive(Serialize)]
struct IssueRecord<'a> {
    requirement: &'static str,
    code: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    module: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a str>,
    message: &'a str,
}

#[derive(Serialize)]
struct ResultRecord<'a> {
    record: &'static str,
    check_id: &'a str,
    objects: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    domain: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<&'a str>,
    gamma: &'a str,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    defect: Option<&'a [Vec<String>]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    defect_kind: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    multiplicities: Option<&'a [usize]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
    duration_ms: f64,
}

#[derive(Serialize)]
struct SummaryRecord<'a> {
    record: &'static str,
    check_id: &'a str,
    total: usize,
    pass: usize,
    fail: usize,
    error: usize,
}

#[derive(Serialize)]
struct TotalRecord {
    record: &'static str,
    total: usize,
    pass: usize,
    fail: usize,
    error: usize,
    duration_ms: f64,
}

pub fn module_labels(config: &RunConfig) -> Vec<String> {
    match config.build_modules() {
        Ok(ms) => ms.iter().map(|m| m.label().to_string()).collect(),
        Err(_) => config
            .modules
            .iter()
            .map(|m| match m {
                ModuleSpec::Gl1Weight(n) => format!("M_{n}"),
                ModuleSpec::Sl2TwoJ(j) => format!("two_j={j}"),
                ModuleSpec::File(f) => f.clone(),
            })
            .collect(),
    }
}

fn algebra_name(config: &RunConfig) -> &str {
    config.lie.name()
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("records serialize")
}

pub fn config_line(config: &RunConfig) -> String {
    json(&ConfigRecord {
        record: "config",
        algebra: algebra_name(config),
        modules: module_labels(config),
        k: config.k_text(),
        gamma: config.gamma_label(),
        checks: config.checks.iter().map(|c| c.as_str()).collect(),
        require_s_odd: config.require_s_odd,
        max_tuple_rank: config.max_tuple_rank,
    })
}

pub fn validation_line(v: &ValidationReport) -> String {
    json(&ValidationRecord {
        record: "validation",
        status: if v.passed() { "pass" } else { "error" },
        checked: v.checked.len(),
        issues: v
            .issues
            .iter()
            .map(|i| IssueRecord {
                requirement: i.requirement.as_str(),
                code: &i.code,
                module: i.module.as_deref(),
                witness: i.witness.as_deref(),
                message: &i.message,
            })
            .collect(),
    })
}

pub fn result_line(r: &CheckResult) -> String {
    json(&ResultRecord {
        record: "result",
        check_id: &r.check_id,
        objects: &r.objects,
        domain: r.domain.as_deref(),
        detail: r.detail.as_deref(),
        gamma: &r.gamma,
        status: r.status.as_str(),
        defect: r.defect.as_ref().map(|d| d.values.as_slice()),
        defect_kind: r.defect.as_ref().map(|d| d.kind.as_str()),
        multiplicities: r
            .defect
            .as_ref()
            .filter(|d| d.kind == DefectKind::Spectrum)
            .map(|d| d.multiplicities.as_slice()),
        witness: r.witness,
        error: r.error.as_deref(),
        duration_ms: round_ms(r.duration_ms),
    })
}

/// One record per line: config, validation, each result, per-check
/// summaries, then totals.
pub fn render_jsonlike(report: &RunReport) -> String {
    let mut out = String::new();
    out += &config_line(&report.config);
    out.push('\n');
    out += &validation_line(&report.validation);
    out.push('\n');
    for r in &report.results {
        out += &result_line(r);
        out.push('\n');
    }
    for (id, c) in report.by_check() {
        out += &json(&SummaryRecord {
            record: "summary",
            check_id: id,
            total: c.total(),
            pass: c.pass,
            fail: c.fail,
            error: c.error,
        });
        out.push('\n');
    }
    let t = report.totals();
    out += &json(&TotalRecord {
        record: "total",
        total: t.total(),
        pass: t.pass,
        fail: t.fail,
        error: t.error,
        duration_ms: round_ms(report.wall_ms),
    });
    out.push('\n');
    out
}

/// Drops the trailing `duration_ms` field from every record, for
/// comparing reports across runs.
pub fn without_durations(jsonlike: &str) -> String {
    jsonlike
        .lines()
        .map(|line| match line.rfind(",\"duration_ms\":") {
            Some(i) => format!("{}}}", &line[..i]),
            None => line.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// `{-1/1}`, `{-1/1 ×15, 1/1 ×12}`, or `max|Δ| = 1/2`.
pub fn defect_text(r: &CheckResult) -> String {
    let Some(d) = &r.defect else {
        return String::new();
    };
    let value = |v: &[String]| {
        if v.len() == 1 {
            v[0].clone()
        } else {
            format!("({})", v.join(", "))
        }
    };
    match d.kind {
        DefectKind::Spectrum => {
            let parts: Vec<String> = d
                .values
                .iter()
                .zip(&d.multiplicities)
                .map(|(v, m)| if *m == 1 { value(v) } else { format!("{} ×{m}", value(v)) })
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
        DefectKind::MaxEntryDifference => format!("max|Δ| = {}", value(&d.values[0])),
    }
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(i, s)| format!("{:<w$}", s, w = widths[i])).collect();
        out += cells.join("  ").trim_end();
        out.push('\n');
    }
    out
}

pub fn render_validation(config: &RunConfig, v: &ValidationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra: {}", algebra_name(config));
    let _ = writeln!(out, "modules: {}", module_labels(config).join(", "));
    let _ = writeln!(out, "K = {}", config.k_text());
    let _ = writeln!(out, "gamma = {}", config.gamma_label());
    if v.passed() {
        let _ = writeln!(out, "validation: pass ({} conditions checked)", v.checked.len());
    } else {
        let _ = writeln!(out, "validation: error");
        for i in &v.issues {
            let _ = writeln!(out, "  {i}");
        }
    }
    out
}

pub fn render_text(report: &RunReport) -> String {
    let mut out = render_validation(&report.config, &report.validation);
    out.push('\n');
    let mut rows = vec![vec![
        "check".to_string(),
        "objects".into(),
        "detail".into(),
        "status".into(),
        "defect".into(),
        "ms".into(),
    ]];
    for r in &report.results {
        let mut defect = defect_text(r);
        if let Some(e) = &r.error {
            defect = e.clone();
        }
        rows.push(vec![
            r.check_id.clone(),
            r.domain.clone().unwrap_or_else(|| r.objects.join(", ")),
            r.detail.clone().unwrap_or_default(),
            r.status.as_str().into(),
            defect,
            format!("{:.3}", r.duration_ms),
        ]);
    }
    out += &table(&rows);
    out.push('\n');
    let mut summary = vec![vec!["check".to_string(), "pass".into(), "fail".into(), "error".into()]];
    for (id, c) in report.by_check() {
        summary.push(vec![id.to_string(), c.pass.to_string(), c.fail.to_string(), c.error.to_string()]);
    }
    out += &table(&summary);
    let t = report.totals();
    let _ = writeln!(
        out,
        "\n{} results: {} pass, {} fail, {} error ({:.1} ms)",
        t.total(),
        t.pass,
        t.fail,
        t.error,
        report.wall_ms
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;
    use premon_core::verify::{Defect, Status};
    use std::path::Path;

    fn empty_report() -> RunReport {
        let config = parse_config(
            "[algebra]\nbuiltin = \"gl1\"\n[modules]\ngl1_weights = [1]\n[twining]\nK = \"N\"\n[checks]\nrun = [\"symmetry\"]\n",
            Path::new("."),
        )
        .unwrap();
        RunReport {
            config,
            validation: ValidationReport::default(),
            results: vec![],
            wall_ms: 0.0,
        }
    }

    #[test]
    fn empty_results() {
        let r = empty_report();
        let text = render_text(&r);
        assert!(text.contains("0 results: 0 pass, 0 fail, 0 error"));
        let j = render_jsonlike(&r);
        let lines: Vec<_> = j.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("{\"record\":\"config\""));
        assert_eq!(lines[2], "{\"record\":\"total\",\"total\":0,\"pass\":0,\"fail\":0,\"error\":0,\"duration_ms\":0.0}");
        for l in lines {
            serde_json::from_str::<serde_json::Value>(l).unwrap();
        }
    }

    #[test]
    fn pass_record_has_no_defect() {
        let r = CheckResult::new("symmetry", vec!["M_1".into(), "M_1".into()], "-1/1");
        assert_eq!(
            result_line(&r),
            "{\"record\":\"result\",\"check_id\":\"symmetry\",\"objects\":[\"M_1\",\"M_1\"],\"gamma\":\"-1/1\",\
             \"status\":\"pass\",\"duration_ms\":0.0}"
        );
    }

    #[test]
    fn fail_record_has_nested_defect() {
        let mut r = CheckResult::new("pentagon", vec!["M_1".into(); 4], "-1/1");
        r.status = Status::Fail;
        r.defect = Some(Defect {
            kind: DefectKind::Spectrum,
            values: vec![vec!["-1/1".into()]],
            multiplicities: vec![1],
        });
        r.witness = Some(0);
        let line = result_line(&r);
        assert!(line.contains("\"defect\":[[\"-1/1\"]],\"defect_kind\":\"spectrum\",\"multiplicities\":[1],\"witness\":0"));
        assert_eq!(defect_text(&r), "{-1/1}");
    }

    #[test]
    fn durations_stripped() {
        let s = "{\"a\":1,\"duration_ms\":3.25}\n{\"b\":2}";
        assert_eq!(without_durations(s), "{\"a\":1}\n{\"b\":2}");
    }
}
