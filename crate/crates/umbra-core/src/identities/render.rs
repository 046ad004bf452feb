//! Deterministic serialization of identity reports as JSON, text, or CSV.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::identities::{IdentityReport, InstanceStatus, ParamValue};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReportFormat {
    Json,
    Text,
    Csv,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Result<ReportFormat> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::BadParameter(format!(
                "unknown report format '{other}'"
            ))),
        }
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn json_param(value: &ParamValue) -> String {
    match value {
        ParamValue::Int(v) => format!("{v}"),
        ParamValue::Rat(v) => format!("\"{v}\""),
    }
}

/// Renders the reports in the requested format. Instances appear in grid
/// order, so identical runs serialize identically.
pub fn render_reports(reports: &[IdentityReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => render_json(reports),
        ReportFormat::Text => render_text(reports),
        ReportFormat::Csv => render_csv(reports),
    }
}

fn render_json(reports: &[IdentityReport]) -> String {
    let mut out = String::from("[\n");
    for (ri, report) in reports.iter().enumerate() {
        out.push_str("  {\n");
        out.push_str(&format!("    \"id\": \"{}\",\n", report.id.as_str()));
        out.push_str(&format!(
            "    \"expectation\": \"{}\",\n",
            report.expectation.as_str()
        ));
        out.push_str(&format!(
            "    \"grid\": \"{}\",\n",
            json_escape(&report.grid_desc)
        ));
        out.push_str("    \"instances\": [\n");
        for (ii, inst) in report.instances.iter().enumerate() {
            let mut fields: Vec<String> = Vec::new();
            let params: Vec<String> = inst
                .instance
                .params
                .iter()
                .map(|(k, v)| format!("\"{k}\": {}", json_param(v)))
                .collect();
            fields.push(format!("\"params\": {{{}}}", params.join(", ")));
            fields.push(format!("\"status\": \"{}\"", inst.status.as_str()));
            match &inst.status {
                InstanceStatus::Fail { witness } => {
                    fields.push(format!("\"witness\": \"{}\"", json_escape(witness)));
                }
                InstanceStatus::Skipped { reason } => {
                    fields.push(format!("\"reason\": \"{}\"", json_escape(reason)));
                }
                InstanceStatus::Pass => {}
            }
            fields.push(format!("\"ms\": {}", inst.ms));
            let sep = if ii + 1 == report.instances.len() {
                ""
            } else {
                ","
            };
            out.push_str(&format!("      {{{}}}{sep}\n", fields.join(", ")));
        }
        out.push_str("    ]\n");
        let sep = if ri + 1 == reports.len() { "" } else { "," };
        out.push_str(&format!("  }}{sep}\n"));
    }
    out.push_str("]\n");
    out
}

fn render_text(reports: &[IdentityReport]) -> String {
    let mut out = String::new();
    for report in reports {
        let pass = report.count("pass");
        let fail = report.count("fail");
        let skipped = report.count("skipped");
        let verdict = match report.expectation {
            crate::identities::Expectation::Probe => "PROBE",
            _ if fail == 0 => "PASS",
            _ => "FAIL",
        };
        out.push_str(&format!(
            "{} [{}] {}: {} pass, {} fail, {} skipped -> {}\n",
            report.id.as_str(),
            report.expectation.as_str(),
            report.grid_desc,
            pass,
            fail,
            skipped,
            verdict
        ));
        for inst in &report.instances {
            match &inst.status {
                InstanceStatus::Fail { witness } => {
                    out.push_str(&format!(
                        "  {}: FAIL witness = {}\n",
                        inst.instance.render(),
                        witness
                    ));
                }
                InstanceStatus::Skipped { reason } => {
                    out.push_str(&format!(
                        "  {}: SKIPPED ({})\n",
                        inst.instance.render(),
                        reason
                    ));
                }
                InstanceStatus::Pass => {}
            }
        }
    }
    let verdict = if crate::identities::suite_passed(reports) {
        "PASS"
    } else {
        "FAIL"
    };
    out.push_str(&format!("suite: {verdict}\n"));
    out
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        String::from(s)
    }
}

fn render_csv(reports: &[IdentityReport]) -> String {
    let mut out = String::from("id,expectation,params,status,witness\n");
    for report in reports {
        for inst in &report.instances {
            let witness = match &inst.status {
                InstanceStatus::Fail { witness } => witness.as_str(),
                InstanceStatus::Skipped { reason } => reason.as_str(),
                InstanceStatus::Pass => "",
            };
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                report.id.as_str(),
                report.expectation.as_str(),
                csv_quote(&inst.instance.render()),
                inst.status.as_str(),
                csv_quote(witness)
            ));
        }
    }
    out
}
