//! Report documents and their byte-stable serialisation.

use serde::Serialize;
use std::time::Duration;

use zrl::region::SweepSummary;
use zrl::table::{Cell, Table};

use crate::config::{OutputFormat, RunConfig};

/// Everything one run produced. Only `timings` varies between identical runs
/// and it is never part of the data output.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub tables: Vec<Table>,
    pub summaries: Vec<SweepSummary>,
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl ReportDocument {
    pub fn new(config: RunConfig) -> Self {
        ReportDocument {
            tool: "zrl",
            version: env!("CARGO_PKG_VERSION"),
            config,
            tables: Vec::new(),
            summaries: Vec::new(),
            timings: Vec::new(),
        }
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }
}

/// Data only: JSON (struct field order) or CSV. A document with a single table
/// and no summaries is plain CSV; otherwise each table is preceded by a
/// `# <name>` line and followed by a blank line.
pub fn emit_report(doc: &ReportDocument, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => {
            let mut out = serde_json::to_vec_pretty(doc).expect("report documents always serialise");
            out.push(b'\n');
            out
        }
        OutputFormat::Csv => {
            let mut tables: Vec<Table> = doc.tables.clone();
            if !doc.summaries.is_empty() {
                tables.push(summary_table(&doc.summaries));
            }
            if tables.len() == 1 {
                return tables[0].to_csv();
            }
            let mut out = Vec::new();
            for t in &tables {
                out.extend_from_slice(format!("# {}\n", t.name).as_bytes());
                out.extend_from_slice(&t.to_csv());
                out.push(b'\n');
            }
            out
        }
    }
}

/// The timing block, kept apart from the data.
pub fn emit_metadata(doc: &ReportDocument) -> Vec<u8> {
    let timings: Vec<serde_json::Value> = doc
        .timings
        .iter()
        .map(|(step, d)| serde_json::json!({ "step": step, "seconds": d.as_secs_f64() }))
        .collect();
    let mut out = serde_json::to_vec_pretty(&serde_json::json!({
        "tool": doc.tool,
        "version": doc.version,
        "timings": timings,
    }))
    .expect("metadata always serialises");
    out.push(b'\n');
    out
}

fn summary_table(summaries: &[SweepSummary]) -> Table {
    let mut t = Table::new(
        "sweep_summaries",
        vec!["check_id", "param_ranges", "total", "failures", "worst_margin"],
    );
    for s in summaries {
        let ranges: Vec<String> = s
            .param_ranges
            .iter()
            .map(|r| {
                format!(
                    "{}=[{};{}]",
                    r.name,
                    zrl::numeric::fmt_g12(r.min),
                    zrl::numeric::fmt_g12(r.max)
                )
            })
            .collect();
        t.push(vec![
            s.check_id.as_str().into(),
            ranges.join(" ").into(),
            s.total.into(),
            s.failures.len().into(),
            Cell::Real(s.worst_margin),
        ]);
    }
    t
}
