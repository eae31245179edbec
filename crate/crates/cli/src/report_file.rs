//! The versioned report file and its JSON and CSV renderings.

use qhyper::report::{Summary, VerificationReport};
use qhyper::Mode;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const SCHEMA_VERSION: &str = "1";

pub const CSV_COLUMNS: [&str; 12] = [
    "identity_id",
    "n",
    "params",
    "mode",
    "lhs",
    "rhs",
    "abs_err",
    "rel_err",
    "pass",
    "degenerate",
    "truncation_terms",
    "quadrature_nodes",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema_version: String,
    pub tool_version: String,
    pub config: RunConfig,
    pub entries: Vec<VerificationReport>,
    pub summary: Summary,
}

impl ReportFile {
    pub fn new(config: RunConfig, entries: Vec<VerificationReport>) -> Self {
        let summary = Summary::of(&entries);
        ReportFile {
            schema_version: SCHEMA_VERSION.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            entries,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let file: ReportFile = serde_json::from_str(text).map_err(|e| format!("invalid report file: {e}"))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(format!("unsupported schema version {:?}", file.schema_version));
        }
        Ok(file)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_COLUMNS).expect("in-memory write");
        for r in &self.entries {
            w.write_record(csv_row(r)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_row(r: &VerificationReport) -> [String; 12] {
    let params = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
    let mode = match r.mode {
        Mode::Exact => "exact",
        Mode::Approx => "approx",
    };
    [
        r.identity_id.clone(),
        opt(r.n),
        params,
        mode.to_string(),
        r.lhs.clone(),
        r.rhs.clone(),
        format!("{:e}", r.abs_err),
        format!("{:e}", r.rel_err),
        r.pass.to_string(),
        r.degenerate.to_string(),
        opt(r.truncation_terms),
        opt(r.quadrature_nodes),
    ]
}
