//! Timestamped run directories with a re-executable manifest.

use std::path::{Path, PathBuf};

use serde::Serialize;

/// Output format selection for probe reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
    Both,
}

pub struct RunDir {
    pub path: PathBuf,
    format: ReportFormat,
}

#[derive(Serialize)]
struct Manifest<'a, T: Serialize> {
    schema: &'static str,
    artifact_version: &'static str,
    /// Seconds since the Unix epoch; the only timestamp a run emits.
    created_unix: u64,
    subcommand: &'a str,
    report_format: &'a str,
    /// The full configuration needed to re-execute the run.
    config: &'a T,
}

impl RunDir {
    /// Creates `<base>/<unix-seconds>_<subcommand>[_k]` and writes the
    /// manifest into it.
    pub fn create<T: Serialize>(
        base: &Path,
        subcommand: &str,
        config: &T,
        format: ReportFormat,
    ) -> std::io::Result<Self> {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let mut path = base.join(format!("{now}_{subcommand}"));
        let mut counter = 1;
        while path.exists() {
            counter += 1;
            path = base.join(format!("{now}_{subcommand}_{counter}"));
        }
        std::fs::create_dir_all(&path)?;

        let manifest = Manifest {
            schema: "shrira-lab/manifest-v1",
            artifact_version: env!("CARGO_PKG_VERSION"),
            created_unix: now,
            subcommand,
            report_format: match format {
                ReportFormat::Json => "json",
                ReportFormat::Csv => "csv",
                ReportFormat::Both => "both",
            },
            config,
        };
        std::fs::write(
            path.join("manifest.json"),
            serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
        )?;
        Ok(Self { path, format })
    }

    /// Writes a probe report under the chosen name(s) and echoes the JSON to
    /// stdout. Reports carry no timestamps, so identical runs produce
    /// byte-identical files.
    pub fn write_report(
        &self,
        name: &str,
        report: &shrira_lab::ProbeReport,
    ) -> std::io::Result<()> {
        let json = report.to_json();
        if matches!(self.format, ReportFormat::Json | ReportFormat::Both) {
            std::fs::write(self.path.join(format!("{name}.json")), &json)?;
        }
        if matches!(self.format, ReportFormat::Csv | ReportFormat::Both) {
            std::fs::write(self.path.join(format!("{name}.csv")), report.to_csv())?;
        }
        println!("{json}");
        Ok(())
    }

    /// Writes an arbitrary JSON document (non-report results).
    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> std::io::Result<()> {
        let json = serde_json::to_string_pretty(value).expect("value serializes");
        std::fs::write(self.path.join(format!("{name}.json")), &json)?;
        println!("{json}");
        Ok(())
    }
}
