//! CSV and JSON writers. Everything is buffered and written once, so a
//! failed run leaves no partial output file.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use tansec_core::hilbert::LinSysReport;
use tansec_core::secant::DefectReport;
use tansec_core::suite::SuiteReport;
use tansec_core::MonteCarlo;

use crate::Format;

pub const DEFECT_HEADER: [&str; 8] = ["a", "b", "s", "expected_hf", "computed_hf", "defect", "trials", "seed"];

pub struct Sink {
    path: Option<PathBuf>,
    format: Format,
    buf: Vec<u8>,
}

#[derive(Serialize)]
struct WithPrime<'a, T> {
    #[serde(flatten)]
    row: &'a T,
    prime: u64,
}

#[derive(Serialize)]
struct LinSysOut<'a> {
    #[serde(flatten)]
    report: &'a LinSysReport,
    prime: u64,
    seed: u64,
}

impl Sink {
    pub fn open(path: Option<&Path>, format: Format) -> Result<Self, String> {
        Ok(Sink { path: path.map(Path::to_path_buf), format, buf: Vec::new() })
    }

    fn json<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<(), String> {
        serde_json::to_writer_pretty(&mut self.buf, value).map_err(|e| e.to_string())?;
        self.buf.push(b'\n');
        Ok(())
    }

    fn csv(&mut self, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<(), String> {
        let mut w = csv::Writer::from_writer(&mut self.buf);
        w.write_record(header).map_err(|e| e.to_string())?;
        for r in rows {
            w.write_record(&r).map_err(|e| e.to_string())?;
        }
        w.flush().map_err(|e| e.to_string())
    }

    pub fn defect_rows(&mut self, rows: &[DefectReport], prime: u64) -> Result<(), String> {
        match self.format {
            Format::Json => {
                let out: Vec<_> = rows.iter().map(|row| WithPrime { row, prime }).collect();
                self.json(&out)
            }
            Format::Csv => self.csv(
                &DEFECT_HEADER,
                rows.iter().map(|r| {
                    [r.a as u64, r.b as u64, r.s as u64, r.expected_hf as u64, r.computed_hf as u64, r.defect as u64, r.trials as u64, r.seed]
                        .map(|v| v.to_string())
                        .to_vec()
                }),
            ),
        }
    }

    pub fn linsys(&mut self, r: &LinSysReport, mc: &MonteCarlo) -> Result<(), String> {
        match self.format {
            Format::Json => self.json(&LinSysOut { report: r, prime: mc.field.modulus(), seed: mc.seed }),
            Format::Csv => {
                let status = serde_json::to_value(r.status).map_err(|e| e.to_string())?;
                let row = vec![
                    r.degree.clone(),
                    r.scheme.clone(),
                    r.basis_size.to_string(),
                    r.length.to_string(),
                    r.rank.to_string(),
                    r.dim_linsys.to_string(),
                    r.virtual_dim.to_string(),
                    r.expected_dim.to_string(),
                    status.as_str().unwrap_or_default().to_string(),
                    mc.field.modulus().to_string(),
                    mc.seed.to_string(),
                ];
                let header =
                    ["degree", "scheme", "basis_size", "length", "rank", "dim_linsys", "virtual_dim", "expected_dim", "status", "prime", "seed"];
                self.csv(&header, [row])
            }
        }
    }

    pub fn suite(&mut self, r: &SuiteReport) -> Result<(), String> {
        match self.format {
            Format::Json => self.json(r),
            Format::Csv => {
                let rows = r.checks.iter().map(|c| {
                    vec![
                        r.suite.clone(),
                        c.name.clone(),
                        if c.passed { "pass" } else { "fail" }.to_string(),
                        c.detail.clone(),
                        r.prime.to_string(),
                        r.seed.to_string(),
                        r.trials.to_string(),
                    ]
                });
                self.csv(&["suite", "check", "result", "detail", "prime", "seed", "trials"], rows.collect::<Vec<_>>())
            }
        }
    }

    pub fn finish(self) -> Result<(), String> {
        match &self.path {
            Some(p) => std::fs::write(p, &self.buf).map_err(|e| format!("{}: {e}", p.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(&self.buf).and_then(|_| out.flush()).map_err(|e| e.to_string())
            }
        }
    }
}
