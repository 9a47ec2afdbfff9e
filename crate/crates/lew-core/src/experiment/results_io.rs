//! Lossless CSV persistence of run results with a fixed column schema.

use std::fs;
use std::path::Path;

use thiserror::Error;

use super::run::{RoundRow, RunResult};

pub const RESULTS_HEADER: [&str; 18] = [
    "run_id",
    "condition_id",
    "male_present",
    "p_intra",
    "round",
    "f1_implicit",
    "implicit_precision",
    "implicit_recall",
    "explicit_rate",
    "seg_correct_rate",
    "mean_agent_lexicon_size",
    "male_lexicon_size",
    "mean_agent_synonymy",
    "mean_agent_homonymy",
    "global_synonymy",
    "global_homonymy",
    "shared_mappings",
    "mean_agents_per_mapping",
];

#[derive(Debug, Error)]
pub enum ResultsError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Format { line: u64, message: String },
}

impl From<csv::Error> for ResultsError {
    fn from(err: csv::Error) -> Self {
        let line = err.position().map(|p| p.line()).unwrap_or(0);
        if err.is_io_error() {
            match err.into_kind() {
                csv::ErrorKind::Io(io) => ResultsError::Io(io),
                _ => unreachable!(),
            }
        } else {
            ResultsError::Format {
                line,
                message: err.to_string(),
            }
        }
    }
}

fn format_f64(v: f64) -> String {
    // Shortest representation that parses back to the same bits.
    format!("{v}")
}

/// Write results as CSV. The file appears atomically: rows go to a sibling
/// temp file that is renamed into place only after a successful write, so a
/// failure never leaves a partial CSV behind.
pub fn write_results(results: &[RunResult], path: &Path) -> Result<(), ResultsError> {
    let tmp = path.with_extension("csv.tmp");
    let write = || -> Result<(), ResultsError> {
        let mut writer = csv::Writer::from_path(&tmp)?;
        writer.write_record(RESULTS_HEADER)?;
        for result in results {
            for row in &result.rows {
                writer.write_record([
                    result.run_id.to_string(),
                    result.condition_id.clone(),
                    result.male_present.to_string(),
                    format_f64(result.p_intra),
                    row.round.to_string(),
                    format_f64(row.f1_implicit),
                    format_f64(row.implicit_precision),
                    format_f64(row.implicit_recall),
                    format_f64(row.explicit_rate),
                    format_f64(row.seg_correct_rate),
                    format_f64(row.mean_agent_lexicon_size),
                    row.male_lexicon_size.map(format_f64).unwrap_or_default(),
                    format_f64(row.mean_agent_synonymy),
                    format_f64(row.mean_agent_homonymy),
                    format_f64(row.global_synonymy),
                    format_f64(row.global_homonymy),
                    row.shared_mappings.to_string(),
                    format_f64(row.mean_agents_per_mapping),
                ])?;
            }
        }
        writer.flush().map_err(ResultsError::Io)?;
        Ok(())
    };
    match write() {
        Ok(()) => {
            fs::rename(&tmp, path)?;
            Ok(())
        }
        Err(err) => {
            let _ = fs::remove_file(&tmp);
            Err(err)
        }
    }
}

struct FieldReader<'a> {
    record: &'a csv::StringRecord,
    line: u64,
}

impl<'a> FieldReader<'a> {
    fn raw(&self, column: usize) -> Result<&'a str, ResultsError> {
        self.record.get(column).ok_or(ResultsError::Format {
            line: self.line,
            message: format!("missing column {}", RESULTS_HEADER[column]),
        })
    }

    fn parse<T: std::str::FromStr>(&self, column: usize) -> Result<T, ResultsError> {
        let raw = self.raw(column)?;
        raw.parse().map_err(|_| ResultsError::Format {
            line: self.line,
            message: format!("bad value `{raw}` in column {}", RESULTS_HEADER[column]),
        })
    }

    fn parse_optional(&self, column: usize) -> Result<Option<f64>, ResultsError> {
        let raw = self.raw(column)?;
        if raw.is_empty() {
            Ok(None)
        } else {
            self.parse(column).map(Some)
        }
    }
}

/// Read back a results CSV written by [`write_results`]. Rows belonging to
/// the same (condition, run) must be consecutive, which is how the writer
/// lays them out.
pub fn read_results(path: &Path) -> Result<Vec<RunResult>, ResultsError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_path(path)?;
    {
        let headers = reader.headers()?;
        if headers.iter().ne(RESULTS_HEADER) {
            return Err(ResultsError::Format {
                line: 1,
                message: format!(
                    "unexpected header `{}`; expected the results schema",
                    headers.iter().collect::<Vec<_>>().join(",")
                ),
            });
        }
    }

    let mut results: Vec<RunResult> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let fields = FieldReader {
            record: &record,
            line,
        };

        let run_id: u32 = fields.parse(0)?;
        let condition_id: String = fields.raw(1)?.to_string();
        let male_present: bool = fields.parse(2)?;
        let p_intra: f64 = fields.parse(3)?;
        let row = RoundRow {
            round: fields.parse(4)?,
            f1_implicit: fields.parse(5)?,
            implicit_precision: fields.parse(6)?,
            implicit_recall: fields.parse(7)?,
            explicit_rate: fields.parse(8)?,
            seg_correct_rate: fields.parse(9)?,
            mean_agent_lexicon_size: fields.parse(10)?,
            male_lexicon_size: fields.parse_optional(11)?,
            mean_agent_synonymy: fields.parse(12)?,
            mean_agent_homonymy: fields.parse(13)?,
            global_synonymy: fields.parse(14)?,
            global_homonymy: fields.parse(15)?,
            shared_mappings: fields.parse(16)?,
            mean_agents_per_mapping: fields.parse(17)?,
        };

        let same_run = results.last().is_some_and(|r: &RunResult| {
            r.run_id == run_id && r.condition_id == condition_id
        });
        if same_run {
            results.last_mut().unwrap().rows.push(row);
        } else {
            results.push(RunResult {
                run_id,
                condition_id,
                male_present,
                p_intra,
                rows: vec![row],
            });
        }
    }
    Ok(results)
}
