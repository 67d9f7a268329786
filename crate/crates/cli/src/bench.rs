//! Batch runs with PAR-2 scoring: finished runs score their wall time,
//! timeouts and errors score twice the limit.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use crate::dimacs::read_dimacs;
use crate::pipeline::{run_pipeline, PipelineConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Done,
    Timeout,
    Error,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Done => "done",
            Outcome::Timeout => "timeout",
            Outcome::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub path: PathBuf,
    pub outcome: Outcome,
    pub seconds: f64,
    /// `None` unless the run finished.
    pub support_size: Option<usize>,
}

impl BenchRecord {
    pub fn score(&self, timeout_secs: f64) -> f64 {
        match self.outcome {
            Outcome::Done => self.seconds,
            Outcome::Timeout | Outcome::Error => 2.0 * timeout_secs,
        }
    }
}

/// Mean score; 0 for no records.
pub fn par2(records: &[BenchRecord], timeout_secs: f64) -> f64 {
    if records.is_empty() {
        return 0.0;
    }
    records.iter().map(|r| r.score(timeout_secs)).sum::<f64>() / records.len() as f64
}

pub fn run_one(path: &Path, cfg: &PipelineConfig, timeout: Duration) -> BenchRecord {
    let start = Instant::now();
    let record = |outcome, support_size| BenchRecord {
        path: path.to_path_buf(),
        outcome,
        seconds: start.elapsed().as_secs_f64(),
        support_size,
    };
    let formula = match File::open(path).map_err(|e| e.to_string()).and_then(|file| {
        read_dimacs(BufReader::new(file)).map_err(|e| e.to_string())
    }) {
        Ok(f) => f,
        Err(_) => return record(Outcome::Error, None),
    };
    let cfg = PipelineConfig {
        wall_timeout: Some(timeout),
        verify: false,
        ..cfg.clone()
    };
    match run_pipeline(&formula, &cfg) {
        Ok(r) if r.timed_out || start.elapsed() > timeout => record(Outcome::Timeout, None),
        Ok(r) => record(Outcome::Done, Some(r.support.len())),
        Err(_) => record(Outcome::Error, None),
    }
}

pub fn bench(paths: &[PathBuf], cfg: &PipelineConfig, timeout: Duration) -> Vec<BenchRecord> {
    paths.iter().map(|p| run_one(p, cfg, timeout)).collect()
}

/// CSV with columns `path,outcome,seconds,support_size`.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["path", "outcome", "seconds", "support_size"])?;
    for r in records {
        w.write_record([
            r.path.display().to_string(),
            r.outcome.as_str().to_string(),
            format!("{:.3}", r.seconds),
            r.support_size.map(|s| s.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(io::Error::into)
}
