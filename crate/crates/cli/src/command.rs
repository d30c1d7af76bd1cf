//! Running one query end to end.

use std::cmp::Ordering;
use std::io::BufRead;
use std::str::FromStr;

use heavyseg_core::batch::run_offline;
use heavyseg_core::matrix::{best_from_row, better_subarray};
use heavyseg_core::{
    count_feasible, BatchProcessor, DensityThreshold, Element, Error, LengthBounds, MaxDensity, MaxSum, Objective,
    PrefixIndex, RequiredDensity, RequiredSum, ScoredSegment, SegmentStream, SubarrayResult, TopKDensity, TopKRegime,
    TopKSum,
};
use thiserror::Error;

use crate::input::{parse_input, parse_matrix, ElementReader, InputError, InputFormat, InputSummary, ScoringTable};
use crate::output::{json_string, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    MaxSum,
    MaxDensity,
    TopkSum,
    TopkDensity,
    AboveSum,
    AboveDensity,
    Matrix2dSum,
    Matrix2dDensity,
    Count,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Engine(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

impl CliError {
    /// 2 when nothing is feasible, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Engine(Error::NoFeasibleSegment) => 2,
            _ => 1,
        }
    }
}

/// A threshold given as `x` or as an exact ratio `num/den`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdArg {
    pub num: f64,
    pub den: f64,
}

impl FromStr for ThresholdArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected a number or NUM/DEN, found {s:?}");
        let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (parse(n)?, parse(d)?),
            None => (parse(s)?, 1.0),
        };
        if num.is_nan() || !(den.is_finite() && den > 0.0) {
            return Err(bad());
        }
        Ok(Self { num, den })
    }
}

#[derive(Debug, Clone)]
pub struct Query {
    pub bounds: LengthBounds,
    pub k: Option<usize>,
    pub threshold: Option<ThresholdArg>,
    pub strict: bool,
    pub regime: TopKRegime,
    pub format: InputFormat,
    pub scoring: ScoringTable,
    pub stream: bool,
    /// Worker threads for the 2D commands; 0 picks the core count.
    pub threads: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub summary: Option<InputSummary>,
    /// `(requested, returned)` when fewer than `k` segments are feasible.
    pub clamped_k: Option<(usize, usize)>,
}

impl Outcome {
    /// Diagnostics for stderr: FASTA records, unknown symbols, clamped `k`.
    pub fn footer(&self, format: InputFormat) -> Option<String> {
        let mut fields = Vec::new();
        if let Some(s) = &self.summary {
            if format == InputFormat::Fasta {
                let records: Vec<String> = s
                    .records
                    .iter()
                    .map(|r| format!("{{\"id\":{},\"start\":{},\"end\":{}}}", json_string(&r.id), r.start, r.end))
                    .collect();
                fields.push(format!("\"records\":[{}]", records.join(",")));
            }
            if format == InputFormat::Fasta || s.unknown_symbols > 0 {
                fields.push(format!("\"unknown_symbols\":{}", s.unknown_symbols));
            }
        }
        if let Some((want, got)) = self.clamped_k {
            fields.push(format!("\"warning\":\"k = {want} exceeds the {got} feasible segments; clamped\""));
        }
        (!fields.is_empty()).then(|| format!("{{{}}}", fields.join(",")))
    }
}

fn feed<P: BatchProcessor, R: BufRead>(input: R, q: &Query, proc: P) -> Result<(P::Output, InputSummary), CliError> {
    if q.stream {
        let mut stream = SegmentStream::new(q.bounds, proc);
        let summary = ElementReader::new(q.format, q.scoring.clone())
            .read(input, |e| stream.push(e).map_err(CliError::from))?;
        Ok((stream.finish(), summary))
    } else {
        let (elements, summary) = parse_input(input, q.format, q.scoring.clone())?;
        let idx = PrefixIndex::from_elements(elements)?;
        Ok((run_offline(&idx, q.bounds, proc).finish(), summary))
    }
}

fn require_k(q: &Query) -> Result<usize, CliError> {
    match q.k {
        None => Err(CliError::Usage("--k is required for this command".into())),
        Some(0) => Err(CliError::Usage("--k must be at least 1".into())),
        Some(k) => Ok(k),
    }
}

fn require_threshold(q: &Query) -> Result<ThresholdArg, CliError> {
    q.threshold.ok_or_else(|| CliError::Usage("--threshold is required for this command".into()))
}

/// Number of feasible segments: the closed form for unit widths, a sweep
/// over cumulative widths otherwise.
pub fn count_segments(elements: &[Element], bounds: LengthBounds) -> Result<u64, CliError> {
    let n = elements.len();
    if elements.iter().all(|e| e.width == 1.0) {
        let lower = bounds.lower().ceil();
        let upper = bounds.upper().floor().min(n as f64);
        if lower > upper {
            return Ok(0);
        }
        return Ok(count_feasible(n, lower as u64, upper as u64)?);
    }
    let idx = PrefixIndex::from_elements(elements.iter().copied())?;
    let w = idx.cumulative_widths();
    let (mut lo, mut hi, mut total) = (0usize, 0usize, 0u64);
    for j in 1..=n {
        while w[j] - w[lo] > bounds.upper() {
            lo += 1;
        }
        while hi < j && w[j] - w[hi] >= bounds.lower() {
            hi += 1;
        }
        // feasible t are lo..hi
        total += hi.saturating_sub(lo) as u64;
    }
    Ok(total)
}

fn best_subarray(
    mat: &heavyseg_core::Matrix2D,
    bounds: LengthBounds,
    objective: Objective,
    threads: usize,
) -> Result<SubarrayResult, CliError> {
    let workers = if threads == 0 { std::thread::available_parallelism().map_or(1, |n| n.get()) } else { threads };
    let workers = workers.clamp(1, mat.rows());
    let per_worker: Vec<Vec<heavyseg_core::Result<SubarrayResult>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (1..=mat.rows()).skip(w).step_by(workers).map(|r1| best_from_row(mat, r1, bounds, objective)).collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut best: Option<SubarrayResult> = None;
    for found in per_worker.into_iter().flatten() {
        match found {
            Ok(c) => {
                if best.as_ref().is_none_or(|b| better_subarray(objective, &c, b) == Ordering::Greater) {
                    best = Some(c);
                }
            }
            Err(Error::NoFeasibleSegment) => {}
            Err(e) => return Err(e.into()),
        }
    }
    best.ok_or(CliError::Engine(Error::NoFeasibleSegment))
}

fn top_k(
    found: heavyseg_core::Result<Vec<ScoredSegment>>,
    k: usize,
    summary: InputSummary,
) -> Result<Outcome, CliError> {
    let found = found?;
    let clamped_k = (found.len() < k).then_some((k, found.len()));
    Ok(Outcome { report: Report::Segments(found), summary: Some(summary), clamped_k })
}

fn above(mut found: Vec<ScoredSegment>, summary: InputSummary) -> Outcome {
    found.sort_by_key(|s| s.segment);
    Outcome { report: Report::Segments(found), summary: Some(summary), clamped_k: None }
}

fn single(found: heavyseg_core::Result<ScoredSegment>, summary: InputSummary) -> Result<Outcome, CliError> {
    Ok(Outcome { report: Report::Segment(found?), summary: Some(summary), clamped_k: None })
}

/// Runs `command` over `input`.
pub fn run<R: BufRead>(command: Command, q: &Query, input: R) -> Result<Outcome, CliError> {
    match command {
        Command::MaxSum => {
            let (r, s) = feed(input, q, MaxSum::new())?;
            single(r, s)
        }
        Command::MaxDensity => {
            let (r, s) = feed(input, q, MaxDensity::new())?;
            single(r, s)
        }
        Command::TopkSum => {
            let k = require_k(q)?;
            let (r, s) = feed(input, q, TopKSum::new(k)?)?;
            top_k(r, k, s)
        }
        Command::TopkDensity => {
            let k = require_k(q)?;
            let (r, s) = feed(input, q, TopKDensity::new(k, q.regime)?)?;
            top_k(r, k, s)
        }
        Command::AboveSum => {
            let t = require_threshold(q)?;
            let (r, s) = feed(input, q, RequiredSum::new(t.num / t.den, q.strict)?)?;
            Ok(above(r, s))
        }
        Command::AboveDensity => {
            let t = require_threshold(q)?;
            let d = DensityThreshold::new(t.num, t.den).map_err(|e| CliError::Usage(format!("--threshold: {e}")))?;
            let (r, s) = feed(input, q, RequiredDensity::new(d, q.strict))?;
            Ok(above(r, s))
        }
        Command::Matrix2dSum | Command::Matrix2dDensity => {
            if q.format != InputFormat::Numbers {
                return Err(CliError::Usage("--format: matrix commands read \"rows <m> cols <n>\" text only".into()));
            }
            let objective = if command == Command::Matrix2dSum { Objective::Sum } else { Objective::Density };
            let mat = parse_matrix(input)?;
            let best = best_subarray(&mat, q.bounds, objective, q.threads)?;
            Ok(Outcome { report: Report::Subarray(best), summary: None, clamped_k: None })
        }
        Command::Count => {
            let (elements, summary) = parse_input(input, q.format, q.scoring.clone())?;
            let c = count_segments(&elements, q.bounds)?;
            Ok(Outcome { report: Report::Count(c), summary: Some(summary), clamped_k: None })
        }
    }
}
