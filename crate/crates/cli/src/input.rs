//! Reading sequences and matrices from text.

use std::collections::HashMap;
use std::io::BufRead;

use heavyseg_core::{Element, Matrix2D};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: cannot parse {token:?} as a finite number")]
    Parse { line: usize, token: String },
    #[error("line {line}: expected \"value width\", found {found} fields")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: width must be positive")]
    NonPositiveWidth { line: usize },
    #[error("input holds no elements")]
    EmptyInput,
    #[error("line {line}: expected header \"rows <m> cols <n>\"")]
    MatrixHeader { line: usize },
    #[error("line {line}: expected {expected} values, found {found}")]
    MatrixRow { line: usize, expected: usize, found: usize },
    #[error("matrix has {found} rows, header says {expected}")]
    MatrixRows { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum InputFormat {
    /// Whitespace-separated values, width 1 each.
    #[default]
    Numbers,
    /// One `value width` pair per line.
    NumbersWithWidths,
    /// Nucleotides scored through a table, width 1 each.
    Fasta,
}

const IUPAC: &[u8] = b"ACGTURYSWKMBDHVN";

/// Per-symbol scores for FASTA input. Lookups ignore case.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoringTable {
    scores: HashMap<u8, f64>,
}

impl Default for ScoringTable {
    /// C and G score 1; every other IUPAC nucleotide code scores 0.
    fn default() -> Self {
        let scores = IUPAC.iter().map(|&b| (b, if b == b'C' || b == b'G' { 1.0 } else { 0.0 })).collect();
        Self { scores }
    }
}

impl ScoringTable {
    /// Parses `C=1,G=1,A=0,T=0`. Symbols not listed score 0 and are counted
    /// as unknown.
    pub fn parse(table: &str) -> Result<Self, String> {
        let mut scores = HashMap::new();
        for item in table.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (sym, val) = item.split_once('=').ok_or_else(|| format!("expected SYMBOL=SCORE, found {item:?}"))?;
            let sym = sym.trim().as_bytes();
            if sym.len() != 1 || !sym[0].is_ascii_graphic() {
                return Err(format!("symbol must be one character, found {:?}", String::from_utf8_lossy(sym)));
            }
            let val: f64 = val.trim().parse().ok().filter(|v: &f64| v.is_finite()).ok_or_else(|| format!("bad score in {item:?}"))?;
            scores.insert(sym[0].to_ascii_uppercase(), val);
        }
        if scores.is_empty() {
            return Err("empty scoring table".into());
        }
        Ok(Self { scores })
    }

    pub fn score(&self, symbol: u8) -> Option<f64> {
        self.scores.get(&symbol.to_ascii_uppercase()).copied()
    }
}

/// A FASTA record's 1-based span in the concatenated sequence. Empty
/// records have `end = start - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastaRecord {
    pub id: String,
    pub start: usize,
    pub end: usize,
}

/// What the parser saw besides the elements themselves.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InputSummary {
    pub elements: usize,
    pub records: Vec<FastaRecord>,
    pub unknown_symbols: usize,
}

/// Incremental parser: feed it a reader and it hands out elements one at a
/// time, so nothing beyond the current line is buffered.
#[derive(Debug)]
pub struct ElementReader {
    format: InputFormat,
    scoring: ScoringTable,
    summary: InputSummary,
}

impl ElementReader {
    pub fn new(format: InputFormat, scoring: ScoringTable) -> Self {
        Self { format, scoring, summary: InputSummary::default() }
    }

    /// Parses all of `input`, calling `sink` once per element in order.
    pub fn read<R, F, E>(mut self, mut input: R, mut sink: F) -> Result<InputSummary, E>
    where
        R: BufRead,
        F: FnMut(Element) -> Result<(), E>,
        E: From<InputError>,
    {
        let mut buf = String::new();
        let mut line = 0;
        loop {
            buf.clear();
            if input.read_line(&mut buf).map_err(InputError::from)? == 0 {
                break;
            }
            line += 1;
            self.line(line, buf.trim_end_matches(['\n', '\r']), &mut sink)?;
        }
        if let Some(r) = self.summary.records.last_mut() {
            r.end = self.summary.elements;
        }
        if self.summary.elements == 0 {
            return Err(InputError::EmptyInput.into());
        }
        Ok(self.summary)
    }

    fn line<F, E>(&mut self, line: usize, text: &str, sink: &mut F) -> Result<(), E>
    where
        F: FnMut(Element) -> Result<(), E>,
        E: From<InputError>,
    {
        match self.format {
            InputFormat::Numbers => {
                for token in text.split_whitespace() {
                    self.emit(Element::unit(number(token, line)?), sink)?;
                }
            }
            InputFormat::NumbersWithWidths => {
                let fields: Vec<&str> = text.split_whitespace().collect();
                match fields[..] {
                    [] => {}
                    [v, w] => {
                        let (v, w) = (number(v, line)?, number(w, line)?);
                        if w <= 0.0 {
                            return Err(InputError::NonPositiveWidth { line }.into());
                        }
                        self.emit(Element::new(v, w), sink)?;
                    }
                    _ => return Err(InputError::FieldCount { line, found: fields.len() }.into()),
                }
            }
            InputFormat::Fasta => {
                if let Some(header) = text.strip_prefix('>') {
                    let at = self.summary.elements;
                    if let Some(r) = self.summary.records.last_mut() {
                        r.end = at;
                    }
                    let id = header.split_whitespace().next().unwrap_or("").to_string();
                    self.summary.records.push(FastaRecord { id, start: at + 1, end: at });
                } else if !text.starts_with(';') {
                    for b in text.bytes().filter(|b| !b.is_ascii_whitespace()) {
                        let score = self.scoring.score(b).unwrap_or_else(|| {
                            self.summary.unknown_symbols += 1;
                            0.0
                        });
                        if self.summary.records.is_empty() {
                            self.summary.records.push(FastaRecord { id: String::new(), start: 1, end: 0 });
                        }
                        self.emit(Element::unit(score), sink)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn emit<F, E>(&mut self, e: Element, sink: &mut F) -> Result<(), E>
    where
        F: FnMut(Element) -> Result<(), E>,
    {
        self.summary.elements += 1;
        sink(e)
    }
}

fn number(token: &str, line: usize) -> Result<f64, InputError> {
    token
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| InputError::Parse { line, token: token.to_string() })
}

/// Reads every element of `input` into memory.
pub fn parse_input<R: BufRead>(
    input: R,
    format: InputFormat,
    scoring: ScoringTable,
) -> Result<(Vec<Element>, InputSummary), InputError> {
    let mut out = Vec::new();
    let summary = ElementReader::new(format, scoring).read(input, |e| {
        out.push(e);
        Ok::<(), InputError>(())
    })?;
    Ok((out, summary))
}

/// Reads `rows <m> cols <n>` followed by `m` lines of `n` values. Blank
/// lines are skipped.
pub fn parse_matrix<R: BufRead>(input: R) -> Result<Matrix2D, InputError> {
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut next_nonblank = || -> Result<Option<(usize, String)>, InputError> {
        for (no, l) in lines.by_ref() {
            let l = l?;
            if !l.trim().is_empty() {
                return Ok(Some((no, l)));
            }
        }
        Ok(None)
    };
    let (hline, header) = next_nonblank()?.ok_or(InputError::EmptyInput)?;
    let (rows, cols) = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["rows", m, "cols", n] => match (m.parse::<usize>(), n.parse::<usize>()) {
            (Ok(m), Ok(n)) if m > 0 && n > 0 => (m, n),
            _ => return Err(InputError::MatrixHeader { line: hline }),
        },
        _ => return Err(InputError::MatrixHeader { line: hline }),
    };
    let mut values = Vec::with_capacity(rows * cols);
    let mut found = 0;
    while let Some((no, l)) = next_nonblank()? {
        let row: Vec<f64> = l.split_whitespace().map(|t| number(t, no)).collect::<Result<_, _>>()?;
        if row.len() != cols {
            return Err(InputError::MatrixRow { line: no, expected: cols, found: row.len() });
        }
        values.extend(row);
        found += 1;
    }
    if found != rows {
        return Err(InputError::MatrixRows { expected: rows, found });
    }
    Ok(Matrix2D::new(rows, cols, values).expect("shape and values checked"))
}
