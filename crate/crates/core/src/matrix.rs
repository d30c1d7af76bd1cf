//! Best subarray of a matrix under column-width bounds.
//!
//! Every row interval `r1..=r2` is collapsed column by column into a 1D
//! sequence and solved with the 1D engine. Bounds apply to the column axis
//! only; a subarray's width is its area, `(r2 - r1 + 1) * W(c1..=c2)`, and
//! its density is `sum / area`. For a fixed row interval that density is the
//! collapsed 1D density divided by the row count, so both rank column
//! intervals identically.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::density::max_density_segment;
use crate::error::{Error, Result};
use crate::prefix::{Element, LengthBounds, PrefixIndex};
use crate::rank::{cmp_f64, cmp_ratio, Objective};
use crate::sum::max_sum_segment;

/// Row-major `rows x cols` values with one positive width per column.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix2D {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
    widths: Vec<f64>,
}

impl Matrix2D {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || values.len() != rows * cols {
            return Err(Error::InvalidMatrix);
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { position: i + 1 });
        }
        Ok(Self { rows, cols, values, widths: vec![1.0; cols] })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidMatrix);
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn with_column_widths(mut self, widths: Vec<f64>) -> Result<Self> {
        if widths.len() != self.cols {
            return Err(Error::InvalidMatrix);
        }
        if let Some(c) = widths.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::NonPositiveWidth { position: c + 1, width: widths[c] });
        }
        self.widths = widths;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Value at 1-based `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.values[(r - 1) * self.cols + (c - 1)]
    }

    pub fn column_widths(&self) -> &[f64] {
        &self.widths
    }

    fn row(&self, r: usize) -> &[f64] {
        &self.values[(r - 1) * self.cols..r * self.cols]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubarrayResult {
    pub r1: usize,
    pub r2: usize,
    pub c1: usize,
    pub c2: usize,
    pub sum: f64,
    /// Area: row count times column width.
    pub width: f64,
    pub density: f64,
}

impl SubarrayResult {
    pub fn key(&self) -> (usize, usize, usize, usize) {
        (self.r1, self.r2, self.c1, self.c2)
    }
}

/// Ranks `a` against `b`: better score, then lexicographically smaller
/// `(r1, r2, c1, c2)`.
pub fn better_subarray(objective: Objective, a: &SubarrayResult, b: &SubarrayResult) -> Ordering {
    let score = match objective {
        Objective::Sum => cmp_f64(a.sum, b.sum),
        Objective::Density => cmp_ratio(a.sum, a.width, b.sum, b.width),
    };
    score.then_with(|| b.key().cmp(&a.key()))
}

/// Columns summed over rows `r1..=r2` (1-based, inclusive).
pub fn collapse_rows(mat: &Matrix2D, r1: usize, r2: usize) -> Result<Vec<Element>> {
    if r1 < 1 || r1 > r2 || r2 > mat.rows {
        return Err(Error::RowRangeInvalid { r1, r2, rows: mat.rows });
    }
    let mut acc = vec![0.0; mat.cols];
    for r in r1..=r2 {
        for (a, v) in acc.iter_mut().zip(mat.row(r)) {
            *a += v;
        }
    }
    Ok(acc.into_iter().zip(&mat.widths).map(|(v, &w)| Element::new(v, w)).collect())
}

fn solve_collapsed(
    column_sums: &[f64],
    mat: &Matrix2D,
    r1: usize,
    r2: usize,
    bounds: LengthBounds,
    objective: Objective,
) -> Result<SubarrayResult> {
    let idx = PrefixIndex::from_elements(column_sums.iter().zip(&mat.widths).map(|(&v, &w)| Element::new(v, w)))?;
    let best = match objective {
        Objective::Sum => max_sum_segment(&idx, bounds)?,
        Objective::Density => max_density_segment(&idx, bounds)?,
    };
    let h = (r2 + 1 - r1) as f64;
    let width = h * best.width;
    Ok(SubarrayResult {
        r1,
        r2,
        c1: best.start(),
        c2: best.end(),
        sum: best.sum,
        width,
        density: best.sum / width,
    })
}

/// Best subarray within rows `r1..=r2`.
pub fn solve_row_interval(
    mat: &Matrix2D,
    r1: usize,
    r2: usize,
    bounds: LengthBounds,
    objective: Objective,
) -> Result<SubarrayResult> {
    let sums: Vec<f64> = collapse_rows(mat, r1, r2)?.into_iter().map(|e| e.value).collect();
    solve_collapsed(&sums, mat, r1, r2, bounds, objective)
}

/// Best subarray whose top row is `r1`, growing the bottom row one step at
/// a time.
pub fn best_from_row(
    mat: &Matrix2D,
    r1: usize,
    bounds: LengthBounds,
    objective: Objective,
) -> Result<SubarrayResult> {
    if r1 < 1 || r1 > mat.rows {
        return Err(Error::RowRangeInvalid { r1, r2: r1, rows: mat.rows });
    }
    let mut acc = vec![0.0; mat.cols];
    let mut best: Option<SubarrayResult> = None;
    for r2 in r1..=mat.rows {
        for (a, v) in acc.iter_mut().zip(mat.row(r2)) {
            *a += v;
        }
        let cand = solve_collapsed(&acc, mat, r1, r2, bounds, objective)?;
        if best.as_ref().is_none_or(|b| better_subarray(objective, &cand, b) == Ordering::Greater) {
            best = Some(cand);
        }
    }
    best.ok_or(Error::NoFeasibleSegment)
}

/// Best subarray over all row intervals, in `O(m^2 n)` time.
pub fn max_subarray_2d(mat: &Matrix2D, bounds: LengthBounds, objective: Objective) -> Result<SubarrayResult> {
    let mut best: Option<SubarrayResult> = None;
    for r1 in 1..=mat.rows {
        let cand = best_from_row(mat, r1, bounds, objective)?;
        if best.as_ref().is_none_or(|b| better_subarray(objective, &cand, b) == Ordering::Greater) {
            best = Some(cand);
        }
    }
    best.ok_or(Error::NoFeasibleSegment)
}
