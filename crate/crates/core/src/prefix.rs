//! Input representation, prefix indexing, feasibility and scoring.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// One input item `(a_i, w_i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Element {
    pub value: f64,
    pub width: f64,
}

impl Element {
    pub fn new(value: f64, width: f64) -> Self {
        Self { value, width }
    }

    /// Element of unit width.
    pub fn unit(value: f64) -> Self {
        Self { value, width: 1.0 }
    }
}

/// The plane point `(W[t], P[t])` for prefix index `t`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PrefixPoint {
    /// Cumulative width `W[t]`.
    pub width: f64,
    /// Prefix sum `P[t]`.
    pub sum: f64,
}

impl PrefixPoint {
    pub const ORIGIN: PrefixPoint = PrefixPoint { width: 0.0, sum: 0.0 };

    /// Point after appending `e`; `position` is the 1-based index of `e`.
    ///
    /// Every ingestion path goes through here so that streamed and bulk
    /// prefix sums are bit-identical.
    pub fn advance(self, e: Element, position: usize) -> Result<PrefixPoint> {
        if !e.value.is_finite() || !e.width.is_finite() {
            return Err(Error::NonFinite { position });
        }
        if e.width <= 0.0 {
            return Err(Error::NonPositiveWidth { position, width: e.width });
        }
        let next = PrefixPoint { width: self.width + e.width, sum: self.sum + e.value };
        if next.width <= self.width {
            return Err(Error::WidthAbsorbed { position });
        }
        if !next.sum.is_finite() {
            return Err(Error::NonFinite { position });
        }
        Ok(next)
    }
}

/// Prefix sums `P[0..=n]` and cumulative widths `W[0..=n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixIndex {
    points: Vec<PrefixPoint>,
}

impl Default for PrefixIndex {
    fn default() -> Self {
        Self::new()
    }
}

impl PrefixIndex {
    pub fn new() -> Self {
        Self { points: alloc::vec![PrefixPoint::ORIGIN] }
    }

    pub fn from_elements<I: IntoIterator<Item = Element>>(elements: I) -> Result<Self> {
        let mut idx = Self::new();
        for e in elements {
            idx.push(e)?;
        }
        Ok(idx)
    }

    /// Uniform widths.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        Self::from_elements(values.iter().map(|&v| Element::unit(v)))
    }

    pub fn push(&mut self, e: Element) -> Result<()> {
        let last = *self.points.last().expect("origin is always present");
        let next = last.advance(e, self.points.len())?;
        self.points.push(next);
        Ok(())
    }

    /// Number of elements `n`.
    pub fn len(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, t: usize) -> PrefixPoint {
        self.points[t]
    }

    pub fn points(&self) -> &[PrefixPoint] {
        &self.points
    }

    pub fn prefix_sums(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.sum).collect()
    }

    pub fn cumulative_widths(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.width).collect()
    }

    pub fn total_width(&self) -> f64 {
        self.points[self.len()].width
    }

    pub fn contains(&self, seg: Segment) -> bool {
        seg.start >= 1 && seg.start <= seg.end && seg.end <= self.len()
    }

    /// Sum, width and density of `seg`.
    ///
    /// # Panics
    ///
    /// If `seg` does not lie inside the sequence.
    pub fn score(&self, seg: Segment) -> ScoredSegment {
        assert!(self.contains(seg), "segment {seg} outside sequence of length {}", self.len());
        ScoredSegment::between(seg.start - 1, self.point(seg.start - 1), seg.end, self.point(seg.end))
    }

    /// `L <= W[j] - W[i-1] <= U`.
    pub fn is_feasible(&self, seg: Segment, bounds: &LengthBounds) -> bool {
        self.contains(seg)
            && bounds.contains(width_between(self.point(seg.start - 1), self.point(seg.end)))
    }
}

/// `W[j] - W[t]`, the single expression every feasibility test uses.
#[inline]
pub fn width_between(left: PrefixPoint, right: PrefixPoint) -> f64 {
    right.width - left.width
}

/// Closed interval `[L, U]` of admissible segment widths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthBounds {
    lower: f64,
    upper: f64,
}

impl LengthBounds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower > 0.0 && lower <= upper) {
            return Err(Error::InvalidBounds { lower, upper });
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// `U - L`.
    pub fn spread(&self) -> f64 {
        self.upper - self.lower
    }

    #[inline]
    pub fn contains(&self, width: f64) -> bool {
        self.lower <= width && width <= self.upper
    }
}

/// 1-based inclusive index pair `(i, j)`. Orders lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
}

impl Segment {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(1 <= start && start <= end);
        Self { start, end }
    }

    /// Segment `a_{t+1}..a_j` between prefix points `t < j`.
    pub fn from_prefixes(t: usize, j: usize) -> Self {
        Self::new(t + 1, j)
    }

    /// Prefix index of the left endpoint, `i - 1`.
    pub fn left_prefix(&self) -> usize {
        self.start - 1
    }

    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredSegment {
    pub segment: Segment,
    pub sum: f64,
    pub width: f64,
    pub density: f64,
}

impl ScoredSegment {
    /// Scores the segment between prefix points `t < j`.
    #[inline]
    pub fn between(t: usize, left: PrefixPoint, j: usize, right: PrefixPoint) -> Self {
        let sum = right.sum - left.sum;
        let width = width_between(left, right);
        Self { segment: Segment::from_prefixes(t, j), sum, width, density: sum / width }
    }

    pub fn start(&self) -> usize {
        self.segment.start
    }

    pub fn end(&self) -> usize {
        self.segment.end
    }
}

/// Number of feasible segments for uniform widths:
/// `(n - U + 1)(U - L + 1) + (U - L)(U - L + 1) / 2`.
pub fn count_feasible(n: usize, lower: u64, upper: u64) -> Result<u64> {
    let n64 = n as u64;
    if lower < 1 || lower > upper || upper > n64 {
        return Err(Error::BoundsOutOfRange { n, lower, upper });
    }
    let spread = upper - lower;
    Ok((n64 - upper + 1) * (spread + 1) + spread * (spread + 1) / 2)
}
