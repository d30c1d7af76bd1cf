//! Every feasible segment whose sum or density meets a threshold.
//!
//! Output comes batch by batch, sorted by `(i, j)` inside each batch. The
//! comparison is `>=` unless the strict flag asks for `>`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::batch::{run_offline, BatchProcessor, BatchView};
use crate::density::Direction;
use crate::error::{Error, Result};
use crate::heaps::{enumerate_at_least, BatchHeap};
use crate::prefix::{LengthBounds, PrefixIndex, PrefixPoint, ScoredSegment};
use crate::rank::cmp_f64;
use crate::stats::{SpaceStats, WorkCounters};
use crate::sum::heap_pass;

/// Streaming report of segments with sum at least (or above) `d`.
#[derive(Debug, Clone)]
pub struct RequiredSum {
    d: f64,
    strict: bool,
    heap: BatchHeap,
    out: Vec<ScoredSegment>,
    counters: WorkCounters,
    space: SpaceStats,
}

impl RequiredSum {
    pub fn new(d: f64, strict: bool) -> Result<Self> {
        if d.is_nan() {
            return Err(Error::InvalidThreshold);
        }
        Ok(Self {
            d,
            strict,
            heap: BatchHeap::new(),
            out: Vec::new(),
            counters: WorkCounters::default(),
            space: SpaceStats::default(),
        })
    }

    pub fn counters(&self) -> WorkCounters {
        self.counters
    }

    pub fn space(&self) -> SpaceStats {
        self.space
    }

    pub fn found(&self) -> &[ScoredSegment] {
        &self.out
    }
}

impl BatchProcessor for RequiredSum {
    type Output = Vec<ScoredSegment>;

    fn process(&mut self, view: &BatchView<'_>) {
        let start = self.out.len();
        let (d, strict) = (self.d, self.strict);
        for (dir, include_split) in [(Direction::LeftToRight, true), (Direction::RightToLeft, false)] {
            let out = &mut self.out;
            let mut visited = 0;
            let mut peak = 0;
            heap_pass(view, dir, &mut self.heap, include_split, &mut self.counters, |h, v, e| {
                let root = h.cursor(v, view.point(e.j).sum, e.j);
                let sel = enumerate_at_least(h, root, |x| {
                    if strict {
                        x.value > d
                    } else {
                        x.value >= d
                    }
                });
                visited += sel.visited;
                peak = peak.max(sel.peak_frontier);
                out.extend(sel.items.iter().map(|x| view.score(x.t, x.tag)));
            });
            self.counters.nodes_visited += visited as u64;
            self.space.observe(0, self.heap.node_count(), 0, peak);
        }
        self.out[start..].sort_by_key(|s| s.segment);
    }

    fn finish(self) -> Vec<ScoredSegment> {
        self.out
    }
}

pub fn required_sum_segments(idx: &PrefixIndex, bounds: LengthBounds, d: f64, strict: bool) -> Result<Vec<ScoredSegment>> {
    Ok(run_offline(idx, bounds, RequiredSum::new(d, strict)?).finish())
}

/// Density threshold `num / den` with `den > 0`.
///
/// Keeping the ratio lets thresholds equal to an actual segment density be
/// compared without rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityThreshold {
    pub num: f64,
    pub den: f64,
}

impl DensityThreshold {
    pub fn new(num: f64, den: f64) -> Result<Self> {
        if num.is_nan() || !(den.is_finite() && den > 0.0) {
            return Err(Error::InvalidThreshold);
        }
        Ok(Self { num, den })
    }

    pub fn value(&self) -> f64 {
        self.num / self.den
    }

    /// Whether a segment with this sum and width passes.
    pub fn admits(&self, sum: f64, width: f64, strict: bool) -> bool {
        let ord = cmp_f64(self.den * sum, self.num * width);
        ord == Ordering::Greater || (!strict && ord == Ordering::Equal)
    }
}

impl From<f64> for DensityThreshold {
    fn from(d: f64) -> Self {
        Self { num: d, den: 1.0 }
    }
}

/// `c = den·P[t] − num·W[t]`. For `t < j`, segment `(t + 1, j)` has density
/// at least `num / den` exactly when `c_t <= c_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterceptKey {
    pub t: usize,
    pub c: f64,
}

#[inline]
fn intercept(p: PrefixPoint, d: &DensityThreshold) -> f64 {
    d.den * p.sum - d.num * p.width
}

pub fn intercept_key(idx: &PrefixIndex, t: usize, d: DensityThreshold) -> InterceptKey {
    InterceptKey { t, c: intercept(idx.point(t), &d) }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct OrdF64(f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_f64(self.0, other.0)
    }
}

/// Streaming report of segments with density at least (or above) a threshold.
#[derive(Debug, Clone)]
pub struct RequiredDensity {
    d: DensityThreshold,
    strict: bool,
    keys: BTreeSet<(OrdF64, usize)>,
    out: Vec<ScoredSegment>,
    counters: WorkCounters,
    space: SpaceStats,
}

impl RequiredDensity {
    pub fn new(d: DensityThreshold, strict: bool) -> Self {
        Self {
            d,
            strict,
            keys: BTreeSet::new(),
            out: Vec::new(),
            counters: WorkCounters::default(),
            space: SpaceStats::default(),
        }
    }

    pub fn counters(&self) -> WorkCounters {
        self.counters
    }

    pub fn space(&self) -> SpaceStats {
        self.space
    }

    fn report(&mut self, view: &BatchView<'_>, j: usize) {
        let cj = OrdF64(intercept(view.point(j), &self.d));
        let hits = if self.strict {
            self.keys.range(..(cj, 0))
        } else {
            self.keys.range(..=(cj, usize::MAX))
        };
        let before = self.out.len();
        self.out.extend(hits.map(|&(_, t)| view.score(t, j)));
        self.counters.nodes_visited += (self.out.len() - before) as u64 + 1;
    }
}

impl BatchProcessor for RequiredDensity {
    type Output = Vec<ScoredSegment>;

    fn process(&mut self, view: &BatchView<'_>) {
        let start = self.out.len();
        if self.d.num.is_infinite() {
            // every density is finite: all pass below, none pass above
            if self.d.num < 0.0 {
                for e in view.ends() {
                    self.out.extend((e.lo..=e.hi).map(|t| view.score(t, e.j)));
                }
            }
        } else {
            let s = view.split();
            let d = self.d;
            let key = move |t: usize| (OrdF64(intercept(view.point(t), &d)), t);

            self.keys.clear();
            let mut next = s;
            for e in view.ends() {
                while next <= e.hi {
                    self.keys.insert(key(next));
                    self.counters.heap_inserts += 1;
                    next += 1;
                }
                self.report(view, e.j);
            }
            self.space.observe(0, 0, self.keys.len(), 0);

            self.keys.clear();
            let mut next = s;
            for e in view.ends().iter().rev() {
                while next > e.lo {
                    next -= 1;
                    self.keys.insert(key(next));
                    self.counters.heap_inserts += 1;
                }
                self.report(view, e.j);
            }
            self.space.observe(0, 0, self.keys.len(), 0);
        }
        self.out[start..].sort_by_key(|s| s.segment);
    }

    fn finish(self) -> Vec<ScoredSegment> {
        self.out
    }
}

pub fn required_density_segments(
    idx: &PrefixIndex,
    bounds: LengthBounds,
    d: DensityThreshold,
    strict: bool,
) -> Vec<ScoredSegment> {
    run_offline(idx, bounds, RequiredDensity::new(d, strict)).finish()
}
