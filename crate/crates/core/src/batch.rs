//! Grouping right endpoints into batches that share one split point.
//!
//! For a right end `j` the feasible left prefix indices form a contiguous
//! window `lo(j)..=hi(j)`:
//!
//! * `lo(j)` is the smallest `t` with `W[j] - W[t] <= U`,
//! * `hi(j)` is the largest `t < j` with `W[j] - W[t] >= L`.
//!
//! Both ends are nondecreasing in `j`. A batch starts at the first right end
//! with a nonempty window, takes `s = hi(first)` as its split, and extends
//! while `lo(j) <= s`. Every member then has `lo(j) <= s <= hi(j)`, so its
//! window is `G1(j) ∪ G2(j)` with `G1(j) = lo(j)..=s`, which only grows as `j`
//! decreases, and `G2(j) = s..=hi(j)`, which only grows as `j` increases.
//! For unit widths the first batch is `L..=U` with split `0` and every later
//! batch holds `U - L + 1` right ends.
//!
//! [`Batcher`] derives this schedule from a stream of prefix points while
//! keeping only the points a future batch can still reference.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::Result;
use crate::hull::HullPoint;
use crate::prefix::{Element, LengthBounds, PrefixIndex, PrefixPoint, ScoredSegment};

/// Right end `j` with its feasible window of left prefix indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RightEnd {
    pub j: usize,
    pub lo: usize,
    pub hi: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Batch {
    /// First right end.
    pub first: usize,
    /// Last right end.
    pub last: usize,
    /// Prefix index shared by both groups.
    pub split: usize,
}

impl Batch {
    pub fn len(&self) -> usize {
        self.last + 1 - self.first
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A closed batch together with the prefix points it needs.
#[derive(Debug, Clone, Copy)]
pub struct BatchView<'a> {
    bounds: LengthBounds,
    batch: Batch,
    ends: &'a [RightEnd],
    points: &'a [PrefixPoint],
    base: usize,
}

impl<'a> BatchView<'a> {
    pub fn bounds(&self) -> &LengthBounds {
        &self.bounds
    }

    pub fn batch(&self) -> Batch {
        self.batch
    }

    pub fn split(&self) -> usize {
        self.batch.split
    }

    /// Members with nonempty windows, by increasing `j`.
    pub fn ends(&self) -> &'a [RightEnd] {
        self.ends
    }

    /// Smallest left prefix index any member can use.
    pub fn min_lo(&self) -> usize {
        self.ends[0].lo
    }

    /// Largest left prefix index any member can use.
    pub fn max_hi(&self) -> usize {
        self.ends[self.ends.len() - 1].hi
    }

    #[inline]
    pub fn point(&self, t: usize) -> PrefixPoint {
        self.points[t - self.base]
    }

    #[inline]
    pub fn hull_point(&self, t: usize) -> HullPoint {
        let p = self.point(t);
        HullPoint::new(t, p.width, p.sum)
    }

    #[inline]
    pub fn score(&self, t: usize, j: usize) -> ScoredSegment {
        ScoredSegment::between(t, self.point(t), j, self.point(j))
    }
}

/// Owned schedule entry for driving a single batch from a full index.
#[derive(Debug, Clone)]
pub struct OwnedBatch {
    pub batch: Batch,
    pub ends: Vec<RightEnd>,
}

impl OwnedBatch {
    pub fn view<'a>(&'a self, idx: &'a PrefixIndex, bounds: LengthBounds) -> BatchView<'a> {
        BatchView { bounds, batch: self.batch, ends: &self.ends, points: idx.points(), base: 0 }
    }
}

/// Consumer of closed batches.
pub trait BatchProcessor {
    type Output;

    fn process(&mut self, view: &BatchView<'_>);

    fn finish(self) -> Self::Output;
}

/// Prefix points `base..base + len`.
#[derive(Debug, Clone, Default)]
struct PointWindow {
    base: usize,
    pts: VecDeque<PrefixPoint>,
}

impl PointWindow {
    fn get(&self, t: usize) -> PrefixPoint {
        self.pts[t - self.base]
    }

    fn push(&mut self, p: PrefixPoint) {
        self.pts.push_back(p);
    }

    fn trim_below(&mut self, t: usize) {
        while self.base < t && !self.pts.is_empty() {
            self.pts.pop_front();
            self.base += 1;
        }
    }
}

#[derive(Debug, Clone)]
struct OpenBatch {
    split: usize,
    ends: Vec<RightEnd>,
}

/// Incremental batch scheduler over a stream of prefix points.
#[derive(Debug, Clone)]
pub struct Batcher {
    bounds: LengthBounds,
    window: PointWindow,
    /// Index of the newest point.
    j: usize,
    last: PrefixPoint,
    lo: usize,
    /// Next left index to test against `L`; `hi(j) = hi_next - 1`.
    hi_next: usize,
    open: Option<OpenBatch>,
    peak_window: usize,
}

impl Batcher {
    pub fn new(bounds: LengthBounds) -> Self {
        let mut window = PointWindow::default();
        window.push(PrefixPoint::ORIGIN);
        Self {
            bounds,
            window,
            j: 0,
            last: PrefixPoint::ORIGIN,
            lo: 0,
            hi_next: 0,
            open: None,
            peak_window: 1,
        }
    }

    pub fn bounds(&self) -> &LengthBounds {
        &self.bounds
    }

    /// Number of points consumed, `n`.
    pub fn len(&self) -> usize {
        self.j
    }

    pub fn is_empty(&self) -> bool {
        self.j == 0
    }

    /// Largest number of prefix points held at once.
    pub fn peak_window(&self) -> usize {
        self.peak_window
    }

    pub fn push<P: BatchProcessor>(&mut self, e: Element, proc: &mut P) -> Result<()> {
        let next = self.last.advance(e, self.j + 1)?;
        self.push_point(next, proc);
        Ok(())
    }

    /// Appends point `j = len() + 1`, which must come from
    /// [`PrefixPoint::advance`] on the previous point.
    pub fn push_point<P: BatchProcessor>(&mut self, p: PrefixPoint, proc: &mut P) {
        self.j += 1;
        self.last = p;
        self.window.push(p);
        let j = self.j;
        let u = self.bounds.upper();
        let l = self.bounds.lower();
        while p.width - self.window.get(self.lo).width > u {
            self.lo += 1;
        }
        while self.hi_next < j && p.width - self.window.get(self.hi_next).width >= l {
            self.hi_next += 1;
        }
        let end = (self.hi_next > 0 && self.lo < self.hi_next)
            .then(|| RightEnd { j, lo: self.lo, hi: self.hi_next - 1 });

        if let Some(open) = &self.open {
            if self.lo > open.split {
                self.close(proc);
            }
        }
        if let Some(end) = end {
            match &mut self.open {
                Some(open) => open.ends.push(end),
                None => self.open = Some(OpenBatch { split: end.hi, ends: alloc::vec![end] }),
            }
        }

        let keep = match &self.open {
            Some(open) => open.ends[0].lo,
            None => self.lo.min(self.hi_next),
        };
        self.window.trim_below(keep.min(self.lo).min(self.hi_next));
        self.peak_window = self.peak_window.max(self.window.pts.len());
    }

    /// Processes the open batch, if any.
    pub fn flush<P: BatchProcessor>(&mut self, proc: &mut P) {
        if self.open.is_some() {
            self.close(proc);
        }
    }

    fn close<P: BatchProcessor>(&mut self, proc: &mut P) {
        let Some(open) = self.open.take() else { return };
        let first = open.ends[0].j;
        let last = open.ends[open.ends.len() - 1].j;
        let batch = Batch { first, last, split: open.split };
        let base = self.window.base;
        let points = self.window.pts.make_contiguous();
        let view = BatchView { bounds: self.bounds, batch, ends: &open.ends, points, base };
        proc.process(&view);
    }
}

/// A batch processor fed one element at a time.
#[derive(Debug, Clone)]
pub struct SegmentStream<P> {
    batcher: Batcher,
    proc: P,
}

impl<P: BatchProcessor> SegmentStream<P> {
    pub fn new(bounds: LengthBounds, proc: P) -> Self {
        Self { batcher: Batcher::new(bounds), proc }
    }

    pub fn push(&mut self, e: Element) -> Result<()> {
        self.batcher.push(e, &mut self.proc)
    }

    pub fn extend<I: IntoIterator<Item = Element>>(&mut self, elements: I) -> Result<()> {
        for e in elements {
            self.push(e)?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.batcher.len()
    }

    pub fn is_empty(&self) -> bool {
        self.batcher.is_empty()
    }

    pub fn batcher(&self) -> &Batcher {
        &self.batcher
    }

    pub fn processor(&self) -> &P {
        &self.proc
    }

    /// Flushes the open batch and hands back the processor.
    pub fn close(mut self) -> P {
        self.batcher.flush(&mut self.proc);
        self.proc
    }

    pub fn finish(self) -> P::Output {
        self.close().finish()
    }

    /// Answer for the elements seen so far; the stream keeps going.
    pub fn snapshot(&self) -> P::Output
    where
        P: Clone,
    {
        self.clone().finish()
    }
}

/// Feeds every point of `idx` through a [`Batcher`] into `proc`.
pub fn run_offline<P: BatchProcessor>(idx: &PrefixIndex, bounds: LengthBounds, proc: P) -> P {
    let mut batcher = Batcher::new(bounds);
    let mut proc = proc;
    for p in &idx.points()[1..] {
        batcher.push_point(*p, &mut proc);
    }
    batcher.flush(&mut proc);
    proc
}

#[derive(Debug, Clone, Default)]
struct Collect(Vec<OwnedBatch>);

impl BatchProcessor for Collect {
    type Output = Vec<OwnedBatch>;

    fn process(&mut self, view: &BatchView<'_>) {
        self.0.push(OwnedBatch { batch: view.batch(), ends: view.ends().to_vec() });
    }

    fn finish(self) -> Self::Output {
        self.0
    }
}

/// The batches of `idx` with their members' windows.
pub fn owned_schedule(idx: &PrefixIndex, bounds: LengthBounds) -> Vec<OwnedBatch> {
    run_offline(idx, bounds, Collect::default()).finish()
}

pub fn batch_schedule(idx: &PrefixIndex, bounds: LengthBounds) -> Vec<Batch> {
    owned_schedule(idx, bounds).into_iter().map(|b| b.batch).collect()
}
