//! Maximum-sum feasible segment.
//!
//! The sum of `(t + 1, j)` is `P[j] + (-P[t])`. Each pass of a batch pushes
//! the keys `-P[t]` of its growing group into a [`BatchHeap`]; the version
//! current at right end `j` holds exactly that group of `j`'s window, read
//! with offset `P[j]`.

use crate::batch::{run_offline, BatchProcessor, BatchView, OwnedBatch, RightEnd};
use crate::density::Direction;
use crate::error::{Error, Result};
use crate::heaps::{BatchHeap, Version};
use crate::prefix::{LengthBounds, PrefixIndex, ScoredSegment};
use crate::rank::{cmp_by_sum, keep_better};
use crate::stats::{SpaceStats, WorkCounters};

/// Runs one pass, calling `visit` with the version for each right end.
/// With `include_split` false the right-to-left group omits the split.
pub(crate) fn heap_pass<F>(
    view: &BatchView<'_>,
    dir: Direction,
    heap: &mut BatchHeap,
    include_split: bool,
    counters: &mut WorkCounters,
    mut visit: F,
) where
    F: FnMut(&BatchHeap, Version, &RightEnd),
{
    heap.clear();
    let s = view.split();
    let mut push = |heap: &mut BatchHeap, t: usize| {
        heap.push(t, -view.point(t).sum);
        counters.heap_inserts += 1;
    };
    match dir {
        Direction::LeftToRight => {
            let mut next = s;
            for e in view.ends() {
                while next <= e.hi {
                    push(heap, next);
                    next += 1;
                }
                visit(heap, heap.latest(), e);
            }
        }
        Direction::RightToLeft => {
            let mut next = if include_split { s + 1 } else { s };
            for e in view.ends().iter().rev() {
                while next > e.lo {
                    next -= 1;
                    push(heap, next);
                }
                visit(heap, heap.latest(), e);
            }
        }
    }
    counters.heap_nodes += heap.node_count() as u64;
    counters.right_ends += view.ends().len() as u64;
}

/// Streaming maximum-sum engine.
#[derive(Debug, Clone, Default)]
pub struct MaxSum {
    heap: BatchHeap,
    best: Option<ScoredSegment>,
    counters: WorkCounters,
    space: SpaceStats,
}

impl MaxSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn best(&self) -> Option<ScoredSegment> {
        self.best
    }

    pub fn counters(&self) -> WorkCounters {
        self.counters
    }

    pub fn space(&self) -> SpaceStats {
        self.space
    }
}

fn pass_best(view: &BatchView<'_>, heap: &mut BatchHeap, dir: Direction, counters: &mut WorkCounters) -> Option<ScoredSegment> {
    let mut best = None;
    heap_pass(view, dir, heap, true, counters, |h, v, e| {
        if let Some((_, t)) = h.peek(v) {
            keep_better(&mut best, view.score(t, e.j), cmp_by_sum);
        }
    });
    best
}

/// Best segment whose right end lies in the batch.
pub fn batch_max(idx: &PrefixIndex, bounds: LengthBounds, batch: &OwnedBatch) -> Option<ScoredSegment> {
    let view = batch.view(idx, bounds);
    let mut heap = BatchHeap::new();
    let mut counters = WorkCounters::default();
    let mut best = pass_best(&view, &mut heap, Direction::LeftToRight, &mut counters);
    if let Some(b) = pass_best(&view, &mut heap, Direction::RightToLeft, &mut counters) {
        keep_better(&mut best, b, cmp_by_sum);
    }
    best
}

impl BatchProcessor for MaxSum {
    type Output = Result<ScoredSegment>;

    fn process(&mut self, view: &BatchView<'_>) {
        for dir in [Direction::LeftToRight, Direction::RightToLeft] {
            if let Some(b) = pass_best(view, &mut self.heap, dir, &mut self.counters) {
                keep_better(&mut self.best, b, cmp_by_sum);
            }
            self.space.observe(0, self.heap.node_count(), 0, 0);
        }
    }

    fn finish(self) -> Result<ScoredSegment> {
        self.best.ok_or(Error::NoFeasibleSegment)
    }
}

pub fn max_sum_segment(idx: &PrefixIndex, bounds: LengthBounds) -> Result<ScoredSegment> {
    run_offline(idx, bounds, MaxSum::new()).finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::batch::{owned_schedule, Batch};
    use crate::oracle::{enumerate_feasible, oracle_max};
    use crate::prefix::{Element, Segment};
    use crate::rank::Objective;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn idx(values: &[f64]) -> PrefixIndex {
        PrefixIndex::from_values(values).unwrap()
    }

    fn b(l: f64, u: f64) -> LengthBounds {
        LengthBounds::new(l, u).unwrap()
    }

    #[test]
    fn examples() {
        let s = max_sum_segment(&idx(&[2.0, -3.0, 4.0, -1.0, 2.0]), b(2.0, 3.0)).unwrap();
        assert_eq!((s.segment, s.sum), (Segment::new(3, 5), 5.0));
        let s = max_sum_segment(&idx(&[-1.0, -2.0, -3.0]), b(2.0, 2.0)).unwrap();
        assert_eq!((s.segment, s.sum), (Segment::new(1, 2), -3.0));
        let w = PrefixIndex::from_elements([
            Element::new(3.0, 1.0),
            Element::new(1.0, 2.0),
            Element::new(-2.0, 1.0),
        ])
        .unwrap();
        let s = max_sum_segment(&w, b(2.0, 3.0)).unwrap();
        assert_eq!((s.segment, s.sum), (Segment::new(1, 2), 4.0));
        assert_eq!(max_sum_segment(&idx(&[1.0]), b(2.0, 2.0)), Err(Error::NoFeasibleSegment));
    }

    #[test]
    fn batch_examples() {
        let p = idx(&[2.0, -3.0, 4.0, -1.0, 2.0]);
        let sched = owned_schedule(&p, b(2.0, 3.0));
        assert_eq!(sched[1].batch, Batch { first: 4, last: 5, split: 2 });
        let s = batch_max(&p, b(2.0, 3.0), &sched[1]).unwrap();
        assert_eq!((s.segment, s.sum), (Segment::new(3, 5), 5.0));

        let p = idx(&[5.0, -9.0, 1.0, 1.0, 5.0]);
        let sched = owned_schedule(&p, b(2.0, 4.0));
        let last = sched.last().unwrap();
        assert_eq!(last.batch.len(), 1);
        let s = batch_max(&p, b(2.0, 4.0), last).unwrap();
        assert_eq!((s.segment, s.sum), (Segment::new(3, 5), 7.0));
    }

    fn arb_values() -> impl Strategy<Value = (Vec<i32>, usize, usize)> {
        proptest::collection::vec(-10i32..=10, 1..200).prop_flat_map(|v| {
            let n = v.len();
            (Just(v), 1..=n).prop_flat_map(move |(v, l)| (Just(v), Just(l), l..=n))
        })
    }

    proptest! {
        #[test]
        fn batch_max_matches_oracle_per_batch((vals, l, u) in arb_values()) {
            let p = idx(&vals.iter().map(|&x| x as f64).collect::<Vec<_>>());
            let bounds = b(l as f64, u as f64);
            let all = enumerate_feasible(&p, bounds);
            for ob in owned_schedule(&p, bounds) {
                let got = batch_max(&p, bounds, &ob).unwrap();
                let want = all
                    .iter()
                    .filter(|s| ob.batch.first <= s.end() && s.end() <= ob.batch.last)
                    .copied()
                    .max_by(cmp_by_sum)
                    .unwrap();
                prop_assert_eq!(got.segment, want.segment);
                prop_assert_eq!(got.sum, want.sum);
            }
        }

        #[test]
        fn matches_oracle((vals, l, u) in arb_values()) {
            let p = idx(&vals.iter().map(|&x| x as f64).collect::<Vec<_>>());
            let bounds = b(l as f64, u as f64);
            let got = max_sum_segment(&p, bounds).unwrap();
            let want = oracle_max(&p, bounds, Objective::Sum).unwrap();
            prop_assert_eq!((got.segment, got.sum), (want.segment, want.sum));
        }

        #[test]
        fn at_most_two_inserts_per_point((vals, l, u) in arb_values()) {
            let p = idx(&vals.iter().map(|&x| x as f64).collect::<Vec<_>>());
            let engine = run_offline(&p, b(l as f64, u as f64), MaxSum::new());
            prop_assert!(engine.counters().heap_inserts <= 2 * vals.len() as u64 + 2);
        }
    }
}
