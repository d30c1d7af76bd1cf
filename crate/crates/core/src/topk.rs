//! The `k` best feasible segments by sum or by density.
//!
//! Candidates from each batch are melded into a running [`SkewHeap`] that is
//! periodically cut back to its best entries, so only `O(k)` candidates
//! survive from one batch to the next.

use alloc::vec;
use alloc::vec::Vec;

use crate::batch::{run_offline, BatchProcessor, BatchView};
use crate::density::{run_pass, Direction, PassState};
use crate::error::{Error, Result};
use crate::heaps::{select_k_largest, BatchHeap, SkewHeap, VersionCursor};
use crate::prefix::{LengthBounds, PrefixIndex, ScoredSegment};
use crate::rank::{ByDensity, BySum};
use crate::stats::{SpaceStats, WorkCounters};
use crate::sum::heap_pass;

/// Streaming top-`k` by sum.
#[derive(Debug, Clone)]
pub struct TopKSum {
    k: usize,
    heap: BatchHeap,
    carry: SkewHeap<BySum>,
    counters: WorkCounters,
    space: SpaceStats,
}

impl TopKSum {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        Ok(Self {
            k,
            heap: BatchHeap::new(),
            carry: SkewHeap::new(),
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
}

impl BatchProcessor for TopKSum {
    type Output = Result<Vec<ScoredSegment>>;

    fn process(&mut self, view: &BatchView<'_>) {
        // the split joins the left-to-right group only, so no pair is seen twice
        for (dir, include_split) in [(Direction::LeftToRight, true), (Direction::RightToLeft, false)] {
            let mut roots: Vec<VersionCursor> = Vec::with_capacity(view.ends().len());
            heap_pass(view, dir, &mut self.heap, include_split, &mut self.counters, |h, v, e| {
                roots.extend(h.cursor(v, view.point(e.j).sum, e.j));
            });
            let sel = select_k_largest(&self.heap, roots.iter().copied(), self.k);
            self.counters.nodes_visited += sel.visited as u64;
            self.space.observe(0, self.heap.node_count(), self.carry.len(), sel.peak_frontier);
            for entry in sel.items {
                self.carry.push(BySum(view.score(entry.t, entry.tag)));
            }
            let carried = self.carry.len();
            let (visited, frontier) = self.carry.compact(self.k);
            self.counters.nodes_visited += visited as u64;
            self.space.observe(0, self.heap.node_count(), carried, frontier);
        }
    }

    fn finish(self) -> Result<Vec<ScoredSegment>> {
        let mut carry = self.carry.clone();
        carry.compact(self.k);
        let out: Vec<ScoredSegment> = carry.into_sorted_vec().into_iter().map(|s| s.0).collect();
        if out.is_empty() {
            return Err(Error::NoFeasibleSegment);
        }
        Ok(out)
    }
}

pub fn k_max_sum_segments(idx: &PrefixIndex, bounds: LengthBounds, k: usize) -> Result<Vec<ScoredSegment>> {
    run_offline(idx, bounds, TopKSum::new(k)?).finish()
}

/// Candidate collection strategy for top-`k` density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TopKRegime {
    /// Small-`k` when `k <= U - L`, otherwise large-`k`.
    #[default]
    Auto,
    /// Repeated pass maxima with deletion of the winning left endpoint.
    SmallK,
    /// Every feasible segment of the batch.
    LargeK,
}

impl TopKRegime {
    pub fn resolve(self, k: usize, bounds: &LengthBounds) -> TopKRegime {
        match self {
            TopKRegime::Auto if (k as f64) <= bounds.spread() => TopKRegime::SmallK,
            TopKRegime::Auto => TopKRegime::LargeK,
            r => r,
        }
    }
}

/// Small-`k` candidates of one batch.
///
/// In each pass the best remaining pair is found `k` times; after each
/// round its left endpoint `x` is removed from the pass, and every feasible
/// segment of the batch that starts at `x` is reported. Any segment among
/// the batch's `k` best starts at one of the removed endpoints.
pub fn smallk_candidates<F>(view: &BatchView<'_>, k: usize, state: &mut PassState, mut emit: F)
where
    F: FnMut(ScoredSegment),
{
    let base = view.min_lo();
    let s = view.split();
    let mut split_row_done = false;
    for dir in [Direction::LeftToRight, Direction::RightToLeft] {
        let mut deleted = vec![false; view.max_hi() + 1 - base];
        for _ in 0..k {
            let active = |t: usize| !deleted[t - base];
            let Some(best) = run_pass(view, dir, state, &active, true) else { break };
            let x = best.segment.left_prefix();
            deleted[x - base] = true;
            if x == s {
                if split_row_done {
                    continue;
                }
                split_row_done = true;
            }
            for e in view.ends() {
                if e.lo <= x && x <= e.hi {
                    emit(view.score(x, e.j));
                }
            }
        }
    }
}

/// Every feasible segment whose right end is in the batch.
pub fn all_batch_segments<F>(view: &BatchView<'_>, mut emit: F)
where
    F: FnMut(ScoredSegment),
{
    for e in view.ends() {
        for t in e.lo..=e.hi {
            emit(view.score(t, e.j));
        }
    }
}

/// Streaming top-`k` by density.
#[derive(Debug, Clone)]
pub struct TopKDensity {
    k: usize,
    regime: TopKRegime,
    resolved: Option<TopKRegime>,
    pass: PassState,
    carry: SkewHeap<ByDensity>,
    counters: WorkCounters,
    space: SpaceStats,
}

impl TopKDensity {
    pub fn new(k: usize, regime: TopKRegime) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        Ok(Self {
            k,
            regime,
            resolved: None,
            pass: PassState::new(),
            carry: SkewHeap::new(),
            counters: WorkCounters::default(),
            space: SpaceStats::default(),
        })
    }

    /// Regime actually used, once the first batch has been seen.
    pub fn regime(&self) -> Option<TopKRegime> {
        self.resolved
    }

    pub fn counters(&self) -> WorkCounters {
        let mut c = self.counters;
        c += self.pass.counters;
        c
    }

    pub fn space(&self) -> SpaceStats {
        let mut s = self.space;
        s.observe(self.pass.peak_hull, 0, 0, 0);
        s
    }

}

/// Running best-`k` carry, cut back to `k` whenever it reaches `2k + 1`.
#[derive(Debug)]
struct Carry<'a> {
    heap: &'a mut SkewHeap<ByDensity>,
    k: usize,
    counters: &'a mut WorkCounters,
    space: &'a mut SpaceStats,
    hull: usize,
}

impl Carry<'_> {
    fn insert(&mut self, seg: ScoredSegment) {
        self.heap.push(ByDensity(seg));
        self.counters.heap_inserts += 1;
        self.space.observe(self.hull, 0, self.heap.len(), 0);
        if self.heap.len() > 2 * self.k {
            self.compact();
        }
    }

    fn compact(&mut self) {
        let carried = self.heap.len();
        let (visited, frontier) = self.heap.compact(self.k);
        self.counters.nodes_visited += visited as u64;
        self.space.observe(self.hull, 0, carried, frontier);
    }
}

impl BatchProcessor for TopKDensity {
    type Output = Result<Vec<ScoredSegment>>;

    fn process(&mut self, view: &BatchView<'_>) {
        let regime = *self.resolved.get_or_insert(self.regime.resolve(self.k, view.bounds()));
        let mut carry = Carry {
            heap: &mut self.carry,
            k: self.k,
            counters: &mut self.counters,
            space: &mut self.space,
            hull: self.pass.peak_hull,
        };
        match regime {
            TopKRegime::SmallK => smallk_candidates(view, self.k, &mut self.pass, |s| carry.insert(s)),
            _ => all_batch_segments(view, |s| carry.insert(s)),
        }
        carry.compact();
    }

    fn finish(self) -> Result<Vec<ScoredSegment>> {
        let mut carry = self.carry.clone();
        carry.compact(self.k);
        let out: Vec<ScoredSegment> = carry.into_sorted_vec().into_iter().map(|s| s.0).collect();
        if out.is_empty() {
            return Err(Error::NoFeasibleSegment);
        }
        Ok(out)
    }
}

pub fn k_max_density_segments(
    idx: &PrefixIndex,
    bounds: LengthBounds,
    k: usize,
    regime: TopKRegime,
) -> Result<Vec<ScoredSegment>> {
    run_offline(idx, bounds, TopKDensity::new(k, regime)?).finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::batch::owned_schedule;
    use crate::oracle::{enumerate_feasible, oracle_top_k};
    use crate::prefix::Segment;
    use crate::rank::{cmp_by_density, Objective};
    use alloc::collections::BTreeSet;
    use proptest::prelude::*;

    fn idx(values: &[f64]) -> PrefixIndex {
        PrefixIndex::from_values(values).unwrap()
    }

    fn b(l: f64, u: f64) -> LengthBounds {
        LengthBounds::new(l, u).unwrap()
    }

    fn segs(v: &[ScoredSegment]) -> Vec<(usize, usize)> {
        v.iter().map(|s| (s.start(), s.end())).collect()
    }

    #[test]
    fn sum_examples() {
        let p = idx(&[2.0, -3.0, 4.0, -1.0, 2.0]);
        let got = k_max_sum_segments(&p, b(2.0, 3.0), 3).unwrap();
        assert_eq!(segs(&got), vec![(3, 5), (1, 3), (3, 4)]);
        assert_eq!(got.iter().map(|s| s.sum).collect::<Vec<_>>(), vec![5.0, 3.0, 3.0]);
        let one = k_max_sum_segments(&p, b(2.0, 3.0), 1).unwrap();
        assert_eq!(one[0], crate::sum::max_sum_segment(&p, b(2.0, 3.0)).unwrap());
        let all = k_max_sum_segments(&p, b(2.0, 3.0), 7).unwrap();
        assert_eq!(all, oracle_top_k(&p, b(2.0, 3.0), 7, Objective::Sum));
        assert_eq!(k_max_sum_segments(&p, b(2.0, 3.0), 0), Err(Error::ZeroK));
    }

    #[test]
    fn density_examples() {
        let p = idx(&[2.0, -3.0, 4.0, -1.0, 2.0]);
        for regime in [TopKRegime::Auto, TopKRegime::SmallK, TopKRegime::LargeK] {
            let got = k_max_density_segments(&p, b(2.0, 3.0), 2, regime).unwrap();
            assert_eq!(segs(&got), vec![(3, 5), (3, 4)]);
            assert_eq!(got[0].density, 5.0 / 3.0);
            assert_eq!(got[1].density, 1.5);
            let one = k_max_density_segments(&p, b(2.0, 3.0), 1, regime).unwrap();
            assert_eq!(one[0], crate::density::max_density_segment(&p, b(2.0, 3.0)).unwrap());
        }
        let ones = idx(&[1.0; 4]);
        let got = k_max_density_segments(&ones, b(2.0, 2.0), 3, TopKRegime::Auto).unwrap();
        assert_eq!(segs(&got), vec![(1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn regime_choice() {
        let bounds = b(2.0, 5.0);
        assert_eq!(TopKRegime::Auto.resolve(3, &bounds), TopKRegime::SmallK);
        assert_eq!(TopKRegime::Auto.resolve(4, &bounds), TopKRegime::LargeK);
        assert_eq!(TopKRegime::SmallK.resolve(40, &bounds), TopKRegime::SmallK);
    }

    #[test]
    fn smallk_rows_on_two_ends() {
        // batch with right ends {4, 5}
        let p = idx(&[2.0, -3.0, 4.0, -1.0, 2.0]);
        let sched = owned_schedule(&p, b(2.0, 3.0));
        let view = sched[1].view(&p, b(2.0, 3.0));
        let mut got = Vec::new();
        smallk_candidates(&view, 2, &mut PassState::new(), |s| got.push(s.segment));
        let got: BTreeSet<Segment> = got.into_iter().collect();
        let mut batch: Vec<ScoredSegment> = enumerate_feasible(&p, b(2.0, 3.0))
            .into_iter()
            .filter(|s| s.end() >= 4)
            .collect();
        batch.sort_by(|x, y| cmp_by_density(y, x));
        for s in &batch[..2] {
            assert!(got.contains(&s.segment));
        }
    }

    fn arb_instance() -> impl Strategy<Value = (Vec<i32>, usize, usize, usize)> {
        proptest::collection::vec(-10i32..=10, 1..150).prop_flat_map(|v| {
            let n = v.len();
            (Just(v), 1..=n).prop_flat_map(move |(v, l)| {
                let n = v.len();
                (Just(v), Just(l), l..=n, 1usize..=25)
            })
        })
    }

    proptest! {
        #[test]
        fn sum_matches_oracle((vals, l, u, k) in arb_instance()) {
            let p = idx(&vals.iter().map(|&x| x as f64).collect::<Vec<_>>());
            let bounds = b(l as f64, u as f64);
            let got = k_max_sum_segments(&p, bounds, k).unwrap();
            prop_assert_eq!(got, oracle_top_k(&p, bounds, k, Objective::Sum));
        }

        #[test]
        fn density_matches_oracle_in_both_regimes((vals, l, u, k) in arb_instance()) {
            let p = idx(&vals.iter().map(|&x| x as f64).collect::<Vec<_>>());
            let bounds = b(l as f64, u as f64);
            let want = oracle_top_k(&p, bounds, k, Objective::Density);
            for regime in [TopKRegime::SmallK, TopKRegime::LargeK] {
                let got = k_max_density_segments(&p, bounds, k, regime).unwrap();
                prop_assert_eq!(segs(&got), segs(&want));
            }
        }

        #[test]
        fn smallk_candidates_contain_batch_top_k((vals, l, u, k) in arb_instance()) {
            let p = idx(&vals.iter().map(|&x| x as f64).collect::<Vec<_>>());
            let bounds = b(l as f64, u as f64);
            let all = enumerate_feasible(&p, bounds);
            let mut state = PassState::new();
            for ob in owned_schedule(&p, bounds) {
                let mut got = BTreeSet::new();
                let mut count = 0;
                smallk_candidates(&ob.view(&p, bounds), k, &mut state, |s| {
                    got.insert(s.segment);
                    count += 1;
                });
                prop_assert_eq!(count, got.len());
                let mut batch: Vec<ScoredSegment> = all
                    .iter()
                    .filter(|s| ob.batch.first <= s.end() && s.end() <= ob.batch.last)
                    .copied()
                    .collect();
                batch.sort_by(|x, y| cmp_by_density(y, x));
                for s in batch.iter().take(k) {
                    prop_assert!(got.contains(&s.segment));
                }
            }
        }

        #[test]
        fn results_grow_by_prefix((vals, l, u, k) in arb_instance()) {
            let p = idx(&vals.iter().map(|&x| x as f64).collect::<Vec<_>>());
            let bounds = b(l as f64, u as f64);
            let a = k_max_sum_segments(&p, bounds, k).unwrap();
            let c = k_max_sum_segments(&p, bounds, k + 1).unwrap();
            prop_assert_eq!(&c[..a.len()], &a[..]);
            let a = k_max_density_segments(&p, bounds, k, TopKRegime::Auto).unwrap();
            let c = k_max_density_segments(&p, bounds, k + 1, TopKRegime::Auto).unwrap();
            prop_assert_eq!(segs(&c[..a.len()]), segs(&a));
        }
    }
}
