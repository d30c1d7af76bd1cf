//! Maximum-density feasible segment.
//!
//! The density of segment `(t + 1, j)` is the slope from prefix point `t` to
//! prefix point `j`. Each batch is solved by two passes that never delete a
//! hull point: a left-to-right pass whose hull grows rightward over
//! `G2(j) = s..=hi(j)`, and a right-to-left pass whose hull grows leftward
//! over `G1(j) = lo(j)..=s`.
//!
//! Within a pass a supporting line `l` of slope `mu` (the best slope seen in
//! the pass) touches the hull at position `alpha`. A right end strictly below
//! `l` cannot improve on `mu` and costs O(1); one on `l` ties at `alpha`; one
//! above it is resolved by walking the hull rightward from `alpha`.

use core::cmp::Ordering;

use crate::batch::{run_offline, BatchProcessor, BatchView};
use crate::error::{Error, Result};
use crate::hull::{HullPoint, LowerHull, TangentState};
use crate::prefix::{LengthBounds, PrefixIndex, ScoredSegment};
use crate::rank::{cmp_by_density, keep_better};
use crate::stats::{SpaceStats, WorkCounters};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

/// How a new hull point and the next right end sit relative to `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PassCase {
    /// Both on or above `l`.
    Case1,
    /// New point on or above `l`, right end below it.
    Case2,
    /// New point below `l`; right end on or above the parallel `l'` through it.
    Case3,
    /// New point below `l`; right end below `l'`.
    Case4,
}

pub fn classify(state: &TangentState, new_point: &HullPoint, query: &HullPoint) -> PassCase {
    if state.side(new_point) != Ordering::Less {
        if state.side(query) != Ordering::Less {
            PassCase::Case1
        } else {
            PassCase::Case2
        }
    } else if state.side_of_parallel(new_point, query) != Ordering::Less {
        PassCase::Case3
    } else {
        PassCase::Case4
    }
}

/// One pass's hull, tangent and running best.
#[derive(Debug, Clone, Default)]
pub struct PassState {
    pub hull: LowerHull,
    pub tangent: Option<TangentState>,
    pub best: Option<ScoredSegment>,
    pub counters: WorkCounters,
    pub peak_hull: usize,
}

impl PassState {
    pub fn new() -> Self {
        Self::default()
    }

    fn reset(&mut self) {
        self.hull.clear();
        self.tangent = None;
        self.best = None;
    }

    fn push(&mut self, dir: Direction, p: HullPoint) {
        let before = self.hull.len();
        let pops = match dir {
            Direction::LeftToRight => self.hull.push_right(p),
            Direction::RightToLeft => self.hull.push_left(p),
        }
        .expect("prefix widths strictly increase");
        self.counters.hull_pushes += 1;
        self.counters.hull_pops += pops as u64;
        self.peak_hull = self.peak_hull.max(self.hull.len());
        let Some(tg) = &mut self.tangent else { return };
        let side = tg.side(&p);
        let (new_pos, alpha_popped) = match dir {
            Direction::LeftToRight => (self.hull.len() - 1, tg.alpha >= before - pops),
            Direction::RightToLeft => (0, tg.alpha < pops),
        };
        // a new point on `l` only takes over as contact when it lies left of it
        let take_new = side == Ordering::Less
            || (side == Ordering::Equal && dir == Direction::RightToLeft);
        if take_new {
            tg.alpha = new_pos;
            tg.anchor = p;
        } else if alpha_popped {
            // only possible through rounding; fall back to a full search
            self.tangent = None;
        } else if dir == Direction::RightToLeft {
            tg.alpha = tg.alpha + 1 - pops;
        }
    }

    fn query(&mut self, view: &BatchView<'_>, j: usize) {
        if self.hull.is_empty() {
            return;
        }
        self.counters.right_ends += 1;
        let q = view.hull_point(j);
        let contact = match &mut self.tangent {
            None => {
                let tg = self.hull.scan(&q, 0);
                self.counters.tangent_steps += tg.steps as u64;
                self.tangent = Some(TangentState { mu: tg.slope, alpha: tg.pos, anchor: tg.point });
                tg.point.t
            }
            Some(state) => match state.side(&q) {
                Ordering::Less => return,
                Ordering::Equal => self.hull.get(state.alpha).expect("contact lies on the hull").t,
                Ordering::Greater => {
                    let tg = self.hull.scan(&q, state.alpha);
                    self.counters.tangent_steps += tg.steps as u64;
                    *state = TangentState { mu: tg.slope, alpha: tg.pos, anchor: tg.point };
                    tg.point.t
                }
            },
        };
        keep_better(&mut self.best, view.score(contact, j), cmp_by_density);
    }
}

/// Runs one pass over `view`, using only left indices accepted by `active`.
/// The split point belongs to both groups unless `include_split` is false,
/// in which case the right-to-left group omits it.
pub(crate) fn run_pass(
    view: &BatchView<'_>,
    dir: Direction,
    state: &mut PassState,
    active: &dyn Fn(usize) -> bool,
    include_split: bool,
) -> Option<ScoredSegment> {
    state.reset();
    let s = view.split();
    match dir {
        Direction::LeftToRight => {
            let mut next = s;
            for e in view.ends() {
                while next <= e.hi {
                    if active(next) {
                        state.push(dir, view.hull_point(next));
                    }
                    next += 1;
                }
                state.query(view, e.j);
            }
        }
        Direction::RightToLeft => {
            let mut next = if include_split { s + 1 } else { s };
            for e in view.ends().iter().rev() {
                while next > e.lo {
                    next -= 1;
                    if active(next) {
                        state.push(dir, view.hull_point(next));
                    }
                }
                state.query(view, e.j);
            }
        }
    }
    state.best
}

/// Best segment of the batch whose left end lies in `G2(j)`.
pub fn lr_pass(view: &BatchView<'_>, state: &mut PassState) -> Option<ScoredSegment> {
    run_pass(view, Direction::LeftToRight, state, &|_| true, true)
}

/// Best segment of the batch whose left end lies in `G1(j)`.
pub fn rl_pass(view: &BatchView<'_>, state: &mut PassState) -> Option<ScoredSegment> {
    run_pass(view, Direction::RightToLeft, state, &|_| true, true)
}

/// Streaming maximum-density engine.
#[derive(Debug, Clone, Default)]
pub struct MaxDensity {
    lr: PassState,
    rl: PassState,
    best: Option<ScoredSegment>,
}

impl MaxDensity {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn best(&self) -> Option<ScoredSegment> {
        self.best
    }

    pub fn counters(&self) -> WorkCounters {
        let mut c = self.lr.counters;
        c += self.rl.counters;
        c
    }

    pub fn space(&self) -> SpaceStats {
        let mut s = SpaceStats::default();
        s.observe(self.lr.peak_hull.max(self.rl.peak_hull), 0, 0, 0);
        s
    }
}

impl BatchProcessor for MaxDensity {
    type Output = Result<ScoredSegment>;

    fn process(&mut self, view: &BatchView<'_>) {
        for (dir, state) in
            [(Direction::LeftToRight, &mut self.lr), (Direction::RightToLeft, &mut self.rl)]
        {
            if let Some(b) = run_pass(view, dir, state, &|_| true, true) {
                keep_better(&mut self.best, b, cmp_by_density);
            }
        }
    }

    fn finish(self) -> Result<ScoredSegment> {
        self.best.ok_or(Error::NoFeasibleSegment)
    }
}

pub fn max_density_segment(idx: &PrefixIndex, bounds: LengthBounds) -> Result<ScoredSegment> {
    run_offline(idx, bounds, MaxDensity::new()).finish()
}
