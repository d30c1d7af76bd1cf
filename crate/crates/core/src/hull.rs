//! Incremental lower convex hull over prefix points.
//!
//! Points are appended at one end only (right for a left-to-right pass,
//! left for a right-to-left pass), so no point ever has to be deleted from
//! the far end. All geometric predicates cross-multiply instead of dividing.

use alloc::collections::VecDeque;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::rank::cmp_f64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HullPoint {
    /// Prefix index.
    pub t: usize,
    /// `W[t]`.
    pub x: f64,
    /// `P[t]`.
    pub y: f64,
}

impl HullPoint {
    pub fn new(t: usize, x: f64, y: f64) -> Self {
        Self { t, x, y }
    }
}

/// Slope as an unreduced `rise / run` with `run > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slope {
    pub rise: f64,
    pub run: f64,
}

impl Slope {
    /// Slope of the segment from `a` to `b`; requires `b.x > a.x`.
    #[inline]
    pub fn between(a: &HullPoint, b: &HullPoint) -> Self {
        debug_assert!(b.x > a.x);
        Self { rise: b.y - a.y, run: b.x - a.x }
    }

    pub fn value(&self) -> f64 {
        self.rise / self.run
    }

    #[inline]
    pub fn compare(&self, other: &Slope) -> Ordering {
        cmp_f64(self.rise * other.run, other.rise * self.run)
    }
}

/// Sign of `slope(a, b) - slope(c, d)`.
pub fn slope_compare(a: &HullPoint, b: &HullPoint, c: &HullPoint, d: &HullPoint) -> Result<Ordering> {
    if b.x <= a.x || d.x <= c.x {
        return Err(Error::DegenerateSpan);
    }
    Ok(Slope::between(a, b).compare(&Slope::between(c, d)))
}

/// Whether `mid` must leave the lower hull of `left, mid, right`
/// (it lies on or above the chord from `left` to `right`).
#[inline]
fn not_below_chord(left: &HullPoint, mid: &HullPoint, right: &HullPoint) -> bool {
    Slope::between(left, mid).compare(&Slope::between(mid, right)) != Ordering::Less
}

/// Result of a tangent search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tangent {
    /// Hull position of the contact point.
    pub pos: usize,
    pub point: HullPoint,
    pub slope: Slope,
    /// Vertices stepped over.
    pub steps: usize,
}

/// Lower hull with strictly increasing x and strictly increasing edge slopes.
///
/// Positions run `0..len()` in x order.
#[derive(Debug, Clone, Default)]
pub struct LowerHull {
    pts: VecDeque<HullPoint>,
    pushes: u64,
    pops: u64,
}

impl LowerHull {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(cap: usize) -> Self {
        Self { pts: VecDeque::with_capacity(cap), pushes: 0, pops: 0 }
    }

    /// Empties the hull, keeping its allocation and counters.
    pub fn clear(&mut self) {
        self.pts.clear();
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn get(&self, pos: usize) -> Option<&HullPoint> {
        self.pts.get(pos)
    }

    pub fn first(&self) -> Option<&HullPoint> {
        self.pts.front()
    }

    pub fn last(&self) -> Option<&HullPoint> {
        self.pts.back()
    }

    pub fn iter(&self) -> impl Iterator<Item = &HullPoint> + '_ {
        self.pts.iter()
    }

    pub fn pushes(&self) -> u64 {
        self.pushes
    }

    pub fn pops(&self) -> u64 {
        self.pops
    }

    /// Appends `p` on the right; returns how many vertices were popped.
    /// Collinear vertices are popped, keeping the hull strictly convex.
    pub fn push_right(&mut self, p: HullPoint) -> Result<usize> {
        if let Some(last) = self.pts.back() {
            if p.x <= last.x {
                return Err(Error::NonMonotoneX { x: p.x });
            }
        }
        let mut popped = 0;
        while self.pts.len() >= 2 {
            let n = self.pts.len();
            if not_below_chord(&self.pts[n - 2], &self.pts[n - 1], &p) {
                self.pts.pop_back();
                popped += 1;
            } else {
                break;
            }
        }
        self.pts.push_back(p);
        self.pushes += 1;
        self.pops += popped as u64;
        Ok(popped)
    }

    /// Prepends `p` on the left; returns how many vertices were popped.
    pub fn push_left(&mut self, p: HullPoint) -> Result<usize> {
        if let Some(first) = self.pts.front() {
            if p.x >= first.x {
                return Err(Error::NonMonotoneX { x: p.x });
            }
        }
        let mut popped = 0;
        while self.pts.len() >= 2 {
            if not_below_chord(&p, &self.pts[0], &self.pts[1]) {
                self.pts.pop_front();
                popped += 1;
            } else {
                break;
            }
        }
        self.pts.push_front(p);
        self.pushes += 1;
        self.pops += popped as u64;
        Ok(popped)
    }

    /// Hull vertex maximizing `slope(v, q)` for a query point right of the
    /// hull, searching rightward from `start`.
    ///
    /// The slope is unimodal along the hull, so the scan stops at the first
    /// vertex that does not strictly improve; among equal maxima the leftmost
    /// is returned. The caller guarantees the maximum is not left of `start`.
    pub fn tangent_from(&self, q: &HullPoint, start: usize) -> Result<Tangent> {
        let last = self.pts.back().ok_or(Error::EmptyHull)?;
        if start >= self.pts.len() {
            return Err(Error::InvalidHullPosition { pos: start });
        }
        if q.x <= last.x {
            return Err(Error::NonMonotoneX { x: q.x });
        }
        Ok(self.scan(q, start))
    }

    #[inline]
    pub(crate) fn scan(&self, q: &HullPoint, start: usize) -> Tangent {
        let mut pos = start;
        let mut slope = Slope::between(&self.pts[pos], q);
        while pos + 1 < self.pts.len() {
            let next = Slope::between(&self.pts[pos + 1], q);
            if next.compare(&slope) == Ordering::Greater {
                pos += 1;
                slope = next;
            } else {
                break;
            }
        }
        Tangent { pos, point: self.pts[pos], slope, steps: pos - start }
    }

    /// Checks strict convexity and monotone x.
    pub fn is_convex(&self) -> bool {
        let v: alloc::vec::Vec<_> = self.pts.iter().collect();
        v.windows(2).all(|w| w[1].x > w[0].x)
            && v.windows(3).all(|w| !not_below_chord(w[0], w[1], w[2]))
    }
}

/// Supporting line `l` with slope `mu` touching the hull at `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentState {
    /// Best slope found so far.
    pub mu: Slope,
    /// Hull position of the contact point.
    pub alpha: usize,
    /// A point on `l`.
    pub anchor: HullPoint,
}

impl TangentState {
    /// Position of `p` relative to `l`: `Greater` is strictly above.
    #[inline]
    pub fn side(&self, p: &HullPoint) -> Ordering {
        cmp_f64((p.y - self.anchor.y) * self.mu.run, self.mu.rise * (p.x - self.anchor.x))
    }

    /// Position of `q` relative to the parallel to `l` through `p`.
    #[inline]
    pub fn side_of_parallel(&self, through: &HullPoint, q: &HullPoint) -> Ordering {
        cmp_f64((q.y - through.y) * self.mu.run, self.mu.rise * (q.x - through.x))
    }
}
