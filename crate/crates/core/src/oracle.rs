//! Brute-force reference answers.
//!
//! Everything here enumerates feasible segments directly and is meant for
//! checking the engines, not for speed.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::matrix::{better_subarray, Matrix2D, SubarrayResult};
use crate::prefix::{LengthBounds, PrefixIndex, ScoredSegment, Segment};
use crate::rank::{cmp_by, Objective};
use crate::threshold::DensityThreshold;

/// Every feasible segment, ordered by `(i, j)`.
pub fn enumerate_feasible(idx: &PrefixIndex, bounds: LengthBounds) -> Vec<ScoredSegment> {
    let mut out = Vec::new();
    for j in 1..=idx.len() {
        for t in (0..j).rev() {
            let width = idx.point(j).width - idx.point(t).width;
            if width > bounds.upper() {
                break;
            }
            if width >= bounds.lower() {
                out.push(idx.score(Segment::from_prefixes(t, j)));
            }
        }
    }
    out.sort_by_key(|s| s.segment);
    out
}

fn descending(objective: Objective) -> impl Fn(&ScoredSegment, &ScoredSegment) -> Ordering {
    move |a, b| cmp_by(objective, b, a)
}

pub fn oracle_max(idx: &PrefixIndex, bounds: LengthBounds, objective: Objective) -> Option<ScoredSegment> {
    enumerate_feasible(idx, bounds).into_iter().min_by(descending(objective))
}

/// Best segment ending at `j`, if any.
pub fn oracle_window_max(idx: &PrefixIndex, bounds: LengthBounds, j: usize, objective: Objective) -> Option<ScoredSegment> {
    enumerate_feasible(idx, bounds).into_iter().filter(|s| s.end() == j).min_by(descending(objective))
}

pub fn oracle_top_k(idx: &PrefixIndex, bounds: LengthBounds, k: usize, objective: Objective) -> Vec<ScoredSegment> {
    let mut all = enumerate_feasible(idx, bounds);
    all.sort_by(descending(objective));
    all.truncate(k);
    all
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    Sum(f64),
    Density(DensityThreshold),
}

/// Feasible segments meeting the threshold, ordered by `(i, j)`.
pub fn oracle_above(idx: &PrefixIndex, bounds: LengthBounds, d: Threshold, strict: bool) -> Vec<ScoredSegment> {
    enumerate_feasible(idx, bounds)
        .into_iter()
        .filter(|s| match d {
            Threshold::Sum(x) => {
                if strict {
                    s.sum > x
                } else {
                    s.sum >= x
                }
            }
            Threshold::Density(t) => t.admits(s.sum, s.width, strict),
        })
        .collect()
}

/// Best subarray by direct enumeration of all rectangles.
pub fn oracle_subarray_2d(mat: &Matrix2D, bounds: LengthBounds, objective: Objective) -> Option<SubarrayResult> {
    let widths = mat.column_widths();
    let mut best: Option<SubarrayResult> = None;
    for r1 in 1..=mat.rows() {
        for r2 in r1..=mat.rows() {
            for c1 in 1..=mat.cols() {
                for c2 in c1..=mat.cols() {
                    let w: f64 = widths[c1 - 1..c2].iter().sum();
                    if !bounds.contains(w) {
                        continue;
                    }
                    let mut sum = 0.0;
                    for r in r1..=r2 {
                        for c in c1..=c2 {
                            sum += mat.get(r, c);
                        }
                    }
                    let area = (r2 + 1 - r1) as f64 * w;
                    let cand = SubarrayResult { r1, r2, c1, c2, sum, width: area, density: sum / area };
                    if best.as_ref().is_none_or(|b| better_subarray(objective, &cand, b) == Ordering::Greater) {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefix::{count_feasible, Element};
    use alloc::vec;

    fn sample() -> PrefixIndex {
        PrefixIndex::from_values(&[2.0, -3.0, 4.0, -1.0, 2.0]).unwrap()
    }

    fn b(l: f64, u: f64) -> LengthBounds {
        LengthBounds::new(l, u).unwrap()
    }

    fn pairs(v: &[ScoredSegment]) -> Vec<(usize, usize)> {
        v.iter().map(|s| (s.start(), s.end())).collect()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_feasible(&sample(), b(2.0, 3.0)).len(), 7);
        assert_eq!(pairs(&enumerate_feasible(&sample(), b(5.0, 5.0))), vec![(1, 5)]);
        assert!(enumerate_feasible(&sample(), b(6.0, 9.0)).is_empty());
    }

    #[test]
    fn top_k_examples() {
        let p = sample();
        assert_eq!(pairs(&oracle_top_k(&p, b(2.0, 3.0), 3, Objective::Sum)), vec![(3, 5), (1, 3), (3, 4)]);
        assert_eq!(pairs(&oracle_top_k(&p, b(2.0, 3.0), 2, Objective::Density)), vec![(3, 5), (3, 4)]);
        let ones = PrefixIndex::from_values(&[1.0; 4]).unwrap();
        assert_eq!(pairs(&oracle_top_k(&ones, b(2.0, 2.0), 3, Objective::Density)), vec![(1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn above_examples() {
        let p = sample();
        assert_eq!(pairs(&oracle_above(&p, b(2.0, 3.0), Threshold::Sum(3.0), false)), vec![(1, 3), (3, 4), (3, 5)]);
        assert_eq!(
            pairs(&oracle_above(&p, b(2.0, 3.0), Threshold::Density(1.0.into()), false)),
            vec![(1, 3), (3, 4), (3, 5)]
        );
        assert!(oracle_above(&p, b(2.0, 3.0), Threshold::Sum(5.0), true).is_empty());
    }

    #[test]
    fn window_max_example() {
        let p = PrefixIndex::from_values(&[5.0, -9.0, 1.0, 1.0, 5.0]).unwrap();
        let s = oracle_window_max(&p, b(2.0, 4.0), 5, Objective::Density).unwrap();
        assert_eq!((s.start(), s.end(), s.density), (4, 5, 3.0));
        let s = oracle_window_max(&p, b(2.0, 4.0), 5, Objective::Sum).unwrap();
        assert_eq!((s.start(), s.end(), s.sum), (3, 5, 7.0));
    }

    #[test]
    fn enumeration_matches_count() {
        for n in 1..=30usize {
            let p = PrefixIndex::from_values(&vec![0.0; n]).unwrap();
            for l in 1..=n {
                for u in l..=n {
                    let got = enumerate_feasible(&p, b(l as f64, u as f64)).len() as u64;
                    assert_eq!(got, count_feasible(n, l as u64, u as u64).unwrap());
                }
            }
        }
    }

    #[test]
    fn weighted_enumeration() {
        let w = PrefixIndex::from_elements([Element::new(3.0, 1.0), Element::new(1.0, 2.0), Element::new(-2.0, 1.0)])
            .unwrap();
        assert_eq!(pairs(&enumerate_feasible(&w, b(2.0, 3.0))), vec![(1, 2), (2, 2), (2, 3)]);
    }

    #[test]
    fn subarray_example_counts() {
        let m = Matrix2D::from_rows(&[vec![1.0, -2.0, 3.0], vec![2.0, 1.0, -4.0]]).unwrap();
        let r = oracle_subarray_2d(&m, b(1.0, 2.0), Objective::Sum).unwrap();
        assert_eq!((r.key(), r.sum), ((1, 1, 3, 3), 3.0));
        // 3 row intervals times 5 column intervals of length 1 or 2
        let mut count = 0;
        for _r in 0..3 {
            for c1 in 1..=3usize {
                for c2 in c1..=3usize {
                    if c2 - c1 < 2 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 15);
    }
}
