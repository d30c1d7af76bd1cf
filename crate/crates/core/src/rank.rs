//! Total orders on scored segments.
//!
//! "Greater" always means "ranks higher": a larger score, and among equal
//! scores the lexicographically smaller `(i, j)`. Densities are compared by
//! cross-multiplying `(sum, width)` pairs, never by dividing.

use core::cmp::Ordering;

use crate::prefix::ScoredSegment;

/// What a query maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Sum,
    Density,
}

/// `partial_cmp` on finite reals; `-0.0 == 0.0`.
#[inline]
pub fn cmp_f64(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}

/// Compares `sa / wa` with `sb / wb` for positive widths.
#[inline]
pub fn cmp_ratio(sa: f64, wa: f64, sb: f64, wb: f64) -> Ordering {
    cmp_f64(sa * wb, sb * wa)
}

pub fn cmp_by_sum(a: &ScoredSegment, b: &ScoredSegment) -> Ordering {
    cmp_f64(a.sum, b.sum).then_with(|| b.segment.cmp(&a.segment))
}

pub fn cmp_by_density(a: &ScoredSegment, b: &ScoredSegment) -> Ordering {
    cmp_ratio(a.sum, a.width, b.sum, b.width).then_with(|| b.segment.cmp(&a.segment))
}

pub fn cmp_by(objective: Objective, a: &ScoredSegment, b: &ScoredSegment) -> Ordering {
    match objective {
        Objective::Sum => cmp_by_sum(a, b),
        Objective::Density => cmp_by_density(a, b),
    }
}

/// Keeps whichever of `best` and `candidate` ranks higher.
#[inline]
pub(crate) fn keep_better(
    best: &mut Option<ScoredSegment>,
    candidate: ScoredSegment,
    cmp: fn(&ScoredSegment, &ScoredSegment) -> Ordering,
) {
    match best {
        Some(b) if cmp(b, &candidate) != Ordering::Less => {}
        _ => *best = Some(candidate),
    }
}

macro_rules! ranked {
    ($name:ident, $cmp:path) => {
        #[derive(Debug, Clone, Copy)]
        pub struct $name(pub ScoredSegment);

        impl PartialEq for $name {
            fn eq(&self, other: &Self) -> bool {
                self.cmp(other) == Ordering::Equal
            }
        }

        impl Eq for $name {}

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        impl Ord for $name {
            fn cmp(&self, other: &Self) -> Ordering {
                $cmp(&self.0, &other.0)
            }
        }
    };
}

ranked!(BySum, cmp_by_sum);
ranked!(ByDensity, cmp_by_density);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefix::{PrefixIndex, Segment};

    #[test]
    fn ties_prefer_smaller_pairs() {
        let idx = PrefixIndex::from_values(&[2.0, -3.0, 4.0, -1.0, 2.0]).unwrap();
        let a = idx.score(Segment::new(1, 3));
        let b = idx.score(Segment::new(3, 4));
        assert_eq!(a.sum, b.sum);
        assert_eq!(cmp_by_sum(&a, &b), Ordering::Greater);
        assert!(BySum(a) > BySum(b));
        let c = idx.score(Segment::new(3, 5));
        assert_eq!(cmp_by_density(&c, &b), Ordering::Greater);
    }

    #[test]
    fn zero_signs_compare_equal() {
        assert_eq!(cmp_f64(-0.0, 0.0), Ordering::Equal);
        assert_eq!(cmp_ratio(1.0, 3.0, 2.0, 6.0), Ordering::Equal);
    }
}
