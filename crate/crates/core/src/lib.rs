//! Length-constrained heaviest segments over real-valued sequences.
//!
//! Given a sequence of `(value, width)` pairs and bounds `L <= U`, a segment
//! `a_i..a_j` is feasible when its total width lies in `[L, U]`. This crate
//! answers, for feasible segments only:
//!
//! * the maximum-sum and maximum-density segment,
//! * the `k` largest sums or densities,
//! * every segment whose sum or density meets a threshold,
//! * the 2D variants over a matrix (bounds on the column axis).
//!
//! Every engine consumes the sequence as a stream of prefix points and keeps
//! only a window of `O(U)` of them. Right endpoints are grouped into batches
//! whose candidate left endpoints are split at one shared prefix point, so
//! each batch is solved by one left-to-right pass over a growing right group
//! and one right-to-left pass over a growing left group. Neither pass ever
//! deletes from its hull or heap.
//!
//! The crate is `no_std` (it needs `alloc`). The `std` feature only adds
//! `std::error::Error` plumbing through `core::error::Error`.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod batch;
pub mod density;
pub mod error;
pub mod heaps;
pub mod hull;
pub mod matrix;
pub mod oracle;
pub mod prefix;
pub mod rank;
pub mod stats;
pub mod sum;
pub mod threshold;
pub mod topk;

pub use batch::{batch_schedule, Batch, BatchProcessor, BatchView, RightEnd, SegmentStream};
pub use density::{max_density_segment, MaxDensity};
pub use error::{Error, Result};
pub use matrix::{max_subarray_2d, Matrix2D, SubarrayResult};
pub use prefix::{
    count_feasible, Element, LengthBounds, PrefixIndex, PrefixPoint, ScoredSegment, Segment,
};
pub use rank::Objective;
pub use stats::{SpaceStats, WorkCounters};
pub use sum::{max_sum_segment, MaxSum};
pub use threshold::{
    required_density_segments, required_sum_segments, DensityThreshold, RequiredDensity,
    RequiredSum,
};
pub use topk::{k_max_density_segments, k_max_sum_segments, TopKDensity, TopKRegime, TopKSum};
