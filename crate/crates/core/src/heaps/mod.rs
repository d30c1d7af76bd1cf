//! Heaps used by the k-best and threshold engines.

pub mod persistent;
pub mod select;
pub mod skew;

pub use persistent::{BatchHeap, OffsetEntry, Version, VersionCursor};
pub use select::{enumerate_at_least, select_k_largest, HeapSource, Selection};
pub use skew::SkewHeap;
