//! Selection over heap-ordered forests.
//!
//! Both routines only ever look at a node after its parent, so their work is
//! governed by the output size rather than by the size of the heap.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// A heap-ordered forest: every child's item is `<=` its parent's.
pub trait HeapSource {
    type Item: Ord + Clone;
    type Cursor<'a>: Copy
    where
        Self: 'a;

    fn item<'a>(&'a self, at: Self::Cursor<'a>) -> Self::Item;

    fn children<'a>(&'a self, at: Self::Cursor<'a>) -> [Option<Self::Cursor<'a>>; 2];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection<T> {
    /// Selected items, largest first.
    pub items: Vec<T>,
    /// Nodes whose item was read.
    pub visited: usize,
    /// Largest frontier (selection) or stack (enumeration) size.
    pub peak_frontier: usize,
}

struct Frontier<T, C> {
    item: T,
    at: C,
}

impl<T: Ord, C> PartialEq for Frontier<T, C> {
    fn eq(&self, other: &Self) -> bool {
        self.item == other.item
    }
}

impl<T: Ord, C> Eq for Frontier<T, C> {}

impl<T: Ord, C> PartialOrd for Frontier<T, C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord, C> Ord for Frontier<T, C> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.item.cmp(&other.item)
    }
}

/// The `k` largest items of the forest rooted at `roots`, in descending order.
///
/// A node enters the frontier only once its parent has been selected, so at
/// most `2k + r` nodes are read for `r` roots.
pub fn select_k_largest<'a, S, I>(src: &'a S, roots: I, k: usize) -> Selection<S::Item>
where
    S: HeapSource,
    I: IntoIterator<Item = S::Cursor<'a>>,
{
    let mut frontier: BinaryHeap<Frontier<S::Item, S::Cursor<'a>>> = BinaryHeap::new();
    let mut visited = 0;
    for at in roots {
        visited += 1;
        frontier.push(Frontier { item: src.item(at), at });
    }
    let mut peak_frontier = frontier.len();
    let mut items = Vec::with_capacity(k.min(frontier.len().max(16)));
    while items.len() < k {
        let Some(top) = frontier.pop() else { break };
        for child in src.children(top.at).into_iter().flatten() {
            visited += 1;
            frontier.push(Frontier { item: src.item(child), at: child });
        }
        peak_frontier = peak_frontier.max(frontier.len());
        items.push(top.item);
    }
    Selection { items, visited, peak_frontier }
}

/// Every item for which `keep` holds, given that `keep` is monotone along
/// heap order (if it fails at a node it fails below it). Items come out in
/// depth-first order.
pub fn enumerate_at_least<'a, S, I, F>(src: &'a S, roots: I, mut keep: F) -> Selection<S::Item>
where
    S: HeapSource,
    I: IntoIterator<Item = S::Cursor<'a>>,
    F: FnMut(&S::Item) -> bool,
{
    let mut stack: Vec<S::Cursor<'a>> = roots.into_iter().collect();
    let mut items = Vec::new();
    let mut visited = 0;
    let mut peak_frontier = stack.len();
    while let Some(at) = stack.pop() {
        visited += 1;
        let item = src.item(at);
        if !keep(&item) {
            continue;
        }
        items.push(item);
        stack.extend(src.children(at).into_iter().flatten());
        peak_frontier = peak_frontier.max(stack.len());
    }
    Selection { items, visited, peak_frontier }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heaps::SkewHeap;
    use alloc::vec;
    use proptest::prelude::*;

    fn heap_of(keys: &[i64]) -> SkewHeap<i64> {
        let mut h = SkewHeap::new();
        for &k in keys {
            h.push(k);
        }
        h
    }

    #[test]
    fn select_examples() {
        let h = heap_of(&[5, 3, 1]);
        assert_eq!(select_k_largest(&h, h.root(), 2).items, vec![5, 3]);
        assert_eq!(select_k_largest(&h, h.root(), 10).items, vec![5, 3, 1]);
        let empty = SkewHeap::<i64>::new();
        assert!(select_k_largest(&empty, empty.root(), 3).items.is_empty());
    }

    #[test]
    fn enumerate_examples() {
        let h = heap_of(&[5, 3, 1]);
        let mut got = enumerate_at_least(&h, h.root(), |&x| x >= 3).items;
        got.sort();
        assert_eq!(got, vec![3, 5]);
        let sel = enumerate_at_least(&h, h.root(), |&x| x >= 6);
        assert!(sel.items.is_empty());
        assert_eq!(sel.visited, 1);
        assert_eq!(enumerate_at_least(&h, h.root(), |_| true).items.len(), 3);
    }

    proptest! {
        #[test]
        fn select_matches_sort(keys in proptest::collection::vec(-1000i64..1000, 0..2000), k in 1usize..2500) {
            let h = heap_of(&keys);
            let sel = select_k_largest(&h, h.root(), k);
            let mut sorted = keys.clone();
            sorted.sort_by(|a, b| b.cmp(a));
            sorted.truncate(k);
            prop_assert_eq!(&sel.items, &sorted);
            prop_assert!(sel.visited <= 2 * sel.items.len() + 1);
        }

        #[test]
        fn enumerate_is_output_sensitive(keys in proptest::collection::vec(-1000i64..1000, 0..2000), d in -1100i64..1100) {
            let h = heap_of(&keys);
            let sel = enumerate_at_least(&h, h.root(), |&x| x >= d);
            let mut got = sel.items.clone();
            got.sort();
            let mut want: Vec<i64> = keys.iter().copied().filter(|&x| x >= d).collect();
            want.sort();
            prop_assert_eq!(got, want);
            prop_assert!(sel.visited <= 2 * sel.items.len() + 1);
        }
    }

    #[test]
    fn select_on_ten_thousand() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let keys: Vec<i64> = (0..10_000).map(|_| rng.gen_range(-50..50)).collect();
            let h = heap_of(&keys);
            let k = rng.gen_range(1..=10_000);
            let mut sorted = keys.clone();
            sorted.sort_by(|a, b| b.cmp(a));
            sorted.truncate(k);
            assert_eq!(select_k_largest(&h, h.root(), k).items, sorted);
        }
    }
}
