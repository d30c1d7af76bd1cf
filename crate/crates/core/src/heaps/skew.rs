//! Self-adjusting meldable max-heap.

use alloc::boxed::Box;
use alloc::vec::Vec;

use super::select::{select_k_largest, HeapSource};

#[derive(Debug, Clone)]
pub struct Node<T> {
    item: T,
    left: Option<Box<Node<T>>>,
    right: Option<Box<Node<T>>>,
}

/// Max-heap: the greatest item under `Ord` is on top.
#[derive(Debug, Clone)]
pub struct SkewHeap<T> {
    root: Option<Box<Node<T>>>,
    len: usize,
}

impl<T> Default for SkewHeap<T> {
    fn default() -> Self {
        Self { root: None, len: 0 }
    }
}

impl<T: Ord> SkewHeap<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn peek(&self) -> Option<&T> {
        self.root.as_deref().map(|n| &n.item)
    }

    /// Cursor at the root, for [`HeapSource`] routines.
    pub fn root(&self) -> Option<&Node<T>> {
        self.root.as_deref()
    }

    pub fn push(&mut self, item: T) {
        let single = Some(Box::new(Node { item, left: None, right: None }));
        self.root = meld_nodes(self.root.take(), single);
        self.len += 1;
    }

    pub fn meld(&mut self, other: SkewHeap<T>) {
        let mut other = other;
        self.len += other.len;
        other.len = 0;
        self.root = meld_nodes(self.root.take(), other.root.take());
    }

    pub fn pop(&mut self) -> Option<T> {
        let root = self.root.take()?;
        let Node { item, left, right } = *root;
        self.root = meld_nodes(left, right);
        self.len -= 1;
        Some(item)
    }

    /// Every item, largest first.
    pub fn into_sorted_vec(mut self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.len);
        while let Some(x) = self.pop() {
            out.push(x);
        }
        out
    }

    /// Heap order holds at every node.
    pub fn check_heap_order(&self) -> bool {
        let mut stack: Vec<&Node<T>> = self.root.as_deref().into_iter().collect();
        let mut count = 0;
        while let Some(n) = stack.pop() {
            count += 1;
            for c in [&n.left, &n.right].into_iter().flatten() {
                if c.item > n.item {
                    return false;
                }
                stack.push(c);
            }
        }
        count == self.len
    }

    /// A heap holding `items`, which must be sorted largest first.
    pub fn from_descending(items: Vec<T>) -> Self {
        debug_assert!(items.windows(2).all(|w| w[0] >= w[1]));
        let len = items.len();
        let mut root = None;
        for item in items.into_iter().rev() {
            root = Some(Box::new(Node { item, left: root, right: None }));
        }
        Self { root, len }
    }
}

impl<T: Ord + Clone> SkewHeap<T> {
    /// Keeps only the `k` largest items. Returns the nodes read and the
    /// largest selection frontier.
    pub fn compact(&mut self, k: usize) -> (usize, usize) {
        if self.len <= k {
            return (0, 0);
        }
        let sel = select_k_largest(&*self, self.root(), k);
        *self = Self::from_descending(sel.items);
        (sel.visited, sel.peak_frontier)
    }
}

impl<T> Drop for SkewHeap<T> {
    fn drop(&mut self) {
        let mut stack: Vec<Box<Node<T>>> = self.root.take().into_iter().collect();
        while let Some(mut n) = stack.pop() {
            stack.extend(n.left.take());
            stack.extend(n.right.take());
        }
    }
}

/// Top-down skew meld: walk the right paths, swapping children at every
/// merged node.
fn meld_nodes<T: Ord>(a: Option<Box<Node<T>>>, b: Option<Box<Node<T>>>) -> Option<Box<Node<T>>> {
    let mut result = None;
    let mut slot = &mut result;
    let (mut a, mut b) = (a, b);
    loop {
        match (a, b) {
            (None, rest) | (rest, None) => {
                *slot = rest;
                break;
            }
            (Some(mut x), Some(mut y)) => {
                if x.item < y.item {
                    core::mem::swap(&mut x, &mut y);
                }
                let next = x.right.take();
                x.right = x.left.take();
                debug_assert!(x.right.as_ref().is_none_or(|c| c.item <= x.item));
                debug_assert!(y.item <= x.item);
                a = next;
                b = Some(y);
                let placed = slot.insert(x);
                slot = &mut placed.left;
            }
        }
    }
    result
}

impl<T: Ord + Clone> HeapSource for SkewHeap<T> {
    type Item = T;
    type Cursor<'a>
        = &'a Node<T>
    where
        T: 'a;

    fn item<'a>(&'a self, at: &'a Node<T>) -> T {
        at.item.clone()
    }

    fn children<'a>(&'a self, at: &'a Node<T>) -> [Option<&'a Node<T>>; 2] {
        [at.left.as_deref(), at.right.as_deref()]
    }
}
