//! Partially persistent max-heap of candidate left endpoints.
//!
//! Each push creates a new version that shares all untouched nodes with the
//! previous one (path copying on a leftist heap), so every older version
//! stays readable. Read through a [`VersionCursor`], an entry with key `key`
//! has value `offset + key`; with keys `-P[t]` and offset `P[j]` that is the
//! sum of segment `(t + 1, j)`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::select::HeapSource;
use crate::rank::cmp_f64;

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Node {
    key: f64,
    t: usize,
    left: u32,
    right: u32,
    rank: u32,
}

/// Handle to one version; version 0 is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Version(pub usize);

#[derive(Debug, Clone, Default)]
pub struct BatchHeap {
    nodes: Vec<Node>,
    roots: Vec<u32>,
}

/// Larger key first, then smaller `t`.
#[inline]
fn entry_order(ka: f64, ta: usize, kb: f64, tb: usize) -> Ordering {
    cmp_f64(ka, kb).then_with(|| tb.cmp(&ta))
}

impl BatchHeap {
    pub fn new() -> Self {
        Self { nodes: Vec::new(), roots: alloc::vec![NIL] }
    }

    /// Drops every version, keeping the allocations.
    pub fn clear(&mut self) {
        self.nodes.clear();
        self.roots.clear();
        self.roots.push(NIL);
    }

    /// Physical nodes, including path copies.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn latest(&self) -> Version {
        Version(self.roots.len() - 1)
    }

    /// New version holding the latest one plus `(t, key)`.
    pub fn push(&mut self, t: usize, key: f64) -> Version {
        let single = self.alloc(Node { key, t, left: NIL, right: NIL, rank: 1 });
        let root = self.meld(self.roots[self.roots.len() - 1], single);
        self.roots.push(root);
        self.latest()
    }

    /// Largest `(key, t)` in version `v`.
    pub fn peek(&self, v: Version) -> Option<(f64, usize)> {
        let r = self.roots[v.0];
        (r != NIL).then(|| (self.nodes[r as usize].key, self.nodes[r as usize].t))
    }

    /// Cursor at the root of `v`, reading values as `offset + key`.
    pub fn cursor(&self, v: Version, offset: f64, tag: usize) -> Option<VersionCursor> {
        let r = self.roots[v.0];
        (r != NIL).then_some(VersionCursor { node: r, offset, tag })
    }

    /// All `(key, t)` of version `v` in heap (preorder) layout.
    pub fn entries(&self, v: Version) -> Vec<(f64, usize)> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        if self.roots[v.0] != NIL {
            stack.push(self.roots[v.0]);
        }
        while let Some(i) = stack.pop() {
            let n = &self.nodes[i as usize];
            out.push((n.key, n.t));
            for c in [n.right, n.left] {
                if c != NIL {
                    stack.push(c);
                }
            }
        }
        out
    }

    /// Heap order holds in version `v`.
    pub fn check_heap_order(&self, v: Version) -> bool {
        let mut stack = Vec::new();
        if self.roots[v.0] != NIL {
            stack.push(self.roots[v.0]);
        }
        while let Some(i) = stack.pop() {
            let n = self.nodes[i as usize];
            for c in [n.left, n.right] {
                if c != NIL {
                    let cn = self.nodes[c as usize];
                    if entry_order(cn.key, cn.t, n.key, n.t) == Ordering::Greater {
                        return false;
                    }
                    stack.push(c);
                }
            }
        }
        true
    }

    fn alloc(&mut self, n: Node) -> u32 {
        let id = u32::try_from(self.nodes.len()).expect("persistent heap exceeds u32 nodes");
        self.nodes.push(n);
        id
    }

    fn rank(&self, i: u32) -> u32 {
        if i == NIL {
            0
        } else {
            self.nodes[i as usize].rank
        }
    }

    /// Melds two heaps, copying every node on the merge path. Depth is
    /// bounded by the sum of the right-spine lengths, which is logarithmic.
    fn meld(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        let (na, nb) = (self.nodes[a as usize], self.nodes[b as usize]);
        let (top, other) =
            if entry_order(na.key, na.t, nb.key, nb.t) != Ordering::Less { (na, b) } else { (nb, a) };
        let right = self.meld(top.right, other);
        let (mut left, mut right) = (top.left, right);
        if self.rank(left) < self.rank(right) {
            core::mem::swap(&mut left, &mut right);
        }
        let rank = self.rank(right) + 1;
        self.alloc(Node { key: top.key, t: top.t, left, right, rank })
    }
}

/// A node of one version, read with that version's offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VersionCursor {
    node: u32,
    offset: f64,
    tag: usize,
}

/// `value = offset + key` for left prefix `t` under tag `tag` (a right end).
///
/// Orders by value, then smaller `t`, then smaller `tag`, so the greatest
/// entry is the best segment under the lexicographic tie-break.
#[derive(Debug, Clone, Copy)]
pub struct OffsetEntry {
    pub value: f64,
    pub t: usize,
    pub tag: usize,
}

impl PartialEq for OffsetEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for OffsetEntry {}

impl PartialOrd for OffsetEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OffsetEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_f64(self.value, other.value)
            .then_with(|| other.t.cmp(&self.t))
            .then_with(|| other.tag.cmp(&self.tag))
    }
}

impl HeapSource for BatchHeap {
    type Item = OffsetEntry;
    type Cursor<'a> = VersionCursor;

    fn item(&self, at: VersionCursor) -> OffsetEntry {
        let n = &self.nodes[at.node as usize];
        OffsetEntry { value: at.offset + n.key, t: n.t, tag: at.tag }
    }

    fn children(&self, at: VersionCursor) -> [Option<VersionCursor>; 2] {
        let n = &self.nodes[at.node as usize];
        let wrap = |c: u32| (c != NIL).then_some(VersionCursor { node: c, ..at });
        [wrap(n.left), wrap(n.right)]
    }
}
