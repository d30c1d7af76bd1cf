//! Operation counters and peak-occupancy gauges.

/// Cumulative work performed by an engine.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WorkCounters {
    pub hull_pushes: u64,
    pub hull_pops: u64,
    /// Hull vertices stepped over while searching for a tangent.
    pub tangent_steps: u64,
    /// Logical insertions into per-batch heaps (persistent or skew).
    pub heap_inserts: u64,
    /// Physical nodes allocated by the persistent heap (path copies included).
    pub heap_nodes: u64,
    /// Heap nodes inspected by selection and threshold enumeration.
    pub nodes_visited: u64,
    /// Right endpoints processed.
    pub right_ends: u64,
}

impl WorkCounters {
    pub fn hull_work(&self) -> u64 {
        self.hull_pushes + self.hull_pops + self.tangent_steps
    }
}

impl core::ops::AddAssign for WorkCounters {
    fn add_assign(&mut self, o: Self) {
        self.hull_pushes += o.hull_pushes;
        self.hull_pops += o.hull_pops;
        self.tangent_steps += o.tangent_steps;
        self.heap_inserts += o.heap_inserts;
        self.heap_nodes += o.heap_nodes;
        self.nodes_visited += o.nodes_visited;
        self.right_ends += o.right_ends;
    }
}

/// Peak number of live entries held by per-batch structures.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpaceStats {
    pub peak_hull: usize,
    /// Physical nodes of the persistent heap.
    pub peak_heap_nodes: usize,
    /// Entries in the running skew heap or ordered key set.
    pub peak_carry: usize,
    /// Frontier of a heap selection.
    pub peak_frontier: usize,
    /// Peak of the sum of everything above at any checkpoint.
    pub peak_live: usize,
}

impl SpaceStats {
    pub(crate) fn observe(&mut self, hull: usize, heap_nodes: usize, carry: usize, frontier: usize) {
        self.peak_hull = self.peak_hull.max(hull);
        self.peak_heap_nodes = self.peak_heap_nodes.max(heap_nodes);
        self.peak_carry = self.peak_carry.max(carry);
        self.peak_frontier = self.peak_frontier.max(frontier);
        self.peak_live = self.peak_live.max(hull + heap_nodes + carry + frontier);
    }
}
