use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

/// Dense node identifier, `0..n` within one graph.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for NodeId {
    fn from(i: usize) -> Self {
        NodeId(i as u32)
    }
}

/// Set of node ids packed into a 64-bit mask.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const MAX_NODES: usize = 64;

    pub const fn empty() -> Self {
        NodeSet(0)
    }

    pub const fn from_bits(bits: u64) -> Self {
        NodeSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::MAX_NODES);
        if n == 64 {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: NodeId) -> Self {
        NodeSet(1u64 << v.0)
    }

    #[inline]
    pub fn contains(self, v: NodeId) -> bool {
        self.0 >> v.0 & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: NodeId) -> bool {
        let fresh = !self.contains(v);
        self.0 |= 1u64 << v.0;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, v: NodeId) -> bool {
        let had = self.contains(v);
        self.0 &= !(1u64 << v.0);
        had
    }

    pub fn with(mut self, v: NodeId) -> Self {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: NodeId) -> Self {
        self.remove(v);
        self
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: NodeSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn intersects(self, other: NodeSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn first(self) -> Option<NodeId> {
        (self.0 != 0).then(|| NodeId(self.0.trailing_zeros()))
    }

    pub fn iter(self) -> NodeSetIter {
        NodeSetIter(self.0)
    }

    /// All subsets of `self`, in increasing order of their bit patterns.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }
}

impl BitOr for NodeSet {
    type Output = NodeSet;
    fn bitor(self, rhs: NodeSet) -> NodeSet {
        NodeSet(self.0 | rhs.0)
    }
}

impl BitAnd for NodeSet {
    type Output = NodeSet;
    fn bitand(self, rhs: NodeSet) -> NodeSet {
        NodeSet(self.0 & rhs.0)
    }
}

impl Sub for NodeSet {
    type Output = NodeSet;
    fn sub(self, rhs: NodeSet) -> NodeSet {
        NodeSet(self.0 & !rhs.0)
    }
}

impl Not for NodeSet {
    type Output = NodeSet;
    fn not(self) -> NodeSet {
        NodeSet(!self.0)
    }
}

impl FromIterator<NodeId> for NodeSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        let mut s = NodeSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for NodeSet {
    type Item = NodeId;
    type IntoIter = NodeSetIter;
    fn into_iter(self) -> NodeSetIter {
        self.iter()
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}

pub struct NodeSetIter(u64);

impl Iterator for NodeSetIter {
    type Item = NodeId;
    fn next(&mut self) -> Option<NodeId> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(NodeId(v))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for NodeSetIter {}

pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = NodeSet;
    fn next(&mut self) -> Option<NodeSet> {
        let cur = self.next?;
        // standard submask walk: (cur - universe) & universe enumerates upward
        self.next = if cur == self.universe {
            None
        } else {
            Some(cur.wrapping_sub(self.universe) & self.universe)
        };
        Some(NodeSet(cur))
    }
}
