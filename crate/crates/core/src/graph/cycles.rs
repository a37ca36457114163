//! Cycle predicates, decided by contracting undirected edge kinds and
//! looking for a directed cycle among the contracted components.

use super::{EdgeKind, Graph};

impl Graph {
    /// A cycle over lines, dotted lines and forward arrows containing at
    /// least one arrow (arcs excluded).
    pub fn has_semi_directed_cycle(&self) -> bool {
        self.contracted_arrow_cycle(|k| matches!(k, EdgeKind::Line | EdgeKind::Dotted))
    }

    /// A cycle containing at least one arrow where every arrow points
    /// forward; lines, arcs and dotted lines are unrestricted.
    pub fn has_quasi_directed_cycle(&self) -> bool {
        self.contracted_arrow_cycle(|k| k != EdgeKind::Arrow)
    }

    /// A directed cycle using arrows only.
    pub fn has_directed_cycle(&self) -> bool {
        self.contracted_arrow_cycle(|_| false)
    }

    /// Component index of every node in the subgraph of edges whose kind
    /// satisfies `merge`, plus the component count.
    pub(crate) fn components_by(&self, merge: impl Fn(EdgeKind) -> bool) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for e in &self.adj[x] {
                    if !merge(e.kind) {
                        continue;
                    }
                    let y = e.other(x.into()).index();
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    fn contracted_arrow_cycle(&self, merge: impl Fn(EdgeKind) -> bool) -> bool {
        let (comp, count) = self.components_by(merge);
        let mut succ = vec![Vec::new(); count];
        let mut indeg = vec![0usize; count];
        for e in self.edges().filter(|e| e.kind() == EdgeKind::Arrow) {
            let (a, b) = (comp[e.u().index()], comp[e.v().index()]);
            if a == b {
                return true;
            }
            succ[a].push(b);
            indeg[b] += 1;
        }
        // Kahn: a leftover component lies on a cycle
        let mut ready: Vec<usize> = (0..count).filter(|&c| indeg[c] == 0).collect();
        let mut done = 0;
        while let Some(c) = ready.pop() {
            done += 1;
            for &d in &succ[c] {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    ready.push(d);
                }
            }
        }
        done < count
    }
}
