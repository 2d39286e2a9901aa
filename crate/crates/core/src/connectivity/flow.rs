//! Unit-capacity blocking-flow max-flow on the node-split digraph of a simple
//! graph. Node `v` becomes `in(v) = 2v` and `out(v) = 2v + 1` joined by an arc
//! of capacity 1; every undirected edge becomes two uncapacitated arcs
//! `out(u) -> in(v)` and `out(v) -> in(u)`.

use std::collections::VecDeque;

use crate::skeletons::SkeletonGraph;

const UNREACHED: usize = usize::MAX;

pub(crate) struct SplitNetwork {
    to: Vec<usize>,
    cap: Vec<u32>,
    orig: Vec<u32>,
    arcs: Vec<Vec<usize>>,
    level: Vec<usize>,
    next_arc: Vec<usize>,
    source: usize,
    sink: usize,
    flow: usize,
}

#[inline]
fn node_in(v: usize) -> usize {
    2 * v
}

#[inline]
fn node_out(v: usize) -> usize {
    2 * v + 1
}

impl SplitNetwork {
    /// Network for the pair of graph positions `(s, t)`; flow runs from
    /// `out(s)` to `in(t)`.
    pub(crate) fn new(graph: &SkeletonGraph, s: usize, t: usize) -> Self {
        let n = graph.node_count();
        let big = n as u32 + 1;
        let mut net = SplitNetwork {
            to: Vec::new(),
            cap: Vec::new(),
            orig: Vec::new(),
            arcs: vec![Vec::new(); 2 * n],
            level: vec![UNREACHED; 2 * n],
            next_arc: vec![0; 2 * n],
            source: node_out(s),
            sink: node_in(t),
            flow: 0,
        };
        for v in 0..n {
            if v != s && v != t {
                net.add_arc(node_in(v), node_out(v), 1);
            }
            for &w in graph.neighbors(v) {
                net.add_arc(node_out(v), node_in(w), big);
            }
        }
        net
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let e = self.to.len();
        self.to.push(to);
        self.cap.push(cap);
        self.orig.push(cap);
        self.arcs[from].push(e);
        self.to.push(from);
        self.cap.push(0);
        self.orig.push(0);
        self.arcs[to].push(e + 1);
    }

    fn bfs(&mut self) -> bool {
        self.level.fill(UNREACHED);
        self.level[self.source] = 0;
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.arcs[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] == UNREACHED {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[self.sink] != UNREACHED
    }

    /// Pushes one unit along a shortest augmenting path in the level graph,
    /// advancing current-arc pointers past dead ends.
    fn augment_one(&mut self) -> bool {
        let mut path: Vec<usize> = Vec::new();
        let mut u = self.source;
        loop {
            if u == self.sink {
                for &e in &path {
                    self.cap[e] -= 1;
                    self.cap[e ^ 1] += 1;
                }
                return true;
            }
            let mut advanced = false;
            while self.next_arc[u] < self.arcs[u].len() {
                let e = self.arcs[u][self.next_arc[u]];
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                self.next_arc[u] += 1;
            }
            if !advanced {
                if u == self.source {
                    return false;
                }
                // dead end: prune it from the level graph and back up
                self.level[u] = UNREACHED;
                let e = path.pop().expect("non-source node has an incoming path arc");
                u = self.to[e ^ 1];
                self.next_arc[u] += 1;
            }
        }
    }

    /// Runs blocking-flow phases until the flow reaches `limit` or no
    /// augmenting path remains. Returns the flow value.
    pub(crate) fn max_flow(&mut self, limit: usize) -> usize {
        while self.flow < limit && self.bfs() {
            self.next_arc.fill(0);
            while self.flow < limit && self.augment_one() {
                self.flow += 1;
            }
        }
        self.flow
    }

    fn arc_flow(&self, e: usize) -> u32 {
        self.orig[e].saturating_sub(self.cap[e])
    }

    /// Decomposes the flow into internally disjoint paths, as graph positions
    /// from `s` to `t`, in the order their first arcs leave the source.
    pub(crate) fn paths(&self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for &first in &self.arcs[self.source] {
            if first % 2 == 1 || self.arc_flow(first) == 0 {
                continue;
            }
            let mut path = vec![s];
            let mut node = self.to[first];
            loop {
                let v = node / 2;
                if node == self.sink {
                    path.push(t);
                    break;
                }
                path.push(v);
                let out_node = node_out(v);
                let next = self.arcs[out_node]
                    .iter()
                    .copied()
                    .find(|&e| e % 2 == 0 && self.arc_flow(e) > 0)
                    .expect("flow is conserved at internal nodes");
                node = self.to[next];
            }
            out.push(path);
        }
        out
    }

    /// Minimum vertex cut from the residual reachability after a maximum flow.
    pub(crate) fn min_cut(&mut self) -> Vec<usize> {
        self.bfs();
        let n = self.level.len() / 2;
        (0..n)
            .filter(|&v| {
                self.level[node_in(v)] != UNREACHED && self.level[node_out(v)] == UNREACHED
            })
            .filter(|&v| node_out(v) != self.source && node_in(v) != self.sink)
            .collect()
    }
}

/// Number of internally disjoint paths between non-adjacent positions `s`
/// and `t`, capped at `limit`.
pub(crate) fn local_connectivity(graph: &SkeletonGraph, s: usize, t: usize, limit: usize) -> usize {
    SplitNetwork::new(graph, s, t).max_flow(limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SkeletonGraph {
        SkeletonGraph::plain(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn cycle_has_two_paths() {
        let g = cycle(6);
        let mut net = SplitNetwork::new(&g, 0, 3);
        assert_eq!(net.max_flow(usize::MAX), 2);
        let paths = net.paths(0, 3);
        assert_eq!(paths, vec![vec![0, 1, 2, 3], vec![0, 5, 4, 3]]);
        let cut = net.min_cut();
        assert_eq!(cut.len(), 2);
    }

    #[test]
    fn limit_stops_early() {
        let g = cycle(6);
        assert_eq!(local_connectivity(&g, 0, 3, 1), 1);
    }

    #[test]
    fn disconnected_pair() {
        let g = SkeletonGraph::plain(4, [(0, 1), (2, 3)]);
        let mut net = SplitNetwork::new(&g, 0, 3);
        assert_eq!(net.max_flow(usize::MAX), 0);
        assert!(net.paths(0, 3).is_empty());
        assert!(net.min_cut().is_empty());
    }
}
