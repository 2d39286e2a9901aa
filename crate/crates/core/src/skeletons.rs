//! Skeleton graphs `G_k(P)`, `(r,s)`-incidence graphs, the edge-adjacency graph
//! of a polytope, and the checks relating them through duality and face figures.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{face_figure, polar_dual, FaceId, FaceLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GraphKind {
    /// Nodes are k-faces, adjacent when a common (k+1)-face contains both.
    Skeleton { k: usize },
    /// Nodes are r-faces, adjacent when a common s-face contains both.
    Incidence { r: usize, s: usize },
    /// Nodes are edges, adjacent when they share an endpoint.
    Gamma,
    /// Abstract graph with no lattice behind it.
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<isize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<usize>>,
}

impl GraphNode {
    pub fn label(&self) -> String {
        match (&self.dim, &self.vertices) {
            (Some(d), Some(vs)) => {
                let list: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                format!("{d}:{{{}}}", list.join(","))
            }
            _ => self.id.to_string(),
        }
    }
}

/// Simple undirected graph whose nodes carry face ids.
///
/// `adjacency[i]` lists positions into `nodes`, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonGraph {
    pub kind: GraphKind,
    pub nodes: Vec<GraphNode>,
    pub adjacency: Vec<Vec<usize>>,
    #[serde(skip)]
    index: HashMap<usize, usize>,
}

impl SkeletonGraph {
    /// Builds a graph from node descriptors and edges given as positions.
    /// Loops are dropped and parallel edges merged.
    pub fn new(kind: GraphKind, nodes: Vec<GraphNode>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut sets = vec![BTreeSet::new(); nodes.len()];
        for (a, b) in edges {
            if a != b {
                sets[a].insert(b);
                sets[b].insert(a);
            }
        }
        let adjacency = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut g = SkeletonGraph {
            kind,
            nodes,
            adjacency,
            index: HashMap::new(),
        };
        g.reindex();
        g
    }

    /// Abstract graph on nodes `0..n`.
    pub fn plain(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let nodes = (0..n)
            .map(|id| GraphNode {
                id,
                dim: None,
                vertices: None,
            })
            .collect();
        SkeletonGraph::new(GraphKind::Plain, nodes, edges)
    }

    /// Rebuilds the id index and re-normalizes adjacency; call after
    /// deserializing.
    pub fn reindex(&mut self) {
        self.index = self.nodes.iter().enumerate().map(|(i, n)| (n.id, i)).collect();
    }

    /// Checks simplicity and symmetry; used on graphs read from files.
    pub fn validate(&self) -> Result<()> {
        if self.adjacency.len() != self.nodes.len() {
            return Err(Error::InvalidParameters(format!(
                "{} adjacency lists for {} nodes",
                self.adjacency.len(),
                self.nodes.len()
            )));
        }
        if self.index.len() != self.nodes.len() {
            return Err(Error::InvalidParameters("duplicate node ids".to_string()));
        }
        for (i, list) in self.adjacency.iter().enumerate() {
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::InvalidParameters(format!(
                        "adjacency of node {i} is not strictly increasing"
                    )));
                }
            }
            for &j in list {
                if j >= self.nodes.len() || j == i || self.adjacency[j].binary_search(&i).is_err() {
                    return Err(Error::InvalidParameters(format!(
                        "adjacency entry {i} -> {j} is a loop, dangling or asymmetric"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn node_id(&self, pos: usize) -> usize {
        self.nodes[pos].id
    }

    pub fn position(&self, id: usize) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn neighbors(&self, pos: usize) -> &[usize] {
        &self.adjacency[pos]
    }

    pub fn degree(&self, pos: usize) -> usize {
        self.adjacency[pos].len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adjacency.iter().map(Vec::len).min()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.nodes.len();
        self.adjacency.iter().all(|l| l.len() + 1 == n)
    }

    /// Edges as position pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, l)| l.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    /// Connected components of the graph with the `removed` positions deleted,
    /// each as sorted positions, ordered by smallest member.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut seen = removed.to_vec();
        seen.resize(n, false);
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&[]).len() <= 1
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for node in &self.nodes {
            let _ = writeln!(out, "  n{} [label=\"{}\"];", node.id, node.label());
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  n{} -- n{};", self.nodes[a].id, self.nodes[b].id);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut g: SkeletonGraph = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameters(format!("graph json: {e}")))?;
        g.reindex();
        g.validate()?;
        Ok(g)
    }
}

fn lattice_nodes(lattice: &FaceLattice, ids: impl Iterator<Item = FaceId>) -> Vec<GraphNode> {
    ids.map(|id| GraphNode {
        id,
        dim: Some(lattice.face_dim(id)),
        vertices: Some(lattice.vertex_set(id).to_vec()),
    })
    .collect()
}

/// Links every pair of nodes that appear together in one of `groups`.
fn clique_edges(groups: impl Iterator<Item = Vec<usize>>) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for g in groups {
        for (i, &a) in g.iter().enumerate() {
            for &b in &g[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    edges
}

fn check_k(lattice: &FaceLattice, k: usize) -> Result<()> {
    if k + 1 > lattice.dim() {
        return Err(Error::DimensionParameter {
            k,
            max: lattice.dim() as isize - 1,
        });
    }
    Ok(())
}

/// `G_k(P)`: k-faces, adjacent when some (k+1)-face contains both.
pub fn skeleton_graph(lattice: &FaceLattice, k: usize) -> Result<SkeletonGraph> {
    check_k(lattice, k)?;
    let range = lattice.faces_of_dim(k);
    let base = range.start;
    let nodes = lattice_nodes(lattice, range);
    let groups = lattice
        .faces_of_dim(k + 1)
        .map(|g| lattice.covers_down(g).iter().map(|&f| f - base).collect());
    Ok(SkeletonGraph::new(GraphKind::Skeleton { k }, nodes, clique_edges(groups)))
}

/// r-faces, adjacent when some s-face contains both.
pub fn incidence_graph(lattice: &FaceLattice, r: usize, s: usize) -> Result<SkeletonGraph> {
    if r >= s {
        return Err(Error::InvalidParameters(format!("need r < s, got r = {r}, s = {s}")));
    }
    check_k(lattice, s - 1)?;
    let range = lattice.faces_of_dim(r);
    let base = range.start;
    let nodes = lattice_nodes(lattice, range.clone());
    let groups = lattice.faces_of_dim(s).map(|g| {
        lattice
            .faces_below(g)
            .into_iter()
            .filter(|f| range.contains(f))
            .map(|f| f - base)
            .collect()
    });
    Ok(SkeletonGraph::new(GraphKind::Incidence { r, s }, nodes, clique_edges(groups)))
}

/// `Γ(Q)`: edges of `Q`, adjacent when they share an endpoint.
pub fn edge_adjacency_graph(lattice: &FaceLattice) -> Result<SkeletonGraph> {
    if lattice.dim() < 1 {
        return Err(Error::DimensionParameter { k: 1, max: lattice.dim() as isize });
    }
    let range = lattice.faces_of_dim(1);
    let base = range.start;
    let nodes = lattice_nodes(lattice, range);
    let groups = lattice
        .faces_of_dim(0)
        .map(|v| lattice.covers_up(v).iter().map(|&e| e - base).collect());
    Ok(SkeletonGraph::new(GraphKind::Gamma, nodes, clique_edges(groups)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityCheck {
    pub passed: bool,
    /// Pairs `(ridge face id in P, edge face id in the dual)`.
    pub bijection: Vec<(FaceId, FaceId)>,
    pub detail: String,
}

/// Checks that the duality map carries `G_{d-2}(P)` isomorphically onto
/// `Γ(dual P)`.
pub fn verify_duality_iso(lattice: &FaceLattice) -> Result<DualityCheck> {
    let d = lattice.dim();
    if d < 2 {
        return Err(Error::DimensionParameter { k: 0, max: d as isize - 2 });
    }
    let (dual, map) = polar_dual(lattice)?;
    let ridges = skeleton_graph(lattice, d - 2)?;
    let gamma = edge_adjacency_graph(&dual)?;
    let fail = |bijection, detail: String| {
        Ok(DualityCheck {
            passed: false,
            bijection,
            detail,
        })
    };

    let mut bijection = Vec::with_capacity(ridges.node_count());
    let mut image = vec![usize::MAX; ridges.node_count()];
    let mut hit = vec![false; gamma.node_count()];
    for (pos, node) in ridges.nodes.iter().enumerate() {
        let Some(target) = map.forward(node.id) else {
            return fail(bijection, format!("ridge {} has no dual face", node.id));
        };
        let Some(tpos) = gamma.position(target) else {
            return fail(bijection, format!("ridge {} maps to non-edge {target}", node.id));
        };
        if hit[tpos] {
            return fail(bijection, format!("dual edge {target} hit twice"));
        }
        hit[tpos] = true;
        image[pos] = tpos;
        bijection.push((node.id, target));
    }
    if ridges.node_count() != gamma.node_count() {
        return fail(
            bijection,
            format!("{} ridges vs {} dual edges", ridges.node_count(), gamma.node_count()),
        );
    }
    for (a, b) in ridges.edges() {
        if !gamma.is_adjacent(image[a], image[b]) {
            return fail(bijection, format!("adjacency of ridges {a},{b} not preserved"));
        }
    }
    if ridges.edge_count() != gamma.edge_count() {
        return fail(
            bijection,
            format!("{} vs {} edges", ridges.edge_count(), gamma.edge_count()),
        );
    }
    Ok(DualityCheck {
        passed: true,
        bijection,
        detail: format!(
            "{} nodes, {} edges preserved",
            ridges.node_count(),
            ridges.edge_count()
        ),
    })
}

/// Walk given by its node ids; consecutive nodes must be adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Walk {
    pub nodes: Vec<usize>,
}

impl Walk {
    pub fn new(nodes: Vec<usize>) -> Self {
        Walk { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn endpoints(&self) -> Option<(usize, usize)> {
        Some((*self.nodes.first()?, *self.nodes.last()?))
    }

    /// Edges of the walk as node-id pairs.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nodes.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn check_in(&self, graph: &SkeletonGraph) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(Error::InvalidWalk("walk has no nodes".to_string()));
        }
        let mut prev: Option<usize> = None;
        for &id in &self.nodes {
            let pos = graph
                .position(id)
                .ok_or_else(|| Error::InvalidWalk(format!("node {id} not in graph")))?;
            if let Some(p) = prev {
                if !graph.is_adjacent(p, pos) {
                    return Err(Error::InvalidWalk(format!(
                        "nodes {} and {id} are not adjacent",
                        graph.node_id(p)
                    )));
                }
            }
            prev = Some(pos);
        }
        Ok(())
    }
}

/// Lifts a walk in `G_k` of the face figure at `face` to a walk in
/// `G_{k+r+1}(P)`, where `r` is the dimension of `face`. Node ids of `walk`
/// are face ids of the figure as returned by [`face_figure`].
pub fn lift_walk(lattice: &FaceLattice, face: FaceId, walk: &Walk) -> Result<Walk> {
    let (figure, map) = face_figure(lattice, face)?;
    let first = *walk
        .nodes
        .first()
        .ok_or_else(|| Error::InvalidWalk("walk has no nodes".to_string()))?;
    if !figure.contains_id(first) || figure.face_dim(first) < 0 {
        return Err(Error::InvalidWalk(format!("node {first} is not a nonempty face of the figure")));
    }
    let k = figure.face_dim(first) as usize;
    let fig_graph = skeleton_graph(&figure, k)?;
    walk.check_in(&fig_graph)?;
    let lifted = Walk::new(
        walk.nodes
            .iter()
            .map(|&n| map.backward(n).expect("figure map is onto"))
            .collect(),
    );
    let r = lattice.face_dim(face) as usize;
    let target = skeleton_graph(lattice, k + r + 1)?;
    lifted.check_in(&target)?;
    let base = lattice.vertex_set(face);
    if let Some(&bad) = lifted.nodes.iter().find(|&&g| !base.is_subset(lattice.vertex_set(g))) {
        return Err(Error::InvalidWalk(format!("lifted face {bad} does not contain {face}")));
    }
    Ok(lifted)
}
