//! Exact vertex connectivity with Menger certificates, node-deletion
//! experiments, and the affine-subspace form of Balinski's theorem.

mod flow;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructors::CoordinatizedPolytope;
use crate::error::{Error, Result};
use crate::rational::{affine_dimension, Rational};
use crate::skeletons::{skeleton_graph, SkeletonGraph};

pub use crate::rational::RationalMatrix;

/// Graphs up to this many nodes are cross-checked by exhaustive deletion in
/// [`is_m_connected`].
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// Connectivity number with a witness. All node references are node ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityCertificate {
    pub kappa: usize,
    /// Absent for complete graphs.
    pub min_cut: Option<Vec<usize>>,
    /// Non-adjacent pair separated by `min_cut`.
    pub pair: Option<(usize, usize)>,
    /// `kappa` internally disjoint paths joining `pair`.
    pub paths: Vec<Vec<usize>>,
}

impl ConnectivityCertificate {
    /// Re-checks the certificate against `graph`.
    pub fn verify(&self, graph: &SkeletonGraph) -> std::result::Result<(), String> {
        let n = graph.node_count();
        let pos = |id: usize| graph.position(id).ok_or(format!("unknown node {id}"));
        let (cut, (s, t)) = match (&self.min_cut, self.pair) {
            (None, None) => {
                return if graph.is_complete() && self.kappa == n.saturating_sub(1) {
                    Ok(())
                } else {
                    Err("cut omitted for a non-complete graph".to_string())
                };
            }
            (Some(cut), Some(pair)) => (cut, pair),
            _ => return Err("cut and pair must be given together".to_string()),
        };
        if cut.len() != self.kappa {
            return Err(format!("cut has {} nodes, kappa is {}", cut.len(), self.kappa));
        }
        if self.paths.len() != self.kappa {
            return Err(format!("{} paths for kappa {}", self.paths.len(), self.kappa));
        }
        let (sp, tp) = (pos(s)?, pos(t)?);
        if sp == tp || graph.is_adjacent(sp, tp) {
            return Err("witness pair must be distinct and non-adjacent".to_string());
        }
        let mut removed = vec![false; n];
        for &c in cut {
            let p = pos(c)?;
            if p == sp || p == tp || removed[p] {
                return Err(format!("cut node {c} is an endpoint or repeated"));
            }
            removed[p] = true;
        }
        let comps = graph.components_without(&removed);
        let comp_of = |p: usize| comps.iter().position(|c| c.binary_search(&p).is_ok());
        if comp_of(sp) == comp_of(tp) {
            return Err("cut does not separate the witness pair".to_string());
        }
        let mut used = vec![false; n];
        for path in &self.paths {
            if path.first() != Some(&s) || path.last() != Some(&t) {
                return Err(format!("path {path:?} does not join the pair"));
            }
            let positions: Vec<usize> = path.iter().map(|&id| pos(id)).collect::<std::result::Result<_, _>>()?;
            for w in positions.windows(2) {
                if !graph.is_adjacent(w[0], w[1]) {
                    return Err(format!("path {path:?} uses a non-edge"));
                }
            }
            for &p in &positions[1..positions.len() - 1] {
                if used[p] || p == sp || p == tp {
                    return Err(format!("paths share internal node {}", graph.node_id(p)));
                }
                used[p] = true;
            }
        }
        Ok(())
    }
}

/// Vertex connectivity by unit-capacity max-flow on the node-split digraph.
///
/// Complete graphs on `n` nodes get `n - 1` and no cut; disconnected graphs
/// get 0 with an empty cut.
pub fn vertex_connectivity(graph: &SkeletonGraph) -> ConnectivityCertificate {
    let n = graph.node_count();
    if graph.is_complete() {
        return ConnectivityCertificate {
            kappa: n.saturating_sub(1),
            min_cut: None,
            pair: None,
            paths: Vec::new(),
        };
    }
    let comps = graph.components_without(&[]);
    if comps.len() > 1 {
        let cert = ConnectivityCertificate {
            kappa: 0,
            min_cut: Some(Vec::new()),
            pair: Some((graph.node_id(comps[0][0]), graph.node_id(comps[1][0]))),
            paths: Vec::new(),
        };
        assert_eq!(cert.verify(graph), Ok(()));
        return cert;
    }

    // Pairs through a minimum-degree node v: v against each non-neighbor, then
    // non-adjacent pairs of neighbors of v.
    let v = (0..n).min_by_key(|&u| (graph.degree(u), u)).expect("graph is nonempty");
    let delta = graph.degree(v);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .filter(|&u| u != v && !graph.is_adjacent(v, u))
        .map(|u| (v, u))
        .collect();
    let nbrs = graph.neighbors(v);
    for (i, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[i + 1..] {
            if !graph.is_adjacent(x, y) {
                pairs.push((x, y));
            }
        }
    }
    let values: Vec<usize> = pairs
        .par_iter()
        .map(|&(s, t)| flow::local_connectivity(graph, s, t, delta))
        .collect();
    let (best, &kappa) = values
        .iter()
        .enumerate()
        .min_by_key(|&(i, &k)| (k, i))
        .expect("non-complete graph has a non-adjacent pair");
    let (s, t) = pairs[best];

    let mut net = flow::SplitNetwork::new(graph, s, t);
    let full = net.max_flow(usize::MAX);
    assert_eq!(full, kappa, "capped and uncapped flows disagree");
    let ids = |list: Vec<usize>| -> Vec<usize> { list.into_iter().map(|p| graph.node_id(p)).collect() };
    let cert = ConnectivityCertificate {
        kappa,
        min_cut: Some(ids(net.min_cut())),
        pair: Some((graph.node_id(s), graph.node_id(t))),
        paths: net.paths(s, t).into_iter().map(ids).collect(),
    };
    if let Err(e) = cert.verify(graph) {
        panic!("connectivity certificate failed verification: {e}");
    }
    cert
}

/// Whether deleting any `m - 1` or fewer nodes leaves the graph connected,
/// by enumeration. Exponential; meant for small graphs.
pub fn exhaustive_m_connected(graph: &SkeletonGraph, m: usize) -> bool {
    let n = graph.node_count();
    if n < m + 1 {
        return false;
    }
    let mut removed = vec![false; n];
    fn rec(
        graph: &SkeletonGraph,
        start: usize,
        left: usize,
        removed: &mut Vec<bool>,
    ) -> bool {
        if graph.components_without(removed).len() > 1 {
            return false;
        }
        if left == 0 {
            return true;
        }
        for v in start..graph.node_count() {
            removed[v] = true;
            let ok = rec(graph, v + 1, left - 1, removed);
            removed[v] = false;
            if !ok {
                return false;
            }
        }
        true
    }
    rec(graph, 0, m - 1, &mut removed)
}

/// `m`-connectedness: at least `m + 1` nodes and connectivity at least `m`.
pub fn is_m_connected(graph: &SkeletonGraph, m: usize) -> bool {
    assert!(m >= 1, "m must be positive");
    let answer = graph.node_count() > m && vertex_connectivity(graph).kappa >= m;
    if graph.node_count() <= EXHAUSTIVE_LIMIT {
        assert_eq!(
            answer,
            exhaustive_m_connected(graph, m),
            "max-flow and exhaustive deletion disagree"
        );
    }
    answer
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Deletion {
    Connected,
    /// Components of the remaining graph as node ids.
    Disconnected { components: Vec<Vec<usize>> },
}

impl Deletion {
    pub fn is_connected(&self) -> bool {
        matches!(self, Deletion::Connected)
    }

    pub fn component_count(&self) -> usize {
        match self {
            Deletion::Connected => 1,
            Deletion::Disconnected { components } => components.len(),
        }
    }
}

/// Deletes the nodes with the given ids and reports the remaining components.
pub fn delete_and_check(graph: &SkeletonGraph, nodes: &[usize]) -> Result<Deletion> {
    let mut removed = vec![false; graph.node_count()];
    for &id in nodes {
        let p = graph.position(id).ok_or(Error::UnknownNode(id))?;
        removed[p] = true;
    }
    let comps = graph.components_without(&removed);
    if comps.len() <= 1 {
        return Ok(Deletion::Connected);
    }
    Ok(Deletion::Disconnected {
        components: comps
            .into_iter()
            .map(|c| c.into_iter().map(|p| graph.node_id(p)).collect())
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalinskiOutcome {
    pub affine_dim: isize,
    pub passed: bool,
    pub deletion: Deletion,
}

/// Exact affine dimension of the coordinates of the given vertices.
pub fn vertex_affine_dimension(polytope: &CoordinatizedPolytope, vertices: &[usize]) -> Result<isize> {
    let coords = polytope.coords.as_ref().ok_or(Error::MissingCoordinates)?;
    let mut points: Vec<&[Rational]> = Vec::with_capacity(vertices.len());
    for &v in vertices {
        let row = coords
            .get(v)
            .ok_or_else(|| Error::InvalidParameters(format!("vertex {v} out of range")))?;
        points.push(row);
    }
    Ok(affine_dimension(&points))
}

/// Deletes a vertex set lying in a `(d-2)`-dimensional affine subspace from the
/// graph of the polytope and checks that the rest stays connected.
///
/// A vertex set of larger affine dimension is a precondition error, not a
/// failed check.
pub fn balinski_affine_check(polytope: &CoordinatizedPolytope, vertices: &[usize]) -> Result<BalinskiOutcome> {
    let d = polytope.dim() as isize;
    let affine_dim = vertex_affine_dimension(polytope, vertices)?;
    if affine_dim > d - 2 {
        return Err(Error::AffineDimensionTooLarge {
            dim: affine_dim,
            limit: d - 2,
        });
    }
    let lattice = &polytope.lattice;
    let graph = skeleton_graph(lattice, 0)?;
    let ids: Vec<usize> = vertices
        .iter()
        .map(|&v| lattice.vertex_face(v).ok_or(Error::UnknownNode(v)))
        .collect::<Result<_>>()?;
    let deletion = delete_and_check(&graph, &ids)?;
    Ok(BalinskiOutcome {
        affine_dim,
        passed: deletion.is_connected(),
        deletion,
    })
}
