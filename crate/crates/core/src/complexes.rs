//! Polyhedral complexes with the intersection property.
//!
//! Cells are identified by their vertex sets, which is sound because any two
//! cells meet in a common face. Every maximal cell is expanded through its own
//! face lattice, so the complex stores all cells including the empty one.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{build_lattice, validate_polytopal, FaceLattice, IncidenceMatrix, MAX_VERTICES};
use crate::skeletons::{GraphKind, GraphNode, SkeletonGraph};
use crate::vertex_set::VertexSet;

pub type CellId = usize;

/// One maximal cell in global vertex ids. `vertices` defaults to the union of
/// the facets and is only needed for a point cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<usize>>,
    pub facets: Vec<Vec<usize>>,
}

impl CellSpec {
    pub fn from_facets(facets: Vec<Vec<usize>>) -> Self {
        CellSpec {
            name: None,
            vertices: None,
            facets,
        }
    }

    pub fn point(v: usize) -> Self {
        CellSpec {
            name: None,
            vertices: Some(vec![v]),
            facets: vec![vec![]],
        }
    }

    pub fn vertex_list(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = match &self.vertices {
            Some(v) => v.iter().copied().collect(),
            None => self.facets.iter().flatten().copied().collect(),
        };
        set.into_iter().collect()
    }
}

/// File form of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub n_vertices: usize,
    pub cells: Vec<CellSpec>,
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    n_vertices: usize,
    cells: Vec<VertexSet>,
    ranks: Vec<usize>,
    covers_up: Vec<Vec<CellId>>,
    covers_down: Vec<Vec<CellId>>,
    maximal: Vec<CellId>,
    index: HashMap<VertexSet, CellId>,
}

fn cell_lattice(index: usize, spec: &CellSpec, vertices: &[usize]) -> Result<FaceLattice> {
    let local: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let facets = spec
        .facets
        .iter()
        .map(|f| f.iter().map(|v| local[v]).collect())
        .collect();
    let inc = IncidenceMatrix::new(vertices.len(), facets);
    let lattice = build_lattice(&inc).map_err(|e| Error::InvalidCell {
        index,
        reason: e.to_string(),
    })?;
    let report = validate_polytopal(&lattice);
    if !report.passed() {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        return Err(Error::InvalidCell {
            index,
            reason: format!("not a polytope lattice, failed {failed:?}"),
        });
    }
    Ok(lattice)
}

/// Materializes every face of every cell and checks the intersection property
/// on pairs of maximal cells. Cells with equal vertex sets are merged.
pub fn build_complex(n_vertices: usize, cells: &[CellSpec]) -> Result<CellComplex> {
    if n_vertices > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            count: n_vertices,
            limit: MAX_VERTICES,
        });
    }
    let mut tops: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, cell) in cells.iter().enumerate() {
        let verts = cell.vertex_list();
        if let Some(&v) = verts.iter().find(|&&v| v >= n_vertices) {
            return Err(Error::InvalidCell {
                index: i,
                reason: format!("vertex {v} outside 0..{n_vertices}"),
            });
        }
        if verts.is_empty() {
            return Err(Error::InvalidCell {
                index: i,
                reason: "cell has no vertices".to_string(),
            });
        }
        if let Some(f) = cell.facets.iter().flatten().find(|v| verts.binary_search(v).is_err()) {
            return Err(Error::InvalidCell {
                index: i,
                reason: format!("facet vertex {f} outside the cell"),
            });
        }
        if !tops.iter().any(|(_, v)| *v == verts) {
            tops.push((i, verts));
        }
    }
    let sets: Vec<VertexSet> = tops
        .iter()
        .map(|(_, v)| VertexSet::from_indices(n_vertices, v.iter().copied()))
        .collect();
    for a in 0..sets.len() {
        for b in 0..sets.len() {
            if a != b && sets[a].is_subset(&sets[b]) {
                return Err(Error::InvalidCell {
                    index: tops[a].0,
                    reason: format!("contained in cell {}", tops[b].0),
                });
            }
        }
    }
    let lattices: Vec<FaceLattice> = tops
        .iter()
        .map(|(i, verts)| cell_lattice(*i, &cells[*i], verts))
        .collect::<Result<_>>()?;
    let globalize = |cell: usize, face: &VertexSet| -> VertexSet {
        let verts = &tops[cell].1;
        VertexSet::from_indices(n_vertices, face.iter().map(|v| verts[v]))
    };

    let mut rank_of: HashMap<VertexSet, usize> = HashMap::new();
    let mut cover_pairs: BTreeSet<(VertexSet, VertexSet)> = BTreeSet::new();
    for (c, lattice) in lattices.iter().enumerate() {
        for f in 0..lattice.len() {
            let g = globalize(c, lattice.vertex_set(f));
            let rank = lattice.rank(f);
            if let Some(&old) = rank_of.get(&g) {
                if old != rank {
                    return Err(Error::InvalidCell {
                        index: tops[c].0,
                        reason: format!("{g} has dimension {} here, {} elsewhere", rank as isize - 1, old as isize - 1),
                    });
                }
            }
            rank_of.insert(g.clone(), rank);
            for &up in lattice.covers_up(f) {
                cover_pairs.insert((g.clone(), globalize(c, lattice.vertex_set(up))));
            }
        }
    }

    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            let x = sets[a].intersection(&sets[b]);
            let in_cell = |c: usize| {
                let verts = &tops[c].1;
                let local = VertexSet::from_indices(
                    verts.len(),
                    verts.iter().enumerate().filter(|(_, v)| x.contains(**v)).map(|(i, _)| i),
                );
                lattices[c].find(&local).is_some()
            };
            if !in_cell(a) || !in_cell(b) {
                return Err(Error::IntersectionProperty {
                    first: tops[a].0,
                    second: tops[b].0,
                    intersection: x.to_vec(),
                });
            }
        }
    }

    let mut order: Vec<(usize, VertexSet)> = rank_of.into_iter().map(|(s, r)| (r, s)).collect();
    order.sort();
    let index: HashMap<VertexSet, CellId> =
        order.iter().enumerate().map(|(i, (_, s))| (s.clone(), i)).collect();
    let mut covers_up = vec![Vec::new(); order.len()];
    let mut covers_down = vec![Vec::new(); order.len()];
    for (lo, hi) in &cover_pairs {
        let (a, b) = (index[lo], index[hi]);
        covers_up[a].push(b);
        covers_down[b].push(a);
    }
    for l in covers_up.iter_mut().chain(covers_down.iter_mut()) {
        l.sort_unstable();
    }
    let mut maximal: Vec<CellId> = sets.iter().map(|s| index[s]).collect();
    maximal.sort_unstable();
    Ok(CellComplex {
        n_vertices,
        ranks: order.iter().map(|(r, _)| *r).collect(),
        cells: order.into_iter().map(|(_, s)| s).collect(),
        covers_up,
        covers_down,
        maximal,
        index,
    })
}

impl CellComplex {
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Number of cells, including the empty cell.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.ranks.iter().max().map_or(0, |r| r.saturating_sub(1))
    }

    pub fn cell_dim(&self, id: CellId) -> isize {
        self.ranks[id] as isize - 1
    }

    pub fn vertex_set(&self, id: CellId) -> &VertexSet {
        &self.cells[id]
    }

    pub fn covers_up(&self, id: CellId) -> &[CellId] {
        &self.covers_up[id]
    }

    pub fn covers_down(&self, id: CellId) -> &[CellId] {
        &self.covers_down[id]
    }

    pub fn maximal_cells(&self) -> &[CellId] {
        &self.maximal
    }

    pub fn find(&self, set: &VertexSet) -> Option<CellId> {
        self.index.get(set).copied()
    }

    pub fn cells_of_dim(&self, dim: usize) -> Vec<CellId> {
        (0..self.cells.len()).filter(|&c| self.ranks[c] == dim + 1).collect()
    }

    /// Cell counts per dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim()).map(|k| self.cells_of_dim(k).len()).collect()
    }

    pub fn to_spec(&self) -> ComplexSpec {
        ComplexSpec {
            n_vertices: self.n_vertices,
            cells: self
                .maximal
                .iter()
                .map(|&m| CellSpec {
                    name: None,
                    vertices: Some(self.cells[m].to_vec()),
                    facets: self.covers_down[m].iter().map(|&f| self.cells[f].to_vec()).collect(),
                })
                .collect(),
        }
    }
}

/// Two `d`-simplices `{0..d}` and `{1..d+1}` sharing the facet `{1..d}`.
pub fn glued_simplices(d: usize) -> Result<CellComplex> {
    if d < 1 {
        return Err(Error::DimensionOutOfRange {
            family: "glued_simplices",
            dim: d,
            min: 1,
            max: usize::MAX,
        });
    }
    let simplex = |lo: usize| {
        let verts: Vec<usize> = (lo..=lo + d).collect();
        CellSpec::from_facets(
            verts
                .iter()
                .map(|&skip| verts.iter().copied().filter(|&v| v != skip).collect())
                .collect(),
        )
    };
    build_complex(d + 2, &[simplex(0), simplex(1)])
}

/// Complex of all proper faces of a polytope; its maximal cells are the facets.
pub fn boundary_complex(lattice: &FaceLattice) -> Result<CellComplex> {
    if lattice.dim() < 1 {
        return Err(Error::DimensionParameter { k: 1, max: lattice.dim() as isize });
    }
    let cells: Vec<CellSpec> = lattice
        .covers_down(lattice.top())
        .iter()
        .map(|&f| CellSpec {
            name: None,
            vertices: Some(lattice.vertex_set(f).to_vec()),
            facets: lattice
                .covers_down(f)
                .iter()
                .map(|&r| lattice.vertex_set(r).to_vec())
                .collect(),
        })
        .collect();
    build_complex(lattice.n_vertices(), &cells)
}

/// Complex consisting of one polytope and all of its faces.
pub fn polytope_complex(lattice: &FaceLattice) -> Result<CellComplex> {
    let cell = CellSpec {
        name: lattice.name().map(str::to_string),
        vertices: Some((0..lattice.n_vertices()).collect()),
        facets: lattice.facets(),
    };
    build_complex(lattice.n_vertices(), &[cell])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub dimension: usize,
    pub pure: bool,
    /// A maximal cell whose dimension is below the complex dimension.
    pub deviant: Option<CellId>,
    pub strongly_connected: bool,
    /// Components of the facet-ridge graph as maximal cell ids.
    pub components: Vec<Vec<CellId>>,
}

pub fn complex_checks(complex: &CellComplex) -> ComplexReport {
    let d = complex.dim() as isize;
    let maximal = complex.maximal_cells();
    let deviant = maximal.iter().copied().find(|&m| complex.cell_dim(m) != d);
    let nodes: Vec<GraphNode> = maximal
        .iter()
        .map(|&m| GraphNode {
            id: m,
            dim: Some(complex.cell_dim(m)),
            vertices: Some(complex.vertex_set(m).to_vec()),
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..maximal.len() {
        for b in a + 1..maximal.len() {
            let (ma, mb) = (maximal[a], maximal[b]);
            let x = complex.vertex_set(ma).intersection(complex.vertex_set(mb));
            let Some(c) = complex.find(&x) else { continue };
            let dc = complex.cell_dim(c);
            if dc + 1 == complex.cell_dim(ma) && dc + 1 == complex.cell_dim(mb) {
                edges.push((a, b));
            }
        }
    }
    let dual = SkeletonGraph::new(GraphKind::Plain, nodes, edges);
    let components: Vec<Vec<CellId>> = dual
        .components_without(&[])
        .into_iter()
        .map(|c| c.into_iter().map(|p| maximal[p]).collect())
        .collect();
    ComplexReport {
        dimension: complex.dim(),
        pure: deviant.is_none(),
        deviant,
        strongly_connected: components.len() <= 1,
        components,
    }
}

/// `G_k(C)`: k-cells, adjacent when some (k+1)-cell contains both.
pub fn complex_skeleton_graph(complex: &CellComplex, k: usize) -> Result<SkeletonGraph> {
    if k + 1 > complex.dim() {
        return Err(Error::DimensionParameter {
            k,
            max: complex.dim() as isize - 1,
        });
    }
    let ids = complex.cells_of_dim(k);
    let pos: HashMap<CellId, usize> = ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let nodes = ids
        .iter()
        .map(|&c| GraphNode {
            id: c,
            dim: Some(k as isize),
            vertices: Some(complex.vertex_set(c).to_vec()),
        })
        .collect();
    let mut edges = Vec::new();
    for g in complex.cells_of_dim(k + 1) {
        let below: Vec<usize> = complex.covers_down(g).iter().map(|c| pos[c]).collect();
        for (i, &a) in below.iter().enumerate() {
            for &b in &below[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    Ok(SkeletonGraph::new(GraphKind::Skeleton { k }, nodes, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::vertex_connectivity;
    use crate::constructors::{standard_family, Family};
    use crate::skeletons::skeleton_graph;

    fn tetra(vs: [usize; 4]) -> CellSpec {
        CellSpec::from_facets(
            (0..4)
                .map(|skip| vs.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect())
                .collect(),
        )
    }

    #[test]
    fn two_tetrahedra() {
        let c = build_complex(5, &[tetra([0, 1, 2, 3]), tetra([1, 2, 3, 4])]).unwrap();
        assert_eq!(c.f_vector(), vec![5, 9, 7, 2]);
        assert_eq!(c.maximal_cells().len(), 2);
        assert_eq!(c.dim(), 3);
    }

    #[test]
    fn single_cube() {
        let cube = standard_family(Family::Hypercube, 3).unwrap();
        let c = polytope_complex(&cube.lattice).unwrap();
        assert_eq!(c.len(), cube.lattice.len());
        assert_eq!(c.maximal_cells().len(), 1);
    }

    #[test]
    fn dedup_and_shared_edge() {
        let tri = |a, b, c| CellSpec::from_facets(vec![vec![a, b], vec![b, c], vec![a, c]]);
        let c = build_complex(4, &[tri(0, 1, 2), tri(1, 2, 3)]).unwrap();
        assert_eq!(c.f_vector(), vec![4, 5, 2]);
        let seg = CellSpec::from_facets(vec![vec![0], vec![1]]);
        let c = build_complex(2, &[seg.clone(), seg]).unwrap();
        assert_eq!(c.maximal_cells().len(), 1);
    }

    #[test]
    fn intersection_property_violation() {
        // Two squares sharing the diagonal vertices 0 and 2 only.
        let sq1 = CellSpec::from_facets(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]);
        let sq2 = CellSpec::from_facets(vec![vec![0, 4], vec![4, 2], vec![2, 5], vec![0, 5]]);
        assert_eq!(
            build_complex(6, &[sq1, sq2]).unwrap_err(),
            Error::IntersectionProperty {
                first: 0,
                second: 1,
                intersection: vec![0, 2]
            }
        );
    }

    #[test]
    fn contained_cell_rejected() {
        let tri = CellSpec::from_facets(vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        let seg = CellSpec::from_facets(vec![vec![0], vec![1]]);
        assert!(matches!(
            build_complex(3, &[tri, seg]).unwrap_err(),
            Error::InvalidCell { index: 1, .. }
        ));
    }

    #[test]
    fn glued() {
        let g3 = glued_simplices(3).unwrap();
        let g0 = complex_skeleton_graph(&g3, 0).unwrap();
        assert_eq!(g0.node_count(), 5);
        assert_eq!(g0.edge_count(), 9);
        let p0 = g0.position(g3.find(&VertexSet::from_indices(5, [0])).unwrap()).unwrap();
        let p4 = g0.position(g3.find(&VertexSet::from_indices(5, [4])).unwrap()).unwrap();
        assert!(!g0.is_adjacent(p0, p4));
        assert_eq!(vertex_connectivity(&g0).kappa, 3);

        let g2 = complex_skeleton_graph(&g3, 2).unwrap();
        assert_eq!(g2.node_count(), 7);
        let cert = vertex_connectivity(&g2);
        assert_eq!(cert.kappa, 1);
        let shared = g3.find(&VertexSet::from_indices(5, [1, 2, 3])).unwrap();
        assert_eq!(cert.min_cut, Some(vec![shared]));

        let g1 = glued_simplices(1).unwrap();
        let path = complex_skeleton_graph(&g1, 0).unwrap();
        assert_eq!((path.node_count(), path.edge_count()), (3, 2));
        let g2d = glued_simplices(2).unwrap();
        assert_eq!(complex_skeleton_graph(&g2d, 1).unwrap().node_count(), 5);
        assert!(complex_skeleton_graph(&g3, 3).is_err());
    }

    #[test]
    fn checks() {
        for d in 1..=4 {
            let r = complex_checks(&glued_simplices(d).unwrap());
            assert!(r.pure && r.strongly_connected);
        }
        let tri = CellSpec::from_facets(vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        let seg = CellSpec::from_facets(vec![vec![3], vec![4]]);
        let r = complex_checks(&build_complex(5, &[tri, seg]).unwrap());
        assert!(!r.pure && !r.strongly_connected);
        assert_eq!(r.components.len(), 2);
        let oct = standard_family(Family::CrossPolytope, 3).unwrap();
        let r = complex_checks(&boundary_complex(&oct.lattice).unwrap());
        assert!(r.pure && r.strongly_connected);
        assert_eq!(r.dimension, 2);
    }

    #[test]
    fn boundaries() {
        let s4 = standard_family(Family::Simplex, 4).unwrap();
        let b = boundary_complex(&s4.lattice).unwrap();
        assert_eq!(b.dim(), 3);
        assert_eq!(b.maximal_cells().len(), 5);
        let r = complex_checks(&b);
        assert!(r.pure && r.strongly_connected);
        let cg = complex_skeleton_graph(&b, 1).unwrap();
        let pg = skeleton_graph(&s4.lattice, 1).unwrap();
        let labels = |g: &SkeletonGraph| -> Vec<(Vec<usize>, Vec<Vec<usize>>)> {
            g.nodes
                .iter()
                .enumerate()
                .map(|(i, n)| {
                    (
                        n.vertices.clone().unwrap(),
                        g.neighbors(i).iter().map(|&j| g.nodes[j].vertices.clone().unwrap()).collect(),
                    )
                })
                .collect()
        };
        assert_eq!(labels(&cg), labels(&pg));

        let cube = standard_family(Family::Hypercube, 3).unwrap();
        let b = boundary_complex(&cube.lattice).unwrap();
        assert_eq!(b.f_vector(), vec![8, 12, 6]);

        let seg = standard_family(Family::Simplex, 1).unwrap();
        let b = boundary_complex(&seg.lattice).unwrap();
        assert_eq!(b.dim(), 0);
        assert_eq!(b.maximal_cells().len(), 2);
        assert!(complex_checks(&b).pure);
    }

    #[test]
    fn spec_round_trip() {
        let g = glued_simplices(2).unwrap();
        let spec = g.to_spec();
        let again = build_complex(spec.n_vertices, &spec.cells).unwrap();
        assert_eq!(again.f_vector(), g.f_vector());
    }
}
