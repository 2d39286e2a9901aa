//! Face lattices of convex polytopes built from vertex-facet incidences.
//!
//! Faces are stored as vertex sets and graded by rank, where the empty face has
//! rank 0, vertices rank 1, facets rank `d` and the polytope itself rank `d + 1`.
//! Public accessors speak in dimensions (`rank - 1`); ranks are used internally
//! and in the lattice dump format.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::ops::Range;

use num::integer::binomial;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

pub type FaceId = usize;

/// Largest vertex universe any constructor or lattice build will accept.
pub const MAX_VERTICES: usize = 4096;

/// Default face-count guard; overridden by `SKELETON_LAB_MAX_FACES`.
pub const DEFAULT_MAX_FACES: usize = 2_000_000;

pub fn max_faces() -> usize {
    std::env::var("SKELETON_LAB_MAX_FACES")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_FACES)
}

/// Vertex-facet incidence description of a polytope.
///
/// The single point is encoded as one vertex with one empty facet, since its
/// only facet is the empty face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceMatrix {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n_vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

impl IncidenceMatrix {
    /// Sorts and deduplicates the vertex list of every facet.
    pub fn new(n_vertices: usize, facets: Vec<Vec<usize>>) -> Self {
        let facets = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        IncidenceMatrix {
            name: None,
            n_vertices,
            facets,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn point() -> Self {
        IncidenceMatrix::new(1, vec![vec![]])
    }

    pub fn is_point(&self) -> bool {
        self.n_vertices == 1 && self.facets.len() == 1 && self.facets[0].is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if self.is_point() {
            return Ok(());
        }
        if self.n_vertices > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                count: self.n_vertices,
                limit: MAX_VERTICES,
            });
        }
        if self.facets.len() < 2 {
            return Err(Error::TooFewFacets(self.facets.len()));
        }
        let mut covered = vec![false; self.n_vertices];
        for (i, facet) in self.facets.iter().enumerate() {
            if facet.is_empty() {
                return Err(Error::EmptyFacet(i));
            }
            for &v in facet {
                if v >= self.n_vertices {
                    return Err(Error::VertexOutOfRange {
                        facet: i,
                        vertex: v,
                        n_vertices: self.n_vertices,
                    });
                }
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(Error::OrphanVertex(v));
        }
        let sets = self.facet_sets();
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                if i == j {
                    continue;
                }
                if sets[i] == sets[j] {
                    return Err(Error::DuplicateFacet(i.min(j), i.max(j)));
                }
                if sets[i].is_subset(&sets[j]) {
                    return Err(Error::ContainedFacet { inner: i, outer: j });
                }
            }
        }
        Ok(())
    }

    pub fn facet_sets(&self) -> Vec<VertexSet> {
        self.facets
            .iter()
            .map(|f| VertexSet::from_indices(self.n_vertices, f.iter().copied()))
            .collect()
    }
}

/// Whether a [`FaceMap`] preserves or reverses inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl Orientation {
    pub fn compose(self, other: Orientation) -> Orientation {
        if self == other {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        }
    }
}

/// Partial bijection between the face ids of two lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceMap {
    forward: Vec<Option<FaceId>>,
    backward: Vec<Option<FaceId>>,
    orientation: Orientation,
}

impl FaceMap {
    fn new(source_len: usize, target_len: usize, orientation: Orientation) -> Self {
        FaceMap {
            forward: vec![None; source_len],
            backward: vec![None; target_len],
            orientation,
        }
    }

    fn link(&mut self, source: FaceId, target: FaceId) {
        debug_assert!(self.forward[source].is_none() && self.backward[target].is_none());
        self.forward[source] = Some(target);
        self.backward[target] = Some(source);
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn forward(&self, source: FaceId) -> Option<FaceId> {
        self.forward.get(source).copied().flatten()
    }

    pub fn backward(&self, target: FaceId) -> Option<FaceId> {
        self.backward.get(target).copied().flatten()
    }

    /// Pairs `(source, target)` in source id order.
    pub fn pairs(&self) -> Vec<(FaceId, FaceId)> {
        self.forward
            .iter()
            .enumerate()
            .filter_map(|(s, t)| t.map(|t| (s, t)))
            .collect()
    }

    pub fn domain_len(&self) -> usize {
        self.forward.iter().flatten().count()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &FaceMap) -> FaceMap {
        let mut out = FaceMap::new(
            self.forward.len(),
            next.backward.len(),
            self.orientation.compose(next.orientation),
        );
        for (s, t) in self.pairs() {
            if let Some(u) = next.forward(t) {
                out.link(s, u);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    /// Alternating sum of the entries.
    pub fn euler_sum(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// `1 - (-1)^d` for a `d`-polytope.
    pub fn euler_target(dim: usize) -> i64 {
        if dim.is_multiple_of(2) {
            0
        } else {
            2
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// One line of a [`FaceCountBound`] report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCountRow {
    pub dim: usize,
    pub count: usize,
    pub bound: usize,
    pub holds: bool,
    pub equality: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCountBound {
    pub rows: Vec<FaceCountRow>,
}

impl FaceCountBound {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    pub fn tight_everywhere(&self) -> bool {
        self.rows.iter().all(|r| r.equality)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Immutable face lattice. Face ids are assigned in (rank, lexicographic vertex
/// set) order, so the faces of each rank occupy a contiguous id range.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    name: Option<String>,
    n_vertices: usize,
    faces: Vec<VertexSet>,
    ranks: Vec<usize>,
    rank_start: Vec<usize>,
    covers_up: Vec<Vec<FaceId>>,
    covers_down: Vec<Vec<FaceId>>,
    declared_facets: Vec<VertexSet>,
    index: HashMap<VertexSet, FaceId>,
}

/// Builds the face lattice of the polytope described by `inc`.
///
/// Faces are the intersection closure of the facets together with the empty
/// set and the full vertex set. The result is not checked for polytopality;
/// use [`validate_polytopal`] for that.
pub fn build_lattice(inc: &IncidenceMatrix) -> Result<FaceLattice> {
    inc.validate()?;
    let n = inc.n_vertices;
    let limit = max_faces();
    let facets = inc.facet_sets();

    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut order: Vec<VertexSet> = Vec::new();
    let mut queue: VecDeque<VertexSet> = VecDeque::new();
    let push = |set: VertexSet,
                seen: &mut HashSet<VertexSet>,
                order: &mut Vec<VertexSet>,
                queue: &mut VecDeque<VertexSet>|
     -> Result<()> {
        if seen.insert(set.clone()) {
            if seen.len() > limit {
                return Err(Error::TooManyFaces { limit });
            }
            order.push(set.clone());
            queue.push_back(set);
        }
        Ok(())
    };
    push(VertexSet::full(n), &mut seen, &mut order, &mut VecDeque::new())?;
    push(VertexSet::empty(n), &mut seen, &mut order, &mut VecDeque::new())?;
    for f in &facets {
        push(f.clone(), &mut seen, &mut order, &mut queue)?;
    }
    while let Some(face) = queue.pop_front() {
        for f in &facets {
            push(face.intersection(f), &mut seen, &mut order, &mut queue)?;
        }
    }

    // For each vertex, the facets that contain it.
    let m = facets.len();
    let mut vertex_facets = vec![VertexSet::empty(m); n];
    for (j, f) in facets.iter().enumerate() {
        for v in f.iter() {
            vertex_facets[v].insert(j);
        }
    }
    let closure = |set: &VertexSet| -> VertexSet {
        let mut containing = VertexSet::full(m);
        for v in set.iter() {
            containing.intersect_with(&vertex_facets[v]);
        }
        let mut out = VertexSet::full(n);
        for j in containing.iter() {
            out.intersect_with(&facets[j]);
        }
        out
    };

    let local: HashMap<&VertexSet, usize> = order.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut covers_up = vec![Vec::new(); order.len()];
    for (i, face) in order.iter().enumerate() {
        let mut candidates: Vec<VertexSet> = Vec::new();
        for v in 0..n {
            if face.contains(v) {
                continue;
            }
            let mut grown = face.clone();
            grown.insert(v);
            let c = closure(&grown);
            if !candidates.contains(&c) {
                candidates.push(c);
            }
        }
        for c in &candidates {
            let minimal = !candidates.iter().any(|o| o.is_proper_subset(c));
            if minimal {
                covers_up[i].push(local[c]);
            }
        }
    }
    drop(local);
    Ok(FaceLattice::assemble(
        inc.name.clone(),
        n,
        order,
        covers_up,
        Some(facets),
    ))
}

impl FaceLattice {
    /// Builds a lattice from an explicit list of faces (vertex sets), deriving
    /// covers by inclusion. Meant for hand-built posets; duplicates are merged.
    pub fn from_face_sets(name: Option<String>, n_vertices: usize, sets: Vec<VertexSet>) -> Self {
        let mut sets = sets;
        sets.sort();
        sets.dedup();
        let mut covers_up = vec![Vec::new(); sets.len()];
        for i in 0..sets.len() {
            let above: Vec<usize> = (0..sets.len())
                .filter(|&j| sets[i].is_proper_subset(&sets[j]))
                .collect();
            for &j in &above {
                let minimal = !above
                    .iter()
                    .any(|&o| sets[o].is_proper_subset(&sets[j]));
                if minimal {
                    covers_up[i].push(j);
                }
            }
        }
        FaceLattice::assemble(name, n_vertices, sets, covers_up, None)
    }

    fn assemble(
        name: Option<String>,
        n_vertices: usize,
        sets: Vec<VertexSet>,
        covers_up: Vec<Vec<usize>>,
        declared_facets: Option<Vec<VertexSet>>,
    ) -> Self {
        let len = sets.len();
        let mut covers_down = vec![Vec::new(); len];
        for (i, ups) in covers_up.iter().enumerate() {
            for &j in ups {
                covers_down[j].push(i);
            }
        }
        // Longest chain from below; subsets are strictly smaller.
        let mut by_size: Vec<usize> = (0..len).collect();
        by_size.sort_by_key(|&i| sets[i].len());
        let mut ranks = vec![0usize; len];
        for &i in &by_size {
            ranks[i] = covers_down[i].iter().map(|&j| ranks[j] + 1).max().unwrap_or(0);
        }

        let mut order: Vec<usize> = (0..len).collect();
        order.sort_by(|&a, &b| ranks[a].cmp(&ranks[b]).then_with(|| sets[a].cmp(&sets[b])));
        let mut new_id = vec![0usize; len];
        for (id, &old) in order.iter().enumerate() {
            new_id[old] = id;
        }
        let remap = |lists: &Vec<Vec<usize>>, old: usize| -> Vec<FaceId> {
            let mut v: Vec<FaceId> = lists[old].iter().map(|&o| new_id[o]).collect();
            v.sort_unstable();
            v
        };
        let faces: Vec<VertexSet> = order.iter().map(|&o| sets[o].clone()).collect();
        let new_ranks: Vec<usize> = order.iter().map(|&o| ranks[o]).collect();
        let new_up: Vec<Vec<FaceId>> = order.iter().map(|&o| remap(&covers_up, o)).collect();
        let new_down: Vec<Vec<FaceId>> = order.iter().map(|&o| remap(&covers_down, o)).collect();

        let max_rank = new_ranks.last().copied().unwrap_or(0);
        let mut rank_start = vec![0usize; max_rank + 2];
        for r in 0..=max_rank + 1 {
            rank_start[r] = new_ranks.partition_point(|&x| x < r);
        }
        let index = faces.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut lattice = FaceLattice {
            name,
            n_vertices,
            faces,
            ranks: new_ranks,
            rank_start,
            covers_up: new_up,
            covers_down: new_down,
            declared_facets: Vec::new(),
            index,
        };
        lattice.declared_facets = match declared_facets {
            Some(mut f) => {
                f.sort();
                f
            }
            None => {
                let top = lattice.top();
                lattice.covers_down[top]
                    .iter()
                    .map(|&c| lattice.faces[c].clone())
                    .collect()
            }
        };
        lattice
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Number of faces including the empty face and the polytope.
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.ranks[self.top()].saturating_sub(1)
    }

    pub fn bottom(&self) -> FaceId {
        0
    }

    pub fn top(&self) -> FaceId {
        self.faces.len() - 1
    }

    pub fn vertex_set(&self, id: FaceId) -> &VertexSet {
        &self.faces[id]
    }

    pub fn rank(&self, id: FaceId) -> usize {
        self.ranks[id]
    }

    pub fn face_dim(&self, id: FaceId) -> isize {
        self.ranks[id] as isize - 1
    }

    pub fn covers_up(&self, id: FaceId) -> &[FaceId] {
        &self.covers_up[id]
    }

    pub fn covers_down(&self, id: FaceId) -> &[FaceId] {
        &self.covers_down[id]
    }

    pub fn contains_id(&self, id: FaceId) -> bool {
        id < self.faces.len()
    }

    pub fn faces_of_rank(&self, rank: usize) -> Range<FaceId> {
        if rank + 1 >= self.rank_start.len() {
            return self.faces.len()..self.faces.len();
        }
        self.rank_start[rank]..self.rank_start[rank + 1]
    }

    pub fn faces_of_dim(&self, dim: usize) -> Range<FaceId> {
        self.faces_of_rank(dim + 1)
    }

    pub fn find(&self, set: &VertexSet) -> Option<FaceId> {
        self.index.get(set).copied()
    }

    /// Face id of the vertex `v`, if `{v}` is a face.
    pub fn vertex_face(&self, v: usize) -> Option<FaceId> {
        if v >= self.n_vertices {
            return None;
        }
        self.find(&VertexSet::from_indices(self.n_vertices, [v]))
    }

    pub fn f_vector(&self) -> FVector {
        FVector((0..self.dim()).map(|k| self.faces_of_dim(k).len()).collect())
    }

    /// Coatom vertex lists in id order.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.covers_down[self.top()]
            .iter()
            .map(|&c| self.faces[c].to_vec())
            .collect()
    }

    pub fn to_incidence(&self) -> IncidenceMatrix {
        IncidenceMatrix {
            name: self.name.clone(),
            n_vertices: self.n_vertices,
            facets: self.facets(),
        }
    }

    /// All faces containing `id` (including itself), in id order.
    pub fn faces_above(&self, id: FaceId) -> Vec<FaceId> {
        self.closure_along(id, &self.covers_up)
    }

    /// All faces contained in `id` (including itself), in id order.
    pub fn faces_below(&self, id: FaceId) -> Vec<FaceId> {
        self.closure_along(id, &self.covers_down)
    }

    fn closure_along(&self, id: FaceId, edges: &[Vec<FaceId>]) -> Vec<FaceId> {
        let mut seen = vec![false; self.faces.len()];
        let mut stack = vec![id];
        seen[id] = true;
        while let Some(f) = stack.pop() {
            for &g in &edges[f] {
                if !seen[g] {
                    seen[g] = true;
                    stack.push(g);
                }
            }
        }
        (0..self.faces.len()).filter(|&i| seen[i]).collect()
    }

    /// One face per line: `rank [v0,v1,...]`, in id order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (id, face) in self.faces.iter().enumerate() {
            let verts: Vec<String> = face.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{} [{}]", self.ranks[id], verts.join(","));
        }
        out
    }

    fn check_face(&self, id: FaceId) -> Result<()> {
        if self.contains_id(id) {
            Ok(())
        } else {
            Err(Error::UnknownFace(id))
        }
    }
}

/// Face whose vertex set is the intersection of the two given faces.
pub fn meet(lattice: &FaceLattice, a: FaceId, b: FaceId) -> Result<FaceId> {
    lattice.check_face(a)?;
    lattice.check_face(b)?;
    let set = lattice.vertex_set(a).intersection(lattice.vertex_set(b));
    lattice.find(&set).ok_or_else(|| {
        Error::NotPolytopal(format!("intersection {set} of faces {a} and {b} is not a face"))
    })
}

pub fn check_face_count_bound(lattice: &FaceLattice) -> FaceCountBound {
    let d = lattice.dim();
    let rows = lattice
        .f_vector()
        .0
        .into_iter()
        .enumerate()
        .map(|(i, count)| {
            let bound = binomial(d + 1, i + 1);
            FaceCountRow {
                dim: i,
                count,
                bound,
                holds: count >= bound,
                equality: count == bound,
            }
        })
        .collect();
    FaceCountBound { rows }
}

pub fn validate_polytopal(lattice: &FaceLattice) -> ValidationReport {
    let mut checks = Vec::new();
    let len = lattice.len();
    let top = lattice.top();
    let n = lattice.n_vertices();

    let bad_cover = (0..len).find_map(|f| {
        lattice
            .covers_up(f)
            .iter()
            .find(|&&g| lattice.rank(g) != lattice.rank(f) + 1)
            .map(|&g| (f, g))
    });
    let bounded = lattice.vertex_set(0).is_empty() && lattice.vertex_set(top).len() == n;
    checks.push(Check {
        name: "graded",
        passed: bad_cover.is_none() && bounded,
        detail: match bad_cover {
            Some((f, g)) => format!("cover {f} < {g} skips a rank"),
            None if !bounded => "lattice lacks empty bottom or full top".to_string(),
            None => format!("all maximal chains have length {}", lattice.dim() + 2),
        },
    });

    let atoms = lattice.faces_of_rank(1);
    let singletons = atoms.clone().all(|a| lattice.vertex_set(a).len() == 1);
    let atoms_ok = singletons && atoms.len() == n;
    checks.push(Check {
        name: "atoms",
        passed: atoms_ok,
        detail: format!("{} atoms over {} vertices, all singletons: {}", atoms.len(), n, singletons),
    });

    let mut coatoms: Vec<VertexSet> = lattice
        .covers_down(top)
        .iter()
        .map(|&c| lattice.vertex_set(c).clone())
        .collect();
    coatoms.sort();
    let coatom_rank_ok = lattice
        .covers_down(top)
        .iter()
        .all(|&c| lattice.rank(c) + 1 == lattice.rank(top));
    checks.push(Check {
        name: "coatoms",
        passed: coatoms == lattice.declared_facets && coatom_rank_ok,
        detail: format!("{} coatoms, {} declared facets", coatoms.len(), lattice.declared_facets.len()),
    });

    let mut non_closed = None;
    'outer: for a in 0..len {
        for b in a + 1..len {
            let x = lattice.vertex_set(a).intersection(lattice.vertex_set(b));
            if lattice.find(&x).is_none() {
                non_closed = Some((a, b, x));
                break 'outer;
            }
        }
    }
    checks.push(Check {
        name: "intersection_closed",
        passed: non_closed.is_none(),
        detail: match &non_closed {
            Some((a, b, x)) => format!("faces {a} and {b} meet in {x}, not a face"),
            None => "every pairwise intersection is a face".to_string(),
        },
    });

    let mut diamond_fail = None;
    let mut counts = vec![0usize; len];
    'diamond: for f in 0..len {
        let mut touched = Vec::new();
        for &h in lattice.covers_up(f) {
            for &g in lattice.covers_up(h) {
                if counts[g] == 0 {
                    touched.push(g);
                }
                counts[g] += 1;
            }
        }
        for &g in &touched {
            if counts[g] != 2 && lattice.rank(g) == lattice.rank(f) + 2 {
                diamond_fail = Some((f, g, counts[g]));
            }
            counts[g] = 0;
        }
        if diamond_fail.is_some() {
            break 'diamond;
        }
    }
    checks.push(Check {
        name: "diamond",
        passed: diamond_fail.is_none(),
        detail: match diamond_fail {
            Some((f, g, c)) => format!("interval [{f},{g}] has {} elements", c + 2),
            None => "every rank-2 interval has 4 elements".to_string(),
        },
    });

    let fv = lattice.f_vector();
    let euler = fv.euler_sum();
    let target = FVector::euler_target(lattice.dim());
    checks.push(Check {
        name: "euler",
        passed: euler == target,
        detail: format!("alternating sum {euler}, expected {target}"),
    });

    let bound = check_face_count_bound(lattice);
    checks.push(Check {
        name: "face_count_bound",
        passed: bound.holds(),
        detail: format!("f = {:?}", fv.0),
    });

    ValidationReport { checks }
}

/// Polar dual: the order-reversed lattice, realized on the facets of
/// `lattice` as vertices (facet `i` in id order becomes dual vertex `i`).
pub fn polar_dual(lattice: &FaceLattice) -> Result<(FaceLattice, FaceMap)> {
    let coatoms = lattice.covers_down(lattice.top()).to_vec();
    let m = coatoms.len();
    let containing = |f: FaceId| -> VertexSet {
        let set = lattice.vertex_set(f);
        VertexSet::from_indices(
            m,
            coatoms
                .iter()
                .enumerate()
                .filter(|(_, &c)| set.is_subset(lattice.vertex_set(c)))
                .map(|(i, _)| i),
        )
    };
    let dual_facets: Vec<Vec<usize>> = lattice
        .faces_of_rank(1)
        .map(|v| containing(v).to_vec())
        .collect();
    let mut inc = IncidenceMatrix::new(m, dual_facets);
    inc.name = lattice.name().map(|n| format!("dual({n})"));
    let dual = build_lattice(&inc)?;
    let mut map = FaceMap::new(lattice.len(), dual.len(), Orientation::Reversing);
    for f in 0..lattice.len() {
        let image = containing(f);
        let g = dual.find(&image).ok_or_else(|| {
            Error::NotPolytopal(format!("face {f} has no dual image {image}"))
        })?;
        map.link(f, g);
    }
    if map.domain_len() != dual.len() {
        return Err(Error::NotPolytopal("dual map is not onto".to_string()));
    }
    Ok((dual, map))
}

/// Face figure at `face`: the interval above it, realized on the faces covering
/// `face` as vertices.
pub fn face_figure(lattice: &FaceLattice, face: FaceId) -> Result<(FaceLattice, FaceMap)> {
    lattice.check_face(face)?;
    if face == lattice.bottom() || face == lattice.top() {
        return Err(Error::ImproperFace(face));
    }
    let covers = lattice.covers_up(face).to_vec();
    let m = covers.len();
    let image = |g: FaceId| -> VertexSet {
        let set = lattice.vertex_set(g);
        VertexSet::from_indices(
            m,
            covers
                .iter()
                .enumerate()
                .filter(|(_, &c)| lattice.vertex_set(c).is_subset(set))
                .map(|(i, _)| i),
        )
    };
    let above = lattice.faces_above(face);
    let top = lattice.top();
    let facets: Vec<Vec<usize>> = lattice
        .covers_down(top)
        .iter()
        .filter(|c| above.binary_search(c).is_ok())
        .map(|&c| image(c).to_vec())
        .collect();
    let mut inc = IncidenceMatrix::new(m, facets);
    inc.name = lattice.name().map(|n| format!("figure({n},{face})"));
    let figure = build_lattice(&inc)?;
    let mut map = FaceMap::new(lattice.len(), figure.len(), Orientation::Preserving);
    for &g in &above {
        let img = image(g);
        let h = figure.find(&img).ok_or_else(|| {
            Error::NotPolytopal(format!("face {g} has no image {img} in the figure"))
        })?;
        map.link(g, h);
    }
    if map.domain_len() != figure.len() {
        return Err(Error::NotPolytopal("figure map is not onto".to_string()));
    }
    Ok((figure, map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetrahedron() -> IncidenceMatrix {
        IncidenceMatrix::new(4, vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]])
    }

    fn cube3() -> IncidenceMatrix {
        let mut facets = Vec::new();
        for axis in 0..3 {
            for bit in 0..2 {
                facets.push((0..8).filter(|v| (v >> axis) & 1 == bit).collect());
            }
        }
        IncidenceMatrix::new(8, facets)
    }

    fn rank_counts(l: &FaceLattice) -> Vec<usize> {
        (0..=l.dim() + 1).map(|r| l.faces_of_rank(r).len()).collect()
    }

    #[test]
    fn tetrahedron_lattice() {
        let l = build_lattice(&tetrahedron()).unwrap();
        assert_eq!(l.len(), 16);
        assert_eq!(rank_counts(&l), vec![1, 4, 6, 4, 1]);
        assert_eq!(l.dim(), 3);
        assert!(validate_polytopal(&l).passed());
    }

    #[test]
    fn segment_lattice() {
        let l = build_lattice(&IncidenceMatrix::new(2, vec![vec![0], vec![1]])).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(l.dim(), 1);
        assert!(validate_polytopal(&l).passed());
    }

    #[test]
    fn point_lattice() {
        let l = build_lattice(&IncidenceMatrix::point()).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.dim(), 0);
        assert_eq!(l.f_vector().0, Vec::<usize>::new());
        assert!(validate_polytopal(&l).passed());
        assert_eq!(l.facets(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn cube_lattice() {
        let l = build_lattice(&cube3()).unwrap();
        assert_eq!(l.len(), 28);
        assert_eq!(rank_counts(&l), vec![1, 8, 12, 6, 1]);
        let report = validate_polytopal(&l);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn triangle_validates() {
        let l = build_lattice(&IncidenceMatrix::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]])).unwrap();
        assert_eq!(l.dim(), 2);
        assert!(validate_polytopal(&l).passed());
    }

    #[test]
    fn two_triangles_fail_diamond() {
        // Faces of two triangles glued along {1,2}, closed off by a top element.
        let n = 4;
        let sets: Vec<VertexSet> = [
            vec![],
            vec![0],
            vec![1],
            vec![2],
            vec![3],
            vec![0, 1],
            vec![0, 2],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
            vec![0, 1, 2],
            vec![1, 2, 3],
            vec![0, 1, 2, 3],
        ]
        .into_iter()
        .map(|s| VertexSet::from_indices(n, s))
        .collect();
        let l = FaceLattice::from_face_sets(None, n, sets);
        let report = validate_polytopal(&l);
        assert!(!report.check("diamond").unwrap().passed);
        assert!(report.check("graded").unwrap().passed);
        assert!(!report.passed());
    }

    #[test]
    fn rejects_bad_incidences() {
        let contained = IncidenceMatrix::new(3, vec![vec![0, 1, 2], vec![0, 1]]);
        assert_eq!(
            build_lattice(&contained).unwrap_err(),
            Error::ContainedFacet { inner: 1, outer: 0 }
        );
        let dup = IncidenceMatrix::new(2, vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(build_lattice(&dup).unwrap_err(), Error::DuplicateFacet(0, 1));
        let orphan = IncidenceMatrix::new(3, vec![vec![0], vec![1]]);
        assert_eq!(build_lattice(&orphan).unwrap_err(), Error::OrphanVertex(2));
        let one = IncidenceMatrix::new(2, vec![vec![0, 1]]);
        assert_eq!(build_lattice(&one).unwrap_err(), Error::TooFewFacets(1));
        let range = IncidenceMatrix::new(2, vec![vec![0], vec![2]]);
        assert!(matches!(
            build_lattice(&range).unwrap_err(),
            Error::VertexOutOfRange { facet: 1, vertex: 2, .. }
        ));
    }

    #[test]
    fn coatoms_round_trip() {
        let inc = cube3();
        let l = build_lattice(&inc).unwrap();
        let mut expected = inc.facets.clone();
        expected.sort();
        assert_eq!(l.facets(), expected);
    }

    #[test]
    fn dump_is_sorted_by_rank_then_lex() {
        let l = build_lattice(&tetrahedron()).unwrap();
        let dump = l.dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines[0], "0 []");
        assert_eq!(lines[1], "1 [0]");
        assert_eq!(lines[5], "2 [0,1]");
        assert_eq!(lines[15], "4 [0,1,2,3]");
    }

    #[test]
    fn meet_cases() {
        let l = build_lattice(&cube3()).unwrap();
        let facet = |axis: usize, bit: usize| {
            let set = VertexSet::from_indices(8, (0..8).filter(|v| (v >> axis) & 1 == bit));
            l.find(&set).unwrap()
        };
        let x0 = facet(0, 0);
        let x1 = facet(0, 1);
        let y0 = facet(1, 0);
        let edge = meet(&l, x0, y0).unwrap();
        assert_eq!(l.face_dim(edge), 1);
        assert_eq!(l.vertex_set(edge).to_vec(), vec![0, 4]);
        assert_eq!(meet(&l, x0, x1).unwrap(), l.bottom());
        assert_eq!(meet(&l, edge, edge).unwrap(), edge);
        assert_eq!(meet(&l, 0, 99).unwrap_err(), Error::UnknownFace(99));
    }

    #[test]
    fn face_count_bound_cases() {
        let cube = build_lattice(&cube3()).unwrap();
        let b = check_face_count_bound(&cube);
        assert!(b.holds());
        assert!(b.rows.iter().all(|r| !r.equality));
        assert_eq!(b.rows.iter().map(|r| r.bound).collect::<Vec<_>>(), vec![4, 6, 4]);
        let tet = build_lattice(&tetrahedron()).unwrap();
        assert!(check_face_count_bound(&tet).tight_everywhere());
    }

    #[test]
    fn dual_of_cube_is_octahedron() {
        let cube = build_lattice(&cube3()).unwrap();
        let (oct, map) = polar_dual(&cube).unwrap();
        assert_eq!(oct.f_vector().0, vec![6, 12, 8]);
        assert_eq!(map.orientation(), Orientation::Reversing);
        assert_eq!(map.forward(cube.bottom()), Some(oct.top()));
        assert_eq!(map.forward(cube.top()), Some(oct.bottom()));
        for (s, t) in map.pairs() {
            if s != cube.bottom() && s != cube.top() {
                assert_eq!(oct.face_dim(t), 3 - 1 - cube.face_dim(s));
            }
        }
        let (back, map2) = polar_dual(&oct).unwrap();
        let composed = map.then(&map2);
        assert_eq!(composed.orientation(), Orientation::Preserving);
        for (s, t) in composed.pairs() {
            assert_eq!(cube.face_dim(s), back.face_dim(t));
        }
        assert_eq!(composed.domain_len(), cube.len());
    }

    #[test]
    fn figures() {
        let cube = build_lattice(&cube3()).unwrap();
        for v in cube.faces_of_dim(0) {
            let (fig, map) = face_figure(&cube, v).unwrap();
            assert_eq!(fig.dim(), 2);
            assert_eq!(fig.f_vector().0, vec![3, 3]);
            assert_eq!(map.domain_len(), cube.faces_above(v).len());
            assert!(validate_polytopal(&fig).passed());
        }
        let tet = build_lattice(&tetrahedron()).unwrap();
        for e in tet.faces_of_dim(1) {
            let (fig, _) = face_figure(&tet, e).unwrap();
            assert_eq!(fig.dim(), 1);
            assert_eq!(fig.len(), 4);
        }
        for f in tet.faces_of_dim(2) {
            let (fig, _) = face_figure(&tet, f).unwrap();
            assert_eq!(fig.dim(), 0);
        }
        assert_eq!(face_figure(&tet, tet.bottom()).unwrap_err(), Error::ImproperFace(0));
        assert_eq!(face_figure(&tet, tet.top()).unwrap_err(), Error::ImproperFace(tet.top()));
    }
}
