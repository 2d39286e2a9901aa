//! Generators for the standard polytope families and the product and pyramid
//! operations, with optional exact rational coordinates.

use crate::error::{Error, Result};
use crate::lattice::{build_lattice, FaceLattice, IncidenceMatrix, MAX_VERTICES};
use crate::rational::{affine_dimension, integer, Rational};

/// Largest dimension accepted by [`standard_family`].
pub const MAX_FAMILY_DIM: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Simplex,
    Hypercube,
    CrossPolytope,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Simplex => "simplex",
            Family::Hypercube => "hypercube",
            Family::CrossPolytope => "cross_polytope",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simplex" => Ok(Family::Simplex),
            "hypercube" | "cube" => Ok(Family::Hypercube),
            "cross_polytope" | "cross-polytope" | "cross" => Ok(Family::CrossPolytope),
            other => Err(Error::InvalidParameters(format!("unknown family {other:?}"))),
        }
    }
}

/// A face lattice together with its incidence and, optionally, exact vertex
/// coordinates.
#[derive(Clone, Debug)]
pub struct CoordinatizedPolytope {
    pub incidence: IncidenceMatrix,
    pub lattice: FaceLattice,
    pub coords: Option<Vec<Vec<Rational>>>,
}

impl CoordinatizedPolytope {
    /// Builds the lattice and checks the coordinate invariants when present.
    pub fn new(incidence: IncidenceMatrix, coords: Option<Vec<Vec<Rational>>>) -> Result<Self> {
        let lattice = build_lattice(&incidence)?;
        if let Some(c) = &coords {
            if c.len() != incidence.n_vertices {
                return Err(Error::InvalidParameters(format!(
                    "{} coordinate rows for {} vertices",
                    c.len(),
                    incidence.n_vertices
                )));
            }
            let refs: Vec<&[Rational]> = c.iter().map(Vec::as_slice).collect();
            let affine = affine_dimension(&refs);
            if affine != lattice.dim() as isize {
                return Err(Error::InvalidParameters(format!(
                    "vertices span affine dimension {affine}, lattice has dimension {}",
                    lattice.dim()
                )));
            }
        }
        Ok(CoordinatizedPolytope {
            incidence,
            lattice,
            coords,
        })
    }

    pub fn name(&self) -> &str {
        self.incidence.name.as_deref().unwrap_or("unnamed")
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn n_vertices(&self) -> usize {
        self.incidence.n_vertices
    }

    pub fn without_coords(mut self) -> Self {
        self.coords = None;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        let name = name.into();
        self.lattice = self.lattice.with_name(name.clone());
        self.incidence.name = Some(name);
        self
    }
}

fn unit(d: usize, i: usize, value: i64) -> Vec<Rational> {
    let mut v = vec![integer(0); d];
    v[i] = integer(value);
    v
}

pub fn standard_family(family: Family, d: usize) -> Result<CoordinatizedPolytope> {
    let min = if family == Family::Simplex { 0 } else { 1 };
    if d < min || d > MAX_FAMILY_DIM {
        return Err(Error::DimensionOutOfRange {
            family: family.name(),
            dim: d,
            min,
            max: MAX_FAMILY_DIM,
        });
    }
    let (inc, coords) = match family {
        Family::Simplex => {
            let facets = if d == 0 {
                vec![vec![]]
            } else {
                (0..=d).map(|skip| (0..=d).filter(|&v| v != skip).collect()).collect()
            };
            let mut coords = vec![vec![integer(0); d]];
            coords.extend((0..d).map(|i| unit(d, i, 1)));
            (IncidenceMatrix::new(d + 1, facets), coords)
        }
        Family::Hypercube => {
            let n = 1usize << d;
            let mut facets = Vec::with_capacity(2 * d);
            for axis in 0..d {
                for bit in 0..2 {
                    facets.push((0..n).filter(|v| (v >> axis) & 1 == bit).collect());
                }
            }
            let coords = (0..n)
                .map(|v| (0..d).map(|axis| integer(((v >> axis) & 1) as i64)).collect())
                .collect();
            (IncidenceMatrix::new(n, facets), coords)
        }
        Family::CrossPolytope => {
            // Vertex 2i is +e_i and 2i+1 is -e_i.
            let facets = (0..1usize << d)
                .map(|signs| (0..d).map(|i| 2 * i + ((signs >> i) & 1)).collect())
                .collect();
            let coords = (0..2 * d)
                .map(|v| unit(d, v / 2, if v % 2 == 0 { 1 } else { -1 }))
                .collect();
            (IncidenceMatrix::new(2 * d, facets), coords)
        }
    };
    CoordinatizedPolytope::new(inc.named(format!("{}({d})", family.name())), Some(coords))
}

/// Gale's evenness condition: for any two indices outside `subset`, the number
/// of members of `subset` strictly between them is even.
pub fn gale_even(n: usize, subset: &[usize]) -> bool {
    let mut inside = vec![false; n];
    for &v in subset {
        inside[v] = true;
    }
    let mut last_outside: Option<usize> = None;
    let mut between = 0usize;
    for (i, &member) in inside.iter().enumerate() {
        if member {
            between += 1;
        } else {
            if last_outside.is_some() && between % 2 == 1 {
                return false;
            }
            last_outside = Some(i);
            between = 0;
        }
    }
    true
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Cyclic polytope with `n` vertices in dimension `d`, defined purely
/// combinatorially through Gale evenness.
pub fn cyclic(n: usize, d: usize) -> Result<CoordinatizedPolytope> {
    if d < 2 || n < d + 1 {
        return Err(Error::InvalidParameters(format!(
            "cyclic polytope needs n >= d + 1 >= 3, got n = {n}, d = {d}"
        )));
    }
    if n > 64 {
        return Err(Error::TooManyVertices { count: n, limit: 64 });
    }
    let facets: Vec<Vec<usize>> = k_subsets(n, d)
        .into_iter()
        .filter(|s| gale_even(n, s))
        .collect();
    CoordinatizedPolytope::new(
        IncidenceMatrix::new(n, facets).named(format!("cyclic({n},{d})")),
        None,
    )
}

/// Cartesian product; vertex `(i, j)` gets index `i * |Q| + j`.
pub fn product(p: &CoordinatizedPolytope, q: &CoordinatizedPolytope) -> Result<CoordinatizedPolytope> {
    if p.dim() == 0 || q.dim() == 0 {
        return Err(Error::InvalidParameters(
            "product factors must have dimension at least 1".to_string(),
        ));
    }
    let np = p.n_vertices();
    let nq = q.n_vertices();
    let n = np * nq;
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            count: n,
            limit: MAX_VERTICES,
        });
    }
    let mut facets = Vec::new();
    for f in &p.incidence.facets {
        facets.push(f.iter().flat_map(|&i| (0..nq).map(move |j| i * nq + j)).collect());
    }
    for g in &q.incidence.facets {
        facets.push((0..np).flat_map(|i| g.iter().map(move |&j| i * nq + j)).collect());
    }
    let coords = match (&p.coords, &q.coords) {
        (Some(cp), Some(cq)) => Some(
            (0..np)
                .flat_map(|i| (0..nq).map(move |j| cp[i].iter().chain(&cq[j]).cloned().collect()))
                .collect(),
        ),
        _ => None,
    };
    CoordinatizedPolytope::new(
        IncidenceMatrix::new(n, facets).named(format!("product({},{})", p.name(), q.name())),
        coords,
    )
}

/// Pyramid with a new apex vertex of index `n`.
pub fn pyramid(p: &CoordinatizedPolytope) -> Result<CoordinatizedPolytope> {
    let n = p.n_vertices();
    if n + 1 > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            count: n + 1,
            limit: MAX_VERTICES,
        });
    }
    let mut facets = vec![(0..n).collect::<Vec<_>>()];
    for f in &p.incidence.facets {
        let mut g = f.clone();
        g.push(n);
        facets.push(g);
    }
    let coords = p.coords.as_ref().map(|c| {
        let dim = c.first().map_or(0, Vec::len);
        let count = integer(n as i64);
        let mut out: Vec<Vec<Rational>> = c
            .iter()
            .map(|x| {
                let mut y = x.clone();
                y.push(integer(0));
                y
            })
            .collect();
        let mut apex: Vec<Rational> = (0..dim)
            .map(|k| c.iter().map(|x| x[k].clone()).sum::<Rational>() / &count)
            .collect();
        apex.push(integer(1));
        out.push(apex);
        out
    });
    CoordinatizedPolytope::new(
        IncidenceMatrix::new(n + 1, facets).named(format!("pyramid({})", p.name())),
        coords,
    )
}

pub fn segment() -> CoordinatizedPolytope {
    standard_family(Family::Simplex, 1)
        .expect("segment")
        .renamed("segment")
}

/// Prism over a `(d-1)`-simplex, realized as `simplex(d-1) × segment`.
pub fn prism_over_simplex(d: usize) -> Result<CoordinatizedPolytope> {
    if d < 2 {
        return Err(Error::DimensionOutOfRange {
            family: "prism",
            dim: d,
            min: 2,
            max: MAX_FAMILY_DIM,
        });
    }
    Ok(product(&standard_family(Family::Simplex, d - 1)?, &segment())?.renamed(format!("prism({d})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{check_face_count_bound, validate_polytopal};
    use crate::rational::supporting_functional;

    fn fv(p: &CoordinatizedPolytope) -> Vec<usize> {
        p.lattice.f_vector().0
    }

    #[test]
    fn family_f_vectors() {
        assert_eq!(fv(&standard_family(Family::Simplex, 3).unwrap()), vec![4, 6, 4]);
        assert_eq!(fv(&standard_family(Family::Hypercube, 4).unwrap()), vec![16, 32, 24, 8]);
        assert_eq!(fv(&standard_family(Family::CrossPolytope, 3).unwrap()), vec![6, 12, 8]);
        assert_eq!(standard_family(Family::Simplex, 0).unwrap().dim(), 0);
    }

    #[test]
    fn family_ranges() {
        assert!(matches!(
            standard_family(Family::Hypercube, 0),
            Err(Error::DimensionOutOfRange { .. })
        ));
        assert!(matches!(
            standard_family(Family::Simplex, 13),
            Err(Error::DimensionOutOfRange { .. })
        ));
    }

    /// Enumerates Gale-even subsets by checking every pair of outside indices.
    fn gale_oracle(n: usize, d: usize) -> usize {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == d)
            .filter(|m| {
                let outside: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 0).collect();
                outside.iter().all(|&a| {
                    outside.iter().filter(|&&b| b > a).all(|&b| {
                        ((a + 1)..b).filter(|k| m >> k & 1 == 1).count() % 2 == 0
                    })
                })
            })
            .count()
    }

    #[test]
    fn cyclic_facet_counts() {
        assert_eq!(gale_oracle(6, 3), 8);
        assert_eq!(gale_oracle(6, 4), 9);
        assert_eq!(cyclic(6, 3).unwrap().incidence.facets.len(), 8);
        assert_eq!(cyclic(6, 4).unwrap().incidence.facets.len(), 9);
        for n in 5..=9 {
            for d in 2..n {
                if d < n {
                    let c = cyclic(n, d).unwrap();
                    assert_eq!(c.incidence.facets.len(), gale_oracle(n, d), "cyclic({n},{d})");
                    assert!(validate_polytopal(&c.lattice).passed(), "cyclic({n},{d})");
                }
            }
        }
        let simplexlike = cyclic(5, 4).unwrap();
        assert_eq!(fv(&simplexlike), fv(&standard_family(Family::Simplex, 4).unwrap()));
        assert!(cyclic(3, 3).is_err());
    }

    #[test]
    fn products() {
        let seg = segment();
        let tri = standard_family(Family::Simplex, 2).unwrap();
        assert_eq!(fv(&product(&tri, &seg).unwrap()), vec![6, 9, 5]);
        assert_eq!(fv(&product(&seg, &seg).unwrap()), vec![4, 4]);
        let tet = standard_family(Family::Simplex, 3).unwrap();
        assert_eq!(fv(&product(&tet, &seg).unwrap()), vec![8, 16, 14, 6]);
    }

    /// f'(P×Q) from nonempty face counts of the factors (including the polytope).
    fn product_formula(p: &[usize], dp: usize, q: &[usize], dq: usize) -> Vec<usize> {
        let mut pp = p.to_vec();
        pp.push(1);
        let mut qq = q.to_vec();
        qq.push(1);
        (0..dp + dq)
            .map(|k| {
                (0..=dp)
                    .filter(|&i| k >= i && k - i <= dq)
                    .map(|i| pp[i] * qq[k - i])
                    .sum()
            })
            .collect()
    }

    #[test]
    fn product_f_vector_identity() {
        let pieces = vec![
            segment(),
            standard_family(Family::Simplex, 2).unwrap(),
            standard_family(Family::Hypercube, 2).unwrap(),
            standard_family(Family::CrossPolytope, 3).unwrap(),
            cyclic(5, 2).unwrap(),
        ];
        for p in &pieces {
            for q in &pieces {
                let prod = product(p, q).unwrap();
                assert_eq!(
                    fv(&prod),
                    product_formula(&fv(p), p.dim(), &fv(q), q.dim()),
                    "{} x {}",
                    p.name(),
                    q.name()
                );
                assert!(validate_polytopal(&prod.lattice).passed());
            }
        }
    }

    #[test]
    fn pyramids() {
        let square = standard_family(Family::Hypercube, 2).unwrap();
        assert_eq!(fv(&pyramid(&square).unwrap()), vec![5, 8, 5]);
        let pentagon = cyclic(5, 2).unwrap();
        assert_eq!(fv(&pyramid(&pentagon).unwrap()), vec![6, 10, 6]);
        for d in 0..5 {
            let s = standard_family(Family::Simplex, d).unwrap();
            assert_eq!(
                fv(&pyramid(&s).unwrap()),
                fv(&standard_family(Family::Simplex, d + 1).unwrap())
            );
        }
        let pc = pyramid(&square).unwrap();
        assert!(pc.coords.is_some());
    }

    #[test]
    fn outputs_validate_and_meet_face_bound() {
        for family in [Family::Simplex, Family::Hypercube, Family::CrossPolytope] {
            for d in 1..=5 {
                let p = standard_family(family, d).unwrap();
                assert!(validate_polytopal(&p.lattice).passed(), "{}", p.name());
                assert!(check_face_count_bound(&p.lattice).holds());
            }
        }
        for d in 1..=6 {
            let s = standard_family(Family::Simplex, d).unwrap();
            assert!(check_face_count_bound(&s.lattice).tight_everywhere());
        }
    }

    #[test]
    fn facets_are_supported_by_functionals() {
        let mut polys: Vec<CoordinatizedPolytope> = Vec::new();
        for family in [Family::Simplex, Family::Hypercube, Family::CrossPolytope] {
            for d in 1..=4 {
                polys.push(standard_family(family, d).unwrap());
            }
        }
        polys.push(prism_over_simplex(3).unwrap());
        polys.push(pyramid(&standard_family(Family::Hypercube, 3).unwrap()).unwrap());
        for p in &polys {
            let coords = p.coords.as_ref().unwrap();
            for f in &p.incidence.facets {
                assert!(
                    supporting_functional(coords, f).is_some(),
                    "{} facet {f:?}",
                    p.name()
                );
            }
        }
    }
}
