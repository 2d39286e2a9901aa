use sha2::{Digest, Sha256};

use crate::complexes::{boundary_complex, glued_simplices, CellComplex};
use crate::constructors::{
    cyclic, prism_over_simplex, product, pyramid, segment, standard_family, CoordinatizedPolytope, Family,
};
use crate::error::Result;
use crate::lattice::polar_dual;

#[derive(Clone, Debug)]
pub enum Subject {
    Polytope(CoordinatizedPolytope),
    Complex(CellComplex),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub subject: Subject,
}

impl CorpusEntry {
    pub fn polytope(p: CoordinatizedPolytope) -> Self {
        CorpusEntry {
            name: p.name().to_string(),
            subject: Subject::Polytope(p),
        }
    }

    pub fn complex(name: impl Into<String>, c: CellComplex) -> Self {
        CorpusEntry {
            name: name.into(),
            subject: Subject::Complex(c),
        }
    }

    /// Canonical text fed into the corpus hash.
    fn canonical(&self) -> String {
        let body = match &self.subject {
            Subject::Polytope(p) => serde_json::to_string(&p.incidence),
            Subject::Complex(c) => serde_json::to_string(&c.to_spec()),
        };
        format!("{}\n{}\n", self.name, body.expect("corpus entries serialize"))
    }
}

/// Combinatorial polar dual, without coordinates.
pub fn dual_polytope(p: &CoordinatizedPolytope) -> Result<CoordinatizedPolytope> {
    let (dual, _) = polar_dual(&p.lattice)?;
    let inc = dual.to_incidence().named(format!("dual({})", p.name()));
    CoordinatizedPolytope::new(inc, None)
}

/// Base polytopes of the default corpus, before duals are added.
pub fn base_polytopes() -> Result<Vec<CoordinatizedPolytope>> {
    let mut out = Vec::new();
    for d in 2..=6 {
        out.push(standard_family(Family::Simplex, d)?);
    }
    for d in 2..=5 {
        out.push(standard_family(Family::Hypercube, d)?);
    }
    for d in 2..=5 {
        out.push(standard_family(Family::CrossPolytope, d)?);
    }
    for n in 6..=8 {
        for d in 3..=4 {
            out.push(cyclic(n, d)?);
        }
    }
    for d in 3..=6 {
        out.push(prism_over_simplex(d)?);
    }
    let square = standard_family(Family::Hypercube, 2)?;
    let cube = standard_family(Family::Hypercube, 3)?;
    let octahedron = standard_family(Family::CrossPolytope, 3)?;
    let pentagon = cyclic(5, 2)?;
    let triangle = standard_family(Family::Simplex, 2)?;
    let tetrahedron = standard_family(Family::Simplex, 3)?;
    out.push(pyramid(&square)?);
    out.push(pyramid(&cube)?);
    out.push(pyramid(&octahedron)?);
    out.push(pyramid(&pentagon)?);
    out.push(pyramid(&prism_over_simplex(3)?)?);
    out.push(product(&triangle, &triangle)?);
    out.push(product(&pentagon, &segment())?);
    out.push(product(&square, &triangle)?);
    out.push(product(&segment(), &octahedron)?);
    out.push(product(&triangle, &octahedron)?);
    out.push(product(&tetrahedron, &square)?);
    Ok(out)
}

/// Base polytopes followed by their duals.
pub fn default_polytopes() -> Result<Vec<CoordinatizedPolytope>> {
    let base = base_polytopes()?;
    let duals = base.iter().map(dual_polytope).collect::<Result<Vec<_>>>()?;
    Ok(base.into_iter().chain(duals).collect())
}

pub fn default_complexes() -> Result<Vec<(String, CellComplex)>> {
    let mut out = Vec::new();
    for d in 2..=5 {
        out.push((format!("glued_simplices({d})"), glued_simplices(d)?));
    }
    for d in 3..=5 {
        let s = standard_family(Family::Simplex, d)?;
        out.push((format!("boundary({})", s.name()), boundary_complex(&s.lattice)?));
    }
    for d in 3..=4 {
        let c = standard_family(Family::Hypercube, d)?;
        out.push((format!("boundary({})", c.name()), boundary_complex(&c.lattice)?));
    }
    Ok(out)
}

pub fn default_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out: Vec<CorpusEntry> = default_polytopes()?.into_iter().map(CorpusEntry::polytope).collect();
    out.extend(default_complexes()?.into_iter().map(|(n, c)| CorpusEntry::complex(n, c)));
    Ok(out)
}

/// Hex SHA-256 over the canonical form of every entry, in order.
pub fn corpus_hash(entries: &[CorpusEntry]) -> String {
    let mut hasher = Sha256::new();
    for e in entries {
        hasher.update(e.canonical().as_bytes());
    }
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let base = base_polytopes().unwrap();
        let all = default_polytopes().unwrap();
        assert_eq!(all.len(), 2 * base.len());
        assert!(all.iter().all(|p| p.dim() <= 6 && p.dim() >= 2));
        let names: Vec<&str> = all.iter().map(|p| p.name()).collect();
        assert!(names.contains(&"dual(prism(5))"));
        assert_eq!(default_complexes().unwrap().len(), 9);
    }

    #[test]
    fn hash_is_stable() {
        let a = default_corpus().unwrap();
        let b = default_corpus().unwrap();
        assert_eq!(corpus_hash(&a), corpus_hash(&b));
        assert_eq!(corpus_hash(&a).len(), 64);
        assert_ne!(corpus_hash(&a), corpus_hash(&a[1..]));
    }
}
