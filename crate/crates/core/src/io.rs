//! JSON file formats for polytopes and complexes.

use serde::{Deserialize, Serialize};

use crate::complexes::{build_complex, CellComplex, ComplexSpec};
use crate::constructors::CoordinatizedPolytope;
use crate::error::{Error, Result};
use crate::lattice::IncidenceMatrix;
use crate::rational::Rational;

/// `{"name", "n_vertices", "facets", "coords"?}` with coordinates written as
/// rational strings such as `"-1/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n_vertices: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Vec<String>>>,
}

impl From<&CoordinatizedPolytope> for PolytopeFile {
    fn from(p: &CoordinatizedPolytope) -> Self {
        PolytopeFile {
            name: p.incidence.name.clone(),
            n_vertices: p.incidence.n_vertices,
            facets: p.incidence.facets.clone(),
            coords: p
                .coords
                .as_ref()
                .map(|rows| rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()),
        }
    }
}

impl PolytopeFile {
    pub fn into_polytope(self) -> Result<CoordinatizedPolytope> {
        let coords = match self.coords {
            None => None,
            Some(rows) => Some(
                rows.iter()
                    .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let mut inc = IncidenceMatrix::new(self.n_vertices, self.facets);
        inc.name = self.name;
        CoordinatizedPolytope::new(inc, coords)
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::InvalidParameters(format!("bad rational coordinate {s:?}")))
}

fn json_error(e: serde_json::Error) -> Error {
    Error::InvalidParameters(format!("malformed JSON: {e}"))
}

pub fn polytope_from_json(text: &str) -> Result<CoordinatizedPolytope> {
    serde_json::from_str::<PolytopeFile>(text).map_err(json_error)?.into_polytope()
}

pub fn polytope_to_json(p: &CoordinatizedPolytope) -> String {
    serde_json::to_string_pretty(&PolytopeFile::from(p)).expect("polytope serializes")
}

pub fn complex_from_json(text: &str) -> Result<CellComplex> {
    let spec: ComplexSpec = serde_json::from_str(text).map_err(json_error)?;
    build_complex(spec.n_vertices, &spec.cells)
}

pub fn complex_to_json(c: &CellComplex) -> String {
    serde_json::to_string_pretty(&c.to_spec()).expect("complex serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{cyclic, product, standard_family, Family};

    #[test]
    fn round_trip_with_coords() {
        let p = product(
            &standard_family(Family::Simplex, 2).unwrap(),
            &standard_family(Family::CrossPolytope, 2).unwrap(),
        )
        .unwrap();
        let again = polytope_from_json(&polytope_to_json(&p)).unwrap();
        assert_eq!(again.incidence, p.incidence);
        assert_eq!(again.coords, p.coords);
    }

    #[test]
    fn plain_incidence() {
        let text = r#"{"name":"triangle","n_vertices":3,"facets":[[0,1],[1,2],[0,2]]}"#;
        let p = polytope_from_json(text).unwrap();
        assert_eq!(p.dim(), 2);
        assert!(p.coords.is_none());
        let c = cyclic(6, 3).unwrap();
        assert!(!polytope_to_json(&c).contains("coords"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(polytope_from_json("{").is_err());
        let text = r#"{"n_vertices":2,"facets":[[0],[1]],"coords":[["x"],["1"]]}"#;
        assert!(polytope_from_json(text).is_err());
        let text = r#"{"n_vertices":2,"facets":[[0],[1]],"coords":[["1/2"],["1/2"]]}"#;
        assert!(polytope_from_json(text).is_err());
    }

    #[test]
    fn complex_json() {
        let text = r#"{"n_vertices":4,"cells":[
            {"n_vertices":4,"facets":[[0,1],[1,2],[0,2]]},
            {"facets":[[1,2],[2,3],[1,3]]}]}"#;
        let c = complex_from_json(text).unwrap();
        assert_eq!(c.f_vector(), vec![4, 5, 2]);
        let again = complex_from_json(&complex_to_json(&c)).unwrap();
        assert_eq!(again.f_vector(), c.f_vector());
    }
}
