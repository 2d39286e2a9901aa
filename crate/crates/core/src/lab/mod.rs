//! Verification harness: formula values, per-subject checks and
//! byte-deterministic reports over a corpus.

pub mod corpus;
pub mod theorem;

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::complexes::{complex_checks, complex_skeleton_graph, CellComplex};
use crate::connectivity::{vertex_connectivity, ConnectivityCertificate};
use crate::constructors::CoordinatizedPolytope;
use crate::error::{Error, Result};
use crate::lattice::{check_face_count_bound, FaceLattice};
use crate::skeletons::{skeleton_graph, verify_duality_iso};

pub use corpus::{corpus_hash, default_corpus, CorpusEntry, Subject};
pub use theorem::{degree_bound, theorem_values, TheoremValues};

/// Node ids of the separated pair and the cut from a connectivity
/// certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub pair: Option<(usize, usize)>,
    pub cut: Option<Vec<usize>>,
}

impl From<&ConnectivityCertificate> for Witness {
    fn from(c: &ConnectivityCertificate) -> Self {
        Witness {
            pair: c.pair,
            cut: c.min_cut.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub subject: String,
    pub check: &'static str,
    pub k: Option<usize>,
    /// Node count of the graph, for connectivity rows.
    pub nodes: Option<usize>,
    /// kappa, a face count, or the size of a bijection.
    pub value: usize,
    pub bound: Option<usize>,
    pub min_degree: Option<usize>,
    pub degree_bound: Option<usize>,
    pub tight: Option<bool>,
    /// Recorded without asserting a bound.
    pub informational: bool,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl ReportRow {
    fn new(subject: &str, check: &'static str, value: usize) -> Self {
        ReportRow {
            subject: subject.to_string(),
            check,
            k: None,
            nodes: None,
            value,
            bound: None,
            min_degree: None,
            degree_bound: None,
            tight: None,
            informational: false,
            passed: true,
            witness: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubjectTiming {
    pub subject: String,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub corpus_sha256: String,
    pub subjects: usize,
    pub passed: bool,
    pub rows: Vec<ReportRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<SubjectTiming>>,
}

/// Rows for one polytope: connectivity of every `G_k`, face counts against
/// the simplex, and the ridge graph duality.
pub fn polytope_rows(subject: &str, lattice: &FaceLattice) -> Result<Vec<ReportRow>> {
    let d = lattice.dim();
    let mut rows = Vec::new();
    for k in 0..d {
        let graph = skeleton_graph(lattice, k)?;
        let cert = vertex_connectivity(&graph);
        let values = theorem_values(k, d)?;
        let min_degree = graph.min_degree().unwrap_or(0);
        let mut row = ReportRow::new(subject, "skeleton", cert.kappa);
        row.k = Some(k);
        row.nodes = Some(graph.node_count());
        row.bound = Some(values.m_k_d);
        row.min_degree = Some(min_degree);
        row.degree_bound = Some(values.n_k_d);
        row.tight = Some(cert.kappa == values.n_k_d);
        row.passed = cert.kappa >= values.m_k_d && min_degree >= values.n_k_d;
        row.witness = Some(Witness::from(&cert));
        rows.push(row);
    }
    for r in check_face_count_bound(lattice).rows {
        let mut row = ReportRow::new(subject, "face_count", r.count);
        row.k = Some(r.dim);
        row.bound = Some(r.bound);
        row.tight = Some(r.equality);
        row.passed = r.holds;
        rows.push(row);
    }
    if d >= 2 {
        let check = verify_duality_iso(lattice)?;
        let mut row = ReportRow::new(subject, "duality", check.bijection.len());
        row.k = Some(d - 2);
        row.passed = check.passed;
        rows.push(row);
    }
    Ok(rows)
}

/// Rows for a pure, strongly connected complex of dimension d. The top
/// skeleton `k = d - 1` is recorded but carries no bound.
pub fn complex_rows(subject: &str, complex: &CellComplex) -> Result<Vec<ReportRow>> {
    let checks = complex_checks(complex);
    if !checks.pure {
        return Err(Error::Hypothesis(format!(
            "{subject} is not pure (cell {:?} is below the top dimension)",
            checks.deviant
        )));
    }
    if !checks.strongly_connected {
        return Err(Error::Hypothesis(format!(
            "{subject} is not strongly connected ({} components)",
            checks.components.len()
        )));
    }
    let d = checks.dimension;
    let mut rows = Vec::new();
    for k in 0..d {
        let graph = complex_skeleton_graph(complex, k)?;
        let cert = vertex_connectivity(&graph);
        let bound = if k == 0 || k + 2 == d {
            Some(d)
        } else if k + 3 <= d {
            Some(degree_bound(k, d))
        } else {
            None
        };
        let mut row = ReportRow::new(subject, "complex_skeleton", cert.kappa);
        row.k = Some(k);
        row.nodes = Some(graph.node_count());
        row.bound = bound;
        row.min_degree = graph.min_degree();
        row.informational = bound.is_none();
        row.passed = bound.is_none_or(|b| cert.kappa >= b);
        row.witness = Some(Witness::from(&cert));
        rows.push(row);
    }
    Ok(rows)
}

fn entry_rows(entry: &CorpusEntry) -> Result<Vec<ReportRow>> {
    match &entry.subject {
        Subject::Polytope(p) => polytope_rows(&entry.name, &p.lattice),
        Subject::Complex(c) => complex_rows(&entry.name, c),
    }
}

/// Verifies entries concurrently; rows keep the entry order.
pub fn verify_entries(suite: &str, entries: &[CorpusEntry], timings: bool) -> Result<VerificationReport> {
    let results: Vec<(Vec<ReportRow>, u128)> = entries
        .par_iter()
        .map(|e| {
            let start = Instant::now();
            entry_rows(e).map(|rows| (rows, start.elapsed().as_millis()))
        })
        .collect::<Result<_>>()?;
    let timings = timings.then(|| {
        entries
            .iter()
            .zip(&results)
            .map(|(e, (_, ms))| SubjectTiming {
                subject: e.name.clone(),
                millis: *ms,
            })
            .collect()
    });
    let rows: Vec<ReportRow> = results.into_iter().flat_map(|(r, _)| r).collect();
    Ok(VerificationReport {
        suite: suite.to_string(),
        corpus_sha256: corpus_hash(entries),
        subjects: entries.len(),
        passed: rows.iter().all(|r| r.passed),
        rows,
        timings,
    })
}

pub fn verify_polytope(lattice: &FaceLattice) -> Result<VerificationReport> {
    let p = CoordinatizedPolytope::new(lattice.to_incidence(), None)?;
    verify_entries("polytope", &[CorpusEntry::polytope(p)], false)
}

pub fn verify_complex(name: &str, complex: &CellComplex) -> Result<VerificationReport> {
    verify_entries("complex", &[CorpusEntry::complex(name, complex.clone())], false)
}

pub fn verify_all(timings: bool) -> Result<VerificationReport> {
    verify_entries("all", &default_corpus()?, timings)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let width = self.rows.iter().map(|r| r.subject.len()).max().unwrap_or(7).max(7);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<width$}  {:<16} {:>2} {:>6} {:>6} {:>6} {:>7} {:>7} {:>5}  result",
            "subject", "check", "k", "nodes", "value", "bound", "min_deg", "deg_bd", "tight"
        );
        for r in &self.rows {
            let result = match (r.informational, r.passed) {
                (true, _) => "info",
                (false, true) => "pass",
                (false, false) => "FAIL",
            };
            let _ = writeln!(
                out,
                "{:<width$}  {:<16} {:>2} {:>6} {:>6} {:>6} {:>7} {:>7} {:>5}  {}",
                r.subject,
                r.check,
                opt(r.k),
                opt(r.nodes),
                r.value,
                opt(r.bound),
                opt(r.min_degree),
                opt(r.degree_bound),
                opt(r.tight.map(|t| if t { "yes" } else { "no" })),
                result
            );
        }
        if let Some(t) = &self.timings {
            for s in t {
                let _ = writeln!(out, "time {:<width$} {} ms", s.subject, s.millis);
            }
        }
        let _ = writeln!(
            out,
            "{}: {} rows over {} subjects, corpus sha256 {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.rows.len(),
            self.subjects,
            self.corpus_sha256
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{boundary_complex, build_complex, glued_simplices, CellSpec};
    use crate::constructors::{prism_over_simplex, standard_family, Family};

    fn kappas(rows: &[ReportRow], check: &str) -> Vec<usize> {
        rows.iter().filter(|r| r.check == check).map(|r| r.value).collect()
    }

    #[test]
    fn simplex_is_tight() {
        for d in 2..=5 {
            let s = standard_family(Family::Simplex, d).unwrap();
            let rows = polytope_rows("s", &s.lattice).unwrap();
            assert!(rows.iter().all(|r| r.passed));
            for k in 0..d {
                if k + 3 <= d || k + 1 == d {
                    assert_eq!(kappas(&rows, "skeleton")[k], degree_bound(k, d), "d={d} k={k}");
                }
            }
            assert!(rows.iter().filter(|r| r.check == "face_count").all(|r| r.tight == Some(true)));
        }
    }

    #[test]
    fn prism_dual_ridge_graph() {
        for d in 3..=5 {
            let q = prism_over_simplex(d).unwrap();
            let dual = corpus::dual_polytope(&q).unwrap();
            let rows = polytope_rows("dual", &dual.lattice).unwrap();
            assert_eq!(kappas(&rows, "skeleton")[d - 2], d);
            assert!(rows.iter().all(|r| r.passed));
        }
    }

    #[test]
    fn hypercube_rows_pass() {
        let report = verify_polytope(&standard_family(Family::Hypercube, 4).unwrap().lattice).unwrap();
        assert!(report.passed);
        assert_eq!(report.rows.len(), 4 + 4 + 1);
    }

    #[test]
    fn complexes() {
        let rows = complex_rows("g4", &glued_simplices(4).unwrap()).unwrap();
        assert_eq!(rows[0].bound, Some(4));
        assert!(rows[0].value >= 4);
        assert_eq!(rows[1].bound, Some(6));
        assert!(rows[1].passed);
        assert!(rows[3].informational);
        assert_eq!(rows[3].value, 1);
        for lattice in [
            standard_family(Family::Simplex, 5).unwrap().lattice,
            standard_family(Family::Hypercube, 4).unwrap().lattice,
        ] {
            let rows = complex_rows("b", &boundary_complex(&lattice).unwrap()).unwrap();
            assert!(rows.iter().all(|r| r.passed));
        }
        let tri = CellSpec::from_facets(vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        let seg = CellSpec::from_facets(vec![vec![3], vec![4]]);
        let bad = build_complex(5, &[tri, seg]).unwrap();
        assert!(matches!(complex_rows("bad", &bad), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let entries: Vec<CorpusEntry> = (2..=4)
            .map(|d| CorpusEntry::polytope(standard_family(Family::CrossPolytope, d).unwrap()))
            .collect();
        let a = verify_entries("t", &entries, false).unwrap();
        let b = verify_entries("t", &entries, false).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_table(), b.to_table());
        assert!(a.to_table().starts_with("subject"));
        assert_eq!(a.rows[0].subject, "cross_polytope(2)");
    }
}
