use serde::Serialize;

use crate::error::{Error, Result};

/// Connectivity values for the k-skeleton graph of a d-polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremValues {
    pub k: usize,
    pub d: usize,
    /// Largest m such that every `G_k(P)` of a d-polytope is m-connected.
    pub m_k_d: usize,
    pub sallee_lower: usize,
    pub sallee_upper: usize,
    /// Degree of a k-face in `G_k` of the d-simplex, `(k+1)(d-k)`.
    pub n_k_d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotation: Option<&'static str>,
}

pub fn degree_bound(k: usize, d: usize) -> usize {
    (k + 1) * (d - k)
}

pub fn theorem_values(k: usize, d: usize) -> Result<TheoremValues> {
    if k + 1 > d {
        return Err(Error::DimensionParameter {
            k,
            max: d as isize - 1,
        });
    }
    let n = degree_bound(k, d);
    let annotation = if k == 0 {
        Some("Balinski")
    } else if k + 1 == d {
        Some("trivial")
    } else {
        None
    };
    Ok(TheoremValues {
        k,
        d,
        m_k_d: if k + 2 == d { d } else { n },
        sallee_lower: n - k,
        sallee_upper: n,
        n_k_d: n,
        annotation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let v = theorem_values(1, 4).unwrap();
        assert_eq!((v.m_k_d, v.sallee_lower, v.sallee_upper), (6, 5, 6));
        assert_eq!(theorem_values(2, 4).unwrap().m_k_d, 4);
        let v = theorem_values(0, 5).unwrap();
        assert_eq!((v.m_k_d, v.annotation), (5, Some("Balinski")));
        assert_eq!(theorem_values(3, 4).unwrap().annotation, Some("trivial"));
        assert!(theorem_values(4, 4).is_err());
        assert!(theorem_values(0, 0).is_err());
    }

    #[test]
    fn bounds_bracket_m() {
        for d in 1..=50 {
            for k in 0..d {
                let v = theorem_values(k, d).unwrap();
                assert!(v.sallee_lower <= v.m_k_d && v.m_k_d <= v.sallee_upper, "k={k} d={d}");
            }
            assert_eq!(theorem_values(0, d).unwrap().m_k_d, d);
            assert_eq!(theorem_values(d - 1, d).unwrap().m_k_d, d);
        }
    }
}
