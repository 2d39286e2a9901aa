//! Exact rational matrices: rank by fraction-free elimination, affine dimension
//! of point sets, and hyperplane recovery for facets.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    /// Panics if the rows have differing lengths.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RationalMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    /// Exact rank. Rows are scaled to integers and reduced with Bareiss'
    /// fraction-free elimination, so every intermediate value is an integer.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row = &self.entries[r * self.cols..(r + 1) * self.cols];
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| num::integer::lcm(acc, x.denom().clone()));
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            for r in rank + 1..self.rows {
                for c in col + 1..self.cols {
                    let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                    m[r][c] = v / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Basis of the right null space, from the reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m: Vec<Vec<Rational>> = (0..self.rows)
            .map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for x in m[row].iter_mut() {
                *x *= &inv;
            }
            for r in 0..self.rows {
                if r != row && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in 0..self.cols {
                        let delta = &factor * &m[row][c];
                        m[r][c] -= delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -m[i][f].clone();
                }
                v
            })
            .collect()
    }
}

/// Dimension of the affine hull of the points; `-1` for the empty set.
pub fn affine_dimension(points: &[&[Rational]]) -> isize {
    let Some((base, rest)) = points.split_first() else {
        return -1;
    };
    if rest.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = rest
        .iter()
        .map(|p| p.iter().zip(base.iter()).map(|(a, b)| a - b).collect())
        .collect();
    RationalMatrix::from_rows(&rows).rank() as isize
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Linear functional `a` and value `b` such that `a·x = b` on every vertex in
/// `facet` and `a·x > b` on every other vertex, if one exists.
pub fn supporting_functional(
    coords: &[Vec<Rational>],
    facet: &[usize],
) -> Option<(Vec<Rational>, Rational)> {
    let (&first, rest) = facet.split_first()?;
    let base = &coords[first];
    let rows: Vec<Vec<Rational>> = rest
        .iter()
        .map(|&v| coords[v].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let dim = base.len();
    let normal = if rows.is_empty() {
        // A single vertex facet only happens on a segment.
        if dim != 1 {
            return None;
        }
        vec![Rational::one()]
    } else {
        let null = RationalMatrix::from_rows(&rows).nullspace();
        if null.len() != 1 {
            return None;
        }
        null.into_iter().next()?
    };
    let value = dot(&normal, base);
    let mut sign = None;
    for (v, x) in coords.iter().enumerate() {
        let s = dot(&normal, x) - &value;
        let on_facet = facet.contains(&v);
        if on_facet != s.is_zero() {
            return None;
        }
        if !on_facet {
            let positive = s.is_positive();
            match sign {
                None => sign = Some(positive),
                Some(p) if p != positive => return None,
                _ => {}
            }
        }
    }
    if sign == Some(false) {
        Some((normal.iter().map(|x| -x).collect(), -value))
    } else {
        Some((normal, value))
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| integer(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    /// Plain rational Gaussian elimination, kept separate from Bareiss.
    fn naive_rank(a: &RationalMatrix) -> usize {
        let mut rows: Vec<Vec<Rational>> = (0..a.rows())
            .map(|r| (0..a.cols()).map(|c| a.get(r, c).clone()).collect())
            .collect();
        let mut rank = 0;
        for c in 0..a.cols() {
            if let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) {
                rows.swap(rank, p);
                for r in rank + 1..rows.len() {
                    let f = &rows[r][c] / &rows[rank][c];
                    for k in 0..a.cols() {
                        let d = &f * &rows[rank][k];
                        rows[r][k] -= d;
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn ranks() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).rank(), 3);
        assert_eq!(m(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(RationalMatrix::zeros(0, 3).rank(), 0);
        let mut frac = m(&[&[1, 1], &[1, 1]]);
        frac.set(1, 1, rational(3, 2));
        assert_eq!(frac.rank(), 2);
    }

    #[test]
    fn rank_matches_naive_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(12345);
        let mut next = || rng.random_range(-3i64..=3);
        for trial in 0..200 {
            let rows = 1 + trial % 5;
            let cols = 1 + (trial / 5) % 5;
            let data: Vec<Vec<Rational>> = (0..rows)
                .map(|_| (0..cols).map(|_| rational(next(), 1 + next().abs())).collect())
                .collect();
            let a = RationalMatrix::from_rows(&data);
            assert_eq!(a.rank(), naive_rank(&a), "{data:?}");
        }
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let null = a.nullspace();
        assert_eq!(null.len(), 1);
        for r in 0..3 {
            let row: Vec<Rational> = (0..3).map(|c| a.get(r, c).clone()).collect();
            assert!(dot(&row, &null[0]).is_zero());
        }
    }

    #[test]
    fn affine_dimensions() {
        let pts: Vec<Vec<Rational>> = vec![
            vec![integer(0), integer(0)],
            vec![integer(1), integer(1)],
            vec![integer(2), integer(2)],
        ];
        let refs: Vec<&[Rational]> = pts.iter().map(Vec::as_slice).collect();
        assert_eq!(affine_dimension(&refs), 1);
        assert_eq!(affine_dimension(&refs[..1]), 0);
        assert_eq!(affine_dimension(&[]), -1);
    }

    #[test]
    fn square_facet_functional() {
        let coords: Vec<Vec<Rational>> = [(0, 0), (1, 0), (0, 1), (1, 1)]
            .iter()
            .map(|&(x, y)| vec![integer(x), integer(y)])
            .collect();
        let (a, b) = supporting_functional(&coords, &[1, 3]).unwrap();
        // x >= ... flipped so the rest lies strictly above: -x >= -1
        assert!(dot(&a, &coords[0]) > b);
        assert!(supporting_functional(&coords, &[0, 3]).is_none());
    }
}
