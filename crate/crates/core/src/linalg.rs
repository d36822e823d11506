//! Exact linear algebra over ℚ: solving, rank, determinants.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Solve `Σ_j x_j · columns[j] = rhs` exactly. The system may be
/// overdetermined; returns `None` if it is inconsistent. When the columns
/// are dependent, free variables are set to zero.
pub fn solve(columns: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = rhs.len();
    let n = columns.len();
    assert!(columns.iter().all(|c| c.len() == rows), "solve: ragged columns");
    // augmented row-major matrix
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r][c..].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    Some(x)
}

/// Determinant of a square matrix (row-major).
pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Incrementally maintained row-echelon basis. Each stored row remembers
/// its expression as a combination of the inserted vectors, so a dependent
/// insertion yields the linear relation.
#[derive(Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Insert `v`. Returns `Some(coeffs)` with `v = Σ coeffs[i] · v_i` over
    /// the previously inserted vectors if `v` is dependent, else `None`.
    pub fn insert(&mut self, v: Vec<BigRational>) -> Option<Vec<BigRational>> {
        let idx = self.inserted;
        self.inserted += 1;
        let mut v = v;
        let mut combo = vec![BigRational::zero(); idx + 1];
        combo[idx] = BigRational::one();
        for (pc, row, rc) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
            for (a, b) in combo.iter_mut().zip(rc) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pc) => {
                let inv = v[pc].recip();
                v.iter_mut().for_each(|x| *x *= &inv);
                combo.iter_mut().for_each(|x| *x *= &inv);
                self.rows.push((pc, v, combo));
                None
            }
            None => {
                // 0 = v_idx + Σ combo[i] v_i  ⇒  v_idx = -Σ combo[i] v_i
                combo.pop();
                Some(combo.into_iter().map(|c| -c).collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn v(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| r(x)).collect()
    }

    #[test]
    fn solve_square_and_overdetermined() {
        let cols = vec![v(&[1, 3]), v(&[2, 4])];
        let x = solve(&cols, &v(&[5, 11])).unwrap();
        assert_eq!(x, v(&[1, 2]));
        let cols = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        assert_eq!(solve(&cols, &v(&[2, 3, 5])).unwrap(), v(&[2, 3]));
        assert!(solve(&cols, &v(&[2, 3, 6])).is_none());
    }

    #[test]
    fn det() {
        assert_eq!(determinant(vec![v(&[1, 2]), v(&[3, 4])]), r(-2));
        assert_eq!(determinant(vec![v(&[0, 1]), v(&[1, 0])]), r(-1));
        assert_eq!(determinant(vec![v(&[1, 2]), v(&[2, 4])]), r(0));
    }

    #[test]
    fn echelon_relation() {
        let mut e = Echelon::new();
        assert!(e.insert(v(&[1, 0, 0])).is_none());
        assert!(e.insert(v(&[1, 1, 0])).is_none());
        let rel = e.insert(v(&[3, 5, 0])).unwrap();
        // (3,5,0) = -2 (1,0,0) + 5 (1,1,0)
        assert_eq!(rel, v(&[-2, 5]));
        assert_eq!(e.rank(), 2);
    }
}
