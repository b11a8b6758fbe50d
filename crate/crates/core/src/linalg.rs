//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::scalar::{dot, Scalar};

/// Reduced row echelon form. Returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<Scalar>]) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    rref(rows).1.len()
}

pub fn determinant(rows: &[Vec<Scalar>]) -> Scalar {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Scalar::zero();
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
                let delta = &f * &m[c][j];
                m[i][j] -= delta;
            }
        }
    }
    det
}

/// Solves the square system `a x = b`; `None` if `a` is singular.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.len();
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(p, c);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let delta = &f * &m[c][j];
                    m[i][j] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Orthogonal basis (not normalized) spanning the same space as `rows`.
pub fn orthogonal_basis(rows: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for r in rows {
        let v = project_out(r, &basis);
        if v.iter().any(|x| !x.is_zero()) {
            basis.push(v);
        }
    }
    basis
}

/// Component of `v` orthogonal to the span of the orthogonal `basis`.
pub fn project_out(v: &[Scalar], basis: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut out = v.to_vec();
    for b in basis {
        let coef = dot(&out, b) / dot(b, b);
        if coef.is_zero() {
            continue;
        }
        for (o, bi) in out.iter_mut().zip(b) {
            *o -= &coef * bi;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int, vec_of};

    #[test]
    fn determinant_and_rank() {
        let m = vec![vec_of(&[2, 1]), vec_of(&[1, 3])];
        assert_eq!(determinant(&m), int(5));
        let sing = vec![vec_of(&[1, 2, 3]), vec_of(&[2, 4, 6]), vec_of(&[0, 1, 1])];
        assert_eq!(determinant(&sing), int(0));
        assert_eq!(rank(&sing), 2);
    }

    #[test]
    fn solve_small_system() {
        let a = vec![vec_of(&[2, 1]), vec_of(&[1, 3])];
        let x = solve(&a, &vec_of(&[3, 5])).unwrap();
        assert_eq!(x, vec![frac(4, 5), frac(7, 5)]);
        assert!(solve(&[vec_of(&[1, 1]), vec_of(&[2, 2])], &vec_of(&[1, 1])).is_none());
    }

    #[test]
    fn projection_is_orthogonal() {
        let basis = orthogonal_basis(&[vec_of(&[1, 1, 0])]);
        let p = project_out(&vec_of(&[3, 1, 2]), &basis);
        assert_eq!(p, vec![int(1), int(-1), int(2)]);
    }
}
