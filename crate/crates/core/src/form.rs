//! Exact symmetric bilinear forms and their signatures.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, serde_q, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricForm {
    rows: Vec<Vec<Scalar>>,
}

/// Inertia of a quadratic form: counts of positive, negative and zero squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(pos: usize, neg: usize, zero: usize) -> Self {
        Self { pos, neg, zero }
    }

    pub fn rank(&self) -> usize {
        self.pos + self.neg
    }

    /// Signature of the form `-q`.
    pub fn negated(&self) -> Self {
        Self::new(self.neg, self.pos, self.zero)
    }

    /// Signature of the direct sum of forms in disjoint variables.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(
            self.pos + other.pos,
            self.neg + other.neg,
            self.zero + other.zero,
        )
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.pos, self.neg, self.zero)
    }
}

impl SymmetricForm {
    pub fn new(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn diagonal(entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        let mut rows = vec![vec![Scalar::zero(); n]; n];
        for (i, e) in entries.into_iter().enumerate() {
            rows[i][i] = e;
        }
        Self { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    /// Block-diagonal form `self ⊕ other` in disjoint variables.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.n(), other.n());
        let mut rows = vec![vec![Scalar::zero(); n + m]; n + m];
        for i in 0..n {
            rows[i][..n].clone_from_slice(&self.rows[i]);
        }
        for i in 0..m {
            rows[n + i][n..].clone_from_slice(&other.rows[i]);
        }
        Self { rows }
    }

    /// Principal submatrix on the given indices.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        Self {
            rows: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.rows[i][j].clone()).collect())
                .collect(),
        }
    }

    pub fn bilinear(&self, u: &[Scalar], v: &[Scalar]) -> Result<Scalar> {
        for len in [u.len(), v.len()] {
            if len != self.n() {
                return Err(Error::LengthMismatch {
                    expected: self.n(),
                    found: len,
                });
            }
        }
        let mut acc = Scalar::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            acc += ui * scalar::dot(&self.rows[i], v);
        }
        Ok(acc)
    }

    pub fn quadratic(&self, u: &[Scalar]) -> Result<Scalar> {
        self.bilinear(u, u)
    }

    /// Signature by symmetric Gaussian (Lagrange) reduction over the
    /// rationals. Diagonal pivots are preferred; when the remaining diagonal
    /// vanishes, a nonzero off-diagonal entry is brought onto the diagonal by
    /// the congruence `e_i -> e_i + e_j`.
    pub fn signature(&self) -> Signature {
        let mut m = self.rows.clone();
        let mut active: Vec<usize> = (0..self.n()).collect();
        let (mut pos, mut neg) = (0, 0);
        while !active.is_empty() {
            let pivot = active.iter().copied().find(|&i| !m[i][i].is_zero());
            let p = match pivot {
                Some(p) => p,
                None => {
                    let pair = active.iter().find_map(|&i| {
                        active
                            .iter()
                            .copied()
                            .find(|&j| j != i && !m[i][j].is_zero())
                            .map(|j| (i, j))
                    });
                    let Some((i, j)) = pair else { break };
                    // row_i += row_j; col_i += col_j
                    for k in 0..m.len() {
                        let add = m[j][k].clone();
                        m[i][k] += add;
                    }
                    for k in 0..m.len() {
                        let add = m[k][j].clone();
                        m[k][i] += add;
                    }
                    i
                }
            };
            let piv = m[p][p].clone();
            if piv.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&i| i != p);
            for &i in &active {
                if m[i][p].is_zero() {
                    continue;
                }
                let f = &m[i][p] / &piv;
                for &j in &active {
                    let delta = &f * &m[p][j];
                    m[i][j] -= delta;
                }
            }
            for &i in &active {
                m[i][p] = Scalar::zero();
                m[p][i] = Scalar::zero();
            }
        }
        Signature::new(pos, neg, self.n() - pos - neg)
    }
}

/// Whether `B(u,v)^2 <= B(u,u) B(v,v)`.
pub fn cs_check(b: &SymmetricForm, u: &[Scalar], v: &[Scalar]) -> Result<bool> {
    let uv = b.bilinear(u, v)?;
    Ok(&uv * &uv <= b.quadratic(u)? * b.quadratic(v)?)
}

/// Whether `B(u,v)^2 >= B(u,u) B(v,v)`; requires `B(v,v) > 0`.
pub fn reversed_cs_check(b: &SymmetricForm, u: &[Scalar], v: &[Scalar]) -> Result<bool> {
    let vv = b.quadratic(v)?;
    if !vv.is_positive() {
        return Err(Error::Precondition("Q(v) must be positive".into()));
    }
    let uv = b.bilinear(u, v)?;
    Ok(&uv * &uv >= b.quadratic(u)? * vv)
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    n: usize,
    #[serde(with = "serde_q::mat")]
    rows: Vec<Vec<Scalar>>,
}

impl Serialize for SymmetricForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormJson {
            n: self.n(),
            rows: self.rows.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymmetricForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = FormJson::deserialize(d)?;
        if raw.rows.len() != raw.n {
            return Err(D::Error::custom(format!(
                "expected {} rows, found {}",
                raw.n,
                raw.rows.len()
            )));
        }
        SymmetricForm::new(raw.rows).map_err(D::Error::custom)
    }
}
