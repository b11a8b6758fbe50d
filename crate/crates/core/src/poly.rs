//! Exact homogeneous multivariate polynomials.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::SymmetricForm;
use crate::linalg;
use crate::scalar::{self, serde_q, Scalar};

pub type Exponent = Vec<u32>;

/// All exponent vectors of `nvars` variables with total degree `degree`,
/// in lexicographically decreasing order (`x1^d` first).
pub fn exponents(nvars: usize, degree: u32) -> Vec<Exponent> {
    fn rec(prefix: &mut Exponent, left: usize, deg: u32, out: &mut Vec<Exponent>) {
        if left == 1 {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=deg).rev() {
            prefix.push(e);
            rec(prefix, left - 1, deg - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(&mut Vec::with_capacity(nvars), nvars, degree, &mut out);
    }
    out
}

fn monomial(x: &[Scalar], exp: &[u32]) -> Scalar {
    x.iter().zip(exp).fold(Scalar::one(), |acc, (xi, &e)| {
        acc * scalar::pow(xi, e as usize)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPolynomial {
    nvars: usize,
    degree: u32,
    coeffs: BTreeMap<Exponent, Scalar>,
}

impl HomogeneousPolynomial {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Self {
            nvars,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds from `(exponent, coefficient)` terms; repeated exponents add up.
    pub fn from_terms(
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Exponent, Scalar)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars, degree);
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(Error::LengthMismatch {
                    expected: nvars,
                    found: exp.len(),
                });
            }
            if exp.iter().sum::<u32>() != degree {
                return Err(Error::Precondition(format!(
                    "term {exp:?} does not have degree {degree}"
                )));
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Exponent, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> Scalar {
        self.coeffs.get(exp).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn eval(&self, x: &[Scalar]) -> Result<Scalar> {
        self.check_len(x.len())?;
        Ok(self
            .coeffs
            .iter()
            .fold(Scalar::zero(), |acc, (e, c)| acc + c * monomial(x, e)))
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: n,
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut p = Self::zero(self.nvars, self.degree);
        for (e, v) in &self.coeffs {
            p.add_term(e.clone(), v * c);
        }
        p
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::Precondition("polynomials of different shape".into()));
        }
        let mut p = self.clone();
        for (e, v) in &other.coeffs {
            p.add_term(e.clone(), v.clone());
        }
        Ok(p)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// Directional derivative `L_v`; lowers the degree by one.
    pub fn derivative(&self, v: &[Scalar]) -> Result<Self> {
        self.check_len(v.len())?;
        let mut p = Self::zero(self.nvars, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return Ok(p);
        }
        for (e, c) in &self.coeffs {
            for (i, vi) in v.iter().enumerate() {
                if e[i] == 0 || vi.is_zero() {
                    continue;
                }
                let mut de = e.clone();
                de[i] -= 1;
                p.add_term(de, c * vi * Scalar::from_integer(e[i].into()));
            }
        }
        Ok(p)
    }

    /// Value of a degree-0 polynomial.
    pub fn constant(&self) -> Option<Scalar> {
        (self.degree == 0).then(|| self.coeff(&vec![0; self.nvars]))
    }

    /// Hessian matrix of a quadratic form.
    pub fn hessian(&self) -> Result<SymmetricForm> {
        if self.degree != 2 {
            return Err(Error::Precondition(format!(
                "Hessian of a degree {} polynomial",
                self.degree
            )));
        }
        let n = self.nvars;
        let mut rows = vec![vec![Scalar::zero(); n]; n];
        for (e, c) in &self.coeffs {
            let idx: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
            match idx.as_slice() {
                [i] => rows[*i][*i] = c * Scalar::from_integer(2.into()),
                [i, j] => {
                    rows[*i][*j] = c.clone();
                    rows[*j][*i] = c.clone();
                }
                _ => unreachable!("degree-2 exponent"),
            }
        }
        SymmetricForm::new(rows)
    }

    /// Extends to `nvars + extra` variables, the new ones not appearing.
    pub fn pullback(&self, extra: usize) -> Self {
        let mut p = Self::zero(self.nvars + extra, self.degree);
        for (e, c) in &self.coeffs {
            let mut ne = e.clone();
            ne.extend(std::iter::repeat_n(0, extra));
            p.add_term(ne, c.clone());
        }
        p
    }

    /// Recovers the unique homogeneous polynomial of the given degree from its
    /// values on the grid `(b_1+1, ..., b_{n-1}+1, anchor)` with `|b| <= degree`.
    /// All grid points are positive when `anchor > 0`.
    pub fn interpolate<F>(nvars: usize, degree: u32, anchor: &Scalar, f: F) -> Result<Self>
    where
        F: Fn(&[Scalar]) -> Result<Scalar> + Sync,
    {
        let points = interpolation_grid(nvars, degree, anchor);
        let exps = exponents(nvars, degree);
        debug_assert_eq!(points.len(), exps.len());
        let matrix: Vec<Vec<Scalar>> = points
            .iter()
            .map(|x| exps.iter().map(|e| monomial(x, e)).collect())
            .collect();
        let values = points
            .par_iter()
            .map(|x| f(x))
            .collect::<Result<Vec<_>>>()?;
        let coefs = linalg::solve(&matrix, &values)
            .ok_or_else(|| Error::Inconsistent("interpolation grid is singular".into()))?;
        Self::from_terms(nvars, degree, exps.into_iter().zip(coefs))
    }
}

/// The evaluation points used by [`HomogeneousPolynomial::interpolate`].
pub fn interpolation_grid(nvars: usize, degree: u32, anchor: &Scalar) -> Vec<Vec<Scalar>> {
    if nvars == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for total in 0..=degree {
        for b in exponents(nvars, total) {
            if b[nvars - 1] != 0 {
                continue;
            }
            let mut x: Vec<Scalar> = b[..nvars - 1]
                .iter()
                .map(|&bi| Scalar::from_integer((bi + 1).into()))
                .collect();
            x.push(anchor.clone());
            out.push(x);
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Exponent,
    #[serde(with = "serde_q")]
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    nvars: usize,
    degree: u32,
    terms: Vec<TermJson>,
}

impl Serialize for HomogeneousPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            nvars: self.nvars,
            degree: self.degree,
            terms: self
                .coeffs
                .iter()
                .rev()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomogeneousPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        Self::from_terms(
            raw.nvars,
            raw.degree,
            raw.terms.into_iter().map(|t| (t.exp, t.coeff)),
        )
        .map_err(D::Error::custom)
    }
}

impl std::fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", scalar::format(c))?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*l{}", i + 1)?,
                    _ => write!(f, "*l{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}
