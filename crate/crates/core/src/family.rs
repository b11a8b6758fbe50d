//! Linear families of convex and coconvex bodies, their volume polynomials,
//! mixed volumes and Aleksandrov–Fenchel forms.
//!
//! A family is finitely generated: the coefficient vector `λ` in the open
//! positive orthant maps to `Σ λ_i K_i` (Minkowski) for convex generators and
//! to `⊕ λ_i A_i` for coconvex ones. Marked points are coefficient vectors.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::{co_volume, make_coconvex, CoconvexBody, Cone};
use crate::error::{Error, Result};
use crate::form::SymmetricForm;
use crate::poly::{exponents, Exponent, HomogeneousPolynomial};
use crate::polytope::{minkowski_sum, Polyhedron};
use crate::scalar::{self, binomial, factorial, multinomial, serde_q, Scalar};
use crate::volume::volume;

fn check_marked(n: usize, marked: &[Vec<Scalar>]) -> Result<()> {
    for m in marked {
        if m.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: m.len(),
            });
        }
        if !m.iter().all(Signed::is_positive) {
            return Err(Error::Precondition(
                "marked points must have positive coefficients".into(),
            ));
        }
    }
    Ok(())
}

fn check_positive(n: usize, lambda: &[Scalar]) -> Result<()> {
    if lambda.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: lambda.len(),
        });
    }
    if !lambda.iter().all(Signed::is_positive) {
        return Err(Error::Precondition("coefficients must be positive".into()));
    }
    Ok(())
}

/// `Σ c_i P_i` for nonnegative coefficients; zero coefficients are skipped.
pub fn minkowski_combination(bodies: &[Polyhedron], coefs: &[Scalar]) -> Result<Polyhedron> {
    let dim = bodies.first().ok_or(Error::EmptyPointSet)?.dim();
    let mut acc: Option<Polyhedron> = None;
    for (p, c) in bodies.iter().zip(coefs) {
        if c.is_zero() {
            continue;
        }
        let scaled = p.scale(c)?;
        acc = Some(match acc {
            None => scaled,
            Some(a) => minkowski_sum(&a, &scaled)?,
        });
    }
    match acc {
        Some(a) => Ok(a),
        None => Polyhedron::hull(vec![vec![Scalar::zero(); dim]], Vec::new()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexFamily {
    dim: usize,
    generators: Vec<Polyhedron>,
    #[serde(with = "serde_q::mat")]
    marked: Vec<Vec<Scalar>>,
}

impl ConvexFamily {
    /// Generators must be bounded and full-dimensional in a common dimension.
    pub fn new(generators: Vec<Polyhedron>, marked: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = generators.first().ok_or(Error::EmptyPointSet)?.dim();
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
            if !g.is_bounded() {
                return Err(Error::Unbounded);
            }
            if !g.is_full_dimensional() {
                return Err(Error::Degenerate);
            }
        }
        check_marked(generators.len(), &marked)?;
        Ok(Self {
            dim,
            generators,
            marked,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Polyhedron] {
        &self.generators
    }

    pub fn marked(&self) -> &[Vec<Scalar>] {
        &self.marked
    }

    pub fn with_marked(&self, marked: Vec<Vec<Scalar>>) -> Result<Self> {
        Self::new(self.generators.clone(), marked)
    }

    pub fn body_at(&self, lambda: &[Scalar]) -> Result<Polyhedron> {
        check_positive(self.n(), lambda)?;
        minkowski_combination(&self.generators, lambda)
    }
}

impl<'de> Deserialize<'de> for ConvexFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            generators: Vec<Polyhedron>,
            #[serde(default, with = "serde_q::mat")]
            marked: Vec<Vec<Scalar>>,
        }
        let raw = Raw::deserialize(d)?;
        let fam = ConvexFamily::new(raw.generators, raw.marked).map_err(D::Error::custom)?;
        if fam.dim != raw.dim {
            return Err(D::Error::custom("dim does not match the generators"));
        }
        Ok(fam)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoconvexFamily {
    cone: Cone,
    generators: Vec<CoconvexBody>,
    #[serde(with = "serde_q::mat")]
    marked: Vec<Vec<Scalar>>,
}

impl CoconvexFamily {
    pub fn new(generators: Vec<CoconvexBody>, marked: Vec<Vec<Scalar>>) -> Result<Self> {
        let cone = generators
            .first()
            .ok_or(Error::EmptyPointSet)?
            .cone()
            .clone();
        if generators.iter().any(|g| *g.cone() != cone) {
            return Err(Error::ConeMismatch);
        }
        check_marked(generators.len(), &marked)?;
        Ok(Self {
            cone,
            generators,
            marked,
        })
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn generators(&self) -> &[CoconvexBody] {
        &self.generators
    }

    pub fn marked(&self) -> &[Vec<Scalar>] {
        &self.marked
    }

    pub fn with_marked(&self, marked: Vec<Vec<Scalar>>) -> Result<Self> {
        Self::new(self.generators.clone(), marked)
    }

    /// Complement `Σ λ_i K_i` of the body `⊕ λ_i A_i`, without validation.
    pub fn complement_at(&self, lambda: &[Scalar]) -> Result<Polyhedron> {
        check_positive(self.n(), lambda)?;
        let ks: Vec<Polyhedron> = self
            .generators
            .iter()
            .map(|g| g.complement().clone())
            .collect();
        minkowski_combination(&ks, lambda)
    }

    /// The coconvex body `⊕ λ_i A_i`.
    pub fn body_at(&self, lambda: &[Scalar]) -> Result<CoconvexBody> {
        make_coconvex(self.cone.clone(), self.complement_at(lambda)?)
    }

    /// Per-generator maximal `ξ` levels; `Σ λ_i t0_i` bounds the body at `λ`.
    pub fn generator_levels(&self, xi: &[Scalar]) -> Vec<Scalar> {
        self.generators.iter().map(|g| g.max_level(xi)).collect()
    }
}

impl<'de> Deserialize<'de> for CoconvexFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            generators: Vec<CoconvexBody>,
            #[serde(default, with = "serde_q::mat")]
            marked: Vec<Vec<Scalar>>,
        }
        let raw = Raw::deserialize(d)?;
        CoconvexFamily::new(raw.generators, raw.marked).map_err(D::Error::custom)
    }
}

/// Mixed volume of `d` bounded bodies in `R^d` by polarization:
/// `MV = (1/d!) Σ_{∅≠S} (−1)^{d−|S|} Vol(Σ_{i∈S} K_i)`.
pub fn mixed_volume(bodies: &[Polyhedron]) -> Result<Scalar> {
    let d = bodies.first().ok_or(Error::EmptyPointSet)?.dim();
    if bodies.len() != d {
        return Err(Error::WrongBodyCount {
            expected: d,
            found: bodies.len(),
        });
    }
    for b in bodies {
        if b.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: b.dim(),
            });
        }
        if !b.is_bounded() {
            return Err(Error::Unbounded);
        }
        if b.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
    }
    let full = 1usize << d;
    let mut sums: Vec<Option<Polyhedron>> = vec![None; full];
    let mut total = Scalar::zero();
    for mask in 1..full {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let s = match &sums[rest] {
            Some(prev) => minkowski_sum(prev, &bodies[low])?,
            None => bodies[low].clone(),
        };
        let v = volume(&s)?;
        if (d - mask.count_ones() as usize).is_multiple_of(2) {
            total += v;
        } else {
            total -= v;
        }
        sums[mask] = Some(s);
    }
    Ok(total / Scalar::from_integer(factorial(d)))
}

/// Mixed volume with generator `i` repeated `mult[i]` times, from a table of
/// volumes `Vol(Σ b_i K_i)` indexed by `b`.
fn mixed_volume_multiset(d: usize, mult: &[u32], vols: &HashMap<Exponent, Scalar>) -> Scalar {
    let mut total = Scalar::zero();
    let mut b = vec![0u32; mult.len()];
    loop {
        let size: u32 = b.iter().sum();
        if size > 0 {
            let weight = b
                .iter()
                .zip(mult)
                .fold(num_bigint::BigInt::one(), |acc, (&bi, &ai)| {
                    acc * binomial(ai as usize, bi as usize)
                });
            let term = &vols[&b] * Scalar::from_integer(weight);
            if (d - size as usize).is_multiple_of(2) {
                total += term;
            } else {
                total -= term;
            }
        }
        // odometer over 0 <= b <= mult
        let mut i = 0;
        while i < b.len() && b[i] == mult[i] {
            b[i] = 0;
            i += 1;
        }
        if i == b.len() {
            break;
        }
        b[i] += 1;
    }
    total / Scalar::from_integer(factorial(d))
}

/// `Vol(Σ λ_i K_i)` as a homogeneous polynomial: the coefficient of `λ^a` is
/// `multinomial(d; a) · MV(K_1^{a_1}, ..., K_n^{a_n})`.
pub fn volume_polynomial(fam: &ConvexFamily) -> Result<HomogeneousPolynomial> {
    let (n, d) = (fam.n(), fam.dim());
    let combos: Vec<Exponent> = (1..=d as u32).flat_map(|k| exponents(n, k)).collect();
    let vols = combos
        .par_iter()
        .map(|b| {
            let coefs: Vec<Scalar> = b.iter().map(|&x| scalar::int(x as i64)).collect();
            let body = minkowski_combination(fam.generators(), &coefs)?;
            Ok((b.clone(), volume(&body)?))
        })
        .collect::<Result<HashMap<_, _>>>()?;
    let terms = exponents(n, d as u32).into_iter().map(|a| {
        let mv = mixed_volume_multiset(d, &a, &vols);
        let c = Scalar::from_integer(multinomial(&a)) * mv;
        (a, c)
    });
    HomogeneousPolynomial::from_terms(n, d as u32, terms)
}

/// `Vol(⊕ λ_i A_i)` as a homogeneous polynomial, recovered by exact
/// interpolation on a positive grid. Each grid body is validated.
pub fn co_volume_polynomial(fam: &CoconvexFamily) -> Result<HomogeneousPolynomial> {
    HomogeneousPolynomial::interpolate(fam.n(), fam.dim() as u32, &Scalar::one(), |lambda| {
        co_volume(&fam.body_at(lambda)?, None)
    })
}

/// Aleksandrov–Fenchel forms of a family with `d − 2` marked points.
///
/// `bilinear` is the Gram matrix of `B(u1,u2) = (1/d!) L_{u1} L_{u2} L_{v1}⋯L_{v_{d−2}} Vol`.
/// `quadratic_poly` is `Q = (2/d!) L_{v1}⋯L_{v_{d−2}} Vol` and `quadratic` is its
/// Hessian, so `Q(u) = B(u,u)` and `quadratic = 2·bilinear`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AfForms {
    pub bilinear: SymmetricForm,
    pub quadratic: SymmetricForm,
    pub quadratic_poly: HomogeneousPolynomial,
}

pub fn forms_from_volume(vol: &HomogeneousPolynomial, marked: &[Vec<Scalar>]) -> Result<AfForms> {
    let d = vol.degree() as usize;
    if d < 2 {
        return Err(Error::Precondition(
            "forms need dimension at least 2".into(),
        ));
    }
    if marked.len() != d - 2 {
        return Err(Error::WrongMarkedCount {
            expected: d - 2,
            found: marked.len(),
        });
    }
    let mut p = vol.clone();
    for v in marked {
        p = p.derivative(v)?;
    }
    let n = vol.nvars();
    let inv_fact = Scalar::from_integer(factorial(d)).recip();
    let basis = |i: usize| {
        let mut e = vec![Scalar::zero(); n];
        e[i] = Scalar::one();
        e
    };
    let mut rows = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        let di = p.derivative(&basis(i))?;
        for j in 0..=i {
            let c = di
                .derivative(&basis(j))?
                .constant()
                .expect("second derivative of a quadratic is constant");
            rows[i][j] = &c * &inv_fact;
            rows[j][i] = &c * &inv_fact;
        }
    }
    let bilinear = SymmetricForm::new(rows)?;
    let quadratic_poly = p.scale(&(scalar::int(2) * &inv_fact));
    let quadratic = quadratic_poly.hessian()?;
    if quadratic != bilinear.scale(&scalar::int(2)) {
        return Err(Error::Inconsistent(
            "Hessian of Q disagrees with the bilinear form".into(),
        ));
    }
    Ok(AfForms {
        bilinear,
        quadratic,
        quadratic_poly,
    })
}

pub fn af_form(fam: &ConvexFamily) -> Result<AfForms> {
    check_count(fam.dim(), fam.marked())?;
    forms_from_volume(&volume_polynomial(fam)?, fam.marked())
}

pub fn co_af_form(fam: &CoconvexFamily) -> Result<AfForms> {
    check_count(fam.dim(), fam.marked())?;
    forms_from_volume(&co_volume_polynomial(fam)?, fam.marked())
}

fn check_count(d: usize, marked: &[Vec<Scalar>]) -> Result<()> {
    if marked.len() + 2 != d {
        return Err(Error::WrongMarkedCount {
            expected: d.saturating_sub(2),
            found: marked.len(),
        });
    }
    Ok(())
}
