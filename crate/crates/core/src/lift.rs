//! The lifted convex family over coefficient space × R.
//!
//! For a coconvex family with complements `K_λ = Σ λ_i K_i` and a functional
//! `ξ` positive on the cone, the body at `(λ, t)` is `clip(K_λ, ξ ≤ t)`, the
//! closure of the truncated sector minus the coconvex body. Its volume is
//! `c·t^d − Vol_β(λ)` where `c` is the volume of the unit sector, so the
//! forms of the two families differ by a rank one term in `t`.

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::family::{co_volume_polynomial, forms_from_volume, AfForms, CoconvexFamily};
use crate::form::{Signature, SymmetricForm};
use crate::poly::HomogeneousPolynomial;
use crate::polytope::{clip, Halfspace, Polyhedron};
use crate::scalar::{self, dot, pow, serde_q, Scalar};
use crate::volume::volume;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Identity {
    V,
    Q,
    #[serde(rename = "signature")]
    Signature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub status: Status,
    pub samples: usize,
    pub counterexample: Option<Value>,
}

impl IdentityReport {
    fn new(identity: Identity, samples: usize, counterexample: Option<Value>) -> Self {
        let status = if counterexample.is_none() {
            Status::Ok
        } else {
            Status::Fail
        };
        Self {
            identity,
            status,
            samples,
            counterexample,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedPoint {
    #[serde(with = "serde_q::vec")]
    pub lambda: Vec<Scalar>,
    #[serde(with = "serde_q")]
    pub t: Scalar,
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftedFamily {
    base: CoconvexFamily,
    #[serde(with = "serde_q::vec")]
    xi: Vec<Scalar>,
    #[serde(with = "serde_q")]
    t0: Scalar,
    #[serde(with = "serde_q")]
    t1: Scalar,
    lifted_marked: Vec<LiftedPoint>,
    #[serde(with = "serde_q")]
    c: Scalar,
    #[serde(skip)]
    vol_beta: OnceLock<HomogeneousPolynomial>,
    #[serde(skip)]
    vol_alpha: OnceLock<HomogeneousPolynomial>,
}

/// Lifts a coconvex family along the cone's certificate functional, with
/// `t0` the largest generator level, `t1 = t0 + 2` and every marked level
/// `s_i = t0 + 1`.
pub fn lift(fam: &CoconvexFamily) -> Result<LiftedFamily> {
    let xi = fam.cone().xi().to_vec();
    let t0 = fam
        .generator_levels(&xi)
        .into_iter()
        .max()
        .ok_or(Error::EmptyPointSet)?;
    let t1 = &t0 + scalar::int(2);
    let s = &t0 + Scalar::one();
    let lifted_marked = fam
        .marked()
        .iter()
        .map(|v| LiftedPoint {
            lambda: v.clone(),
            t: s.clone(),
        })
        .collect();
    let c = fam.cone().sector_constant(&xi)?;
    Ok(LiftedFamily {
        base: fam.clone(),
        xi,
        t0,
        t1,
        lifted_marked,
        c,
        vol_beta: OnceLock::new(),
        vol_alpha: OnceLock::new(),
    })
}

impl LiftedFamily {
    pub fn base(&self) -> &CoconvexFamily {
        &self.base
    }

    pub fn xi(&self) -> &[Scalar] {
        &self.xi
    }

    pub fn window(&self) -> (&Scalar, &Scalar) {
        (&self.t0, &self.t1)
    }

    pub fn lifted_marked(&self) -> &[LiftedPoint] {
        &self.lifted_marked
    }

    /// Volume of the unit sector `C ∩ {ξ ≤ 1}`.
    pub fn c(&self) -> &Scalar {
        &self.c
    }

    /// `c · s_1 ⋯ s_{d−2}`, the coefficient of `t²` in `Q_α`.
    pub fn c_prime(&self) -> Scalar {
        self.lifted_marked
            .iter()
            .fold(self.c.clone(), |acc, p| acc * &p.t)
    }

    /// Replaces the marked levels; each must lie strictly inside `(t0, t1)`.
    pub fn with_levels(mut self, levels: Vec<Scalar>) -> Result<Self> {
        if levels.len() != self.lifted_marked.len() {
            return Err(Error::LengthMismatch {
                expected: self.lifted_marked.len(),
                found: levels.len(),
            });
        }
        if levels.iter().any(|s| *s <= self.t0 || *s >= self.t1) {
            return Err(Error::Precondition(
                "marked levels must lie inside (t0, t1)".into(),
            ));
        }
        for (p, s) in self.lifted_marked.iter_mut().zip(levels) {
            p.t = s;
        }
        self.vol_alpha = OnceLock::new();
        Ok(self)
    }

    /// Largest `ξ` value over the vertices of `K_λ`.
    pub fn level(&self, lambda: &[Scalar]) -> Result<Scalar> {
        let k = self.base.complement_at(lambda)?;
        Ok(max_level(&k, &self.xi))
    }

    /// `clip(K_λ, ξ ≤ t)`; requires `t` above the level of `K_λ`.
    pub fn lifted_body(&self, lambda: &[Scalar], t: &Scalar) -> Result<Polyhedron> {
        let k = self.base.complement_at(lambda)?;
        let level = max_level(&k, &self.xi);
        if *t <= level {
            return Err(Error::InvalidTruncation(format!(
                "level {} does not exceed {}",
                scalar::format(t),
                scalar::format(&level)
            )));
        }
        clip(&k, &Halfspace::new(self.xi.clone(), t.clone())?)
    }

    pub fn lifted_volume(&self, lambda: &[Scalar], t: &Scalar) -> Result<Scalar> {
        volume(&self.lifted_body(lambda, t)?)
    }

    /// `Vol_β` of the base family, by interpolation of coconvex volumes.
    pub fn co_volume_polynomial(&self) -> Result<&HomogeneousPolynomial> {
        if let Some(p) = self.vol_beta.get() {
            return Ok(p);
        }
        let p = co_volume_polynomial(&self.base)?;
        Ok(self.vol_beta.get_or_init(|| p))
    }

    /// `Vol_α` in the variables `(λ_1, ..., λ_n, t)`, interpolated from volumes
    /// of lifted bodies on a grid whose `t` coordinate clears every level.
    pub fn volume_polynomial(&self) -> Result<&HomogeneousPolynomial> {
        if let Some(p) = self.vol_alpha.get() {
            return Ok(p);
        }
        let n = self.base.n();
        let d = self.base.dim() as u32;
        let levels: Vec<Scalar> = self
            .base
            .generator_levels(&self.xi)
            .into_iter()
            .map(|l| if l.is_negative() { Scalar::zero() } else { l })
            .collect();
        let sum = levels.iter().fold(Scalar::zero(), |a, l| a + l);
        let top = levels.iter().max().cloned().unwrap_or_else(Scalar::zero);
        // grid coefficients are b_i + 1 with |b| <= d
        let anchor = sum + top * scalar::int(d as i64) + Scalar::one();
        let p = HomogeneousPolynomial::interpolate(n + 1, d, &anchor, |x| {
            self.lifted_volume(&x[..n], &x[n])
        })?;
        Ok(self.vol_alpha.get_or_init(|| p))
    }

    /// `c·t^d` as a polynomial in `(λ, t)`.
    fn sector_polynomial(&self) -> Result<HomogeneousPolynomial> {
        let n = self.base.n();
        let d = self.base.dim() as u32;
        let mut e = vec![0; n + 1];
        e[n] = d;
        HomogeneousPolynomial::from_terms(n + 1, d, vec![(e, self.c.clone())])
    }

    /// `Vol_β` recovered as `c·t^d − Vol_α`; fails if the difference depends on `t`.
    pub fn recovered_co_volume_polynomial(&self) -> Result<HomogeneousPolynomial> {
        let n = self.base.n();
        let diff = self.sector_polynomial()?.sub(self.volume_polynomial()?)?;
        if diff.terms().any(|(e, _)| e[n] != 0) {
            return Err(Error::Inconsistent("c·t^d − Vol_α depends on t".into()));
        }
        HomogeneousPolynomial::from_terms(
            n,
            diff.degree(),
            diff.terms().map(|(e, c)| (e[..n].to_vec(), c.clone())),
        )
    }

    /// Forms of the lifted family at the lifted marked points.
    pub fn forms(&self) -> Result<AfForms> {
        let marked: Vec<Vec<Scalar>> = self
            .lifted_marked
            .iter()
            .map(|p| {
                let mut v = p.lambda.clone();
                v.push(p.t.clone());
                v
            })
            .collect();
        forms_from_volume(self.volume_polynomial()?, &marked)
    }

    /// Forms of the base family at its marked points.
    pub fn co_forms(&self) -> Result<AfForms> {
        forms_from_volume(self.co_volume_polynomial()?, self.base.marked())
    }

    /// `−Q^C ⊕ (2c′)`: the Hessian `Q_α` must equal.
    pub fn expected_quadratic(&self) -> Result<SymmetricForm> {
        let co = self.co_forms()?.quadratic;
        let sector = SymmetricForm::diagonal(vec![scalar::int(2) * self.c_prime()]);
        Ok(co.scale(&-Scalar::one()).direct_sum(&sector))
    }

    /// Samples for the volume identity: the all-ones point, each marked point
    /// and unit steps, each at a level above `K_λ`.
    pub fn default_samples(&self, count: usize) -> Result<Vec<LiftedPoint>> {
        let n = self.base.n();
        let mut lambdas = vec![vec![Scalar::one(); n]];
        lambdas.extend(self.base.marked().iter().cloned());
        for i in 0.. {
            if lambdas.len() >= count {
                break;
            }
            let mut l = vec![Scalar::one(); n];
            l[i % n] = scalar::int(2 + (i / n) as i64);
            l[(i + 1) % n] = scalar::frac(1, 2 + i as i64);
            lambdas.push(l);
        }
        lambdas.truncate(count);
        lambdas
            .into_iter()
            .enumerate()
            .map(|(j, lambda)| {
                let t = self.level(&lambda)? + scalar::frac(1 + j as i64, 2);
                Ok(LiftedPoint { lambda, t })
            })
            .collect()
    }
}

fn max_level(k: &Polyhedron, xi: &[Scalar]) -> Scalar {
    k.vertices()
        .iter()
        .map(|v| dot(xi, v))
        .max()
        .expect("complement is nonempty")
}

/// Checks `Vol_α(λ,t) = c·t^d − Vol_β(λ)` at each sample, and the polynomial
/// identity `Vol_α + Vol_β∘π = c·t^d`.
pub fn verify_identity_v(lf: &LiftedFamily, samples: &[LiftedPoint]) -> Result<IdentityReport> {
    let d = lf.base.dim();
    let vol_beta = lf.co_volume_polynomial()?;
    for s in samples {
        if s.lambda.len() != lf.base.n() || !s.lambda.iter().all(Signed::is_positive) {
            return Err(Error::Precondition(
                "sample coefficients must be positive".into(),
            ));
        }
        if s.t <= lf.level(&s.lambda)? {
            return Err(Error::Precondition(
                "sample level must exceed the complement's maximum".into(),
            ));
        }
    }
    for s in samples {
        let lifted = lf.lifted_volume(&s.lambda, &s.t)?;
        let co = vol_beta.eval(&s.lambda)?;
        let expected = &lf.c * pow(&s.t, d) - &co;
        if lifted != expected {
            let cx = json!({
                "lambda": s.lambda.iter().map(scalar::format).collect::<Vec<_>>(),
                "t": scalar::format(&s.t),
                "c": scalar::format(&lf.c),
                "lifted_volume": scalar::format(&lifted),
                "co_volume": scalar::format(&co),
                "expected": scalar::format(&expected),
            });
            return Ok(IdentityReport::new(Identity::V, samples.len(), Some(cx)));
        }
    }
    let lhs = lf.volume_polynomial()?.add(&vol_beta.pullback(1))?;
    let rhs = lf.sector_polynomial()?;
    if lhs != rhs {
        let cx = json!({
            "vol_alpha_plus_vol_beta": lhs,
            "sector": rhs,
        });
        return Ok(IdentityReport::new(Identity::V, samples.len(), Some(cx)));
    }
    Ok(IdentityReport::new(Identity::V, samples.len(), None))
}

/// Checks the Hessian of `Q_α` against `−Q^C ⊕ (2c′)` entry by entry.
pub fn verify_identity_q(lf: &LiftedFamily) -> Result<IdentityReport> {
    let actual = lf.forms()?.quadratic;
    let expected = lf.expected_quadratic()?;
    let n = actual.n();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in i..n {
            if actual.entry(i, j) != expected.entry(i, j) {
                bad.push(json!({
                    "i": i,
                    "j": j,
                    "actual": scalar::format(actual.entry(i, j)),
                    "expected": scalar::format(expected.entry(i, j)),
                }));
            }
        }
    }
    let cx = (!bad.is_empty())
        .then(|| json!({ "c_prime": scalar::format(&lf.c_prime()), "entries": bad }));
    Ok(IdentityReport::new(Identity::Q, n * (n + 1) / 2, cx))
}

/// Signatures along the reduction: `Q_α` has exactly one positive square,
/// splits as `(1,0,0) ⊕ sig(−Q^C)` over the disjoint variables, and hence
/// `Q^C` has no negative squares.
pub fn verify_signature_argument(lf: &LiftedFamily) -> Result<IdentityReport> {
    let alpha = lf.forms()?.quadratic.signature();
    let co = lf.co_forms()?.quadratic.signature();
    let sector = Signature::new(1, 0, 0);
    let split = sector.direct_sum(&co.negated());
    let ok = alpha.pos == 1 && alpha == split && co.neg == 0;
    let cx = (!ok).then(|| {
        json!({
            "q_alpha": alpha,
            "sector": sector,
            "minus_q_co": co.negated(),
            "q_co": co,
        })
    });
    Ok(IdentityReport::new(Identity::Signature, 1, cx))
}
