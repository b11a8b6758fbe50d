//! Strictly convex polyhedral cones and coconvex bodies.
//!
//! A coconvex body `A ⊆ C` is stored through its complement
//! `K = closure(C ∖ A)`, a convex polyhedron with recession cone `C`. The
//! region `A` itself is never materialized; volumes go through truncations
//! `C ∩ {ξ ≤ t}` with `t` beyond every vertex of `K`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dd;
use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::{clip, contains, minkowski_sum, Halfspace, Polyhedron};
use crate::scalar::{self, dot, primitive, serde_q, to_scalars, Scalar};
use crate::volume::volume;

#[derive(Clone)]
pub struct Cone {
    rays: Vec<Vec<Scalar>>,
    xi: Vec<Scalar>,
    dual_rays: Vec<Vec<Scalar>>,
    body: Polyhedron,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.rays == other.rays
    }
}

impl Eq for Cone {}

impl std::fmt::Debug for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = |x: &Vec<Scalar>| x.iter().map(scalar::format).collect::<Vec<_>>().join(",");
        f.debug_struct("Cone")
            .field("rays", &self.rays.iter().map(v).collect::<Vec<_>>())
            .field("xi", &v(&self.xi))
            .finish()
    }
}

/// Builds a cone from generating rays, certifying strict convexity with a
/// functional `ξ` that is positive on every nonzero point of the cone.
pub fn make_cone(rays: Vec<Vec<Scalar>>) -> Result<Cone> {
    let d = rays.first().ok_or(Error::EmptyPointSet)?.len();
    for r in &rays {
        if r.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: r.len(),
            });
        }
    }
    if d == 0 || linalg::rank(&rays) < d {
        return Err(Error::NotFullDimensional);
    }
    let rows: Vec<_> = rays
        .iter()
        .filter(|r| !scalar::is_zero_vec(r))
        .map(|r| primitive(r))
        .collect();
    let dual = dd::cone_generators(&rows, d);
    debug_assert!(dual.lineality.is_empty());
    let mut dual_rays: Vec<Vec<Scalar>> = dual.rays.iter().map(|r| to_scalars(r)).collect();
    dual_rays.sort();
    if linalg::rank(&dual_rays) < d {
        return Err(Error::NotStrictlyConvex);
    }
    let sum = dual_rays.iter().fold(vec![Scalar::zero(); d], |acc, r| {
        acc.iter().zip(r).map(|(a, b)| a + b).collect()
    });
    let xi = to_scalars(&primitive(&sum));
    let body = Polyhedron::hull(vec![vec![Scalar::zero(); d]], rays)?;
    let cone = Cone {
        rays: body.rays().to_vec(),
        xi,
        dual_rays,
        body,
    };
    if !cone.is_interior_functional(&cone.xi) {
        return Err(Error::Inconsistent(
            "dual certificate is not interior".into(),
        ));
    }
    Ok(cone)
}

impl Cone {
    /// The orthant spanned by the standard basis.
    pub fn orthant(d: usize) -> Self {
        let rays = (0..d)
            .map(|i| {
                let mut e = vec![Scalar::zero(); d];
                e[i] = Scalar::one();
                e
            })
            .collect();
        make_cone(rays).expect("orthant is a valid cone")
    }

    /// Replaces the certificate functional, which must be positive on every ray.
    pub fn with_xi(mut self, xi: Vec<Scalar>) -> Result<Self> {
        if xi.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                found: xi.len(),
            });
        }
        if !self.is_interior_functional(&xi) {
            return Err(Error::InvalidTruncation(
                "functional is not positive on the cone".into(),
            ));
        }
        self.xi = xi;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.xi.len()
    }

    pub fn rays(&self) -> &[Vec<Scalar>] {
        &self.rays
    }

    pub fn xi(&self) -> &[Scalar] {
        &self.xi
    }

    /// Extreme rays of the dual cone, i.e. inward facet normals of the cone.
    pub fn facet_normals(&self) -> &[Vec<Scalar>] {
        &self.dual_rays
    }

    /// The cone as a polyhedron (apex plus rays).
    pub fn as_polyhedron(&self) -> &Polyhedron {
        &self.body
    }

    pub fn is_interior_functional(&self, xi: &[Scalar]) -> bool {
        xi.len() == self.dim() && self.rays.iter().all(|r| dot(xi, r).is_positive())
    }

    /// `C ∩ {ξ ≤ t}`.
    pub fn sector(&self, xi: &[Scalar], t: &Scalar) -> Result<Polyhedron> {
        clip(&self.body, &Halfspace::new(xi.to_vec(), t.clone())?)
    }

    /// Volume of the unit sector `C ∩ {ξ ≤ 1}`; the sector at level `t` has
    /// volume `c·t^d`.
    pub fn sector_constant(&self, xi: &[Scalar]) -> Result<Scalar> {
        if !self.is_interior_functional(xi) {
            return Err(Error::InvalidTruncation(
                "functional is not positive on the cone".into(),
            ));
        }
        volume(&self.sector(xi, &Scalar::one())?)
    }
}

#[derive(Serialize, Deserialize)]
struct ConeJson {
    #[serde(with = "serde_q::mat")]
    rays: Vec<Vec<Scalar>>,
    #[serde(default, with = "serde_q::vec", skip_serializing_if = "Vec::is_empty")]
    xi: Vec<Scalar>,
}

impl Serialize for Cone {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConeJson {
            rays: self.rays.clone(),
            xi: self.xi.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cone {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ConeJson::deserialize(d)?;
        let cone = make_cone(raw.rays).map_err(D::Error::custom)?;
        if raw.xi.is_empty() {
            Ok(cone)
        } else {
            cone.with_xi(raw.xi).map_err(D::Error::custom)
        }
    }
}

/// Truncating halfspace `{ξ ≤ t}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    #[serde(with = "serde_q::vec")]
    pub xi: Vec<Scalar>,
    #[serde(with = "serde_q")]
    pub t: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoconvexBody {
    cone: Cone,
    complement: Polyhedron,
}

/// Validates `K` as the complement of a coconvex body in `cone`.
pub fn make_coconvex(cone: Cone, complement: Polyhedron) -> Result<CoconvexBody> {
    if complement.dim() != cone.dim() {
        return Err(Error::DimensionMismatch {
            expected: cone.dim(),
            found: complement.dim(),
        });
    }
    if complement.is_empty() || !contains(cone.as_polyhedron(), &complement) {
        return Err(Error::ComplementNotInCone);
    }
    if complement.rays() != cone.rays() {
        return Err(Error::ComplementNotCompact);
    }
    // C ∖ K is bounded iff every ray of C eventually enters K
    let h = complement.hrep();
    for r in cone.rays() {
        for f in &h.facets {
            if dot(&f.normal, r).is_zero() && f.offset.is_negative() {
                return Err(Error::ComplementNotCompact);
            }
        }
    }
    let body = CoconvexBody { cone, complement };
    if !co_volume(&body, None)?.is_positive() {
        return Err(Error::EmptyInterior);
    }
    Ok(body)
}

impl CoconvexBody {
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn complement(&self) -> &Polyhedron {
        &self.complement
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    /// Largest value of `ξ` over the vertices of the complement.
    pub fn max_level(&self, xi: &[Scalar]) -> Scalar {
        self.complement
            .vertices()
            .iter()
            .map(|v| dot(xi, v))
            .max()
            .expect("complement is nonempty")
    }

    /// `max_level` for the cone's own certificate functional.
    pub fn t0(&self) -> Scalar {
        self.max_level(self.cone.xi())
    }

    pub fn default_truncation(&self) -> Truncation {
        Truncation {
            xi: self.cone.xi().to_vec(),
            t: self.t0() + Scalar::one(),
        }
    }
}

impl<'de> Deserialize<'de> for CoconvexBody {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            cone: Cone,
            complement: Polyhedron,
        }
        let raw = Raw::deserialize(d)?;
        make_coconvex(raw.cone, raw.complement).map_err(D::Error::custom)
    }
}

/// `A ⊕ B`: the complement in `C` of the Minkowski sum of the complements.
pub fn co_sum(a: &CoconvexBody, b: &CoconvexBody) -> Result<CoconvexBody> {
    if a.cone != b.cone {
        return Err(Error::ConeMismatch);
    }
    let k = minkowski_sum(&a.complement, &b.complement)?;
    make_coconvex(a.cone.clone(), k)
}

pub fn co_scale(lambda: &Scalar, a: &CoconvexBody) -> Result<CoconvexBody> {
    let k = a.complement.scale(lambda)?;
    Ok(CoconvexBody {
        cone: a.cone.clone(),
        complement: k,
    })
}

/// Volume of `A` as `vol(C ∩ W(t)) − vol(K ∩ W(t))`.
pub fn co_volume(a: &CoconvexBody, trunc: Option<&Truncation>) -> Result<Scalar> {
    let owned;
    let trunc = match trunc {
        Some(t) => {
            if !a.cone.is_interior_functional(&t.xi) {
                return Err(Error::InvalidTruncation(
                    "functional is not positive on the cone".into(),
                ));
            }
            if t.t <= a.max_level(&t.xi) {
                return Err(Error::InvalidTruncation(format!(
                    "level {} does not exceed the complement's maximum {}",
                    scalar::format(&t.t),
                    scalar::format(&a.max_level(&t.xi))
                )));
            }
            t
        }
        None => {
            owned = a.default_truncation();
            &owned
        }
    };
    let h = Halfspace::new(trunc.xi.clone(), trunc.t.clone())?;
    let sector = clip(a.cone.as_polyhedron(), &h)?;
    let cut = clip(&a.complement, &h)?;
    Ok(volume(&sector)? - volume(&cut)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull;
    use crate::scalar::{frac, int, vec_of};

    fn quadrant() -> Cone {
        Cone::orthant(2)
    }

    /// `C ∩ {x + y >= leg}` in the quadrant.
    fn triangle_complement(leg: i64) -> Polyhedron {
        convex_hull(
            vec![vec_of(&[leg, 0]), vec_of(&[0, leg])],
            vec![vec_of(&[1, 0]), vec_of(&[0, 1])],
        )
        .unwrap()
    }

    fn triangle(leg: i64) -> CoconvexBody {
        make_coconvex(quadrant(), triangle_complement(leg)).unwrap()
    }

    #[test]
    fn cone_certificates() {
        let q = quadrant();
        assert_eq!(q.xi(), vec_of(&[1, 1]).as_slice());
        let c = make_cone(vec![vec_of(&[2, 1]), vec_of(&[1, 2])]).unwrap();
        assert_eq!(c.xi(), vec_of(&[1, 1]).as_slice());
        assert!(c.rays().iter().all(|r| dot(c.xi(), r) == int(3)));
    }

    #[test]
    fn cone_errors() {
        let line = make_cone(vec![vec_of(&[1, 0]), vec_of(&[-1, 0]), vec_of(&[0, 1])]);
        assert_eq!(line.unwrap_err(), Error::NotStrictlyConvex);
        let flat = make_cone(vec![vec_of(&[1, 0, 0]), vec_of(&[0, 1, 0])]);
        assert_eq!(flat.unwrap_err(), Error::NotFullDimensional);
    }

    #[test]
    fn coconvex_validation() {
        triangle(1);
        let strip = convex_hull(
            vec![vec_of(&[1, 0])],
            vec![vec_of(&[1, 0]), vec_of(&[0, 1])],
        )
        .unwrap();
        assert_eq!(
            make_coconvex(quadrant(), strip).unwrap_err(),
            Error::ComplementNotCompact
        );
        let whole = quadrant().as_polyhedron().clone();
        assert_eq!(
            make_coconvex(quadrant(), whole).unwrap_err(),
            Error::EmptyInterior
        );
        let outside = convex_hull(
            vec![vec_of(&[-1, 0]), vec_of(&[0, 1])],
            vec![vec_of(&[1, 0]), vec_of(&[0, 1])],
        )
        .unwrap();
        assert_eq!(
            make_coconvex(quadrant(), outside).unwrap_err(),
            Error::ComplementNotInCone
        );
    }

    #[test]
    fn truncated_volume() {
        let a = triangle(1);
        let t3 = Truncation {
            xi: vec_of(&[1, 1]),
            t: int(3),
        };
        let t5 = Truncation {
            xi: vec_of(&[1, 1]),
            t: int(5),
        };
        let skew = Truncation {
            xi: vec_of(&[1, 3]),
            t: int(4),
        };
        assert_eq!(co_volume(&a, Some(&t3)).unwrap(), frac(1, 2));
        assert_eq!(co_volume(&a, Some(&t5)).unwrap(), frac(1, 2));
        assert_eq!(co_volume(&a, Some(&skew)).unwrap(), frac(1, 2));
        assert_eq!(co_volume(&a, None).unwrap(), frac(1, 2));
        let low = Truncation {
            xi: vec_of(&[1, 1]),
            t: int(1),
        };
        assert!(matches!(
            co_volume(&a, Some(&low)),
            Err(Error::InvalidTruncation(_))
        ));
        let bad = Truncation {
            xi: vec_of(&[1, 0]),
            t: int(9),
        };
        assert!(matches!(
            co_volume(&a, Some(&bad)),
            Err(Error::InvalidTruncation(_))
        ));
    }

    #[test]
    fn sum_and_scale() {
        let a = triangle(1);
        let aa = co_sum(&a, &a).unwrap();
        assert_eq!(aa.complement(), &triangle_complement(2));
        assert_eq!(co_volume(&aa, None).unwrap(), int(2));
        let two = co_scale(&int(2), &a).unwrap();
        assert_eq!(two, aa);
        let third = co_scale(&frac(1, 3), &triangle(3)).unwrap();
        assert_eq!(third, a);
        assert_eq!(co_scale(&int(1), &a).unwrap(), a);
        assert!(matches!(
            co_scale(&int(0), &a),
            Err(Error::NonPositiveScale(_))
        ));
    }

    #[test]
    fn sum_with_two_cut_body() {
        let k2 = convex_hull(
            vec![
                vec_of(&[2, 0]),
                vec![frac(2, 3), frac(2, 3)],
                vec_of(&[0, 2]),
            ],
            vec![vec_of(&[1, 0]), vec_of(&[0, 1])],
        )
        .unwrap();
        let b = make_coconvex(quadrant(), k2).unwrap();
        assert_eq!(co_volume(&b, None).unwrap(), frac(4, 3));
        let s = co_sum(&triangle(1), &b).unwrap();
        let t = Truncation {
            xi: vec_of(&[1, 1]),
            t: int(7),
        };
        let u = Truncation {
            xi: vec_of(&[2, 1]),
            t: int(11),
        };
        assert_eq!(co_volume(&s, Some(&t)).unwrap(), frac(19, 6));
        assert_eq!(co_volume(&s, Some(&u)).unwrap(), frac(19, 6));
    }

    #[test]
    fn cone_mismatch() {
        let other = make_cone(vec![vec_of(&[2, 1]), vec_of(&[1, 2])]).unwrap();
        let k = convex_hull(
            vec![vec_of(&[2, 1]), vec_of(&[1, 2])],
            vec![vec_of(&[2, 1]), vec_of(&[1, 2])],
        )
        .unwrap();
        let b = make_coconvex(other, k).unwrap();
        assert_eq!(co_sum(&triangle(1), &b).unwrap_err(), Error::ConeMismatch);
    }

    #[test]
    fn json_round_trip() {
        let a = triangle(1);
        let s = serde_json::to_string(&a).unwrap();
        let back: CoconvexBody = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(s.starts_with(r#"{"cone":{"rays":[["0","1"],["1","0"]],"xi":["1","1"]}"#));
    }
}
