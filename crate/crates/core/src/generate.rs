//! Seeded random bodies, cones and families.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cone::{make_coconvex, make_cone, CoconvexBody, Cone};
use crate::error::{Error, Result};
use crate::family::{CoconvexFamily, ConvexFamily};
use crate::polytope::{convex_hull, dd_convert_back, Halfspace, Polyhedron};
use crate::rng::SplitMix64;
use crate::scalar::{self, Scalar};

const ATTEMPTS: usize = 1000;
pub const MAX_VERTICES: usize = 12;

/// `p/q` with `p ∈ [−bound, bound]` and `q ∈ [1, bound]`.
pub fn gen_rational(rng: &mut SplitMix64, bound: u32) -> Scalar {
    let b = bound.max(1) as i64;
    let p = rng.range(-b, b);
    let q = rng.range(1, b);
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// `p/q` with `p, q ∈ [1, bound]`.
pub fn gen_positive_rational(rng: &mut SplitMix64, bound: u32) -> Scalar {
    let b = bound.max(1) as i64;
    let p = rng.range(1, b);
    let q = rng.range(1, b);
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Hull of `d + 1 + extra` random rational points, `extra ∈ {0, 1, 2}`,
/// resampled until full-dimensional with at most 12 vertices.
pub fn gen_convex_body(rng: &mut SplitMix64, d: usize, bound: u32) -> Result<Polyhedron> {
    if d == 0 {
        return Err(Error::Precondition("dimension must be positive".into()));
    }
    for _ in 0..ATTEMPTS {
        let count = d + 1 + rng.below(3) as usize;
        let points: Vec<Vec<Scalar>> = (0..count)
            .map(|_| (0..d).map(|_| gen_rational(rng, bound)).collect())
            .collect();
        let p = convex_hull(points, Vec::new())?;
        if p.is_full_dimensional() && p.vertices().len() <= MAX_VERTICES {
            return Ok(p);
        }
    }
    Err(Error::ResampleBudget(ATTEMPTS))
}

/// Cone on `d` or `d + 1` random rays with integer entries in `[0, bound]`.
pub fn gen_cone(rng: &mut SplitMix64, d: usize, bound: u32) -> Result<Cone> {
    for _ in 0..ATTEMPTS {
        let count = d + rng.below(2) as usize;
        let rays: Vec<Vec<Scalar>> = (0..count)
            .map(|_| {
                (0..d)
                    .map(|_| scalar::int(rng.range(0, bound.max(1) as i64)))
                    .collect()
            })
            .collect();
        if rays.iter().any(|r| scalar::is_zero_vec(r)) {
            continue;
        }
        match make_cone(rays) {
            Ok(c) => return Ok(c),
            Err(Error::NotFullDimensional | Error::NotStrictlyConvex) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ResampleBudget(ATTEMPTS))
}

/// Coconvex body whose complement is the cone cut by one or two halfspaces
/// `ξ_j·x ≥ b_j`, each `ξ_j` a positive combination of the cone's facet
/// normals and `b_j > 0`.
pub fn gen_coconvex_body(rng: &mut SplitMix64, cone: &Cone, bound: u32) -> Result<CoconvexBody> {
    let d = cone.dim();
    let mut base: Vec<Halfspace> = Vec::new();
    for n in cone.facet_normals() {
        base.push(Halfspace::at_least(n.clone(), Scalar::zero())?);
    }
    for _ in 0..ATTEMPTS {
        let cuts = 1 + rng.below(2) as usize;
        let mut hs = base.clone();
        for _ in 0..cuts {
            let mut xi = vec![Scalar::zero(); d];
            for n in cone.facet_normals() {
                let w = scalar::int(rng.range(1, bound.max(1) as i64));
                for (x, y) in xi.iter_mut().zip(n) {
                    *x += &w * y;
                }
            }
            let b = gen_positive_rational(rng, bound);
            hs.push(Halfspace::at_least(xi, b)?);
        }
        let k = dd_convert_back(d, &hs)?;
        if k.vertices().len() > MAX_VERTICES {
            continue;
        }
        match make_coconvex(cone.clone(), k) {
            Ok(a) => return Ok(a),
            Err(
                Error::EmptyInterior | Error::ComplementNotCompact | Error::ComplementNotInCone,
            ) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ResampleBudget(ATTEMPTS))
}

/// Positive coefficient vector with entries in `1..=3`.
pub fn gen_marked(rng: &mut SplitMix64, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| scalar::int(rng.range(1, 3))).collect()
}

/// A pair `(u1, u2)` with `u1` nonzero, entries in `[−3, 3]`, and `u2`
/// entries in `1..=3`.
pub fn gen_form_pair(rng: &mut SplitMix64, n: usize) -> (Vec<Scalar>, Vec<Scalar>) {
    let u1 = loop {
        let u: Vec<Scalar> = (0..n).map(|_| scalar::int(rng.range(-3, 3))).collect();
        if !scalar::is_zero_vec(&u) {
            break u;
        }
    };
    (u1, gen_marked(rng, n))
}

/// Two positive points with rational entries `p/q`, `p ∈ [1,4]`, `q ∈ [1,3]`.
pub fn gen_positive_pair(rng: &mut SplitMix64, n: usize) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut point = || -> Vec<Scalar> {
        (0..n)
            .map(|_| {
                let p = rng.range(1, 4);
                let q = rng.range(1, 3);
                scalar::frac(p, q)
            })
            .collect()
    };
    let u = point();
    (u, point())
}

pub fn gen_convex_family(
    rng: &mut SplitMix64,
    d: usize,
    n: usize,
    bound: u32,
) -> Result<ConvexFamily> {
    let generators = (0..n)
        .map(|_| gen_convex_body(rng, d, bound))
        .collect::<Result<Vec<_>>>()?;
    let marked = (0..d.saturating_sub(2))
        .map(|_| gen_marked(rng, n))
        .collect();
    ConvexFamily::new(generators, marked)
}

pub fn gen_coconvex_family(
    rng: &mut SplitMix64,
    d: usize,
    n: usize,
    bound: u32,
) -> Result<CoconvexFamily> {
    let cone = gen_cone(rng, d, bound)?;
    let generators = (0..n)
        .map(|_| gen_coconvex_body(rng, &cone, bound))
        .collect::<Result<Vec<_>>>()?;
    let marked = (0..d.saturating_sub(2))
        .map(|_| gen_marked(rng, n))
        .collect();
    CoconvexFamily::new(generators, marked)
}
