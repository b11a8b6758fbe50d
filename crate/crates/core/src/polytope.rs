//! Exact rational polyhedra in V-representation.
//!
//! A [`Polyhedron`] is `conv(vertices) + cone(rays)`. It is always held in
//! canonical form: vertices are the extreme points sorted lexicographically,
//! rays are primitive integer vectors, sorted. A polyhedron containing lines
//! lists each line as a pair of opposite rays, and its vertices are the
//! minimal-face representatives orthogonal to the lineality space.
//!
//! The H-representation is derived on demand by double description and
//! cached inside the value.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dd;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{self, dot, primitive, serde_q, to_scalars, Scalar};

pub type Point = Vec<Scalar>;

/// Closed halfspace `normal · x <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Halfspace {
    #[serde(with = "serde_q::vec")]
    pub normal: Vec<Scalar>,
    #[serde(with = "serde_q")]
    pub bound: Scalar,
}

impl Halfspace {
    pub fn new(normal: Vec<Scalar>, bound: Scalar) -> Result<Self> {
        if scalar::is_zero_vec(&normal) {
            return Err(Error::ZeroNormal);
        }
        Ok(Self { normal, bound })
    }

    /// `{x : normal · x >= bound}` expressed in `<=` form.
    pub fn at_least(normal: Vec<Scalar>, bound: Scalar) -> Result<Self> {
        Self::new(normal.into_iter().map(|x| -x).collect(), -bound)
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn contains_point(&self, x: &[Scalar]) -> bool {
        dot(&self.normal, x) <= self.bound
    }

    /// Whether `r` is a recession direction of the halfspace.
    pub fn contains_direction(&self, r: &[Scalar]) -> bool {
        !dot(&self.normal, r).is_positive()
    }

    /// Rescales so the normal is a primitive integer vector.
    pub fn canonical(&self) -> Self {
        let p = primitive(&self.normal);
        let i = self.normal.iter().position(|x| !x.is_zero()).unwrap();
        let factor = Scalar::from_integer(p[i].clone()) / &self.normal[i];
        Self {
            normal: to_scalars(&p),
            bound: &self.bound * factor,
        }
    }
}

/// Inequality `offset + normal · x >= 0`, the internal facet form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Facet {
    pub offset: Scalar,
    pub normal: Vec<Scalar>,
}

impl Facet {
    pub fn slack(&self, x: &[Scalar]) -> Scalar {
        &self.offset + dot(&self.normal, x)
    }

    fn to_halfspace(&self) -> Halfspace {
        Halfspace {
            normal: self.normal.iter().map(|x| -x).collect(),
            bound: self.offset.clone(),
        }
        .canonical()
    }
}

/// H-representation: affine equations plus irredundant facet inequalities.
#[derive(Debug, Clone, Default)]
pub(crate) struct HRep {
    pub equations: Vec<Facet>,
    pub facets: Vec<Facet>,
}

impl HRep {
    pub fn contains_point(&self, x: &[Scalar]) -> bool {
        self.equations.iter().all(|e| e.slack(x).is_zero())
            && self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    pub fn contains_direction(&self, r: &[Scalar]) -> bool {
        self.equations.iter().all(|e| dot(&e.normal, r).is_zero())
            && self.facets.iter().all(|f| !dot(&f.normal, r).is_negative())
    }
}

pub struct Polyhedron {
    dim: usize,
    vertices: Vec<Point>,
    rays: Vec<Vec<Scalar>>,
    hrep: OnceLock<HRep>,
}

impl Clone for Polyhedron {
    fn clone(&self) -> Self {
        Self {
            dim: self.dim,
            vertices: self.vertices.clone(),
            rays: self.rays.clone(),
            hrep: self.hrep.clone(),
        }
    }
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices && self.rays == other.rays
    }
}

impl Eq for Polyhedron {}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_vec = |v: &Vec<Scalar>| {
            format!(
                "({})",
                v.iter().map(scalar::format).collect::<Vec<_>>().join(", ")
            )
        };
        f.debug_struct("Polyhedron")
            .field("dim", &self.dim)
            .field(
                "vertices",
                &self.vertices.iter().map(fmt_vec).collect::<Vec<_>>(),
            )
            .field("rays", &self.rays.iter().map(fmt_vec).collect::<Vec<_>>())
            .finish()
    }
}

fn check_dims<'a>(dim: usize, vs: impl IntoIterator<Item = &'a Vec<Scalar>>) -> Result<()> {
    for v in vs {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
    }
    Ok(())
}

fn scale_row(row: &[Scalar]) -> Vec<BigInt> {
    primitive(row)
}

impl Polyhedron {
    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            vertices: Vec::new(),
            rays: Vec::new(),
            hrep: OnceLock::new(),
        }
    }

    /// Canonical `conv(points) + cone(rays)`.
    pub fn hull(points: Vec<Point>, rays: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptyPointSet)?.len();
        if dim == 0 {
            return Err(Error::Precondition("dimension must be at least 1".into()));
        }
        check_dims(dim, points.iter().chain(rays.iter()))?;
        let hrep = facets_of_generators(dim, &points, &rays);
        Ok(from_hrep(dim, &hrep))
    }

    /// Axis-parallel box `[lo_i, hi_i]`.
    pub fn cuboid(lo: &[Scalar], hi: &[Scalar]) -> Result<Self> {
        let d = lo.len();
        let corners = (0..1usize << d)
            .map(|mask| {
                (0..d)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            hi[i].clone()
                        } else {
                            lo[i].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::hull(corners, Vec::new())
    }

    /// `[0, side]^d`.
    pub fn cube(d: usize, side: Scalar) -> Self {
        Self::cuboid(&vec![Scalar::zero(); d], &vec![side; d]).expect("cube is valid")
    }

    /// The standard simplex `conv{0, e_1, ..., e_d}`.
    pub fn standard_simplex(d: usize) -> Self {
        let mut pts = vec![vec![Scalar::zero(); d]];
        for i in 0..d {
            let mut e = vec![Scalar::zero(); d];
            e[i] = Scalar::one();
            pts.push(e);
        }
        Self::hull(pts, Vec::new()).expect("simplex is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<Scalar>] {
        &self.rays
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Dimension of the affine hull; `None` for the empty polyhedron.
    pub fn affine_dim(&self) -> Option<usize> {
        let v0 = self.vertices.first()?;
        let mut rows: Vec<Vec<Scalar>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        rows.extend(self.rays.iter().cloned());
        Some(linalg::rank(&rows))
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == Some(self.dim)
    }

    pub fn translate(&self, v: &[Scalar]) -> Result<Self> {
        check_dims(self.dim, std::iter::once(&v.to_vec()))?;
        let vertices = self
            .vertices
            .iter()
            .map(|p| p.iter().zip(v).map(|(a, b)| a + b).collect())
            .collect();
        if self.rays.is_empty() {
            return Ok(Self::from_canonical(self.dim, vertices, Vec::new()));
        }
        // lineality projection is not translation invariant
        Self::hull(vertices, self.rays.clone())
    }

    /// Homothety `x -> lambda x` for `lambda > 0`.
    pub fn scale(&self, lambda: &Scalar) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::NonPositiveScale(scalar::format(lambda)));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|p| p.iter().map(|x| x * lambda).collect())
            .collect();
        Ok(Self::from_canonical(self.dim, vertices, self.rays.clone()))
    }

    pub(crate) fn from_canonical(dim: usize, vertices: Vec<Point>, rays: Vec<Vec<Scalar>>) -> Self {
        Self {
            dim,
            vertices,
            rays,
            hrep: OnceLock::new(),
        }
    }

    pub(crate) fn hrep(&self) -> &HRep {
        self.hrep
            .get_or_init(|| facets_of_generators(self.dim, &self.vertices, &self.rays))
    }

    pub fn contains_point(&self, x: &[Scalar]) -> bool {
        !self.is_empty() && self.hrep().contains_point(x)
    }
}

/// H-representation of `conv(points) + cone(rays)` by dualizing the
/// homogenized generator cone. `points` must be nonempty.
pub(crate) fn facets_of_generators(dim: usize, points: &[Point], rays: &[Vec<Scalar>]) -> HRep {
    if points.is_empty() {
        return HRep::default();
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(points.len() + rays.len());
    let mut sorted_points: Vec<&Point> = points.iter().collect();
    sorted_points.sort();
    sorted_points.dedup();
    for p in sorted_points {
        let mut h = Vec::with_capacity(dim + 1);
        h.push(Scalar::one());
        h.extend(p.iter().cloned());
        rows.push(scale_row(&h));
    }
    for r in rays {
        if scalar::is_zero_vec(r) {
            continue;
        }
        let mut h = Vec::with_capacity(dim + 1);
        h.push(Scalar::zero());
        h.extend(r.iter().cloned());
        rows.push(scale_row(&h));
    }
    let gens = dd::cone_generators(&rows, dim + 1);
    let split = |v: &[BigInt]| Facet {
        offset: Scalar::from_integer(v[0].clone()),
        normal: to_scalars(&v[1..]),
    };
    let equations: Vec<Facet> = gens.lineality.iter().map(|l| split(l)).collect();
    let mut facets: Vec<Facet> = gens
        .rays
        .iter()
        .map(|r| split(r))
        .filter(|f| !scalar::is_zero_vec(&f.normal))
        .map(|f| canonical_facet(f, &equations))
        .collect();
    facets.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));
    facets.dedup();
    HRep { equations, facets }
}

/// Reduces a facet modulo the equations so its normal is orthogonal to the
/// normals of the affine hull, then scales it to a primitive normal.
fn canonical_facet(f: Facet, equations: &[Facet]) -> Facet {
    if equations.is_empty() {
        return scale_facet(f);
    }
    let gram: Vec<Vec<Scalar>> = equations
        .iter()
        .map(|ei| {
            equations
                .iter()
                .map(|ej| dot(&ei.normal, &ej.normal))
                .collect()
        })
        .collect();
    let rhs: Vec<Scalar> = equations
        .iter()
        .map(|e| dot(&e.normal, &f.normal))
        .collect();
    let coefs = linalg::solve(&gram, &rhs).expect("equation normals are independent");
    let mut reduced = f;
    for (c, e) in coefs.iter().zip(equations) {
        reduced.offset -= c * &e.offset;
        for (x, y) in reduced.normal.iter_mut().zip(&e.normal) {
            *x -= c * y;
        }
    }
    scale_facet(reduced)
}

fn scale_facet(f: Facet) -> Facet {
    let mut all = vec![f.offset.clone()];
    all.extend(f.normal.iter().cloned());
    let lcm = all.iter().fold(BigInt::one(), |acc, x| {
        num_integer::Integer::lcm(&acc, x.denom())
    });
    let ints: Vec<BigInt> = all.iter().map(|x| (x * &lcm).to_integer()).collect();
    let p = scalar::primitive_int(ints);
    Facet {
        offset: Scalar::from_integer(p[0].clone()),
        normal: to_scalars(&p[1..]),
    }
}

/// V-representation of `{x : eq(x) = 0, f(x) >= 0}` in canonical form.
pub(crate) fn from_hrep(dim: usize, h: &HRep) -> Polyhedron {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let homog = |f: &Facet| {
        let mut v = vec![f.offset.clone()];
        v.extend(f.normal.iter().cloned());
        scale_row(&v)
    };
    let mut y0 = vec![BigInt::zero(); dim + 1];
    y0[0] = BigInt::one();
    rows.push(y0);
    for e in &h.equations {
        let r = homog(e);
        rows.push(r.iter().map(|x| -x).collect());
        rows.push(r);
    }
    for f in &h.facets {
        rows.push(homog(f));
    }
    let gens = dd::cone_generators(&rows, dim + 1);

    // canonical lineality basis from the reduced row echelon form
    let lines: Vec<Vec<Scalar>> = gens
        .lineality
        .iter()
        .map(|l| {
            debug_assert!(l[0].is_zero());
            to_scalars(&l[1..])
        })
        .collect();
    let (echelon, _) = linalg::rref(&lines);
    let line_basis = linalg::orthogonal_basis(&echelon);

    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in &gens.rays {
        let x = to_scalars(&r[1..]);
        if r[0].is_positive() {
            let w = Scalar::from_integer(r[0].clone());
            let p: Point = x.iter().map(|c| c / &w).collect();
            vertices.push(linalg::project_out(&p, &line_basis));
        } else {
            let d = linalg::project_out(&x, &line_basis);
            if !scalar::is_zero_vec(&d) {
                rays.push(to_scalars(&primitive(&d)));
            }
        }
    }
    if vertices.is_empty() {
        return Polyhedron::empty(dim);
    }
    for l in &echelon {
        let p = to_scalars(&primitive(l));
        rays.push(p.iter().map(|x| -x).collect());
        rays.push(p);
    }
    vertices.sort();
    vertices.dedup();
    rays.sort();
    rays.dedup();
    Polyhedron::from_canonical(dim, vertices, rays)
}

/// Canonical irredundant V-representation of `conv(points) + cone(rays)`.
pub fn convex_hull(points: Vec<Point>, rays: Vec<Vec<Scalar>>) -> Result<Polyhedron> {
    Polyhedron::hull(points, rays)
}

pub fn minkowski_sum(p: &Polyhedron, q: &Polyhedron) -> Result<Polyhedron> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch {
            expected: p.dim,
            found: q.dim,
        });
    }
    if p.is_empty() || q.is_empty() {
        return Ok(Polyhedron::empty(p.dim));
    }
    if q.vertices.len() == 1 && q.rays.is_empty() {
        return p.translate(&q.vertices[0]);
    }
    if p.vertices.len() == 1 && p.rays.is_empty() {
        return q.translate(&p.vertices[0]);
    }
    let mut points = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            points.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    let rays = p.rays.iter().chain(q.rays.iter()).cloned().collect();
    Polyhedron::hull(points, rays)
}

/// `P ∩ H`; returns the empty polyhedron if they do not meet.
pub fn clip(p: &Polyhedron, h: &Halfspace) -> Result<Polyhedron> {
    if h.dim() != p.dim {
        return Err(Error::DimensionMismatch {
            expected: p.dim,
            found: h.dim(),
        });
    }
    if scalar::is_zero_vec(&h.normal) {
        return Err(Error::ZeroNormal);
    }
    if p.is_empty() {
        return Ok(Polyhedron::empty(p.dim));
    }
    if p.vertices.iter().all(|v| h.contains_point(v))
        && p.rays.iter().all(|r| h.contains_direction(r))
    {
        return Ok(p.clone());
    }
    let mut hrep = p.hrep().clone();
    hrep.facets.push(Facet {
        offset: h.bound.clone(),
        normal: h.normal.iter().map(|x| -x).collect(),
    });
    Ok(from_hrep(p.dim, &hrep))
}

/// Irredundant facet halfspaces of a nonempty polyhedron. Affine equations
/// of a lower-dimensional polyhedron appear as pairs of opposite halfspaces.
pub fn dd_convert(p: &Polyhedron) -> Result<Vec<Halfspace>> {
    if p.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    let h = p.hrep();
    let mut out: Vec<Halfspace> = Vec::new();
    for e in &h.equations {
        let hs = e.to_halfspace();
        out.push(Halfspace {
            normal: hs.normal.iter().map(|x| -x).collect(),
            bound: -&hs.bound,
        });
        out.push(hs);
    }
    out.extend(h.facets.iter().map(Facet::to_halfspace));
    out.sort();
    Ok(out)
}

/// Polyhedron cut out by a set of halfspaces. Inconsistent systems yield the
/// empty polyhedron.
pub fn dd_convert_back(dim: usize, halfspaces: &[Halfspace]) -> Result<Polyhedron> {
    let mut hrep = HRep::default();
    for h in halfspaces {
        if h.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: h.dim(),
            });
        }
        if scalar::is_zero_vec(&h.normal) {
            return Err(Error::ZeroNormal);
        }
        hrep.facets.push(Facet {
            offset: h.bound.clone(),
            normal: h.normal.iter().map(|x| -x).collect(),
        });
    }
    Ok(from_hrep(dim, &hrep))
}

/// Whether `q ⊆ p`.
pub fn contains(p: &Polyhedron, q: &Polyhedron) -> bool {
    if q.is_empty() {
        return true;
    }
    if p.is_empty() || p.dim != q.dim {
        return false;
    }
    let h = p.hrep();
    q.vertices.iter().all(|v| h.contains_point(v)) && q.rays.iter().all(|r| h.contains_direction(r))
}

#[derive(Serialize, Deserialize)]
struct PolyhedronJson {
    dim: usize,
    #[serde(with = "serde_q::mat")]
    vertices: Vec<Vec<Scalar>>,
    #[serde(default, with = "serde_q::mat")]
    rays: Vec<Vec<Scalar>>,
}

impl Serialize for Polyhedron {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyhedronJson {
            dim: self.dim,
            vertices: self.vertices.clone(),
            rays: self.rays.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polyhedron {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyhedronJson::deserialize(d)?;
        if raw.vertices.is_empty() {
            return Ok(Polyhedron::empty(raw.dim));
        }
        check_dims(raw.dim, raw.vertices.iter().chain(raw.rays.iter()))
            .map_err(D::Error::custom)?;
        Polyhedron::hull(raw.vertices, raw.rays).map_err(D::Error::custom)
    }
}
