//! Exact volume of bounded polyhedra.
//!
//! A pulling triangulation built from the vertex-facet incidences: each face
//! is coned from its first vertex over those of its own facets that miss the
//! apex, recursing down to points. The facets of a face `G` are the
//! inclusion-maximal proper sets `G ∩ F` over facets `F` of the polytope.

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::Polyhedron;
use crate::scalar::{factorial, Scalar};

/// The d-volume of a bounded polyhedron; zero if it is not full-dimensional.
pub fn volume(p: &Polyhedron) -> Result<Scalar> {
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    if p.is_empty() {
        return Ok(Scalar::zero());
    }
    let d = p.dim();
    let h = p.hrep();
    if !h.equations.is_empty() {
        return Ok(Scalar::zero());
    }
    let verts = p.vertices();
    let nv = verts.len();
    let incidence: Vec<FixedBitSet> = h
        .facets
        .iter()
        .map(|f| {
            let mut s = FixedBitSet::with_capacity(nv);
            for (i, v) in verts.iter().enumerate() {
                if f.slack(v).is_zero() {
                    s.insert(i);
                }
            }
            s
        })
        .collect();

    let mut all = FixedBitSet::with_capacity(nv);
    all.insert_range(..);
    let mut simplices = Vec::new();
    triangulate(&all, d, &incidence, &mut Vec::new(), &mut simplices);

    let mut total = Scalar::zero();
    for s in simplices {
        let v0 = &verts[s[0]];
        let rows: Vec<Vec<Scalar>> = s[1..]
            .iter()
            .map(|&i| verts[i].iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        total += linalg::determinant(&rows).abs();
    }
    Ok(total / Scalar::from_integer(factorial(d)))
}

fn triangulate(
    face: &FixedBitSet,
    dim: usize,
    incidence: &[FixedBitSet],
    apexes: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let apex = face.ones().next().expect("faces are nonempty");
    if dim == 0 {
        let mut s = apexes.clone();
        s.push(apex);
        out.push(s);
        return;
    }
    apexes.push(apex);
    for sub in subfaces(face, incidence) {
        if !sub.contains(apex) {
            triangulate(&sub, dim - 1, incidence, apexes, out);
        }
    }
    apexes.pop();
}

fn subfaces(face: &FixedBitSet, incidence: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let mut cands: Vec<FixedBitSet> = Vec::new();
    for f in incidence {
        let mut c = face.clone();
        c.intersect_with(f);
        if c.count_ones(..) == 0 || c == *face || cands.contains(&c) {
            continue;
        }
        cands.push(c);
    }
    cands
        .iter()
        .filter(|c| !cands.iter().any(|o| o != *c && c.is_subset(o)))
        .cloned()
        .collect()
}
