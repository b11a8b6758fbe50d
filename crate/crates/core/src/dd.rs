//! Double description method over the integers.
//!
//! Computes a generating system of the polyhedral cone `{x : A x >= 0}`:
//! a basis of its lineality space plus one primitive integer representative
//! per extreme ray (modulo the lineality space). Adjacency of rays is decided
//! by the combinatorial test on zero sets, which is exact.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::scalar::primitive_int;

#[derive(Debug, Clone, Default)]
pub struct ConeGenerators {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

struct Ray {
    v: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `alpha * u - beta * w`, reduced to a primitive vector.
fn combine(alpha: &BigInt, u: &[BigInt], beta: &BigInt, w: &[BigInt]) -> Vec<BigInt> {
    primitive_int(u.iter().zip(w).map(|(x, y)| alpha * x - beta * y).collect())
}

pub fn cone_generators(rows: &[Vec<BigInt>], dim: usize) -> ConeGenerators {
    let m = rows.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in rows.iter().enumerate() {
        debug_assert_eq!(a.len(), dim);
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut s = dot(a, &l0);
            if s.is_negative() {
                for x in l0.iter_mut() {
                    *x = -&*x;
                }
                s = -s;
            }
            for l in lineality.iter_mut() {
                let al = dot(a, l);
                if !al.is_zero() {
                    *l = combine(&s, l, &al, &l0);
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    r.v = combine(&s, &r.v, &ar, &l0);
                }
                r.zeros.insert(k);
            }
            let mut zeros = FixedBitSet::with_capacity(m);
            zeros.insert_range(..k);
            rays.push(Ray { v: l0, zeros });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for (i, v) in values.iter().enumerate() {
            match v.sign() {
                num_bigint::Sign::Plus => pos.push(i),
                num_bigint::Sign::Minus => neg.push(i),
                num_bigint::Sign::NoSign => zero.push(i),
            }
        }
        if neg.is_empty() {
            for &i in &zero {
                rays[i].zeros.insert(k);
            }
            continue;
        }

        // a 2-face of the pointed part needs at least this many tight rows
        let min_tight = dim.saturating_sub(lineality.len() + 2);
        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                if common.count_ones(..) < min_tight {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(j, r)| j != p && j != n && common.is_subset(&r.zeros));
                if blocked {
                    continue;
                }
                let vp = &values[p];
                let vn = -&values[n];
                let v = primitive_int(
                    rays[n]
                        .v
                        .iter()
                        .zip(&rays[p].v)
                        .map(|(x, y)| vp * x + &vn * y)
                        .collect(),
                );
                common.insert(k);
                fresh.push(Ray { v, zeros: common });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + zero.len() + fresh.len());
        let mut old: Vec<Option<Ray>> = rays.into_iter().map(Some).collect();
        for i in pos {
            next.push(old[i].take().unwrap());
        }
        for i in zero {
            let mut r = old[i].take().unwrap();
            r.zeros.insert(k);
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }

    ConeGenerators {
        lineality,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn positive_orthant() {
        let g = cone_generators(&[iv(&[1, 0]), iv(&[0, 1])], 2);
        assert!(g.lineality.is_empty());
        let mut rays = g.rays;
        rays.sort();
        assert_eq!(rays, vec![iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn halfplane_keeps_a_line() {
        let g = cone_generators(&[iv(&[1, 0])], 2);
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.rays.len(), 1);
    }

    #[test]
    fn square_cone_has_four_rays() {
        // homogenized unit square: y0 >= 0, x >= 0, y >= 0, y0 - x >= 0, y0 - y >= 0
        let rows = [
            iv(&[1, 0, 0]),
            iv(&[0, 1, 0]),
            iv(&[0, 0, 1]),
            iv(&[1, -1, 0]),
            iv(&[1, 0, -1]),
        ];
        let g = cone_generators(&rows, 3);
        assert!(g.lineality.is_empty());
        let mut rays = g.rays;
        rays.sort();
        assert_eq!(
            rays,
            vec![
                iv(&[1, 0, 0]),
                iv(&[1, 0, 1]),
                iv(&[1, 1, 0]),
                iv(&[1, 1, 1])
            ]
        );
    }

    #[test]
    fn infeasible_leaves_only_origin() {
        let g = cone_generators(&[iv(&[1]), iv(&[-1])], 1);
        assert!(g.lineality.is_empty());
        assert!(g.rays.is_empty());
    }
}
