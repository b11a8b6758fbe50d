//! Consequences of non-negativity of the coconvex form, phrased as exact
//! checks on a volume polynomial over the positive orthant.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::family::forms_from_volume;
use crate::poly::HomogeneousPolynomial;
use crate::radical::compare_root_sum;
use crate::scalar::{factorial, pow, Scalar};

fn check_point(p: &HomogeneousPolynomial, x: &[Scalar]) -> Result<()> {
    if x.len() != p.nvars() {
        return Err(Error::LengthMismatch {
            expected: p.nvars(),
            found: x.len(),
        });
    }
    if !x.iter().all(Signed::is_positive) {
        return Err(Error::Precondition("points must be positive".into()));
    }
    Ok(())
}

fn affine(t: &Scalar, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let s = Scalar::one() - t;
    u.iter().zip(v).map(|(a, b)| t * a + &s * b).collect()
}

/// `P(tu+(1−t)v)^(1/m) ≤ t·P(u)^(1/m) + (1−t)·P(v)^(1/m)` with `m = deg P`.
/// Negative values of `P` count as a violation.
pub fn root_convexity(
    p: &HomogeneousPolynomial,
    u: &[Scalar],
    v: &[Scalar],
    t: &Scalar,
) -> Result<bool> {
    check_point(p, u)?;
    check_point(p, v)?;
    if t.is_negative() || *t > Scalar::one() {
        return Err(Error::Precondition("t must lie in [0, 1]".into()));
    }
    let m = p.degree();
    if m == 0 {
        return Ok(true);
    }
    let (pu, pv) = (p.eval(u)?, p.eval(v)?);
    let mid = p.eval(&affine(t, u, v))?;
    if pu.is_negative() || pv.is_negative() || mid.is_negative() {
        return Ok(false);
    }
    let b = pow(t, m as usize) * pu;
    let c = pow(&(Scalar::one() - t), m as usize) * pv;
    Ok(compare_root_sum(&mid, &b, &c, m)? != Ordering::Greater)
}

/// `Vol^(1/d)` is convex along the segment from `v` to `u` at parameter `t`.
pub fn reversed_brunn_minkowski(
    vol: &HomogeneousPolynomial,
    u: &[Scalar],
    v: &[Scalar],
    t: &Scalar,
) -> Result<bool> {
    root_convexity(vol, u, v, t)
}

/// `(L_{w_1}⋯L_{w_k} Vol)^(1/(d−k))` is convex at the midpoint of `u` and `v`.
pub fn generalized_brunn_minkowski(
    vol: &HomogeneousPolynomial,
    dirs: &[Vec<Scalar>],
    u: &[Scalar],
    v: &[Scalar],
) -> Result<bool> {
    if dirs.len() > vol.degree() as usize {
        return Err(Error::Precondition("too many derivative directions".into()));
    }
    let mut p = vol.clone();
    for w in dirs {
        p = p.derivative(w)?;
    }
    let half = Scalar::new(1.into(), 2.into());
    root_convexity(&p, u, v, &half)
}

/// `((1/d!) L_u L_v^{d−1} Vol)^d ≤ Vol(u)·Vol(v)^{d−1}`.
pub fn first_reversed_minkowski(
    vol: &HomogeneousPolynomial,
    u: &[Scalar],
    v: &[Scalar],
) -> Result<bool> {
    check_point(vol, u)?;
    check_point(vol, v)?;
    let d = vol.degree();
    let mut p = vol.derivative(u)?;
    for _ in 1..d {
        p = p.derivative(v)?;
    }
    let mixed =
        p.constant().unwrap_or_else(Scalar::zero) / Scalar::from_integer(factorial(d as usize));
    Ok(pow(&mixed, d as usize) <= vol.eval(u)? * pow(&vol.eval(v)?, d as usize - 1))
}

/// With every marked point equal to `u`: `B(u,v)² ≤ Vol(u)·B(v,v)`.
pub fn second_reversed_minkowski(
    vol: &HomogeneousPolynomial,
    u: &[Scalar],
    v: &[Scalar],
) -> Result<bool> {
    check_point(vol, u)?;
    check_point(vol, v)?;
    let d = vol.degree() as usize;
    let marked = vec![u.to_vec(); d.saturating_sub(2)];
    let b = forms_from_volume(vol, &marked)?.bilinear;
    let buv = b.bilinear(u, v)?;
    Ok(&buv * &buv <= vol.eval(u)? * b.quadratic(v)?)
}
