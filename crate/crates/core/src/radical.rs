//! Exact comparison of sums of real `m`-th roots of nonnegative rationals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{pow, Scalar};

/// Exact `m`-th root of a nonnegative rational, if it is rational.
pub fn exact_root(x: &Scalar, m: u32) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let p = x.numer().nth_root(m);
    let q = x.denom().nth_root(m);
    let r = Scalar::new(p, q);
    (pow(&r, m as usize) == *x).then_some(r)
}

/// `floor(x^(1/m) · 2^k)` for nonnegative `x`.
fn scaled_root_floor(x: &Scalar, m: u32, k: u32) -> BigInt {
    let scale = BigInt::one() << (k as usize * m as usize);
    let floor = num_integer::Integer::div_floor(&(x.numer() * scale), x.denom());
    floor.nth_root(m)
}

/// Order of `a^(1/m)` relative to `b^(1/m) + c^(1/m)`.
///
/// When `b/c` is a rational `m`-th power the sum is a rational multiple of
/// `c^(1/m)` and the comparison is a single rational one. Otherwise the sum of
/// roots cannot equal a single root, and bracketing the roots with integer
/// root extraction at growing precision decides the strict order.
pub fn compare_root_sum(a: &Scalar, b: &Scalar, c: &Scalar, m: u32) -> Result<Ordering> {
    if m == 0 {
        return Err(Error::Precondition("root index must be positive".into()));
    }
    if a.is_negative() || b.is_negative() || c.is_negative() {
        return Err(Error::Precondition("radicands must be nonnegative".into()));
    }
    if b.is_zero() {
        return Ok(a.cmp(c));
    }
    if c.is_zero() {
        return Ok(a.cmp(b));
    }
    if let Some(rho) = exact_root(&(b / c), m) {
        let rhs = pow(&(rho + Scalar::one()), m as usize) * c;
        return Ok(a.cmp(&rhs));
    }
    let mut k = 16u32;
    loop {
        let (ra, rb, rc) = (
            scaled_root_floor(a, m, k),
            scaled_root_floor(b, m, k),
            scaled_root_floor(c, m, k),
        );
        // x^(1/m)·2^k lies in [r, r+1)
        if ra < &rb + &rc {
            return Ok(Ordering::Less);
        }
        if ra >= &rb + &rc + 2 {
            return Ok(Ordering::Greater);
        }
        k *= 2;
    }
}
