//! Exact rational scalars and their JSON encoding.
//!
//! Rationals serialize as strings, `"p/q"` or `"p"` for integers.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let bad = || Error::ParseScalar(s.to_string());
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| bad())?;
    let q = BigInt::from_str(q).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(p, q))
}

pub fn format(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn vec_of(values: &[i64]) -> Vec<Scalar> {
    values.iter().map(|&v| int(v)).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn pow(x: &Scalar, e: usize) -> Scalar {
    num_traits::pow(x.clone(), e)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn multinomial(exps: &[u32]) -> BigInt {
    let total: usize = exps.iter().map(|&e| e as usize).sum();
    exps.iter()
        .fold(factorial(total), |acc, &e| acc / factorial(e as usize))
}

/// Scales a rational vector by a positive factor so that it becomes a
/// primitive integer vector. The zero vector is returned unchanged.
pub fn primitive(v: &[Scalar]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    primitive_int(ints)
}

pub fn primitive_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

pub fn to_scalars(v: &[BigInt]) -> Vec<Scalar> {
    v.iter().map(|x| Scalar::from_integer(x.clone())).collect()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

/// Serde adapters for `Scalar` and nested vectors of `Scalar`.
pub mod serde_q {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        format(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let raw = Literal::deserialize(d)?;
        raw.into_scalar().map_err(D::Error::custom)
    }

    /// Accepts `"p/q"` strings as well as bare JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Literal {
        Text(String),
        Int(i64),
    }

    impl Literal {
        fn into_scalar(self) -> super::Result<Scalar> {
            match self {
                Literal::Text(s) => parse(&s),
                Literal::Int(i) => Ok(int(i)),
            }
        }
    }

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super::serde_q")] Scalar);

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(format))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
            let raw: Vec<Wrap> = Vec::deserialize(d)?;
            Ok(raw.into_iter().map(|w| w.0).collect())
        }
    }

    pub mod mat {
        use super::*;

        pub fn serialize<S: Serializer>(m: &[Vec<Scalar>], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(
                m.iter()
                    .map(|row| row.iter().map(format).collect::<Vec<_>>()),
            )
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Scalar>>, D::Error> {
            let raw: Vec<Vec<Wrap>> = Vec::deserialize(d)?;
            Ok(raw
                .into_iter()
                .map(|row| row.into_iter().map(|w| w.0).collect())
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse(" -7 ").unwrap(), int(-7));
        assert_eq!(parse("2/-4").unwrap(), frac(-1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert_eq!(format(&frac(-3, 6)), "-1/2");
        assert_eq!(format(&int(5)), "5");
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![frac(1, 2), frac(-3, 4), int(0)];
        assert_eq!(
            primitive(&v),
            vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]
        );
        assert_eq!(multinomial(&[1, 1]), BigInt::from(2));
        assert_eq!(multinomial(&[2, 1, 0]), BigInt::from(3));
        assert_eq!(binomial(4, 2), BigInt::from(6));
    }
}
