//! Exact rational scalars. Every coefficient in this crate is a
//! `BigRational`; no floating point appears anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or a plain JSON-style integer string.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || Error::Parse(format!("malformed rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| mk_err())?;
            let q: BigInt = q.trim().parse().map_err(|_| mk_err())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from_integer(p))
        }
    }
}

/// Exact conversion to `i64` for wire formats; errors on non-integers.
pub fn rat_to_i64(r: &Rat) -> Result<i64> {
    if !is_integer(r) {
        return Err(Error::NotIntegral(rat_to_string(r)));
    }
    let n = r.numer();
    i64::try_from(n.clone()).map_err(|_| Error::Parse(format!("integer out of range: {n}")))
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}
