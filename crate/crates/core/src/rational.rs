//! Exact rationals and their `p/q` text form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p/q` with `q > 0` and `gcd(|p|, q) = 1`; integers keep the `/1`.
pub fn format_rational(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` (reduced, `q > 0`) or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::InvalidRational(s.to_string());
    let parse_int = |t: &str, signed: bool| -> Result<BigInt> {
        let digits = match t.strip_prefix('-') {
            Some(rest) if signed => rest,
            _ => t,
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Q::from_integer(parse_int(s, true)?)),
        Some((p, d)) => {
            let p = parse_int(p, true)?;
            let d = parse_int(d, false)?;
            if !d.is_positive() || !p.gcd(&d).is_one() {
                return Err(bad());
            }
            Ok(Q::new_raw(p, d))
        }
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn is_zero(x: &Q) -> bool {
    x.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        assert_eq!(format_rational(&qf(-6, 4)), "-3/2");
        assert_eq!(format_rational(&q(2)), "2/1");
        assert_eq!(parse_rational("-3/2").unwrap(), qf(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7));
        assert_eq!(parse_rational("0/1").unwrap(), q(0));
    }

    #[test]
    fn rejects_non_canonical() {
        for s in ["2/4", "1/0", "1/-2", "", "/", "a/b", "1/+2", "+1", "--1", "0/2", " 1"] {
            assert!(parse_rational(s).is_err(), "{s:?}");
        }
    }
}
