//! Exact rational scalars and parsing helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The scalar field of the whole engine.
pub type Q = BigRational;

/// Rational from an integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational from numerator and denominator.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Sign factor `(-1)^e`.
pub fn sign_pow(e: u32) -> Q {
    if e % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Parses `"p"`, `"-p"`, or `"p/q"`.
pub fn parse_rational(s: &str) -> crate::Result<Q> {
    let s = s.trim();
    let parse_int = |t: &str| -> crate::Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| crate::BvError::Parse(format!("bad integer `{t}`")))
    };
    match s.split_once('/') {
        None => Ok(Q::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(crate::BvError::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Q::new(parse_int(num)?, d))
        }
    }
}

/// Renders a rational as `p` or `p/q` (canonical lowest terms, sign on the
/// numerator).
pub fn render_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses a JSON number or string into a rational. Accepts integers and
/// `"p/q"` strings; floating point is rejected to keep arithmetic exact.
pub fn rational_from_json(v: &serde_json::Value) -> crate::Result<Q> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(q(i))
            } else {
                Err(crate::BvError::Parse(format!(
                    "non-integer numeric literal `{n}`; write rationals as \"p/q\" strings"
                )))
            }
        }
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(crate::BvError::Parse(format!(
            "expected rational (integer or \"p/q\"), got `{other}`"
        ))),
    }
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// True when the rational is negative (used only for rendering).
pub fn is_negative(x: &Q) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["3", "-7", "3/2", "-11/4", "0"] {
            let v = parse_rational(s).unwrap();
            assert_eq!(render_rational(&v), s);
        }
        // Non-canonical input renders canonically.
        assert_eq!(render_rational(&parse_rational("4/2").unwrap()), "2");
        assert_eq!(render_rational(&parse_rational("1/-2").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn binomial_matches_pascal() {
        for n in 0..10u32 {
            for k in 0..=n {
                let lhs = binomial(n, k);
                let rhs = if k == 0 || k == n {
                    BigInt::one()
                } else {
                    binomial(n - 1, k - 1) + binomial(n - 1, k)
                };
                assert_eq!(lhs, rhs);
            }
        }
    }
}
