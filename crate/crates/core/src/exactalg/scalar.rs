use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// Exact rational scalar. `BigRational` keeps values reduced with a positive
/// denominator.
pub type Scalar = BigRational;

/// Shorthand constructor for `p/q`.
pub fn q(p: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(d))
}

pub fn factorial(n: u32) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Scalar::from_integer(acc)
}

/// `α! = α₁!·α₂!·…` for a multi-index.
pub fn multi_factorial(alpha: &[u32]) -> Scalar {
    alpha.iter().fold(Scalar::one(), |acc, &a| acc * factorial(a))
}

/// Parses `"p"`, `"-p"`, or `"p/q"` into an exact rational.
pub fn parse_scalar(text: &str) -> Result<Scalar, Error> {
    let t = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Scalar::new(n, d))
}
