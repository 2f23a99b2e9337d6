//! Exact-rational scalars and 2-vectors.
//!
//! Every coordinate in this crate is a [`Rat`]; floating point only appears
//! when a transform value is finally evaluated.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rounds to the nearest `f64`.
pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p/q"`, an integer, or a decimal literal into an exact rational.
///
/// Decimal strings are read as exact decimal fractions (`"0.25"` is 1/4,
/// not the nearest double).
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let err = || Error::ParseRational(s.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let (sign, int) = match int.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int),
        };
        let int = if int.is_empty() { "0" } else { int };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let whole: BigInt = int.parse().map_err(|_| err())?;
        let frac_num: BigInt = frac.parse().map_err(|_| err())?;
        let den = BigInt::from(10).pow(frac.len() as u32);
        let num = whole * &den + frac_num;
        return Ok(Rat::new(num * sign, den));
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rat::from_integer(n))
}

/// Renders a rational as `"p"` or `"p/q"`, the same syntax `parse_rational`
/// accepts.
pub fn format_rational(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact rational point / vector in the plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec2 {
    pub x: Rat,
    pub y: Rat,
}

impl Vec2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Vec2 { x, y }
    }

    /// Integer-coordinate vector.
    pub fn from_ints(x: i64, y: i64) -> Self {
        Vec2::new(rint(x), rint(y))
    }

    pub fn zero() -> Self {
        Vec2::new(Rat::zero(), Rat::zero())
    }

    pub fn add(&self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn neg(&self) -> Vec2 {
        Vec2::new(-self.x.clone(), -self.y.clone())
    }

    pub fn scale(&self, s: &Rat) -> Vec2 {
        Vec2::new(&self.x * s, &self.y * s)
    }

    pub fn dot(&self, o: &Vec2) -> Rat {
        &self.x * &o.x + &self.y * &o.y
    }

    /// z-component of the cross product, `self.x * o.y - self.y * o.x`.
    pub fn cross(&self, o: &Vec2) -> Rat {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm_sq(&self) -> Rat {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [to_f64(&self.x), to_f64(&self.y)]
    }
}

/// Exact floor of a rational, as `i64`. Panics if out of range; coordinates
/// in this crate are far below that.
pub fn floor_i64(x: &Rat) -> i64 {
    x.floor()
        .to_integer()
        .to_i64()
        .expect("rational floor out of i64 range")
}

/// Exact ceiling of a rational, as `i64`.
pub fn ceil_i64(x: &Rat) -> i64 {
    x.ceil()
        .to_integer()
        .to_i64()
        .expect("rational ceiling out of i64 range")
}

/// Exact conversion of a finite `f64` into a rational.
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).expect("non-finite float")
}

/// `|x|` as a rational.
pub fn rat_abs(x: &Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("3/-4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), rint(7));
        assert_eq!(parse_rational("-7").unwrap(), rint(-7));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("2.431708").unwrap(), rat(2_431_708, 1_000_000));
        assert_eq!(parse_rational(" 1/2 ").unwrap(), rat(1, 2));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "1/0", "a", "1.2.3", "1.x", "--2", "1e5"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn decimal_parsing_is_exact() {
        // 0.1 as a rational is exactly 1/10, which no binary float is.
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
        assert_ne!(parse_rational("0.1").unwrap(), rat_from_f64(0.1));
    }

    #[test]
    fn format_round_trips() {
        for r in [rat(1, 3), rint(-6), rat(-22, 7), Rat::zero()] {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }

    #[test]
    fn vec_ops() {
        let a = Vec2::from_ints(1, 3);
        let b = Vec2::from_ints(1, -3);
        assert_eq!(a.dot(&b), rint(-8));
        assert_eq!(a.cross(&b), rint(-6));
        assert_eq!(a.sub(&b), Vec2::from_ints(0, 6));
        assert_eq!(a.norm_sq(), rint(10));
    }

    #[test]
    fn exact_floor_ceil() {
        assert_eq!(floor_i64(&rat(-7, 2)), -4);
        assert_eq!(ceil_i64(&rat(-7, 2)), -3);
        assert_eq!(floor_i64(&rint(5)), 5);
        assert_eq!(ceil_i64(&rint(5)), 5);
    }
}
