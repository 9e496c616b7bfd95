//! Exact rational arithmetic helpers and radical comparisons.
//!
//! Every inequality in this crate that involves a single square root is
//! decided exactly: `lhs <= a + b*sqrt(x)` reduces to a sign test plus one
//! squaring, so no tolerance ever enters a pass/fail decision. Directed
//! rounding is used only where a numeric *value* must be produced.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;

/// Rational p/q from machine integers. Panics on q = 0.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Rational from an integer.
pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Rational from an unsigned integer.
pub fn rat_u64(p: u64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Rational from a 128-bit integer.
pub fn rat_i128(p: i128) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Formats a rational as `p/q`, or `p` when the denominator is 1.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// Parses `p/q` or `p` (optionally signed) into a rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = |msg: &str| Error::Invalid(format!("cannot parse rational `{s}`: {msg}"));
    let (num_str, den_str) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (s, None),
    };
    let p: BigInt = num_str.parse().map_err(|_| bad("bad numerator"))?;
    let q: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| bad("bad denominator"))?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rat::new(p, q))
}

/// Floor square root of a non-negative integer.
fn isqrt(x: &BigInt) -> BigInt {
    debug_assert!(!x.is_negative());
    x.sqrt()
}

/// If `x` is the square of a rational, returns that (non-negative) root.
pub fn rational_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let rp = isqrt(x.numer());
    let rq = isqrt(x.denom());
    if &(&rp * &rp) == x.numer() && &(&rq * &rq) == x.denom() {
        Some(Rat::new(rp, rq))
    } else {
        None
    }
}

/// Directed-rounding enclosure of sqrt(x) for x >= 0: returns (lo, hi) with
/// lo <= sqrt(x) <= hi and hi - lo <= 10^-digits.
pub fn sqrt_bounds(x: &Rat, digits: u32) -> (Rat, Rat) {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    // sqrt(p/q) = sqrt(p*q)/q; scale by 10^digits before the integer sqrt.
    let scale = BigUint::from(10u32).pow(digits);
    let scale = BigInt::from(scale);
    let p = x.numer().clone();
    let q = x.denom().clone();
    let t = &p * &q * &scale * &scale;
    let r = isqrt(&t);
    let den = &q * &scale;
    let lo = Rat::new(r.clone(), den.clone());
    let hi = if &r * &r == t {
        lo.clone()
    } else {
        Rat::new(r + 1, den)
    };
    (lo, hi)
}

/// Decides `lhs <= base + coeff*sqrt(rad)` exactly, for coeff >= 0, rad >= 0.
pub fn le_plus_sqrt(lhs: &Rat, base: &Rat, coeff: &Rat, rad: &Rat) -> bool {
    assert!(!coeff.is_negative() && !rad.is_negative());
    let t = lhs - base;
    if !t.is_positive() {
        return true;
    }
    &t * &t <= coeff * coeff * rad
}

/// Decides `lhs >= base - coeff*sqrt(rad)` exactly, for coeff >= 0, rad >= 0.
pub fn ge_minus_sqrt(lhs: &Rat, base: &Rat, coeff: &Rat, rad: &Rat) -> bool {
    le_plus_sqrt(base, lhs, coeff, rad)
}

/// Element a + b*sqrt(r) of a real quadratic extension of the rationals,
/// with r >= 0. Normalized so that r is not a rational square and b = 0
/// implies r = 0; a purely rational value therefore has b = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadExt {
    a: Rat,
    b: Rat,
    r: Rat,
}

impl QuadExt {
    pub fn new(a: Rat, b: Rat, r: Rat) -> Self {
        assert!(!r.is_negative(), "negative radicand");
        if b.is_zero() || r.is_zero() {
            return QuadExt { a, b: Rat::zero(), r: Rat::zero() };
        }
        if let Some(root) = rational_sqrt(&r) {
            return QuadExt { a: a + b * root, b: Rat::zero(), r: Rat::zero() };
        }
        QuadExt { a, b, r }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadExt { a, b: Rat::zero(), r: Rat::zero() }
    }

    /// sqrt(r) itself as a field element.
    pub fn sqrt_of(r: Rat) -> Self {
        QuadExt::new(Rat::zero(), Rat::one(), r)
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn radical_coeff(&self) -> &Rat {
        &self.b
    }

    pub fn radicand(&self) -> &Rat {
        &self.r
    }

    /// Some(value) when the element is rational.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn same_field(&self, other: &Self) -> bool {
        self.b.is_zero() || other.b.is_zero() || self.r == other.r
    }

    fn field_radicand(&self, other: &Self) -> Rat {
        if self.b.is_zero() {
            other.r.clone()
        } else {
            self.r.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.same_field(other), "mixed radicands");
        let r = self.field_radicand(other);
        QuadExt::new(&self.a + &other.a, &self.b + &other.b, r)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.same_field(other), "mixed radicands");
        let r = self.field_radicand(other);
        QuadExt::new(&self.a - &other.a, &self.b - &other.b, r)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.same_field(other), "mixed radicands");
        let r = self.field_radicand(other);
        let a = &self.a * &other.a + &self.b * &other.b * &r;
        let b = &self.a * &other.b + &self.b * &other.a;
        QuadExt::new(a, b, r)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        QuadExt::new(&self.a * k, &self.b * k, self.r.clone())
    }

    /// Exact enclosure (lo, hi) with width <= ~10^-digits.
    pub fn bounds(&self, digits: u32) -> (Rat, Rat) {
        if self.b.is_zero() {
            return (self.a.clone(), self.a.clone());
        }
        let (slo, shi) = sqrt_bounds(&self.r, digits);
        if self.b.is_positive() {
            (&self.a + &self.b * slo, &self.a + &self.b * shi)
        } else {
            (&self.a + &self.b * shi, &self.a + &self.b * slo)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().expect("rational out of f64 range");
        if self.b.is_zero() {
            return a;
        }
        let b = self.b.to_f64().expect("rational out of f64 range");
        let r = self.r.to_f64().expect("rational out of f64 range");
        a + b * r.sqrt()
    }

    /// Decides `self <= rhs` exactly for a rational rhs.
    pub fn le_rat(&self, rhs: &Rat) -> bool {
        // a + b*sqrt(r) <= t  <=>  b*sqrt(r) <= t - a.
        let t = rhs - &self.a;
        if self.b.is_zero() {
            return !t.is_negative();
        }
        if self.b.is_positive() {
            if t.is_negative() {
                return false;
            }
            &self.b * &self.b * &self.r <= &t * &t
        } else {
            if !t.is_negative() {
                return true;
            }
            &t * &t <= &self.b * &self.b * &self.r
        }
    }

    /// Decides `self >= rhs` exactly for a rational rhs.
    pub fn ge_rat(&self, rhs: &Rat) -> bool {
        // a + b*sqrt(r) >= t  <=>  -(a + b*sqrt(r)) <= -t.
        QuadExt::new(-self.a.clone(), -self.b.clone(), self.r.clone()).le_rat(&-rhs.clone())
    }
}

impl std::fmt::Display for QuadExt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-7/2", "5", "0", "-12"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(parse_rat(" 6/8 ").unwrap(), rat(3, 4));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/2/3").is_err());
    }

    #[test]
    fn sqrt_bounds_enclose() {
        let two = rat_int(2);
        let (lo, hi) = sqrt_bounds(&two, 12);
        assert!(&lo * &lo <= two && two <= &hi * &hi);
        assert!(&hi - &lo <= rat(1, 1_000_000_000_000));
        let (lo, hi) = sqrt_bounds(&rat(9, 4), 6);
        assert_eq!(lo, rat(3, 2));
        assert_eq!(hi, rat(3, 2));
    }

    #[test]
    fn rational_sqrt_detects_squares() {
        assert_eq!(rational_sqrt(&rat(9, 16)), Some(rat(3, 4)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(0, 1)), Some(Rat::zero()));
    }

    #[test]
    fn radical_comparisons_are_exact() {
        // 1.41 <= 0 + 1*sqrt(2) but 1.42 is not.
        let one = Rat::one();
        let zero = Rat::zero();
        let two = rat_int(2);
        assert!(le_plus_sqrt(&rat(141, 100), &zero, &one, &two));
        assert!(!le_plus_sqrt(&rat(142, 100), &zero, &one, &two));
        // 0.30 >= 1 - 1*sqrt(1/2) ~ 0.2929, but 0.29 is not.
        let half = rat(1, 2);
        assert!(ge_minus_sqrt(&rat(30, 100), &one, &one, &half));
        assert!(!ge_minus_sqrt(&rat(29, 100), &one, &one, &half));
    }

    #[test]
    fn quad_ext_arithmetic() {
        // (1 + sqrt(2))^2 = 3 + 2*sqrt(2).
        let x = QuadExt::new(Rat::one(), Rat::one(), rat_int(2));
        let sq = x.mul(&x);
        assert_eq!(sq.rational_part(), &rat_int(3));
        assert_eq!(sq.radical_coeff(), &rat_int(2));
        // Perfect-square radicand collapses to a rational.
        let y = QuadExt::new(Rat::zero(), Rat::one(), rat(1, 4));
        assert_eq!(y.as_rational(), Some(&rat(1, 2)));
        // Exact ordering against rationals.
        assert!(x.le_rat(&rat(242, 100)));
        assert!(!x.le_rat(&rat(241, 100)));
        assert!(x.ge_rat(&rat(241, 100)));
    }

    #[test]
    fn quad_ext_bounds_enclose() {
        let x = QuadExt::new(rat_int(1), rat_int(-3), rat_int(5));
        let (lo, hi) = x.bounds(15);
        let v = x.to_f64();
        assert!(lo.to_f64().unwrap() <= v && v <= hi.to_f64().unwrap());
        assert!(&hi - &lo <= rat(1, 10_000_000_000_000));
    }
}
