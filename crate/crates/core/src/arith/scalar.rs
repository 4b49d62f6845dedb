//! Gaussian rationals `a + b*i` with arbitrary-precision rational parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::{Field, Ring};

/// An exact element of the field ℚ(i).
///
/// Both parts are kept as [`BigRational`], which normalizes itself on every
/// operation (coprime numerator/denominator, positive denominator), so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num / den` as a real scalar. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2 = re^2 + im^2`, always a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(re: BigRational) -> Self {
        Scalar::new(re, BigRational::zero())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // Skip the bignum work for the very common real-times-real case.
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::new(&self.re * &rhs.re, BigRational::zero());
        }
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.recip().expect("division by zero scalar");
        Mul::mul(self, &inv)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $tr::$m(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $tr::$m(&self, rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl Field for Scalar {
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Writes the literal syntax accepted by [`Scalar::from_str`]:
/// `a`, `a/b`, `c*i`, `a/b+c/d*i`, with `i` / `-i` for unit imaginary parts.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            if self.im.is_positive() {
                f.write_str("+")?;
            }
        }
        if self.im.is_one() {
            f.write_str("i")
        } else if (-self.im.clone()).is_one() {
            f.write_str("-i")
        } else {
            fmt_rational(&self.im, f)?;
            f.write_str("*i")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar literal `{literal}`: {reason}")]
pub struct ScalarParseError {
    pub literal: String,
    pub reason: &'static str,
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    /// `int ['/' posint]`, unsigned.
    fn rational(&mut self) -> Result<Option<BigRational>, &'static str> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        if self.eat(b'/') {
            let den = self.digits().ok_or("expected denominator after `/`")?;
            if den.is_zero() {
                return Err("zero denominator");
            }
            Ok(Some(BigRational::new(num, den)))
        } else {
            Ok(Some(BigRational::from_integer(num)))
        }
    }

    /// A signed term: either a rational, `q*i`, or a bare `i`.
    /// Returns `(value, is_imaginary)`.
    fn term(&mut self, negative: bool) -> Result<(BigRational, bool), &'static str> {
        let sign = |q: BigRational| if negative { -q } else { q };
        if self.eat(b'i') {
            return Ok((sign(BigRational::one()), true));
        }
        let q = self.rational()?.ok_or("expected a number or `i`")?;
        if self.eat(b'*') {
            if !self.eat(b'i') {
                return Err("expected `i` after `*`");
            }
            Ok((sign(q), true))
        } else {
            Ok((sign(q), false))
        }
    }
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    fn from_str(literal: &str) -> Result<Self, Self::Err> {
        let compact: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason| ScalarParseError {
            literal: literal.to_string(),
            reason,
        };
        let mut cur = Cursor {
            s: compact.as_bytes(),
            pos: 0,
        };
        let negative = if cur.eat(b'-') {
            true
        } else {
            cur.eat(b'+');
            false
        };
        let (first, first_im) = cur.term(negative).map_err(err)?;
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        if first_im {
            im = first;
        } else {
            re = first;
            let second_neg = match cur.peek() {
                Some(b'+') => Some(false),
                Some(b'-') => Some(true),
                _ => None,
            };
            if let Some(neg) = second_neg {
                cur.pos += 1;
                let (second, second_im) = cur.term(neg).map_err(err)?;
                if !second_im {
                    return Err(err("second term must be imaginary"));
                }
                im = second;
            }
        }
        if cur.pos != cur.s.len() {
            return Err(err("trailing characters"));
        }
        Ok(Scalar::new(re, im))
    }
}
