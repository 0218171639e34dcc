//! The working field: exact Gaussian rationals `a + b·i`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An element of `Q(i)`, stored as a pair of arbitrary-precision rationals.
///
/// `BigRational` keeps both parts in lowest terms with positive denominators,
/// so equality is plain structural equality and no rounding ever happens.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussianRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// `num/den`, panics on `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// `(re_num/re_den) + (im_num/im_den)·i`.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        assert!(re_den != 0 && im_den != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// The field norm `a² + b²` (a nonnegative rational, zero iff self is).
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = GaussianRational::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Parses the scalar text format used by the CLI: `a/b+c/d*i`, with the
    /// usual abbreviations (`3`, `-1/2`, `i`, `-i`, `2*i`, `1/2-3*i`, ...).
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        // Split into signed terms.
        let bytes = s.as_bytes();
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0usize;
        let mut neg = false;
        let mut i = 0usize;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            neg = bytes[0] == b'-';
            start = 1;
            i = 1;
        }
        while i < bytes.len() {
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if start == i {
                    return Err(Error::Parse(format!("unexpected sign in `{s}`")));
                }
                terms.push((neg, &s[start..i]));
                neg = bytes[i] == b'-';
                start = i + 1;
            }
            i += 1;
        }
        if start >= bytes.len() {
            return Err(Error::Parse(format!("trailing sign in `{s}`")));
        }
        terms.push((neg, &s[start..]));

        let mut out = GaussianRational::zero();
        for (negative, term) in terms {
            let term = term.trim();
            let (imaginary, body) = if let Some(b) = term.strip_suffix("*i") {
                (true, b)
            } else if let Some(b) = term.strip_suffix('i') {
                (true, b)
            } else {
                (false, term)
            };
            let mut r = if imaginary && body.is_empty() {
                BigRational::one()
            } else {
                parse_rational(body)
                    .ok_or_else(|| Error::Parse(format!("bad scalar term `{term}` in `{s}`")))?
            };
            if negative {
                r = -r;
            }
            if imaginary {
                out.im += r;
            } else {
                out.re += r;
            }
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        let mag = self.im.abs();
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-")?;
            }
            if mag.is_one() {
                return write!(f, "i");
            }
            fmt_rational(&mag, f)?;
            return write!(f, "*i");
        }
        fmt_rational(&self.re, f)?;
        write!(f, "{sign}")?;
        if mag.is_one() {
            write!(f, "i")
        } else {
            fmt_rational(&mag, f)?;
            write!(f, "*i")
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        GaussianRational::zero()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl $trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}
forward_binop!(Add, add);

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}
forward_binop!(Sub, sub);

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        // (a+bi)(c+di) = (ac - bd) + (ad + bc)i, with shortcuts for the
        // all-real case that dominates in practice.
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational {
                re: &self.re * &rhs.re,
                im: BigRational::zero(),
            };
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}
forward_binop!(Mul, mul);

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inverse().expect("division by zero");
        self * &inv
    }
}
forward_binop!(Div, div);

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = (&*self) * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(n, d)
    }

    #[test]
    fn field_basics() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
        let x = GaussianRational::from_parts(1, 2, -3, 1);
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
        assert!(GaussianRational::zero().inverse().is_none());
    }

    #[test]
    fn display_format() {
        assert_eq!(q(1, 2).to_string(), "1/2");
        assert_eq!(GaussianRational::from_parts(1, 2, -3, 1).to_string(), "1/2-3*i");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(GaussianRational::from_parts(0, 1, 2, 3).to_string(), "2/3*i");
        assert_eq!(GaussianRational::from_parts(-1, 1, 1, 1).to_string(), "-1+i");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "1/2", "1/2-3*i", "i", "-i", "2/3*i", "-1+i", "5", "-7/4"] {
            let v = GaussianRational::parse(s).unwrap();
            assert_eq!(v.to_string(), s, "round trip through `{s}`");
        }
        // Accepted variants that re-render canonically.
        assert_eq!(GaussianRational::parse("1*i").unwrap(), GaussianRational::i());
        assert_eq!(GaussianRational::parse(" 2 + 1i ").unwrap().to_string(), "2+i");
        assert!(GaussianRational::parse("").is_err());
        assert!(GaussianRational::parse("1//2").is_err());
        assert!(GaussianRational::parse("1/0").is_err());
        assert!(GaussianRational::parse("+-3").is_err());
    }

    #[test]
    fn pow_and_conj() {
        let x = GaussianRational::from_parts(1, 1, 1, 1); // 1 + i
        assert_eq!(x.pow(2), GaussianRational::from_parts(0, 1, 2, 1));
        assert_eq!(x.pow(0), GaussianRational::one());
        assert_eq!(&x * &x.conj(), GaussianRational::from_int(2));
    }
}
