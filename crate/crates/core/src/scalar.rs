//! Exact scalars: arbitrary-precision rationals and elements `a + b·√d` of a
//! real quadratic field.
//!
//! Rationals are [`num_rational::BigRational`], which keeps every value in
//! lowest terms with a positive denominator. [`QuadExt`] carries its radicand
//! with each value; a value with zero radical part is a plain rational and is
//! stored with `d = 0` so it mixes freely with any field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type ExactScalar = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`.
pub fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Splits a non-negative integer `k` into `(s, d)` with `k = s²·d` and `d`
/// squarefree. Trial division; radicands here are small.
pub fn squarefree_decompose(k: &BigInt) -> (BigInt, BigInt) {
    assert!(!k.is_negative(), "squarefree_decompose of a negative number");
    if k.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let mut rest = k.clone();
    let mut square = BigInt::one();
    let mut core = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        square *= num_traits::pow(p.clone(), (e / 2) as usize);
        if e % 2 == 1 {
            core *= &p;
        }
        p += 1u32;
    }
    core *= rest;
    (square, core)
}

/// Exact field operations used by the generic matrix routines.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &BigRational) -> Self;
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

/// An element `a + b·√d` of `Q(√d)`.
///
/// `d` is squarefree and not 1 whenever `b ≠ 0`. Values with `b = 0` are
/// stored with `d = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadExt {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

impl QuadExt {
    /// Builds `a + b√d`, folding square factors of `d` into `b`.
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Result<Self> {
        if d.is_negative() {
            return Err(Error::InvalidParameters(format!("negative radicand {d}")));
        }
        let (s, core) = squarefree_decompose(&d);
        let (a, b) = if core.is_one() {
            (a + b * BigRational::from_integer(s), BigRational::zero())
        } else {
            (a, b * BigRational::from_integer(s))
        };
        Ok(Self::canonical(a, b, core))
    }

    fn canonical(a: BigRational, b: BigRational, d: BigInt) -> Self {
        if b.is_zero() || d.is_zero() {
            QuadExt {
                a,
                b: BigRational::zero(),
                d: BigInt::zero(),
            }
        } else {
            QuadExt { a, b, d }
        }
    }

    pub fn rational(a: BigRational) -> Self {
        Self::canonical(a, BigRational::zero(), BigInt::zero())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// `a - b√d`.
    pub fn conjugate(&self) -> Self {
        Self::canonical(self.a.clone(), -self.b.clone(), self.d.clone())
    }

    /// `a² - d·b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(self.d.clone()) * &self.b * &self.b
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt> {
        match (self.d.is_zero(), other.d.is_zero()) {
            (true, _) => Ok(other.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == other.d => Ok(self.d.clone()),
            _ => Err(Error::RadicandMismatch(
                self.d.to_string(),
                other.d.to_string(),
            )),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::canonical(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::canonical(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dr = BigRational::from_integer(d.clone());
        let a = &self.a * &other.a + dr * &self.b * &other.b;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::canonical(a, b, d))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        let inv = Field::inv(other).ok_or(Error::Singular)?;
        self.try_mul(&inv)
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            // opposite signs: compare a² against d·b²
            (x, _) => {
                let a2 = &self.a * &self.a;
                let db2 = BigRational::from_integer(self.d.clone()) * &self.b * &self.b;
                match a2.cmp(&db2) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }

    /// Lowest common denominator of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_sub(other).ok().map(|diff| diff.signum())
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", format_rational(&self.a))
        } else {
            write!(
                f,
                "{} + {}·√{}",
                format_rational(&self.a),
                format_rational(&self.b),
                self.d
            )
        }
    }
}

impl From<BigRational> for QuadExt {
    fn from(a: BigRational) -> Self {
        QuadExt::rational(a)
    }
}

// Operator forms panic on mixed radicands; use the `try_*` methods when the
// operands may come from different fields.
macro_rules! quad_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$try(&rhs).expect("quadratic field mismatch")
            }
        }
        impl<'a> $trait<&'a QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &'a QuadExt) -> QuadExt {
                self.$try(rhs).expect("quadratic field mismatch")
            }
        }
    };
}

quad_op!(Add, add, try_add);
quad_op!(Sub, sub, try_sub);
quad_op!(Mul, mul, try_mul);
quad_op!(Div, div, try_div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::canonical(-self.a, -self.b, self.d)
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(BigRational::one())
    }
}

impl Field for QuadExt {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            return None;
        }
        let norm = self.norm();
        let c = self.conjugate();
        Some(QuadExt::canonical(&c.a / &norm, &c.b / &norm, c.d))
    }
    fn from_rational(r: &BigRational) -> Self {
        QuadExt::rational(r.clone())
    }
}

/// Both roots of `x² + b·x + c`, larger root first.
pub fn quad_roots(b: &BigRational, c: &BigRational) -> Result<(QuadExt, QuadExt)> {
    let disc = b * b - BigRational::from_integer(BigInt::from(4)) * c;
    if disc.is_negative() {
        return Err(Error::NegativeDiscriminant(disc));
    }
    // √(p/q) = √(p·q)/q
    let pq = disc.numer() * disc.denom();
    let (s, d) = squarefree_decompose(&pq);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let centre = -b * &half;
    let spread = BigRational::new(s, disc.denom().clone()) * &half;
    let (r1, r2) = if d.is_one() || d.is_zero() {
        (
            QuadExt::rational(&centre + &spread),
            QuadExt::rational(&centre - &spread),
        )
    } else {
        (
            QuadExt::canonical(centre.clone(), spread.clone(), d.clone()),
            QuadExt::canonical(centre, -spread, d),
        )
    };
    Ok((r1, r2))
}

/// Greatest common divisor of a list of integers (non-negative, 0 for empty
/// or all-zero input).
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive_int(v: &[BigInt]) -> Vec<BigInt> {
    let g = gcd_all(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators of a rational vector and divides by the content. The
/// direction (sign) is preserved.
pub fn primitive_from_rationals(v: &[BigRational]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive_int(&ints)
}

/// Normalizes a vector over `Q(√d)`: scale so that the first nonzero entry
/// is rational, clear denominators, divide by the content of all rational
/// and radical parts, then orient so the coordinate sum is non-negative.
pub fn primitive_quad(v: &[QuadExt]) -> Vec<QuadExt> {
    let Some(lead) = v.iter().find(|x| !Zero::is_zero(*x)) else {
        return v.to_vec();
    };
    let lead_inv = Field::inv(lead).expect("nonzero");
    let scaled: Vec<QuadExt> = v.iter().map(|x| x * &lead_inv).collect();
    let l = scaled
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
    let lr = BigRational::from_integer(l);
    let ints: Vec<(BigInt, BigInt, BigInt)> = scaled
        .iter()
        .map(|x| {
            (
                (&x.a * &lr).to_integer(),
                (&x.b * &lr).to_integer(),
                x.d.clone(),
            )
        })
        .collect();
    let g = ints
        .iter()
        .fold(BigInt::zero(), |acc, (a, b, _)| acc.gcd(a).gcd(b));
    let mut out: Vec<QuadExt> = ints
        .into_iter()
        .map(|(a, b, d)| {
            QuadExt::canonical(
                BigRational::new(a, g.clone()),
                BigRational::new(b, g.clone()),
                d,
            )
        })
        .collect();
    let sum = out.iter().fold(QuadExt::zero(), |acc, x| &acc + x);
    if sum.signum() == Ordering::Less {
        out = out.into_iter().map(|x| -x).collect();
    }
    out
}

/// Sign of a rational as an [`Ordering`] against zero.
pub fn sign_of(r: &BigRational) -> Sign {
    if r.is_zero() {
        Sign::NoSign
    } else if r.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Integer square root test.
pub fn is_perfect_square(k: &BigInt) -> bool {
    !k.is_negative() && {
        let r = k.sqrt();
        &r * &r == *k
    }
}
