//! Exact real numbers of the form `a + b*sqrt(d)` with rational `a`, `b` and a
//! square-free radicand `d`, plus the concrete rank-one groups built from them.
//!
//! All order decisions are exact. Values in two different quadratic fields can
//! still be compared (`compare_cross`); they can only be added when at most one
//! radical is involved.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Splits `n` as `s^2 * f` with `f` square-free, returning `(s, f)`.
pub fn square_free_decomposition(mut n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    free *= n;
    (square, free)
}

pub fn is_square_free(n: u64) -> bool {
    n >= 1 && square_free_decomposition(n).0 == 1
}

fn rat_sign(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// An exact real `a + b*sqrt(d)`.
///
/// Canonical form: `d` is square-free or zero, and `b = 0` exactly when `d = 0`.
/// Structural equality is therefore value equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Scalar {
        let (s, f) = square_free_decomposition(d);
        let b = b * BigRational::from_integer(BigInt::from(s));
        if b.is_zero() || f == 0 {
            return Scalar::rational(a);
        }
        if f == 1 {
            return Scalar::rational(a + b);
        }
        Scalar { a, b, d: f }
    }

    pub fn rational(a: BigRational) -> Scalar {
        Scalar {
            a,
            b: BigRational::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Scalar {
        Scalar::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `b * sqrt(d)`.
    pub fn sqrt_times(b: BigRational, d: u64) -> Scalar {
        Scalar::new(BigRational::zero(), b, d)
    }

    pub fn zero() -> Scalar {
        Scalar::rational(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_coeff(&self) -> &BigRational {
        &self.b
    }

    /// The radicand; `0` for rational values.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn is_integer(&self) -> bool {
        self.d == 0 && self.a.is_integer()
    }

    /// Exact sign, in `{-1, 0, 1}`.
    pub fn sign(&self) -> i8 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        // opposite signs: compare a^2 with b^2 d (never equal for square-free d > 1)
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        let d = common_radicand(self.d, other.d)?;
        Ok(Scalar::new(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&-other)
    }

    /// Multiplication by a rational.
    pub fn scale(&self, r: &BigRational) -> Scalar {
        Scalar::new(&self.a * r, &self.b * r, self.d)
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        if self.d == 0 {
            return self.a.floor().to_integer();
        }
        // floor(b sqrt d) from an integer square root, then correct by at most one
        let t = self.b.abs();
        let (p, q) = (t.numer().clone(), t.denom().clone());
        let root = (&p * &p * BigInt::from(self.d)).sqrt();
        let mut radical_floor = root.div_floor(&q);
        if self.b.is_negative() {
            // floor(-u) = -floor(u) - 1 for irrational u
            radical_floor = -radical_floor - 1;
        }
        let mut n = self.a.floor().to_integer() + radical_floor;
        let me = self.clone();
        while compare_cross(&Scalar::rational(BigRational::from_integer(n.clone())), &me)
            == Ordering::Greater
        {
            n -= 1;
        }
        while compare_cross(
            &Scalar::rational(BigRational::from_integer(&n + 1)),
            &me,
        ) != Ordering::Greater
        {
            n += 1;
        }
        n
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Floating point approximation, for diagnostics only.
    pub fn approx(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }
}

fn common_radicand(d: u64, e: u64) -> Result<u64> {
    match (d, e) {
        (0, e) => Ok(e),
        (d, 0) => Ok(d),
        (d, e) if d == e => Ok(d),
        (d, e) => Err(Error::MixedRadicals(d, e)),
    }
}

/// Exact sign of `u + v*sqrt(d) + w*sqrt(e)` for square-free `d != e`.
fn sign_two_radicals(u: &BigRational, v: &BigRational, d: u64, w: &BigRational, e: u64) -> i8 {
    let s1 = Scalar::new(u.clone(), v.clone(), d).sign();
    let s2 = rat_sign(w);
    if s2 == 0 {
        return s1;
    }
    if s1 == 0 || s1 == s2 {
        return if s1 == 0 { s2 } else { s1 };
    }
    // |u + v sqrt d| vs |w| sqrt e, compared by squaring both sides
    let dq = BigRational::from_integer(BigInt::from(d));
    let eq = BigRational::from_integer(BigInt::from(e));
    let two = BigRational::from_integer(BigInt::from(2));
    let diff = Scalar::new(u * u + v * v * dq - w * w * eq, two * u * v, d);
    match diff.sign() {
        1 => s1,
        -1 => s2,
        _ => 0,
    }
}

/// Exact comparison of two scalars, possibly living in different quadratic
/// fields.
pub fn compare_cross(x: &Scalar, y: &Scalar) -> Ordering {
    let u = &x.a - &y.a;
    let s = match common_radicand(x.d, y.d) {
        Ok(d) => Scalar::new(u, &x.b - &y.b, d).sign(),
        Err(_) => sign_two_radicals(&u, &x.b, x.d, &-y.b.clone(), y.d),
    };
    s.cmp(&0)
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_cross(self, other)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Panics when the operands carry two different radicals; use
/// [`Scalar::checked_add`] when that can happen.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar addition across quadratic fields")
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &-rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Scalar {
        Scalar::rational(q)
    }
}

impl fmt::Display for Scalar {
    /// `a` or `a + b*sqrt(d)`, always in lowest terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a)?;
        if self.d != 0 {
            write!(f, " + {}*sqrt({})", self.b, self.d)?;
        }
        Ok(())
    }
}

/// A concrete rank-one ordered group, realized as a subgroup of the reals.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RankOneKind {
    IntegersZ,
    RationalsQ,
    /// `Z + Z*sqrt(d)`
    QuadZ(u64),
    /// `Q + Q*sqrt(d)`
    QuadQ(u64),
}

impl RankOneKind {
    pub fn quad_z(d: u64) -> Result<RankOneKind> {
        check_quad_radicand(d)?;
        Ok(RankOneKind::QuadZ(d))
    }

    pub fn quad_q(d: u64) -> Result<RankOneKind> {
        check_quad_radicand(d)?;
        Ok(RankOneKind::QuadQ(d))
    }

    pub fn radicand(self) -> Option<u64> {
        match self {
            RankOneKind::QuadZ(d) | RankOneKind::QuadQ(d) => Some(d),
            _ => None,
        }
    }

    pub fn validate(self) -> Result<()> {
        match self.radicand() {
            Some(d) => check_quad_radicand(d),
            None => Ok(()),
        }
    }

    pub fn is_divisible(self) -> bool {
        matches!(self, RankOneKind::RationalsQ | RankOneKind::QuadQ(_))
    }
}

fn check_quad_radicand(d: u64) -> Result<()> {
    if d >= 2 && is_square_free(d) {
        Ok(())
    } else {
        Err(Error::InvalidRadicand(d, "quadratic factors need a square-free radicand >= 2".into()))
    }
}

impl fmt::Display for RankOneKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankOneKind::IntegersZ => write!(f, "Z"),
            RankOneKind::RationalsQ => write!(f, "Q"),
            RankOneKind::QuadZ(d) => write!(f, "Z[sqrt {d}]"),
            RankOneKind::QuadQ(d) => write!(f, "Q[sqrt {d}]"),
        }
    }
}

/// Membership of `x` in the subgroup of the reals designated by `kind`.
pub fn contains(kind: RankOneKind, x: &Scalar) -> bool {
    match kind {
        RankOneKind::IntegersZ => x.is_integer(),
        RankOneKind::RationalsQ => x.is_rational(),
        RankOneKind::QuadZ(d) => {
            (x.d == 0 || x.d == d) && x.a.is_integer() && x.b.is_integer()
        }
        RankOneKind::QuadQ(d) => x.d == 0 || x.d == d,
    }
}

pub fn divisible_hull_kind(kind: RankOneKind) -> RankOneKind {
    match kind {
        RankOneKind::IntegersZ => RankOneKind::RationalsQ,
        RankOneKind::QuadZ(d) => RankOneKind::QuadQ(d),
        k => k,
    }
}

/// Whether the group has a least positive element. Only `Z` does; `Z + Z*sqrt(d)`
/// is dense.
pub fn is_discrete_kind(kind: RankOneKind) -> bool {
    kind == RankOneKind::IntegersZ
}

/// Whether multiplication by the positive rational `r` maps `dom` into `cod`.
pub fn scales_into(dom: RankOneKind, cod: RankOneKind, r: &BigRational) -> bool {
    use RankOneKind::*;
    if !r.is_positive() {
        return false;
    }
    match (dom, cod) {
        (IntegersZ, IntegersZ) | (IntegersZ, QuadZ(_)) => r.is_integer(),
        (IntegersZ, RationalsQ) | (IntegersZ, QuadQ(_)) => true,
        (RationalsQ, RationalsQ) | (RationalsQ, QuadQ(_)) => true,
        (QuadZ(d), QuadZ(e)) => d == e && r.is_integer(),
        (QuadZ(d), QuadQ(e)) | (QuadQ(d), QuadQ(e)) => d == e,
        _ => false,
    }
}
