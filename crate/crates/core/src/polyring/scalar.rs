//! Coefficient domains.
//!
//! Scalars deliberately do not implement the `std::ops` traits, so the
//! method names below never collide with operator dispatch.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A commutative ring with identity.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// `None` exactly when `self` is zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

/// Rings of characteristic zero, with the canonical embedding of `Q`.
pub trait RationalAlgebra: Ring {
    fn from_rational(q: &Rational) -> Self;
}

/// Rings containing a fixed primitive cube root of unity.
pub trait HasZeta3: Ring {
    fn zeta3() -> Self;
}

/// Exact rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn from_parts(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(num, den)))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Height `max(|num|, |den|)`.
    pub fn height(&self) -> BigInt {
        let n = self.numer().abs();
        let d = self.denom().clone();
        if n > d {
            n
        } else {
            d
        }
    }

    /// The rational cube root, if there is one.
    pub fn cube_root(&self) -> Option<Rational> {
        let n = integer_cube_root(self.numer())?;
        let d = integer_cube_root(self.denom())?;
        Some(Rational(BigRational::new(n, d)))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

fn integer_cube_root(n: &BigInt) -> Option<BigInt> {
    let r = n.abs().cbrt();
    let r = if n.is_negative() { -r } else { r };
    if &(&r * &r * &r) == n {
        Some(r)
    } else {
        None
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| format!("bad rational `{s}`"))?;
        let d: BigInt = d.parse().map_err(|_| format!("bad rational `{s}`"))?;
        Rational::from_parts(n, d).ok_or_else(|| format!("zero denominator in `{s}`"))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(Rational::from_int(n)),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
}

impl RationalAlgebra for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

/// The prime field `F_P`, for primes `P < 2^16`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    const CHECK: () = assert!(P >= 2 && P < (1 << 16), "modulus must lie in [2, 2^16)");

    pub fn new(n: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        Fp(n.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub const MODULUS: u32 = P;

    /// Reduction of a rational number; fails when `P` divides the denominator.
    pub fn try_from_rational(q: &Rational) -> Option<Self> {
        let p = BigInt::from(P);
        let n = q.numer().mod_floor(&p).to_i64()?;
        let d = q.denom().mod_floor(&p).to_i64()?;
        if d == 0 {
            return None;
        }
        Fp::<P>::new(d).inv().map(|di| Fp::<P>::new(n).mul(&di))
    }

    /// All elements, `0, 1, ..., P-1`.
    pub fn elements() -> impl Iterator<Item = Self> {
        (0..P).map(Fp)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u32> Ring for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn from_int(n: i64) -> Self {
        Fp::new(n)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat; P is assumed prime.
        Some(self.pow(P - 2))
    }
}

/// The cyclotomic field `Q(zeta)`, `zeta^2 + zeta + 1 = 0`, as `a + b*zeta`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QZeta3 {
    pub a: Rational,
    pub b: Rational,
}

impl QZeta3 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QZeta3 { a, b }
    }

    /// Field norm `a^2 - ab + b^2`.
    pub fn norm(&self) -> Rational {
        self.a.mul(&self.a).sub(&self.a.mul(&self.b)).add(&self.b.mul(&self.b))
    }

    /// Complex conjugation, `zeta -> zeta^2`.
    pub fn conj(&self) -> Self {
        QZeta3 {
            a: self.a.sub(&self.b),
            b: self.b.neg(),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }
}

impl fmt::Display for QZeta3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*zeta", self.b),
            (false, false) if self.b.is_negative() => {
                write!(f, "({}-{}*zeta)", self.a, self.b.abs())
            }
            (false, false) => write!(f, "({}+{}*zeta)", self.a, self.b),
        }
    }
}

impl fmt::Debug for QZeta3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ring for QZeta3 {
    fn zero() -> Self {
        QZeta3::default()
    }
    fn one() -> Self {
        QZeta3::new(Rational::one(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        QZeta3::new(self.a.add(&rhs.a), self.b.add(&rhs.b))
    }
    fn sub(&self, rhs: &Self) -> Self {
        QZeta3::new(self.a.sub(&rhs.a), self.b.sub(&rhs.b))
    }
    fn mul(&self, rhs: &Self) -> Self {
        let bd = self.b.mul(&rhs.b);
        QZeta3::new(
            self.a.mul(&rhs.a).sub(&bd),
            self.a.mul(&rhs.b).add(&self.b.mul(&rhs.a)).sub(&bd),
        )
    }
    fn neg(&self) -> Self {
        QZeta3::new(self.a.neg(), self.b.neg())
    }
    fn from_int(n: i64) -> Self {
        QZeta3::new(Rational::from_int(n), Rational::zero())
    }
}

impl Field for QZeta3 {
    fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        let c = self.conj();
        Some(QZeta3::new(c.a.mul(&n), c.b.mul(&n)))
    }
}

impl RationalAlgebra for QZeta3 {
    fn from_rational(q: &Rational) -> Self {
        QZeta3::new(q.clone(), Rational::zero())
    }
}

impl HasZeta3 for QZeta3 {
    fn zeta3() -> Self {
        QZeta3::new(Rational::zero(), Rational::one())
    }
}

impl PartialOrd for QZeta3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QZeta3 {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.a, &self.b).cmp(&(&other.a, &other.b))
    }
}
