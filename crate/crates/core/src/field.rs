//! Exact ground-field arithmetic: the rationals and prime fields.
//!
//! A [`Scalar`] carries its own field tag, so values can be combined with the
//! ordinary operators. Mixing scalars of different fields is a programming
//! error and panics; every public series operation checks field agreement
//! first and reports [`Error::RingMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The residue field k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroundField {
    Rationals,
    Prime(u64),
}

impl GroundField {
    /// A prime field, rejecting composite moduli and moduli too large for
    /// 128-bit intermediate products.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 62 {
            return Err(Error::InvalidField(format!("modulus {p} is too large")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(GroundField::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            GroundField::Rationals => 0,
            GroundField::Prime(p) => *p,
        }
    }

    /// True when `n` is divisible by the characteristic (never in characteristic 0).
    pub fn char_divides(&self, n: u64) -> bool {
        match self {
            GroundField::Rationals => false,
            GroundField::Prime(p) => n.is_multiple_of(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            GroundField::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            GroundField::Prime(p) => Scalar::Mod {
                v: v.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            GroundField::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            GroundField::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::Mod {
                    v: r.to_u64().expect("reduced residue fits"),
                    p: *p,
                }
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        let inv = d
            .inv()
            .ok_or_else(|| Error::Parse(format!("denominator {den} vanishes in {self}")))?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// Parses `"n"` or `"n/d"`; prime-field inputs are reduced.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        match self {
            GroundField::Rationals => Ok(Scalar::Rat(BigRational::new(n, d))),
            GroundField::Prime(_) => {
                let den = self
                    .from_bigint(&d)
                    .inv()
                    .ok_or_else(|| Error::Parse(format!("denominator of {s:?} vanishes mod p")))?;
                Ok(&self.from_bigint(&n) * &den)
            }
        }
    }
}

impl fmt::Display for GroundField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundField::Rationals => write!(f, "Q"),
            GroundField::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact element of a [`GroundField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { v: u64, p: u64 },
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, b, p);
        }
        b = mod_mul(b, b, p);
        e >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> GroundField {
        match self {
            Scalar::Rat(_) => GroundField::Rationals,
            Scalar::Mod { p, .. } => GroundField::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { v, p } => Scalar::Mod {
                v: mod_pow(*v, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn pow(&self, e: u64) -> Scalar {
        match self {
            Scalar::Rat(r) => {
                let mut acc = BigRational::one();
                for _ in 0..e {
                    acc *= r;
                }
                Scalar::Rat(acc)
            }
            Scalar::Mod { v, p } => Scalar::Mod {
                v: mod_pow(*v, e, *p),
                p: *p,
            },
        }
    }

    /// A square root in the ground field, if one exists. Over Q the
    /// nonnegative root is returned; over F_p the smaller residue.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
                    Some(Scalar::Rat(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Scalar::Mod { v, p } => {
                let root = tonelli_shanks(*v, *p)?;
                Some(Scalar::Mod {
                    v: root.min(p - root),
                    p: *p,
                })
            }
        }
    }

    /// The value as a small integer, when it is one (used for display only).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rat(r) if r.is_integer() => r.numer().to_i64(),
            Scalar::Rat(_) => None,
            Scalar::Mod { v, .. } => i64::try_from(*v).ok(),
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.field(), other.field(), "mixed ground fields");
    }
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(n);
    }
    if mod_pow(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while mod_pow(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(n, q, p);
    let mut r = mod_pow(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mod_mul(tt, tt, p);
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mod_mul(b, b, p);
        t = mod_mul(t, c, p);
        r = mod_mul(r, b, p);
    }
    Some(r)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, .. }) => Scalar::Mod {
                v: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, .. }) => Scalar::Mod {
                v: ((*a as u128 + *p as u128 - *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, .. }) => Scalar::Mod {
                v: mod_mul(*a, *b, *p),
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { v, p } => Scalar::Mod {
                v: (p - v) % p,
                p: *p,
            },
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = GroundField::prime(5).unwrap();
        let a = f.from_i64(2);
        let b = f.from_i64(3);
        assert!((&a + &b).is_zero());
        assert_eq!(&a * &b, f.one());
        assert_eq!(a.inv().unwrap(), b);
        assert_eq!(f.from_i64(-1), f.from_i64(4));
    }

    #[test]
    fn parse_and_display_are_canonical() {
        let q = GroundField::Rationals;
        assert_eq!(q.parse("6/-4").unwrap().to_string(), "-3/2");
        assert_eq!(q.parse("4/2").unwrap().to_string(), "2");
        let f7 = GroundField::prime(7).unwrap();
        assert_eq!(f7.parse("1/2").unwrap().to_string(), "4");
        assert!(f7.parse("1/7").is_err());
        assert!(q.parse("x").is_err());
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(GroundField::prime(9).is_err());
        assert!(GroundField::prime(1).is_err());
        assert!(GroundField::prime(13).is_ok());
    }

    #[test]
    fn square_roots() {
        let q = GroundField::Rationals;
        assert_eq!(q.parse("9/4").unwrap().sqrt(), Some(q.parse("3/2").unwrap()));
        assert_eq!(q.from_i64(2).sqrt(), None);
        assert_eq!(q.from_i64(-1).sqrt(), None);
        for p in [3u64, 5, 7, 13, 17, 97, 65537] {
            let f = GroundField::prime(p).unwrap();
            for v in 0..p.min(200) {
                let s = f.from_i64(v as i64);
                let is_sq = (0..p).any(|w| mod_mul(w, w, p) == v);
                match s.sqrt() {
                    Some(r) => assert_eq!(&r * &r, s),
                    None => assert!(!is_sq, "missed root of {v} mod {p}"),
                }
            }
        }
    }
}
