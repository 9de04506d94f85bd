//! Exact scalars over ℚ or a prime field of odd characteristic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::Error;

/// Coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field 𝔽_p; characteristic 2 and non-primes are rejected.
    pub fn prime(p: u64) -> Result<Field, Error> {
        if p == 2 {
            return Err(Error::Field("characteristic 2 is not supported".into()));
        }
        if p < 3 || !is_prime(p) {
            return Err(Error::Field(format!("{p} is not an odd prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::Field(format!("prime {p} is too large")));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `q` or `p=PRIME`.
    pub fn parse(s: &str) -> Result<Field, Error> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("p=") {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::Field(format!("bad prime '{rest}'")))?;
            return Field::prime(p);
        }
        Err(Error::Field(format!("unknown field '{s}' (expected q or p=PRIME)")))
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::P(n.rem_euclid(p as i64) as u64, p),
        }
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn rational(self, r: &BigRational) -> Result<Scalar, Error> {
        match self {
            Field::Rational => Ok(Scalar::Q(r.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let n = r.numer().mod_floor(&pb).to_u64().unwrap();
                let d = r.denom().mod_floor(&pb).to_u64().unwrap();
                if d == 0 {
                    return Err(Error::Field(format!("{r} has no image in F_{p}")));
                }
                Ok(Scalar::P(n * inv_mod(d, p) % p, p))
            }
        }
    }

    pub fn describe(self) -> String {
        match self {
            Field::Rational => "q".into(),
            Field::Prime(p) => format!("p={p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p < 2^31 so products fit in u64
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// An exact field element. Mixed operations coerce a rational operand into
/// the prime field of the other operand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    P(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::P(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::P(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::P(v, _) => *v == 1,
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero scalar");
        match self {
            Scalar::Q(r) => Scalar::Q(r.recip()),
            Scalar::P(v, p) => Scalar::P(inv_mod(*v, *p), *p),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// True when the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_negative(),
            Scalar::P(..) => false,
        }
    }

    fn coerce(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match (a, b) {
            (Scalar::Q(r), Scalar::P(_, p)) => (Field::Prime(*p).rational(r).expect("coercion"), b.clone()),
            (Scalar::P(_, p), Scalar::Q(r)) => (a.clone(), Field::Prime(*p).rational(r).expect("coercion")),
            _ => (a.clone(), b.clone()),
        }
    }

    fn binop(&self, other: &Scalar, q: impl Fn(&BigRational, &BigRational) -> BigRational, pf: impl Fn(u64, u64, u64) -> u64) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(q(a, b)),
            (Scalar::P(a, p), Scalar::P(b, p2)) => {
                assert_eq!(p, p2, "mixed prime fields");
                Scalar::P(pf(*a, *b, *p), *p)
            }
            _ => {
                let (a, b) = Scalar::coerce(self, other);
                a.binop(&b, q, pf)
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::P(v, _) => write!(f, "{v}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.binop(o, |a, b| a + b, |a, b, p| (a + b) % p)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.binop(o, |a, b| a - b, |a, b, p| (a + p - b) % p)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.binop(o, |a, b| a * b, |a, b, p| a * b % p)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(-r),
            Scalar::P(v, p) => Scalar::P((p - v) % p, *p),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_char_two_and_composites() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(7).is_ok());
        assert!(Field::parse("p=2").is_err());
        assert_eq!(Field::parse("q").unwrap(), Field::Rational);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.int(3);
        let b = f.int(5);
        assert_eq!((&a + &b).to_string(), "1");
        assert_eq!((&a * &b).to_string(), "1");
        assert!((&(&a / &b) * &b - a.clone()).is_zero());
        assert_eq!((-&a).to_string(), "4");
        assert_eq!(f.int(-1).to_string(), "6");
    }

    #[test]
    fn rational_image_in_prime_field() {
        let f = Field::prime(5).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.rational(&half).unwrap().to_string(), "3");
        let fifth = BigRational::new(1.into(), 5.into());
        assert!(f.rational(&fifth).is_err());
    }

    #[test]
    fn rationals_are_exact() {
        let f = Field::Rational;
        let third = &f.one() / &f.int(3);
        assert!((&(&third + &third) + &third).is_one());
        assert_eq!(third.to_string(), "1/3");
    }
}
