//! Exact scalar arithmetic over prime fields `F_p` (p < 2^31) and the rationals.
//!
//! Every algorithm in this crate is written once against [`Field`]/[`Scalar`];
//! the coefficient field is selected at runtime by tagging containers with a
//! [`Field`] descriptor. `F_p` elements are canonical representatives in
//! `[0, p)`; rationals are kept fully reduced with positive denominator (the
//! invariant maintained by [`num_rational::BigRational`]).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field descriptor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Field {
    /// The prime field `F_p`, `p` prime, `p < 2^31`.
    Fp(u32),
    /// The rational numbers.
    Q,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    let p = p as u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// Prime field constructor; rejects composite or oversized moduli.
    pub fn fp(p: u32) -> Result<Field> {
        if !is_prime(p) || p > (1 << 31) - 1 {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Fp(p))
    }

    /// Parses the CLI descriptor syntax `Fp:<prime>` or `Q`.
    pub fn parse(s: &str) -> Result<Field> {
        if s == "Q" {
            return Ok(Field::Q);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            let p: u32 = rest
                .parse()
                .map_err(|_| Error::BadFieldDescriptor(s.to_string()))?;
            return Field::fp(p);
        }
        Err(Error::BadFieldDescriptor(s.to_string()))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Fp(_) => Scalar::Fp(0),
            Field::Q => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Fp(_) => Scalar::Fp(1),
            Field::Q => Scalar::Q(BigRational::one()),
        }
    }

    pub fn from_i64(&self, k: i64) -> Scalar {
        match self {
            Field::Fp(p) => {
                let p = *p as i64;
                Scalar::Fp(k.rem_euclid(p) as u64)
            }
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(k))),
        }
    }

    /// `true` iff the scalar was produced by this field.
    pub fn owns(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Fp(p), Scalar::Fp(v)) => *v < *p as u64,
            (Field::Q, Scalar::Q(_)) => true,
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v == 0,
            Scalar::Q(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Fp(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % *p as u64),
            (Field::Q, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Fp(p), Scalar::Fp(x)) => {
                let p = *p as u64;
                Scalar::Fp(if *x == 0 { 0 } else { p - x })
            }
            (Field::Q, Scalar::Q(x)) => Scalar::Q(-x),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            // p < 2^31 so the product fits in u64.
            (Field::Fp(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x * y) % *p as u64),
            (Field::Q, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    /// Multiplicative inverse of a nonzero element.
    ///
    /// Panics on zero: over a field every pivot this is called on is nonzero,
    /// so a zero argument is a bug in the caller.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!self.is_zero(a), "inverse of zero");
        match (self, a) {
            (Field::Fp(p), Scalar::Fp(x)) => Scalar::Fp(mod_inverse(*x, *p as u64)),
            (Field::Q, Scalar::Q(x)) => Scalar::Q(x.recip()),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Every nonzero element for small prime fields, used by enumerations.
    pub fn nonzero_elements(&self) -> Vec<Scalar> {
        match self {
            Field::Fp(p) => (1..*p as u64).map(Scalar::Fp).collect(),
            Field::Q => panic!("cannot enumerate Q"),
        }
    }

    /// All elements for small prime fields, used by enumerations.
    pub fn elements(&self) -> Vec<Scalar> {
        match self {
            Field::Fp(p) => (0..*p as u64).map(Scalar::Fp).collect(),
            Field::Q => panic!("cannot enumerate Q"),
        }
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Fp(p) => write!(f, "Fp:{p}"),
            Field::Q => write!(f, "Q"),
        }
    }
}

/// Extended-Euclid inverse of `a` modulo prime `m`.
fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "modulus not coprime to element");
    old_s.rem_euclid(m as i128) as u64
}

/// A field element: a canonical representative in `[0, p)` or a reduced
/// rational. The ambient [`Field`] is carried by containers, not elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Fp(u64),
    Q(BigRational),
}

impl Scalar {
    /// Rational constructor; reduces and normalizes the sign.
    pub fn rational(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Fp(v) => write!(f, "{v}"),
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// Parses the textual form produced by `Display`: an integer, or `a/b`.
pub fn parse_scalar(field: Field, s: &str) -> Result<Scalar> {
    let bad = || Error::Invalid(format!("malformed scalar `{s}`"));
    match field {
        Field::Fp(_) => {
            let v: i64 = s.trim().parse().map_err(|_| bad())?;
            Ok(field.from_i64(v))
        }
        Field::Q => {
            let t = s.trim();
            let (num, den) = match t.split_once('/') {
                Some((n, d)) => (n, d),
                None => (t, "1"),
            };
            let num: BigInt = num.parse().map_err(|_| bad())?;
            let den: BigInt = den.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            let mut r = BigRational::new(num, den);
            if r.denom().is_negative() {
                r = -r;
            }
            Ok(Scalar::Q(r))
        }
    }
}
