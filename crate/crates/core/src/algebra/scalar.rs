use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Element of `F_p` for a runtime prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: u32,
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl Fp {
    pub fn new(value: i64, p: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Fp {
            value: value.rem_euclid(i64::from(p)) as u32,
            p,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Reduces an exact rational modulo `p`.
    pub fn from_rational(q: &BigRational, p: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let num = reduce_bigint(q.numer(), p);
        let den = reduce_bigint(q.denom(), p);
        if den == 0 {
            return Err(AlgebraError::NotInvertible { value: q.to_string(), p });
        }
        Ok(Fp { value: mul_mod(num, inv_mod(den, p), p), p })
    }

    pub fn inverse(self) -> Option<Fp> {
        (self.value != 0).then(|| Fp { value: inv_mod(self.value, self.p), p: self.p })
    }
}

pub(crate) fn reduce_bigint(x: &BigInt, p: u32) -> u32 {
    let r = x % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u32().expect("residue fits in u32")
}

pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    (u64::from(a) * u64::from(b) % u64::from(p)) as u32
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat; p is prime
    let mut result = 1u32;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

/// Coefficient domain of a [`Scalar`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Rational,
    Fp(u32),
}

/// Exact scalar: an arbitrary-precision rational or an element of `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Fp(Fp),
}

impl Scalar {
    pub fn int(v: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(v.into()))
    }

    pub fn fp(v: i64, p: u32) -> Result<Self, AlgebraError> {
        Fp::new(v, p).map(Scalar::Fp)
    }

    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rational(_) => Domain::Rational,
            Scalar::Fp(x) => Domain::Fp(x.p),
        }
    }

    pub fn zero_in(domain: Domain) -> Self {
        match domain {
            Domain::Rational => Scalar::Rational(BigRational::zero()),
            Domain::Fp(p) => Scalar::Fp(Fp { value: 0, p }),
        }
    }

    /// Maps an exact rational into `domain`.
    pub fn from_rational_in(q: &BigRational, domain: Domain) -> Result<Self, AlgebraError> {
        match domain {
            Domain::Rational => Ok(Scalar::Rational(q.clone())),
            Domain::Fp(p) => Fp::from_rational(q, p).map(Scalar::Fp),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Fp(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Fp(x) => x.value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Fp(a), Scalar::Fp(b)) if a.p == b.p => Ok(Scalar::Fp(Fp {
                value: ((u64::from(a.value) + u64::from(b.value)) % u64::from(a.p)) as u32,
                p: a.p,
            })),
            _ => Err(AlgebraError::MixedDomains),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Fp(a), Scalar::Fp(b)) if a.p == b.p => Ok(Scalar::Fp(Fp {
                value: mul_mod(a.value, b.value, a.p),
                p: a.p,
            })),
            _ => Err(AlgebraError::MixedDomains),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Fp(a) => Scalar::Fp(Fp {
                value: (a.p - a.value) % a.p,
                p: a.p,
            }),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = match self.domain() {
            Domain::Rational => Scalar::int(1),
            Domain::Fp(p) => Scalar::Fp(Fp { value: 1, p }),
        };
        for _ in 0..e {
            acc = acc.mul(self).expect("same domain");
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Fp(x) => write!(f, "{}", x.value),
        }
    }
}
