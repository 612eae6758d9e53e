//! Coefficient rings: the integers and prime fields.
//!
//! Every coefficient in the crate is stored as a [`BigInt`]. A
//! [`CoefficientRing`] value decides how those integers are interpreted:
//! over `Z` they are taken as they are, over `Z/p` they are kept reduced to
//! the representatives `0..p`.

use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::RingError;

/// The ring `R` over which chains, homology and labels are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientRing {
    Integers,
    PrimeField(u32),
}

impl CoefficientRing {
    /// `Z/p`, rejecting non-primes.
    pub fn prime_field(p: u32) -> Result<Self, RingError> {
        if is_prime(p) {
            Ok(CoefficientRing::PrimeField(p))
        } else {
            Err(RingError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            CoefficientRing::Integers => 0,
            CoefficientRing::PrimeField(p) => *p,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, CoefficientRing::PrimeField(_))
    }

    /// Canonical representative of `x` in this ring.
    pub fn normalize(&self, x: BigInt) -> BigInt {
        match self {
            CoefficientRing::Integers => x,
            CoefficientRing::PrimeField(p) => x.mod_floor(&BigInt::from(*p)),
        }
    }

    pub fn from_i64(&self, x: i64) -> BigInt {
        self.normalize(BigInt::from(x))
    }

    pub fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &BigInt) -> BigInt {
        self.normalize(-a)
    }

    pub fn is_unit(&self, a: &BigInt) -> bool {
        match self {
            CoefficientRing::Integers => a.abs().is_one(),
            CoefficientRing::PrimeField(_) => !self.normalize(a.clone()).is_zero(),
        }
    }

    /// Inverse of a unit.
    pub fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        match self {
            CoefficientRing::Integers => {
                if a.abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            CoefficientRing::PrimeField(p) => {
                let a = self.normalize(a.clone());
                if a.is_zero() {
                    return None;
                }
                let p = BigInt::from(*p);
                let ext = a.extended_gcd(&p);
                Some(ext.x.mod_floor(&p))
            }
        }
    }

    /// Euclidean size used for pivot selection: `|a|` over `Z`, `0/1` over a field.
    pub fn size(&self, a: &BigInt) -> BigInt {
        match self {
            CoefficientRing::Integers => a.abs(),
            CoefficientRing::PrimeField(_) => {
                if a.is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
        }
    }

    /// Euclidean division `a = q*b + r` with `size(r) < size(b)`.
    pub fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        debug_assert!(!b.is_zero());
        match self {
            CoefficientRing::Integers => {
                let (q, r) = a.div_mod_floor(b);
                (q, r)
            }
            CoefficientRing::PrimeField(_) => {
                let inv = self.inverse(b).expect("nonzero element of a field");
                (self.mul(a, &inv), BigInt::zero())
            }
        }
    }

    /// True when `b` divides `a` in this ring.
    pub fn divides(&self, b: &BigInt, a: &BigInt) -> bool {
        if b.is_zero() {
            return a.is_zero();
        }
        match self {
            CoefficientRing::Integers => a.is_multiple_of(b),
            CoefficientRing::PrimeField(_) => true,
        }
    }

    /// Associate of `a` used in normal forms: `|a|` over `Z`, `1` over a field.
    pub fn canonical_associate(&self, a: &BigInt) -> (BigInt, BigInt) {
        // returns (normalized value, unit u) with normalized = u * a
        match self {
            CoefficientRing::Integers => {
                if a.is_negative() {
                    (-a, BigInt::from(-1))
                } else {
                    (a.clone(), BigInt::one())
                }
            }
            CoefficientRing::PrimeField(_) => match self.inverse(a) {
                Some(inv) => (BigInt::one(), inv),
                None => (BigInt::zero(), BigInt::one()),
            },
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "z"),
            CoefficientRing::PrimeField(p) => write!(f, "zp:{p}"),
        }
    }
}

impl core::str::FromStr for CoefficientRing {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("z") {
            return Ok(CoefficientRing::Integers);
        }
        let rest = s.strip_prefix("zp:").or_else(|| s.strip_prefix("ZP:")).ok_or_else(|| RingError::Unparsable(s.into()))?;
        let p: u32 = rest.parse().map_err(|_| RingError::Unparsable(s.into()))?;
        CoefficientRing::prime_field(p)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
