//! Exact dyadic rationals `m / 2^e`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `mantissa / 2^exp`, normalized so the mantissa is odd unless `exp = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(mantissa: impl Into<BigInt>, exp: u32) -> Dyadic {
        let mut mantissa = mantissa.into();
        let mut exp = exp;
        if mantissa.is_zero() {
            return Dyadic { mantissa, exp: 0 };
        }
        while exp > 0 && mantissa.is_even() {
            mantissa >>= 1;
            exp -= 1;
        }
        Dyadic { mantissa, exp }
    }

    pub fn zero() -> Dyadic {
        Dyadic::new(0, 0)
    }

    pub fn one() -> Dyadic {
        Dyadic::new(1, 0)
    }

    pub fn from_int(n: i64) -> Dyadic {
        Dyadic::new(n, 0)
    }

    /// `n / 2^k`, a point of the level-`k` grid.
    pub fn grid(n: u64, k: u32) -> Dyadic {
        Dyadic::new(n, k)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mantissa: self.mantissa.abs(), exp: self.exp }
    }

    /// `self · 2^{-k}`.
    pub fn shr(&self, k: u32) -> Dyadic {
        Dyadic::new(self.mantissa.clone(), self.exp + k)
    }

    /// `⌊self · 2^k⌋`.
    pub fn floor_shl(&self, k: u32) -> BigInt {
        if k >= self.exp {
            &self.mantissa << (k - self.exp)
        } else {
            self.mantissa.div_floor(&(BigInt::one() << (self.exp - k)))
        }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exp.max(other.exp);
        (&self.mantissa << (e - self.exp), &other.mantissa << (e - other.exp), e)
    }

    pub fn to_f64(&self) -> f64 {
        self.mantissa.to_f64().unwrap_or(f64::NAN) / 2f64.powi(self.exp as i32)
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -&self.mantissa, exp: self.exp }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.mantissa)
        } else {
            write!(f, "{}/{}", self.mantissa, BigInt::one() << self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a dyadic rational: `{0}`")]
pub struct ParseDyadicError(String);

impl FromStr for Dyadic {
    type Err = ParseDyadicError;

    /// Accepts `n`, `n/d` with `d` a power of two, and `n/2^e`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseDyadicError(s.to_string());
        let s = s.trim();
        let Some((num, den)) = s.split_once('/') else {
            return BigInt::from_str(s).map(|m| Dyadic::new(m, 0)).map_err(|_| err());
        };
        let mantissa = BigInt::from_str(num.trim()).map_err(|_| err())?;
        let den = den.trim();
        let exp = if let Some(e) = den.strip_prefix("2^") {
            e.parse::<u32>().map_err(|_| err())?
        } else {
            let d = den.parse::<u64>().map_err(|_| err())?;
            if d == 0 || !d.is_power_of_two() {
                return Err(err());
            }
            d.trailing_zeros()
        };
        Ok(Dyadic::new(mantissa, exp))
    }
}

/// Serialized as a `[numerator, denominator exponent]` pair.
impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let m = self
            .mantissa
            .to_i64()
            .ok_or_else(|| serde::ser::Error::custom("numerator exceeds 64 bits"))?;
        (m, self.exp).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (m, e) = <(i64, u32)>::deserialize(deserializer)?;
        Ok(Dyadic::new(m, e))
    }
}
