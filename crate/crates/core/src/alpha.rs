//! Exact nonnegative reals of the form `sqrt(r)` with `r` rational.
//!
//! Edge densities `e / n^{3/2}` are irrational in general, but their squares
//! are not. Every threshold used by the cleaning and host checks is a product
//! of such a density, a rational coefficient and a power of `sqrt(n)`, so
//! carrying the square keeps all comparisons exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A nonnegative real number known exactly through its square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alpha {
    square: BigRational,
}

pub(crate) fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn big(v: u128) -> BigInt {
    BigInt::from(v)
}

impl Alpha {
    pub fn zero() -> Self {
        Alpha { square: BigRational::zero() }
    }

    pub fn from_integer(v: u64) -> Self {
        let v = BigInt::from(v);
        Alpha { square: BigRational::from_integer(&v * &v) }
    }

    pub fn from_rational(r: &BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::invalid(format!("alpha must be nonnegative, got {r}")));
        }
        Ok(Alpha { square: r * r })
    }

    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        Self::from_rational(&BigRational::new(num.into(), den.into()))
    }

    /// The value whose square is `square`.
    pub fn from_square(square: BigRational) -> Result<Self> {
        if square.is_negative() {
            return Err(Error::invalid("square of alpha must be nonnegative"));
        }
        Ok(Alpha { square })
    }

    /// Edge density `e / n^{3/2}`, carried as `e^2 / n^3`.
    pub fn edge_density(edges: u64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("edge density of an empty vertex set"));
        }
        let e = BigInt::from(edges);
        let n = BigInt::from(n);
        Ok(Alpha { square: BigRational::new(&e * &e, &n * &n * &n) })
    }

    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::invalid(format!("alpha must be a finite nonnegative number, got {x}")));
        }
        let r = BigRational::from_float(x).expect("finite float");
        Self::from_rational(&r)
    }

    pub fn square(&self) -> &BigRational {
        &self.square
    }

    pub fn is_zero(&self) -> bool {
        self.square.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.square.to_f64().unwrap_or(f64::INFINITY).sqrt()
    }

    /// `self * c` for a nonnegative rational `c`.
    pub fn scale(&self, c: &BigRational) -> Alpha {
        debug_assert!(!c.is_negative());
        Alpha { square: &self.square * c * c }
    }

    /// `self * sqrt(n)`.
    pub fn times_sqrt(&self, n: u64) -> Alpha {
        Alpha { square: &self.square * BigRational::from_integer(n.into()) }
    }

    pub fn pow(&self, exp: u32) -> Alpha {
        Alpha { square: num_traits::pow(self.square.clone(), exp as usize) }
    }

    pub fn mul(&self, other: &Alpha) -> Alpha {
        Alpha { square: &self.square * &other.square }
    }

    /// Compares `self` with a nonnegative rational.
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        if x.is_negative() {
            return Ordering::Greater;
        }
        self.square.cmp(&(x * x))
    }

    pub fn cmp_int(&self, x: u128) -> Ordering {
        self.cmp_rational(&BigRational::from_integer(big(x)))
    }

    /// `x >= self` for an integer `x`.
    pub fn le_int(&self, x: u128) -> bool {
        self.cmp_int(x) != Ordering::Greater
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigUint {
        let int_part = self.square.floor().to_integer();
        match int_part.to_biguint() {
            Some(v) => v.sqrt(),
            None => BigUint::zero(),
        }
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> BigUint {
        let f = self.floor();
        let fr = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, &f * &f));
        if fr == self.square {
            f
        } else {
            f + BigUint::one()
        }
    }

    pub fn floor_u64(&self) -> u64 {
        self.floor().to_u64().unwrap_or(u64::MAX)
    }

    pub fn ceil_u64(&self) -> u64 {
        self.ceil().to_u64().unwrap_or(u64::MAX)
    }
}

impl PartialOrd for Alpha {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Alpha {
    fn cmp(&self, other: &Self) -> Ordering {
        self.square.cmp(&other.square)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

/// Parses `"8"`, `"8.05"` or `"1/2"` as an exact value.
impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).and_then(|r| Alpha::from_rational(&r))
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("cannot parse '{s}' as a number"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" { BigInt::zero() } else { int.parse().map_err(|_| bad())? };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = int.abs() * &scale + frac;
        let num = if negative { -mag } else { mag };
        return Ok(BigRational::new(num, scale));
    }
    let v: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(v))
}
