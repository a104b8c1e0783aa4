//! Exact monomials `c·t^d` in `H*_S(pt) = Z[t]` and the integer combinatorics
//! (factorials, binomials, multinomials) the closed forms are built from.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A monomial `coeff · t^power` with a nonnegative integer coefficient.
///
/// Zero is always stored with `power = 0`. Addition is only defined when the
/// powers agree or one side is zero; anything else is a consistency error,
/// since every quantity in this crate is homogeneous.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TMonomial {
    coeff: BigUint,
    power: u32,
}

impl TMonomial {
    pub fn new(coeff: impl Into<BigUint>, power: u32) -> Self {
        let coeff = coeff.into();
        let power = if coeff.is_zero() { 0 } else { power };
        Self { coeff, power }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1u32, 0)
    }

    pub fn coeff(&self) -> &BigUint {
        &self.coeff
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.power != other.power {
            return Err(Error::MixedPowers(self.power, other.power));
        }
        Ok(Self::new(&self.coeff + &other.coeff, self.power))
    }

    /// `self - other`; fails if the powers differ or the result would be
    /// negative.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() || self.power != other.power {
            return Err(Error::Consistency(format!(
                "cannot subtract {} from {}",
                other, self
            )));
        }
        if self.coeff < other.coeff {
            return Err(Error::Consistency(format!(
                "negative difference {} - {}",
                self, other
            )));
        }
        Ok(Self::new(&self.coeff - &other.coeff, self.power))
    }

    /// Exact quotient `self / divisor`. The divisor must be nonzero, its power
    /// must not exceed ours (unless we are zero) and its coefficient must
    /// divide ours.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::Consistency("division by zero monomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if divisor.power > self.power {
            return Err(Error::Consistency(format!(
                "{} is not divisible by {}",
                self, divisor
            )));
        }
        let (q, r) = self.coeff.div_rem(&divisor.coeff);
        if !r.is_zero() {
            return Err(Error::Consistency(format!(
                "{} is not divisible by {} (remainder {})",
                self, divisor, r
            )));
        }
        Ok(Self::new(q, self.power - divisor.power))
    }

    /// Sum of homogeneous monomials.
    pub fn try_sum<'a, I: IntoIterator<Item = &'a TMonomial>>(terms: I) -> Result<Self> {
        terms
            .into_iter()
            .try_fold(Self::zero(), |acc, term| acc.checked_add(term))
    }
}

impl Mul for &TMonomial {
    type Output = TMonomial;

    fn mul(self, rhs: &TMonomial) -> TMonomial {
        TMonomial::new(&self.coeff * &rhs.coeff, self.power + rhs.power)
    }
}

impl Mul for TMonomial {
    type Output = TMonomial;

    fn mul(self, rhs: TMonomial) -> TMonomial {
        &self * &rhs
    }
}

/// `c*t^d` for `d > 0`, bare `c` for constants and zero.
impl fmt::Display for TMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 0 {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*t^{}", self.coeff, self.power)
        }
    }
}

impl FromStr for TMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s = s.trim();
        let (coeff, power) = match s.split_once('*') {
            Some((c, rest)) => {
                let p = rest
                    .trim()
                    .strip_prefix("t^")
                    .ok_or_else(|| bad("expected t^d after '*'"))?;
                (
                    c.trim(),
                    p.trim().parse::<u32>().map_err(|_| bad("bad exponent"))?,
                )
            }
            None => (s, 0),
        };
        let coeff = coeff
            .parse::<BigUint>()
            .map_err(|_| bad("bad coefficient"))?;
        Ok(Self::new(coeff, power))
    }
}

const FACTORIAL_TABLE_LEN: usize = 128;

fn factorial_table() -> &'static [BigUint] {
    static TABLE: OnceLock<Vec<BigUint>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(FACTORIAL_TABLE_LEN);
        table.push(BigUint::one());
        for k in 1..FACTORIAL_TABLE_LEN {
            let next = &table[k - 1] * BigUint::from(k);
            table.push(next);
        }
        table
    })
}

pub fn factorial(k: u64) -> BigUint {
    let table = factorial_table();
    if (k as usize) < table.len() {
        return table[k as usize].clone();
    }
    let mut acc = table[table.len() - 1].clone();
    for i in table.len() as u64..=k {
        acc *= BigUint::from(i);
    }
    acc
}

/// `binom(top, bottom)`, zero unless `0 <= bottom <= top`.
pub fn binomial(top: i64, bottom: i64) -> BigUint {
    if bottom < 0 || top < 0 || bottom > top {
        return BigUint::zero();
    }
    let k = bottom.min(top - bottom) as u64;
    let top = top as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(top - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Multinomial `top! / (k_1! ... k_r! (top - Σk)!)`. The remainder
/// `top - Σk` is an implicit last part. Zero if any part (including the
/// remainder) is negative.
pub fn multinomial(top: i64, parts: &[i64]) -> BigUint {
    if top < 0 || parts.iter().any(|&k| k < 0) {
        return BigUint::zero();
    }
    let used: i64 = parts.iter().sum();
    if used > top {
        return BigUint::zero();
    }
    let mut denom = factorial((top - used) as u64);
    for &k in parts {
        denom *= factorial(k as u64);
    }
    factorial(top as u64) / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(c: u64, d: u32) -> TMonomial {
        TMonomial::new(c, d)
    }

    #[test]
    fn zero_is_canonical() {
        assert_eq!(mono(0, 5), TMonomial::zero());
        assert_eq!(mono(0, 5).power(), 0);
    }

    #[test]
    fn addition_requires_equal_powers() {
        assert_eq!(mono(2, 3).checked_add(&mono(5, 3)).unwrap(), mono(7, 3));
        assert_eq!(
            mono(2, 3).checked_add(&TMonomial::zero()).unwrap(),
            mono(2, 3)
        );
        assert_eq!(
            TMonomial::zero().checked_add(&mono(4, 1)).unwrap(),
            mono(4, 1)
        );
        assert_eq!(
            mono(1, 1).checked_add(&mono(1, 2)),
            Err(Error::MixedPowers(1, 2))
        );
    }

    #[test]
    fn subtraction_and_division() {
        assert_eq!(
            mono(7, 2).checked_sub(&mono(7, 2)).unwrap(),
            TMonomial::zero()
        );
        assert!(mono(3, 2).checked_sub(&mono(4, 2)).is_err());
        assert_eq!(mono(120, 5).exact_div(&mono(6, 3)).unwrap(), mono(20, 2));
        assert!(mono(7, 5).exact_div(&mono(2, 1)).is_err());
        assert!(mono(7, 1).exact_div(&mono(1, 2)).is_err());
        assert!(mono(7, 1).exact_div(&TMonomial::zero()).is_err());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(mono(12, 1).to_string(), "12*t^1");
        assert_eq!(mono(1, 0).to_string(), "1");
        assert_eq!(TMonomial::zero().to_string(), "0");
        assert_eq!("280*t^1".parse::<TMonomial>().unwrap(), mono(280, 1));
        assert_eq!("4".parse::<TMonomial>().unwrap(), mono(4, 0));
        assert!("4*x^2".parse::<TMonomial>().is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(10), BigUint::from(3_628_800u32));
        assert_eq!(factorial(130), factorial(129) * BigUint::from(130u32));
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        // 4!/(1! 1! 2! 0!) = 12
        assert_eq!(multinomial(4, &[1, 1, 2]), BigUint::from(12u32));
        assert_eq!(multinomial(5, &[0, 3, 2]), BigUint::from(10u32));
        assert_eq!(multinomial(3, &[1, -1, 0]), BigUint::zero());
        assert_eq!(multinomial(3, &[2, 2]), BigUint::zero());
    }
}
