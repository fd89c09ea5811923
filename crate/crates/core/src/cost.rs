//! Exact costs: non-negative rationals extended with an absorbing infinity.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostError {
    #[error("cost arithmetic overflowed i64")]
    Overflow,
    #[error("negative cost {0}")]
    Negative(String),
    #[error("cannot parse cost {0:?}: expected an integer, \"p/q\" or \"inf\"")]
    Parse(String),
    #[error("cannot subtract an infinite cost")]
    InfiniteSubtrahend,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Repr {
    // Variant order gives every finite value < INF.
    Finite(Rational),
    Inf,
}

/// A cost: a finite non-negative rational in lowest terms, or `INF`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cost(Repr);

impl Cost {
    pub const ZERO: Cost = Cost(Repr::Finite(Ratio::new_raw(0, 1)));
    pub const ONE: Cost = Cost(Repr::Finite(Ratio::new_raw(1, 1)));
    pub const INF: Cost = Cost(Repr::Inf);

    pub fn int(value: u32) -> Cost {
        Cost(Repr::Finite(Ratio::from_integer(i64::from(value))))
    }

    pub fn from_ratio(r: Rational) -> Result<Cost, CostError> {
        if r.is_negative() {
            return Err(CostError::Negative(r.to_string()));
        }
        Ok(Cost(Repr::Finite(r)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Result<Cost, CostError> {
        if denom == 0 {
            return Err(CostError::Parse(format!("{numer}/{denom}")));
        }
        Cost::from_ratio(Ratio::new(numer, denom))
    }

    pub fn is_inf(self) -> bool {
        matches!(self.0, Repr::Inf)
    }

    pub fn is_finite(self) -> bool {
        !self.is_inf()
    }

    pub fn is_zero(self) -> bool {
        self == Cost::ZERO
    }

    pub fn as_ratio(self) -> Option<Rational> {
        match self.0 {
            Repr::Finite(r) => Some(r),
            Repr::Inf => None,
        }
    }

    pub fn checked_add(self, other: Cost) -> Result<Cost, CostError> {
        match (self.0, other.0) {
            (Repr::Finite(a), Repr::Finite(b)) => a
                .checked_add(&b)
                .map(|r| Cost(Repr::Finite(r)))
                .ok_or(CostError::Overflow),
            _ => Ok(Cost::INF),
        }
    }

    /// `self - other`; `INF - finite = INF`.
    pub fn checked_sub(self, other: Cost) -> Result<Cost, CostError> {
        match (self.0, other.0) {
            (_, Repr::Inf) => Err(CostError::InfiniteSubtrahend),
            (Repr::Inf, _) => Ok(Cost::INF),
            (Repr::Finite(a), Repr::Finite(b)) => {
                let d = a.checked_sub(&b).ok_or(CostError::Overflow)?;
                Cost::from_ratio(d)
            }
        }
    }

    pub fn checked_mul_int(self, k: u64) -> Result<Cost, CostError> {
        match self.0 {
            Repr::Inf => Ok(if k == 0 { Cost::ZERO } else { Cost::INF }),
            Repr::Finite(a) => {
                let k = i64::try_from(k).map_err(|_| CostError::Overflow)?;
                a.checked_mul(&Ratio::from_integer(k))
                    .map(|r| Cost(Repr::Finite(r)))
                    .ok_or(CostError::Overflow)
            }
        }
    }

    /// Division by a positive finite cost.
    pub fn checked_div(self, divisor: Cost) -> Result<Cost, CostError> {
        let d = divisor.as_ratio().filter(|d| !d.is_zero()).ok_or(CostError::Overflow)?;
        match self.0 {
            Repr::Inf => Ok(Cost::INF),
            Repr::Finite(a) => num_traits::CheckedDiv::checked_div(&a, &d)
                .map(|r| Cost(Repr::Finite(r)))
                .ok_or(CostError::Overflow),
        }
    }

    /// Sums costs, reporting overflow instead of panicking.
    pub fn try_sum<I: IntoIterator<Item = Cost>>(iter: I) -> Result<Cost, CostError> {
        iter.into_iter().try_fold(Cost::ZERO, Cost::checked_add)
    }
}

impl Default for Cost {
    fn default() -> Self {
        Cost::ZERO
    }
}

impl Add for Cost {
    type Output = Cost;

    /// Panics on i64 overflow; use [`Cost::checked_add`] where that is reachable.
    fn add(self, rhs: Cost) -> Cost {
        self.checked_add(rhs).expect("cost overflow")
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Inf => f.write_str("inf"),
            Repr::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Cost {
    type Err = CostError;

    fn from_str(s: &str) -> Result<Cost, CostError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") {
            return Ok(Cost::INF);
        }
        let bad = || CostError::Parse(s.to_string());
        let parse_int = |x: &str| -> Result<i64, CostError> {
            if x.is_empty() || !x.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            x.parse::<i64>().map_err(|_| CostError::Overflow)
        };
        match t.split_once('/') {
            None => Ok(Cost(Repr::Finite(Ratio::from_integer(parse_int(t)?)))),
            Some((p, q)) => {
                let (p, q) = (parse_int(p)?, parse_int(q)?);
                if q == 0 {
                    return Err(bad());
                }
                Cost::ratio(p, q)
            }
        }
    }
}

impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Cost {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Cost, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Integer rescaling of a family of finite costs by their least common
/// denominator. Order and argmin are preserved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scale {
    lcd: i64,
}

impl Scale {
    pub fn for_costs<I: IntoIterator<Item = Cost>>(costs: I) -> Result<Scale, CostError> {
        let mut lcd: i64 = 1;
        for c in costs {
            if let Some(r) = c.as_ratio() {
                let d = *r.denom();
                let g = lcd.gcd(&d);
                lcd = i64::checked_mul(lcd / g, d).ok_or(CostError::Overflow)?;
            }
        }
        Ok(Scale { lcd })
    }

    pub fn denominator(&self) -> i64 {
        self.lcd
    }

    /// Scaled integer value; `None` for `INF`.
    pub fn to_int(&self, c: Cost) -> Result<Option<i64>, CostError> {
        match c.as_ratio() {
            None => Ok(None),
            Some(r) => {
                let v = i64::checked_mul(*r.numer(), self.lcd / r.denom()).ok_or(CostError::Overflow)?;
                Ok(Some(v))
            }
        }
    }

    /// Scaled value of a possibly negative rational (marginal costs).
    pub fn rational_to_int(&self, r: Rational) -> Result<i64, CostError> {
        i64::checked_mul(*r.numer(), self.lcd / r.denom()).ok_or(CostError::Overflow)
    }

    pub fn to_cost(&self, scaled: i64) -> Result<Cost, CostError> {
        Cost::ratio(scaled, self.lcd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Cost {
        s.parse().unwrap()
    }

    #[test]
    fn exact_sum() {
        assert_eq!(c("1/2") + c("1/3"), c("5/6"));
        assert_eq!(c("7") + Cost::INF, Cost::INF);
        assert_eq!(Cost::INF + c("7"), Cost::INF);
        assert_eq!(Cost::ZERO + c("4"), c("4"));
    }

    #[test]
    fn ordering_puts_inf_last() {
        assert!(c("1000000") < Cost::INF);
        assert!(c("1/3") < c("1/2"));
        assert_eq!([c("3"), Cost::INF, c("0")].iter().max(), Some(&Cost::INF));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(c("2/4").to_string(), "1/2");
        assert_eq!(c("6/3").to_string(), "2");
        assert_eq!(c("INF"), Cost::INF);
        assert_eq!(Cost::INF.to_string(), "inf");
        assert!("-1".parse::<Cost>().is_err());
        assert!("1/0".parse::<Cost>().is_err());
        assert!("1.5".parse::<Cost>().is_err());
        assert!("".parse::<Cost>().is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = Cost::from_ratio(Ratio::from_integer(i64::MAX)).unwrap();
        assert_eq!(big.checked_add(Cost::ONE), Err(CostError::Overflow));
    }

    #[test]
    fn subtraction() {
        assert_eq!(c("5").checked_sub(c("3")), Ok(c("2")));
        assert_eq!(Cost::INF.checked_sub(c("3")), Ok(Cost::INF));
        assert!(c("1").checked_sub(c("3")).is_err());
        assert!(c("1").checked_sub(Cost::INF).is_err());
    }

    #[test]
    fn scale_round_trip() {
        let costs = [c("1/2"), c("1/3"), c("4"), Cost::INF];
        let s = Scale::for_costs(costs).unwrap();
        assert_eq!(s.denominator(), 6);
        assert_eq!(s.to_int(c("1/2")).unwrap(), Some(3));
        assert_eq!(s.to_int(Cost::INF).unwrap(), None);
        assert_eq!(s.to_cost(8).unwrap(), c("4/3"));
    }
}
