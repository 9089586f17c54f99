use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// A non-negative integer of unbounded size. Values that fit in a `u64`
/// stay inline; larger sums promote to a big integer.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Price {
    Small(u64),
    Big(BigUint),
}

impl Price {
    pub const ZERO: Price = Price::Small(0);
    pub const ONE: Price = Price::Small(1);

    pub fn is_zero(&self) -> bool {
        matches!(self, Price::Small(0))
    }

    pub fn to_biguint(&self) -> BigUint {
        match self {
            Price::Small(v) => BigUint::from(*v),
            Price::Big(b) => b.clone(),
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Price::Small(v) => Some(*v),
            Price::Big(_) => None,
        }
    }

    fn normalize(b: BigUint) -> Price {
        match b.to_u64() {
            Some(v) => Price::Small(v),
            None => Price::Big(b),
        }
    }
}

impl Default for Price {
    fn default() -> Self {
        Price::ZERO
    }
}

impl From<u64> for Price {
    fn from(v: u64) -> Self {
        Price::Small(v)
    }
}

impl From<BigUint> for Price {
    fn from(b: BigUint) -> Self {
        Price::normalize(b)
    }
}

impl Add for &Price {
    type Output = Price;
    fn add(self, rhs: &Price) -> Price {
        match (self, rhs) {
            (Price::Small(a), Price::Small(b)) => match a.checked_add(*b) {
                Some(s) => Price::Small(s),
                None => Price::Big(BigUint::from(*a) + BigUint::from(*b)),
            },
            _ => Price::normalize(self.to_biguint() + rhs.to_biguint()),
        }
    }
}

impl Add for Price {
    type Output = Price;
    fn add(self, rhs: Price) -> Price {
        &self + &rhs
    }
}

impl Ord for Price {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Price::Small(a), Price::Small(b)) => a.cmp(b),
            (Price::Small(_), Price::Big(_)) => Ordering::Less,
            (Price::Big(_), Price::Small(_)) => Ordering::Greater,
            (Price::Big(a), Price::Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Price {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Price {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Price::Small(v) => write!(f, "{v}"),
            Price::Big(b) => write!(f, "{b}"),
        }
    }
}

impl std::iter::Sum for Price {
    fn sum<I: Iterator<Item = Price>>(iter: I) -> Price {
        iter.fold(Price::ZERO, |a, b| a + b)
    }
}

impl Zero for Price {
    fn zero() -> Self {
        Price::ZERO
    }
    fn is_zero(&self) -> bool {
        Price::is_zero(self)
    }
}
