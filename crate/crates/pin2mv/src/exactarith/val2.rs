use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use super::Rat;

/// A 2-adic valuation: an integer, or `Inf` for the valuation of zero.
///
/// `Inf` compares greater than every finite value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Val2 {
    Finite(i64),
    Inf,
}

impl Val2 {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val2::Finite(v) => Some(v),
            Val2::Inf => None,
        }
    }

    pub fn is_inf(self) -> bool {
        self == Val2::Inf
    }
}

impl Ord for Val2 {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val2::Inf, Val2::Inf) => Ordering::Equal,
            (Val2::Inf, _) => Ordering::Greater,
            (_, Val2::Inf) => Ordering::Less,
            (Val2::Finite(a), Val2::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Val2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Val2 {
    fn from(v: i64) -> Self {
        Val2::Finite(v)
    }
}

impl PartialEq<i64> for Val2 {
    fn eq(&self, other: &i64) -> bool {
        *self == Val2::Finite(*other)
    }
}

impl PartialOrd<i64> for Val2 {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Val2::Finite(*other)))
    }
}

impl Add for Val2 {
    type Output = Val2;
    fn add(self, rhs: Val2) -> Val2 {
        match (self, rhs) {
            (Val2::Finite(a), Val2::Finite(b)) => Val2::Finite(a + b),
            _ => Val2::Inf,
        }
    }
}

impl Add<i64> for Val2 {
    type Output = Val2;
    fn add(self, rhs: i64) -> Val2 {
        self + Val2::Finite(rhs)
    }
}

impl fmt::Display for Val2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val2::Finite(v) => write!(f, "{v}"),
            Val2::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for Val2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Val2::Finite(v) => s.serialize_i64(*v),
            Val2::Inf => s.serialize_str("inf"),
        }
    }
}

/// 2-adic valuation of an integer.
pub fn val2_int(n: &BigInt) -> Val2 {
    match n.trailing_zeros() {
        Some(t) => Val2::Finite(t as i64),
        None => Val2::Inf,
    }
}

/// 2-adic valuation of a machine integer.
pub fn val2_i64(n: i64) -> Val2 {
    if n == 0 {
        Val2::Inf
    } else {
        Val2::Finite(n.trailing_zeros() as i64)
    }
}

/// 2-adic valuation of a rational: `ν(numerator) − ν(denominator)`.
pub fn val2(r: &Rat) -> Val2 {
    match val2_int(r.numer()) {
        Val2::Inf => Val2::Inf,
        Val2::Finite(a) => {
            let b = r.denom().trailing_zeros().unwrap_or(0) as i64;
            Val2::Finite(a - b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(val2(&Rat::zero()), Val2::Inf);
        assert_eq!(val2(&Rat::from(12)), 2);
        assert_eq!(val2(&Rat::new(1069, 144).unwrap()), -4);
    }

    #[test]
    fn inf_dominates() {
        assert!(Val2::Inf > Val2::Finite(i64::MAX));
        assert!(Val2::Finite(-3) < Val2::Finite(0));
        assert_eq!(Val2::Inf + 5, Val2::Inf);
        assert_eq!(Val2::Finite(2) + Val2::Finite(-5), -3);
    }

    #[test]
    fn machine_ints() {
        assert_eq!(val2_i64(0), Val2::Inf);
        assert_eq!(val2_i64(-8), 3);
        assert_eq!(val2_i64(7), 0);
    }

    #[test]
    fn json_shape() {
        assert_eq!(serde_json::to_string(&Val2::Inf).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Val2::Finite(-4)).unwrap(), "-4");
    }
}
