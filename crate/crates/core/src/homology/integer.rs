//! Exact integers that stay inline while they fit in an `i64`.
//!
//! Boundary matrices start out with `±1` entries and almost always stay
//! small during elimination, so the common path never allocates. Any
//! operation that would overflow promotes to a heap `BigInt`; results that
//! fit again are demoted, so `Small` and `Big` never represent the same value.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Integer {
    Small(i64),
    Big(Box<BigInt>),
}

impl Integer {
    pub const ZERO: Integer = Integer::Small(0);
    pub const ONE: Integer = Integer::Small(1);

    pub fn from_bigint(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) => Integer::Small(s),
            None => Integer::Big(Box::new(v)),
        }
    }

    fn from_i128(v: i128) -> Self {
        match i64::try_from(v) {
            Ok(s) => Integer::Small(s),
            Err(_) => Integer::Big(Box::new(BigInt::from(v))),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Integer::Small(s) => BigInt::from(*s),
            Integer::Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Integer::Small(s) => Some(*s),
            Integer::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }

    /// `±1`.
    pub fn is_unit(&self) -> bool {
        matches!(self, Integer::Small(1 | -1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Integer::Small(s) => *s < 0,
            Integer::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Integer {
        match self {
            Integer::Small(s) => Integer::from_i128((*s as i128).abs()),
            Integer::Big(b) => Integer::from_bigint(b.abs()),
        }
    }

    pub fn neg(&self) -> Integer {
        match self {
            Integer::Small(s) => Integer::from_i128(-(*s as i128)),
            Integer::Big(b) => Integer::from_bigint(-(**b).clone()),
        }
    }

    pub fn cmp_abs(&self, other: &Integer) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_bigint().magnitude().cmp(other.to_bigint().magnitude()),
        }
    }

    pub fn mul(&self, other: &Integer) -> Integer {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => Integer::from_i128(*a as i128 * *b as i128),
            _ => Integer::from_bigint(self.to_bigint() * other.to_bigint()),
        }
    }

    /// `self - f * x`.
    pub fn sub_mul(&self, f: &Integer, x: &Integer) -> Integer {
        if let (Integer::Small(s), Integer::Small(f), Integer::Small(x)) = (self, f, x) {
            if let Some(p) = (*f as i128).checked_mul(*x as i128) {
                if let Some(r) = (*s as i128).checked_sub(p) {
                    return Integer::from_i128(r);
                }
            }
        }
        Integer::from_bigint(self.to_bigint() - f.to_bigint() * x.to_bigint())
    }

    /// Euclidean division: `self = q * d + r` with `0 <= r < |d|`.
    pub fn div_rem_euclid(&self, d: &Integer) -> (Integer, Integer) {
        assert!(!d.is_zero(), "division by zero");
        if let (Integer::Small(a), Integer::Small(b)) = (self, d) {
            let (a, b) = (*a as i128, *b as i128);
            return (Integer::from_i128(a.div_euclid(b)), Integer::from_i128(a.rem_euclid(b)));
        }
        let (a, b) = (self.to_bigint(), d.to_bigint());
        let mut r = a.mod_floor(&b);
        if r.is_negative() {
            r += b.abs();
        }
        let q = (&a - &r) / &b;
        (Integer::from_bigint(q), Integer::from_bigint(r))
    }

    /// Non-negative gcd.
    pub fn gcd(&self, other: &Integer) -> Integer {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => {
                Integer::from_i128((*a as i128).gcd(&(*b as i128)))
            }
            _ => Integer::from_bigint(self.to_bigint().gcd(&other.to_bigint())),
        }
    }

    /// Non-negative lcm.
    pub fn lcm(&self, other: &Integer) -> Integer {
        if self.is_zero() || other.is_zero() {
            return Integer::ZERO;
        }
        Integer::from_bigint(self.to_bigint().lcm(&other.to_bigint()).abs())
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer::Small(v)
    }
}

impl From<BigInt> for Integer {
    fn from(v: BigInt) -> Self {
        Integer::from_bigint(v)
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(s) => write!(f, "{s}"),
            Integer::Big(b) => write!(f, "{b}"),
        }
    }
}

/// Small values serialize as JSON numbers, big ones as decimal strings.
impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Integer::Small(s) => serializer.serialize_i64(*s),
            Integer::Big(b) => serializer.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct IntegerVisitor;

        impl Visitor<'_> for IntegerVisitor {
            type Value = Integer;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Integer, E> {
                Ok(Integer::Small(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Integer, E> {
                Ok(Integer::from_i128(v as i128))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Integer, E> {
                v.parse::<BigInt>().map(Integer::from_bigint).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(IntegerVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> Integer {
        Integer::from_bigint(s.parse().unwrap())
    }

    #[test]
    fn promotes_on_overflow_and_demotes_back() {
        let m = Integer::Small(i64::MAX);
        let p = m.sub_mul(&Integer::Small(-1), &Integer::Small(1));
        assert!(matches!(p, Integer::Big(_)));
        assert_eq!(p.to_string(), "9223372036854775808");
        let back = p.sub_mul(&Integer::ONE, &Integer::ONE);
        assert_eq!(back, Integer::Small(i64::MAX));
        assert!(matches!(Integer::Small(i64::MIN).abs(), Integer::Big(_)));
        assert_eq!(Integer::Small(i64::MIN).neg().neg(), Integer::Small(i64::MIN));
    }

    #[test]
    fn euclidean_division() {
        for (a, b) in [(7i64, 3i64), (-7, 3), (7, -3), (-7, -3), (0, 5)] {
            let (q, r) = Integer::from(a).div_rem_euclid(&Integer::from(b));
            assert!(!r.is_negative() && r.cmp_abs(&Integer::from(b)) == Ordering::Less);
            assert_eq!(q.mul(&Integer::from(b)).sub_mul(&Integer::from(-1), &r), Integer::from(a));
        }
        let a = big("-123456789012345678901234567890");
        let b = big("98765432109876543210");
        let (q, r) = a.div_rem_euclid(&b);
        assert!(!r.is_negative());
        assert_eq!(q.mul(&b).sub_mul(&Integer::from(-1), &r), a);
    }

    #[test]
    fn gcd_lcm() {
        assert_eq!(Integer::from(12).gcd(&Integer::from(-18)), Integer::from(6));
        assert_eq!(Integer::from(4).lcm(&Integer::from(6)), Integer::from(12));
        assert_eq!(Integer::from(0).gcd(&Integer::from(-5)), Integer::from(5));
    }

    #[test]
    fn json_forms() {
        assert_eq!(serde_json::to_string(&Integer::from(-3)).unwrap(), "-3");
        let b = big("100000000000000000000000");
        let text = serde_json::to_string(&b).unwrap();
        assert_eq!(text, "\"100000000000000000000000\"");
        assert_eq!(serde_json::from_str::<Integer>(&text).unwrap(), b);
        assert_eq!(serde_json::from_str::<Integer>("7").unwrap(), Integer::from(7));
    }
}
