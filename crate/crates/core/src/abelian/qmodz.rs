use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A rational residue modulo 1, stored as the canonical reduced
/// representative `num/den` with `0 <= num < den` and `gcd(num, den) = 1`.
/// The value group of every pairing in this crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QModZ {
    num: BigInt,
    den: BigInt,
}

impl QModZ {
    /// Class of `num/den` modulo 1. Panics if `den` is zero.
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "denominator must be nonzero");
        let den = if den.is_negative() {
            // normalize sign into the numerator
            return QModZ::new(-num, -den);
        } else {
            den
        };
        let num = num.mod_floor(&den);
        let g = num.gcd(&den);
        QModZ {
            num: &num / &g,
            den: &den / &g,
        }
    }

    pub fn zero() -> Self {
        QModZ {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Additive order: the smallest `n >= 1` with `n * self = 0`.
    pub fn order(&self) -> BigInt {
        self.den.clone()
    }

    pub fn scaled(&self, k: &BigInt) -> QModZ {
        QModZ::new(&self.num * k, self.den.clone())
    }
}

impl Add for &QModZ {
    type Output = QModZ;
    fn add(self, rhs: &QModZ) -> QModZ {
        QModZ::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &QModZ {
    type Output = QModZ;
    fn sub(self, rhs: &QModZ) -> QModZ {
        self + &(-rhs)
    }
}

impl Neg for &QModZ {
    type Output = QModZ;
    fn neg(self) -> QModZ {
        QModZ::new(-&self.num, self.den.clone())
    }
}

impl fmt::Display for QModZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for QModZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let q = QModZ::new(BigInt::from(7), BigInt::from(5));
        assert_eq!(q, QModZ::new(BigInt::from(2), BigInt::from(5)));
        assert_eq!(q.to_string(), "2/5");
        assert_eq!(QModZ::new(BigInt::from(4), BigInt::from(6)).to_string(), "2/3");
        assert_eq!(QModZ::new(BigInt::from(-1), BigInt::from(4)).to_string(), "3/4");
        assert_eq!(QModZ::new(BigInt::from(6), BigInt::from(3)), QModZ::zero());
        assert_eq!(QModZ::zero().to_string(), "0/1");
    }

    #[test]
    fn order_kills() {
        let q = QModZ::new(BigInt::from(3), BigInt::from(8));
        assert_eq!(q.order(), BigInt::from(8));
        assert!(q.scaled(&q.order()).is_zero());
    }

    proptest! {
        #[test]
        fn add_is_canonical_and_associative(
            a in -20i64..20, b in 1i64..20,
            c in -20i64..20, d in 1i64..20,
            e in -20i64..20, g in 1i64..20,
        ) {
            let x = QModZ::new(BigInt::from(a), BigInt::from(b));
            let y = QModZ::new(BigInt::from(c), BigInt::from(d));
            let z = QModZ::new(BigInt::from(e), BigInt::from(g));
            let s = &x + &y;
            prop_assert!(s.numerator() >= &BigInt::zero() && s.numerator() < s.denominator()
                || s.is_zero());
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert!((&x - &x).is_zero());
        }
    }
}
