//! Arithmetic in the prime field `GF(p)` with `p = 2^64 - 59`.
//!
//! The modulus is the largest prime below `2^64`. Because `2^64 ≡ 59 (mod p)`,
//! a 128-bit product reduces with two multiply-by-59 folds and no division.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;

/// The field modulus.
pub const MODULUS: u64 = 0xFFFF_FFFF_FFFF_FFC5;

const FOLD: u64 = 59;

/// An element of `GF(MODULUS)`, always stored reduced into `[0, MODULUS)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp(u64);

#[inline(always)]
fn reduce128(x: u128) -> u64 {
    let lo = x as u64;
    let hi = (x >> 64) as u64;
    let t = lo as u128 + (hi as u128) * FOLD as u128;
    let lo2 = t as u64;
    let hi2 = (t >> 64) as u64;
    let (mut r, carry) = lo2.overflowing_add(hi2 * FOLD);
    if carry {
        r += FOLD;
    }
    if r >= MODULUS {
        r -= MODULUS;
    }
    r
}

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    /// Reduces an arbitrary `u64` into the field.
    #[inline]
    pub const fn new(v: u64) -> Fp {
        if v >= MODULUS {
            Fp(v - MODULUS)
        } else {
            Fp(v)
        }
    }

    #[inline]
    pub fn from_i64(v: i64) -> Fp {
        if v >= 0 {
            Fp::new(v as u64)
        } else {
            -Fp::new(v.unsigned_abs())
        }
    }

    #[inline]
    pub const fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self) -> Option<Fp> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(MODULUS - 2))
        }
    }

    /// Uniform sample from the nonzero elements `[1, p-1]`.
    pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Fp {
        Fp(rng.gen_range(1..MODULUS))
    }

    /// Symmetric representative in `(-p/2, p/2]`, handy for printing small values.
    pub fn to_signed(self) -> i128 {
        if self.0 > MODULUS / 2 {
            self.0 as i128 - MODULUS as i128
        } else {
            self.0 as i128
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_signed())
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u64> for Fp {
    fn from(v: u64) -> Fp {
        Fp::new(v)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline(always)]
    fn add(self, rhs: Fp) -> Fp {
        let (s, carry) = self.0.overflowing_add(rhs.0);
        if carry || s >= MODULUS {
            Fp(s.wrapping_sub(MODULUS))
        } else {
            Fp(s)
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline(always)]
    fn sub(self, rhs: Fp) -> Fp {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp(self.0.wrapping_sub(rhs.0).wrapping_add(MODULUS))
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline(always)]
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(MODULUS - self.0)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline(always)]
    fn mul(self, rhs: Fp) -> Fp {
        Fp(reduce128(self.0 as u128 * rhs.0 as u128))
    }
}

impl AddAssign for Fp {
    #[inline(always)]
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    #[inline(always)]
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    #[inline(always)]
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn slow_mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % MODULUS as u128) as u64
    }

    #[test]
    fn modulus_exceeds_two_to_the_61() {
        assert!(MODULUS > 1u64 << 61);
        assert_eq!(MODULUS, u64::MAX - 58);
    }

    #[test]
    fn edge_values() {
        let m1 = Fp::new(MODULUS - 1);
        assert_eq!(m1 * m1, Fp::ONE);
        assert_eq!(m1 + Fp::ONE, Fp::ZERO);
        assert_eq!(Fp::ZERO - Fp::ONE, m1);
        assert_eq!(Fp::from_i64(-1), m1);
        assert_eq!(Fp::new(u64::MAX), Fp::new(58));
        assert!(Fp::ZERO.inv().is_none());
    }

    proptest! {
        #[test]
        fn mul_matches_u128_remainder(a in 0..MODULUS, b in 0..MODULUS) {
            prop_assert_eq!((Fp::new(a) * Fp::new(b)).value(), slow_mul(a, b));
        }

        #[test]
        fn add_sub_roundtrip(a in 0..MODULUS, b in 0..MODULUS) {
            let (x, y) = (Fp::new(a), Fp::new(b));
            prop_assert_eq!(x + y - y, x);
            prop_assert_eq!((x + y).value() as u128, (a as u128 + b as u128) % MODULUS as u128);
        }

        #[test]
        fn inverse_is_inverse(a in 1..MODULUS) {
            let x = Fp::new(a);
            prop_assert_eq!(x * x.inv().unwrap(), Fp::ONE);
        }
    }
}
