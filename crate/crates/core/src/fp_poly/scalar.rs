use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Checks that `p` is usable as the coefficient field of P^1 computations.
pub fn check_odd_prime(p: u32) -> Result<()> {
    if p == 2 {
        return Err(Error::usage("p = 2 is not supported: P^1 is an odd-primary operation"));
    }
    if !is_prime(p as u64) {
        return Err(Error::usage(format!("{p} is not a prime")));
    }
    Ok(())
}

/// Reduces a signed integer into `[0, p)`.
#[inline]
pub(crate) fn reduce(value: i64, p: u32) -> u32 {
    value.rem_euclid(p as i64) as u32
}

/// An element of the prime field F_p, stored as its least non-negative residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u32,
    modulus: u32,
}

impl Scalar {
    /// Builds `value mod p`; rejects `p = 2` and composite moduli.
    pub fn new(value: i64, modulus: u32) -> Result<Self> {
        check_odd_prime(modulus)?;
        Ok(Self::from_residue(reduce(value, modulus), modulus))
    }

    /// The modulus must already have been validated.
    pub(crate) fn from_residue(value: u32, modulus: u32) -> Self {
        debug_assert!(value < modulus);
        Scalar { value, modulus }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Representative in `-(p-1)/2 ..= (p-1)/2`.
    pub fn symmetric(self) -> i64 {
        let v = self.value as i64;
        let p = self.modulus as i64;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut acc = Scalar::from_residue(1 % self.modulus, self.modulus);
        let mut base = self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.modulus as u64 - 2))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        let s = self.value as u64 + rhs.value as u64;
        Scalar::from_residue((s % self.modulus as u64) as u32, self.modulus)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        if self.value == 0 {
            self
        } else {
            Scalar::from_residue(self.modulus - self.value, self.modulus)
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        let s = self.value as u64 * rhs.value as u64;
        Scalar::from_residue((s % self.modulus as u64) as u32, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..5000u64 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
        // Strong pseudoprimes to several small bases.
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn rejects_two_and_composites() {
        assert!(Scalar::new(1, 2).is_err());
        assert!(Scalar::new(1, 9).is_err());
        assert!(Scalar::new(1, 1).is_err());
    }

    #[test]
    fn residues_and_signs() {
        let a = Scalar::new(-1, 5).unwrap();
        assert_eq!(a.value(), 4);
        assert_eq!(a.symmetric(), -1);
        assert_eq!((a + Scalar::new(1, 5).unwrap()).value(), 0);
        assert_eq!((Scalar::new(2, 5).unwrap() * Scalar::new(3, 5).unwrap()).value(), 1);
        assert_eq!(Scalar::new(3, 7).unwrap().inverse().unwrap().value(), 5);
        assert!(Scalar::new(0, 7).unwrap().inverse().is_none());
    }
}
