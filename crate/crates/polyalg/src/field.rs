use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Coefficient field. Elements are plain values; the field object carries
/// any runtime data (the characteristic for prime fields).
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, a: i64) -> Self::Elem;
    /// `None` when the denominator is not invertible.
    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem>;
    fn random_nonzero<R: Rng>(&self, rng: &mut R) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;
    fn characteristic(&self) -> u64;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    /// Whether `format` output needs parentheses when used as a coefficient.
    fn is_negative_display(&self, a: &Self::Elem) -> bool {
        self.format(a).starts_with('-')
    }
}

/// `Z/pZ` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

pub const DEFAULT_PRIME: u32 = 32003;

impl PrimeField {
    pub fn new(p: u32) -> Self {
        assert!(p >= 2 && p < (1 << 31), "prime out of range");
        assert!(is_prime(p), "{p} is not prime");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_i128(&self, a: i128) -> u32 {
        a.rem_euclid(self.p as i128) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r: u64 = 1;
        let p = self.p as u64;
        let mut b = a as u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        a = r as u32;
        a
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField::new(DEFAULT_PRIME)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime strictly greater than `p`.
pub fn next_prime(p: u32) -> u32 {
    let mut q = p + 1;
    while !is_prime(q) {
        q += 1;
    }
    q
}

impl Field for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, *a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        t.rem_euclid(self.p as i64) as u32
    }
    fn from_i64(&self, a: i64) -> u32 {
        self.reduce_i128(a as i128)
    }
    fn from_rational(&self, r: &BigRational) -> Option<u32> {
        let p = BigInt::from(self.p);
        let n = r.numer().mod_floor(&p).to_u32().unwrap();
        let d = r.denom().mod_floor(&p).to_u32().unwrap();
        if d == 0 {
            return None;
        }
        Some(self.mul(&n, &self.inv(&d)))
    }
    fn random_nonzero<R: Rng>(&self, rng: &mut R) -> u32 {
        rng.gen_range(1..self.p)
    }
    fn format(&self, a: &u32) -> String {
        // symmetric representative reads better
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }
    fn from_rational(&self, r: &BigRational) -> Option<BigRational> {
        Some(r.clone())
    }
    fn random_nonzero<R: Rng>(&self, rng: &mut R) -> BigRational {
        loop {
            let v: i64 = rng.gen_range(-100..=100);
            if v != 0 {
                return BigRational::from_integer(v.into());
            }
        }
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_negative_display(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::default();
        let a = f.from_i64(-5);
        assert_eq!(a, 31998);
        assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        assert_eq!(f.from_rational(&BigRational::new(1.into(), 2.into())), Some(16002));
        assert_eq!(f.format(&a), "-5");
        assert_eq!(f.pow(3, 32002), 1);
    }

    #[test]
    fn primes() {
        assert!(is_prime(32003));
        assert_eq!(next_prime(32003), 32009);
    }

    #[test]
    fn rational_zero_denominator_mod_p() {
        let f = PrimeField::new(7);
        assert_eq!(f.from_rational(&BigRational::new(1.into(), 7.into())), None);
    }
}
