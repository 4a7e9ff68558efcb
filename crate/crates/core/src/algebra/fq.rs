//! The ground field `F_q`, `q = p^e`.
//!
//! Elements are packed into a `u64` as base-`p` digits (digit `i` is the
//! coefficient of `u^i`, `u` the class of `x` modulo the canonical modulus),
//! so they are `Copy` and cheap to hash.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use super::field::FiniteField;
use super::irreducible::canonical_irreducible;
use crate::error::{Error, Result};

/// Default cap on `q`.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 40;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub(crate) u64);

impl FqElem {
    /// The packed base-`p` representation; equals the integer value for prime fields.
    pub fn value(self) -> u64 {
        self.0
    }
}

#[derive(Clone)]
pub struct FqField(Arc<FqInner>);

#[derive(Debug, PartialEq, Eq, Hash)]
struct FqInner {
    p: u64,
    e: usize,
    q: u64,
    /// Monic modulus over `F_p`, constant term first; empty for prime fields.
    modulus: Vec<u64>,
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for FqField {}

impl Hash for FqField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits a prime power into `(p, e)`.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl FqField {
    /// The canonical `F_{p^e}`, with `q` capped at [`DEFAULT_FIELD_BOUND`].
    pub fn new(p: u64, e: usize) -> Result<Self> {
        Self::with_bound(p, e, DEFAULT_FIELD_BOUND)
    }

    pub fn with_bound(p: u64, e: usize, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidArgument("field degree must be positive".into()));
        }
        let q = (p as u128).checked_pow(e as u32).filter(|&q| q <= bound as u128).ok_or_else(|| {
            Error::SizeExceeded { what: format!("{p}^{e}"), limit: bound.to_string() }
        })? as u64;
        let prime = FqField(Arc::new(FqInner { p, e: 1, q: p, modulus: Vec::new() }));
        if e == 1 {
            return Ok(prime);
        }
        let modulus = canonical_irreducible(&prime, e)?;
        let modulus = modulus.coeffs().iter().map(|c| c.0).collect();
        Ok(FqField(Arc::new(FqInner { p, e, q, modulus })))
    }

    /// Field of order `q` given as a prime power.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
        Self::new(p, e)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn e(&self) -> usize {
        self.0.e
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    /// Modulus over `F_p`, constant term first; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        (self.0.e > 1).then_some(&self.0.modulus[..])
    }

    /// Reduces an integer into the prime field.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.0.p as i64) as u64)
    }

    pub fn from_index(&self, i: u64) -> FqElem {
        debug_assert!(i < self.0.q);
        FqElem(i)
    }

    pub fn index(&self, a: FqElem) -> u64 {
        a.0
    }

    /// The generator `u` (the class of `x`); for prime fields this is `0`.
    pub fn generator(&self) -> FqElem {
        if self.0.e == 1 {
            FqElem(0)
        } else {
            FqElem(self.0.p)
        }
    }

    pub fn digits(&self, a: FqElem) -> Vec<u64> {
        let mut v = a.0;
        (0..self.0.e)
            .map(|_| {
                let d = v % self.0.p;
                v /= self.0.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> FqElem {
        let p = self.0.p;
        FqElem(digits.iter().rev().fold(0, |acc, &d| acc * p + d % p))
    }

    pub fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        FqElem(rng.gen_range(0..self.0.q))
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.0.q).map(FqElem)
    }

    #[inline]
    fn mul_ext(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        let e = self.0.e;
        let mut da = [0u64; 64];
        let mut db = [0u64; 64];
        let (mut x, mut y) = (a, b);
        for i in 0..e {
            da[i] = x % p;
            x /= p;
            db[i] = y % p;
            y /= p;
        }
        let mut prod = [0u64; 128];
        for i in 0..e {
            if da[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        let m = &self.0.modulus;
        for k in (e..2 * e - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..e {
                prod[k - e + j] = (prod[k - e + j] + c * (p - m[j])) % p;
            }
        }
        let mut out = 0;
        for i in (0..e).rev() {
            out = out * p + prod[i];
        }
        out
    }
}

impl FiniteField for FqField {
    type Elem = FqElem;

    fn fq(&self) -> &FqField {
        self
    }

    fn fq_degree(&self) -> usize {
        1
    }

    fn zero(&self) -> FqElem {
        FqElem(0)
    }

    fn one(&self) -> FqElem {
        FqElem(1)
    }

    #[inline]
    fn is_zero(&self, a: &FqElem) -> bool {
        a.0 == 0
    }

    #[inline]
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.0.p;
        if self.0.e == 1 {
            let s = a.0 + b.0;
            FqElem(if s >= p { s - p } else { s })
        } else if p == 2 {
            FqElem(a.0 ^ b.0)
        } else {
            let (mut x, mut y, mut out, mut pw) = (a.0, b.0, 0, 1);
            for _ in 0..self.0.e {
                out += ((x % p + y % p) % p) * pw;
                x /= p;
                y /= p;
                pw *= p;
            }
            FqElem(out)
        }
    }

    #[inline]
    fn neg(&self, a: &FqElem) -> FqElem {
        let p = self.0.p;
        if self.0.e == 1 {
            FqElem(if a.0 == 0 { 0 } else { p - a.0 })
        } else if p == 2 {
            *a
        } else {
            let (mut x, mut out, mut pw) = (a.0, 0, 1);
            for _ in 0..self.0.e {
                out += ((p - x % p) % p) * pw;
                x /= p;
                pw *= p;
            }
            FqElem(out)
        }
    }

    #[inline]
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if self.0.e == 1 {
            let p = self.0.p;
            FqElem(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + p - b.0 })
        } else {
            self.add(a, &self.neg(b))
        }
    }

    #[inline]
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if self.0.e == 1 {
            FqElem(((a.0 as u128 * b.0 as u128) % self.0.p as u128) as u64)
        } else {
            FqElem(self.mul_ext(a.0, b.0))
        }
    }

    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            return None;
        }
        if self.0.e == 1 {
            // extended Euclid on integers
            let p = self.0.p as i128;
            let (mut r0, mut r1) = (p, a.0 as i128);
            let (mut s0, mut s1) = (0i128, 1i128);
            while r1 != 0 {
                let t = r0 / r1;
                (r0, r1) = (r1, r0 - t * r1);
                (s0, s1) = (s1, s0 - t * s1);
            }
            return Some(FqElem(s0.rem_euclid(p) as u64));
        }
        Some(self.pow_u64(a, self.0.q - 2))
    }

    fn from_fq(&self, c: FqElem) -> FqElem {
        c
    }

    fn to_fq_coords(&self, a: &FqElem) -> Vec<FqElem> {
        vec![*a]
    }

    fn from_fq_coords(&self, coords: &[FqElem]) -> FqElem {
        coords[0]
    }

    fn frobenius(&self, a: &FqElem) -> FqElem {
        *a
    }

    fn order(&self) -> BigUint {
        BigUint::from(self.0.q)
    }

    fn element_at(&self, index: u128) -> FqElem {
        FqElem(index as u64)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        self.random_elem(rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;

    #[test]
    fn prime_field_has_no_modulus() {
        let f = FqField::new(2, 1).unwrap();
        assert!(f.modulus().is_none());
        assert_eq!(f.q(), 2);
    }

    #[test]
    fn f4_modulus_is_the_unique_quadratic() {
        // oracle: the only monic quadratic over F_2 with no root in F_2
        let f2 = FqField::new(2, 1).unwrap();
        let mut irreducible = Vec::new();
        for c0 in 0..2u64 {
            for c1 in 0..2u64 {
                let has_root = (0..2u64).any(|x| (c0 + c1 * x + x * x) % 2 == 0);
                if !has_root {
                    irreducible.push(vec![c0, c1, 1]);
                }
            }
        }
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        let f4 = FqField::new(2, 2).unwrap();
        assert_eq!(f4.modulus().unwrap(), &[1, 1, 1]);
        let _ = Poly::<FqField>::zero(&f2);
    }

    #[test]
    fn composite_characteristic_is_rejected() {
        assert_eq!(FqField::new(4, 1).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn size_bound_is_enforced() {
        assert!(matches!(FqField::new(2, 41), Err(Error::SizeExceeded { .. })));
        assert!(FqField::with_bound(2, 41, 1 << 41).is_ok());
    }

    #[test]
    fn construction_is_idempotent() {
        assert_eq!(FqField::new(3, 2).unwrap(), FqField::new(3, 2).unwrap());
    }

    #[test]
    fn prime_power_splitting() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (3, 2), (5, 1), (2, 3)] {
            let f = FqField::new(p, e).unwrap();
            let elems: Vec<_> = f.elements().collect();
            for a in &elems {
                assert_eq!(f.add(a, &f.neg(a)), f.zero());
                if !f.is_zero(a) {
                    assert_eq!(f.mul(a, &f.inv(a).unwrap()), f.one());
                }
                assert_eq!(f.pow_u64(a, f.q()), *a);
                for b in &elems {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(&f.add(a, b), b), *a);
                    for c in &elems {
                        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                    }
                }
            }
        }
    }
}
