//! Dense univariate polynomials over a [`FiniteField`].
//!
//! [`APoly`], the ring `A = F_q[T]`, is the instance over the ground field.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;

use super::field::FiniteField;
use super::fq::{FqElem, FqField};
use crate::error::{Error, Result};

/// Polynomial degree, with a distinguished value for the zero polynomial.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone)]
pub struct Poly<F: FiniteField> {
    field: F,
    coeffs: Vec<F::Elem>,
}

/// An element of `A = F_q[T]`.
pub type APoly = Poly<FqField>;

impl<F: FiniteField> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl<F: FiniteField> Eq for Poly<F> {}

impl<F: FiniteField> Hash for Poly<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state)
    }
}

/// Degree first, then coefficient vectors lexicographically (constant term first).
impl<F: FiniteField> Ord for Poly<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl<F: FiniteField> PartialOrd for Poly<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: FiniteField> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<F: FiniteField> Poly<F> {
    pub fn from_coeffs(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &F) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// The variable (`T` for [`APoly`]).
    pub fn x(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as an integer; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    pub fn lead(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::from_coeffs(f, out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = self.field.inv(l).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let lead = divisor.lead().ok_or(Error::DivisionByZero)?;
        let db = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((Self::zero(f), self.clone()));
        }
        let lead_inv = f.inv(lead).ok_or(Error::DivisionByZero)?;
        let monic_divisor = f.is_one(lead);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len() - db];
        for k in (db..rem.len()).rev() {
            if f.is_zero(&rem[k]) {
                continue;
            }
            let c = if monic_divisor { rem[k].clone() } else { f.mul(&rem[k], &lead_inv) };
            for (j, d) in divisor.coeffs.iter().enumerate().take(db) {
                let i = k - db + j;
                rem[i] = f.sub(&rem[i], &f.mul(&c, d));
            }
            rem[k] = f.zero();
            quot[k - db] = c;
        }
        rem.truncate(db);
        Ok((Self::from_coeffs(f, quot), Self::from_coeffs(f, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = f.inv(r0.lead().unwrap()).unwrap();
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Self) -> Result<Option<Self>> {
        let (g, s, _) = self.rem(m)?.ext_gcd(m)?;
        if g.is_one() {
            Ok(Some(s.rem(m)?))
        } else {
            Ok(None)
        }
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Result<Self> {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Result<Self> {
        let mut acc = Self::one(&self.field).rem(m)?;
        let base = self.rem(m)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m)?;
            if e.bit(i) {
                acc = acc.mul_mod(&base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^q mod m`, using that `(sum a_i x^i)^q = sum a_i^q (x^q)^i`.
    ///
    /// `xq_powers[i]` must hold `x^(q*i) mod m` for `i < deg m`.
    pub fn frobenius_mod(&self, xq_powers: &[Self], m: &Self) -> Result<Self> {
        let f = &self.field;
        let n = m.deg().ok_or(Error::DivisionByZero)?;
        let mut acc = vec![f.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            let aq = f.frobenius(a);
            for (j, c) in xq_powers[i].coeffs.iter().enumerate() {
                acc[j] = f.add(&acc[j], &f.mul(&aq, c));
            }
        }
        Ok(Self::from_coeffs(f, acc))
    }

    /// Table of `x^(q*i) mod m` for `i < deg m`, input to [`Poly::frobenius_mod`].
    pub fn frobenius_table(m: &Self) -> Result<Vec<Self>> {
        let f = m.field();
        let n = m.deg().ok_or(Error::DivisionByZero)?;
        let xq = Self::x(f).pow_mod(&BigUint::from(f.fq().q()), m)?;
        let mut table = Vec::with_capacity(n);
        let mut cur = Self::one(f).rem(m)?;
        for _ in 0..n {
            table.push(cur.clone());
            cur = cur.mul_mod(&xq, m)?;
        }
        Ok(table)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.scale(f.fq().from_int((i as u64 % f.characteristic()) as i64), c))
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Self::zero(f), |acc, c| acc.mul(g).add(&Self::constant(f, c.clone())))
    }
}

impl APoly {
    /// Builds an element of `A` from integer coefficients (constant term first).
    pub fn from_ints(field: &FqField, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// `self^(q^k)`, which over `F_q` is `self(T^(q^k))`.
    pub fn frobenius_power(&self, k: usize) -> Self {
        let f = self.field();
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let step = (f.q() as usize).pow(k as u32);
        let mut coeffs = vec![f.zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = *c;
        }
        Self::from_coeffs(f, coeffs)
    }

    /// Exponentiation using the base-`q` digits of `e` and the
    /// Frobenius shortcut `f^(q^k) = f(T^(q^k))`.
    pub fn pow_big(&self, e: &BigUint) -> Self {
        let f = self.field();
        let q = BigUint::from(f.q());
        let mut acc = Self::one(f);
        let mut rest = e.clone();
        let mut k = 0;
        while rest > BigUint::ZERO {
            let digit = (&rest % &q).to_u64_digits().first().copied().unwrap_or(0);
            if digit > 0 {
                acc = acc.mul(&self.frobenius_power(k).pow(digit));
            }
            rest /= &q;
            k += 1;
        }
        acc
    }
}

/// Chinese remaindering: the unique `x` with `deg x < sum deg m_i` and
/// `x = v_i mod m_i`.
pub fn crt<F: FiniteField>(residues: &[(Poly<F>, Poly<F>)]) -> Result<Poly<F>> {
    let (first_v, first_m) = residues.first().ok_or_else(|| Error::InvalidArgument("empty CRT system".into()))?;
    let mut x = first_v.rem(first_m)?;
    let mut modulus = first_m.clone();
    for (v, m) in &residues[1..] {
        let (g, s, _) = modulus.ext_gcd(m)?;
        if !g.is_one() {
            return Err(Error::ModuliNotCoprime);
        }
        // x' = x + modulus * s * (v - x)  (mod modulus*m), since s*modulus = 1 mod m
        let delta = v.sub(&x).rem(m)?;
        let t = s.mul(&delta).rem(m)?;
        let new_mod = modulus.mul(m);
        x = x.add(&modulus.mul(&t)).rem(&new_mod)?;
        modulus = new_mod;
    }
    Ok(x)
}

/// All monic polynomials of degree exactly `d` in the canonical order:
/// coefficient vectors `(c_0, ..., c_{d-1})` lexicographically, `c_0` first.
pub fn monic_polys<F: FiniteField>(field: &F, d: usize) -> Result<impl Iterator<Item = Poly<F>> + '_> {
    let size = field.order_u128().ok_or_else(|| Error::SizeExceeded { what: "field order".into(), limit: "2^128".into() })?;
    let total = size.checked_pow(d as u32).ok_or_else(|| Error::SizeExceeded {
        what: format!("|F|^{d} monic polynomials"),
        limit: "2^128".into(),
    })?;
    Ok((0..total).map(move |mut idx| {
        let mut coeffs = vec![field.zero(); d + 1];
        coeffs[d] = field.one();
        for i in (0..d).rev() {
            coeffs[i] = field.element_at(idx % size);
            idx /= size;
        }
        Poly::from_coeffs(field, coeffs)
    }))
}

pub fn fq_to_poly(field: &FqField, c: FqElem) -> APoly {
    APoly::constant(field, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FqField {
        FqField::new(2, 1).unwrap()
    }

    fn p(f: &FqField, c: &[i64]) -> APoly {
        APoly::from_ints(f, c)
    }

    #[test]
    fn divmod_examples() {
        let f = f2();
        let t = APoly::x(&f);
        let (q, r) = p(&f, &[0, 1, 1]).divmod(&t).unwrap();
        assert_eq!(q, p(&f, &[1, 1]));
        assert!(r.is_zero());
        // multiply back
        assert_eq!(q.mul(&t).add(&r), p(&f, &[0, 1, 1]));
        let (q, r) = t.divmod(&p(&f, &[0, 0, 1])).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, t);
        assert_eq!(t.divmod(&APoly::zero(&f)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn gcd_examples() {
        let f = f2();
        let a = p(&f, &[0, 1, 1]);
        let t = APoly::x(&f);
        let g = a.gcd(&t).unwrap();
        assert_eq!(g, t);
        assert!(a.rem(&g).unwrap().is_zero() && t.rem(&g).unwrap().is_zero());
        assert!(a.gcd(&APoly::one(&f)).unwrap().is_one());
        let f3 = FqField::new(3, 1).unwrap();
        let b = p(&f3, &[1, 0, 2]);
        assert_eq!(b.gcd(&b).unwrap(), b.monic());
        assert_eq!(APoly::zero(&f).gcd(&APoly::zero(&f)).unwrap_err(), Error::BothZero);
    }

    #[test]
    fn degree_sentinel_is_below_zero() {
        let f = f2();
        assert_eq!(APoly::zero(&f).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(APoly::one(&f).degree(), Degree::Finite(0));
    }

    #[test]
    fn crt_examples() {
        let f = f2();
        let t = APoly::x(&f);
        let x = crt(&[(APoly::zero(&f), t.clone()), (APoly::one(&f), p(&f, &[1, 1]))]).unwrap();
        assert_eq!(x, t);
        let v = p(&f, &[1, 1, 1, 1]);
        let m = p(&f, &[1, 1, 1]);
        assert_eq!(crt(&[(v.clone(), m.clone())]).unwrap(), v.rem(&m).unwrap());
        assert_eq!(
            crt(&[(APoly::one(&f), t.clone()), (APoly::one(&f), t.clone())]).unwrap_err(),
            Error::ModuliNotCoprime
        );
    }

    #[test]
    fn pow_big_matches_repeated_multiplication() {
        let f = FqField::new(3, 1).unwrap();
        let a = p(&f, &[1, 2, 1]);
        for e in [0u64, 1, 2, 3, 5, 9, 10, 28] {
            assert_eq!(a.pow_big(&BigUint::from(e)), a.pow(e));
        }
    }

    #[test]
    fn monic_enumeration_order() {
        let f = f2();
        let all: Vec<_> = monic_polys(&f, 1).unwrap().collect();
        assert_eq!(all, vec![p(&f, &[0, 1]), p(&f, &[1, 1])]);
        assert_eq!(monic_polys(&f, 3).unwrap().count(), 8);
    }
}
