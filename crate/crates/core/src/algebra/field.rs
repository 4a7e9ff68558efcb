use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

use super::fq::{FqElem, FqField};

/// A finite field presented as an explicit vector space over a fixed ground
/// field `F_q`.
///
/// Every field in this crate sits over one `FqField`; elements have
/// coordinates with respect to a fixed `F_q`-basis, which is what the dense
/// linear algebra and the canonical enumeration order are built on.
pub trait FiniteField: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync + 'static;

    fn fq(&self) -> &FqField;

    /// Dimension over `F_q`.
    fn fq_degree(&self) -> usize;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn from_fq(&self, c: FqElem) -> Self::Elem;
    fn to_fq_coords(&self, a: &Self::Elem) -> Vec<FqElem>;
    fn from_fq_coords(&self, coords: &[FqElem]) -> Self::Elem;

    /// `a^q`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow_u64(a, self.fq().q())
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn order(&self) -> BigUint {
        BigUint::from(self.fq().q()).pow(self.fq_degree() as u32)
    }

    /// Number of elements when it fits a `u128`.
    fn order_u128(&self) -> Option<u128> {
        (self.fq().q() as u128).checked_pow(self.fq_degree() as u32)
    }

    /// Whether the `F_q`-coordinates are on a power basis `1, z, z^2, ...`.
    fn has_power_basis(&self) -> bool {
        true
    }

    fn characteristic(&self) -> u64 {
        self.fq().p()
    }

    fn pow_u64(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// `a^(q^k)`.
    fn frobenius_pow(&self, a: &Self::Elem, k: usize) -> Self::Elem {
        let mut x = a.clone();
        for _ in 0..k {
            x = self.frobenius(&x);
        }
        x
    }

    fn scale(&self, c: FqElem, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_fq(c), a)
    }

    /// The element with the given position in the canonical enumeration
    /// order (lexicographic on coordinate vectors, coordinate 0 first).
    fn element_at(&self, mut index: u128) -> Self::Elem {
        let q = self.fq().q() as u128;
        let n = self.fq_degree();
        let mut coords = vec![self.fq().zero(); n];
        for slot in coords.iter_mut().rev() {
            *slot = self.fq().from_index((index % q) as u64);
            index /= q;
        }
        self.from_fq_coords(&coords)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem
    where
        Self: Sized,
    {
        let coords: Vec<FqElem> = (0..self.fq_degree()).map(|_| self.fq().random_elem(rng)).collect();
        self.from_fq_coords(&coords)
    }

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem
    where
        Self: Sized,
    {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// `|F| - 2`, the exponent used for inversion by Fermat.
    fn inverse_exponent(&self) -> BigUint {
        let n = self.order();
        if n <= BigUint::one() + BigUint::one() {
            return BigUint::zero();
        }
        n - 2u32
    }
}
