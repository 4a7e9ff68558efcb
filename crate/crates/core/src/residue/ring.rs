//! The quotient ring `A/NA`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::algebra::{factor, APoly, FiniteField, FqField};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct ResidueRing(Arc<RingInner>);

struct RingInner {
    modulus: APoly,
    factors: Vec<(APoly, usize)>,
}

impl PartialEq for ResidueRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.modulus == other.0.modulus
    }
}

impl Eq for ResidueRing {}

impl fmt::Debug for ResidueRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A/({:?})", self.0.modulus)
    }
}

impl ResidueRing {
    /// `A/NA` for a monic nonconstant `N`.
    pub fn new(modulus: &APoly) -> Result<Self> {
        if modulus.deg().unwrap_or(0) == 0 {
            return Err(Error::ConstantInput);
        }
        if !modulus.is_monic() {
            return Err(Error::InvalidArgument(format!("modulus {modulus:?} is not monic")));
        }
        let factors = factor(modulus)?;
        Ok(ResidueRing(Arc::new(RingInner { modulus: modulus.clone(), factors })))
    }

    pub fn field(&self) -> &FqField {
        self.0.modulus.field()
    }

    pub fn modulus(&self) -> &APoly {
        &self.0.modulus
    }

    pub fn degree(&self) -> usize {
        self.0.modulus.deg().expect("nonconstant modulus")
    }

    /// `factor(N)`: monic irreducibles with multiplicities.
    pub fn factors(&self) -> &[(APoly, usize)] {
        &self.0.factors
    }

    /// Number of elements, `q^(deg N)`.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.field().q()).pow(self.degree() as u32)
    }

    pub fn reduce(&self, a: &APoly) -> APoly {
        a.rem(&self.0.modulus).expect("nonzero modulus")
    }

    pub fn zero(&self) -> APoly {
        APoly::zero(self.field())
    }

    pub fn one(&self) -> APoly {
        APoly::one(self.field())
    }

    pub fn add(&self, a: &APoly, b: &APoly) -> APoly {
        a.add(b)
    }

    pub fn sub(&self, a: &APoly, b: &APoly) -> APoly {
        a.sub(b)
    }

    pub fn mul(&self, a: &APoly, b: &APoly) -> APoly {
        self.reduce(&a.mul(b))
    }

    pub fn is_unit(&self, a: &APoly) -> bool {
        !a.is_zero() && a.gcd(&self.0.modulus).map(|g| g.is_one()).unwrap_or(false)
    }

    pub fn inv(&self, a: &APoly) -> Option<APoly> {
        a.inv_mod(&self.0.modulus).ok().flatten()
    }

    /// The residue with the given position in the canonical order:
    /// coefficient vectors `(c_0, ..., c_{d-1})` lexicographically, `c_0` first.
    pub fn element_at(&self, mut idx: u128) -> APoly {
        let f = self.field();
        let q = f.q() as u128;
        let d = self.degree();
        let mut coeffs = vec![f.zero(); d];
        for slot in coeffs.iter_mut().rev() {
            *slot = f.element_at(idx % q);
            idx /= q;
        }
        APoly::from_coeffs(f, coeffs)
    }

    /// Every residue, in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = APoly> + '_ {
        let n = (self.field().q() as u128).pow(self.degree() as u32);
        (0..n).map(move |i| self.element_at(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_of_small_rings() {
        let f = FqField::new(2, 1).unwrap();
        let ring = ResidueRing::new(&APoly::from_ints(&f, &[0, 0, 1])).unwrap();
        let units: Vec<_> = ring.elements().filter(|a| ring.is_unit(a)).collect();
        assert_eq!(units.len(), 2);
        for u in &units {
            assert!(ring.mul(u, &ring.inv(u).unwrap()).is_one());
        }
        assert_eq!(ResidueRing::new(&APoly::one(&f)).unwrap_err(), Error::ConstantInput);
    }

    #[test]
    fn enumeration_order_puts_constant_coefficient_first() {
        let f = FqField::new(2, 1).unwrap();
        let ring = ResidueRing::new(&APoly::from_ints(&f, &[0, 0, 1])).unwrap();
        let all: Vec<_> = ring.elements().collect();
        assert_eq!(
            all,
            vec![
                APoly::zero(&f),
                APoly::from_ints(&f, &[0, 1]),
                APoly::from_ints(&f, &[1]),
                APoly::from_ints(&f, &[1, 1]),
            ]
        );
    }
}
