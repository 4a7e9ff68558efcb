//! Reduction of a Drinfeld module over `A` at a prime `p`.

use crate::algebra::{is_irreducible, APoly, ExtElem, ExtField, FiniteField};
use crate::drinfeld::{APolyDomain, DrinfeldModule, FieldDomain, FrobeniusDomain};
use crate::error::{Error, Result};

/// `phi mod p` over the residue field `F_p = A/p`, presented with modulus
/// `p` itself so that `gamma(T)` is the class of `T`.
#[derive(Clone, Debug)]
pub struct ReducedModule {
    prime: APoly,
    field: ExtField,
    phi: DrinfeldModule<FieldDomain<ExtField>>,
}

impl ReducedModule {
    pub fn prime(&self) -> &APoly {
        &self.prime
    }

    /// The residue field `F_p`.
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn phi(&self) -> &DrinfeldModule<FieldDomain<ExtField>> {
        &self.phi
    }

    pub fn rank(&self) -> usize {
        self.phi.rank()
    }

    /// `deg p`, so that `|F_p| = q^deg`.
    pub fn degree(&self) -> usize {
        self.field.fq_degree()
    }
}

/// Image of `a` in `A/p` with the power basis `1, T, ..., T^(d-1)`.
pub fn residue_of(field: &ExtField, prime: &APoly, a: &APoly) -> ExtElem {
    let d = field.fq_degree();
    let rem = a.rem(prime).expect("nonzero prime");
    let mut coords = vec![field.fq().zero(); d];
    coords[..rem.coeffs().len()].copy_from_slice(rem.coeffs());
    field.from_fq_coords(&coords)
}

/// Reduces the coefficients of `phi_T` modulo the monic irreducible `p`.
pub fn reduce_at(phi: &DrinfeldModule<APolyDomain>, p: &APoly) -> Result<ReducedModule> {
    if !p.is_monic() || !is_irreducible(p) {
        return Err(Error::NotIrreducible(crate::text::format_apoly(p)));
    }
    let fq = phi.domain().fq();
    let field = ExtField::with_modulus(fq, p)?;
    let gamma = residue_of(&field, p, &APoly::x(fq));
    let domain = FieldDomain::new(&field, gamma);
    let coeffs = phi.phi_t().coeffs();
    let middle: Vec<ExtElem> = coeffs[1..coeffs.len() - 1].iter().map(|c| residue_of(&field, p, c)).collect();
    Ok(ReducedModule { prime: p.clone(), field, phi: DrinfeldModule::new(&domain, middle) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FqField;
    use crate::drinfeld::{carlitz, module_over_a};

    #[test]
    fn examples() {
        let f = FqField::new(2, 1).unwrap();
        let red = reduce_at(&carlitz(&f), &APoly::from_ints(&f, &[1, 1])).unwrap();
        let d = red.phi().domain();
        // gamma(T) = 1, phi_T(x) = x + x^2
        assert_eq!(red.phi().phi_t().coeffs(), &[d.one(), d.one()][..]);
        let phi = module_over_a(&f, vec![APoly::zero(&f)]);
        let red = reduce_at(&phi, &APoly::x(&f)).unwrap();
        let d = red.phi().domain();
        assert_eq!(red.phi().phi_t().coeffs(), &[d.zero(), d.zero(), d.one()][..]);
        assert!(matches!(reduce_at(&phi, &APoly::from_ints(&f, &[0, 1, 1])), Err(Error::NotIrreducible(_))));
    }

    #[test]
    fn gamma_is_a_root_of_the_prime() {
        let f = FqField::new(3, 1).unwrap();
        let p = APoly::from_ints(&f, &[2, 2, 0, 1]);
        let red = reduce_at(&carlitz(&f), &p).unwrap();
        let d = red.phi().domain();
        assert!(d.is_zero(&d.gamma(&p)));
        assert_eq!(red.degree(), 3);
    }
}
