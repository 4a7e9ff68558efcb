//! Drinfeld modules `phi_T = gamma(T) + c_1 tau + ... + c_{r-1} tau^{r-1} + tau^r`.

use std::collections::HashMap;

use super::domain::{APolyDomain, FrobeniusDomain, GenericDomain};
use super::twisted::TwistedPoly;
use crate::algebra::{APoly, FqField, MPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DrinfeldModule<D: FrobeniusDomain> {
    domain: D,
    rank: usize,
    phi_t: TwistedPoly<D>,
}

impl<D: FrobeniusDomain> DrinfeldModule<D> {
    /// `phi_T = gamma(T) + sum_{i=1}^{r-1} c_i tau^i + tau^r` from
    /// `middle = [c_1, ..., c_{r-1}]`.
    pub fn new(domain: &D, middle: Vec<D::Elem>) -> Self {
        let rank = middle.len() + 1;
        let mut coeffs = Vec::with_capacity(rank + 1);
        coeffs.push(domain.gamma_t());
        coeffs.extend(middle);
        coeffs.push(domain.one());
        DrinfeldModule { domain: domain.clone(), rank, phi_t: TwistedPoly::from_coeffs(domain, coeffs) }
    }

    /// Validates a given `phi_T`: constant term `gamma(T)`, top coefficient 1.
    pub fn from_phi_t(phi_t: TwistedPoly<D>) -> Result<Self> {
        let domain = phi_t.domain().clone();
        let rank = phi_t.degree().filter(|&r| r >= 1).ok_or_else(|| Error::InvalidArgument("phi_T must have positive twisted degree".into()))?;
        if phi_t.coeff(0) != domain.gamma_t() {
            return Err(Error::InvalidArgument("constant term of phi_T must be gamma(T)".into()));
        }
        if phi_t.coeff(rank) != domain.one() {
            return Err(Error::InvalidArgument("phi_T must be monic".into()));
        }
        Ok(DrinfeldModule { domain, rank, phi_t })
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn phi_t(&self) -> &TwistedPoly<D> {
        &self.phi_t
    }

    /// `phi_N` by Horner's rule in the twisted ring.
    pub fn phi_of_horner(&self, n: &APoly) -> Result<TwistedPoly<D>> {
        if n.field() != self.domain.fq() {
            return Err(Error::DomainMismatch);
        }
        let d = &self.domain;
        let mut acc = TwistedPoly::zero(d);
        for a in n.coeffs().iter().rev() {
            acc = acc.mul(&self.phi_t)?.add(&TwistedPoly::constant(d, d.from_fq(*a)))?;
        }
        Ok(acc)
    }

    /// `phi_N = a_0 + a_1 phi_T + a_2 (phi_T o phi_T) + ...` for
    /// `N = a_0 + a_1 T + a_2 T^2 + ...`.
    pub fn phi_of_weighted_sum(&self, n: &APoly) -> Result<TwistedPoly<D>> {
        if n.field() != self.domain.fq() {
            return Err(Error::DomainMismatch);
        }
        let d = &self.domain;
        let mut acc = TwistedPoly::zero(d);
        let mut power = TwistedPoly::one(d);
        for (i, a) in n.coeffs().iter().enumerate() {
            if i > 0 {
                power = power.mul(&self.phi_t)?;
            }
            if a.value() != 0 {
                acc = acc.add(&power.scale_left(&d.from_fq(*a)))?;
            }
        }
        Ok(acc)
    }

    /// `phi_N`. Debug builds compute it both ways and assert agreement.
    pub fn phi_of(&self, n: &APoly) -> Result<TwistedPoly<D>> {
        let h = self.phi_of_horner(n)?;
        debug_assert_eq!(h, self.phi_of_weighted_sum(n)?, "Horner and weighted-sum constructions disagree");
        Ok(h)
    }
}

/// Free function form of [`DrinfeldModule::phi_of`].
pub fn phi_of<D: FrobeniusDomain>(phi: &DrinfeldModule<D>, n: &APoly) -> Result<TwistedPoly<D>> {
    phi.phi_of(n)
}

/// The Carlitz module `phi_T = T + tau` over `A`.
pub fn carlitz(field: &FqField) -> DrinfeldModule<APolyDomain> {
    DrinfeldModule::new(&APolyDomain::new(field), Vec::new())
}

/// The generic rank-`r` module `phi_T = T + g1 tau + ... + g_{r-1} tau^{r-1} + tau^r`
/// over `F_q[T, g1, ..., g_{r-1}]`.
pub fn generic_module(field: &FqField, r: usize) -> Result<DrinfeldModule<GenericDomain>> {
    if r == 0 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    let d = GenericDomain::new(field, r);
    let middle = (1..r).map(|i| d.var(i)).collect();
    Ok(DrinfeldModule::new(&d, middle))
}

/// Substitutes `g_i -> images["g<i>"]` in every coefficient of `phi_T`.
pub fn specialize_module(
    phi: &DrinfeldModule<GenericDomain>,
    images: &HashMap<String, APoly>,
) -> Result<DrinfeldModule<APolyDomain>> {
    let field = phi.domain().fq();
    let d = APolyDomain::new(field);
    let coeffs: Vec<APoly> = phi.phi_t().coeffs().iter().map(|c: &MPoly| c.specialize(images)).collect::<Result<_>>()?;
    DrinfeldModule::from_phi_t(TwistedPoly::from_coeffs(&d, coeffs))
}

/// The rank-`r` module over `A` with `phi_T = T + sum c_i tau^i + tau^r`.
pub fn module_over_a(field: &FqField, middle: Vec<APoly>) -> DrinfeldModule<APolyDomain> {
    DrinfeldModule::new(&APolyDomain::new(field), middle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::monic_polys;
    use crate::algebra::{ExtField, FiniteField};
    use crate::drinfeld::domain::FieldDomain;
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_apoly(f: &FqField, max_deg: usize, rng: &mut ChaCha8Rng) -> APoly {
        let d = rng.gen_range(0..=max_deg);
        APoly::from_coeffs(f, (0..=d).map(|_| f.random(rng)).collect())
    }

    #[test]
    fn phi_of_examples() {
        let f = FqField::new(2, 1).unwrap();
        let c = carlitz(&f);
        assert_eq!(c.phi_of(&APoly::one(&f)).unwrap(), TwistedPoly::one(c.domain()));
        let t2 = c.phi_of(&APoly::from_ints(&f, &[0, 0, 1])).unwrap();
        assert_eq!(t2.to_additive().format_x(), "T^2*X + (T^2+T)*X^2 + X^4");
        assert!(c.phi_of(&APoly::zero(&f)).unwrap().is_zero());
        let g = generic_module(&f, 2).unwrap();
        let pt = g.phi_of(&APoly::x(&f)).unwrap();
        assert_eq!(pt.to_additive().ordinary_degree(), Some(BigUint::from(4u32)));
        assert_eq!(pt.to_additive().format_x(), "T*X + g1*X^2 + X^4");
    }

    #[test]
    fn specialization_examples() {
        let f = FqField::new(2, 1).unwrap();
        let g = generic_module(&f, 2).unwrap();
        let mut images = HashMap::new();
        images.insert("g1".to_string(), APoly::zero(&f));
        let s = specialize_module(&g, &images).unwrap();
        assert_eq!(s.phi_t().to_additive().format_x(), "T*X + X^4");
        images.insert("g1".to_string(), APoly::from_ints(&f, &[1, 1]));
        let s = specialize_module(&g, &images).unwrap();
        assert_eq!(s.phi_of(&APoly::x(&f)).unwrap().coeffs(), &[APoly::x(&f), APoly::from_ints(&f, &[1, 1]), APoly::one(&f)][..]);
        assert_eq!(specialize_module(&g, &HashMap::new()).unwrap_err(), Error::MissingGenerator("g1".into()));
    }

    #[test]
    fn specialization_commutes_with_phi_of() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for q in [2u64, 3] {
            let f = FqField::new(q, 1).unwrap();
            for r in [2usize, 3] {
                let g = generic_module(&f, r).unwrap();
                for _ in 0..5 {
                    let images: HashMap<String, APoly> =
                        (1..r).map(|i| (format!("g{i}"), random_apoly(&f, 2, &mut rng))).collect();
                    let s = specialize_module(&g, &images).unwrap();
                    let n = random_apoly(&f, 3, &mut rng);
                    let lhs: Vec<APoly> = g.phi_of(&n).unwrap().coeffs().iter().map(|c| c.specialize(&images).unwrap()).collect();
                    let lhs = TwistedPoly::from_coeffs(s.domain(), lhs);
                    assert_eq!(lhs, s.phi_of(&n).unwrap());
                }
            }
        }
    }

    #[test]
    fn degree_law_and_constant_term_over_a() {
        let f = FqField::new(3, 1).unwrap();
        let phi = module_over_a(&f, vec![APoly::from_ints(&f, &[1, 0, 1])]);
        for n in monic_polys(&f, 2).unwrap() {
            let p = phi.phi_of(&n).unwrap();
            assert_eq!(p.degree(), Some(4));
            assert_eq!(p.coeff(0), n);
            assert!(p.coeff(4).is_one());
        }
    }

    #[test]
    fn fq_linearity_over_a_field() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let fq = FqField::new(3, 1).unwrap();
        let l = ExtField::new(&fq, 4).unwrap();
        let d = FieldDomain::new(&l, l.random(&mut rng));
        let phi = DrinfeldModule::new(&d, vec![l.random(&mut rng)]);
        let n = APoly::from_ints(&fq, &[1, 2, 1]);
        let f = phi.phi_of(&n).unwrap().to_additive();
        for _ in 0..20 {
            let x = l.random(&mut rng);
            let y = l.random(&mut rng);
            assert_eq!(f.eval(&l.add(&x, &y)), l.add(&f.eval(&x), &f.eval(&y)));
            for a in fq.elements() {
                assert_eq!(f.eval(&l.scale(a, &x)), l.scale(a, &f.eval(&x)));
            }
        }
    }

    #[test]
    fn from_phi_t_validates() {
        let f = FqField::new(2, 1).unwrap();
        let d = APolyDomain::new(&f);
        let bad = TwistedPoly::from_coeffs(&d, vec![APoly::one(&f), APoly::one(&f)]);
        assert!(DrinfeldModule::from_phi_t(bad).is_err());
        let nonmonic = TwistedPoly::from_coeffs(&d, vec![APoly::x(&f), APoly::x(&f)]);
        assert!(DrinfeldModule::from_phi_t(nonmonic).is_err());
    }
}
