//! Twisted polynomials `sum c_i tau^i` with `tau * a = a^q * tau`, and their
//! additive counterparts `sum c_i X^(q^i)`.

use num_bigint::BigUint;

use super::domain::FrobeniusDomain;
use crate::error::{Error, Result};
use crate::text::format_operator;

#[derive(Clone, Debug, PartialEq)]
pub struct TwistedPoly<D: FrobeniusDomain> {
    domain: D,
    coeffs: Vec<D::Elem>,
}

impl<D: FrobeniusDomain> TwistedPoly<D> {
    pub fn from_coeffs(domain: &D, mut coeffs: Vec<D::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| domain.is_zero(c)) {
            coeffs.pop();
        }
        TwistedPoly { domain: domain.clone(), coeffs }
    }

    pub fn zero(domain: &D) -> Self {
        TwistedPoly { domain: domain.clone(), coeffs: Vec::new() }
    }

    pub fn one(domain: &D) -> Self {
        Self::constant(domain, domain.one())
    }

    pub fn constant(domain: &D, c: D::Elem) -> Self {
        Self::from_coeffs(domain, vec![c])
    }

    /// `tau^k`.
    pub fn tau(domain: &D, k: usize) -> Self {
        let mut coeffs = vec![domain.zero(); k + 1];
        coeffs[k] = domain.one();
        TwistedPoly { domain: domain.clone(), coeffs }
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn coeffs(&self) -> &[D::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> D::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.domain.zero())
    }

    /// Twisted degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = &self.domain;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| d.add(&self.coeff(i), &other.coeff(i))).collect();
        Ok(Self::from_coeffs(d, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = &self.domain;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| d.sub(&self.coeff(i), &other.coeff(i))).collect();
        Ok(Self::from_coeffs(d, coeffs))
    }

    /// `c * self` (left multiplication by a constant).
    pub fn scale_left(&self, c: &D::Elem) -> Self {
        let d = &self.domain;
        Self::from_coeffs(d, self.coeffs.iter().map(|x| d.mul(c, x)).collect())
    }

    /// `self * other`: the coefficient of `tau^k` is
    /// `sum_{i+j=k} a_i * b_j^(q^i)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = &self.domain;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(d));
        }
        let mut out = vec![d.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (j, b) in other.coeffs.iter().enumerate() {
            if d.is_zero(b) {
                continue;
            }
            let mut twisted = b.clone();
            for (i, a) in self.coeffs.iter().enumerate() {
                if i > 0 {
                    twisted = d.frobenius_pow(&twisted, 1);
                }
                if d.is_zero(a) {
                    continue;
                }
                out[i + j] = d.add(&out[i + j], &d.mul(a, &twisted));
            }
        }
        Ok(Self::from_coeffs(d, out))
    }

    /// Reads the coefficients as the additive polynomial `sum c_i X^(q^i)`.
    pub fn to_additive(&self) -> AdditivePoly<D> {
        AdditivePoly { domain: self.domain.clone(), coeffs: self.coeffs.clone() }
    }

    /// `tau`-form, e.g. `T + (T^2+T)*τ + τ^2`.
    pub fn format_tau(&self) -> String {
        let terms: Vec<(String, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => "τ".to_string(),
                    _ => format!("τ^{i}"),
                };
                (self.domain.format(c), mono)
            })
            .collect();
        format_operator(&terms)
    }
}

/// Free function form of [`TwistedPoly::mul`].
pub fn twisted_mul<D: FrobeniusDomain>(a: &TwistedPoly<D>, b: &TwistedPoly<D>) -> Result<TwistedPoly<D>> {
    a.mul(b)
}

/// `sum c_i X^(q^i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdditivePoly<D: FrobeniusDomain> {
    domain: D,
    coeffs: Vec<D::Elem>,
}

impl<D: FrobeniusDomain> AdditivePoly<D> {
    pub fn coeffs(&self) -> &[D::Elem] {
        &self.coeffs
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn to_twisted(&self) -> TwistedPoly<D> {
        TwistedPoly::from_coeffs(&self.domain, self.coeffs.clone())
    }

    /// The ordinary polynomial as sparse `(exponent, coefficient)` pairs,
    /// exponents `q^i` ascending, zero coefficients omitted.
    pub fn expand(&self) -> Vec<(BigUint, D::Elem)> {
        let q = BigUint::from(self.domain.fq().q());
        let mut e = BigUint::from(1u32);
        let mut out = Vec::new();
        for c in &self.coeffs {
            if !self.domain.is_zero(c) {
                out.push((e.clone(), c.clone()));
            }
            e *= &q;
        }
        out
    }

    /// Ordinary degree `q^(twisted degree)`; `None` for zero.
    pub fn ordinary_degree(&self) -> Option<BigUint> {
        self.expand().last().map(|(e, _)| e.clone())
    }

    /// `f(x) = sum c_i x^(q^i)`.
    pub fn eval(&self, x: &D::Elem) -> D::Elem {
        let d = &self.domain;
        let mut acc = d.zero();
        let mut xp = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xp = d.frobenius_pow(&xp, 1);
            }
            acc = d.add(&acc, &d.mul(c, &xp));
        }
        acc
    }

    /// `X`-form, e.g. `T^2*X + (T^2+T)*X^2 + X^4`.
    pub fn format_x(&self) -> String {
        let terms: Vec<(String, String)> = self
            .expand()
            .into_iter()
            .map(|(e, c)| {
                let mono = if e == BigUint::from(1u32) { "X".to_string() } else { format!("X^{e}") };
                (self.domain.format(&c), mono)
            })
            .collect();
        format_operator(&terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{APoly, ExtField, FiniteField, FqField};
    use crate::drinfeld::domain::{APolyDomain, FieldDomain, GenericDomain};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn commutation_rule() {
        let f = FqField::new(3, 1).unwrap();
        let d = APolyDomain::new(&f);
        let a = APoly::from_ints(&f, &[1, 1]);
        let lhs = TwistedPoly::tau(&d, 1).mul(&TwistedPoly::constant(&d, a.clone())).unwrap();
        let rhs = TwistedPoly::from_coeffs(&d, vec![d.zero(), a.frobenius_power(1)]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn carlitz_square_by_hand() {
        let f = FqField::new(2, 1).unwrap();
        let d = GenericDomain::new(&f, 1);
        let t = d.var(0);
        let phi = TwistedPoly::from_coeffs(&d, vec![t.clone(), d.one()]);
        let sq = phi.mul(&phi).unwrap();
        let expect = vec![t.mul(&t), t.add(&t.mul(&t)), d.one()];
        assert_eq!(sq.coeffs(), &expect[..]);
    }

    /// Ordinary polynomial composition over a field, as an independent oracle.
    fn compose_dense(field: &ExtField, f: &AdditivePoly<FieldDomain<ExtField>>, g: &AdditivePoly<FieldDomain<ExtField>>, x: &crate::algebra::ExtElem) -> crate::algebra::ExtElem {
        let eval_dense = |p: &AdditivePoly<FieldDomain<ExtField>>, v: &crate::algebra::ExtElem| {
            p.expand().iter().fold(field.zero(), |acc, (e, c)| field.add(&acc, &field.mul(c, &field.pow(v, e))))
        };
        eval_dense(f, &eval_dense(g, x))
    }

    #[test]
    fn product_is_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let fq = FqField::new(3, 1).unwrap();
        let l = ExtField::new(&fq, 5).unwrap();
        let d = FieldDomain::new(&l, l.generator());
        for _ in 0..20 {
            let a = TwistedPoly::from_coeffs(&d, (0..3).map(|_| l.random(&mut rng)).collect());
            let b = TwistedPoly::from_coeffs(&d, (0..3).map(|_| l.random(&mut rng)).collect());
            let ab = a.mul(&b).unwrap().to_additive();
            for _ in 0..5 {
                let x = l.random(&mut rng);
                assert_eq!(ab.eval(&x), compose_dense(&l, &a.to_additive(), &b.to_additive(), &x));
            }
        }
    }

    #[test]
    fn additive_forms() {
        let f = FqField::new(2, 1).unwrap();
        let d = APolyDomain::new(&f);
        let tau = TwistedPoly::tau(&d, 1).to_additive();
        assert_eq!(tau.expand(), vec![(BigUint::from(2u32), d.one())]);
        assert!(TwistedPoly::zero(&d).to_additive().expand().is_empty());
        let phi = TwistedPoly::from_coeffs(&d, vec![APoly::x(&f), APoly::one(&f)]);
        assert_eq!(phi.to_additive().format_x(), "T*X + X^2");
        assert_eq!(phi.format_tau(), "T + τ");
    }

    #[test]
    fn domain_mismatch() {
        let d2 = APolyDomain::new(&FqField::new(2, 1).unwrap());
        let d3 = APolyDomain::new(&FqField::new(3, 1).unwrap());
        let a = TwistedPoly::one(&d2);
        let b = TwistedPoly::one(&d3);
        assert_eq!(a.mul(&b).unwrap_err(), Error::DomainMismatch);
    }
}
