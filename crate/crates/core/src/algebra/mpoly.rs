//! Sparse multivariate polynomials over `F_q` in the generators
//! `T, g1, ..., g_{n-1}`: the generic coefficient ring of a Drinfeld module.

use std::collections::{BTreeMap, HashMap};

use super::field::FiniteField;
use super::fq::{FqElem, FqField};
use super::poly::APoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    field: FqField,
    nvars: usize,
    terms: BTreeMap<Vec<u64>, FqElem>,
}

/// Display name of generator `i`: `T` for 0, `g<i>` otherwise.
pub fn generator_name(i: usize) -> String {
    if i == 0 {
        "T".to_string()
    } else {
        format!("g{i}")
    }
}

impl MPoly {
    pub fn zero(field: &FqField, nvars: usize) -> Self {
        MPoly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &FqField, nvars: usize, c: FqElem) -> Self {
        let mut p = Self::zero(field, nvars);
        if c.0 != 0 {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(field: &FqField, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The generator with index `i` (0 is `T`).
    pub fn var(field: &FqField, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "generator index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field, e, field.one())
    }

    pub fn monomial(field: &FqField, exps: Vec<u64>, c: FqElem) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(field, nvars);
        if c.0 != 0 {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Embeds `a(T)`.
    pub fn from_apoly(a: &APoly, nvars: usize) -> Self {
        let field = a.field();
        let mut p = Self::zero(field, nvars);
        for (k, c) in a.coeffs().iter().enumerate() {
            if c.0 != 0 {
                let mut e = vec![0; nvars];
                e[0] = k as u64;
                p.terms.insert(e, *c);
            }
        }
        p
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&vec![0; self.nvars]).is_some_and(|c| self.field.is_one(c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending lexicographic order of exponent vectors.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Vec<u64>, &FqElem)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &[u64]) -> FqElem {
        self.terms.get(exps).copied().unwrap_or(self.field.zero())
    }

    /// Largest exponent of generator `i`, `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u64> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        MPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &FqElem) -> Self {
        let f = &self.field;
        if c.0 == 0 {
            return Self::zero(f, self.nvars);
        }
        MPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), f.mul(a, c))).collect(),
        }
    }

    fn add_term(&mut self, e: &[u64], c: FqElem) {
        let f = &self.field;
        match self.terms.get_mut(e) {
            Some(slot) => {
                let s = f.add(slot, &c);
                if s.0 == 0 {
                    self.terms.remove(e);
                } else {
                    *slot = s;
                }
            }
            None => {
                if c.0 != 0 {
                    self.terms.insert(e.to_vec(), c);
                }
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f, self.nvars);
        }
        let mut acc: HashMap<Vec<u64>, FqElem> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = f.mul(ca, cb);
                let slot = acc.entry(e).or_insert(f.zero());
                *slot = f.add(slot, &c);
            }
        }
        MPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| c.0 != 0).collect(),
        }
    }

    /// `self^(q^k)`: exponents scale by `q^k`, coefficients lie in `F_q` and are fixed.
    pub fn frobenius_pow(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        let s = self.field.q().pow(k as u32);
        MPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.iter().map(|x| x * s).collect(), *c)).collect(),
        }
    }

    /// Substitutes `T -> T` and `g_i -> images["g<i>"]`.
    pub fn specialize(&self, images: &HashMap<String, APoly>) -> Result<APoly> {
        let f = &self.field;
        let mut subs: Vec<APoly> = vec![APoly::x(f)];
        for i in 1..self.nvars {
            let name = generator_name(i);
            let used = self.terms.keys().any(|e| e[i] > 0);
            match images.get(&name) {
                Some(img) => subs.push(img.clone()),
                None if !used => subs.push(APoly::zero(f)),
                None => return Err(Error::MissingGenerator(name)),
            }
        }
        let mut power_cache: HashMap<(usize, u64), APoly> = HashMap::new();
        let mut out = APoly::zero(f);
        for (e, c) in &self.terms {
            let mut term = APoly::constant(f, *c);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = power_cache.entry((i, k)).or_insert_with(|| {
                    if i == 0 {
                        APoly::monomial(f, f.one(), k as usize)
                    } else {
                        subs[i].pow_big(&k.into())
                    }
                });
                term = term.mul(pw);
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

/// Free function form of [`MPoly::specialize`].
pub fn mpoly_specialize(f: &MPoly, images: &HashMap<String, APoly>) -> Result<APoly> {
    f.specialize(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> FqField {
        FqField::new(2, 1).unwrap()
    }

    #[test]
    fn specialize_examples() {
        let f = f2();
        let t = MPoly::var(&f, 2, 0);
        let g1 = MPoly::var(&f, 2, 1);
        let mut images = HashMap::new();
        images.insert("g1".to_string(), APoly::from_ints(&f, &[1, 1]));
        assert_eq!(t.mul(&g1).specialize(&images).unwrap(), APoly::from_ints(&f, &[0, 1, 1]));
        let c = MPoly::one(&f, 2);
        assert_eq!(c.specialize(&HashMap::new()).unwrap(), APoly::one(&f));
        assert_eq!(g1.specialize(&HashMap::new()).unwrap_err(), Error::MissingGenerator("g1".into()));
    }

    #[test]
    fn frobenius_is_qth_power() {
        let f = FqField::new(3, 1).unwrap();
        let a = MPoly::var(&f, 3, 0).add(&MPoly::var(&f, 3, 2)).add(&MPoly::one(&f, 3));
        let cube = a.mul(&a).mul(&a);
        assert_eq!(a.frobenius_pow(1), cube);
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = f2();
        let t = MPoly::var(&f, 1, 0);
        assert!(t.add(&t).is_zero());
        assert!(t.sub(&t).is_zero());
    }

    fn arb_mpoly(q: u64) -> impl Strategy<Value = Vec<(Vec<u64>, u64)>> {
        proptest::collection::vec((proptest::collection::vec(0u64..4, 3), 1..q), 0..6)
    }

    fn build(f: &FqField, terms: &[(Vec<u64>, u64)]) -> MPoly {
        terms.iter().fold(MPoly::zero(f, 3), |acc, (e, c)| acc.add(&MPoly::monomial(f, e.clone(), f.from_index(*c))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn specialization_is_a_ring_homomorphism(
            a in arb_mpoly(3), b in arb_mpoly(3),
            i1 in proptest::collection::vec(0i64..3, 0..4),
            i2 in proptest::collection::vec(0i64..3, 0..4),
        ) {
            let f = FqField::new(3, 1).unwrap();
            let (x, y) = (build(&f, &a), build(&f, &b));
            let mut images = HashMap::new();
            images.insert("g1".to_string(), APoly::from_ints(&f, &i1));
            images.insert("g2".to_string(), APoly::from_ints(&f, &i2));
            let sx = x.specialize(&images).unwrap();
            let sy = y.specialize(&images).unwrap();
            prop_assert_eq!(x.mul(&y).specialize(&images).unwrap(), sx.mul(&sy));
            prop_assert_eq!(x.add(&y).specialize(&images).unwrap(), sx.add(&sy));
        }
    }
}
