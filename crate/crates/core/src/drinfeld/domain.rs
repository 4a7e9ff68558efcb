//! Coefficient domains for twisted polynomials: commutative `F_q`-algebras
//! with the `q`-power endomorphism and a structure map `gamma: A -> D`.

use std::fmt::Debug;

use crate::algebra::{APoly, FiniteField, FqElem, FqField, MPoly};
use crate::text::{format_apoly, format_field_coords, format_fq, format_mpoly};

pub trait FrobeniusDomain: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq;

    fn fq(&self) -> &FqField;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_fq(&self, c: FqElem) -> Self::Elem;

    /// `a^(q^k)`.
    fn frobenius_pow(&self, a: &Self::Elem, k: usize) -> Self::Elem;

    /// `gamma(T)`.
    fn gamma_t(&self) -> Self::Elem;

    /// Multiplicative inverse; `None` for non-units and always for non-fields.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_field(&self) -> bool;

    fn format(&self, a: &Self::Elem) -> String;

    /// `gamma(a)`.
    fn gamma(&self, a: &APoly) -> Self::Elem {
        let t = self.gamma_t();
        let mut acc = self.zero();
        for c in a.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, &t), &self.from_fq(*c));
        }
        acc
    }
}

/// The generic ring `F_q[T, g1, ..., g_{r-1}]` with `gamma(T) = T`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericDomain {
    field: FqField,
    nvars: usize,
}

impl GenericDomain {
    /// Domain for rank `r`: generators `T, g1, ..., g_{r-1}`.
    pub fn new(field: &FqField, r: usize) -> Self {
        GenericDomain { field: field.clone(), nvars: r.max(1) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn var(&self, i: usize) -> MPoly {
        MPoly::var(&self.field, self.nvars, i)
    }
}

impl FrobeniusDomain for GenericDomain {
    type Elem = MPoly;

    fn fq(&self) -> &FqField {
        &self.field
    }
    fn zero(&self) -> MPoly {
        MPoly::zero(&self.field, self.nvars)
    }
    fn one(&self) -> MPoly {
        MPoly::one(&self.field, self.nvars)
    }
    fn is_zero(&self, a: &MPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.add(b)
    }
    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.sub(b)
    }
    fn neg(&self, a: &MPoly) -> MPoly {
        a.neg()
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.mul(b)
    }
    fn from_fq(&self, c: FqElem) -> MPoly {
        MPoly::constant(&self.field, self.nvars, c)
    }
    fn frobenius_pow(&self, a: &MPoly, k: usize) -> MPoly {
        a.frobenius_pow(k)
    }
    fn gamma_t(&self) -> MPoly {
        self.var(0)
    }
    fn inv(&self, _a: &MPoly) -> Option<MPoly> {
        None
    }
    fn is_field(&self) -> bool {
        false
    }
    fn format(&self, a: &MPoly) -> String {
        format_mpoly(a)
    }
}

/// The ring `A` itself with `gamma(T) = T`.
#[derive(Clone, Debug, PartialEq)]
pub struct APolyDomain {
    field: FqField,
}

impl APolyDomain {
    pub fn new(field: &FqField) -> Self {
        APolyDomain { field: field.clone() }
    }
}

impl FrobeniusDomain for APolyDomain {
    type Elem = APoly;

    fn fq(&self) -> &FqField {
        &self.field
    }
    fn zero(&self) -> APoly {
        APoly::zero(&self.field)
    }
    fn one(&self) -> APoly {
        APoly::one(&self.field)
    }
    fn is_zero(&self, a: &APoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &APoly, b: &APoly) -> APoly {
        a.add(b)
    }
    fn sub(&self, a: &APoly, b: &APoly) -> APoly {
        a.sub(b)
    }
    fn neg(&self, a: &APoly) -> APoly {
        a.neg()
    }
    fn mul(&self, a: &APoly, b: &APoly) -> APoly {
        a.mul(b)
    }
    fn from_fq(&self, c: FqElem) -> APoly {
        APoly::constant(&self.field, c)
    }
    fn frobenius_pow(&self, a: &APoly, k: usize) -> APoly {
        a.frobenius_power(k)
    }
    fn gamma_t(&self) -> APoly {
        APoly::x(&self.field)
    }
    fn gamma(&self, a: &APoly) -> APoly {
        a.clone()
    }
    fn inv(&self, a: &APoly) -> Option<APoly> {
        (a.deg() == Some(0)).then(|| APoly::constant(&self.field, self.field.inv(&a.coeff(0)).unwrap()))
    }
    fn is_field(&self) -> bool {
        false
    }
    fn format(&self, a: &APoly) -> String {
        format_apoly(a)
    }
}

/// A finite field with a chosen image of `T` (an "A-field").
#[derive(Clone, Debug, PartialEq)]
pub struct FieldDomain<F: FiniteField> {
    field: F,
    gamma_t: F::Elem,
}

impl<F: FiniteField> FieldDomain<F> {
    pub fn new(field: &F, gamma_t: F::Elem) -> Self {
        FieldDomain { field: field.clone(), gamma_t }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
}

impl<F: FiniteField> FrobeniusDomain for FieldDomain<F> {
    type Elem = F::Elem;

    fn fq(&self) -> &FqField {
        self.field.fq()
    }
    fn zero(&self) -> F::Elem {
        self.field.zero()
    }
    fn one(&self) -> F::Elem {
        self.field.one()
    }
    fn is_zero(&self, a: &F::Elem) -> bool {
        self.field.is_zero(a)
    }
    fn add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.field.add(a, b)
    }
    fn sub(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.field.sub(a, b)
    }
    fn neg(&self, a: &F::Elem) -> F::Elem {
        self.field.neg(a)
    }
    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.field.mul(a, b)
    }
    fn from_fq(&self, c: FqElem) -> F::Elem {
        self.field.from_fq(c)
    }
    fn frobenius_pow(&self, a: &F::Elem, k: usize) -> F::Elem {
        self.field.frobenius_pow(a, k % self.field.fq_degree().max(1))
    }
    fn gamma_t(&self) -> F::Elem {
        self.gamma_t.clone()
    }
    fn inv(&self, a: &F::Elem) -> Option<F::Elem> {
        self.field.inv(a)
    }
    fn is_field(&self) -> bool {
        true
    }
    fn format(&self, a: &F::Elem) -> String {
        let coords = self.field.to_fq_coords(a);
        if coords.len() == 1 {
            return format_fq(self.field.fq(), coords[0]);
        }
        format_field_coords(self.field.fq(), &coords, self.field.has_power_basis())
    }
}
