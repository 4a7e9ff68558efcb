//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! splitting and Cantor-Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::FiniteField;
use super::poly::{APoly, Poly};
use crate::error::{Error, Result};

fn pth_root_elem<F: FiniteField>(field: &F, a: &F::Elem) -> F::Elem {
    // a^(1/p) = a^(|F|/p)
    let e = field.order() / BigUint::from(field.characteristic());
    field.pow(a, &e)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with the
/// `g_i` squarefree, pairwise coprime and `f = prod g_i^i`.
pub fn squarefree_decomposition<F: FiniteField>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let field = f.field();
    let p = field.characteristic() as usize;
    let mut out: Vec<(Poly<F>, usize)> = Vec::new();
    if f.is_constant() {
        return out;
    }
    let f = f.monic();
    let d = f.derivative();
    let mut c = if d.is_zero() { f.clone() } else { f.gcd(&d).unwrap() };
    let mut w = f.divmod(&c).unwrap().0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c).unwrap();
        let fac = w.divmod(&y).unwrap().0;
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.divmod(&w).unwrap().0;
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power
        let root_coeffs: Vec<F::Elem> =
            c.coeffs().iter().step_by(p).map(|a| pth_root_elem(field, a)).collect();
        let root = Poly::from_coeffs(field, root_coeffs);
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree splitting of a monic squarefree polynomial: pairs
/// `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree<F: FiniteField>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let field = f.field();
    let mut out = Vec::new();
    let mut rest = f.monic();
    let x = Poly::x(field);
    let mut h = x.clone();
    let mut i = 0;
    while rest.deg().unwrap_or(0) >= 2 * (i + 1) {
        i += 1;
        let table = Poly::frobenius_table(&rest).unwrap();
        h = h.rem(&rest).unwrap();
        for _ in 0..field.fq_degree() {
            h = h.frobenius_mod(&table, &rest).unwrap();
        }
        let g = h.sub(&x).gcd(&rest).unwrap();
        if !g.is_one() {
            rest = rest.divmod(&g).unwrap().0;
            out.push((g, i));
        }
    }
    if rest.deg().unwrap_or(0) > 0 {
        let d = rest.deg().unwrap();
        out.push((rest, d));
    }
    out
}

/// Splits a monic squarefree product of irreducibles of degree `d` into its
/// factors (Cantor-Zassenhaus).
pub fn equal_degree<F: FiniteField>(f: &Poly<F>, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly<F>> {
    let n = f.deg().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field();
    let qd = field.order().pow(d as u32);
    let odd = field.characteristic() != 2;
    let exp = if odd { (&qd - BigUint::one()) / BigUint::from(2u32) } else { BigUint::ZERO };
    // absolute trace exponent count for characteristic 2
    let trace_len = if odd { 0 } else { (qd.bits() - 1) as usize };
    loop {
        let coeffs: Vec<F::Elem> = (0..n).map(|_| field.random(rng)).collect();
        let a = Poly::from_coeffs(field, coeffs);
        if a.is_constant() {
            continue;
        }
        let b = if odd {
            a.pow_mod(&exp, f).unwrap().sub(&Poly::one(field))
        } else {
            let mut t = a.rem(f).unwrap();
            let mut acc = t.clone();
            for _ in 1..trace_len {
                t = t.mul_mod(&t, f).unwrap();
                acc = acc.add(&t);
            }
            acc
        };
        if b.is_zero() {
            continue;
        }
        let g = b.gcd(f).unwrap();
        let gd = g.deg().unwrap();
        if gd > 0 && gd < n {
            let h = f.divmod(&g).unwrap().0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Full factorization into monic irreducibles with multiplicities, sorted by
/// degree and then coefficients.
pub fn factor_seeded<F: FiniteField>(f: &Poly<F>, seed: u64) -> Result<Vec<(Poly<F>, usize)>> {
    if f.deg().unwrap_or(0) == 0 {
        return Err(Error::ConstantInput);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Poly<F>, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        for (g, d) in distinct_degree(&part) {
            for h in equal_degree(&g, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort();
    // merge repeated factors (possible across inseparable branches)
    let mut merged: Vec<(Poly<F>, usize)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    Ok(merged)
}

/// Factorization of an element of `A` with the default seed 0.
pub fn factor(f: &APoly) -> Result<Vec<(APoly, usize)>> {
    factor_seeded(f, 0)
}

/// Distinct roots of `f` in its coefficient field, sorted.
pub fn roots_seeded<F: FiniteField>(f: &Poly<F>, seed: u64) -> Result<Vec<F::Elem>> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial has every element as a root".into()));
    }
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let field = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots = Vec::new();
    for (part, _) in squarefree_decomposition(f) {
        // linear part: gcd(x^Q - x, part)
        let table = Poly::frobenius_table(&part)?;
        let mut h = Poly::x(field).rem(&part)?;
        for _ in 0..field.fq_degree() {
            h = h.frobenius_mod(&table, &part)?;
        }
        let lin = h.sub(&Poly::x(field)).gcd(&part)?;
        for g in equal_degree(&lin, 1, &mut rng) {
            roots.push(field.neg(&g.coeff(0)));
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}
