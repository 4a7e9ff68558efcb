//! Irreducibility testing and canonical irreducible polynomials.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::FiniteField;
use super::fq::FqField;
use super::poly::{monic_polys, APoly, Poly};
use crate::error::{Error, Result};

/// Ben-Or irreducibility test.
///
/// A reducible polynomial of degree `n` has a factor of degree `i <= n/2`,
/// detected as a nontrivial `gcd(x^(Q^i) - x, f)` with `Q = |F|`. Random
/// reducible inputs usually fail at small `i`, which is what makes this
/// cheaper than Rabin's test during canonical-modulus searches.
pub fn is_irreducible<F: FiniteField>(f: &Poly<F>) -> bool {
    let n = match f.deg() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let field = f.field();
    let f = f.monic();
    if field.is_zero(&f.coeff(0)) {
        return false;
    }
    let big_q = field.order();
    let x = Poly::x(field);
    // first round by square-and-multiply: most reducible inputs stop here
    let Ok(xq) = x.pow_mod(&big_q, &f) else { return false };
    if !xq.sub(&x).gcd(&f).expect("f is nonzero").is_one() {
        return false;
    }
    // (sum h_k x^k)^Q = sum h_k (x^Q)^k since the h_k lie in F
    let mut table = Vec::with_capacity(n);
    let mut cur = Poly::one(field);
    for k in 0..n {
        if k > 0 {
            cur = cur.mul_mod(&xq, &f).expect("nonzero modulus");
        }
        table.push(cur.clone());
    }
    let mut h = xq;
    for _ in 2..=n / 2 {
        let mut acc = vec![field.zero(); n];
        for (a, t) in h.coeffs().iter().zip(&table) {
            if field.is_zero(a) {
                continue;
            }
            for (j, c) in t.coeffs().iter().enumerate() {
                acc[j] = field.add(&acc[j], &field.mul(a, c));
            }
        }
        h = Poly::from_coeffs(field, acc);
        if !h.sub(&x).gcd(&f).expect("f is nonzero").is_one() {
            return false;
        }
    }
    true
}

/// The first monic irreducible of degree `n` over `base` in the sequence of
/// monic polynomials drawn from a ChaCha8 stream seeded with `seed`.
///
/// Lexicographic scans over large bases can stall on families such as
/// `x^n + a x^(n-1) + c` that contain no irreducibles; random candidates are
/// irreducible with probability about `1/n`.
pub fn seeded_irreducible<F: FiniteField>(base: &F, n: usize, seed: u64) -> Result<Poly<F>> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut coeffs: Vec<F::Elem> = (0..n).map(|_| base.random(&mut rng)).collect();
        coeffs.push(base.one());
        let cand = Poly::from_coeffs(base, coeffs);
        if is_irreducible(&cand) {
            return Ok(cand);
        }
    }
}

/// The lexicographically smallest monic irreducible polynomial of degree
/// `n` over `base`: coefficient vectors `(c_0, ..., c_{n-1})` are scanned in
/// lexicographic order with `c_0` most significant, using each field's
/// canonical element order.
pub fn canonical_irreducible<F: FiniteField>(base: &F, n: usize) -> Result<Poly<F>> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let size = base.order_u128().ok_or_else(|| Error::SizeExceeded {
        what: "base field order".into(),
        limit: "2^128".into(),
    })?;
    // odometer over coefficient indices, last coefficient fastest
    let mut idx = vec![0u128; n];
    if n > 1 {
        idx[0] = 1;
    }
    loop {
        let mut coeffs: Vec<F::Elem> = idx.iter().map(|&i| base.element_at(i)).collect();
        coeffs.push(base.one());
        let cand = Poly::from_coeffs(base, coeffs);
        if is_irreducible(&cand) {
            return Ok(cand);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Err(Error::InvalidArgument(format!("no irreducible of degree {n} found")));
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < size {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Monic irreducibles of degree `d` over `F_q` in canonical order, with
/// `q^d` capped at `bound`.
pub fn irreducibles_of_degree_bounded(
    field: &FqField,
    d: usize,
    bound: u128,
) -> Result<impl Iterator<Item = APoly> + '_> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let count = (field.q() as u128).checked_pow(d as u32).filter(|&c| c <= bound);
    if count.is_none() {
        return Err(Error::SizeExceeded { what: format!("{}^{d} candidates", field.q()), limit: bound.to_string() });
    }
    Ok(monic_polys(field, d)?.filter(is_irreducible))
}

/// Monic irreducibles of degree `d` over `F_q`, with `q^d <= 2^40`.
pub fn irreducibles_of_degree(field: &FqField, d: usize) -> Result<impl Iterator<Item = APoly> + '_> {
    irreducibles_of_degree_bounded(field, d, 1u128 << 40)
}

/// Number of monic irreducibles of degree `d` over `F_q`, from the necklace
/// formula `(1/d) sum_{k | d} mu(d/k) q^k`.
pub fn count_irreducibles(q: u64, d: usize) -> BigUint {
    let mut pos = BigUint::ZERO;
    let mut neg = BigUint::ZERO;
    for k in 1..=d {
        if d % k != 0 {
            continue;
        }
        let term = BigUint::from(q).pow(k as u32);
        match mobius(d / k) {
            1 => pos += term,
            -1 => neg += term,
            _ => {}
        }
    }
    (pos - neg) / BigUint::from(d)
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_irreducible(f: &APoly) -> bool {
        // oracle: no monic factor of degree 1..=deg/2
        let n = f.deg().unwrap();
        for d in 1..=n / 2 {
            for g in monic_polys(f.field(), d).unwrap() {
                if f.rem(&g).unwrap().is_zero() {
                    return false;
                }
            }
        }
        n > 0
    }

    #[test]
    fn linear_and_quadratic_irreducibles_over_f2() {
        let f = FqField::new(2, 1).unwrap();
        let lin: Vec<_> = irreducibles_of_degree(&f, 1).unwrap().collect();
        assert_eq!(lin, vec![APoly::from_ints(&f, &[0, 1]), APoly::from_ints(&f, &[1, 1])]);
        let quad: Vec<_> = irreducibles_of_degree(&f, 2).unwrap().collect();
        assert_eq!(quad, vec![APoly::from_ints(&f, &[1, 1, 1])]);
        assert_eq!(irreducibles_of_degree(&f, 3).unwrap().count(), 2);
    }

    #[test]
    fn necklace_counts_match_enumeration() {
        for q in [2u64, 3] {
            let f = FqField::new(q, 1).unwrap();
            for d in 1..=6 {
                if q == 3 && d == 6 {
                    continue;
                }
                let n = irreducibles_of_degree(&f, d).unwrap().count();
                assert_eq!(BigUint::from(n), count_irreducibles(q, d), "q={q} d={d}");
            }
        }
        assert_eq!(count_irreducibles(3, 6), BigUint::from(116u32));
    }

    #[test]
    fn ben_or_agrees_with_trial_division() {
        for q in [2u64, 3] {
            let f = FqField::new(q, 1).unwrap();
            for d in 1..=5 {
                for cand in monic_polys(&f, d).unwrap() {
                    assert_eq!(is_irreducible(&cand), brute_force_irreducible(&cand), "{cand:?}");
                }
            }
        }
    }

    #[test]
    fn canonical_choice_over_f2() {
        let f = FqField::new(2, 1).unwrap();
        assert_eq!(canonical_irreducible(&f, 1).unwrap(), APoly::from_ints(&f, &[0, 1]));
        assert_eq!(canonical_irreducible(&f, 2).unwrap(), APoly::from_ints(&f, &[1, 1, 1]));
        // c_0 compared first: x^3 + x^2 + 1 = (1,0,1) precedes x^3 + x + 1 = (1,1,0)
        assert_eq!(canonical_irreducible(&f, 3).unwrap(), APoly::from_ints(&f, &[1, 0, 1, 1]));
    }

    #[test]
    fn size_bound_on_enumeration() {
        let f = FqField::new(2, 1).unwrap();
        assert!(matches!(irreducibles_of_degree_bounded(&f, 5, 16), Err(Error::SizeExceeded { .. })));
    }
}
