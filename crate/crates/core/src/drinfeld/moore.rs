//! The Moore determinant `det(w_i^(q^(j-1)))`.

use super::domain::FrobeniusDomain;
use crate::error::{Error, Result};

/// `det(w_i^(q^(j-1)))_{i,j}` over a field domain; nonzero exactly when the
/// `w_i` are `F_q`-linearly independent.
pub fn moore_determinant<D: FrobeniusDomain>(domain: &D, w: &[D::Elem]) -> Result<D::Elem> {
    if !domain.is_field() {
        return Err(Error::NotAField);
    }
    let m = w.len();
    let mut rows: Vec<Vec<D::Elem>> = w
        .iter()
        .map(|x| {
            let mut row = Vec::with_capacity(m);
            let mut cur = x.clone();
            for j in 0..m {
                if j > 0 {
                    cur = domain.frobenius_pow(&cur, 1);
                }
                row.push(cur.clone());
            }
            row
        })
        .collect();
    let mut det = domain.one();
    for c in 0..m {
        let Some(p) = (c..m).find(|&i| !domain.is_zero(&rows[i][c])) else {
            return Ok(domain.zero());
        };
        if p != c {
            rows.swap(p, c);
            det = domain.neg(&det);
        }
        let pivot = rows[c][c].clone();
        det = domain.mul(&det, &pivot);
        let inv = domain.inv(&pivot).expect("nonzero element of a field");
        for i in c + 1..m {
            let factor = domain.mul(&rows[i][c], &inv);
            if domain.is_zero(&factor) {
                continue;
            }
            for j in c..m {
                let v = domain.sub(&rows[i][j], &domain.mul(&factor, &rows[c][j]));
                rows[i][j] = v;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{APoly, ExtElem, ExtField, FiniteField, FqField};
    use crate::drinfeld::domain::{APolyDomain, FieldDomain};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Independence oracle: no nontrivial `F_q`-combination vanishes.
    fn independent(l: &ExtField, w: &[ExtElem]) -> bool {
        let fq = l.fq();
        let q = fq.q();
        let total = q.pow(w.len() as u32);
        (1..total).all(|mut idx| {
            let mut acc = l.zero();
            for x in w {
                acc = l.add(&acc, &l.scale(fq.from_index(idx % q), x));
                idx /= q;
            }
            !l.is_zero(&acc)
        })
    }

    #[test]
    fn examples() {
        let fq = FqField::new(2, 1).unwrap();
        let f4 = ExtField::new(&fq, 2).unwrap();
        let d = FieldDomain::new(&f4, f4.zero());
        let u = f4.generator();
        assert_eq!(moore_determinant(&d, &[u.clone()]).unwrap(), u);
        assert!(f4.is_zero(&moore_determinant(&d, &[u.clone(), u.clone()]).unwrap()));
        let det = moore_determinant(&d, &[f4.one(), u.clone()]).unwrap();
        assert_eq!(det, f4.sub(&f4.mul(&u, &u), &u));
        assert!(!f4.is_zero(&det));
        let a = APolyDomain::new(&fq);
        assert_eq!(moore_determinant(&a, &[APoly::one(&fq)]).unwrap_err(), Error::NotAField);
    }

    #[test]
    fn criterion_is_exact_over_small_binary_fields() {
        let fq = FqField::new(2, 1).unwrap();
        for m in 1..=4 {
            let l = ExtField::new(&fq, m).unwrap();
            let d = FieldDomain::new(&l, l.zero());
            let elems: Vec<ExtElem> = (0..(1u128 << m)).map(|i| l.element_at(i)).collect();
            for len in 1..=3usize {
                let mut idx = vec![0usize; len];
                loop {
                    let w: Vec<ExtElem> = idx.iter().map(|&i| elems[i].clone()).collect();
                    let nonzero = !l.is_zero(&moore_determinant(&d, &w).unwrap());
                    assert_eq!(nonzero, independent(&l, &w), "m={m} w={w:?}");
                    let mut pos = len;
                    while pos > 0 {
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < elems.len() {
                            break;
                        }
                        idx[pos] = 0;
                    }
                    if idx.iter().all(|&i| i == 0) {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn criterion_on_random_tuples_over_larger_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for (q, m) in [(3u64, 5usize), (2, 9), (5, 3)] {
            let fq = FqField::new(q, 1).unwrap();
            let l = ExtField::new(&fq, m).unwrap();
            let d = FieldDomain::new(&l, l.zero());
            for len in 1..=3 {
                for _ in 0..30 {
                    let mut w: Vec<ExtElem> = (0..len).map(|_| l.random(&mut rng)).collect();
                    if len > 1 && rand::Rng::gen_bool(&mut rng, 0.3) {
                        // force a dependency
                        let c = fq.random_elem(&mut rng);
                        w[len - 1] = l.add(&w[0], &l.scale(c, &w[1 % len]));
                    }
                    let nonzero = !l.is_zero(&moore_determinant(&d, &w).unwrap());
                    assert_eq!(nonzero, independent(&l, &w));
                }
            }
        }
    }
}
