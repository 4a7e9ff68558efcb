//! Square matrices over `A/NA`.

use std::hash::{Hash, Hasher};

use crate::algebra::{crt, APoly, ExtField, FiniteField, Matrix};
use crate::error::{Error, Result};

use super::ring::ResidueRing;

/// An element of `A/NA`, stored as its canonical remainder.
pub type ResidueElem = APoly;

#[derive(Clone, Debug)]
pub struct ResidueMatrix {
    ring: ResidueRing,
    r: usize,
    entries: Vec<APoly>,
}

impl PartialEq for ResidueMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.entries == other.entries && self.ring == other.ring
    }
}

impl Eq for ResidueMatrix {}

impl Hash for ResidueMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.r.hash(state);
        self.entries.hash(state);
    }
}

impl ResidueMatrix {
    /// Row-major entries, each reduced mod `N`.
    pub fn from_entries(ring: &ResidueRing, r: usize, entries: Vec<APoly>) -> Self {
        assert_eq!(entries.len(), r * r, "need r^2 entries");
        let entries = entries.iter().map(|e| ring.reduce(e)).collect();
        ResidueMatrix { ring: ring.clone(), r, entries }
    }

    /// Matrix with the given columns.
    pub fn from_columns(ring: &ResidueRing, cols: &[Vec<APoly>]) -> Self {
        let r = cols.len();
        let mut entries = vec![APoly::zero(ring.field()); r * r];
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "column has wrong length");
            for (i, x) in col.iter().enumerate() {
                entries[i * r + j] = ring.reduce(x);
            }
        }
        ResidueMatrix { ring: ring.clone(), r, entries }
    }

    pub fn identity(ring: &ResidueRing, r: usize) -> Self {
        Self::scalar(ring, r, &ring.one())
    }

    pub fn scalar(ring: &ResidueRing, r: usize, c: &APoly) -> Self {
        let mut entries = vec![ring.zero(); r * r];
        for i in 0..r {
            entries[i * r + i] = ring.reduce(c);
        }
        ResidueMatrix { ring: ring.clone(), r, entries }
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, j: usize) -> &APoly {
        &self.entries[i * self.r + j]
    }

    pub fn entries(&self) -> &[APoly] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ring, self.r)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring || self.r != other.r {
            return Err(Error::DomainMismatch);
        }
        let r = self.r;
        let mut entries = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                let mut acc = APoly::zero(self.ring.field());
                for k in 0..r {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                entries.push(self.ring.reduce(&acc));
            }
        }
        Ok(ResidueMatrix { ring: self.ring.clone(), r, entries })
    }

    pub fn det(&self) -> APoly {
        let cp = char_poly(self);
        let c0 = &cp[0];
        if self.r % 2 == 0 {
            c0.clone()
        } else {
            self.ring.reduce(&c0.neg())
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.ring.is_unit(&self.det())
    }

    /// Smallest `k >= 1` with `self^k = 1`, searched up to `bound`.
    pub fn order(&self, bound: u64) -> Option<u64> {
        let id = Self::identity(&self.ring, self.r);
        let mut x = self.clone();
        for k in 1..=bound {
            if x == id {
                return Some(k);
            }
            x = x.mul(self).ok()?;
        }
        None
    }
}

/// Entrywise reduction `GL_r(A/NA) -> GL_r(A/MA)` for `M | N`.
pub fn reduce_matrix(g: &ResidueMatrix, m: &APoly) -> Result<ResidueMatrix> {
    if !m.divides(g.ring.modulus()) {
        return Err(Error::NotADivisor(format!("{m:?}")));
    }
    let target = ResidueRing::new(&m.monic())?;
    Ok(ResidueMatrix::from_entries(&target, g.r, g.entries.clone()))
}

/// Characteristic polynomial `det(X*I - g)`, coefficients constant-first
/// (`r + 1` of them, the last equal to 1).
///
/// Berkowitz's algorithm: division-free, so valid over `A/NA` with zero divisors.
pub fn char_poly(g: &ResidueMatrix) -> Vec<APoly> {
    let ring = &g.ring;
    let r = g.r;
    // v holds the char poly of the leading k x k block, highest degree first
    let mut v: Vec<APoly> = vec![ring.one()];
    for k in 1..=r {
        let kk = k - 1;
        let a_kk = g.get(kk, kk).clone();
        let row: Vec<APoly> = (0..kk).map(|j| g.get(kk, j).clone()).collect();
        let mut col: Vec<APoly> = (0..kk).map(|i| g.get(i, kk).clone()).collect();
        // first column of the Toeplitz matrix: 1, -a_kk, -R C, -R A C, ...
        let mut t = vec![ring.one(), ring.reduce(&a_kk.neg())];
        for _ in 0..kk {
            let rc = row.iter().zip(&col).fold(ring.zero(), |acc, (x, y)| acc.add(&x.mul(y)));
            t.push(ring.reduce(&rc.neg()));
            col = (0..kk)
                .map(|i| {
                    let s = (0..kk).fold(ring.zero(), |acc, j| acc.add(&g.get(i, j).mul(&col[j])));
                    ring.reduce(&s)
                })
                .collect();
        }
        let mut next = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let mut acc = ring.zero();
            for (j, vj) in v.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    acc = acc.add(&t[i - j].mul(vj));
                }
            }
            next.push(ring.reduce(&acc));
        }
        v = next;
    }
    v.reverse();
    v
}

/// Inverse over `A/NA`: split `N` into primary components `P^e`, invert
/// modulo `P` over the field `A/P`, lift by Newton iteration
/// `X <- X(2 - gX)` and recombine by CRT.
pub fn mat_inverse(g: &ResidueMatrix) -> Result<ResidueMatrix> {
    let ring = &g.ring;
    let r = g.r;
    let f = ring.field();
    let mut local: Vec<(Vec<APoly>, APoly)> = Vec::new();
    for (p, e) in ring.factors() {
        let pe = p.pow(*e as u64);
        let d = p.deg().expect("irreducible factor");
        let fp = ExtField::with_modulus(f, p)?;
        let to_field = |a: &APoly| {
            let rem = a.rem(p).expect("nonzero modulus");
            let mut c = vec![f.zero(); d];
            for (i, x) in rem.coeffs().iter().enumerate() {
                c[i] = *x;
            }
            fp.from_fq_coords(&c)
        };
        let m = Matrix::from_rows(&fp, (0..r).map(|i| (0..r).map(|j| to_field(g.get(i, j))).collect()).collect());
        let inv = m.inverse().ok_or(Error::NotInvertible)?;
        let mut x: Vec<APoly> = (0..r * r)
            .map(|k| APoly::from_coeffs(f, fp.to_fq_coords(inv.get(k / r, k % r))))
            .collect();
        let mut prec = 1;
        while prec < *e {
            prec = (2 * prec).min(*e);
            let modulus = p.pow(prec as u64);
            let red = |a: &APoly| a.rem(&modulus).expect("nonzero modulus");
            let mat_mul = |a: &[APoly], b: &[APoly]| -> Vec<APoly> {
                (0..r * r)
                    .map(|k| {
                        let (i, j) = (k / r, k % r);
                        red(&(0..r).fold(APoly::zero(f), |acc, l| acc.add(&a[i * r + l].mul(&b[l * r + j]))))
                    })
                    .collect()
            };
            let gx = mat_mul(g.entries(), &x);
            let two_minus: Vec<APoly> = (0..r * r)
                .map(|k| {
                    let diag = if k / r == k % r { APoly::constant(f, f.from_int(2)) } else { APoly::zero(f) };
                    red(&diag.sub(&gx[k]))
                })
                .collect();
            x = mat_mul(&x, &two_minus);
        }
        local.push((x, pe));
    }
    let mut entries = Vec::with_capacity(r * r);
    for k in 0..r * r {
        let residues: Vec<(APoly, APoly)> = local.iter().map(|(x, m)| (x[k].clone(), m.clone())).collect();
        entries.push(crt(&residues)?);
    }
    Ok(ResidueMatrix::from_entries(ring, r, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FqField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(ring: &ResidueRing, r: usize, rng: &mut ChaCha8Rng) -> ResidueMatrix {
        let f = ring.field();
        let d = ring.degree();
        let entries = (0..r * r).map(|_| APoly::from_coeffs(f, (0..d).map(|_| f.random(rng)).collect())).collect();
        ResidueMatrix::from_entries(ring, r, entries)
    }

    fn random_invertible(ring: &ResidueRing, r: usize, rng: &mut ChaCha8Rng) -> ResidueMatrix {
        loop {
            let g = random_matrix(ring, r, rng);
            if g.is_invertible() {
                return g;
            }
        }
    }

    /// Polynomials over `A/N` in `X`, constant-first, for the Laplace oracle.
    fn laplace_char_poly(g: &ResidueMatrix) -> Vec<APoly> {
        let ring = g.ring();
        let r = g.rank();
        let entry = |i: usize, j: usize| -> Vec<APoly> {
            let neg = ring.reduce(&g.get(i, j).neg());
            if i == j {
                vec![neg, ring.one()]
            } else {
                vec![neg]
            }
        };
        fn pmul(ring: &ResidueRing, a: &[APoly], b: &[APoly]) -> Vec<APoly> {
            let mut out = vec![ring.zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] = ring.reduce(&out[i + j].add(&x.mul(y)));
                }
            }
            out
        }
        fn padd(ring: &ResidueRing, a: &[APoly], b: &[APoly], sign_neg: bool) -> Vec<APoly> {
            let n = a.len().max(b.len());
            (0..n)
                .map(|i| {
                    let x = a.get(i).cloned().unwrap_or(ring.zero());
                    let y = b.get(i).cloned().unwrap_or(ring.zero());
                    ring.reduce(&if sign_neg { x.sub(&y) } else { x.add(&y) })
                })
                .collect()
        }
        fn det(ring: &ResidueRing, rows: &[usize], cols: &[usize], entry: &dyn Fn(usize, usize) -> Vec<APoly>) -> Vec<APoly> {
            if rows.is_empty() {
                return vec![ring.one()];
            }
            let mut acc = vec![ring.zero()];
            for (k, &c) in cols.iter().enumerate() {
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = det(ring, &rows[1..], &rest, entry);
                let term = pmul(ring, &entry(rows[0], c), &minor);
                acc = padd(ring, &acc, &term, k % 2 == 1);
            }
            acc
        }
        let idx: Vec<usize> = (0..r).collect();
        let mut out = det(ring, &idx, &idx, &entry);
        out.resize(r + 1, ring.zero());
        out
    }

    fn rings() -> Vec<ResidueRing> {
        let f2 = FqField::new(2, 1).unwrap();
        let f3 = FqField::new(3, 1).unwrap();
        vec![
            ResidueRing::new(&APoly::from_ints(&f2, &[0, 1])).unwrap(),
            ResidueRing::new(&APoly::from_ints(&f2, &[0, 0, 1])).unwrap(),
            ResidueRing::new(&APoly::from_ints(&f2, &[0, 1, 1])).unwrap(),
            ResidueRing::new(&APoly::from_ints(&f2, &[1, 0, 1, 0, 1])).unwrap(),
            ResidueRing::new(&APoly::from_ints(&f3, &[0, 0, 1])).unwrap(),
            ResidueRing::new(&APoly::from_ints(&f3, &[2, 0, 1])).unwrap(),
        ]
    }

    #[test]
    fn berkowitz_matches_laplace() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for ring in rings() {
            for r in 1..=4 {
                for _ in 0..10 {
                    let g = random_matrix(&ring, r, &mut rng);
                    assert_eq!(char_poly(&g), laplace_char_poly(&g), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn char_poly_examples() {
        let f = FqField::new(3, 1).unwrap();
        let ring = ResidueRing::new(&APoly::from_ints(&f, &[1, 0, 1])).unwrap();
        let id = ResidueMatrix::identity(&ring, 2);
        // (X - 1)^2 = X^2 - 2X + 1
        assert_eq!(char_poly(&id), vec![ring.one(), APoly::from_ints(&f, &[-2]), ring.one()]);
        let a = APoly::from_ints(&f, &[1, 1]);
        let b = APoly::from_ints(&f, &[0, 2]);
        let d = ResidueMatrix::from_entries(&ring, 2, vec![a.clone(), ring.zero(), ring.zero(), b.clone()]);
        let x_minus = |c: &APoly| vec![ring.reduce(&c.neg()), ring.one()];
        let (p, q) = (x_minus(&a), x_minus(&b));
        let expect = vec![ring.mul(&p[0], &q[0]), ring.reduce(&p[0].add(&q[0])), ring.one()];
        assert_eq!(char_poly(&d), expect);
    }

    #[test]
    fn char_poly_is_conjugation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for ring in rings() {
            for r in 1..=3 {
                for _ in 0..100 {
                    let g = random_matrix(&ring, r, &mut rng);
                    let h = random_invertible(&ring, r, &mut rng);
                    let conj = h.mul(&g).unwrap().mul(&mat_inverse(&h).unwrap()).unwrap();
                    assert_eq!(char_poly(&conj), char_poly(&g));
                }
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for ring in rings() {
            for r in 1..=3 {
                for _ in 0..100 {
                    let g = random_invertible(&ring, r, &mut rng);
                    let inv = mat_inverse(&g).unwrap();
                    assert!(g.mul(&inv).unwrap().is_identity());
                    assert!(inv.mul(&g).unwrap().is_identity());
                }
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let f = FqField::new(3, 1).unwrap();
        let ring = ResidueRing::new(&APoly::from_ints(&f, &[0, 0, 1])).unwrap();
        let id = ResidueMatrix::identity(&ring, 2);
        assert_eq!(mat_inverse(&id).unwrap(), id);
        let u = APoly::from_ints(&f, &[2, 1]);
        let g = ResidueMatrix::from_entries(&ring, 2, vec![u.clone(), ring.zero(), ring.zero(), ring.one()]);
        let expect = ResidueMatrix::from_entries(&ring, 2, vec![ring.inv(&u).unwrap(), ring.zero(), ring.zero(), ring.one()]);
        assert_eq!(mat_inverse(&g).unwrap(), expect);
        let t = APoly::x(&f);
        let sing = ResidueMatrix::from_entries(&ring, 2, vec![t, ring.zero(), ring.zero(), ring.one()]);
        assert_eq!(mat_inverse(&sing).unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn reduction_reads_constant_terms() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let f = FqField::new(2, 1).unwrap();
        let t = APoly::x(&f);
        let ring = ResidueRing::new(&t.mul(&t)).unwrap();
        for _ in 0..20 {
            let g = random_matrix(&ring, 2, &mut rng);
            let red = reduce_matrix(&g, &t).unwrap();
            for k in 0..4 {
                assert_eq!(red.entries()[k], APoly::constant(&f, g.entries()[k].coeff(0)));
            }
        }
        let id = ResidueMatrix::identity(&ring, 2);
        assert!(reduce_matrix(&id, &t).unwrap().is_identity());
        let other = APoly::from_ints(&f, &[1, 1]);
        assert!(matches!(reduce_matrix(&id, &other), Err(Error::NotADivisor(_))));
    }
}
