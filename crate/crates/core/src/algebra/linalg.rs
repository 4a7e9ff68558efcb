//! Dense matrices over a finite field and Gaussian elimination.

use std::any::Any;

use super::field::FiniteField;
use super::fq::{FqElem, FqField};

/// Largest prime for which elimination defers reductions.
const LAZY_PRIME_LIMIT: u64 = 1 << 20;

/// Reduced row echelon form over `F_p` with entries kept unreduced between
/// pivots: each update adds less than `p^2`, so `u64` holds `2^23` updates.
fn rref_prime(rows: usize, cols: usize, data: &mut [u64], p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut pivot_row = vec![0u64; cols];
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut found = None;
        for i in r..rows {
            let v = data[i * cols + c] % p;
            data[i * cols + c] = v;
            if v != 0 && found.is_none() {
                found = Some(i);
            }
        }
        let Some(piv) = found else { continue };
        if piv != r {
            for j in 0..cols {
                data.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = pow_mod(data[r * cols + c], p - 2, p);
        for j in c..cols {
            let v = data[r * cols + j] % p * inv % p;
            data[r * cols + j] = v;
            pivot_row[j] = v;
        }
        let nz: Vec<usize> = (c..cols).filter(|&j| pivot_row[j] != 0).collect();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c] % p;
            if factor == 0 {
                data[i * cols + c] = 0;
                continue;
            }
            let neg = p - factor;
            let row = &mut data[i * cols..(i + 1) * cols];
            for &j in &nz {
                row[j] += neg * pivot_row[j];
            }
        }
        pivots.push(c);
        r += 1;
    }
    for v in data.iter_mut() {
        *v %= p;
    }
    pivots
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F: FiniteField> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: FiniteField> Matrix<F> {
    pub fn zero(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: &F, nrows: usize, cols: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zero(field, nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column has wrong length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.field;
        let mut out = Self::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        if let Some(fq) = (&self.field as &dyn Any).downcast_ref::<FqField>() {
            if fq.is_prime_field() && fq.p() < LAZY_PRIME_LIMIT && self.rows.min(self.cols) < (1 << 23) {
                let p = fq.p();
                let data = (&mut self.data as &mut dyn Any).downcast_mut::<Vec<FqElem>>().expect("FqField elements");
                let mut raw: Vec<u64> = data.iter().map(|e| e.0).collect();
                let pivots = rref_prime(self.rows, self.cols, &mut raw, p);
                for (d, v) in data.iter_mut().zip(raw) {
                    d.0 = v;
                }
                return pivots;
            }
        }
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            let pivot_row: Vec<F::Elem> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for (off, pv) in pivot_row.iter().enumerate() {
                    if f.is_zero(pv) {
                        continue;
                    }
                    let j = c + off;
                    let v = f.sub(self.get(i, j), &f.mul(&factor, pv));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`, returned as the rows of a reduced echelon matrix.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return basis;
        }
        let (e, _) = Matrix::from_rows(f, basis).rref();
        e.rows()
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let f = &self.field;
        let mut aug = Self::zero(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> F::Elem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("pivot is nonzero");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::FqField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &FqField, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix<FqField> {
        Matrix::from_rows(f, (0..r).map(|_| (0..c).map(|_| f.random(rng)).collect()).collect())
    }

    #[test]
    fn nullspace_vectors_are_annihilated_and_rank_nullity_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for q in [2u64, 3, 4, 5] {
            let f = FqField::of_order(q).unwrap();
            for _ in 0..20 {
                let m = random_matrix(&f, 5, 7, &mut rng);
                let ns = m.nullspace();
                assert_eq!(ns.len() + m.rank(), 7);
                for v in &ns {
                    assert!(m.mul_vec(v).iter().all(|x| f.is_zero(x)));
                }
            }
        }
    }

    #[test]
    fn inverse_and_det_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = FqField::new(3, 1).unwrap();
        for _ in 0..50 {
            let m = random_matrix(&f, 4, 4, &mut rng);
            match m.inverse() {
                Some(inv) => {
                    assert_eq!(m.mul(&inv), Matrix::identity(&f, 4));
                    assert!(!f.is_zero(&m.det()));
                }
                None => assert!(f.is_zero(&m.det())),
            }
        }
    }

    #[test]
    fn det_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = FqField::new(5, 1).unwrap();
        for _ in 0..30 {
            let a = random_matrix(&f, 3, 3, &mut rng);
            let b = random_matrix(&f, 3, 3, &mut rng);
            assert_eq!(a.mul(&b).det(), f.mul(&a.det(), &b.det()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = FqField::new(2, 1).unwrap();
        let o = f.one();
        let z = f.zero();
        let m = Matrix::from_rows(&f, vec![vec![o, o], vec![o, o]]);
        assert!(m.solve(&[o, z]).is_none());
        let x = m.solve(&[o, o]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![o, o]);
    }

    #[test]
    fn lazy_prime_elimination_matches_the_generic_path() {
        use crate::algebra::ExtField;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for p in [2u64, 3, 7, 1_048_573] {
            let f = FqField::new(p, 1).unwrap();
            // a degree-1 extension runs the generic elimination
            let g = ExtField::new(&f, 1).unwrap();
            for (r, c) in [(6, 9), (9, 6), (12, 12)] {
                let m = random_matrix(&f, r, c, &mut rng);
                let mut m = m.mul(&random_matrix(&f, c, c, &mut rng));
                m.data[..c].iter_mut().for_each(|x| *x = f.zero());
                let lifted = Matrix::from_rows(
                    &g,
                    m.rows().iter().map(|row| row.iter().map(|x| g.from_fq(*x)).collect()).collect(),
                );
                let (fast, fp) = m.rref();
                let (slow, sp) = lifted.rref();
                assert_eq!(fp, sp);
                for i in 0..r {
                    for j in 0..c {
                        assert_eq!(g.from_fq(*fast.get(i, j)), *slow.get(i, j));
                    }
                }
            }
        }
    }
}
