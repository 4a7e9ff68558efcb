//! Explicit finite extensions `B[y]/(h)`, where the base `B` is either the
//! ground field `F_q` or another `ExtField`.
//!
//! Elements are stored as flat `F_q`-coordinate vectors: chunk `j` (of the
//! base's `F_q`-dimension) holds the base coefficient of `y^j`. Field
//! addition is therefore coordinatewise at every level of a tower.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, LazyLock, Mutex, OnceLock};

use num_bigint::BigUint;

use super::field::FiniteField;
use super::fq::{FqElem, FqField};
use super::irreducible::{canonical_irreducible, is_irreducible, seeded_irreducible};
use super::linalg::Matrix;
use super::poly::{APoly, Poly};
use crate::error::{Error, Result};

/// Default cap on the size of an explicit extension, `2^40` elements.
pub const DEFAULT_EXT_BITS: u64 = 40;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ExtElem(pub(crate) Vec<FqElem>);

impl ExtElem {
    pub fn coords(&self) -> &[FqElem] {
        &self.0
    }
}

#[derive(Clone)]
pub struct ExtField(Arc<ExtInner>);

struct ExtInner {
    fq: FqField,
    base: Option<ExtField>,
    degree: usize,
    base_dim: usize,
    /// `degree + 1` monic coefficients over the base, as coordinate chunks.
    modulus: Vec<Vec<FqElem>>,
    fq_degree: usize,
    frobenius_table: OnceLock<Vec<ExtElem>>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.fq == other.0.fq && self.0.base == other.0.base && self.0.modulus == other.0.modulus)
    }
}

impl Eq for ExtField {}

impl Hash for ExtField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.fq.hash(state);
        self.0.base.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.base {
            None => write!(f, "F_{}^{}", self.0.fq.q(), self.0.degree),
            Some(b) => write!(f, "({:?})^{}", b, self.0.degree),
        }
    }
}

static CANONICAL: LazyLock<Mutex<HashMap<Vec<u64>, ExtField>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// Largest divisor of `m` whose prime factors all divide `d`.
fn shared_part(m: usize, d: usize) -> usize {
    let mut a = 1;
    let mut rest = m;
    let mut l = 2;
    while rest > 1 {
        if rest % l == 0 {
            let shared = d % l == 0;
            while rest % l == 0 {
                rest /= l;
                if shared {
                    a *= l;
                }
            }
        }
        l += 1;
    }
    a
}

/// Minimal polynomial over `base` of a primitive element `u + c v` of the
/// compositum of `base[u]/(h_a)` and `base[v]/(h_b)`, `gcd(a, b) = 1`.
fn compositum_modulus(base: &ExtField, a: usize, b: usize, max_bits: u64) -> Result<Poly<ExtField>> {
    let d = base.fq_degree();
    let m = a * b;
    let eb = ExtField::canonical_over(base, b, max_bits)?;
    let ha = ExtField::canonical_over(base, a, max_bits)?.modulus_over_base().expect("tower over base");
    let lifted = Poly::from_coeffs(&eb, ha.coeffs().iter().map(|c| eb.embed_base(c.coords())).collect());
    let l = ExtField::from_ext_modulus_unchecked(&eb, &lifted);
    let u = l.generator();
    let v = l.embed_base(eb.generator().coords());
    let coords = |x: &ExtElem| -> Vec<ExtElem> { x.0.chunks(d).map(|c| base.from_fq_coords(c)).collect() };
    let order = base.order_u128().unwrap_or(u128::MAX);
    for idx in 1..order {
        let c = l.embed_base(&eb.embed_base(base.element_at(idx).coords()).0);
        let y = l.add(&u, &l.mul(&c, &v));
        let mut powers = Vec::with_capacity(m + 1);
        let mut cur = l.one();
        for k in 0..=m {
            if k > 0 {
                cur = l.mul(&cur, &y);
            }
            powers.push(coords(&cur));
        }
        let target = powers.pop().expect("m + 1 powers");
        let mat = Matrix::from_cols(base, m, &powers);
        if mat.rank() < m {
            continue;
        }
        let sol = mat.solve(&target).expect("full rank system");
        let mut coeffs: Vec<ExtElem> = sol.iter().map(|x| base.neg(x)).collect();
        coeffs.push(base.one());
        return Ok(Poly::from_coeffs(base, coeffs));
    }
    Err(Error::InvalidArgument(format!("no primitive element found for degree {m}")))
}

fn check_bits(q: u64, fq_degree: usize, max_bits: u64) -> Result<()> {
    let bits = (q as f64).log2() * fq_degree as f64;
    if bits > max_bits as f64 + 1e-9 {
        return Err(Error::SizeExceeded {
            what: format!("extension with {q}^{fq_degree} elements"),
            limit: format!("2^{max_bits}"),
        });
    }
    Ok(())
}

impl ExtField {
    /// The canonical degree-`n` extension of `F_q`, at most `2^40` elements.
    pub fn new(fq: &FqField, n: usize) -> Result<Self> {
        Self::canonical_over_fq(fq, n, DEFAULT_EXT_BITS)
    }

    /// The canonical degree-`n` extension of `F_q` with at most `2^max_bits` elements.
    pub fn canonical_over_fq(fq: &FqField, n: usize, max_bits: u64) -> Result<Self> {
        check_bits(fq.q(), n, max_bits)?;
        let mut key = vec![fq.p(), fq.e() as u64];
        key.push(n as u64);
        if let Some(f) = CANONICAL.lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let modulus = canonical_irreducible(fq, n)?;
        let field = Self::from_fq_modulus_unchecked(fq, &modulus);
        CANONICAL.lock().unwrap().insert(key, field.clone());
        Ok(field)
    }

    /// The canonical degree-`m` extension of `base`, with the total size
    /// capped at `2^max_bits` elements. The modulus depends only on
    /// `(base, m)`. Write `m = a b` where the primes of `a` divide
    /// `d = [base : F_q]` and `gcd(b, d) = 1`:
    /// - `m = 1`: `y`;
    /// - `a = 1`: the canonical degree-`m` modulus over `F_q`, which stays
    ///   irreducible over `base`;
    /// - `b = 1`: the first irreducible drawn from a stream seeded with `m`;
    /// - otherwise the minimal polynomial over `base` of `u + c v` in the
    ///   compositum of the degree-`a` and degree-`b` extensions, for the
    ///   first `c` in element order that makes it primitive.
    pub fn canonical_over(base: &ExtField, m: usize, max_bits: u64) -> Result<Self> {
        check_bits(base.fq().q(), base.fq_degree() * m, max_bits)?;
        let mut key = base.cache_key();
        key.push(u64::MAX);
        key.push(m as u64);
        if let Some(f) = CANONICAL.lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let d = base.fq_degree();
        let a = shared_part(m, d);
        let modulus = if m == 1 {
            Poly::x(base)
        } else if a == 1 {
            let small = canonical_irreducible(base.fq(), m)?;
            Poly::from_coeffs(base, small.coeffs().iter().map(|c| base.from_fq(*c)).collect())
        } else if a == m {
            seeded_irreducible(base, m, m as u64)?
        } else {
            compositum_modulus(base, a, m / a, max_bits)?
        };
        let field = Self::from_ext_modulus_unchecked(base, &modulus);
        CANONICAL.lock().unwrap().insert(key, field.clone());
        Ok(field)
    }

    /// `F_q[x]/(modulus)` for an arbitrary irreducible modulus.
    pub fn with_modulus(fq: &FqField, modulus: &APoly) -> Result<Self> {
        if !is_irreducible(modulus) {
            return Err(Error::NotIrreducible(format!("{:?}", modulus)));
        }
        Ok(Self::from_fq_modulus_unchecked(fq, &modulus.monic()))
    }

    /// `base[y]/(modulus)` for an arbitrary irreducible modulus.
    pub fn with_modulus_over(base: &ExtField, modulus: &Poly<ExtField>) -> Result<Self> {
        if !is_irreducible(modulus) {
            return Err(Error::NotIrreducible(format!("{:?}", modulus)));
        }
        Ok(Self::from_ext_modulus_unchecked(base, &modulus.monic()))
    }

    fn from_fq_modulus_unchecked(fq: &FqField, modulus: &APoly) -> Self {
        let degree = modulus.deg().expect("nonzero modulus");
        ExtField(Arc::new(ExtInner {
            fq: fq.clone(),
            base: None,
            degree,
            base_dim: 1,
            modulus: modulus.coeffs().iter().map(|c| vec![*c]).collect(),
            fq_degree: degree,
            frobenius_table: OnceLock::new(),
        }))
    }

    fn from_ext_modulus_unchecked(base: &ExtField, modulus: &Poly<ExtField>) -> Self {
        let degree = modulus.deg().expect("nonzero modulus");
        ExtField(Arc::new(ExtInner {
            fq: base.fq().clone(),
            base: Some(base.clone()),
            degree,
            base_dim: base.fq_degree(),
            modulus: modulus.coeffs().iter().map(|c| c.0.clone()).collect(),
            fq_degree: degree * base.fq_degree(),
            frobenius_table: OnceLock::new(),
        }))
    }

    fn cache_key(&self) -> Vec<u64> {
        let mut key = match &self.0.base {
            None => vec![self.0.fq.p(), self.0.fq.e() as u64],
            Some(b) => b.cache_key(),
        };
        key.push(u64::MAX);
        key.push(self.0.degree as u64);
        key.extend(self.0.modulus.iter().flatten().map(|c| c.value()));
        key
    }

    pub fn base(&self) -> Option<&ExtField> {
        self.0.base.as_ref()
    }

    /// Degree over the immediate base.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// `F_q`-dimension of the immediate base (1 over `F_q`).
    pub fn base_dim(&self) -> usize {
        self.0.base_dim
    }

    /// The modulus as an element of `A`, for extensions of `F_q`.
    pub fn modulus_over_fq(&self) -> Option<APoly> {
        self.0.base.is_none().then(|| APoly::from_coeffs(&self.0.fq, self.0.modulus.iter().map(|c| c[0]).collect()))
    }

    /// The modulus as a polynomial over the base extension.
    pub fn modulus_over_base(&self) -> Option<Poly<ExtField>> {
        self.0.base.as_ref().map(|b| Poly::from_coeffs(b, self.0.modulus.iter().map(|c| ExtElem(c.clone())).collect()))
    }

    /// The class of `y` (a root of the modulus).
    pub fn generator(&self) -> ExtElem {
        let n = self.0.degree;
        let bd = self.0.base_dim;
        if n >= 2 {
            let mut v = vec![self.0.fq.zero(); self.0.fq_degree];
            v[bd] = self.0.fq.one();
            ExtElem(v)
        } else {
            let c: Vec<FqElem> = self.0.modulus[0].iter().map(|x| self.0.fq.neg(x)).collect();
            ExtElem(c)
        }
    }

    /// Embeds an element of the immediate base (given by coordinates) as a constant.
    pub fn embed_base(&self, b: &[FqElem]) -> ExtElem {
        let mut v = vec![self.0.fq.zero(); self.0.fq_degree];
        v[..b.len()].copy_from_slice(b);
        ExtElem(v)
    }

    /// Coordinates of the base coefficient of `y^j`.
    pub fn base_coeff<'a>(&self, a: &'a ExtElem, j: usize) -> &'a [FqElem] {
        let bd = self.0.base_dim;
        &a.0[j * bd..(j + 1) * bd]
    }

    /// Product of a base element `s` with `a`, computed chunkwise.
    pub fn scale_by_base(&self, s: &[FqElem], a: &ExtElem) -> ExtElem {
        let bd = self.0.base_dim;
        if let Some(base) = self.0.base.as_ref().filter(|b| b.0.base.is_none() && b.0.degree > 1) {
            let fq = &self.0.fq;
            if fq.is_prime_field() && fq.p() < (1 << 20) {
                let p = fq.p();
                let neg_g: Vec<u64> = base.0.modulus[..bd].iter().map(|c| (p - c[0].0) % p).collect();
                let mut out = Vec::with_capacity(self.0.fq_degree);
                let mut buf = vec![0u64; 2 * bd - 1];
                for chunk in a.0.chunks(bd) {
                    buf.iter_mut().for_each(|x| *x = 0);
                    for (i, x) in s.iter().enumerate() {
                        if x.0 != 0 {
                            for (j, y) in chunk.iter().enumerate() {
                                buf[i + j] += x.0 * y.0;
                            }
                        }
                    }
                    for t in (bd..2 * bd - 1).rev() {
                        let c = buf[t] % p;
                        if c != 0 {
                            for (k, g) in neg_g.iter().enumerate() {
                                buf[t - bd + k] += c * g;
                            }
                        }
                    }
                    out.extend(buf[..bd].iter().map(|&x| FqElem(x % p)));
                }
                return ExtElem(out);
            }
        }
        let mut out = Vec::with_capacity(self.0.fq_degree);
        for chunk in a.0.chunks(bd) {
            out.extend(self.base_mul(s, chunk));
        }
        ExtElem(out)
    }

    /// `(y^Q)^j` for `j < degree`, where `Q` is the order of the immediate base.
    pub fn relative_frobenius_table(&self) -> &[ExtElem] {
        self.0.frobenius_table.get_or_init(|| {
            let q = self.0.fq.q();
            let yq = (0..self.0.base_dim).fold(self.generator(), |y, _| self.pow_u64(&y, q));
            let mut out = Vec::with_capacity(self.0.degree);
            let mut cur = self.one();
            for j in 0..self.0.degree {
                if j > 0 {
                    cur = self.mul(&cur, &yq);
                }
                out.push(cur.clone());
            }
            out
        })
    }

    /// `a^Q` for `Q` the order of the immediate base, given
    /// [`relative_frobenius_table`](Self::relative_frobenius_table).
    pub fn relative_frobenius(&self, table: &[ExtElem], a: &ExtElem) -> ExtElem {
        let bd = self.0.base_dim;
        let mut acc = vec![self.0.fq.zero(); self.0.fq_degree];
        for (j, t) in table.iter().enumerate() {
            let c = &a.0[j * bd..(j + 1) * bd];
            if c.iter().all(|x| x.0 == 0) {
                continue;
            }
            for (k, v) in self.scale_by_base(c, t).0.into_iter().enumerate() {
                acc[k] = self.0.fq.add(&acc[k], &v);
            }
        }
        ExtElem(acc)
    }

    fn base_mul(&self, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
        match &self.0.base {
            None => vec![self.0.fq.mul(&a[0], &b[0])],
            Some(base) => base.mul_flat(a, b),
        }
    }

    fn mul_flat(&self, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
        let fq = &self.0.fq;
        if self.0.base.is_none() {
            if fq.is_prime_field() && fq.p() < (1 << 20) {
                return self.mul_prime_fast(a, b);
            }
            let n = self.0.degree;
            let mut prod = vec![fq.zero(); 2 * n - 1];
            for (i, x) in a.iter().enumerate() {
                if fq.is_zero(x) {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    prod[i + j] = fq.add(&prod[i + j], &fq.mul(x, y));
                }
            }
            for k in (n..2 * n - 1).rev() {
                let c = prod[k];
                if fq.is_zero(&c) {
                    continue;
                }
                for j in 0..n {
                    prod[k - n + j] = fq.sub(&prod[k - n + j], &fq.mul(&c, &self.0.modulus[j][0]));
                }
            }
            prod.truncate(n);
            return prod;
        }
        if let Some(base) = self.0.base.as_ref().filter(|b| b.0.base.is_none()) {
            if fq.is_prime_field() && fq.p() < (1 << 20) {
                return self.mul_tower_prime_fast(base, a, b);
            }
        }
        let n = self.0.degree;
        let bd = self.0.base_dim;
        let mut prod = vec![fq.zero(); (2 * n - 1) * bd];
        for i in 0..n {
            let ai = &a[i * bd..(i + 1) * bd];
            if ai.iter().all(|c| fq.is_zero(c)) {
                continue;
            }
            for j in 0..n {
                let bj = &b[j * bd..(j + 1) * bd];
                if bj.iter().all(|c| fq.is_zero(c)) {
                    continue;
                }
                let t = self.base_mul(ai, bj);
                let slot = &mut prod[(i + j) * bd..(i + j + 1) * bd];
                for (s, x) in slot.iter_mut().zip(&t) {
                    *s = fq.add(s, x);
                }
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c: Vec<FqElem> = prod[k * bd..(k + 1) * bd].to_vec();
            if c.iter().all(|x| fq.is_zero(x)) {
                continue;
            }
            for j in 0..n {
                let mj = &self.0.modulus[j];
                if mj.iter().all(|x| fq.is_zero(x)) {
                    continue;
                }
                let t = self.base_mul(&c, mj);
                let slot = &mut prod[(k - n + j) * bd..(k - n + j + 1) * bd];
                for (s, x) in slot.iter_mut().zip(&t) {
                    *s = fq.sub(s, x);
                }
            }
        }
        prod.truncate(n * bd);
        prod
    }

    /// Product in `F_p[z]/(g)[y]/(h)` for a small prime `p`: one unreduced
    /// bivariate product, then reduction in `z` and `y` from the top chunk down.
    fn mul_tower_prime_fast(&self, base: &ExtField, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
        let p = self.0.fq.p();
        let n = self.0.degree;
        let bd = self.0.base_dim;
        let w = 2 * bd - 1;
        let neg_g: Vec<u64> = base.0.modulus[..bd].iter().map(|c| (p - c[0].0) % p).collect();
        let neg_h: Vec<Vec<u64>> =
            self.0.modulus[..n].iter().map(|c| c.iter().map(|x| (p - x.0) % p).collect()).collect();
        let mut prod = vec![0u64; (2 * n - 1) * w];
        for i in 0..n {
            let ai = &a[i * bd..(i + 1) * bd];
            for j in 0..n {
                let bj = &b[j * bd..(j + 1) * bd];
                let slot = &mut prod[(i + j) * w..(i + j + 1) * w];
                for (s, x) in ai.iter().enumerate() {
                    if x.0 == 0 {
                        continue;
                    }
                    for (t, y) in bj.iter().enumerate() {
                        slot[s + t] += x.0 * y.0;
                    }
                }
            }
        }
        let reduce_z = |v: &mut [u64]| {
            for t in (bd..w).rev() {
                let c = v[t] % p;
                v[t] = 0;
                if c != 0 {
                    for (s, g) in neg_g.iter().enumerate() {
                        v[t - bd + s] += c * g;
                    }
                }
            }
            for x in v[..bd].iter_mut() {
                *x %= p;
            }
        };
        for k in (n..2 * n - 1).rev() {
            let (lower, upper) = prod.split_at_mut(k * w);
            let c = &mut upper[..w];
            reduce_z(c);
            if c[..bd].iter().all(|&x| x == 0) {
                continue;
            }
            for (j, hj) in neg_h.iter().enumerate() {
                let slot = &mut lower[(k - n + j) * w..(k - n + j + 1) * w];
                for (s, &x) in c[..bd].iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (t, &y) in hj.iter().enumerate() {
                        slot[s + t] += x * y;
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(n * bd);
        for k in 0..n {
            let c = &mut prod[k * w..(k + 1) * w];
            reduce_z(c);
            out.extend(c[..bd].iter().map(|&x| FqElem(x)));
        }
        out
    }

    /// Schoolbook product over a small prime field with lazy reduction.
    fn mul_prime_fast(&self, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
        let p = self.0.fq.p();
        let n = self.0.degree;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            let x = x.0;
            if x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y.0;
            }
            // keep partial sums far from overflow
            if i % 1024 == 1023 {
                for v in prod.iter_mut() {
                    *v %= p;
                }
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = prod[k] % p;
            if c == 0 {
                continue;
            }
            for j in 0..n {
                let mj = self.0.modulus[j][0].0;
                if mj != 0 {
                    prod[k - n + j] = (prod[k - n + j] + c * (p - mj)) % p;
                }
            }
        }
        prod.truncate(n);
        prod.into_iter().map(|v| FqElem(v % p)).collect()
    }
}

impl FiniteField for ExtField {
    type Elem = ExtElem;

    fn fq(&self) -> &FqField {
        &self.0.fq
    }

    fn fq_degree(&self) -> usize {
        self.0.fq_degree
    }

    fn zero(&self) -> ExtElem {
        ExtElem(vec![self.0.fq.zero(); self.0.fq_degree])
    }

    fn one(&self) -> ExtElem {
        let mut v = vec![self.0.fq.zero(); self.0.fq_degree];
        v[0] = self.0.fq.one();
        ExtElem(v)
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.0.iter().all(|c| c.0 == 0)
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let fq = &self.0.fq;
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| fq.add(x, y)).collect())
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let fq = &self.0.fq;
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| fq.sub(x, y)).collect())
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        let fq = &self.0.fq;
        ExtElem(a.0.iter().map(|x| fq.neg(x)).collect())
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(self.mul_flat(&a.0, &b.0))
    }

    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, &self.inverse_exponent()))
    }

    fn from_fq(&self, c: FqElem) -> ExtElem {
        let mut v = vec![self.0.fq.zero(); self.0.fq_degree];
        v[0] = c;
        ExtElem(v)
    }

    fn to_fq_coords(&self, a: &ExtElem) -> Vec<FqElem> {
        a.0.clone()
    }

    fn from_fq_coords(&self, coords: &[FqElem]) -> ExtElem {
        assert_eq!(coords.len(), self.0.fq_degree, "coordinate vector has wrong length");
        ExtElem(coords.to_vec())
    }

    fn order(&self) -> BigUint {
        BigUint::from(self.0.fq.q()).pow(self.0.fq_degree as u32)
    }

    fn frobenius(&self, a: &ExtElem) -> ExtElem {
        match self.0.base {
            None => self.relative_frobenius(self.relative_frobenius_table(), a),
            Some(_) => self.pow_u64(a, self.0.fq.q()),
        }
    }

    fn has_power_basis(&self) -> bool {
        self.0.base.is_none()
    }
}
