//! Kernels of linearized polynomials inside explicit extensions of `F_p`.

use crate::algebra::{ExtElem, ExtField, FiniteField, Matrix};
use crate::drinfeld::{AdditivePoly, FieldDomain, FrobeniusDomain, TwistedPoly};
use crate::error::{Error, Result};

/// Default cap on the ambient field size in bits (`log2 |F_p^m|`).
pub const DEFAULT_AMBIENT_BITS: u64 = 1024;

/// Smallest `m <= m_cap` such that `tau^(d m) = 1` modulo `f` on the right,
/// where `d = [F_p : F_q]`.
///
/// For separable `f` this is exactly the smallest `m` with
/// `ker f` contained in `F_(p^m)`: `x^(q^(dm)) - x` vanishes on `ker f` iff
/// `f` right-divides `tau^(dm) - 1`.
pub fn splitting_degree(f: &TwistedPoly<FieldDomain<ExtField>>, m_cap: usize) -> Option<usize> {
    let dom = f.domain();
    let n = match f.degree() {
        None => return None,
        Some(0) => return Some(1),
        Some(n) => n,
    };
    let d = dom.field().fq_degree();
    let lead_inv = dom.inv(&f.coeff(n)).expect("nonzero leading coefficient");
    let fc = f.coeffs();
    let one = {
        let mut v = vec![dom.zero(); n];
        v[0] = dom.one();
        v
    };
    let mut r = one.clone();
    for j in 1..=d * m_cap {
        // r <- tau * r, then cancel the tau^n term with a constant multiple of f
        let mut next = Vec::with_capacity(n + 1);
        next.push(dom.zero());
        next.extend(r.iter().map(|c| dom.frobenius_pow(c, 1)));
        let top = next[n].clone();
        if !dom.is_zero(&top) {
            let c = dom.mul(&top, &lead_inv);
            for (k, fk) in fc.iter().enumerate() {
                next[k] = dom.sub(&next[k], &dom.mul(&c, fk));
            }
        }
        next.truncate(n);
        r = next;
        if j % d == 0 && r == one {
            return Some(j / d);
        }
    }
    None
}

/// The `F_q`-linear map `x -> f(x)` on `L = F_p^m`, as a matrix whose
/// column `k` is the image of the `k`-th `F_q`-basis vector of `L`.
///
/// With `L = F_p[y]/(h)` the basis is `beta_a y^j` (flat index `j d + a`)
/// and `f(beta_a y^j) = sum_i (c_i beta_a^(q^i)) (y^(q^i))^j`, which keeps
/// the work in `F_p` except for the powers of `y^(q^i)`.
fn kernel_matrix(f: &AdditivePoly<FieldDomain<ExtField>>, l: &ExtField) -> Matrix<crate::algebra::FqField> {
    let base = f.domain().field();
    let fq = base.fq();
    let d = base.fq_degree();
    let m = l.degree();
    let dim = d * m;
    let y = l.generator();
    let coeffs = f.coeffs();
    // y^(q^i) and its powers
    let mut y_pows: Vec<Vec<ExtElem>> = Vec::with_capacity(coeffs.len());
    let mut yi = y;
    for i in 0..coeffs.len() {
        if i > 0 {
            yi = l.frobenius(&yi);
        }
        let mut pw = Vec::with_capacity(m);
        let mut cur = l.one();
        for j in 0..m {
            if j > 0 {
                cur = l.mul(&cur, &yi);
            }
            pw.push(cur.clone());
        }
        y_pows.push(pw);
    }
    let mut cols: Vec<Vec<crate::algebra::FqElem>> = Vec::with_capacity(dim);
    let mut weights: Vec<Vec<ExtElem>> = Vec::with_capacity(d);
    for a in 0..d {
        let mut beta = vec![fq.zero(); d];
        beta[a] = fq.one();
        let mut bq = base.from_fq_coords(&beta);
        let mut w = Vec::with_capacity(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            if i > 0 {
                bq = base.frobenius(&bq);
            }
            w.push(base.mul(c, &bq));
        }
        weights.push(w);
    }
    for j in 0..m {
        for w in weights.iter() {
            let mut acc = l.zero();
            for (i, wi) in w.iter().enumerate() {
                if base.is_zero(wi) {
                    continue;
                }
                acc = l.add(&acc, &l.scale_by_base(wi.coords(), &y_pows[i][j]));
            }
            cols.push(acc.coords().to_vec());
        }
    }
    Matrix::from_cols(fq, dim, &cols)
}

/// Canonical degree-`m` extension of the residue field of `f`'s domain.
pub fn ambient_field(base: &ExtField, m: usize, max_bits: u64) -> Result<ExtField> {
    ExtField::canonical_over(base, m, max_bits)
}

/// An `F_q`-basis of `{x in F_p^m : f(x) = 0}` in reduced echelon form
/// (with respect to `F_q`-coordinates of the ambient field), together with
/// the ambient field.
pub fn linearized_kernel(
    f: &AdditivePoly<FieldDomain<ExtField>>,
    m: usize,
    max_bits: u64,
) -> Result<(ExtField, Vec<ExtElem>)> {
    if f.coeffs().is_empty() {
        return Err(Error::InvalidArgument("kernel of the zero map is the whole field".into()));
    }
    let l = ambient_field(f.domain().field(), m, max_bits)?;
    let mat = kernel_matrix(f, &l);
    let basis = mat.nullspace().iter().map(|v| l.from_fq_coords(v)).collect();
    Ok((l, basis))
}
