//! Orders of `GL_r(A/NA)` and the congruence kernels `G(MN, M)`, brute-force
//! enumeration and subgroup closure.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::algebra::{factor, APoly};
use crate::error::{Error, Result};

use super::matrix::ResidueMatrix;
use super::ring::ResidueRing;

/// Default cap on enumerated or generated group sizes.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

pub type GroupOrder = BigUint;

fn local_factors(n: &APoly) -> Result<Vec<(BigUint, usize)>> {
    if n.deg().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let q = BigUint::from(n.field().q());
    Ok(factor(n)?.into_iter().map(|(p, e)| (q.pow(p.deg().unwrap() as u32), e)).collect())
}

fn gl_order_of(r: usize, n: &APoly) -> Result<GroupOrder> {
    let mut total = BigUint::one();
    for (qp, e) in local_factors(n)? {
        let mut local = qp.pow(((e - 1) * r * r) as u32);
        let qr = qp.pow(r as u32);
        for i in 0..r {
            local *= &qr - qp.pow(i as u32);
        }
        total *= local;
    }
    Ok(total)
}

/// `#(A/NA)^x`: the product over `P^e || N` of `q_P^e - q_P^(e-1)`.
pub fn unit_count(ring: &ResidueRing) -> GroupOrder {
    gl_order_of(1, ring.modulus()).expect("ring modulus factors")
}

/// `#GL_r(A/NA)`: the product over `P^e || N` of
/// `q_P^((e-1) r^2) * prod_{i<r} (q_P^r - q_P^i)`.
pub fn gl_order(r: usize, ring: &ResidueRing) -> GroupOrder {
    gl_order_of(r, ring.modulus()).expect("ring modulus factors")
}

/// `#G(MN, M) = #GL_r(A/MNA) / #GL_r(A/MA)`. `N = 1` is allowed.
pub fn g_order(r: usize, m: &APoly, n: &APoly) -> Result<GroupOrder> {
    if m.deg().unwrap_or(0) == 0 {
        return Err(Error::ConstantInput);
    }
    let num = gl_order_of(r, &m.mul(n).monic())?;
    let den = gl_order_of(r, &m.monic())?;
    if !(&num % &den).is_zero() {
        return Err(Error::NonExactDivision { num: num.to_string(), den: den.to_string() });
    }
    Ok(num / den)
}

/// Every element of `GL_r(A/NA)`, lexicographic on the entries' canonical
/// indices (row-major), provided the group has at most `cap` elements.
pub fn enumerate_gl(r: usize, ring: &ResidueRing, cap: u64) -> Result<impl Iterator<Item = ResidueMatrix> + '_> {
    let order = gl_order(r, ring);
    if order > BigUint::from(cap) {
        return Err(Error::SizeExceeded { what: format!("#GL_{r} = {order}"), limit: cap.to_string() });
    }
    let size = (ring.field().q() as u128).pow(ring.degree() as u32);
    let total = size.checked_pow((r * r) as u32).ok_or_else(|| Error::SizeExceeded {
        what: "matrix count".into(),
        limit: "2^128".into(),
    })?;
    let elems: Vec<APoly> = ring.elements().collect();
    Ok((0..total).filter_map(move |mut idx| {
        let mut entries = vec![ring.zero(); r * r];
        for slot in entries.iter_mut().rev() {
            *slot = elems[(idx % size) as usize].clone();
            idx /= size;
        }
        let g = ResidueMatrix::from_entries(ring, r, entries);
        g.is_invertible().then_some(g)
    }))
}

/// Order of the subgroup generated by `gens`, by breadth-first closure.
pub fn subgroup_order(gens: &[ResidueMatrix], cap: u64) -> Result<GroupOrder> {
    let Some(first) = gens.first() else {
        return Ok(BigUint::one());
    };
    let id = ResidueMatrix::identity(first.ring(), first.rank());
    let mut unique: Vec<ResidueMatrix> = Vec::new();
    for g in gens {
        if g.ring() != first.ring() || g.rank() != first.rank() {
            return Err(Error::DomainMismatch);
        }
        if !g.is_invertible() {
            return Err(Error::NotInvertible);
        }
        if !g.is_identity() && !unique.contains(g) {
            unique.push(g.clone());
        }
    }
    let mut seen: HashSet<ResidueMatrix> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in &unique {
            let y = x.mul(g)?;
            if seen.insert(y.clone()) {
                if seen.len() as u64 > cap {
                    return Err(Error::SizeExceeded { what: "generated subgroup".into(), limit: cap.to_string() });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(BigUint::from(seen.len()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingIdentity {
    /// `#G(NT, T)`, `#GL_r(A/TA)`.
    pub kernel_over_t: GroupOrder,
    pub gl_t: GroupOrder,
    /// `#G(NT, N)`, `#GL_r(A/NA)`.
    pub kernel_over_n: GroupOrder,
    pub gl_n: GroupOrder,
    /// `#GL_r(A/NTA)`.
    pub gl_nt: GroupOrder,
    pub holds: bool,
}

/// Checks `#G(NT,T) * #GL_r(A/TA) = #GL_r(A/NTA)` and the same with `N`
/// and `T` swapped.
pub fn verify_counting_identity(r: usize, n: &APoly) -> Result<CountingIdentity> {
    if n.deg().unwrap_or(0) == 0 || !n.is_monic() {
        return Err(Error::InvalidArgument("level must be monic and nonconstant".into()));
    }
    let t = APoly::x(n.field());
    let kernel_over_t = g_order(r, &t, n)?;
    let kernel_over_n = g_order(r, n, &t)?;
    let gl_t = gl_order_of(r, &t)?;
    let gl_n = gl_order_of(r, n)?;
    let gl_nt = gl_order_of(r, &n.mul(&t))?;
    let holds = &kernel_over_t * &gl_t == gl_nt && &kernel_over_n * &gl_n == gl_nt;
    Ok(CountingIdentity { kernel_over_t, gl_t, kernel_over_n, gl_n, gl_nt, holds })
}
