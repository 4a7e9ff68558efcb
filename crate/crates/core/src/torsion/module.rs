//! The torsion module `phi[N]` over a finite field, level-`N` bases and
//! Frobenius matrices in `GL_r(A/NA)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::kernel::{linearized_kernel, splitting_degree, DEFAULT_AMBIENT_BITS};
use super::reduce::{reduce_at, ReducedModule};
use crate::algebra::{APoly, ExtElem, ExtField, FiniteField, FqElem, FqField, Matrix};
use crate::drinfeld::{carlitz, DrinfeldModule, FieldDomain, TwistedPoly};
use crate::error::{Error, Result};
use crate::residue::{char_poly, ResidueMatrix, ResidueRing};

/// Attempts at drawing a free basis before giving up.
pub const BASIS_ATTEMPTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorsionCaps {
    /// Largest extension degree `m` scanned.
    pub m_cap: usize,
    /// Largest ambient field, in bits.
    pub max_bits: u64,
    /// Seed for the basis draws.
    pub seed: u64,
}

impl Default for TorsionCaps {
    fn default() -> Self {
        TorsionCaps { m_cap: 512, max_bits: DEFAULT_AMBIENT_BITS, seed: 0 }
    }
}

/// `phi[N]` inside `L = F_p^m`, with an `F_q`-basis in reduced echelon form
/// and an `A/NA`-basis `e_1, ..., e_r`.
#[derive(Clone, Debug)]
pub struct TorsionModule {
    prime: APoly,
    level: APoly,
    rank: usize,
    /// Smallest `m` with `phi[N]` rational over `F_p^m`.
    m: usize,
    residue_degree: usize,
    ambient: ExtField,
    /// `phi` with coefficients in the ambient field.
    phi: DrinfeldModule<FieldDomain<ExtField>>,
    fq_basis: Vec<ExtElem>,
    pivots: Vec<usize>,
    a_basis: Vec<ExtElem>,
    /// Matrix of `x -> phi_T(x)` in the coordinates of `fq_basis`.
    action: Matrix<FqField>,
    /// Powers of `y^(q^deg p)` for the ambient generator `y`.
    frob_table: Vec<ExtElem>,
}

fn lift_module(red: &ReducedModule, l: &ExtField) -> DrinfeldModule<FieldDomain<ExtField>> {
    let coeffs = red.phi().phi_t().coeffs();
    let gamma = l.embed_base(coeffs[0].coords());
    let middle = coeffs[1..coeffs.len() - 1].iter().map(|c| l.embed_base(c.coords())).collect();
    DrinfeldModule::new(&FieldDomain::new(l, gamma), middle)
}

fn leading_pivots(l: &ExtField, basis: &[ExtElem]) -> Vec<usize> {
    basis
        .iter()
        .map(|b| l.to_fq_coords(b).iter().position(|c| c.value() != 0).expect("basis vectors are nonzero"))
        .collect()
}

/// `phi[N]` for `gcd(p, N) = 1`, over the smallest extension `F_p^m`
/// (`m <= caps.m_cap`) that contains it, with a seeded free `A/NA`-basis.
pub fn torsion(red: &ReducedModule, n: &APoly, caps: TorsionCaps) -> Result<TorsionModule> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("level must be nonzero".into()));
    }
    let n = n.monic();
    if !n.gcd(red.prime())?.is_one() {
        return Err(Error::CharacteristicDividesLevel {
            prime: crate::text::format_apoly(red.prime()),
            level: crate::text::format_apoly(&n),
        });
    }
    let phi_n = red.phi().phi_of(&n)?;
    let m = splitting_degree(&phi_n, caps.m_cap).ok_or(Error::ExtensionCapExceeded(caps.m_cap))?;
    let (ambient, fq_basis) = linearized_kernel(&phi_n.to_additive(), m, caps.max_bits)?;
    let r = red.rank();
    let dim = r * n.deg().unwrap();
    if fq_basis.len() != dim {
        return Err(Error::SolveFailed(format!("kernel has dimension {} instead of {dim}", fq_basis.len())));
    }
    let phi = lift_module(red, &ambient);
    let pivots = leading_pivots(&ambient, &fq_basis);
    let mut t = TorsionModule {
        prime: red.prime().clone(),
        level: n,
        rank: r,
        m,
        residue_degree: red.degree(),
        action: Matrix::zero(ambient.fq(), dim, dim),
        frob_table: ambient.relative_frobenius_table().to_vec(),
        ambient,
        phi,
        fq_basis,
        pivots,
        a_basis: Vec::new(),
    };
    t.action = t.matrix_on_basis(|x| t.apply_phi_t(x));
    if dim == 0 {
        return Ok(t);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
    let fq = t.ambient.fq().clone();
    for _ in 0..BASIS_ATTEMPTS {
        let draw: Vec<Vec<FqElem>> = (0..r).map(|_| (0..dim).map(|_| fq.random_elem(&mut rng)).collect()).collect();
        if t.spanning_matrix(&draw).inverse().is_some() {
            t.a_basis = draw.iter().map(|c| t.from_coords(c)).collect();
            return Ok(t);
        }
    }
    Err(Error::BasisSearchFailed(BASIS_ATTEMPTS))
}

impl TorsionModule {
    pub fn prime(&self) -> &APoly {
        &self.prime
    }

    pub fn level(&self) -> &APoly {
        &self.level
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ambient(&self) -> &ExtField {
        &self.ambient
    }

    pub fn fq_basis(&self) -> &[ExtElem] {
        &self.fq_basis
    }

    pub fn a_basis(&self) -> &[ExtElem] {
        &self.a_basis
    }

    pub fn action(&self) -> &Matrix<FqField> {
        &self.action
    }

    /// `F_q`-dimension of `phi[N]`.
    pub fn dimension(&self) -> usize {
        self.fq_basis.len()
    }

    /// The module `phi` with coefficients in the ambient field.
    pub fn phi(&self) -> &DrinfeldModule<FieldDomain<ExtField>> {
        &self.phi
    }

    fn apply_phi_t(&self, x: &ExtElem) -> ExtElem {
        self.phi.phi_t().to_additive().eval(x)
    }

    /// `phi_a(x)` for `a` in `A`.
    pub fn apply(&self, a: &APoly, x: &ExtElem) -> Result<ExtElem> {
        Ok(self.phi.phi_of(a)?.to_additive().eval(x))
    }

    /// The `q^deg(p)`-power Frobenius on the ambient field.
    pub fn frobenius(&self, x: &ExtElem) -> ExtElem {
        self.ambient.relative_frobenius(&self.frob_table, x)
    }

    fn from_coords(&self, c: &[FqElem]) -> ExtElem {
        let l = &self.ambient;
        c.iter().zip(&self.fq_basis).fold(l.zero(), |acc, (ci, b)| l.add(&acc, &l.scale(*ci, b)))
    }

    /// Coordinates in `fq_basis`, or `None` if `x` is not in `phi[N]`.
    pub fn coords(&self, x: &ExtElem) -> Option<Vec<FqElem>> {
        let v = self.ambient.to_fq_coords(x);
        let c: Vec<FqElem> = self.pivots.iter().map(|&p| v[p]).collect();
        (self.from_coords(&c) == *x).then_some(c)
    }

    fn matrix_on_basis(&self, f: impl Fn(&ExtElem) -> ExtElem) -> Matrix<FqField> {
        let cols: Vec<Vec<FqElem>> =
            self.fq_basis.iter().map(|b| self.coords(&f(b)).expect("map preserves phi[N]")).collect();
        Matrix::from_cols(self.ambient.fq(), self.dimension(), &cols)
    }

    /// Columns `phi_{T^j}(e_i)` (index `i * deg N + j`) in `fq_basis`
    /// coordinates, for `e_i` given by coordinates.
    fn spanning_matrix(&self, e: &[Vec<FqElem>]) -> Matrix<FqField> {
        let deg = self.level.deg().unwrap_or(0);
        let mut cols = Vec::with_capacity(self.dimension());
        for ei in e {
            let mut cur = ei.clone();
            for j in 0..deg {
                if j > 0 {
                    cur = self.action.mul_vec(&cur);
                }
                cols.push(cur.clone());
            }
        }
        Matrix::from_cols(self.ambient.fq(), self.dimension(), &cols)
    }

    /// Whether `(a_i) -> sum phi_{a_i}(e_i)` is a bijection `(A/NA)^r -> phi[N]`.
    pub fn is_free_basis(&self, e: &[ExtElem]) -> bool {
        if e.len() != self.rank {
            return false;
        }
        let Some(coords) = e.iter().map(|x| self.coords(x)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        self.spanning_matrix(&coords).rank() == self.dimension()
    }

    /// `A/NA`-coordinates of `x` with respect to `a_basis`.
    pub fn a_coords(&self, x: &ExtElem) -> Result<Vec<APoly>> {
        let ring_field = self.ambient.fq();
        let deg = self.level.deg().unwrap_or(0);
        let coords = self.coords(x).ok_or_else(|| Error::SolveFailed("element is not N-torsion".into()))?;
        let e: Vec<Vec<FqElem>> = self.a_basis.iter().map(|b| self.coords(b).expect("basis is torsion")).collect();
        let sol = self
            .spanning_matrix(&e)
            .solve(&coords)
            .ok_or_else(|| Error::SolveFailed("no A/NA-coordinates".into()))?;
        Ok(sol.chunks(deg.max(1)).map(|c| APoly::from_coeffs(ring_field, c.to_vec())).collect())
    }

    /// The torsion `phi[M]` for `M | N`, with the compatible basis
    /// `phi_{N/M}(e_i)`, inside the same ambient field.
    pub fn sub_level(&self, m_level: &APoly) -> Result<TorsionModule> {
        let m_level = m_level.monic();
        let (cofactor, rem) = self.level.divmod(&m_level)?;
        if !rem.is_zero() {
            return Err(Error::NotADivisor(crate::text::format_apoly(&m_level)));
        }
        let a_basis: Vec<ExtElem> = self.a_basis.iter().map(|e| self.apply(&cofactor, e)).collect::<Result<_>>()?;
        let l = &self.ambient;
        // span of phi_{T^j}(e'_i), echelonized
        let deg = m_level.deg().unwrap_or(0);
        let mut rows = Vec::new();
        for e in &a_basis {
            let mut cur = e.clone();
            for j in 0..deg {
                if j > 0 {
                    cur = self.apply_phi_t(&cur);
                }
                rows.push(l.to_fq_coords(&cur));
            }
        }
        let fq_basis: Vec<ExtElem> = if rows.is_empty() {
            Vec::new()
        } else {
            let (e, piv) = Matrix::from_rows(l.fq(), rows).rref();
            e.rows().into_iter().take(piv.len()).map(|v| l.from_fq_coords(&v)).collect()
        };
        let dim = fq_basis.len();
        let phi_m = self.phi.phi_of(&m_level)?;
        let mut images = fq_basis.clone();
        let mut m = self.m;
        for k in 1..=self.m {
            images = images.iter().map(|b| self.frobenius(b)).collect();
            if images == fq_basis {
                m = k;
                break;
            }
        }
        let mut t = TorsionModule {
            prime: self.prime.clone(),
            level: m_level,
            rank: self.rank,
            m,
            residue_degree: self.residue_degree,
            ambient: self.ambient.clone(),
            phi: self.phi.clone(),
            pivots: leading_pivots(l, &fq_basis),
            fq_basis,
            a_basis,
            action: Matrix::zero(l.fq(), dim, dim),
            frob_table: self.frob_table.clone(),
        };
        debug_assert!(t.fq_basis.iter().all(|b| l.is_zero(&phi_m.to_additive().eval(b))));
        t.action = t.matrix_on_basis(|x| t.apply_phi_t(x));
        if dim != self.rank * deg || !t.is_free_basis(&t.a_basis) {
            return Err(Error::SolveFailed("image basis is not free".into()));
        }
        Ok(t)
    }
}

/// Frobenius at `p` acting on `phi[N]`, in the coordinates of the `A/NA`-basis.
#[derive(Clone, Debug)]
pub struct FrobeniusElement {
    pub prime: APoly,
    pub level: APoly,
    pub matrix: ResidueMatrix,
    /// Constant-first coefficients of `det(X - matrix)`.
    pub char_poly: Vec<APoly>,
}

/// Matrix of `x -> x^(q^deg p)` on `phi[N]`: column `i` holds the
/// `A/NA`-coordinates of `Frob(e_i)`.
pub fn frobenius_matrix(t: &TorsionModule) -> Result<FrobeniusElement> {
    if t.a_basis.len() != t.rank {
        return Err(Error::InvalidArgument("torsion module has no A/NA-basis".into()));
    }
    let ring = ResidueRing::new(&t.level)?;
    let cols: Vec<Vec<APoly>> = t.a_basis.iter().map(|e| t.a_coords(&t.frobenius(e))).collect::<Result<_>>()?;
    let matrix = ResidueMatrix::from_columns(&ring, &cols);
    if !matrix.is_invertible() {
        return Err(Error::SolveFailed("Frobenius matrix is singular".into()));
    }
    let cp = char_poly(&matrix);
    Ok(FrobeniusElement { prime: t.prime.clone(), level: t.level.clone(), matrix, char_poly: cp })
}

/// Whether Frobenius at `p` acts on the Carlitz `N`-torsion as
/// multiplication by `p mod N`.
pub fn carlitz_reciprocity_check(field: &FqField, p: &APoly, n: &APoly, caps: TorsionCaps) -> Result<bool> {
    let red = reduce_at(&carlitz(field), p)?;
    let t = torsion(&red, n, caps)?;
    let fr = frobenius_matrix(&t)?;
    Ok(*fr.matrix.get(0, 0) == p.rem(&n.monic())?)
}

/// Whether `phi_N` has all its roots in `F_p`, decided by the kernel
/// dimension over `F_p` alone.
pub fn splits_completely(red: &ReducedModule, n: &APoly) -> Result<bool> {
    let phi_n: TwistedPoly<_> = red.phi().phi_of(n)?;
    let dim = linearized_kernel(&phi_n.to_additive(), 1, DEFAULT_AMBIENT_BITS)?.1.len();
    Ok(dim == red.rank() * n.deg().unwrap_or(0))
}
