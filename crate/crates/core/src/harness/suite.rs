//! Identity batteries with fixed seeds, one pass/fail line per family.

use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chebotarev::{run_chebotarev, tower_check};
use super::spec::{ExperimentSpec, Specialization};
use crate::algebra::poly::monic_polys;
use crate::algebra::{irreducibles_of_degree, APoly, ExtElem, ExtField, FiniteField, FqField};
use crate::drinfeld::{generic_module, moore_determinant, FieldDomain};
use crate::error::{Error, Result};
use crate::residue::{
    enumerate_gl, g_order, gl_order, reduce_matrix, unit_count, verify_counting_identity, ResidueRing,
    DEFAULT_ENUMERATION_CAP,
};
use crate::text::format_apoly;
use crate::torsion::{carlitz_reciprocity_check, reduce_at, torsion, TorsionCaps};

pub const FAMILIES: [&str; 7] =
    ["phi-identities", "moore", "orders", "counting-identity", "torsion", "carlitz", "functoriality"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// The first failing case.
    pub counterexample: Option<String>,
    /// A highlighted result worth printing even on success.
    pub detail: Option<String>,
}

impl FamilyReport {
    fn new(name: &str) -> Self {
        FamilyReport { name: name.into(), cases: 0, failures: 0, counterexample: None, detail: None }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    fn check_result(&mut self, r: Result<bool>, describe: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, describe),
            Err(e) => self.check(false, || format!("{}: error {e}", describe())),
        }
    }
}

impl fmt::Display for FamilyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases", self.name, self.cases)?;
        if self.failures > 0 {
            write!(f, ", {} failed", self.failures)?;
        }
        write!(f, ")")?;
        if let Some(d) = &self.detail {
            write!(f, ": {d}")?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample: {c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub families: Vec<FamilyReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyReport::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fam in &self.families {
            writeln!(f, "{fam}")?;
        }
        Ok(())
    }
}

/// Sizes of the batteries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// `(M, N)` pairs per `(q, r)`.
    pub phi_pairs: usize,
    pub phi_max_deg: usize,
    pub phi_ranks: Vec<usize>,
    pub torsion_specializations: usize,
    pub torsion_primes: usize,
    pub carlitz_prime_deg: usize,
    pub carlitz_level_deg: usize,
    pub functoriality_prime_deg: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            phi_pairs: 20,
            phi_max_deg: 3,
            phi_ranks: vec![1, 2, 3],
            torsion_specializations: 4,
            torsion_primes: 3,
            carlitz_prime_deg: 5,
            carlitz_level_deg: 3,
            functoriality_prime_deg: 5,
        }
    }
}

fn field(q: u64) -> FqField {
    FqField::of_order(q).expect("q is a prime power")
}

fn random_apoly(f: &FqField, max_deg: usize, rng: &mut ChaCha8Rng) -> APoly {
    let d = rng.gen_range(0..=max_deg);
    APoly::from_coeffs(f, (0..=d).map(|_| f.random(rng)).collect())
}

/// Monic polynomials of degree `1..=max_deg`.
fn levels(f: &FqField, max_deg: usize) -> Vec<APoly> {
    (1..=max_deg).flat_map(|d| monic_polys(f, d).expect("positive degree").collect::<Vec<_>>()).collect()
}

/// `phi_(M+N) = phi_M + phi_N`, `phi_(MN) = phi_M phi_N = phi_N phi_M` and
/// `deg_X phi_N = q^(r deg N)` over `F_q[T, g_1, ..., g_(r-1)]`.
pub fn phi_identities(qs: &[u64], rs: &[usize], pairs: usize, max_deg: usize, seed: u64) -> FamilyReport {
    phi_battery(qs, rs, pairs, max_deg, seed, true)
}

/// Only the degree law, on the same pairs as [`phi_identities`].
pub fn degree_law(qs: &[u64], rs: &[usize], pairs: usize, max_deg: usize, seed: u64) -> FamilyReport {
    phi_battery(qs, rs, pairs, max_deg, seed, false)
}

fn phi_battery(qs: &[u64], rs: &[usize], pairs: usize, max_deg: usize, seed: u64, ring_laws: bool) -> FamilyReport {
    let mut rep = FamilyReport::new(if ring_laws { "phi-identities" } else { "degree-law" });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &q in qs {
        let f = field(q);
        for &r in rs {
            let phi = generic_module(&f, r).expect("positive rank");
            for _ in 0..pairs {
                let m = random_apoly(&f, max_deg, &mut rng);
                let n = random_apoly(&f, max_deg, &mut rng);
                let describe = || format!("q={q} r={r} M={} N={}", format_apoly(&m), format_apoly(&n));
                let outcome = (|| -> Result<bool> {
                    let pn = phi.phi_of(&n)?;
                    let laws = !ring_laws || {
                        let pm = phi.phi_of(&m)?;
                        let prod = phi.phi_of(&m.mul(&n))?;
                        phi.phi_of(&m.add(&n))? == pm.add(&pn)? && prod == pm.mul(&pn)? && prod == pn.mul(&pm)?
                    };
                    let degree = match n.deg() {
                        None => pn.is_zero(),
                        Some(d) => {
                            pn.to_additive().ordinary_degree() == Some(BigUint::from(q).pow((r * d) as u32))
                        }
                    };
                    Ok(laws && degree)
                })();
                rep.check_result(outcome, describe);
            }
        }
    }
    rep
}

/// Independence of `w` over `F_q` by trying every nontrivial combination.
fn independent(l: &ExtField, w: &[ExtElem]) -> bool {
    let fq = l.fq();
    let q = fq.q();
    (1..q.pow(w.len() as u32)).all(|mut idx| {
        let mut acc = l.zero();
        for x in w {
            acc = l.add(&acc, &l.scale(fq.from_index(idx % q), x));
            idx /= q;
        }
        !l.is_zero(&acc)
    })
}

/// The Moore determinant vanishes exactly on dependent tuples: exhaustive
/// over pairs in `F_8`, random triples over `F_81` and `F_(2^9)`.
pub fn moore_family(seed: u64) -> FamilyReport {
    let mut rep = FamilyReport::new("moore");
    let f2 = field(2);
    let f8 = ExtField::new(&f2, 3).expect("F_8");
    let d8 = FieldDomain::new(&f8, f8.zero());
    let elems: Vec<ExtElem> = (0..8u128).map(|i| f8.element_at(i)).collect();
    for a in &elems {
        for b in &elems {
            let w = [a.clone(), b.clone()];
            let nonzero = moore_determinant(&d8, &w).map(|d| !f8.is_zero(&d));
            rep.check_result(nonzero.map(|nz| nz == independent(&f8, &w)), || format!("F_8 tuple {w:?}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (q, m) in [(3u64, 4usize), (2, 9)] {
        let l = ExtField::new(&field(q), m).expect("extension");
        let d = FieldDomain::new(&l, l.zero());
        for _ in 0..50 {
            let mut w: Vec<ExtElem> = (0..3).map(|_| l.random(&mut rng)).collect();
            if rng.gen_bool(0.5) {
                w[2] = l.add(&w[0], &l.scale(l.fq().random(&mut rng), &w[1]));
            }
            let nonzero = moore_determinant(&d, &w).map(|x| !l.is_zero(&x));
            rep.check_result(nonzero.map(|nz| nz == independent(&l, &w)), || format!("q={q} m={m} tuple {w:?}"));
        }
    }
    rep
}

/// `unit_count`, `gl_order` and `g_order` against enumeration for every
/// monic level of degree `<= max_deg` whose group has at most `cap` elements.
pub fn orders_family(qs: &[u64], rs: &[usize], max_deg: usize, cap: u64) -> FamilyReport {
    let mut rep = FamilyReport::new("orders");
    for &q in qs {
        let f = field(q);
        for n in levels(&f, max_deg) {
            let ring = ResidueRing::new(&n).expect("nonconstant level");
            let units = ring.elements().filter(|a| ring.is_unit(a)).count();
            rep.check(unit_count(&ring) == BigUint::from(units), || format!("unit_count q={q} N={}", format_apoly(&n)));
            for &r in rs {
                let Ok(elements) = enumerate_gl(r, &ring, cap) else { continue };
                let elements: Vec<_> = elements.collect();
                let describe = |what: &str| format!("{what} q={q} r={r} N={}", format_apoly(&n));
                rep.check(gl_order(r, &ring) == BigUint::from(elements.len()), || describe("gl_order"));
                for m in levels(&f, n.deg().unwrap()).into_iter().filter(|m| m.divides(&n)) {
                    let cofactor = n.divmod(&m).expect("nonzero divisor").0;
                    let mut kernel = elements.iter().map(|g| reduce_matrix(g, &m).map(|h| h.is_identity()));
                    let count: Result<usize> = kernel.try_fold(0, |acc, x| x.map(|id| acc + usize::from(id)));
                    let ok = count.and_then(|c| Ok(g_order(r, &m, &cofactor)? == BigUint::from(c)));
                    rep.check_result(ok, || describe(&format!("g_order M={}", format_apoly(&m))));
                }
            }
        }
    }
    let f2 = field(2);
    let t = APoly::x(&f2);
    let gl_t = gl_order(2, &ResidueRing::new(&t).expect("T"));
    rep.check(gl_t == BigUint::from(6u32), || format!("gl_order(2, A/T) = {gl_t}, expected 6"));
    rep
}

/// `#G(NT, T) * #GL_r(A/TA) = #GL_r(A/NTA)` and its mirror for every monic
/// `N` of degree `<= max_deg`.
pub fn counting_identity_family(qs: &[u64], rs: &[usize], max_deg: usize) -> FamilyReport {
    let mut rep = FamilyReport::new("counting-identity");
    for &q in qs {
        let f = field(q);
        for n in levels(&f, max_deg) {
            for &r in rs {
                let outcome = verify_counting_identity(r, &n);
                if q == 2 && r == 2 && n == APoly::x(&f) {
                    if let Ok(c) = &outcome {
                        rep.detail = Some(format!(
                            "q=2 r=2 N=T: #G(T^2,T)*#GL_2(A/T) = {}*{} = {} = #GL_2(A/T^2)",
                            c.kernel_over_t,
                            c.gl_t,
                            &c.kernel_over_t * &c.gl_t
                        ));
                    }
                }
                rep.check_result(outcome.map(|c| c.holds), || format!("q={q} r={r} N={}", format_apoly(&n)));
            }
        }
    }
    rep
}

/// For random specializations and good primes: `phi_N` has
/// `q^(r deg N)` roots in the ambient field, all killed by `phi_N`, and the
/// drawn `A/NA`-basis passes the freeness certificate.
pub fn torsion_family(
    qs: &[u64],
    rs: &[usize],
    specializations: usize,
    primes_per: usize,
    seed: u64,
) -> FamilyReport {
    let mut rep = FamilyReport::new("torsion");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &q in qs {
        let f = field(q);
        let t = APoly::x(&f);
        let t1 = APoly::from_ints(&f, &[1, 1]);
        let candidates: Vec<APoly> =
            (1..=4).flat_map(|d| irreducibles_of_degree(&f, d).expect("positive degree").collect::<Vec<_>>()).collect();
        for &r in rs {
            for n in [t.clone(), t.mul(&t), t.mul(&t1)] {
                let nd = n.deg().unwrap();
                let good: Vec<&APoly> = candidates.iter().filter(|p| p.gcd(&n).map(|g| g.is_one()).unwrap_or(false)).collect();
                for s in 0..specializations {
                    let mut spec = ExperimentSpec::new(&n, r, Default::default(), (1, 1));
                    spec.specialization = Specialization::Random { seed: rng.gen(), degree: 2 };
                    let Ok(phi) = spec.module() else {
                        rep.check(false, || format!("q={q} r={r} N={} specialization {s}", format_apoly(&n)));
                        continue;
                    };
                    for _ in 0..primes_per {
                        let p = good[rng.gen_range(0..good.len())];
                        let caps = TorsionCaps { seed: rng.gen(), ..Default::default() };
                        let describe = || {
                            format!("q={q} r={r} N={} p={} images={:?}", format_apoly(&n), format_apoly(p), spec.record().specialization.images)
                        };
                        let outcome = (|| -> Result<bool> {
                            let red = reduce_at(&phi, p)?;
                            let tor = torsion(&red, &n, caps)?;
                            let card = BigUint::from(q).pow(tor.dimension() as u32);
                            let roots = tor
                                .fq_basis()
                                .iter()
                                .map(|x| tor.apply(&n, x).map(|y| tor.ambient().is_zero(&y)))
                                .collect::<Result<Vec<bool>>>()?;
                            Ok(card == BigUint::from(q).pow((r * nd) as u32)
                                && roots.iter().all(|&z| z)
                                && tor.is_free_basis(tor.a_basis()))
                        })();
                        rep.check_result(outcome, describe);
                    }
                }
            }
        }
    }
    rep
}

/// Frobenius on the Carlitz `N`-torsion is multiplication by `p mod N`.
pub fn carlitz_family(qs: &[u64], max_prime_deg: usize, max_level_deg: usize) -> FamilyReport {
    let mut rep = FamilyReport::new("carlitz");
    for &q in qs {
        let f = field(q);
        let ns = levels(&f, max_level_deg);
        for d in 1..=max_prime_deg {
            for p in irreducibles_of_degree(&f, d).expect("positive degree") {
                for n in &ns {
                    if !p.gcd(n).map(|g| g.is_one()).unwrap_or(false) {
                        continue;
                    }
                    let ok = carlitz_reciprocity_check(&f, &p, n, TorsionCaps::default());
                    rep.check_result(ok, || format!("q={q} p={} N={}", format_apoly(&p), format_apoly(n)));
                }
            }
        }
    }
    rep
}

/// Frobenius at `N` reduced to a divisor `M` against Frobenius computed at `M`.
pub fn functoriality_family(qs: &[u64], max_prime_deg: usize, seed: u64) -> FamilyReport {
    let mut rep = FamilyReport::new("functoriality");
    for &q in qs {
        let f = field(q);
        let t = APoly::x(&f);
        let t1 = APoly::from_ints(&f, &[1, 1]);
        let hi = if q == 2 { max_prime_deg } else { max_prime_deg.saturating_sub(2).max(1) };
        for (n, m) in [(t.mul(&t), t.clone()), (t.mul(&t1), t.clone()), (t.mul(&t1), t1.clone())] {
            let mut big = ExperimentSpec::new(&n, 2, Default::default(), (1, hi));
            big.specialization = Specialization::Random { seed: seed ^ q, degree: 2 };
            big.seed = seed;
            let small = ExperimentSpec { level: m.clone(), ..big.clone() };
            let describe = || format!("q={q} N={} M={}", format_apoly(&n), format_apoly(&m));
            let outcome = (|| -> Result<_> {
                let check = tower_check(&run_chebotarev(&big)?, &run_chebotarev(&small)?)?;
                Ok(check)
            })();
            match outcome {
                Ok(check) => {
                    for p in &check.mismatches {
                        rep.check(false, || format!("{} p={p}", describe()));
                    }
                    rep.cases += check.checked - check.mismatches.len();
                }
                Err(e) => rep.check(false, || format!("{}: error {e}", describe())),
            }
        }
    }
    rep
}

/// Runs every family, or only `only`.
pub fn verify_suite(config: &SuiteConfig, only: Option<&str>) -> Result<SuiteReport> {
    if let Some(name) = only {
        if !FAMILIES.contains(&name) {
            return Err(Error::InvalidArgument(format!("unknown family {name}; expected one of {}", FAMILIES.join(", "))));
        }
    }
    let qs = [2u64, 3];
    let mut families = Vec::new();
    for name in FAMILIES.iter().filter(|n| only.is_none_or(|o| o == **n)) {
        let rep = match *name {
            "phi-identities" => phi_identities(&qs, &config.phi_ranks, config.phi_pairs, config.phi_max_deg, config.seed),
            "moore" => moore_family(config.seed),
            "orders" => orders_family(&qs, &[1, 2], 2, DEFAULT_ENUMERATION_CAP),
            "counting-identity" => counting_identity_family(&qs, &[1, 2, 3], 2),
            "torsion" => {
                torsion_family(&qs, &[1, 2], config.torsion_specializations, config.torsion_primes, config.seed)
            }
            "carlitz" => carlitz_family(&qs, config.carlitz_prime_deg, config.carlitz_level_deg),
            "functoriality" => functoriality_family(&qs, config.functoriality_prime_deg, config.seed),
            _ => unreachable!("family names are checked above"),
        };
        families.push(rep);
    }
    Ok(SuiteReport { families })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_batteries_pass() {
        assert!(phi_identities(&[2, 3], &[1, 2], 3, 2, 1).passed());
        assert!(moore_family(1).passed());
        let c = counting_identity_family(&[2], &[2], 1);
        assert!(c.passed());
        assert_eq!(c.detail.as_deref(), Some("q=2 r=2 N=T: #G(T^2,T)*#GL_2(A/T) = 16*6 = 96 = #GL_2(A/T^2)"));
        assert!(carlitz_family(&[2], 3, 2).passed());
        assert!(torsion_family(&[2], &[2], 1, 2, 1).passed());
    }

    #[test]
    fn failures_are_reported_with_a_counterexample() {
        let mut rep = FamilyReport::new("demo");
        rep.check(true, || unreachable!());
        rep.check(false, || "first".into());
        rep.check(false, || "second".into());
        assert!(!rep.passed());
        assert_eq!(rep.counterexample.as_deref(), Some("first"));
        assert_eq!(rep.to_string(), "FAIL demo (3 cases, 2 failed)\n  counterexample: first");
        assert!(!FamilyReport::new("empty").passed());
    }

    #[test]
    fn unknown_family_is_rejected() {
        assert!(verify_suite(&SuiteConfig::default(), Some("nope")).is_err());
        let rep = verify_suite(&SuiteConfig::default(), Some("orders")).unwrap();
        assert_eq!(rep.families.len(), 1);
        assert!(rep.passed(), "{rep}");
    }
}
