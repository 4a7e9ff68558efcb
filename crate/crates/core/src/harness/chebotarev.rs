//! Frobenius statistics over a range of primes against the predicted image
//! `GL_r(A/NA)`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::spec::{ExperimentSpec, SpecRecord};
use crate::algebra::{irreducibles_of_degree, APoly};
use crate::error::{Error, Result};
use crate::residue::{char_poly, enumerate_gl, gl_order, reduce_matrix, subgroup_order, ResidueRing};
use crate::text::{format_apoly, format_char_poly};
use crate::torsion::{frobenius_matrix, reduce_at, splits_completely, torsion, FrobeniusElement, TorsionCaps, DEFAULT_AMBIENT_BITS};

pub const SCHEMA_VERSION: u32 = 1;

/// Good primes needed before a density verdict can be PASS.
pub const MIN_SAMPLE: usize = 300;

/// Width of the acceptance band in standard deviations.
pub const SIGMAS: f64 = 3.0;

pub const SUBGROUP_EVIDENCE: &str = "heuristic: conjugacy-representative generation";
pub const PREDICTION_UNAVAILABLE: &str = "prediction unavailable";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeRecord {
    pub p: String,
    pub deg: usize,
    pub m: usize,
    pub charpoly: String,
    pub split: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassRow {
    pub charpoly: String,
    /// Number of group elements with this characteristic polynomial.
    pub size: String,
    pub proportion: String,
    pub count: usize,
    pub observed: f64,
    pub band: [f64; 2],
    pub within: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ClassTable {
    Rows(Vec<ClassRow>),
    Unavailable(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub n: usize,
    pub k: usize,
    pub predicted_density: String,
    pub observed: f64,
    pub band: [f64; 2],
    pub density_within: bool,
    pub class_table: ClassTable,
    pub subgroup_order: Option<String>,
    pub subgroup_evidence: String,
    pub group_order: String,
    /// Split-completely flag agrees with `Frob = 1` on every record.
    pub consistent: bool,
    /// Primes dividing the level.
    pub skipped: Vec<String>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChebotarevReport {
    pub schema: u32,
    pub spec: SpecRecord,
    pub primes: Vec<PrimeRecord>,
    pub aggregate: Aggregate,
    /// Frobenius elements in the order of `primes`.
    #[serde(skip)]
    pub frobenius: Vec<FrobeniusElement>,
}

impl ChebotarevReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Whether every class frequency lies in its band; `None` without a class table.
    pub fn classes_within(&self) -> Option<bool> {
        match &self.aggregate.class_table {
            ClassTable::Rows(rows) => Some(rows.iter().all(|r| r.within)),
            ClassTable::Unavailable(_) => None,
        }
    }
}

/// Seed for the basis draw at `p`, mixed from the experiment seed and the
/// coefficients of `p` (splitmix64 steps).
pub fn prime_seed(seed: u64, p: &APoly) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    p.coeffs().iter().fold(mix(seed), |h, c| mix(h ^ c.value()))
}

/// `p +- SIGMAS * sqrt(p (1 - p) / n)`, clipped to `[0, 1]`.
pub fn binomial_band(p: f64, n: usize) -> [f64; 2] {
    let half = SIGMAS * (p * (1.0 - p) / n as f64).sqrt();
    [(p - half).max(0.0), (p + half).min(1.0)]
}

fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    num.to_f64().unwrap_or(f64::INFINITY) / den.to_f64().unwrap_or(f64::INFINITY)
}

fn class_table(spec: &ExperimentSpec, ring: &ResidueRing, group_order: &BigUint, observed: &BTreeMap<String, usize>, n: usize) -> ClassTable {
    let Ok(elements) = enumerate_gl(spec.r, ring, spec.caps.enumeration_cap) else {
        return ClassTable::Unavailable(PREDICTION_UNAVAILABLE.into());
    };
    let mut sizes: BTreeMap<String, BigUint> = BTreeMap::new();
    for g in elements {
        *sizes.entry(format_char_poly(&char_poly(&g))).or_default() += 1u32;
    }
    for key in observed.keys() {
        sizes.entry(key.clone()).or_default();
    }
    let rows = sizes
        .into_iter()
        .map(|(charpoly, size)| {
            let count = observed.get(&charpoly).copied().unwrap_or(0);
            let p = ratio(&size, group_order);
            let band = binomial_band(p, n);
            let freq = count as f64 / n as f64;
            let g = size.gcd(group_order);
            ClassRow {
                proportion: format!("{}/{}", &size / &g, group_order / &g),
                size: size.to_string(),
                within: size > BigUint::ZERO && band[0] <= freq && freq <= band[1],
                charpoly,
                count,
                observed: freq,
                band,
            }
        })
        .collect();
    ClassTable::Rows(rows)
}

/// Runs reduction, torsion and Frobenius at every good prime of the range,
/// in canonical order, and aggregates the statistics.
pub fn run_chebotarev(spec: &ExperimentSpec) -> Result<ChebotarevReport> {
    let phi = spec.module()?;
    let level = &spec.level;
    let field = spec.field();
    let ring = ResidueRing::new(level)?;
    let group_order = gl_order(spec.r, &ring);
    let mut primes = Vec::new();
    let mut frobenius = Vec::new();
    let mut skipped = Vec::new();
    let mut consistent = true;
    'degrees: for deg in spec.deg_range.0..=spec.deg_range.1 {
        for p in irreducibles_of_degree(field, deg)? {
            if spec.caps.max_primes.is_some_and(|cap| primes.len() >= cap) {
                break 'degrees;
            }
            if !p.gcd(level)?.is_one() {
                skipped.push(format_apoly(&p));
                continue;
            }
            let red = reduce_at(&phi, &p)?;
            let caps = TorsionCaps { m_cap: spec.caps.m_cap, max_bits: DEFAULT_AMBIENT_BITS, seed: prime_seed(spec.seed, &p) };
            let t = torsion(&red, level, caps)?;
            let fr = frobenius_matrix(&t)?;
            let split = splits_completely(&red, level)?;
            consistent &= split == fr.matrix.is_identity();
            primes.push(PrimeRecord { p: format_apoly(&p), deg, m: t.m(), charpoly: format_char_poly(&fr.char_poly), split });
            frobenius.push(fr);
        }
    }
    let n = primes.len();
    if n == 0 {
        return Err(Error::NoGoodPrimes);
    }
    let k = primes.iter().filter(|r| r.split).count();
    let predicted = 1.0 / group_order.to_f64().unwrap_or(f64::INFINITY);
    let band = binomial_band(predicted, n);
    let observed = k as f64 / n as f64;
    let density_within = band[0] <= observed && observed <= band[1];
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for r in &primes {
        *counts.entry(r.charpoly.clone()).or_default() += 1;
    }
    let class_table = class_table(spec, &ring, &group_order, &counts, n);
    let gens: Vec<_> = frobenius.iter().map(|f| f.matrix.clone()).collect();
    let subgroup = match subgroup_order(&gens, spec.caps.enumeration_cap) {
        Ok(o) => Some(o),
        Err(Error::SizeExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let verdict = if !consistent {
        Verdict::Fail
    } else if n < MIN_SAMPLE {
        Verdict::Inconclusive
    } else if density_within && subgroup.as_ref().is_none_or(|o| *o == group_order) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let aggregate = Aggregate {
        n,
        k,
        predicted_density: format!("1/{group_order}"),
        observed,
        band,
        density_within,
        class_table,
        subgroup_order: subgroup.map(|o| o.to_string()),
        subgroup_evidence: SUBGROUP_EVIDENCE.into(),
        group_order: group_order.to_string(),
        consistent,
        skipped,
        verdict,
    };
    Ok(ChebotarevReport { schema: SCHEMA_VERSION, spec: spec.record(), primes, aggregate, frobenius })
}

/// Outcome of comparing Frobenius at a level `N` with Frobenius at a divisor `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerCheck {
    pub checked: usize,
    /// Primes where `reduce_matrix(Frob_N, M)` and `Frob_M` have different characteristic polynomials.
    pub mismatches: Vec<String>,
}

impl TowerCheck {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares two reports over the same primes whose levels satisfy `M | N`.
pub fn tower_check(big: &ChebotarevReport, small: &ChebotarevReport) -> Result<TowerCheck> {
    let (Some(fb), Some(fs)) = (big.frobenius.first(), small.frobenius.first()) else {
        return Err(Error::NoGoodPrimes);
    };
    let m = &fs.level;
    if !m.divides(&fb.level) {
        return Err(Error::NotADivisor(format_apoly(m)));
    }
    let by_prime: BTreeMap<String, &FrobeniusElement> = small.frobenius.iter().map(|f| (format_apoly(&f.prime), f)).collect();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for f in &big.frobenius {
        let key = format_apoly(&f.prime);
        let Some(g) = by_prime.get(&key) else { continue };
        checked += 1;
        if char_poly(&reduce_matrix(&f.matrix, m)?) != g.char_poly {
            mismatches.push(key);
        }
    }
    Ok(TowerCheck { checked, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{count_irreducibles, FqField};
    use crate::harness::spec::Specialization;

    fn f2() -> FqField {
        FqField::new(2, 1).unwrap()
    }

    fn moore_spec(level: &APoly, hi: usize) -> ExperimentSpec {
        let f = level.field().clone();
        let images = [("g1".to_string(), APoly::x(&f))].into_iter().collect();
        ExperimentSpec::new(level, 2, images, (1, hi))
    }

    #[test]
    fn carlitz_at_t_splits_everywhere() {
        let f = f2();
        let spec = ExperimentSpec::new(&APoly::x(&f), 1, BTreeMap::new(), (1, 6));
        let rep = run_chebotarev(&spec).unwrap();
        assert_eq!(rep.aggregate.predicted_density, "1/1");
        assert_eq!(rep.aggregate.k, rep.aggregate.n);
        assert_eq!(rep.aggregate.skipped, vec!["T".to_string()]);
        let total: usize = (1..=6).map(|d| count_irreducibles(2, d).to_usize().unwrap()).sum();
        assert_eq!(rep.aggregate.n, total - 1);
        assert_eq!(rep.aggregate.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn moore_case_small_sample() {
        let f = f2();
        let rep = run_chebotarev(&moore_spec(&APoly::x(&f), 7)).unwrap();
        let agg = &rep.aggregate;
        assert!(agg.consistent);
        assert_eq!(agg.group_order, "6");
        assert_eq!(agg.predicted_density, "1/6");
        assert_eq!(agg.subgroup_order.as_deref(), Some("6"));
        assert_eq!(agg.verdict, Verdict::Inconclusive);
        let ClassTable::Rows(rows) = &agg.class_table else { panic!("GL_2(F_2) is enumerable") };
        let sizes: Vec<(&str, &str)> = rows.iter().map(|r| (r.charpoly.as_str(), r.size.as_str())).collect();
        assert_eq!(sizes, [("X^2 + 1", "4"), ("X^2 + X + 1", "2")]);
        assert_eq!(rows.iter().map(|r| r.count).sum::<usize>(), agg.n);
        // records come in (deg, lex) order
        let degs: Vec<usize> = rep.primes.iter().map(|r| r.deg).collect();
        assert!(degs.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn the_first_primes_generate_gl2() {
        let f = f2();
        let mut spec = moore_spec(&APoly::x(&f), 12);
        spec.caps.max_primes = Some(50);
        let rep = run_chebotarev(&spec).unwrap();
        assert_eq!(rep.aggregate.n, 50);
        assert_eq!(rep.aggregate.subgroup_order.as_deref(), Some("6"));
    }

    #[test]
    fn reports_are_deterministic_and_seed_independent_in_content() {
        let f = f2();
        let level = APoly::from_ints(&f, &[0, 0, 1]);
        let mut spec = moore_spec(&level, 5);
        let a = run_chebotarev(&spec).unwrap().to_json();
        assert_eq!(a, run_chebotarev(&spec).unwrap().to_json());
        assert!(a.starts_with("{\n  \"schema\": 1,"));
        spec.seed = 99;
        let b = run_chebotarev(&spec).unwrap();
        // char polys are conjugacy invariants: only the seed field changes
        assert_eq!(a.replace("\"seed\": 0", "\"seed\": 99"), b.to_json());
    }

    #[test]
    fn levels_are_compatible() {
        let f = f2();
        let t = APoly::x(&f);
        let big = run_chebotarev(&moore_spec(&t.mul(&t), 6)).unwrap();
        let small = run_chebotarev(&moore_spec(&t, 6)).unwrap();
        let check = tower_check(&big, &small).unwrap();
        assert_eq!(check.checked, big.aggregate.n);
        assert!(check.holds(), "{:?}", check.mismatches);
        assert!(tower_check(&small, &big).is_err());
    }

    #[test]
    fn random_specializations_and_errors() {
        let f = FqField::new(3, 1).unwrap();
        let mut spec = ExperimentSpec::new(&APoly::x(&f), 2, BTreeMap::new(), (1, 3));
        spec.specialization = Specialization::Random { seed: 3, degree: 2 };
        let rep = run_chebotarev(&spec).unwrap();
        assert!(rep.aggregate.consistent);
        assert!(rep.primes.iter().all(|r| r.charpoly.starts_with("X^2")));
        // the only degree-1 prime dividing T is T itself
        let only_t = ExperimentSpec { deg_range: (1, 1), caps: crate::harness::HarnessCaps { max_primes: Some(0), ..Default::default() }, ..spec };
        assert_eq!(run_chebotarev(&only_t).unwrap_err(), Error::NoGoodPrimes);
    }

    #[test]
    fn bands() {
        let [lo, hi] = binomial_band(1.0 / 6.0, 750);
        assert!((hi - lo - 6.0 * (5.0f64 / 36.0 / 750.0).sqrt()).abs() < 1e-12);
        assert_eq!(binomial_band(1.0, 10), [1.0, 1.0]);
        assert_eq!(binomial_band(0.01, 1)[0], 0.0);
        assert_ne!(prime_seed(0, &APoly::x(&f2())), prime_seed(1, &APoly::x(&f2())));
    }
}
