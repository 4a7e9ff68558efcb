//! Experiment descriptions: the module under test, its level and the prime range.

use std::collections::{BTreeMap, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{APoly, FiniteField, FqField};
use crate::drinfeld::{generic_module, specialize_module, APolyDomain, DrinfeldModule};
use crate::error::{Error, Result};
use crate::residue::DEFAULT_ENUMERATION_CAP;
use crate::text::format_apoly;

/// Images of the generic coefficients `g_1, ..., g_{r-1}`.
#[derive(Clone, Debug, PartialEq)]
pub enum Specialization {
    Fixed(BTreeMap<String, APoly>),
    /// Each `g_i` uniform among polynomials of degree `<= degree`.
    Random { seed: u64, degree: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HarnessCaps {
    /// Largest group enumerated or generated.
    pub enumeration_cap: u64,
    pub m_cap: usize,
    /// Stop after this many good primes.
    pub max_primes: Option<usize>,
}

impl Default for HarnessCaps {
    fn default() -> Self {
        HarnessCaps { enumeration_cap: DEFAULT_ENUMERATION_CAP, m_cap: 512, max_primes: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub q: u64,
    pub r: usize,
    /// The level `N`.
    pub level: APoly,
    pub specialization: Specialization,
    /// Inclusive range of prime degrees.
    pub deg_range: (usize, usize),
    pub seed: u64,
    pub caps: HarnessCaps,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RandomSpecialization {
    pub seed: u64,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializationRecord {
    pub images: BTreeMap<String, String>,
    pub random: Option<RandomSpecialization>,
}

/// The `spec` block of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecRecord {
    pub q: u64,
    pub r: usize,
    #[serde(rename = "N")]
    pub level: String,
    pub specialization: SpecializationRecord,
    pub seed: u64,
    pub deg_range: [usize; 2],
}

/// `g_1, ..., g_{r-1}` drawn from `seed`, each with `degree + 1` uniform coefficients.
pub fn random_specialization(field: &FqField, r: usize, seed: u64, degree: usize) -> BTreeMap<String, APoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (1..r)
        .map(|i| {
            let coeffs = (0..=degree).map(|_| field.random(&mut rng)).collect();
            (format!("g{i}"), APoly::from_coeffs(field, coeffs))
        })
        .collect()
}

impl ExperimentSpec {
    /// Fixed specialization, default caps, seed 0.
    pub fn new(level: &APoly, r: usize, images: BTreeMap<String, APoly>, deg_range: (usize, usize)) -> Self {
        ExperimentSpec {
            q: level.field().q(),
            r,
            level: level.clone(),
            specialization: Specialization::Fixed(images),
            deg_range,
            seed: 0,
            caps: HarnessCaps::default(),
        }
    }

    pub fn field(&self) -> &FqField {
        self.level.field()
    }

    pub fn validate(&self) -> Result<()> {
        if self.field().q() != self.q {
            return Err(Error::DomainMismatch);
        }
        if self.r == 0 {
            return Err(Error::InvalidArgument("rank must be positive".into()));
        }
        if !self.level.is_monic() || self.level.deg().unwrap_or(0) == 0 {
            return Err(Error::InvalidArgument("level must be monic and nonconstant".into()));
        }
        let (lo, hi) = self.deg_range;
        if lo == 0 || lo > hi {
            return Err(Error::InvalidArgument(format!("bad prime degree range {lo}..{hi}")));
        }
        if let Specialization::Fixed(images) = &self.specialization {
            for name in images.keys() {
                let known = name.strip_prefix('g').and_then(|i| i.parse::<usize>().ok()).is_some_and(|i| (1..self.r).contains(&i));
                if !known {
                    return Err(Error::InvalidArgument(format!("{name} is not a coefficient of a rank-{} module", self.r)));
                }
            }
            for i in 1..self.r {
                let name = format!("g{i}");
                match images.get(&name) {
                    None => return Err(Error::MissingGenerator(name)),
                    Some(a) if a.field() != self.field() => return Err(Error::DomainMismatch),
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }

    /// The resolved images of `g_1, ..., g_{r-1}`.
    pub fn images(&self) -> BTreeMap<String, APoly> {
        match &self.specialization {
            Specialization::Fixed(images) => images.clone(),
            Specialization::Random { seed, degree } => random_specialization(self.field(), self.r, *seed, *degree),
        }
    }

    /// The specialized module over `A`.
    pub fn module(&self) -> Result<DrinfeldModule<APolyDomain>> {
        self.validate()?;
        let images: HashMap<String, APoly> = self.images().into_iter().collect();
        specialize_module(&generic_module(self.field(), self.r)?, &images)
    }

    pub fn record(&self) -> SpecRecord {
        let random = match self.specialization {
            Specialization::Fixed(_) => None,
            Specialization::Random { seed, degree } => Some(RandomSpecialization { seed, degree }),
        };
        SpecRecord {
            q: self.q,
            r: self.r,
            level: format_apoly(&self.level),
            specialization: SpecializationRecord {
                images: self.images().iter().map(|(k, v)| (k.clone(), format_apoly(v))).collect(),
                random,
            },
            seed: self.seed,
            deg_range: [self.deg_range.0, self.deg_range.1],
        }
    }
}
