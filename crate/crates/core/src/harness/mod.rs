//! Chebotarev experiments over ranges of primes and the identity batteries.

pub mod chebotarev;
pub mod spec;
pub mod suite;

pub use chebotarev::{
    binomial_band, prime_seed, run_chebotarev, tower_check, Aggregate, ChebotarevReport, ClassRow, ClassTable,
    PrimeRecord, TowerCheck, Verdict, MIN_SAMPLE, SCHEMA_VERSION, SUBGROUP_EVIDENCE,
};
pub use spec::{random_specialization, ExperimentSpec, HarnessCaps, SpecRecord, Specialization};
pub use suite::{verify_suite, FamilyReport, SuiteConfig, SuiteReport, FAMILIES};
