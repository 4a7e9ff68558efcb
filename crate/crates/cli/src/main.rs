//! Command-line front end: division polynomials, group orders, torsion,
//! Frobenius matrices, Chebotarev runs and the identity batteries.

use std::collections::{BTreeMap, HashMap};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dringal::algebra::{APoly, ExtField, FiniteField, FqField};
use dringal::drinfeld::{carlitz, generic_module, moore_determinant, specialize_module, APolyDomain, DrinfeldModule, FieldDomain};
use dringal::harness::{run_chebotarev, verify_suite, ExperimentSpec, HarnessCaps, Specialization, SuiteConfig, Verdict};
use dringal::residue::{g_order, gl_order, ResidueRing};
use dringal::text::{format_apoly, format_char_poly, format_field_coords, parse_apoly, parse_assignments, parse_ext_elem};
use dringal::torsion::{frobenius_matrix, reduce_at, torsion, TorsionCaps, TorsionModule};
use dringal::Error;

const SEED_VAR: &str = "DRINGAL_SEED";

#[derive(Parser, Debug)]
#[command(name = "dringal", version, about = "Drinfeld F_q[T]-modules: division polynomials, torsion and Galois image statistics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print phi_N.
    Phi {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value_t = Form::Tau)]
        form: Form,
    },
    /// Print #GL_r(A/NA), or #ker(GL_r(A/NA) -> GL_r(A/MA)) with --rel M.
    Order {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: String,
        #[arg(long)]
        rel: Option<String>,
    },
    /// Print the N-torsion at a prime: extension degree and bases.
    Torsion {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        n: String,
        #[arg(long)]
        prime: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the Frobenius matrix at a prime and its characteristic polynomial.
    Frobenius {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        n: String,
        #[arg(long)]
        prime: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Frobenius statistics over a range of primes.
    Chebotarev {
        #[command(flatten)]
        module: ModuleArgs,
        /// Random specialization `SEED,DEG` instead of --spec.
        #[arg(long, conflicts_with = "spec")]
        random_spec: Option<String>,
        #[arg(long)]
        n: String,
        /// Inclusive prime degree range `A..B`.
        #[arg(long)]
        deg_range: String,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_primes: Option<usize>,
    },
    /// Run the identity batteries.
    Verify {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Moore determinant of elements of F_(q^K), written as polynomials in `z`.
    Moore {
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        elems: Vec<String>,
        /// Extension degree K; defaults to the number of elements.
        #[arg(long)]
        ext: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct ModuleArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    r: usize,
    /// Images `g1=POLY,...`; without it `phi` stays generic.
    #[arg(long)]
    spec: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Form {
    Tau,
    X,
}

/// Exit status 1 for a failed verification, 2 for bad input.
enum Failure {
    Verification(String),
    Usage(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

type Outcome = Result<(), Failure>;

fn resolve_seed(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("{SEED_VAR}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn field(q: u64) -> Result<FqField, Error> {
    FqField::of_order(q)
}

fn images(f: &FqField, spec: &Option<String>) -> Result<BTreeMap<String, APoly>, Error> {
    spec.as_deref().map_or_else(|| Ok(BTreeMap::new()), |s| parse_assignments(f, s))
}

fn module_over_a(f: &FqField, args: &ModuleArgs) -> Result<DrinfeldModule<APolyDomain>, Error> {
    if args.r == 1 && args.spec.is_none() {
        return Ok(carlitz(f));
    }
    let images: HashMap<String, APoly> = images(f, &args.spec)?.into_iter().collect();
    specialize_module(&generic_module(f, args.r)?, &images)
}

fn cmd_phi(module: &ModuleArgs, n: &str, form: Form) -> Outcome {
    let f = field(module.q)?;
    let n = parse_apoly(&f, n)?;
    let text = if module.spec.is_some() || module.r == 1 {
        let phi_n = module_over_a(&f, module)?.phi_of(&n)?;
        if form == Form::X { phi_n.to_additive().format_x() } else { phi_n.format_tau() }
    } else {
        let phi_n = generic_module(&f, module.r)?.phi_of(&n)?;
        if form == Form::X { phi_n.to_additive().format_x() } else { phi_n.format_tau() }
    };
    println!("{text}");
    Ok(())
}

fn cmd_order(q: u64, r: usize, n: &str, rel: Option<&str>) -> Outcome {
    let f = field(q)?;
    let n = parse_apoly(&f, n)?.monic();
    if r == 0 || n.deg().unwrap_or(0) == 0 {
        return Err(Error::InvalidArgument("need r >= 1 and a nonconstant level".into()).into());
    }
    let order = match rel {
        None => gl_order(r, &ResidueRing::new(&n)?),
        Some(m) => {
            let m = parse_apoly(&f, m)?.monic();
            if !m.divides(&n) {
                return Err(Error::NotADivisor(format_apoly(&m)).into());
            }
            g_order(r, &m, &n.divmod(&m)?.0)?
        }
    };
    println!("{order}");
    Ok(())
}

fn torsion_at(module: &ModuleArgs, n: &str, prime: &str, seed: Option<u64>) -> Result<TorsionModule, Error> {
    let f = field(module.q)?;
    let n = parse_apoly(&f, n)?;
    let p = parse_apoly(&f, prime)?;
    let phi = module_over_a(&f, module)?;
    let red = reduce_at(&phi, &p)?;
    torsion(&red, &n, TorsionCaps { seed: resolve_seed(seed)?, ..Default::default() })
}

fn format_elem(l: &ExtField, x: &dringal::algebra::ExtElem) -> String {
    format_field_coords(l.fq(), &l.to_fq_coords(x), false)
}

fn cmd_torsion(module: &ModuleArgs, n: &str, prime: &str, seed: Option<u64>) -> Outcome {
    let t = torsion_at(module, n, prime, seed)?;
    let l = t.ambient();
    println!("m = {}", t.m());
    println!("dimension over F_q = {}", t.dimension());
    println!("F_q-basis, as coordinates in F_q^{}:", l.fq_degree());
    for b in t.fq_basis() {
        println!("  {}", format_elem(l, b));
    }
    println!("A/NA-basis:");
    for e in t.a_basis() {
        println!("  {}", format_elem(l, e));
    }
    Ok(())
}

fn cmd_frobenius(module: &ModuleArgs, n: &str, prime: &str, seed: Option<u64>) -> Outcome {
    let t = torsion_at(module, n, prime, seed)?;
    let fr = frobenius_matrix(&t)?;
    let r = fr.matrix.rank();
    println!("Frobenius at {} on phi[{}]:", format_apoly(&fr.prime), format_apoly(&fr.level));
    for i in 0..r {
        let row: Vec<String> = (0..r).map(|j| format_apoly(fr.matrix.get(i, j))).collect();
        println!("  [{}]", row.join(", "));
    }
    println!("char poly: {}", format_char_poly(&fr.char_poly));
    Ok(())
}

fn parse_pair<A: std::str::FromStr, B: std::str::FromStr>(src: &str, sep: &str, what: &str) -> Result<(A, B), Error> {
    let bad = || Error::Parse(format!("expected {what}, got {src:?}"));
    let (a, b) = src.split_once(sep).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

#[allow(clippy::too_many_arguments)]
fn cmd_chebotarev(
    module: &ModuleArgs,
    random_spec: Option<&str>,
    n: &str,
    deg_range: &str,
    json: Option<&str>,
    seed: Option<u64>,
    max_primes: Option<usize>,
) -> Outcome {
    let f = field(module.q)?;
    let level = parse_apoly(&f, n)?;
    let specialization = match random_spec {
        Some(s) => {
            let (seed, degree) = parse_pair(s, ",", "SEED,DEG")?;
            Specialization::Random { seed, degree }
        }
        None => Specialization::Fixed(images(&f, &module.spec)?),
    };
    let spec = ExperimentSpec {
        q: module.q,
        r: module.r,
        level,
        specialization,
        deg_range: parse_pair(deg_range, "..", "A..B")?,
        seed: resolve_seed(seed)?,
        caps: HarnessCaps { max_primes, ..Default::default() },
    };
    let rep = run_chebotarev(&spec)?;
    let a = &rep.aggregate;
    match json {
        Some("-") => println!("{}", rep.to_json()),
        Some(path) => {
            std::fs::write(path, rep.to_json() + "\n")
                .map_err(|e| Error::InvalidArgument(format!("cannot write {path}: {e}")))?;
        }
        None => {}
    }
    if json != Some("-") {
        println!("good primes: {} (skipped {})", a.n, a.skipped.len());
        println!("split completely: {} ({:.4}), predicted {} band [{:.4}, {:.4}]", a.k, a.observed, a.predicted_density, a.band[0], a.band[1]);
        println!("subgroup generated: {} of {} ({})", a.subgroup_order.as_deref().unwrap_or("unknown"), a.group_order, a.subgroup_evidence);
        if let Some(ok) = rep.classes_within() {
            println!("char-poly classes within band: {ok}");
        }
        println!("verdict: {}", a.verdict);
    }
    match a.verdict {
        Verdict::Fail => Err(Failure::Verification("Chebotarev verdict FAIL".into())),
        Verdict::Pass | Verdict::Inconclusive => Ok(()),
    }
}

fn cmd_verify(family: Option<&str>, seed: Option<u64>) -> Outcome {
    let config = SuiteConfig { seed: resolve_seed(seed)?, ..Default::default() };
    let rep = verify_suite(&config, family)?;
    print!("{rep}");
    if rep.passed() {
        Ok(())
    } else {
        Err(Failure::Verification("some families failed".into()))
    }
}

fn cmd_moore(q: u64, elems: &[String], ext: Option<usize>) -> Outcome {
    let f = field(q)?;
    let k = ext.unwrap_or(elems.len()).max(1);
    let l = ExtField::new(&f, k)?;
    let w = elems.iter().map(|e| parse_ext_elem(&l, e)).collect::<Result<Vec<_>, _>>()?;
    let det = moore_determinant(&FieldDomain::new(&l, l.zero()), &w)?;
    println!("{}", format_field_coords(&f, &l.to_fq_coords(&det), true));
    println!("{}", if l.is_zero(&det) { "dependent" } else { "independent" });
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Phi { module, n, form } => cmd_phi(module, n, *form),
        Command::Order { q, r, n, rel } => cmd_order(*q, *r, n, rel.as_deref()),
        Command::Torsion { module, n, prime, seed } => cmd_torsion(module, n, prime, *seed),
        Command::Frobenius { module, n, prime, seed } => cmd_frobenius(module, n, prime, *seed),
        Command::Chebotarev { module, random_spec, n, deg_range, json, seed, max_primes } => {
            cmd_chebotarev(module, random_spec.as_deref(), n, deg_range, json.as_deref(), *seed, *max_primes)
        }
        Command::Verify { family, seed } => cmd_verify(family.as_deref(), *seed),
        Command::Moore { q, elems, ext } => cmd_moore(*q, elems, *ext),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
