//! The identity scanner: runs every supported identity over one group and
//! representation, counts instances, collects failures (expected empty),
//! and catalogs the tight cases of the age inequality.
//!
//! Exhaustive enumeration is the default: all |G|^2 pairs and |G|^3
//! triples, up to the configured caps; beyond a cap the scanner draws
//! seeded-uniform samples instead, so reports are deterministic functions
//! of (input, options, seed). Tight cases are first-class output, not
//! debug logging.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::age::{self, AgeError};
use crate::arith::rat;
use crate::crring::{build_cr_ring, check_ring, RingError};
use crate::group::DEFAULT_CLOSURE_CAP;
use crate::obstruction::{KunnethChecker, ObstructionError, SectorEngine};
use crate::reptheory::{RepError, Representation};

pub const DEFAULT_PAIR_CAP: usize = 100_000;
pub const DEFAULT_TRIPLE_CAP: usize = 1_000_000;
pub const DEFAULT_SAMPLES: usize = 10_000;

/// The self-product rank check builds character tables for twisting
/// subgroups of `G x G`; above this product order that cost dominates the
/// whole suite, so the check is skipped with a note.
const SELF_PRODUCT_RANK_CAP: usize = 200;

/// Names of every check `run_suite` knows, in execution order.
pub const ALL_CHECKS: &[&str] = &[
    "age-conjugation",
    "age-additivity",
    "age-determinant",
    "age-dual",
    "inequality",
    "eq1-consistency",
    "symmetry",
    "associativity",
    "kunneth-age",
    "kunneth-rank",
    "chen-hu",
    "cotangent",
    "ring",
];

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Age(#[from] AgeError),
    #[error("unknown check name {0:?}")]
    UnknownCheck(String),
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Subset of ALL_CHECKS to run; None runs everything.
    pub checks: Option<BTreeSet<String>>,
    pub pair_cap: usize,
    pub triple_cap: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            checks: None,
            pair_cap: DEFAULT_PAIR_CAP,
            triple_cap: DEFAULT_TRIPLE_CAP,
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

/// Per-check outcome. `failures` must be empty on release-quality runs.
#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub name: String,
    pub instances: u64,
    pub sampled: bool,
    pub failures: Vec<String>,
    pub note: Option<String>,
}

/// One tight instance of the age inequality: h vanished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightWitness {
    pub g1: u32,
    pub g2: u32,
    pub irrep: String,
}

#[derive(Debug)]
pub struct VerificationReport {
    pub input: String,
    pub checks: Vec<CheckRecord>,
    pub tight_cases: Vec<TightWitness>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn failure_count(&self) -> usize {
        self.checks.iter().map(|c| c.failures.len()).sum()
    }

    pub fn pass(&self) -> bool {
        self.failure_count() == 0
    }
}

/// Applies `f` to every pair of element indices, exhaustively when the pair
/// count stays within the cap and by seeded sampling otherwise. Returns
/// (instances, sampled).
fn for_each_pair<E>(
    n: usize,
    cap: usize,
    samples: usize,
    seed: u64,
    mut f: impl FnMut(u32, u32) -> Result<(), E>,
) -> Result<(u64, bool), E> {
    let total = (n as u128) * (n as u128);
    if total <= cap as u128 {
        for g1 in 0..n as u32 {
            for g2 in 0..n as u32 {
                f(g1, g2)?;
            }
        }
        Ok((total as u64, false))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let g1 = rng.gen_range(0..n) as u32;
            let g2 = rng.gen_range(0..n) as u32;
            f(g1, g2)?;
        }
        Ok((samples as u64, true))
    }
}

fn for_each_triple<E>(
    n: usize,
    cap: usize,
    samples: usize,
    seed: u64,
    mut f: impl FnMut(u32, u32, u32) -> Result<(), E>,
) -> Result<(u64, bool), E> {
    let total = (n as u128).pow(3);
    if total <= cap as u128 {
        for g1 in 0..n as u32 {
            for g2 in 0..n as u32 {
                for g3 in 0..n as u32 {
                    f(g1, g2, g3)?;
                }
            }
        }
        Ok((total as u64, false))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let g1 = rng.gen_range(0..n) as u32;
            let g2 = rng.gen_range(0..n) as u32;
            let g3 = rng.gen_range(0..n) as u32;
            f(g1, g2, g3)?;
        }
        Ok((samples as u64, true))
    }
}

/// Flags every h_i = 0 instance over all pairs and all irreducibles of
/// their twisting subgroups; a negative or non-integral h_i is fatal.
pub fn scan_inequality(
    v: &Arc<Representation>,
) -> Result<Vec<TightWitness>, ObstructionError> {
    let engine = SectorEngine::new(v.clone())?;
    let opts = SuiteOptions::default();
    let mut tight = Vec::new();
    scan_inequality_with(&engine, &opts, &mut tight)?;
    Ok(tight)
}

fn scan_inequality_with(
    engine: &SectorEngine,
    opts: &SuiteOptions,
    tight: &mut Vec<TightWitness>,
) -> Result<(u64, bool), ObstructionError> {
    let n = engine.group().order();
    let mut instances = 0u64;
    let (pairs, sampled) =
        for_each_pair(n, opts.pair_cap, opts.samples, opts.seed, |g1, g2| {
            let sector = engine.decomposition(g1, g2)?;
            for contribution in &sector.per_irrep {
                instances += 1;
                if contribution.h == 0 {
                    tight.push(TightWitness { g1, g2, irrep: contribution.label.clone() });
                }
            }
            Ok::<(), ObstructionError>(())
        })?;
    let _ = pairs;
    Ok((instances, sampled))
}

/// Runs the selected checks and assembles the report.
pub fn run_suite(
    v: &Arc<Representation>,
    opts: &SuiteOptions,
) -> Result<VerificationReport, VerifyError> {
    if let Some(set) = &opts.checks {
        for name in set {
            if !ALL_CHECKS.contains(&name.as_str()) {
                return Err(VerifyError::UnknownCheck(name.clone()));
            }
        }
    }
    let started = Instant::now();
    let group = v.group().clone();
    let n = group.order();
    let engine = SectorEngine::new(v.clone())?;
    let wants = |name: &str| {
        opts.checks.as_ref().map(|set| set.contains(name)).unwrap_or(true)
    };

    let mut checks = Vec::new();
    let mut tight_cases = Vec::new();

    if wants("age-conjugation") {
        let mut failures = Vec::new();
        for g in 0..n as u32 {
            let fresh = age::eigen_multiplicities(v, g)?;
            let class = engine.age_record(g);
            if fresh.age != class.age || fresh.multiplicities != class.multiplicities {
                failures.push(format!("element {g} disagrees with its class representative"));
            }
        }
        checks.push(CheckRecord {
            name: "age-conjugation".into(),
            instances: n as u64,
            sampled: false,
            failures,
            note: None,
        });
    }

    if wants("age-additivity") {
        let doubled = Arc::new(v.direct_sum(v)?);
        let mut failures = Vec::new();
        for g in 0..n as u32 {
            let single = age::age(v, g)?;
            if age::age(&doubled, g)? != &single + &single {
                failures.push(format!("age of V+V at {g} is not twice the age of V"));
            }
        }
        checks.push(CheckRecord {
            name: "age-additivity".into(),
            instances: n as u64,
            sampled: false,
            failures,
            note: None,
        });
    }

    if wants("age-determinant") {
        let mut failures = Vec::new();
        let classes = group.conjugacy_classes();
        for c in classes {
            let g = c.representative;
            let record = engine.age_record(g);
            let d = age::determinant_exponent(v, g)?;
            let weighted: u64 = record
                .multiplicities
                .iter()
                .enumerate()
                .map(|(k, &m)| (k as u64 % record.order) * m as u64 % record.order)
                .fold(0, |acc, x| (acc + x) % record.order);
            if weighted != d % record.order {
                failures.push(format!(
                    "determinant relation fails at class of {g}: {weighted} vs {d}"
                ));
            }
        }
        checks.push(CheckRecord {
            name: "age-determinant".into(),
            instances: classes.len() as u64,
            sampled: false,
            failures,
            note: None,
        });
    }

    if wants("age-dual") {
        let dual = v.dual();
        let mut failures = Vec::new();
        for g in 0..n as u32 {
            let lhs = age::age(v, g)? + age::age(&dual, g)?;
            let rhs = rat(v.dim() as i64 - engine.dim_fixed_cyclic(g) as i64);
            if lhs != rhs {
                failures.push(format!("dual age identity fails at {g}: {lhs} vs {rhs}"));
            }
        }
        checks.push(CheckRecord {
            name: "age-dual".into(),
            instances: n as u64,
            sampled: false,
            failures,
            note: None,
        });
    }

    if wants("inequality") {
        let (instances, sampled) = scan_inequality_with(&engine, opts, &mut tight_cases)?;
        checks.push(CheckRecord {
            name: "inequality".into(),
            instances,
            sampled,
            // Violations abort with a witness before reaching here.
            failures: Vec::new(),
            note: Some("tight cases recorded separately".into()),
        });
    }

    if wants("eq1-consistency") {
        let mut failures = Vec::new();
        let (instances, sampled) =
            for_each_pair(n, opts.pair_cap, opts.samples, opts.seed, |g1, g2| {
                let sector = engine.decomposition(g1, g2)?;
                let total: usize = sector.per_irrep.iter().map(|c| c.h * c.t).sum();
                let scalar = engine.h_scalar(g1, g2)?;
                if rat(total as i64) != scalar {
                    failures.push(format!(
                        "sum h_i t_i = {total} but scalar formula gives {scalar} at ({g1}, {g2})"
                    ));
                }
                if scalar.is_negative() {
                    failures.push(format!("negative scalar multiplicity at ({g1}, {g2})"));
                }
                Ok::<(), ObstructionError>(())
            })?;
        checks.push(CheckRecord {
            name: "eq1-consistency".into(),
            instances,
            sampled,
            failures,
            note: None,
        });
    }

    if wants("symmetry") {
        let mut failures = Vec::new();
        let gens: Vec<u32> = group.generators().to_vec();
        let (instances, sampled) =
            for_each_pair(n, opts.pair_cap, opts.samples, opts.seed, |g1, g2| {
                let r = engine.decomposition(g1, g2)?.rank;
                if engine.decomposition(g2, g1)?.rank != r {
                    failures.push(format!("rank not symmetric at ({g1}, {g2})"));
                }
                for &x in &gens {
                    let c1 = group.mul(group.mul(x, g1), group.inv(x));
                    let c2 = group.mul(group.mul(x, g2), group.inv(x));
                    if engine.decomposition(c1, c2)?.rank != r {
                        failures.push(format!(
                            "rank not conjugation-invariant at ({g1}, {g2}) under {x}"
                        ));
                    }
                }
                Ok::<(), ObstructionError>(())
            })?;
        checks.push(CheckRecord {
            name: "symmetry".into(),
            instances,
            sampled,
            failures,
            note: None,
        });
    }

    if wants("associativity") {
        let mut failures = Vec::new();
        let (instances, sampled) =
            for_each_triple(n, opts.triple_cap, opts.samples, opts.seed, |g1, g2, g3| {
                let (lhs, rhs) = engine.associativity_sides(g1, g2, g3)?;
                if lhs != rhs {
                    failures.push(format!(
                        "associativity sums differ at ({g1}, {g2}, {g3}): {lhs} vs {rhs}"
                    ));
                }
                Ok::<(), ObstructionError>(())
            })?;
        checks.push(CheckRecord {
            name: "associativity".into(),
            instances,
            sampled,
            failures,
            note: None,
        });
    }

    let wants_kunneth = wants("kunneth-age") || wants("kunneth-rank");
    if wants_kunneth {
        // Kunneth against the group itself: V x V over G x G. Rank checks
        // need character tables of twisting subgroups inside the product,
        // which grow with |G|^2; above the cap only the age part runs.
        let skip_all = n * n > DEFAULT_CLOSURE_CAP;
        let skip_rank = n * n > SELF_PRODUCT_RANK_CAP;
        if skip_all {
            let note = Some(format!(
                "skipped: |G|^2 = {} exceeds the product cap {DEFAULT_CLOSURE_CAP}",
                n * n
            ));
            for name in ["kunneth-age", "kunneth-rank"] {
                if wants(name) {
                    checks.push(CheckRecord {
                        name: name.into(),
                        instances: 0,
                        sampled: false,
                        failures: Vec::new(),
                        note: note.clone(),
                    });
                }
            }
        } else {
            let checker = KunnethChecker::new(v.clone(), v.clone(), DEFAULT_CLOSURE_CAP)?;
            if wants("kunneth-age") {
                let mut failures = Vec::new();
                let sum_engine = checker.sum_engine();
                let product = checker.product();
                for idx in 0..product.group.order() as u32 {
                    let (a, b) = product.pair_of(idx);
                    let expect = age::age(v, a)? + age::age(v, b)?;
                    if sum_engine.age_of(idx) != &expect {
                        failures.push(format!("product age fails at pair ({a}, {b})"));
                    }
                }
                checks.push(CheckRecord {
                    name: "kunneth-age".into(),
                    instances: (n * n) as u64,
                    sampled: false,
                    failures,
                    note: None,
                });
            }
            if wants("kunneth-rank") {
                if skip_rank {
                    checks.push(CheckRecord {
                        name: "kunneth-rank".into(),
                        instances: 0,
                        sampled: false,
                        failures: Vec::new(),
                        note: Some(format!(
                            "skipped: self-product order {} exceeds the twisting-table \
                             cap {SELF_PRODUCT_RANK_CAP}",
                            n * n
                        )),
                    });
                } else {
                    let mut failures = Vec::new();
                    let (instances, sampled) = for_each_pair(
                        n * n,
                        opts.pair_cap,
                        opts.samples,
                        opts.seed,
                        |p1, p2| {
                            let first = checker.product().pair_of(p1);
                            let second = checker.product().pair_of(p2);
                            let chk = checker.rank_check(first, second)?;
                            if !chk.holds() {
                                failures.push(format!(
                                    "rank additivity fails at ({:?}, {:?}): {} vs {}",
                                    first, second, chk.lhs, chk.rhs
                                ));
                            }
                            Ok::<(), ObstructionError>(())
                        },
                    )?;
                    checks.push(CheckRecord {
                        name: "kunneth-rank".into(),
                        instances,
                        sampled,
                        failures,
                        note: None,
                    });
                }
            }
        }
    }

    if wants("chen-hu") {
        let mut failures = Vec::new();
        let mut abelian_pairs = 0u64;
        let (_, sampled) =
            for_each_pair(n, opts.pair_cap, opts.samples, opts.seed, |g1, g2| {
                match engine.chen_hu_rank(g1, g2) {
                    Ok(count) => {
                        abelian_pairs += 1;
                        let rank = engine.decomposition(g1, g2)?.rank;
                        if count != rank {
                            failures.push(format!(
                                "line criterion gives {count} but rank is {rank} at ({g1}, {g2})"
                            ));
                        }
                        Ok(())
                    }
                    Err(ObstructionError::NotAbelian { .. }) => Ok(()),
                    Err(e) => Err(e),
                }
            })?;
        checks.push(CheckRecord {
            name: "chen-hu".into(),
            instances: abelian_pairs,
            sampled,
            failures,
            note: Some("pairs with abelian twisting subgroup".into()),
        });
    }

    if wants("cotangent") {
        let mut failures = Vec::new();
        let (instances, sampled) =
            for_each_pair(n, opts.pair_cap, opts.samples, opts.seed, |g1, g2| {
                let chk = engine.cotangent_check(g1, g2)?;
                if chk.lhs != chk.rhs {
                    failures.push(format!(
                        "cotangent identity fails at ({g1}, {g2}): {} vs {}",
                        chk.lhs, chk.rhs
                    ));
                }
                Ok::<(), ObstructionError>(())
            })?;
        checks.push(CheckRecord {
            name: "cotangent".into(),
            instances,
            sampled,
            failures,
            note: None,
        });
    }

    if wants("ring") {
        let ring = build_cr_ring(v)?;
        let report = check_ring(&ring, opts.triple_cap, opts.samples, opts.seed);
        let mut failures = report.failures.clone();
        if !report.unit_ok {
            failures.push("unit check failed".into());
        }
        checks.push(CheckRecord {
            name: "ring".into(),
            instances: report.triples_checked,
            sampled: report.sampled,
            failures,
            note: report.degrees_even.map(|even| {
                if even {
                    "SL input: degrees all in 2Z".to_string()
                } else {
                    "SL input with odd degree".to_string()
                }
            }),
        });
    }

    Ok(VerificationReport {
        input: format!(
            "group of order {n}, representation {} (dim {})",
            v.label(),
            v.dim()
        ),
        checks,
        tight_cases,
        elapsed_ms: started.elapsed().as_millis(),
    })
}
