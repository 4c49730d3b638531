//! Acceptance suite: every release gate, one pass/fail line per criterion.
//!
//! All arithmetic is exact, so tolerance is equality throughout; the only
//! thresholds are the stated runtime budgets. Run with `--nocapture` to see
//! the per-criterion lines as they pass.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stringy::age;
use stringy::arith::{rat, rat_frac};
use stringy::cli::catalog;
use stringy::crring::{build_cr_ring, check_ring, kunneth_ring_compare};
use stringy::group::{FiniteGroup, Permutation, DEFAULT_CLOSURE_CAP};
use stringy::obstruction::{KunnethChecker, SectorEngine};
use stringy::reptheory::{character_table_with, Representation, TableMethod};
use stringy::verify::{run_suite, SuiteOptions};

fn report(criterion: u32, description: &str, pass: bool) {
    println!(
        "criterion {criterion:2}: {} - {description}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {description}");
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut argv: Vec<String> = vec!["stringy".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut buffer = Vec::new();
    let code = stringy::cli::run(&argv, &mut buffer);
    (code, String::from_utf8(buffer).expect("utf-8 CLI output"))
}

#[test]
fn criterion_01_quaternion_worked_example() {
    let started = Instant::now();
    let entry = catalog::entry("Q8").unwrap();
    let q = entry.rep("Q").unwrap().clone();
    let g = entry.group.generators()[0];
    let h = entry.group.generators()[1];
    let engine = SectorEngine::new(q).unwrap();
    let sector = engine.decomposition(g, h).unwrap();
    let hs: Vec<usize> = sector.per_irrep.iter().map(|c| c.h).collect();
    let degrees: Vec<usize> = sector.per_irrep.iter().map(|c| c.degree).collect();

    let (code, text) = run_cli(&["obstruction", "--catalog", "Q8", "--rep", "Q", "--pair", "g,h"]);
    let elapsed = started.elapsed();

    let pass = hs == vec![0, 0, 0, 0, 1]
        && degrees == vec![1, 1, 1, 1, 2]
        && sector.rank == 1
        && code == 0
        && text.contains("E = 1 \u{b7} Hom(Q, V)")
        && text.contains("rank 1")
        && elapsed < Duration::from_secs(1);
    report(
        1,
        &format!(
            "Q8 sector (g,h): h = (0,0,0,0,1), rank 1, E = 1*Hom(Q, V), in {elapsed:?}"
        ),
        pass,
    );
}

#[test]
fn criterion_02_quaternion_age_table() {
    let entry = catalog::entry("Q8").unwrap();
    let group = &entry.group;
    let g = group.generators()[0];
    let h = group.generators()[1];
    let gh = group.mul(g, h);
    let rep_g = entry.rep("G").unwrap();
    let rep_gh = entry.rep("GH").unwrap();
    let rep_q = entry.rep("Q").unwrap();
    let half = rat_frac(1, 2);

    let mut pass = true;
    pass &= age::age(rep_g, g).unwrap() == half;
    pass &= age::age(rep_g, h).unwrap() == rat(0);
    pass &= age::age(rep_g, gh).unwrap() == half;
    pass &= age::age(rep_gh, g).unwrap() == half;
    pass &= age::age(rep_gh, h).unwrap() == half;
    pass &= age::age(rep_gh, gh).unwrap() == rat(0);
    pass &= rep_gh.dim_fixed(&[gh]).unwrap() == 1;
    pass &= age::age(rep_q, g).unwrap() == rat(1);
    pass &= age::age(rep_q, h).unwrap() == rat(1);
    pass &= age::age(rep_q, gh).unwrap() == rat(1);
    pass &= rep_q.dim_fixed(&[g, h]).unwrap() == 0;
    pass &= rep_q.dim_fixed(&[gh]).unwrap() == 0;
    report(2, "Q8 age table reproduces every displayed term exactly", pass);
}

#[test]
fn criterion_03_inequality_suite() {
    let started = Instant::now();
    let opts = SuiteOptions {
        checks: Some(["inequality".to_string()].into()),
        ..SuiteOptions::default()
    };

    let mut pass = true;
    let mut instances = 0u64;
    for entry in catalog::entries() {
        for (name, rep) in &entry.reps {
            let suite = run_suite(rep, &opts).unwrap();
            instances += suite.checks[0].instances;
            if !suite.pass() {
                eprintln!("inequality failures on {} / {name}", entry.name);
                pass = false;
            }
        }
    }

    // 25 seeded random subgroups of S6 with their permutation
    // representations.
    let mut rng = ChaCha8Rng::seed_from_u64(0xa6e5eed);
    for _ in 0..25 {
        let gen_count = rng.gen_range(1..=3);
        let gens: Vec<Permutation> = (0..gen_count)
            .map(|_| {
                let mut images: Vec<u32> = (0..6).collect();
                for k in (1..6usize).rev() {
                    images.swap(k, rng.gen_range(0..=k));
                }
                Permutation::from_images(images).unwrap()
            })
            .collect();
        let group = FiniteGroup::from_permutations(gens, DEFAULT_CLOSURE_CAP).unwrap();
        let rep = Arc::new(Representation::permutation_natural(group.clone()).unwrap());
        let suite = run_suite(&rep, &opts).unwrap();
        instances += suite.checks[0].instances;
        if !suite.pass() {
            eprintln!("inequality failures on random subgroup of order {}", group.order());
            pass = false;
        }
    }
    let elapsed = started.elapsed();
    pass &= elapsed < Duration::from_secs(60);
    report(
        3,
        &format!(
            "zero h_i violations over {instances} instances (catalog + 25 random \
             subgroups of S6) in {elapsed:?}"
        ),
        pass,
    );
}

#[test]
fn criterion_04_associativity_identity() {
    let started = Instant::now();
    let mut pass = true;
    let mut triples = 0u64;
    for entry in catalog::entries() {
        for (name, rep) in &entry.reps {
            let engine = SectorEngine::new(rep.clone()).unwrap();
            let n = entry.group.order() as u32;
            for g1 in 0..n {
                for g2 in 0..n {
                    for g3 in 0..n {
                        let (lhs, rhs) = engine.associativity_sides(g1, g2, g3).unwrap();
                        triples += 1;
                        if lhs != rhs {
                            eprintln!(
                                "associativity fails on {}/{name} at ({g1},{g2},{g3})",
                                entry.name
                            );
                            pass = false;
                        }
                    }
                }
            }
        }
    }
    let elapsed = started.elapsed();
    pass &= elapsed < Duration::from_secs(60);
    report(
        4,
        &format!(
            "both associativity sums agree on all {triples} triples across the catalog \
             in {elapsed:?}"
        ),
        pass,
    );
}

#[test]
fn criterion_05_kunneth() {
    let mut pass = true;

    // Rank additivity over every 2-sector of Q8 x C3.
    let q8 = catalog::entry("Q8").unwrap();
    let c3 = catalog::entry("C3").unwrap();
    let checker = KunnethChecker::new(
        q8.rep("Q").unwrap().clone(),
        c3.rep("zeta").unwrap().clone(),
        DEFAULT_CLOSURE_CAP,
    )
    .unwrap();
    let order = checker.product().group.order() as u32;
    assert_eq!(order, 24);
    for x in 0..order {
        for y in 0..order {
            let chk = checker
                .rank_check(checker.product().pair_of(x), checker.product().pair_of(y))
                .unwrap();
            if !chk.holds() {
                pass = false;
            }
        }
    }

    // Rank additivity over every 2-sector of C2 x C2.
    let c2 = catalog::entry("C2").unwrap();
    let checker = KunnethChecker::new(
        c2.rep("sign").unwrap().clone(),
        c2.rep("sign").unwrap().clone(),
        DEFAULT_CLOSURE_CAP,
    )
    .unwrap();
    for x in 0..4u32 {
        for y in 0..4u32 {
            let chk = checker
                .rank_check(checker.product().pair_of(x), checker.product().pair_of(y))
                .unwrap();
            if !chk.holds() {
                pass = false;
            }
        }
    }

    // Ring-level comparison for (C2 SL) x (C3 SL).
    let c2_sl = catalog::entry("C2-SL").unwrap();
    let c3_sl = catalog::entry("C3-SL").unwrap();
    let ring = kunneth_ring_compare(c2_sl.default_rep(), c3_sl.default_rep()).unwrap();
    pass &= ring.pass();
    let degrees: Vec<String> =
        ring.degree_multiset.iter().map(|d| d.to_string()).collect();
    pass &= degrees == vec!["0", "2", "2", "2", "4", "4"];

    report(
        5,
        "rank additivity on all Q8xC3 and C2xC2 sectors; ring comparison for \
         (C2 SL)x(C3 SL) with degrees {0,2,2,2,4,4}",
        pass,
    );
}

#[test]
fn criterion_06_chen_hu_criterion() {
    let mut pass = true;
    let mut checked = 0u64;
    for entry in catalog::entries() {
        for (name, rep) in &entry.reps {
            let engine = SectorEngine::new(rep.clone()).unwrap();
            let n = entry.group.order() as u32;
            for g1 in 0..n {
                for g2 in 0..n {
                    match engine.chen_hu_rank(g1, g2) {
                        Ok(count) => {
                            checked += 1;
                            let rank = engine.decomposition(g1, g2).unwrap().rank;
                            if count != rank {
                                eprintln!(
                                    "chen-hu mismatch on {}/{name} at ({g1},{g2}): \
                                     {count} vs {rank}",
                                    entry.name
                                );
                                pass = false;
                            }
                        }
                        Err(stringy::obstruction::ObstructionError::NotAbelian { .. }) => {}
                        Err(e) => panic!("unexpected error: {e}"),
                    }
                }
            }
        }
    }
    report(
        6,
        &format!("line-criterion count equals the rank on all {checked} abelian-twisting pairs"),
        pass,
    );
}

#[test]
fn criterion_07_cotangent_identity() {
    let mut pass = true;
    let mut checked = 0u64;
    for entry in catalog::entries() {
        for (name, rep) in &entry.reps {
            let engine = SectorEngine::new(rep.clone()).unwrap();
            let n = entry.group.order() as u32;
            for g1 in 0..n {
                for g2 in 0..n {
                    let chk = engine.cotangent_check(g1, g2).unwrap();
                    checked += 1;
                    if chk.lhs != chk.rhs {
                        eprintln!(
                            "cotangent mismatch on {}/{name} at ({g1},{g2})",
                            entry.name
                        );
                        pass = false;
                    }
                }
            }
        }
    }
    report(7, &format!("cotangent identity lhs = rhs on all {checked} pairs"), pass);
}

#[test]
fn criterion_08_dixon_character_tables() {
    let mut pass = true;
    for entry in catalog::entries() {
        match character_table_with(&entry.group, TableMethod::Dixon) {
            Ok(table) => {
                // Orthogonality is verified inside construction; re-assert.
                if table.verify_orthogonality().is_err() {
                    eprintln!("orthogonality fails for {}", entry.name);
                    pass = false;
                }
                if entry.name == "Q8" && table.dims() != [1, 1, 1, 1, 2] {
                    eprintln!("Q8 degrees are {:?}", table.dims());
                    pass = false;
                }
            }
            Err(e) => {
                eprintln!("Dixon fails for {}: {e}", entry.name);
                pass = false;
            }
        }
    }
    report(
        8,
        "Dixon tables satisfy exact row/column orthogonality; Q8 degrees (1,1,1,1,2)",
        pass,
    );
}

#[test]
fn criterion_09_ring_checks() {
    let mut pass = true;
    for entry in catalog::entries() {
        for (name, rep) in &entry.reps {
            let ring = build_cr_ring(rep).unwrap();
            let rep_report = check_ring(&ring, 1_000_000, 10_000, 0);
            if !rep_report.pass() {
                eprintln!("ring checks fail on {}/{name}: {:?}", entry.name, rep_report.failures);
                pass = false;
            }
            if ring.is_sl() && rep_report.degrees_even != Some(true) {
                eprintln!("SL entry {}/{name} has a degree outside 2Z", entry.name);
                pass = false;
            }
        }
    }
    report(
        9,
        "build_cr_ring passes associativity/unitality/grading everywhere; SL degrees in 2Z",
        pass,
    );
}

#[test]
fn criterion_10_determinism() {
    let args = ["verify", "--catalog", "Q8", "--rep", "Q", "--format", "json"];
    let (code_a, out_a) = run_cli(&args);
    let (code_b, out_b) = run_cli(&args);
    let data = |text: &str| -> String {
        let value: serde_json::Value = serde_json::from_str(text).expect("valid JSON envelope");
        serde_json::to_string_pretty(&value["data"]).expect("data serialization")
    };
    let (data_a, data_b) = (data(&out_a), data(&out_b));
    let pass = code_a == 0 && code_b == 0 && data_a == data_b && data_a.as_bytes() == data_b.as_bytes();
    report(10, "two verify runs produce byte-identical JSON data sections", pass);
}
