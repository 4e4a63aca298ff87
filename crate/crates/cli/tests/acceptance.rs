//! Acceptance gate: one test per criterion, each printing a pass/fail line.
//!
//! Reports are canonical strings; the determinism criterion re-runs every
//! earlier criterion and compares bytes. Golden values live under
//! `tests/golden/` and were frozen from the first certified oracle run;
//! later builds must reproduce them exactly.
//!
//! Run with `cargo test -p ach --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::fmt::Write as _;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ach_core::binom::binomial;
use ach_core::checks::{is_antichain, min_distance};
use ach_core::constructions::{best_translate_to_middle, hamming_code, Provenance};
use ach_core::family::SetFamily;
use ach_core::lemma::{adversarial_min_slack, lemma1_check, random_instance};
use ach_core::littlewood::{
    check_halasz_condition, level_set_family, rho_with_method, verify_reduction, RhoMethod,
    WeightVector,
};
use ach_core::ratio::{rat, rat_to_string, Rat};
use ach_core::search::{
    construction_lower_bound, max_antichain_code, verify_result, SearchBudget,
};
use ach_core::subset::Subset;

const GOLDEN_TABLE: &str = include_str!("golden/antichain_code_table.csv");
const GOLDEN_SCAN: &str = include_str!("golden/halasz_scan_r1.csv");

struct Outcome {
    pass: bool,
    detail: String,
    report: String,
    elapsed: Duration,
}

static CACHE: [OnceLock<Outcome>; 9] = [const { OnceLock::new() }; 9];

fn outcome(k: usize) -> &'static Outcome {
    CACHE[k - 1].get_or_init(|| run_criterion(k))
}

fn run_criterion(k: usize) -> Outcome {
    let start = Instant::now();
    let (pass, detail, report) = match k {
        1 => sperner_oracle(),
        2 => oracle_table(),
        3 => averaging_construction(),
        4 => rho_oracle_equivalence(),
        5 => erdos_bound_property(),
        6 => reduction_suite(),
        7 => halasz_scaling_scan(),
        8 => lemma_suite(),
        9 => inductive_chain(),
        _ => unreachable!(),
    };
    Outcome {
        pass,
        detail,
        report,
        elapsed: start.elapsed(),
    }
}

fn announce(k: usize, name: &str, limit: Option<Duration>) {
    let out = outcome(k);
    println!(
        "[{}] criterion {k} ({name}): {} in {:.2?}",
        if out.pass { "PASS" } else { "FAIL" },
        out.detail,
        out.elapsed
    );
    assert!(out.pass, "criterion {k} failed: {}", out.detail);
    if let Some(limit) = limit {
        assert!(
            out.elapsed < limit,
            "criterion {k} took {:.2?}, limit {:.2?}",
            out.elapsed,
            limit
        );
    }
}

// ---------------------------------------------------------------------------
// 1. Sperner oracle equivalence
// ---------------------------------------------------------------------------

fn sperner_oracle() -> (bool, String, String) {
    let expect = [1u32, 2, 3, 6, 10, 20, 35, 70];
    let mut report = String::new();
    let mut pass = true;
    for n in 1..=8u32 {
        let res = max_antichain_code(n, 1, &SearchBudget::unlimited()).expect("search runs");
        pass &= res.certified && res.best_size == expect[n as usize - 1] && verify_result(&res);
        writeln!(
            report,
            "n={n} best={} certified={} witness={}",
            res.best_size,
            res.certified,
            serde_json::to_string(&res.witness).unwrap()
        )
        .unwrap();
    }
    (pass, "certified sizes 1,2,3,6,10,20,35,70".into(), report)
}

// ---------------------------------------------------------------------------
// 2. Antichain-code oracle table against the golden file
// ---------------------------------------------------------------------------

fn oracle_table() -> (bool, String, String) {
    let mut csv = String::from(
        "# certified maximum antichain-code sizes with construction lower bounds\n\
         # columns: n,d,oracle,construction,equal\n\
         n,d,oracle,construction,equal\n",
    );
    let mut pass = true;
    for d in [3u32, 5] {
        for n in 1..=8u32 {
            let res = max_antichain_code(n, d, &SearchBudget::unlimited()).expect("search runs");
            pass &= res.certified && verify_result(&res);
            let cons = construction_lower_bound(n, d).expect("constructions run");
            pass &= cons <= res.best_size as u64;
            writeln!(
                csv,
                "{n},{d},{},{cons},{}",
                res.best_size,
                cons == res.best_size as u64
            )
            .unwrap();
        }
    }
    let matches = csv == GOLDEN_TABLE;
    (
        pass && matches,
        if matches {
            "all 16 cells reproduce the golden table".into()
        } else {
            "regenerated table drifted from the golden file".into()
        },
        csv,
    )
}

// ---------------------------------------------------------------------------
// 3. Averaging construction bound
// ---------------------------------------------------------------------------

fn averaging_construction() -> (bool, String, String) {
    let code = hamming_code(3).expect("hamming builds").family;
    let centered = best_translate_to_middle(&code).expect("translate runs");
    let Provenance::BestTranslate { count, exact, .. } = centered.provenance else {
        panic!("wrong provenance");
    };
    // ceil(16 * C(7,3) / 2^7) = ceil(16 * 35 / 128) = 5, and the weight
    // distribution puts seven codewords in the middle layer already.
    let averaging_floor = (16 * binomial(7, 3)).div_ceil(128) as u64;
    let anti = is_antichain(&centered.family);
    let dist = min_distance(&centered.family);
    let pass = exact
        && averaging_floor == 5
        && count >= averaging_floor
        && count >= 7
        && anti.is_antichain
        && dist.at_least(3)
        && centered.verify().is_ok();
    let report = format!(
        "count={count} exact={exact} antichain={} min_distance={} witness={}\n{}",
        anti.is_antichain,
        dist.render(),
        serde_json::to_string(&centered.translate_witness).unwrap(),
        centered.family.to_file_string()
    );
    (
        pass,
        format!("centered Hamming(7) count {count} >= 7 >= averaging floor 5"),
        report,
    )
}

// ---------------------------------------------------------------------------
// 4. rho oracle equivalence (direct vs meet-in-the-middle vs level sets)
// ---------------------------------------------------------------------------

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let p = loop {
        let v = (rng.next_u64() % 121) as i64 - 60;
        if v != 0 {
            break v;
        }
    };
    let q = (rng.next_u64() % 8) as i64 + 1;
    rat(p, q)
}

fn random_vector(rng: &mut ChaCha8Rng, n_max: u64) -> WeightVector {
    let n = (rng.next_u64() % (n_max - 1)) as usize + 2;
    WeightVector::new((0..n).map(|_| random_rat(rng)).collect()).unwrap()
}

/// Test-local scaling: weights times the lcm of denominators, in i128.
fn scale_for_test(a: &WeightVector) -> Vec<i128> {
    let denom = a
        .weights()
        .iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    a.weights()
        .iter()
        .map(|w| (w.numer() * (&denom / w.denom())).to_i128().unwrap())
        .collect()
}

/// Independent sweep: largest multiplicity among all 2^n subset sums.
fn max_level_by_sweep(a: &WeightVector) -> u64 {
    let w = scale_for_test(a);
    let mut sums: Vec<i128> = Vec::with_capacity(1 << w.len());
    sums.push(0);
    for &x in &w {
        for i in 0..sums.len() {
            sums.push(sums[i] + x);
        }
    }
    sums.sort_unstable();
    let mut best = 1u64;
    let mut run = 1u64;
    for i in 1..sums.len() {
        if sums[i] == sums[i - 1] {
            run += 1;
            best = best.max(run);
        } else {
            run = 1;
        }
    }
    best
}

fn rho_oracle_equivalence() -> (bool, String, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    let vectors: Vec<WeightVector> = (0..200).map(|_| random_vector(&mut rng, 20)).collect();
    let results: Vec<(bool, String)> = vectors
        .par_iter()
        .map(|a| {
            let direct = rho_with_method(a, RhoMethod::Direct).expect("direct runs");
            let mim = rho_with_method(a, RhoMethod::MeetInMiddle).expect("mim runs");
            let witness_level = level_set_family(a, &direct.witness_alpha).expect("level set");
            let sweep = max_level_by_sweep(a);
            let ok = direct.rho == mim.rho
                && direct.witness_alpha == mim.witness_alpha
                && direct.level_count == mim.level_count
                && witness_level.len() as u64 == direct.level_count
                && sweep == direct.level_count;
            (
                ok,
                format!(
                    "n={} rho={} alpha={}",
                    a.len(),
                    rat_to_string(&direct.rho),
                    rat_to_string(&direct.witness_alpha)
                ),
            )
        })
        .collect();
    let pass = results.iter().all(|(ok, _)| *ok);
    let report = results
        .iter()
        .map(|(_, line)| line.as_str())
        .collect::<Vec<_>>()
        .join("\n");
    (
        pass,
        "200 vectors: direct = meet-in-middle = level-set sweep".into(),
        report,
    )
}

// ---------------------------------------------------------------------------
// 5. Erdos bound property
// ---------------------------------------------------------------------------

fn erdos_bound_property() -> (bool, String, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);
    let vectors: Vec<WeightVector> = (0..500).map(|_| random_vector(&mut rng, 20)).collect();
    let results: Vec<(bool, String)> = vectors
        .par_iter()
        .map(|a| {
            let n = a.len() as u64;
            let rep = rho_with_method(a, RhoMethod::MeetInMiddle).expect("rho runs");
            let bound = rat(
                BigInt::from(binomial(n, n / 2)),
                BigInt::from(1u8) << (n as u32),
            );
            (
                rep.rho <= bound,
                format!("n={n} rho={}", rat_to_string(&rep.rho)),
            )
        })
        .collect();
    let violations = results.iter().filter(|(ok, _)| !ok).count();
    let report = results
        .iter()
        .map(|(_, line)| line.as_str())
        .collect::<Vec<_>>()
        .join("\n");
    (
        violations == 0,
        format!("500 vectors, {violations} violations of the middle-binomial bound"),
        report,
    )
}

// ---------------------------------------------------------------------------
// 6. Reduction suite
// ---------------------------------------------------------------------------

/// Positive integer weights passing the collision condition at r, by seeded
/// retry. Deterministic for a fixed seed.
fn condition_vector(rng: &mut ChaCha8Rng, n: usize, r: u32, bound: u64) -> WeightVector {
    for _ in 0..500 {
        let cand = WeightVector::new(
            (0..n)
                .map(|_| Rat::from_integer(((rng.next_u64() % bound) as i64 + 1).into()))
                .collect(),
        )
        .unwrap();
        if check_halasz_condition(&cand, r).expect("order within cap").holds {
            return cand;
        }
    }
    panic!("no condition-passing vector found in 500 draws");
}

/// Groups all 2^n masks by their exact subset sum.
fn level_groups(a: &WeightVector) -> Vec<Vec<u64>> {
    let w = scale_for_test(a);
    let mut pairs: Vec<(i128, u64)> = Vec::with_capacity(1 << w.len());
    for mask in 0..(1u64 << w.len()) {
        let mut s = 0i128;
        let mut bits = mask;
        while bits != 0 {
            let b = bits.trailing_zeros();
            s += w[b as usize];
            bits &= bits - 1;
        }
        pairs.push((s, mask));
    }
    pairs.sort_unstable();
    let mut groups: Vec<Vec<u64>> = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let mut j = i;
        let mut group = Vec::new();
        while j < pairs.len() && pairs[j].0 == pairs[i].0 {
            group.push(pairs[j].1);
            j += 1;
        }
        groups.push(group);
        i = j;
    }
    groups
}

fn reduction_suite() -> (bool, String, String) {
    let mut jobs: Vec<(WeightVector, u32)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC6);
    for i in 0..100usize {
        let n = 6 + (i % 7); // 6..=12
        jobs.push((condition_vector(&mut rng, n, 1, 4 * (n as u64) * (n as u64)), 1));
    }
    for i in 0..50usize {
        let n = 8 + (i % 5); // 8..=12
        jobs.push((condition_vector(&mut rng, n, 2, 10_000), 2));
    }
    let results: Vec<(bool, String)> = jobs
        .par_iter()
        .map(|(a, r)| {
            let required = 2 * r + 1;
            let groups = level_groups(a);
            let total: usize = groups.iter().map(|g| g.len()).sum();
            let mut ok = total == 1 << a.len();
            let mut max_group = 0usize;
            for group in &groups {
                max_group = max_group.max(group.len());
                let fam = SetFamily::from_masks(a.len() as u32, group).unwrap();
                let anti = is_antichain(&fam);
                let dist = min_distance(&fam);
                ok &= anti.is_antichain && dist.at_least(required);
            }
            // Exercise the library path end to end on a sample of sums,
            // including the largest level set.
            for group in groups.iter().step_by(groups.len().div_ceil(8).max(1)) {
                let alpha = a.subset_sum(Subset::from_mask(group[0]));
                let fam = level_set_family(a, &alpha).unwrap();
                ok &= fam.len() == group.len();
                let rep = verify_reduction(a, *r, &alpha).expect("preconditions hold");
                ok &= rep.holds;
            }
            (
                ok,
                format!("n={} r={r} levels={} max_level={max_group}", a.len(), groups.len()),
            )
        })
        .collect();
    let failures = results.iter().filter(|(ok, _)| !ok).count();
    let report = results
        .iter()
        .map(|(_, l)| l.as_str())
        .collect::<Vec<_>>()
        .join("\n");
    (
        failures == 0,
        format!("150 vectors (100 at r=1, 50 at r=2), {failures} failures"),
        report,
    )
}

// ---------------------------------------------------------------------------
// 7. Halasz scaling scan against the golden column
// ---------------------------------------------------------------------------

fn halasz_scaling_scan() -> (bool, String, String) {
    let constant = rat(133, 100);
    let mut csv = String::from(
        "# exact rho for the weight vector (1, 2, ..., n) with the normalized ratio\n\
         # rho * n^(3/2); the ratio column must never exceed the frozen constant.\n\
         # constant=133/100\n\
         # columns: n,rho,ratio,ratio_decimal\n\
         n,rho,ratio,ratio_decimal\n",
    );
    let rows: Vec<(u32, Rat)> = (8..=28u32)
        .into_par_iter()
        .map(|n| {
            let weights = WeightVector::new(
                (1..=n as i64).map(|v| Rat::from_integer(v.into())).collect(),
            )
            .unwrap();
            let rep = rho_with_method(&weights, RhoMethod::MeetInMiddle).expect("rho runs");
            (n, rep.rho)
        })
        .collect();
    let mut bounded = true;
    for (n, rho) in &rows {
        let ratio = rho * Rat::from_integer(BigInt::from(*n));
        // ratio * sqrt(n) <= constant, squared to stay in rationals:
        // ratio^2 * n <= constant^2.
        bounded &= &ratio * &ratio * Rat::from_integer(BigInt::from(*n)) <= &constant * &constant;
        let decimal = ratio.to_f64().unwrap() * (*n as f64).sqrt();
        writeln!(
            csv,
            "{n},{},{},{decimal:.6}",
            rat_to_string(rho),
            rat_to_string(&ratio)
        )
        .unwrap();
    }
    let matches = csv == GOLDEN_SCAN;
    (
        bounded && matches,
        if matches {
            "21 exact rho values reproduce the golden column, ratios below 133/100".into()
        } else {
            "scan column drifted from the golden file".into()
        },
        csv,
    )
}

// ---------------------------------------------------------------------------
// 8. Shadow-expansion inequality suite
// ---------------------------------------------------------------------------

fn lemma_suite() -> (bool, String, String) {
    let tuples = [(12u32, 9u32, 1u32), (14, 10, 1), (16, 11, 1), (16, 12, 1)];
    let densities = [rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)];
    let mut jobs = Vec::new();
    for (ti, &(n, k, r)) in tuples.iter().enumerate() {
        for (di, density) in densities.iter().enumerate() {
            for trial in 0..50u64 {
                let seed = (ti as u64) * 1_000_000 + (di as u64) * 1_000 + trial;
                jobs.push((n, k, r, density.clone(), seed));
            }
        }
    }
    assert_eq!(jobs.len(), 1000);
    let results: Vec<(bool, Rat)> = jobs
        .par_iter()
        .map(|(n, k, r, density, seed)| {
            let inst = random_instance(*n, *k, *r, density, *seed).expect("generator succeeds");
            let rep = lemma1_check(&inst);
            (rep.holds && !rep.slack.is_negative(), rep.slack)
        })
        .collect();
    let negatives = results.iter().filter(|(ok, _)| !ok).count();
    let min_slack = results
        .iter()
        .map(|(_, s)| s)
        .min()
        .expect("non-empty")
        .clone();

    let adversarial = adversarial_min_slack(12, 9, 1, 10_000, 0x8).expect("search runs");
    let adv_ok = adversarial.report.holds && !adversarial.report.slack.is_negative();

    let report = format!(
        "instances=1000 negatives={negatives} min_slack={}\nadversarial moves=10000 accepted={} slack={}",
        rat_to_string(&min_slack),
        adversarial.moves_accepted,
        rat_to_string(&adversarial.report.slack)
    );
    (
        negatives == 0 && adv_ok,
        format!(
            "1000 instances and a 10^4-move adversary, min slack {}",
            rat_to_string(&min_slack)
        ),
        report,
    )
}

// ---------------------------------------------------------------------------
// 9. Inductive chain over the witnesses of criteria 2 and 3
// ---------------------------------------------------------------------------

fn inductive_chain() -> (bool, String, String) {
    let mut families: Vec<(String, SetFamily, u32)> = Vec::new();
    for d in [3u32, 5] {
        let r = (d - 1) / 2;
        for n in 1..=8u32 {
            let res = max_antichain_code(n, d, &SearchBudget::unlimited()).expect("search runs");
            families.push((format!("oracle witness n={n} d={d}"), res.witness, r));
        }
    }
    let centered = best_translate_to_middle(&hamming_code(3).unwrap().family)
        .unwrap()
        .family;
    families.push(("centered Hamming(7)".into(), centered, 1));

    let mut pass = true;
    let mut report = String::new();
    for (label, family, r) in &families {
        let rep = ach_core::lemma::inductive_chain_check(family, *r).expect("preconditions hold");
        // Every window here is empty (the row range needs n >= 12r + 12r...
        // in particular n >= 12 at r = 1); the report must say so rather
        // than silently passing.
        pass &= rep.all_hold;
        if rep.window_empty {
            pass &= !rep.window_note.is_empty() && rep.rows.is_empty();
        } else {
            pass &= rep.rows.iter().all(|row| row.holds);
        }
        writeln!(
            report,
            "{label}: rows={} window_empty={} note=\"{}\"",
            rep.rows.len(),
            rep.window_empty,
            rep.window_note
        )
        .unwrap();
    }
    (
        pass,
        format!("{} witness families, all applicable rows hold", families.len()),
        report,
    )
}

// ---------------------------------------------------------------------------
// The ten gates
// ---------------------------------------------------------------------------

#[test]
fn criterion_01_sperner_oracle() {
    announce(1, "Sperner oracle equivalence", Some(Duration::from_secs(60)));
}

#[test]
fn criterion_02_antichain_code_oracle_table() {
    announce(2, "antichain-code oracle table", None);
}

#[test]
fn criterion_03_averaging_construction() {
    announce(3, "averaging construction bound", Some(Duration::from_secs(1)));
}

#[test]
fn criterion_04_rho_oracle_equivalence() {
    announce(4, "rho oracle equivalence", Some(Duration::from_secs(120)));
}

#[test]
fn criterion_05_erdos_bound() {
    announce(5, "Erdos bound property", None);
}

#[test]
fn criterion_06_reduction_suite() {
    announce(6, "reduction suite", None);
}

#[test]
fn criterion_07_halasz_scaling_scan() {
    announce(7, "Halasz scaling scan", Some(Duration::from_secs(300)));
}

#[test]
fn criterion_08_lemma_suite() {
    announce(8, "shadow-expansion suite", Some(Duration::from_secs(600)));
}

#[test]
fn criterion_09_inductive_chain() {
    announce(9, "inductive chain", None);
}

#[test]
fn criterion_10_determinism() {
    let mut pass = true;
    for k in 1..=9usize {
        let first = outcome(k);
        let again = run_criterion(k);
        let same = first.report == again.report;
        pass &= same && again.pass;
        if !same {
            eprintln!("criterion {k}: report bytes differ between runs");
        }
    }
    println!(
        "[{}] criterion 10 (determinism): criteria 1-9 re-run byte-identically",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion 10 failed");
}
