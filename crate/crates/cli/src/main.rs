//! `ach`: exact computations on antichain codes in the hypercube.
//!
//! Families travel in a plain text format (`n=<int>` then one lowercase hex
//! mask per line, strictly increasing); reports are JSON or CSV with a
//! header carrying the version, parameters, and seed, so identical
//! invocations produce identical bytes. Exit codes: 0 success, 1 a checked
//! property failed (scientifically interesting), 2 usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ach_core::checks::{check_local_lym, is_antichain, min_distance};
use ach_core::constructions::{
    best_translate_sampled, best_translate_to_middle, greedy_code, hamming_code, middle_layer,
    ConstructionResult, DEFAULT_TRANSLATE_SAMPLES,
};
use ach_core::family::SetFamily;
use ach_core::lemma::{
    adversarial_min_slack, inductive_chain_check, lemma1_check, random_instance, LemmaInstance,
};
use ach_core::littlewood::{
    check_halasz_condition, halasz_ratio_scan, level_set_family, rho, rho_with_method,
    verify_reduction, GeneratorSpec, RhoMethod, WeightVector,
};
use ach_core::ratio::parse_rat;
use ach_core::search::{max_antichain_code, theorem1_ratio_table, SearchBudget, TableMode};

const VERSION: &str = env!("CARGO_PKG_VERSION");
const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(
    name = "ach",
    version,
    about = "Exact workbench for antichain codes: shadows, constructions, certified search, anticoncentration"
)]
struct Cli {
    /// Worker threads (overrides ACH_THREADS; default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Report format for JSON-producing commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// r-fold lower shadow of a family file.
    Shadow(ShadowArgs),
    /// r-fold upper shadow of a family file.
    Upshadow(ShadowArgs),
    /// Antichain / distance / local-LYM checks on a family file.
    Check(CheckArgs),
    /// Build extremal families (middle layer, Hamming, greedy, centered).
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Certified maximum antichain-code search.
    Search(SearchArgs),
    /// Normalized-size table over a range of ground sets.
    Table(TableArgs),
    /// Exact maximum level-set mass, or the level set at a given alpha.
    Rho(RhoArgs),
    /// Small-sum collision condition check.
    Halasz(HalaszArgs),
    /// Verify that a level set is an antichain distance-(2r+1) code.
    Reduce(ReduceArgs),
    /// Normalized rho scan over generated weight vectors.
    Scan(ScanArgs),
    /// Shadow-expansion inequality lab.
    #[command(subcommand)]
    Lemma(LemmaCmd),
}

#[derive(Args)]
struct ShadowArgs {
    /// Family file.
    #[arg(long)]
    input: PathBuf,
    /// Fold count.
    #[arg(long)]
    r: u32,
    /// Output family file (stdout when absent).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    input: PathBuf,
    /// Check that no member strictly contains another.
    #[arg(long)]
    antichain: bool,
    /// Report the minimum pairwise Hamming distance.
    #[arg(long)]
    distance: bool,
    /// Check min distance >= D.
    #[arg(long, value_name = "D")]
    code: Option<u32>,
    /// Check the local-LYM inequality for a family inside layer K.
    #[arg(long, value_name = "K")]
    local_lym: Option<u32>,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// The middle layer: a maximum antichain.
    Middle {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        output: PathBuf,
    },
    /// The binary Hamming code of length 2^m - 1 (distance exactly 3).
    Hamming {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        output: PathBuf,
    },
    /// Greedy distance-d code over masks in numeric order.
    Greedy {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        output: PathBuf,
    },
    /// Best translate of a family intersected with the middle layer.
    Center {
        /// Source family file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Force sampled mode with this many random translates.
        #[arg(long)]
        samples: Option<u64>,
        /// Seed for sampled mode.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: u32,
    /// Node budget; unlimited when absent.
    #[arg(long)]
    budget: Option<u64>,
    /// Fail (exit 2) unless the search space was exhausted.
    #[arg(long)]
    require_certified: bool,
    /// Extra seeded restarts with shuffled vertex orders.
    #[arg(long, default_value_t = 0)]
    restarts: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n_min: u32,
    #[arg(long)]
    n_max: u32,
    /// certified: exhaustive oracle; construct: construction lower bounds.
    #[arg(long, value_enum)]
    mode: TableModeArg,
    #[arg(long)]
    budget: Option<u64>,
    /// CSV output path (stdout when absent).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableModeArg {
    Certified,
    Construct,
}

#[derive(Args)]
struct RhoArgs {
    /// Comma-separated exact weights: integers, fractions, or decimals.
    #[arg(long)]
    weights: String,
    /// Emit the level set at this sum instead of the maximum mass.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Output family file for --alpha (stdout when absent).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Direct,
    Mim,
}

#[derive(Args)]
struct HalaszArgs {
    #[arg(long)]
    weights: String,
    #[arg(long)]
    r: u32,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    weights: String,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    alpha: String,
}

#[derive(Args)]
struct ScanArgs {
    /// `distinct` (the vector 1..n) or `random-int:BOUND`.
    #[arg(long)]
    gen: String,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n_min: u32,
    #[arg(long)]
    n_max: u32,
    #[arg(long, default_value_t = 1)]
    trials: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// CSV output path (stdout when absent).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum LemmaCmd {
    /// Evaluate the inequality on a serialized instance.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Seeded random instances; exit 1 if any slack is negative.
    Random {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
        /// S density inside layer k, as an exact rational in [0, 1].
        #[arg(long)]
        density: String,
        #[arg(long, default_value_t = 1)]
        trials: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Local search minimizing slack; a negative result is serialized and
    /// exits 1.
    Adversarial {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
        /// Number of toggle moves.
        #[arg(long)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Where to serialize a falsifying instance, should one appear.
        #[arg(long, default_value = "lemma-counterexample.json")]
        counterexample: PathBuf,
    },
    /// Layer-chain inequalities for an antichain code family.
    Chain {
        /// Family file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        r: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads(cli.threads);
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn init_threads(flag: Option<usize>) {
    let from_env = std::env::var("ACH_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    if let Some(threads) = flag.or(from_env) {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global();
    }
}

/// JSON envelope shared by every report: version, command, parameters, and
/// the seed when the command is randomized.
fn envelope(command: &str, params: Value, seed: Option<u64>, report: Value) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("version".into(), json!(VERSION));
    map.insert("command".into(), json!(command));
    map.insert("params".into(), params);
    if let Some(s) = seed {
        map.insert("seed".into(), json!(s));
    }
    map.insert("report".into(), report);
    Value::Object(map)
}

fn emit_report(format: Format, envelope: &Value, text: &str) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(envelope).expect("report serialization")
        ),
        Format::Text => println!("{text}"),
    }
}

fn csv_header(command: &str, params: &[(&str, String)], seed: Option<u64>) -> String {
    let mut out = String::new();
    out.push_str(&format!("# version={VERSION}\n# command={command}\n"));
    for (k, v) in params {
        out.push_str(&format!("# {k}={v}\n"));
    }
    if let Some(s) = seed {
        out.push_str(&format!("# seed={s}\n"));
    }
    out
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn read_family(path: &Path) -> Result<SetFamily> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    SetFamily::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.cmd {
        Cmd::Shadow(args) => run_shadow(args, false),
        Cmd::Upshadow(args) => run_shadow(args, true),
        Cmd::Check(args) => run_check(cli.format, args),
        Cmd::Construct(sub) => run_construct(sub),
        Cmd::Search(args) => run_search(cli.format, args),
        Cmd::Table(args) => run_table(args),
        Cmd::Rho(args) => run_rho(cli.format, args),
        Cmd::Halasz(args) => run_halasz(cli.format, args),
        Cmd::Reduce(args) => run_reduce(cli.format, args),
        Cmd::Scan(args) => run_scan(args),
        Cmd::Lemma(sub) => run_lemma(cli.format, sub),
    }
}

fn run_shadow(args: &ShadowArgs, upper: bool) -> Result<u8> {
    let family = read_family(&args.input)?;
    let result = if upper {
        ach_core::shadow::upper_shadow(&family, args.r)
    } else {
        ach_core::shadow::shadow(&family, args.r)
    };
    write_or_print(&args.output, &result.to_file_string())?;
    Ok(0)
}

fn run_check(format: Format, args: &CheckArgs) -> Result<u8> {
    let family = read_family(&args.input)?;
    // Default: antichain plus distance report.
    let default = !args.antichain && !args.distance && args.code.is_none() && args.local_lym.is_none();
    let mut report = serde_json::Map::new();
    let mut text = Vec::new();
    let mut failed = false;

    report.insert("n".into(), json!(family.n()));
    report.insert("size".into(), json!(family.len()));

    if args.antichain || default {
        let rep = is_antichain(&family);
        failed |= !rep.is_antichain;
        text.push(format!("antichain: {}", rep.is_antichain));
        report.insert("antichain".into(), serde_json::to_value(&rep)?);
    }
    if args.distance || default || args.code.is_some() {
        let rep = min_distance(&family);
        text.push(format!("min_distance: {}", rep.render()));
        report.insert("min_distance".into(), json!(rep.render()));
        report.insert("distance_witness".into(), serde_json::to_value(rep.witness)?);
        if let Some(d) = args.code {
            let ok = rep.at_least(d);
            failed |= !ok;
            text.push(format!("distance >= {d}: {ok}"));
            report.insert("code".into(), json!({ "d": d, "holds": ok }));
        }
    }
    if let Some(k) = args.local_lym {
        let rep = check_local_lym(&family, k)?;
        failed |= !rep.holds;
        text.push(format!(
            "local-LYM at k={k}: {} (lhs {}, rhs {})",
            rep.holds,
            ach_core::ratio::rat_to_string(&rep.lhs),
            ach_core::ratio::rat_to_string(&rep.rhs)
        ));
        report.insert("local_lym".into(), serde_json::to_value(&rep)?);
    }

    let env = envelope(
        "check",
        json!({ "input": args.input.display().to_string() }),
        None,
        Value::Object(report),
    );
    emit_report(format, &env, &text.join("\n"));
    Ok(u8::from(failed))
}

fn run_construct(sub: &ConstructCmd) -> Result<u8> {
    let (result, command, params, seed, output): (ConstructionResult, _, Value, Option<u64>, _) =
        match sub {
            ConstructCmd::Middle { n, output } => (
                middle_layer(*n)?,
                "construct middle",
                json!({ "n": n }),
                None,
                output,
            ),
            ConstructCmd::Hamming { m, output } => (
                hamming_code(*m)?,
                "construct hamming",
                json!({ "m": m }),
                None,
                output,
            ),
            ConstructCmd::Greedy { n, d, output } => (
                greedy_code(*n, *d)?,
                "construct greedy",
                json!({ "n": n, "d": d }),
                None,
                output,
            ),
            ConstructCmd::Center {
                input,
                output,
                samples,
                seed,
            } => {
                let source = read_family(input)?;
                let result = match samples {
                    Some(s) => best_translate_sampled(&source, *s, *seed)?,
                    None if source.n() > ach_core::constructions::MAX_SCAN_GROUND_SET => {
                        best_translate_sampled(&source, DEFAULT_TRANSLATE_SAMPLES, *seed)?
                    }
                    None => best_translate_to_middle(&source)?,
                };
                let sampled = matches!(
                    result.provenance,
                    ach_core::constructions::Provenance::BestTranslate { exact: false, .. }
                );
                (
                    result,
                    "construct center",
                    json!({
                        "input": input.display().to_string(),
                        "samples": samples,
                    }),
                    sampled.then_some(*seed),
                    output,
                )
            }
        };
    let verification = result.verify()?;
    fs::write(output, result.family.to_file_string())
        .with_context(|| format!("writing {}", output.display()))?;
    let sidecar = envelope(
        command,
        params,
        seed,
        json!({
            "family_file": output.display().to_string(),
            "size": result.family.len(),
            "n": result.family.n(),
            "provenance": serde_json::to_value(&result.provenance)?,
            "translate_witness": serde_json::to_value(result.translate_witness)?,
            "verification": serde_json::to_value(verification)?,
        }),
    );
    let sidecar_path = PathBuf::from(format!("{}.json", output.display()));
    fs::write(&sidecar_path, serde_json::to_string_pretty(&sidecar)?)
        .with_context(|| format!("writing {}", sidecar_path.display()))?;
    Ok(0)
}

fn run_search(format: Format, args: &SearchArgs) -> Result<u8> {
    let budget = SearchBudget {
        max_nodes: args.budget,
        restarts: args.restarts,
        seed: args.seed,
    };
    let result = max_antichain_code(args.n, args.d, &budget)?;
    if args.require_certified && !result.certified {
        return Err(anyhow!(
            "budget of {} nodes exhausted before certification (best found: {})",
            args.budget.unwrap_or(0),
            result.best_size
        ));
    }
    let text = format!(
        "n={} d={}: best_size={} certified={} nodes={}",
        result.n, result.d, result.best_size, result.certified, result.nodes_explored
    );
    let env = envelope(
        "search",
        json!({
            "n": args.n,
            "d": args.d,
            "budget": args.budget,
            "require_certified": args.require_certified,
            "restarts": args.restarts,
        }),
        Some(args.seed),
        serde_json::to_value(&result)?,
    );
    emit_report(format, &env, &text);
    Ok(0)
}

fn run_table(args: &TableArgs) -> Result<u8> {
    let mode = match args.mode {
        TableModeArg::Certified => TableMode::Certified,
        TableModeArg::Construct => TableMode::Construction,
    };
    let budget = SearchBudget {
        max_nodes: args.budget,
        ..SearchBudget::default()
    };
    let rows = theorem1_ratio_table(args.r, args.n_min, args.n_max, mode, &budget)?;
    let mut csv = csv_header(
        "table",
        &[
            ("r", args.r.to_string()),
            ("n_min", args.n_min.to_string()),
            ("n_max", args.n_max.to_string()),
            (
                "mode",
                match mode {
                    TableMode::Certified => "certified".into(),
                    TableMode::Construction => "construct".into(),
                },
            ),
        ],
        None,
    );
    csv.push_str("n,d,size,certified,ratio,surd,ratio_decimal\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},sqrt({}),{}\n",
            row.n,
            row.d,
            row.size,
            row.certified,
            ach_core::ratio::rat_to_string(&row.ratio),
            row.surd,
            row.decimal()
        ));
    }
    write_or_print(&args.output, &csv)?;
    Ok(0)
}

fn run_rho(format: Format, args: &RhoArgs) -> Result<u8> {
    let weights = WeightVector::parse(&args.weights)?;
    if let Some(alpha_text) = &args.alpha {
        let alpha = parse_rat(alpha_text)?;
        let family = level_set_family(&weights, &alpha)?;
        write_or_print(&args.output, &family.to_file_string())?;
        return Ok(0);
    }
    let report = match args.method {
        MethodArg::Auto => rho(&weights)?,
        MethodArg::Direct => rho_with_method(&weights, RhoMethod::Direct)?,
        MethodArg::Mim => rho_with_method(&weights, RhoMethod::MeetInMiddle)?,
    };
    let text = format!(
        "rho = {} (level count {} at alpha = {})",
        ach_core::ratio::rat_to_string(&report.rho),
        report.level_count,
        ach_core::ratio::rat_to_string(&report.witness_alpha)
    );
    let env = envelope(
        "rho",
        json!({ "weights": args.weights }),
        None,
        serde_json::to_value(&report)?,
    );
    emit_report(format, &env, &text);
    Ok(0)
}

fn run_halasz(format: Format, args: &HalaszArgs) -> Result<u8> {
    let weights = WeightVector::parse(&args.weights)?;
    let report = check_halasz_condition(&weights, args.r)?;
    let text = match &report.violation {
        None => format!("holds at r={}", args.r),
        Some((x, y)) => format!("fails at r={}: sum over {x} equals sum over {y}", args.r),
    };
    let holds = report.holds;
    let env = envelope(
        "halasz",
        json!({ "weights": args.weights, "r": args.r }),
        None,
        serde_json::to_value(&report)?,
    );
    emit_report(format, &env, &text);
    Ok(u8::from(!holds))
}

fn run_reduce(format: Format, args: &ReduceArgs) -> Result<u8> {
    let weights = WeightVector::parse(&args.weights)?;
    let alpha = parse_rat(&args.alpha)?;
    let report = verify_reduction(&weights, args.r, &alpha)?;
    let text = format!(
        "level set at alpha={}: size {}, antichain {}, distance {} (need >= {}): {}",
        args.alpha,
        report.family_size,
        report.antichain,
        report.min_distance,
        report.required_distance,
        if report.holds { "ok" } else { "FAIL" }
    );
    let holds = report.holds;
    let env = envelope(
        "reduce",
        json!({ "weights": args.weights, "r": args.r, "alpha": args.alpha }),
        None,
        serde_json::to_value(&report)?,
    );
    emit_report(format, &env, &text);
    Ok(u8::from(!holds))
}

fn run_scan(args: &ScanArgs) -> Result<u8> {
    let gen: GeneratorSpec = args.gen.parse()?;
    let report = halasz_ratio_scan(&gen, args.r, args.n_min, args.n_max, args.trials, args.seed)?;
    let mut csv = csv_header(
        "scan",
        &[
            ("gen", report.generator.clone()),
            ("r", args.r.to_string()),
            ("n_min", args.n_min.to_string()),
            ("n_max", args.n_max.to_string()),
            ("trials", args.trials.to_string()),
            ("skipped", report.skipped.to_string()),
        ],
        Some(args.seed),
    );
    csv.push_str("n,trial,seed,status,rho,ratio,surd,ratio_decimal\n");
    for row in &report.rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},sqrt({}),{}\n",
            row.n,
            row.trial,
            row.seed,
            if row.ok { "ok" } else { "skipped" },
            row.rho.as_deref().unwrap_or(""),
            row.ratio.as_deref().unwrap_or(""),
            row.surd,
            row.ratio_decimal.as_deref().unwrap_or(""),
        ));
    }
    write_or_print(&args.output, &csv)?;
    Ok(0)
}

fn run_lemma(format: Format, sub: &LemmaCmd) -> Result<u8> {
    match sub {
        LemmaCmd::Check { input } => {
            let text = fs::read_to_string(input)
                .with_context(|| format!("reading {}", input.display()))?;
            let instance = LemmaInstance::from_json(&text)?;
            let report = lemma1_check(&instance);
            let holds = report.holds;
            let line = format!(
                "lhs={} rhs={} slack={}: {}",
                report.lhs,
                ach_core::ratio::rat_to_string(&report.rhs),
                ach_core::ratio::rat_to_string(&report.slack),
                if holds { "holds" } else { "VIOLATED" }
            );
            let env = envelope(
                "lemma check",
                json!({ "input": input.display().to_string() }),
                None,
                serde_json::to_value(&report)?,
            );
            emit_report(format, &env, &line);
            Ok(u8::from(!holds))
        }
        LemmaCmd::Random {
            n,
            k,
            r,
            density,
            trials,
            seed,
        } => {
            let density = parse_rat(density)?;
            let mut rows = Vec::new();
            let mut all_hold = true;
            for trial in 0..*trials {
                let trial_seed = seed.wrapping_add(trial as u64);
                let instance = random_instance(*n, *k, *r, &density, trial_seed)?;
                let report = lemma1_check(&instance);
                all_hold &= report.holds;
                rows.push(json!({
                    "trial": trial,
                    "seed": trial_seed,
                    "report": serde_json::to_value(&report)?,
                }));
            }
            let env = envelope(
                "lemma random",
                json!({
                    "n": n, "k": k, "r": r,
                    "density": ach_core::ratio::rat_to_string(&density),
                    "trials": trials,
                }),
                Some(*seed),
                json!({ "all_hold": all_hold, "rows": rows }),
            );
            emit_report(
                format,
                &env,
                &format!("{} trial(s), all_hold: {all_hold}", trials),
            );
            Ok(u8::from(!all_hold))
        }
        LemmaCmd::Adversarial {
            n,
            k,
            r,
            budget,
            seed,
            counterexample,
        } => {
            let outcome = adversarial_min_slack(*n, *k, *r, *budget, *seed)?;
            let holds = outcome.report.holds;
            if !holds {
                fs::write(counterexample, outcome.instance.to_json())
                    .with_context(|| format!("writing {}", counterexample.display()))?;
            }
            let line = format!(
                "moves={} accepted={} min slack={}: {}",
                outcome.moves_tried,
                outcome.moves_accepted,
                ach_core::ratio::rat_to_string(&outcome.report.slack),
                if holds {
                    "holds".to_string()
                } else {
                    format!("VIOLATED (instance -> {})", counterexample.display())
                }
            );
            let env = envelope(
                "lemma adversarial",
                json!({ "n": n, "k": k, "r": r, "budget": budget }),
                Some(*seed),
                serde_json::to_value(&outcome)?,
            );
            emit_report(format, &env, &line);
            Ok(u8::from(!holds))
        }
        LemmaCmd::Chain { input, r } => {
            let family = read_family(input)?;
            let report = inductive_chain_check(&family, *r)?;
            let all_hold = report.all_hold;
            let line = if report.window_empty {
                format!("{} ({})", if all_hold { "holds" } else { "VIOLATED" }, report.window_note)
            } else {
                format!(
                    "{} row(s): {}",
                    report.rows.len(),
                    if all_hold { "all hold" } else { "VIOLATED" }
                )
            };
            let env = envelope(
                "lemma chain",
                json!({ "input": input.display().to_string(), "r": r }),
                None,
                serde_json::to_value(&report)?,
            );
            emit_report(format, &env, &line);
            Ok(u8::from(!all_hold))
        }
    }
}
