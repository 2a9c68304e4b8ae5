//! Command-line front end: verify functor files, print invariants, run
//! the obstruction and lower-bound checks, build the rank-2 grid, emit
//! built-in instances and cross-check against the brute-force oracles.
//!
//! Exit codes: 0 all checks passed, 1 a semantic check failed (findings,
//! oracle disagreement, violated bound), 2 usage or unreadable input.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use gysin_core::diagram::OBJECT_NAMES;
use gysin_core::format;
use gysin_core::functor::ObstructionOutcome;
use gysin_core::oracle;
use gysin_core::{build_diagram_d, DiagramD, GysinFunctor, JordanType, VerifyOptions};

#[derive(Parser)]
#[command(name = "gysin", version, about = "Checks graded transfer systems over elementary abelian 2-groups")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized oracle sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Dimension cap for the oracle sweeps.
    #[arg(long, global = true, default_value_t = 8)]
    max_dim: usize,

    /// Worker threads for verification; the output never depends on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom of a functor file and report findings.
    Verify {
        file: PathBuf,
        /// Only require the restriction maps to be module-linear,
        /// dropping the unital-algebra-map requirement.
        #[arg(long)]
        relax_rho: bool,
    },
    /// Print dimensions, norms, connectivity and per-pair torsion data.
    Invariants { file: PathBuf },
    /// Run both extension-obstruction detectors. Always exits 0 on
    /// readable input; a triggered obstruction is information, not an
    /// error.
    Obstructions { file: PathBuf },
    /// Check dim K_0 against the lower bound 2^rank.
    Conjecture { file: PathBuf },
    /// Build and check the 3x3 grid over every covering pair whose
    /// larger subgroup is the whole group; the input must have rank 2.
    #[command(name = "diagram-d")]
    DiagramD {
        file: PathBuf,
        /// Only check the pair with this key, e.g. "[1] < [1,2]".
        #[arg(long)]
        pair: Option<String>,
    },
    /// Write a built-in instance to a file.
    Builtin {
        #[command(subcommand)]
        which: BuiltinCommand,
    },
    /// Cross-check the main code paths against brute force at desk
    /// scale.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Subcommand)]
enum BuiltinCommand {
    /// The fixed eight-dimensional rank-1 instance.
    #[command(name = "example-2-2-4-1")]
    Example2241 {
        /// Output path.
        #[arg(long)]
        emit: PathBuf,
    },
    /// Cohomology of a sphere with the antipodal action (rank 1).
    Sphere {
        /// Sphere dimension, at least 1.
        #[arg(long)]
        n: usize,
        /// Output path.
        #[arg(long)]
        emit: PathBuf,
    },
    /// Cohomology of a product of spheres with the coordinatewise
    /// antipodal action (rank 2, or 3 with --p).
    ProductSpheres {
        /// First sphere dimension.
        #[arg(long)]
        m: usize,
        /// Second sphere dimension.
        #[arg(long)]
        n: usize,
        /// Optional third sphere dimension.
        #[arg(long)]
        p: Option<usize>,
        /// Output path.
        #[arg(long)]
        emit: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exhaustively check that coker(t) and ker(t) dimensions equal the
    /// Jordan block count, over all partitions up to --max-dim plus
    /// seeded random actions.
    #[command(name = "lemma-2-3-4")]
    Lemma234,
    /// Run seeded random short exact sequences through the six-term
    /// construction and check exactness at every spot.
    #[command(name = "tor-les")]
    TorLes {
        /// Number of seeded random sequences.
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Compare subgroup counts per rank and covering-pair totals
    /// against a brute-force subset scan, for ranks 1 through 4.
    Lattice,
}

fn main() -> ExitCode {
    // Die like any pipeline tool when the consumer of stdout goes away,
    // instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Ok(true) = all checks passed, Ok(false) = a semantic check failed,
/// Err = the input could not be used at all.
fn run(cli: &Cli) -> Result<bool, String> {
    match &cli.command {
        Command::Verify { file, relax_rho } => {
            let f = load(file)?;
            let opts = VerifyOptions {
                relax_rho: *relax_rho,
                threads: cli.threads,
            };
            let report = f.verify(&opts);
            if cli.json {
                print_json(&report)?;
            } else {
                println!("{report}");
            }
            Ok(report.passed())
        }
        Command::Invariants { file } => {
            let f = load(file)?;
            let table = f.invariants();
            if cli.json {
                print_json(&table)?;
            } else {
                print!("{table}");
                println!("verdict: {}", verdict(table.passed()));
            }
            Ok(table.passed())
        }
        Command::Obstructions { file } => {
            let f = load(file)?;
            let outcomes = vec![
                f.obstruction_bar_one_dimensional(),
                f.obstruction_unit_norm(),
            ];
            if cli.json {
                print_json(&outcomes)?;
            } else {
                for o in &outcomes {
                    print_obstruction(o);
                }
            }
            Ok(true)
        }
        Command::Conjecture { file } => {
            let f = load(file)?;
            let o = f.conjecture_check();
            if cli.json {
                print_json(&o)?;
            } else {
                let status = if o.holds { "holds" } else { "violated" };
                let hyp = if o.hypothesis_met { "met" } else { "not met" };
                println!(
                    "rank {}: dim K_0 = {} against bound 2^{} = {}: {} (connectivity hypothesis {})",
                    o.rank, o.dim_k0, o.rank, o.bound, status, hyp
                );
                if let Some(label) = &o.label {
                    println!("{label}");
                }
            }
            Ok(o.holds)
        }
        Command::DiagramD { file, pair } => {
            let f = load(file)?;
            run_diagram(cli, &f, pair.as_deref())
        }
        Command::Builtin { which } => {
            let (f, describe) = match which {
                BuiltinCommand::Example2241 { emit } => {
                    (gysin_core::builtin::example_2_2_4_1(), emit)
                }
                BuiltinCommand::Sphere { n, emit } => {
                    let f = gysin_core::builtin::sphere(*n).map_err(|e| e.to_string())?;
                    (f, emit)
                }
                BuiltinCommand::ProductSpheres { m, n, p, emit } => {
                    let mut factors = vec![*m, *n];
                    if let Some(p) = p {
                        factors.push(*p);
                    }
                    let f = gysin_core::builtin::product_spheres(&factors)
                        .map_err(|e| e.to_string())?;
                    (f, emit)
                }
            };
            emit_builtin(cli, &f, describe)
        }
        Command::Oracle { which } => match which {
            OracleCommand::Lemma234 => {
                let sweep = oracle::exhaustive_block_count_sweep(cli.max_dim, cli.seed)
                    .map_err(|e| e.to_string())?;
                if cli.json {
                    print_json(&sweep)?;
                } else {
                    println!(
                        "partition cases: {}\nrandom cases: {}",
                        sweep.partition_cases, sweep.random_cases
                    );
                    for line in &sweep.failures {
                        println!("FAIL {line}");
                    }
                    println!("verdict: {}", verdict(sweep.passed()));
                }
                Ok(sweep.passed())
            }
            OracleCommand::TorLes { cases } => {
                let sweep = oracle::tor_sweep(*cases, cli.max_dim, cli.seed)
                    .map_err(|e| e.to_string())?;
                if cli.json {
                    print_json(&sweep)?;
                } else {
                    println!("cases: {} (max_dim {}, seed {})", sweep.cases, sweep.max_dim, sweep.seed);
                    for line in &sweep.failures {
                        println!("FAIL {line}");
                    }
                    println!("verdict: {}", verdict(sweep.passed()));
                }
                Ok(sweep.passed())
            }
            OracleCommand::Lattice => run_lattice_oracle(cli),
        },
    }
}

fn load(path: &Path) -> Result<GysinFunctor, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    format::parse_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn print_obstruction(o: &ObstructionOutcome) {
    println!("{}: {}", o.name, o.trigger);
    println!("  {}", o.detail);
}

fn jordan_opt(jt: &Option<JordanType>) -> String {
    jt.as_ref().map_or_else(|| "-".to_string(), |j| j.to_string())
}

fn run_diagram(cli: &Cli, f: &GysinFunctor, only: Option<&str>) -> Result<bool, String> {
    if f.rank() != 2 {
        return Err(format!(
            "the grid is defined over rank-2 functors, this input has rank {}",
            f.rank()
        ));
    }
    let pairs: Vec<_> = f
        .lattice()
        .pairs()
        .iter()
        .filter(|p| p.sup.rank() == 2 && only.is_none_or(|k| p.key() == k))
        .cloned()
        .collect();
    if pairs.is_empty() {
        return Err(match only {
            Some(k) => format!("no covering pair {k} with a rank-2 top"),
            None => "no covering pair with a rank-2 top".to_string(),
        });
    }
    let mut all_pass = true;
    let mut summaries = Vec::new();
    for pair in &pairs {
        match build_diagram_d(f, pair) {
            Ok(d) => {
                if !d.passed() {
                    all_pass = false;
                }
                if cli.json {
                    summaries.push(diagram_json(&d));
                } else {
                    print_diagram(&d);
                }
            }
            Err(e) => {
                all_pass = false;
                if cli.json {
                    summaries.push(json!({ "pair": pair.key(), "error": e.to_string() }));
                } else {
                    println!("pair {}: {e}", pair.key());
                }
            }
        }
    }
    if cli.json {
        print_json(&json!({ "pairs": summaries, "passed": all_pass }))?;
    } else {
        println!("verdict: {}", verdict(all_pass));
    }
    Ok(all_pass)
}

fn print_diagram(d: &DiagramD) {
    println!("pair {}: {}", d.pair, verdict(d.passed()));
    for (r, row) in d.objects.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, space)| format!("{} {}", OBJECT_NAMES[r][c], space))
            .collect();
        println!("  {}", cells.join("  |  "));
    }
    println!(
        "  connecting map rank {}{}",
        d.delta_rank,
        if d.delta_rank == 0 { " (columns split)" } else { "" }
    );
    println!(
        "  blocks: I {} | C {} | Im(bar j) {} | tau(I) {} | Q {}",
        d.monogenic.unit_submodule,
        d.monogenic.cokernel,
        jordan_opt(&d.monogenic.unit_bar_image),
        jordan_opt(&d.monogenic.tau_unit),
        jordan_opt(&d.monogenic.q)
    );
    for finding in &d.report.findings {
        println!("  {finding}");
    }
}

fn diagram_json(d: &DiagramD) -> serde_json::Value {
    let objects: Vec<Vec<serde_json::Value>> = d
        .objects
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, space)| {
                    json!({ "name": OBJECT_NAMES[r][c], "dims": space.dims() })
                })
                .collect()
        })
        .collect();
    json!({
        "pair": d.pair,
        "objects": objects,
        "delta_rank": d.delta_rank,
        "monogenic": {
            "unit_submodule": d.monogenic.unit_submodule.sizes_desc(),
            "cokernel": d.monogenic.cokernel.sizes_desc(),
            "unit_bar_image": d.monogenic.unit_bar_image.as_ref().map(JordanType::sizes_desc),
            "tau_unit": d.monogenic.tau_unit.as_ref().map(JordanType::sizes_desc),
            "q": d.monogenic.q.as_ref().map(JordanType::sizes_desc),
        },
        "findings": d.report.findings,
        "passed": d.passed(),
    })
}

fn emit_builtin(cli: &Cli, f: &GysinFunctor, path: &Path) -> Result<bool, String> {
    let text = gysin_core::format::to_json(f).map_err(|e| e.to_string())?;
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    let dims: BTreeMap<String, usize> = f
        .lattice()
        .subgroups()
        .iter()
        .map(|s| (s.key(), f.algebra(s).space().total_dim()))
        .collect();
    if cli.json {
        print_json(&json!({
            "path": path.display().to_string(),
            "rank": f.rank(),
            "total_dims": dims,
        }))?;
    } else {
        println!(
            "wrote rank-{} instance ({} subgroups, dim K_0 = {}) to {}",
            f.rank(),
            f.lattice().subgroups().len(),
            f.k_zero().space().total_dim(),
            path.display()
        );
    }
    Ok(true)
}

fn run_lattice_oracle(cli: &Cli) -> Result<bool, String> {
    let mut all_agree = true;
    let mut rows = Vec::new();
    for d in 1..=4 {
        let brute = oracle::count_subgroups_oracle(d).map_err(|e| e.to_string())?;
        let lattice = gysin_core::SubgroupLattice::new(d).map_err(|e| e.to_string())?;
        let mut profile = vec![0usize; d + 1];
        for s in lattice.subgroups() {
            profile[s.rank()] += 1;
        }
        // Each rank-r subgroup contains 2^r - 1 subgroups of index 2, so
        // the brute-force counts predict the covering-pair total.
        let expect_pairs: usize = brute
            .iter()
            .enumerate()
            .map(|(r, count)| count * ((1usize << r) - 1))
            .sum();
        let got_pairs = lattice.pairs().len();
        let agree = profile == brute && got_pairs == expect_pairs;
        if !agree {
            all_agree = false;
        }
        if cli.json {
            rows.push(json!({
                "rank": d,
                "profile": profile,
                "brute_profile": brute,
                "pairs": got_pairs,
                "expected_pairs": expect_pairs,
                "agree": agree,
            }));
        } else {
            println!(
                "d={d}: subgroups {} (profile {:?}, brute {:?}), covering pairs {} (expected {}): {}",
                profile.iter().sum::<usize>(),
                profile,
                brute,
                got_pairs,
                expect_pairs,
                if agree { "agree" } else { "DISAGREE" }
            );
        }
    }
    if cli.json {
        print_json(&json!({ "ranks": rows, "passed": all_agree }))?;
    } else {
        println!("verdict: {}", verdict(all_agree));
    }
    Ok(all_agree)
}
