//! `ghl` — exact classical, symmetric, and exterior (co)homology of finite
//! groups over finitely generated coefficient modules.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ghl_cli::cache::Cache;
use ghl_cli::checks::{run_checks, CheckContext, CheckOutcome, Mutation, Suite};
use ghl_cli::experiments::{conjecture_cyclic_table, cores_res_index_table, CyclicCoefficients};
use ghl_cli::jobspec;
use ghl_cli::records::{render, Format};
use ghl_cli::run::{compute_records, orientation_report, transfer_report, ComputeJob, TransferMap};
use ghl_cli::{usage, CliResult};
use ghl_core::homology::TheoryId;

#[derive(Parser)]
#[command(
    name = "ghl",
    version,
    about = "Exact (co)homology of finite groups: classical, symmetric, exterior, and the quotient theories",
    after_help = "Run `ghl catalog` for the accepted group, module, and theory names."
)]
struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariant factors of one theory over a degree range.
    Compute {
        /// Theory name; see `ghl catalog`.
        #[arg(long)]
        theory: String,
        /// Group specifier, e.g. cyclic:6, dihedral:4, sym:3, klein4, q8, file:PATH.
        #[arg(long)]
        group: String,
        /// Module specifier: trivial:Z, trivial:Z/N, regular, augideal, file:PATH.
        #[arg(long)]
        module: String,
        /// Degree or inclusive range, e.g. 2 or 0..4.
        #[arg(long)]
        degrees: String,
        /// Output format: table, json, or csv.
        #[arg(long, default_value = "table")]
        format: String,
        /// Maximum presentation generators per degree.
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        /// Skip the result cache for this run.
        #[arg(long)]
        no_cache: bool,
    },
    /// Induced restriction/corestriction on cohomology for a subgroup pair.
    Transfer {
        #[arg(long)]
        group: String,
        /// Subgroup specifier: gen:I[,J,...] (closure of elements), trivial, or all.
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        module: String,
        /// One of classical-cohomology, sym-cohomology, ext-cohomology.
        #[arg(long, default_value = "classical-cohomology")]
        theory: String,
        /// Which induced map: res, cores, or cores-res.
        #[arg(long)]
        map: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Orientation status and the translation-sign character of a group.
    Orientation {
        #[arg(long)]
        group: String,
        /// Output format: table or json.
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Run the verification battery and report each check.
    Verify {
        /// Which checks: reference, properties, or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Seed for the randomized relabelings.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Maximum presentation generators per degree.
        #[arg(long, default_value_t = 500_000)]
        budget: usize,
        /// Output format: table or json.
        #[arg(long, default_value = "table")]
        format: String,
        /// Inject a known fault (ext-boundary-sign) to confirm the battery
        /// catches it.
        #[arg(long)]
        mutate: Option<String>,
    },
    /// Exploratory tabulations; numbers only, nothing asserted.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// List accepted group, module, theory, and format names.
    Catalog,
    /// Inspect or clear the on-disk result cache.
    #[command(subcommand)]
    Cache(CacheCmd),
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Top exterior homology of cyclic groups next to its conjectured
    /// closed form (A/2A for even order, n-torsion for odd).
    ConjectureCyclic {
        /// Largest group order to tabulate (2..=12).
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Coefficients: trivial:Z or trivial:Z/N.
        #[arg(long, default_value = "trivial:Z")]
        module: String,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// cores∘res against multiplication by the subgroup index on one
    /// cohomology group.
    CoresResIndex {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        module: String,
        #[arg(long, default_value = "classical-cohomology")]
        theory: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum CacheCmd {
    /// Remove every cached result.
    Gc,
    /// Report entry count and total size.
    Stats,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit_code.clamp(1, 255) as u8)
        }
    }
}

fn parse_theory(spec: &str) -> CliResult<TheoryId> {
    spec.parse::<TheoryId>().map_err(|e| usage(e.to_string()))
}

fn parse_format(spec: &str) -> CliResult<Format> {
    spec.parse::<Format>().map_err(usage)
}

fn dispatch(command: Command) -> CliResult<()> {
    match command {
        Command::Compute { theory, group, module, degrees, format, budget, no_cache } => {
            cmd_compute(&theory, &group, &module, &degrees, &format, budget, no_cache)
        }
        Command::Transfer { group, subgroup, module, theory, map, degree, budget } => {
            cmd_transfer(&group, &subgroup, &module, &theory, &map, degree, budget)
        }
        Command::Orientation { group, format } => cmd_orientation(&group, &format),
        Command::Verify { suite, seed, budget, format, mutate } => {
            cmd_verify(&suite, seed, budget, &format, mutate.as_deref())
        }
        Command::Experiment(cmd) => cmd_experiment(cmd),
        Command::Catalog => cmd_catalog(),
        Command::Cache(cmd) => cmd_cache(cmd),
    }
}

fn cmd_compute(
    theory: &str,
    group: &str,
    module: &str,
    degrees: &str,
    format: &str,
    budget: usize,
    no_cache: bool,
) -> CliResult<()> {
    let theory = parse_theory(theory)?;
    let format = parse_format(format)?;
    let g = jobspec::parse_group(group)?;
    let m = jobspec::parse_module(module, &g)?;
    let (lo, hi) = jobspec::parse_degrees(degrees)?;
    let cache = if no_cache { Cache::disabled() } else { Cache::from_env() };
    let job = ComputeJob {
        theory,
        group: g,
        group_spec: group.to_string(),
        module: m,
        module_spec: module.to_string(),
        lo,
        hi,
        budget,
    };
    let records = compute_records(&job, &cache)?;
    println!("{}", render(&records, format).trim_end());
    Ok(())
}

fn cmd_transfer(
    group: &str,
    subgroup: &str,
    module: &str,
    theory: &str,
    map: &str,
    degree: usize,
    budget: usize,
) -> CliResult<()> {
    let theory = parse_theory(theory)?;
    let map = map.parse::<TransferMap>().map_err(usage)?;
    let g = jobspec::parse_group(group)?;
    let m = jobspec::parse_module(module, &g)?;
    let elements = jobspec::parse_subgroup(subgroup, &g)?;
    let report = transfer_report(&m, &elements, theory, map, degree, budget, group, module)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes cleanly")
    );
    Ok(())
}

fn cmd_orientation(group: &str, format: &str) -> CliResult<()> {
    let format = parse_format(format)?;
    let g = jobspec::parse_group(group)?;
    let report = orientation_report(&g, group);
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes cleanly")
        ),
        _ => {
            println!(
                "{}: {}",
                report.group,
                if report.oriented { "oriented" } else { "non-oriented" }
            );
            println!("element  order  sign");
            for row in &report.sign_character {
                println!("{:<8} {:<6} {:+}", row.element, row.order, row.sign);
            }
        }
    }
    Ok(())
}

fn outcome_line(o: &CheckOutcome) -> String {
    format!(
        "{} check {:02} [{}] {} ({} ms)\n         {}",
        if o.passed { "PASS" } else { "FAIL" },
        o.id,
        o.suite,
        o.name,
        o.millis,
        o.detail
    )
}

fn cmd_verify(
    suite: &str,
    seed: u64,
    budget: usize,
    format: &str,
    mutate: Option<&str>,
) -> CliResult<()> {
    let suite = suite.parse::<Suite>().map_err(usage)?;
    let format = parse_format(format)?;
    let mutation = match mutate {
        Some(m) => Some(m.parse::<Mutation>().map_err(usage)?),
        None => None,
    };
    let ctx = CheckContext { budget, seed, mutation };
    let outcomes = run_checks(suite, &ctx);
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&outcomes).expect("outcomes serialize cleanly")
        ),
        _ => {
            for o in &outcomes {
                println!("{}", outcome_line(o));
            }
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        Err(ghl_cli::failure(format!(
            "{failed} of {} checks failed",
            outcomes.len()
        )))
    } else {
        if format != Format::Json {
            println!("all {} checks passed", outcomes.len());
        }
        Ok(())
    }
}

fn cmd_experiment(cmd: ExperimentCmd) -> CliResult<()> {
    let table = match cmd {
        ExperimentCmd::ConjectureCyclic { max_n, module, budget } => {
            let coeffs = CyclicCoefficients::parse(&module)?;
            conjecture_cyclic_table(max_n, coeffs, budget)?
        }
        ExperimentCmd::CoresResIndex { group, subgroup, module, theory, degree, budget } => {
            let theory = parse_theory(&theory)?;
            let g = jobspec::parse_group(&group)?;
            let m = jobspec::parse_module(&module, &g)?;
            let elements = jobspec::parse_subgroup(&subgroup, &g)?;
            cores_res_index_table(&m, &elements, theory, degree, budget, &group, &module)?
        }
    };
    print!("{table}");
    Ok(())
}

fn cmd_catalog() -> CliResult<()> {
    println!("groups");
    println!("  cyclic:N       cyclic group of order N");
    println!("  dihedral:N     dihedral group of order 2N");
    println!("  sym:N          symmetric group on N letters (N <= 6)");
    println!("  klein4         Klein four-group");
    println!("  q8             quaternion group of order 8");
    println!("  file:PATH      multiplication table as JSON");
    println!();
    println!("modules");
    println!("  trivial:Z      integers with trivial action");
    println!("  trivial:Z/N    integers mod N with trivial action");
    println!("  regular        the integral group ring");
    println!("  augideal       augmentation ideal of the group ring");
    println!("  file:PATH      presented module with action matrices as JSON");
    println!();
    println!("theories");
    for theory in TheoryId::ALL {
        println!("  {}", theory.as_str());
    }
    println!();
    println!("subgroups (transfer command)");
    println!("  gen:I[,J,...]  closure of the listed element indices");
    println!("  trivial        the identity subgroup");
    println!("  all            the whole group");
    println!();
    println!("formats: table, json, csv");
    println!("cache:   set GHL_CACHE_DIR to move it (default .ghl-cache)");
    Ok(())
}

fn cmd_cache(cmd: CacheCmd) -> CliResult<()> {
    let cache = Cache::from_env();
    match cmd {
        CacheCmd::Gc => {
            let removed = cache
                .gc()
                .map_err(|e| ghl_cli::failure(format!("cache gc failed: {e}")))?;
            println!("removed {removed} entries from {}", cache.dir().display());
        }
        CacheCmd::Stats => {
            let (entries, bytes) = cache.stats();
            println!(
                "{entries} entries, {bytes} bytes in {}",
                cache.dir().display()
            );
        }
    }
    Ok(())
}
