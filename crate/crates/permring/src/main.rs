use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};

use permring::{
    run_report, run_selftest, CategoryTag, Error, GSet, GroupSpec, PermRing, Result,
    SelftestConfig, SubgroupSpec, DEFAULT_POINT_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "permring",
    version,
    about = "Separable permutation rings over finite groups: degrees, splitting towers, quasi-Galois closures, supports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of the coset ring of a subgroup
    Analyze(RingArgs),
    /// Degree of the splitting tower
    Degree(RingArgs),
    /// Splitting tower levels with class data
    Tower(RingArgs),
    /// Quasi-Galois closure and its witness tuple
    Closure(RingArgs),
    /// Support at the category prime
    Support(RingArgs),
    /// Ring endomorphism count
    Endos(RingArgs),
    /// Built-in consistency battery
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct RingArgs {
    /// Group: S<n>, A<n>, C<n>, D<n>, products joined with x, or perm:<cycles>
    #[arg(long)]
    group: String,
    /// Subgroup: gens:<perms>, stab:<k>, sylow:<p>, or core:<spec>
    #[arg(long)]
    subgroup: String,
    /// Ambient category
    #[arg(long, value_enum, default_value_t = CategoryArg::Mod)]
    category: CategoryArg,
    /// Prime attached to the category (required for stable)
    #[arg(long)]
    prime: Option<u32>,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Recompute key answers along the reference routes and compare
    #[arg(long)]
    oracle: bool,
    /// Point budget for tower construction; PERMRING_BUDGET is the fallback
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args)]
struct SelftestArgs {
    /// TOML file with order_bound, point_budget, battery_groups
    #[arg(long)]
    config: Option<std::path::PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CategoryArg {
    Mod,
    Derived,
    Stable,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Analyze(args) => analyze(&args),
        Command::Degree(args) => degree(&args),
        Command::Tower(args) => tower(&args),
        Command::Closure(args) => closure(&args),
        Command::Support(args) => support(&args),
        Command::Endos(args) => endos(&args),
        Command::Selftest(args) => selftest(&args),
    }
}

fn category_of(args: &RingArgs) -> Result<CategoryTag> {
    match args.category {
        CategoryArg::Mod => Ok(CategoryTag::Mod { prime: args.prime }),
        CategoryArg::Derived => Ok(CategoryTag::Derived { prime: args.prime }),
        CategoryArg::Stable => match args.prime {
            Some(prime) => Ok(CategoryTag::Stable { prime }),
            None => Err(Error::PrimeRequired),
        },
    }
}

fn resolve_budget(flag: Option<usize>) -> Result<usize> {
    if let Some(budget) = flag {
        return Ok(budget);
    }
    match std::env::var("PERMRING_BUDGET") {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("PERMRING_BUDGET is not a number: {value:?}"))),
        Err(_) => Ok(DEFAULT_POINT_BUDGET),
    }
}

struct Prepared {
    ring: PermRing,
    budget: usize,
}

fn prepare(args: &RingArgs) -> Result<Prepared> {
    let budget = resolve_budget(args.budget)?;
    let category = category_of(args)?;
    let group_spec = GroupSpec::parse(&args.group)?;
    let subgroup_spec = SubgroupSpec::parse(&args.subgroup)?;
    let handle = subgroup_spec.resolve(group_spec.group())?;
    let carrier = GSet::cosets(group_spec.group(), &handle)?;
    let ring = PermRing::new(category, carrier)?;
    Ok(Prepared { ring, budget })
}

/// Writes to stdout without panicking when the reader goes away, so piping
/// into `head` ends the run quietly instead of with a backtrace.
fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(Error::Config(format!("cannot write output: {e}"))),
    }
}

fn json_text(value: &serde_json::Value) -> Result<String> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
    Ok(format!("{text}\n"))
}

fn analyze(args: &RingArgs) -> Result<i32> {
    let budget = resolve_budget(args.budget)?;
    let category = category_of(args)?;
    let group_spec = GroupSpec::parse(&args.group)?;
    let subgroup_spec = SubgroupSpec::parse(&args.subgroup)?;
    let report = run_report(&group_spec, &subgroup_spec, category, budget, args.oracle)?;
    let out = match args.format {
        FormatArg::Text => report.to_text(),
        FormatArg::Json => format!("{}\n", report.to_json()?),
    };
    emit(&out)?;
    Ok(if report.has_oracle_mismatch() { 1 } else { 0 })
}

fn degree(args: &RingArgs) -> Result<i32> {
    let prepared = prepare(args)?;
    let degree = prepared.ring.degree_with(prepared.budget)?;
    let out = match args.format {
        FormatArg::Text => format!("degree: {degree}\n"),
        FormatArg::Json => json_text(&serde_json::json!({ "degree": degree }))?,
    };
    emit(&out)?;
    Ok(0)
}

fn tower(args: &RingArgs) -> Result<i32> {
    let prepared = prepare(args)?;
    let tower = prepared.ring.splitting_tower_with(prepared.budget)?;
    let out = match args.format {
        FormatArg::Text => {
            let mut out = format!("tower: degree {}\n", tower.degree);
            for level in &tower.levels {
                let _ = writeln!(
                    out,
                    "tower level {}: {} classes, size {}, stabilizer orders {:?}",
                    level.level,
                    level.classes.len(),
                    level.total_size,
                    level.stabilizer_orders()
                );
            }
            out
        }
        FormatArg::Json => {
            let levels: Vec<serde_json::Value> = tower
                .levels
                .iter()
                .map(|l| {
                    serde_json::json!({
                        "level": l.level,
                        "class_count": l.classes.len(),
                        "total_size": l.total_size,
                        "stabilizer_orders": l.stabilizer_orders(),
                    })
                })
                .collect();
            json_text(&serde_json::json!({
                "degree": tower.degree,
                "levels": levels,
            }))?
        }
    };
    emit(&out)?;
    Ok(0)
}

fn closure(args: &RingArgs) -> Result<i32> {
    let prepared = prepare(args)?;
    let report = prepared.ring.quasi_galois_closure_with(prepared.budget)?;
    let generators = report.stabilizer.generator_cycles();
    let witness: Vec<String> = report
        .tuple_witness
        .iter()
        .map(|w| w.cycle_string())
        .collect();
    let out = match args.format {
        FormatArg::Text => {
            let mut out = format!(
                "closure: order {}, index {}, generators [{}]\n",
                report.stabilizer.order(),
                report.stabilizer.index(),
                generators.join(", ")
            );
            let _ = writeln!(out, "closure witness: [{}]", witness.join(", "));
            match report.constant_degree {
                Some(c) => {
                    let _ = writeln!(out, "constant_degree: {c}");
                }
                None => {
                    let _ = writeln!(out, "constant_degree: n/a");
                }
            }
            out
        }
        FormatArg::Json => json_text(&serde_json::json!({
            "order": report.stabilizer.order(),
            "index": report.stabilizer.index(),
            "generators": generators,
            "witness": witness,
            "constant_degree": report.constant_degree,
        }))?,
    };
    emit(&out)?;
    Ok(0)
}

fn support(args: &RingArgs) -> Result<i32> {
    let prepared = prepare(args)?;
    let support = prepared.ring.support()?;
    let class_orders: Vec<usize> = support.members.iter().map(|(_, h)| h.order()).collect();
    let out = match args.format {
        FormatArg::Text => {
            let trivial = if support.trivial_included {
                ", with trivial class"
            } else {
                ""
            };
            format!(
                "support: p = {}, {} classes{}, orders {:?}\n",
                support.prime,
                support.class_count(),
                trivial,
                class_orders
            )
        }
        FormatArg::Json => json_text(&serde_json::json!({
            "prime": support.prime,
            "trivial_included": support.trivial_included,
            "class_count": support.class_count(),
            "class_orders": class_orders,
        }))?,
    };
    emit(&out)?;
    Ok(0)
}

fn endos(args: &RingArgs) -> Result<i32> {
    let prepared = prepare(args)?;
    let count = prepared.ring.count_ring_endomorphisms()?;
    let out = match args.format {
        FormatArg::Text => format!("endomorphisms: {count}\n"),
        FormatArg::Json => json_text(&serde_json::json!({ "endo_count": count }))?,
    };
    emit(&out)?;
    Ok(0)
}

fn selftest(args: &SelftestArgs) -> Result<i32> {
    let config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            SelftestConfig::from_toml(&text)?
        }
        None => SelftestConfig::default(),
    };
    let checks = run_selftest(&config);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let out = match args.format {
        FormatArg::Text => {
            let mut out = String::new();
            for check in &checks {
                let status = if check.passed { "ok  " } else { "FAIL" };
                let _ = writeln!(out, "{status} {}: {}", check.name, check.detail);
            }
            let _ = writeln!(out, "selftest: {} checks, {} failed", checks.len(), failed);
            out
        }
        FormatArg::Json => {
            let entries: Vec<serde_json::Value> = checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "name": c.name,
                        "passed": c.passed,
                        "detail": c.detail,
                    })
                })
                .collect();
            json_text(&serde_json::json!({
                "checks": entries,
                "failed": failed,
            }))?
        }
    };
    emit(&out)?;
    Ok(if failed == 0 { 0 } else { 1 })
}
