//! Command-line front end.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lazysel_core::{
    gen_front, sanitize, select, CandidateSet, Engine, Family, FrontSpec, Indicator, IndicatorKind,
    PointSet,
};

use crate::bench::{self, BenchConfig};
use crate::error::{CliError, Result};
use crate::io;
use crate::manifest::{
    Environment, InputDescriptor, ResultSummary, RunManifest, SanitizeSummary, Tool, SCHEMA_VERSION,
};
use crate::verify::{self, Plan};

#[derive(Debug, Parser)]
#[command(
    name = "lazysel",
    version,
    about = "Subset selection by greedy hypervolume, IGD and IGD+"
)]
pub struct Cli {
    /// Log progress (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Select a subset of a candidate file or a sampled front.
    Select(SelectArgs),
    /// Time engines over a matrix of sampled fronts.
    Bench(BenchArgs),
    /// Run the randomized oracle suites.
    Verify(VerifyArgs),
    /// Sample a front and write it as CSV or JSON.
    GenFront(GenFrontArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IndicatorArg {
    Hv,
    Igd,
    Igdplus,
}

impl From<IndicatorArg> for IndicatorKind {
    fn from(a: IndicatorArg) -> Self {
        match a {
            IndicatorArg::Hv => IndicatorKind::Hypervolume,
            IndicatorArg::Igd => IndicatorKind::Igd,
            IndicatorArg::Igdplus => IndicatorKind::IgdPlus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Standard,
    Update,
    Lazy,
}

impl From<EngineArg> for Engine {
    fn from(a: EngineArg) -> Self {
        match a {
            EngineArg::Standard => Engine::Standard,
            EngineArg::Update => Engine::Update,
            EngineArg::Lazy => Engine::Lazy,
        }
    }
}

#[derive(Debug, Args)]
pub struct FrontArgs {
    /// Front family: dtlz1, dtlz2, idtlz2, dtlz7.
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,
    /// Number of objectives.
    #[arg(long)]
    pub m: Option<usize>,
    /// Instance size.
    #[arg(long)]
    pub n: Option<usize>,
    /// Pool sampled before drawing the instance (defaults to n).
    #[arg(long)]
    pub pool: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    /// Candidate file (CSV or JSON). Omit to sample a front with --family.
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub front: FrontArgs,
    #[arg(long, value_enum, default_value = "hv")]
    pub indicator: IndicatorArg,
    #[arg(long, value_enum, default_value = "lazy")]
    pub engine: EngineArg,
    #[arg(long)]
    pub k: usize,
    /// Hypervolume reference point, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub ref_point: Option<Vec<f64>>,
    /// Reference set file for IGD and IGD+ (defaults to the candidates).
    #[arg(long)]
    pub ref_set: Option<PathBuf>,
    /// Objectives are to be maximized; values are negated on input.
    #[arg(long)]
    pub maximization: bool,
    /// Output directory for manifest.json and subset.csv.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Problems as family:m, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_problem, default_value = "dtlz2:5")]
    pub problems: Vec<(Family, usize)>,
    #[arg(long, default_value_t = 5000)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub k: usize,
    #[arg(long, default_value_t = 100_000)]
    pub pool: usize,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "standard,update,lazy"
    )]
    pub engines: Vec<EngineArg>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "hv")]
    pub indicators: Vec<IndicatorArg>,
    #[arg(long, default_value_t = 11)]
    pub repeats: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Timing CSV.
    #[arg(long, default_value = "bench.csv")]
    pub out: PathBuf,
    /// Per-step evaluation counts CSV.
    #[arg(long)]
    pub series: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run about a tenth of the instances.
    #[arg(long)]
    pub quick: bool,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "verify-report.json")]
    pub report: PathBuf,
    /// Scale one contribution by 0.999 to check that the suites notice.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct GenFrontArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub pool: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; `.json` selects JSON, anything else CSV.
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

fn parse_problem(s: &str) -> std::result::Result<(Family, usize), String> {
    let (family, m) = s
        .split_once(':')
        .ok_or_else(|| format!("expected family:m, got `{s}`"))?;
    Ok((
        parse_family(family)?,
        m.parse().map_err(|e| format!("`{m}`: {e}"))?,
    ))
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Select(a) => cmd_select(&a),
        Command::Bench(a) => cmd_bench(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::GenFront(a) => cmd_gen_front(&a),
    }
}

struct Loaded {
    set: CandidateSet,
    /// Input rows as read, before any negation.
    raw: Option<Vec<Vec<f64>>>,
    input: InputDescriptor,
    ref_source: &'static str,
}

fn front_spec(front: &FrontArgs, seed: u64) -> Result<FrontSpec> {
    let (Some(family), Some(m), Some(n)) = (front.family, front.m, front.n) else {
        return Err(CliError::Usage(
            "give an input file or --family, --m and --n".into(),
        ));
    };
    Ok(FrontSpec::new(family, m, n, seed).with_pool(front.pool.unwrap_or(n)))
}

fn load(a: &SelectArgs) -> Result<Loaded> {
    if let Some(path) = &a.input {
        if a.front.family.is_some() {
            return Err(CliError::Usage(
                "give either an input file or --family, not both".into(),
            ));
        }
        let raw = io::read_points(path)?;
        let mut rows = raw.clone();
        if a.maximization {
            io::negate(&mut rows);
        }
        let (r, ref_source) = match &a.ref_point {
            Some(r) => (r.clone(), "given"),
            None => (io::default_ref_point(&rows), "default"),
        };
        let set = sanitize(&rows, &r)?.with_provenance(path.display().to_string());
        let input = InputDescriptor::File {
            path: path.display().to_string(),
            rows: raw.len(),
            maximization: a.maximization,
        };
        Ok(Loaded {
            set,
            raw: Some(raw),
            input,
            ref_source,
        })
    } else {
        let spec = front_spec(&a.front, a.seed)?;
        let mut set = gen_front(&spec)?;
        let mut ref_source = "front";
        if let Some(r) = &a.ref_point {
            set = set.with_ref_point(r)?;
            ref_source = "given";
        }
        let input = InputDescriptor::Front {
            family: spec.family.to_string(),
            m: spec.m,
            n_pool: spec.n_pool,
            n_sample: spec.n_sample,
            seed: spec.seed,
            label: set.provenance.clone(),
        };
        Ok(Loaded {
            set,
            raw: None,
            input,
            ref_source,
        })
    }
}

fn report_sanitize(set: &CandidateSet) {
    let r = &set.report;
    if !r.duplicates.is_empty() || !r.dominated.is_empty() {
        log::warn!(
            "dropped {} duplicate and {} dominated points",
            r.duplicates.len(),
            r.dominated.len()
        );
    }
    if !r.outside_reference.is_empty() {
        log::warn!(
            "{} points are not strictly inside the reference box; their contribution is zero",
            r.outside_reference.len()
        );
    }
}

fn cmd_select(a: &SelectArgs) -> Result<()> {
    let kind = IndicatorKind::from(a.indicator);
    let engine = Engine::from(a.engine);
    if engine == Engine::Update && kind != IndicatorKind::Hypervolume {
        return Err(CliError::Infeasible(format!(
            "engine `update` supports only hv, not {}",
            kind.name()
        )));
    }
    let loaded = load(a)?;
    let set = &loaded.set;
    report_sanitize(set);
    if a.k > set.len() {
        log::warn!(
            "k = {} exceeds the {} candidates; returning all of them",
            a.k,
            set.len()
        );
    }

    let ref_set = match &a.ref_set {
        Some(path) => {
            let mut rows = io::read_points(path)?;
            if a.maximization {
                io::negate(&mut rows);
            }
            Some(PointSet::from_rows(&rows)?)
        }
        None => None,
    };
    let mut indicator = Indicator::of(kind);
    if let Some(r) = &ref_set {
        indicator = indicator.with_reference(r);
    }
    let result = select(engine, set, a.k, &indicator)?;
    log::info!(
        "{} {} k={}: {:.6}s, {} evaluations",
        engine.name(),
        kind.name(),
        a.k,
        result.elapsed.as_secs_f64(),
        result.total_evals()
    );

    let subset: Vec<Vec<f64>> = match &loaded.raw {
        Some(raw) => result.original.iter().map(|&i| raw[i].clone()).collect(),
        None => result
            .selected
            .iter()
            .map(|&i| set.point(i).to_vec())
            .collect(),
    };
    let manifest = RunManifest {
        schema_version: SCHEMA_VERSION,
        tool: Tool::current(),
        input: loaded.input.clone(),
        indicator: kind.name().into(),
        engine: engine.name().into(),
        k: a.k,
        seed: Some(a.seed),
        ref_point: set.ref_point().to_vec(),
        ref_point_source: loaded.ref_source.into(),
        reference_set: a.ref_set.as_ref().map(|p| p.display().to_string()),
        sanitize: SanitizeSummary::of(set),
        result: ResultSummary::of(&result),
        environment: Environment::current(),
    };
    io::write_text(&a.out.join("manifest.json"), &manifest.to_json())?;
    io::write_points(&a.out.join("subset.csv"), &subset)?;
    println!(
        "selected {} of {} candidates -> {}",
        result.k(),
        set.len(),
        a.out.display()
    );
    Ok(())
}

fn cmd_bench(a: &BenchArgs) -> Result<()> {
    if a.repeats == 0 {
        return Err(CliError::Usage("--repeats must be positive".into()));
    }
    let cfg = BenchConfig {
        problems: a.problems.clone(),
        n: a.n,
        k: a.k,
        pool: a.pool,
        engines: a.engines.iter().map(|&e| e.into()).collect(),
        indicators: a.indicators.iter().map(|&i| i.into()).collect(),
        repeats: a.repeats,
        seed: a.seed,
    };
    let runs = bench::run(&cfg)?;
    let csv = bench::render_csv(&cfg, &runs);
    io::write_text(&a.out, &csv)?;
    if let Some(path) = &a.series {
        io::write_text(path, &bench::render_series(&cfg, &runs))?;
    }
    for line in csv.lines().filter(|l| l.contains(",mean,")) {
        println!("{line}");
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs) -> Result<()> {
    let plan = if a.quick { Plan::QUICK } else { Plan::FULL };
    let reports = verify::run_all(&plan, a.seed, a.inject_fault);
    for r in &reports {
        println!("{}", r.line());
    }
    let text = serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n";
    io::write_text(&a.report, &text)?;
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.name.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::VerifyFailed(failed.join(", ")))
    }
}

fn cmd_gen_front(a: &GenFrontArgs) -> Result<()> {
    let spec = FrontSpec::new(a.family, a.m, a.n, a.seed).with_pool(a.pool.unwrap_or(a.n));
    let set = gen_front(&spec)?;
    let rows: Vec<&[f64]> = set.points().iter().collect();
    io::write_points(&a.out, &rows)?;
    log::info!("{} -> {}", set.provenance, a.out.display());
    Ok(())
}
