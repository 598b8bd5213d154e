//! Command-line front end: generate, measure, compare, sweep, stability,
//! ingest.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use socgen::attributes::{load_profiles, load_schemas, save_profiles, save_schemas};
use socgen::config::{config_to_toml, load_config};
use socgen::error::{Error, Result};
use socgen::experiments::{load_sweep, run_sweep, stability, stability_csv};
use socgen::fixtures::{preset_by_name, TABLE_ONE};
use socgen::generator::{generate, GenerationConfig};
use socgen::graph::Graph;
use socgen::ingestion::{extract_proportions, load_dataset, save_dataset, IngestOptions};
use socgen::metrics::write_degree_histogram;
use socgen::report::{
    compare, comparison_csv, comparison_table, format_value, MetricsReport, ReportFormat, ReportTable,
};

#[derive(Parser)]
#[command(
    name = "socgen",
    version,
    about = "Synthetic social networks from demographic and structural parameters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a network and write edges, profiles, schema, trace and report.
    Generate(GenerateArgs),
    /// Compute the metrics report of an edge list.
    Measure(MeasureArgs),
    /// Compare two reports side by side.
    Compare(CompareArgs),
    /// Run a parameter sweep described by a sweep file.
    Sweep(SweepArgs),
    /// Standard deviation of metrics over repeated runs of one config.
    Stability(StabilityArgs),
    /// Load a real network with attributes and derive its schema and report.
    Ingest(IngestArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Kv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ReportFormat::Csv,
            Format::Kv => ReportFormat::Kv,
        }
    }
}

#[derive(Args)]
struct Source {
    /// Generation config (TOML).
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in reference config by network name, e.g. `caltech`.
    #[arg(long)]
    preset: Option<String>,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
}

impl Source {
    fn load(&self) -> Result<GenerationConfig> {
        let mut config = match (&self.config, &self.preset) {
            (Some(path), _) => load_config(path)?,
            (None, Some(name)) => preset_by_name(name)
                .ok_or_else(|| {
                    let names: Vec<&str> = TABLE_ONE.iter().map(|p| p.name).collect();
                    Error::InvalidArgument(format!("unknown preset `{name}`; known: {}", names.join(", ")))
                })?
                .config(0),
            (None, None) => return Err(Error::InvalidArgument("give --config or --preset".into())),
        };
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        config.validate()?;
        Ok(config)
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    source: Source,
    /// Output prefix.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "kv")]
    format: Format,
}

#[derive(Args)]
struct MeasureArgs {
    /// Edge list (`i<TAB>j`, one edge per line).
    #[arg(long)]
    edges: PathBuf,
    /// Node count, for graphs with isolated trailing nodes.
    #[arg(long)]
    nodes: Option<usize>,
    /// Profiles CSV as written by `generate`; needs --schema.
    #[arg(long, requires = "schema", conflicts_with = "attributes")]
    profiles: Option<PathBuf>,
    /// Schema TOML matching --profiles.
    #[arg(long, requires = "profiles")]
    schema: Option<PathBuf>,
    /// Attribute CSV in the ingestion format (`id,attr1,...`).
    #[arg(long)]
    attributes: Option<PathBuf>,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "kv")]
    format: Format,
}

#[derive(Args)]
struct CompareArgs {
    a: PathBuf,
    b: PathBuf,
    /// Also write the comparison CSV here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stdout format: `kv` prints an aligned table, `csv` the CSV.
    #[arg(long, value_enum, default_value = "kv")]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep file (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Overrides the base config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// CSV path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StabilityArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct IngestArgs {
    #[arg(long)]
    edges: PathBuf,
    #[arg(long)]
    attributes: PathBuf,
    /// Attributes treated as numerical (comma separated).
    #[arg(long, value_delimiter = ',', default_values_t = IngestOptions::default().numerical)]
    numerical: Vec<String>,
    /// Output prefix.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "kv")]
    format: Format,
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

fn report_suffix(format: Format) -> &'static str {
    match format {
        Format::Csv => ".report.csv",
        Format::Kv => ".report.txt",
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(report: &MetricsReport, format: Format) -> String {
    match format {
        Format::Csv => report.to_csv(),
        Format::Kv => report.to_kv(),
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let config = args.source.load()?;
    let out = generate(&config)?;
    let prefix = &args.out;
    if let Some(dir) = prefix.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    out.graph.save_edge_list(with_suffix(prefix, ".edges"))?;
    save_profiles(&out.profiles, &config.schemas, with_suffix(prefix, ".profiles.csv"))?;
    save_schemas(&config.schemas, with_suffix(prefix, ".schema.toml"))?;
    write_text(&with_suffix(prefix, ".config.toml"), &config_to_toml(&config))?;
    let trace_path = with_suffix(prefix, ".trace.csv");
    let mut trace = Vec::new();
    out.trace.write_csv(&mut trace).map_err(|e| Error::io(&trace_path, e))?;
    fs::write(&trace_path, trace).map_err(|e| Error::io(&trace_path, e))?;
    let hist_path = with_suffix(prefix, ".degrees.csv");
    let mut hist = Vec::new();
    write_degree_histogram(&out.graph, &mut hist).map_err(|e| Error::io(&hist_path, e))?;
    fs::write(&hist_path, hist).map_err(|e| Error::io(&hist_path, e))?;
    let report = MetricsReport::compute(&out.graph, Some((&out.profiles, &config.schemas)))?;
    report.save(with_suffix(prefix, report_suffix(args.format)), args.format.into())?;
    eprintln!(
        "generated {} nodes, {} edges -> {}.*",
        out.graph.node_count(),
        out.graph.edge_count(),
        prefix.display()
    );
    Ok(())
}

fn cmd_measure(args: MeasureArgs) -> Result<()> {
    let report = if let Some(attributes) = &args.attributes {
        let options = IngestOptions::default();
        let bundle = load_dataset(&args.edges, attributes, &options)?;
        MetricsReport::compute(&bundle.graph, Some((&bundle.profiles, &bundle.schemas)))?
    } else if let (Some(profiles), Some(schema)) = (&args.profiles, &args.schema) {
        let schemas = load_schemas(schema)?;
        let profiles = load_profiles(profiles, &schemas)?;
        let n = args.nodes.unwrap_or(profiles.len());
        if n != profiles.len() {
            return Err(Error::InvalidArgument(format!(
                "--nodes {n} disagrees with {} profiles",
                profiles.len()
            )));
        }
        let graph = Graph::load_edge_list(&args.edges, Some(n))?;
        MetricsReport::compute(&graph, Some((&profiles, &schemas)))?
    } else {
        let graph = Graph::load_edge_list(&args.edges, args.nodes)?;
        MetricsReport::compute(&graph, None)?
    };
    emit(args.out.as_deref(), &render(&report, args.format))
}

fn cmd_compare(args: CompareArgs) -> Result<()> {
    let a = ReportTable::load(&args.a)?;
    let b = ReportTable::load(&args.b)?;
    let rows = compare(&a, &b)?;
    let csv = comparison_csv(&rows);
    if let Some(out) = &args.out {
        write_text(out, &csv)?;
    }
    match args.format {
        Format::Csv => print!("{csv}"),
        Format::Kv => print!("{}", comparison_table(&rows)),
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let mut spec = load_sweep(&args.config)?;
    if let Some(seed) = args.seed {
        spec.base.seed = seed;
    }
    let result = run_sweep(&spec)?;
    emit(args.out.as_deref(), &result.to_csv())
}

fn cmd_stability(args: StabilityArgs) -> Result<()> {
    let config = args.source.load()?;
    let rows = stability(&config, args.runs)?;
    let text = match args.format {
        Format::Csv => stability_csv(&rows),
        Format::Kv => rows
            .iter()
            .map(|r| {
                let name = r.metric.name();
                format!(
                    "{name}.mean = {}\n{name}.std_dev = {}\n",
                    format_value(r.mean),
                    format_value(r.std_dev)
                )
            })
            .collect(),
    };
    emit(args.out.as_deref(), &text)
}

fn cmd_ingest(args: IngestArgs) -> Result<()> {
    let options = IngestOptions {
        numerical: args.numerical,
    };
    let bundle = load_dataset(&args.edges, &args.attributes, &options)?;
    let prefix = &args.out;
    save_dataset(
        &bundle,
        with_suffix(prefix, ".edges"),
        with_suffix(prefix, ".attributes.csv"),
    )?;
    save_schemas(&extract_proportions(&bundle)?, with_suffix(prefix, ".schema.toml"))?;
    let report = MetricsReport::compute(&bundle.graph, Some((&bundle.profiles, &bundle.schemas)))?;
    report.save(with_suffix(prefix, report_suffix(args.format)), args.format.into())?;
    eprintln!(
        "ingested {} nodes, {} edges, {} attributes -> {}.*",
        bundle.graph.node_count(),
        bundle.graph.edge_count(),
        bundle.schemas.len(),
        prefix.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Measure(a) => cmd_measure(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Stability(a) => cmd_stability(a),
        Command::Ingest(a) => cmd_ingest(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
