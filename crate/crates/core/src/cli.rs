//! The `tokbench` command line.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use unicode_normalization::UnicodeNormalization;

use crate::bpe::{ingest_external_tokens, load_bpe};
use crate::corpus::{compute_stats, load_corpus, CorpusRecord};
use crate::error::{Error, Result};
use crate::manifest::{RunManifest, TokenizerKind, TokenizerSpec};
use crate::metrics::{evaluate_tokenizer, read_records, records_to_csv, EvalConfig, MetricRecord, TokenSource};
use crate::morphology::{bundled_resource, load_resource, MorphologyResource};
use crate::report::{emit_plot_data, leaderboard, Layout, Metric};
use crate::surface::turkish_fold;

pub const OUTPUT_DIR_ENV: &str = "TOKBENCH_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "tokbench", version, about = "Linguistic and efficiency metrics for subword tokenizers")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every tokenizer in a run manifest.
    Benchmark(BenchmarkArgs),
    /// Show the morphological analysis of single words.
    Analyze(AnalyzeArgs),
    /// Correlate metrics across tokenizer records.
    Correlate(CorrelateArgs),
    /// Render a leaderboard from metric records.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    /// Run manifest (TOML).
    pub manifest: PathBuf,
    #[arg(long)]
    pub repeats: Option<u32>,
    /// Count only alphabetic tokens in the denominators.
    #[arg(long)]
    pub alpha_only: bool,
    #[arg(long)]
    pub count_bound_morphemes_as_pure: bool,
    #[arg(long, env = OUTPUT_DIR_ENV)]
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(required = true)]
    pub tokens: Vec<String>,
    /// Morphology resource (JSON); the bundled lexicon when omitted.
    #[arg(long)]
    pub resource: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CorrelateArgs {
    /// Metric CSV, metric JSON, or a directory of metric JSON files.
    pub input: PathBuf,
    /// Comma-separated metric names; every metric all records share when omitted.
    #[arg(long, value_delimiter = ',')]
    pub metrics: Vec<String>,
    /// Write heatmap CSV, scatter JSON, and the table here.
    #[arg(long, env = OUTPUT_DIR_ENV)]
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TableFormat {
    Markdown,
    Csv,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = Layout::MetricsAsRows)]
    pub layout: Layout,
    #[arg(long, value_enum, default_value_t = TableFormat::Markdown)]
    pub format: TableFormat,
}

/// Runs a parsed command and returns what it would print.
pub fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Benchmark(a) => benchmark(a, cli.json),
        Command::Analyze(a) => analyze(a, cli.json),
        Command::Correlate(a) => correlate(a, cli.json),
        Command::Report(a) => report(a, cli.json),
    }
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn evaluate_spec(
    spec: &TokenizerSpec,
    corpus: &[CorpusRecord],
    resource: &MorphologyResource,
    config: &EvalConfig,
) -> Result<MetricRecord> {
    let mut record = match spec.kind {
        TokenizerKind::BpeFile => {
            let model = load_bpe(&spec.path)?.with_name(spec.name.clone());
            evaluate_tokenizer(TokenSource::Bpe(&model), corpus, resource, config, spec.metadata)?
        }
        TokenizerKind::ExternalDump => {
            let dump = ingest_external_tokens(&spec.path)?;
            evaluate_tokenizer(TokenSource::External(&dump), corpus, resource, config, spec.metadata)?
        }
    };
    record.tokenizer_name = spec.name.clone();
    Ok(record)
}

/// File-name-safe form of a tokenizer name.
fn file_stem_for(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || "-_.".contains(c) { c } else { '_' })
        .collect()
}

/// Writes every file into a staging directory first and moves them into
/// `dir` only once all of them were written.
fn write_outputs(dir: &Path, files: &[(String, String)]) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let staging = dir.join(format!(".tokbench-incomplete-{}", std::process::id()));
    if staging.exists() {
        std::fs::remove_dir_all(&staging).map_err(|e| Error::io(&staging, e))?;
    }
    std::fs::create_dir(&staging).map_err(|e| Error::io(&staging, e))?;
    let result = (|| {
        for (name, content) in files {
            let p = staging.join(name);
            std::fs::write(&p, content).map_err(|e| Error::io(&p, e))?;
        }
        for (name, _) in files {
            let to = dir.join(name);
            std::fs::rename(staging.join(name), &to).map_err(|e| Error::io(&to, e))?;
        }
        Ok(())
    })();
    let _ = std::fs::remove_dir_all(&staging);
    result
}

#[derive(Serialize)]
struct Hardware {
    os: &'static str,
    arch: &'static str,
    logical_cpus: usize,
    cpu_model: Option<String>,
}

fn hardware() -> Hardware {
    let cpu_model = std::fs::read_to_string("/proc/cpuinfo").ok().and_then(|info| {
        info.lines()
            .find(|l| l.starts_with("model name"))
            .and_then(|l| l.split_once(':'))
            .map(|(_, v)| v.trim().to_string())
    });
    Hardware {
        os: std::env::consts::OS,
        arch: std::env::consts::ARCH,
        logical_cpus: std::thread::available_parallelism().map_or(1, |n| n.get()),
        cpu_model,
    }
}

fn benchmark(args: BenchmarkArgs, json: bool) -> Result<String> {
    let mut manifest = RunManifest::load(&args.manifest)?;
    if let Some(r) = args.repeats {
        if r == 0 {
            return Err(Error::InvalidInput("--repeats must be at least 1".into()));
        }
        manifest.options.repeats = r;
    }
    manifest.options.alpha_only |= args.alpha_only;
    manifest.options.count_bound_morphemes_as_pure |= args.count_bound_morphemes_as_pure;
    if let Some(dir) = args.output_dir {
        manifest.options.output_dir = dir;
    }
    let mut stems = std::collections::BTreeSet::new();
    for t in &manifest.tokenizers {
        if !stems.insert(file_stem_for(&t.name)) {
            return Err(Error::Manifest(format!(
                "tokenizer name {:?} collides with another after file-name escaping",
                t.name
            )));
        }
    }

    let started_at = chrono::Utc::now();
    let corpus = load_corpus(&manifest.corpus_path, manifest.corpus_format)?;
    let corpus_stats = compute_stats(&corpus);
    let resource = match &manifest.morphology_resource {
        Some(p) => load_resource(p)?,
        None => bundled_resource(),
    };
    let config = manifest.options.eval_config();

    let mut records = Vec::with_capacity(manifest.tokenizers.len());
    for spec in &manifest.tokenizers {
        log::info!("evaluating {}", spec.name);
        let record = evaluate_spec(spec, &corpus, &resource, &config)
            .map_err(|e| e.for_tokenizer(&spec.name))?;
        records.push(record);
    }
    let finished_at = chrono::Utc::now();

    let mut files = Vec::new();
    for r in &records {
        let stem = file_stem_for(&r.tokenizer_name);
        files.push((format!("{stem}.metrics.json"), format!("{}\n", r.to_json())));
        files.push((format!("{stem}.metrics.csv"), records_to_csv(std::slice::from_ref(r))));
    }
    let board = leaderboard(&records, Layout::MetricsAsRows);
    files.push(("metrics.csv".into(), records_to_csv(&records)));
    files.push(("leaderboard.md".into(), board.to_markdown()));
    files.push(("leaderboard.csv".into(), board.to_csv()));
    files.push((
        "leaderboard_by_tokenizer.md".into(),
        leaderboard(&records, Layout::TokenizersAsRows).to_markdown(),
    ));
    let metadata = json!({
        "tool": "tokbench",
        "version": crate::VERSION,
        "manifest": args.manifest,
        "config": &manifest,
        "eval_config": config,
        "timing": format!(
            "encode only; median of {} runs after one warm-up pass", config.repeats
        ),
        "corpus": corpus_stats,
        "morphology_resource_version": resource.version(),
        "hardware": hardware(),
        "started_at": started_at.to_rfc3339(),
        "finished_at": finished_at.to_rfc3339(),
    });
    files.push(("run_metadata.json".into(), to_json(&metadata)));
    let out_dir = &manifest.options.output_dir;
    write_outputs(out_dir, &files)?;

    if json {
        return Ok(to_json(&json!({
            "output_dir": out_dir,
            "records": records,
        })));
    }
    Ok(format!(
        "{}\nwrote {} files to {}\n",
        board.to_markdown(),
        files.len(),
        out_dir.display()
    ))
}

#[derive(Serialize)]
struct Analysis {
    token: String,
    folded: String,
    parse: Option<crate::morphology::Parse>,
    valid: bool,
    pure: bool,
}

fn analyze(args: AnalyzeArgs, json: bool) -> Result<String> {
    let resource = match &args.resource {
        Some(p) => load_resource(p)?,
        None => bundled_resource(),
    };
    let analyses: Vec<Analysis> = args
        .tokens
        .iter()
        .map(|t| {
            let folded = turkish_fold(&t.nfc().collect::<String>());
            let parse = resource.parse(&folded);
            Analysis {
                token: t.clone(),
                valid: parse.is_some(),
                pure: parse.as_ref().is_some_and(|p| p.is_pure),
                folded,
                parse,
            }
        })
        .collect();
    if json {
        return Ok(to_json(&analyses));
    }
    let mut out = String::new();
    for a in &analyses {
        let Some(p) = &a.parse else {
            out.push_str(&format!("{}: NO-PARSE\n", a.token));
            continue;
        };
        out.push_str(&format!("{}: {}\n", a.token, p.segmentation().replace('+', " + ")));
        let kind = if p.root_atomic { "atomic" } else { "not atomic" };
        out.push_str(&format!("  root: {} ({}, lemma {})\n", p.root, kind, p.lemma));
        if !p.suffix_chain.is_empty() {
            let chain: Vec<String> =
                p.suffix_chain.iter().map(|m| format!("{}:{}", m.rule, m.allomorph)).collect();
            out.push_str(&format!("  suffixes: {}\n", chain.join(" ")));
        }
        let yn = |b: bool| if b { "yes" } else { "no" };
        out.push_str(&format!("  valid: {}\n  pure: {}\n", yn(a.valid), yn(a.pure)));
    }
    Ok(out)
}

fn correlate(args: CorrelateArgs, json: bool) -> Result<String> {
    let records = read_records(&args.input)?;
    if records.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "correlation needs at least 3 tokenizer records; {} has {}",
            args.input.display(),
            records.len()
        )));
    }
    let metrics = args
        .metrics
        .iter()
        .map(|m| m.parse())
        .collect::<Result<Vec<Metric>>>()?;
    let plot = emit_plot_data(&records, &metrics)?;
    let table = plot.matrix.annotated_table();
    if let Some(dir) = &args.output_dir {
        let mut files = vec![
            ("heatmap.csv".to_string(), plot.heatmap_csv()),
            ("correlation.txt".to_string(), table.clone()),
            ("correlation.json".to_string(), to_json(&plot.matrix)),
        ];
        if let Some(s) = plot.scatter_json() {
            files.push(("scatter.json".to_string(), s + "\n"));
        }
        files.push(("plot_metadata.json".to_string(), to_json(&json!({
            "records": records.len(),
            "warnings": plot.warnings,
        }))));
        write_outputs(dir, &files)?;
    }
    if json {
        return Ok(to_json(&plot));
    }
    let mut out = table;
    for w in &plot.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    Ok(out)
}

fn report(args: ReportArgs, json: bool) -> Result<String> {
    let records = read_records(&args.input)?;
    let table = leaderboard(&records, args.layout);
    if json {
        return Ok(to_json(&table));
    }
    Ok(match args.format {
        TableFormat::Markdown => table.to_markdown(),
        TableFormat::Csv => table.to_csv(),
    })
}
