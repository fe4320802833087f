use std::collections::BTreeSet;
use std::path::PathBuf;

use anyhow::Context;
use chrono::SecondsFormat;
use clap::{Args, Parser, Subcommand};

use microtopics::analyze::{
    co_persons, element_timeline, intervals_with, timeline_csv, TopicIndex,
};
use microtopics::pipeline::{dump_graph, dump_links, run_pipeline};
use microtopics::PipelineConfig;

#[derive(Parser)]
#[command(
    name = "microtopics",
    version,
    about = "Extract semantic topics from micropost collections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the extraction pipeline over a JSON-lines corpus
    Run(RunArgs),
    /// Query emitted topic JSON documents
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
    /// Print the per-batch co-occurrence graph as a TSV edge list
    DumpGraph(DumpGraphArgs),
    /// Print the consolidated spot-to-entity table per batch as JSON
    DumpLinks(CorpusArgs),
}

#[derive(Args)]
struct CorpusArgs {
    /// JSON-lines corpus file
    #[arg(long)]
    corpus: PathBuf,
    /// key=value configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override any configuration key
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long)]
    interval_minutes: Option<u32>,
    /// Linker mode: dictionary or remote
    #[arg(long)]
    linker: Option<String>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Worker pool width (0 = one per core)
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct DumpGraphArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Dump the pruned graph instead of the full one
    #[arg(long)]
    pruned: bool,
}

#[derive(Subcommand)]
enum AnalyzeCommand {
    /// Persons co-occurring with an anchor, ranked by topic count
    CoPersons {
        /// Topic JSON files or directories
        #[arg(long, required = true)]
        topics: Vec<PathBuf>,
        #[arg(long)]
        anchor: String,
    },
    /// Observation intervals of topics containing any target entity
    Intervals {
        #[arg(long, required = true)]
        topics: Vec<PathBuf>,
        #[arg(long = "target", required = true)]
        targets: Vec<String>,
    },
    /// Top discussion elements over time for a set of persons, as CSV
    Timeline {
        #[arg(long, required = true)]
        topics: Vec<PathBuf>,
        #[arg(long = "person", required = true)]
        persons: Vec<String>,
        #[arg(long, default_value_t = 10)]
        top_k: usize,
    },
}

fn load_config(args: &CorpusArgs) -> anyhow::Result<PipelineConfig> {
    let mut config = match &args.config {
        Some(path) => PipelineConfig::from_file(path)
            .with_context(|| format!("loading {}", path.display()))?,
        None => PipelineConfig::default(),
    };
    for kv in &args.set {
        let (key, value) = kv
            .split_once('=')
            .with_context(|| format!("--set {kv}: expected KEY=VALUE"))?;
        config.set(key.trim(), value.trim())?;
    }
    Ok(config)
}

fn main() -> anyhow::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => {
            let mut config = load_config(&args.corpus)?;
            if let Some(v) = args.interval_minutes {
                config.interval_minutes = v;
            }
            if let Some(v) = args.linker {
                config.linker = v.parse()?;
            }
            if let Some(v) = args.cache_dir {
                config.cache_dir = Some(v);
            }
            if let Some(v) = args.out_dir {
                config.out_dir = v;
            }
            if let Some(v) = args.workers {
                config.workers = v;
            }
            let report = run_pipeline(&args.corpus.corpus, &config)?;
            print!("{}", report.render_table());
            println!(
                "{} topics across {} batches -> {}",
                report.total_topics(),
                report.batches.len(),
                config.out_dir.display()
            );
            if !report.failures.is_empty() {
                anyhow::bail!("{} batch(es) failed", report.failures.len());
            }
        }
        Command::Analyze(cmd) => run_analyze(cmd)?,
        Command::DumpGraph(args) => {
            let config = load_config(&args.corpus)?;
            for (start, edge_list) in dump_graph(&args.corpus.corpus, &config, args.pruned)? {
                println!(
                    "# batch {}",
                    start.to_rfc3339_opts(SecondsFormat::Secs, true)
                );
                print!("{edge_list}");
            }
        }
        Command::DumpLinks(args) => {
            let config = load_config(&args)?;
            for (start, table) in dump_links(&args.corpus, &config)? {
                println!(
                    "# batch {}",
                    start.to_rfc3339_opts(SecondsFormat::Secs, true)
                );
                println!("{}", serde_json::to_string_pretty(&table)?);
            }
        }
    }
    Ok(())
}

fn run_analyze(cmd: AnalyzeCommand) -> anyhow::Result<()> {
    match cmd {
        AnalyzeCommand::CoPersons { topics, anchor } => {
            let index = TopicIndex::load(&topics)?;
            let ranked = co_persons(&index, &anchor);
            let rows: Vec<serde_json::Value> = ranked
                .into_iter()
                .map(|(person, count)| serde_json::json!({"person": person, "topics": count}))
                .collect();
            println!("{}", serde_json::to_string_pretty(&rows)?);
        }
        AnalyzeCommand::Intervals { topics, targets } => {
            let index = TopicIndex::load(&topics)?;
            let targets: BTreeSet<String> = targets.into_iter().collect();
            let rows: Vec<serde_json::Value> = intervals_with(&index, &targets)
                .into_iter()
                .map(|(start, end)| {
                    serde_json::json!({
                        "start": start.to_rfc3339_opts(SecondsFormat::Secs, true),
                        "end": end.to_rfc3339_opts(SecondsFormat::Secs, true),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&rows)?);
        }
        AnalyzeCommand::Timeline {
            topics,
            persons,
            top_k,
        } => {
            let index = TopicIndex::load(&topics)?;
            let persons: BTreeSet<String> = persons.into_iter().collect();
            let rows = element_timeline(&index, &persons, top_k);
            print!("{}", timeline_csv(&rows));
        }
    }
    Ok(())
}
