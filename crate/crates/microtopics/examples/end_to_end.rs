//! Full pipeline run over the bundled sample corpus: load, batch,
//! link, consolidate, classify, graph, cliques, merge, emit.
//!
//!     cargo run --example end_to_end

use std::path::Path;

use microtopics::pipeline::run_pipeline;
use microtopics::PipelineConfig;

fn data(file: &str) -> String {
    format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR"))
}

fn main() -> anyhow::Result<()> {
    let out_dir = tempfile::tempdir()?;

    let config = PipelineConfig {
        dictionary: Some(data("dictionary.json").into()),
        type_db: Some(data("type_db.json").into()),
        handle_map: Some(data("handles.json").into()),
        out_dir: out_dir.path().to_path_buf(),
        ..PipelineConfig::default()
    };

    let corpus = data("sample_posts.jsonl");
    let report = run_pipeline(Path::new(&corpus), &config)?;

    print!("{}", report.render_table());
    println!();
    println!("emitted files:");
    let mut files: Vec<_> = std::fs::read_dir(out_dir.path())?
        .filter_map(|e| e.ok().map(|e| e.file_name()))
        .collect();
    files.sort();
    for f in files {
        println!("  {}", f.to_string_lossy());
    }
    println!();

    let aggregate = std::fs::read_to_string(out_dir.path().join("topics.ttl"))?;
    println!("--- topics.ttl ---");
    print!("{aggregate}");
    Ok(())
}
