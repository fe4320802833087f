//! Local analyses over emitted topic JSON: co-occurring persons,
//! interval aggregation, and the element timeline.
//!
//!     cargo run --example query_topics

use std::collections::BTreeSet;
use std::path::Path;

use microtopics::analyze::{
    co_persons, element_timeline, intervals_with, timeline_csv, TopicIndex,
};
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
    run_pipeline(Path::new(&data("sample_posts.jsonl")), &config)?;

    let index = TopicIndex::load(&[out_dir.path().join("topics.json")])?;
    println!("{} topics loaded", index.topics().len());

    let dbr = "http://dbpedia.org/resource/";
    let anchor = format!("{dbr}Hillary_Clinton");
    println!("\npersons co-occurring with {anchor}:");
    for (person, count) in co_persons(&index, &anchor) {
        println!("  {count} topic(s): {person}");
    }

    let targets: BTreeSet<String> =
        [format!("{dbr}Abortion"), format!("{dbr}Women's_health")].into();
    println!("\nintervals discussing women's issues:");
    for (start, end) in intervals_with(&index, &targets) {
        println!("  [{start}, {end})");
    }

    let persons: BTreeSet<String> = [
        format!("{dbr}Hillary_Clinton"),
        format!("{dbr}Donald_Trump"),
    ]
    .into();
    println!("\nelement timeline (top 5):");
    print!("{}", timeline_csv(&element_timeline(&index, &persons, 5)));
    Ok(())
}
