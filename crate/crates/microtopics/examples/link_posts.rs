//! Per-post linking stages: preprocessing, mention expansion,
//! dictionary annotation, confidence filtering, and the year filter.
//!
//!     cargo run --example link_posts

use microtopics::corpus::preprocess_text;
use microtopics::linking::{annotate_post, unlinked_spots, DictionaryLinker, Linker, LinkerConfig};
use microtopics::semantics::{apply_year_filter, expand_mentions, HandleMap};

fn data(file: &str) -> String {
    format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR"))
}

fn main() -> anyhow::Result<()> {
    let linker = DictionaryLinker::from_path(data("dictionary.json").as_ref())?;
    let handles = HandleMap::from_path(data("handles.json").as_ref())?;
    let config = LinkerConfig::default();

    let raw_text =
        "RT @HillaryClinton: the #debate on stop and frisk continues http://t.co/xyz low confidence example";
    println!("raw:          {raw_text}");

    let pre = preprocess_text(raw_text);
    println!("preprocessed: {pre}");

    let (expanded, substitutions) = expand_mentions(&pre, &handles);
    println!("expanded:     {expanded}");
    for sub in &substitutions {
        println!("  mention {} -> {}", sub.handle, sub.entity_iri);
    }

    let raw = linker.annotate(&expanded)?;
    let accepted = annotate_post(&expanded, &linker, &config)?;
    println!(
        "\naccepted annotations (rho > {}, p > {}):",
        config.tau_rho, config.tau_p
    );
    for a in &accepted {
        println!(
            "  [{}..{}) `{}` -> {} (rho={}, p={})",
            a.start, a.end, a.spot, a.entity_iri, a.rho, a.link_prob
        );
        let keep = apply_year_filter(a, &expanded);
        if !keep {
            println!("    ^ dropped by the year filter");
        }
    }
    println!("unlinked spots: {:?}", unlinked_spots(&raw, &accepted));
    Ok(())
}
