//! Topic instantiation and RDF emission.
//!
//! Builds one topic by hand, assigns element kinds, and prints the
//! Turtle and JSON documents plus the vocabulary they reference.
//!
//!     cargo run --example emit_turtle

use std::collections::{BTreeMap, BTreeSet};

use microtopics::cliques::build_topic_set;
use microtopics::collective::{ElementOrigin, LinkedPost, SpotLink};
use microtopics::corpus::{IntervalBatch, Post};
use microtopics::emit::{
    instantiate_topics, serialize_json, serialize_turtle, vocabulary_turtle, TopicoVocab,
};
use microtopics::graph::build_cooc_graph;
use microtopics::semantics::ElementKind;

fn main() {
    let dbr = "http://dbpedia.org/resource/";
    let elements = [
        (format!("{dbr}Donald_Trump"), ElementKind::Person),
        (format!("{dbr}Lester_Holt"), ElementKind::Person),
        (format!("{dbr}Terry_stop"), ElementKind::Other),
        (format!("{dbr}Racial_profiling"), ElementKind::Other),
    ];

    let posts: Vec<Post> = (0..3)
        .map(|i| Post {
            id: format!("p{i}"),
            text: String::new(),
            created_at: format!("2016-09-27T01:0{i}:30Z").parse().unwrap(),
            author: None,
        })
        .collect();
    let batch = IntervalBatch {
        start: "2016-09-27T01:00:00Z".parse().unwrap(),
        end: "2016-09-27T01:04:00Z".parse().unwrap(),
        posts,
    };

    let linked: Vec<LinkedPost> = batch
        .posts
        .iter()
        .map(|p| LinkedPost {
            post_id: p.id.clone(),
            text: String::new(),
            links: elements
                .iter()
                .map(|(iri, _)| SpotLink {
                    spot: iri.rsplit('/').next().unwrap().to_lowercase(),
                    entity_iri: iri.clone(),
                    origin: ElementOrigin::Linker,
                })
                .collect(),
            unlinked_spots: BTreeSet::new(),
        })
        .collect();
    let graph = build_cooc_graph(&linked, batch.size());

    let kinds: BTreeMap<String, ElementKind> = elements
        .iter()
        .map(|(iri, kind)| (iri.clone(), *kind))
        .collect();
    let set = build_topic_set(
        vec![elements.iter().map(|(iri, _)| iri.clone()).collect()],
        &linked,
        &graph,
    );

    let vocab = TopicoVocab::default();
    let topics = instantiate_topics(
        &set,
        &kinds,
        &batch,
        "http://example.org",
        "2016-09-27T01:04:00Z".parse().unwrap(),
        "http://example.org/agent/microtopics",
    );

    println!("--- Turtle ---");
    print!("{}", serialize_turtle(&topics, &vocab));
    println!("\n--- JSON sidecar ---");
    print!("{}", serialize_json(&topics));
    println!("\n--- vocabulary (first lines) ---");
    for line in vocabulary_turtle(&vocab).lines().take(12) {
        println!("{line}");
    }
}
