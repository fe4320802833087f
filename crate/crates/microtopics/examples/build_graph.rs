//! Co-occurrence graph construction and weak-edge pruning.
//!
//! A pair co-occurring in 6 of 6000 posts weighs exactly 0.001 and is
//! pruned at tau_e = 0.001 (the comparison is strict); 7 co-occurrences
//! survive.
//!
//!     cargo run --example build_graph

use std::collections::BTreeSet;

use microtopics::collective::{ElementOrigin, LinkedPost, SpotLink};
use microtopics::graph::{build_cooc_graph, prune_graph};

fn post(id: usize, elements: &[&str]) -> LinkedPost {
    LinkedPost {
        post_id: format!("p{id}"),
        text: String::new(),
        links: elements
            .iter()
            .map(|e| SpotLink {
                spot: e.to_lowercase(),
                entity_iri: format!("http://dbpedia.org/resource/{e}"),
                origin: ElementOrigin::Linker,
            })
            .collect(),
        unlinked_spots: BTreeSet::new(),
    }
}

fn main() {
    let mut posts = Vec::new();
    let mut id = 0;
    // a strong pair: 60 posts
    for _ in 0..60 {
        posts.push(post(id, &["Donald_Trump", "Debate"]));
        id += 1;
    }
    // exactly at the threshold: 6 posts -> w = 0.001
    for _ in 0..6 {
        posts.push(post(id, &["Tax", "Middle_class"]));
        id += 1;
    }
    // just above: 7 posts
    for _ in 0..7 {
        posts.push(post(id, &["Abortion", "Women's_health"]));
        id += 1;
    }

    let batch_size = 6000;
    let graph = build_cooc_graph(&posts, batch_size);
    println!("unpruned graph ({} posts):", batch_size);
    print!("{}", graph.to_edge_list());

    let tau_e = 0.001;
    let pruned = prune_graph(&graph, tau_e);
    println!("\npruned at tau_e = {tau_e} (strictly greater survives):");
    print!("{}", pruned.to_edge_list());
    println!(
        "\n{} of {} edges and {} of {} vertices survive",
        pruned.edge_count(),
        graph.edge_count(),
        pruned.vertex_count(),
        graph.vertex_count()
    );
}
