//! Topic identification on a small graph: maximal cliques, elimination
//! of weak small cliques, and merging of similar cliques.
//!
//! The graph is a hub E0 connected to a triangle {E0,E1,E2}, a
//! 4-clique {E0,E3,E4,E5}, and a pendant E6; the E1-E3 edge is too weak
//! to survive pruning. Three topics emerge, and the 2-clique {E0,E6}
//! dies once freq(E6) falls below tau_kc.
//!
//!     cargo run --example extract_cliques

use std::collections::BTreeSet;

use microtopics::cliques::{
    enumerate_maximal_cliques, filter_small_cliques, jaccard_similarity, merge_similar_cliques,
    CliqueBudget,
};
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
                entity_iri: (*e).to_string(),
                origin: ElementOrigin::Linker,
            })
            .collect(),
        unlinked_spots: BTreeSet::new(),
    }
}

fn main() -> anyhow::Result<()> {
    let mut posts = Vec::new();
    let mut id = 0;
    let mut push = |posts: &mut Vec<LinkedPost>, elements: &[&str], copies: usize| {
        for _ in 0..copies {
            posts.push(post(id, elements));
            id += 1;
        }
    };
    push(&mut posts, &["E0", "E1", "E2"], 100);
    push(&mut posts, &["E0", "E3", "E4", "E5"], 100);
    push(&mut posts, &["E0", "E6"], 50);
    push(&mut posts, &["E1", "E3"], 5); // w13 = 0.0005 < tau_e

    let batch_size = 10_000;
    let graph = build_cooc_graph(&posts, batch_size);
    let tau_e = 0.001;
    let pruned = prune_graph(&graph, tau_e);
    println!(
        "pruned graph: {} vertices, {} edges (E1-E3 weighs {} and is gone)",
        pruned.vertex_count(),
        pruned.edge_count(),
        graph.edge_weight("E1", "E3"),
    );

    let cliques = enumerate_maximal_cliques(&pruned, CliqueBudget::default())?;
    println!("\nmaximal cliques:");
    for c in &cliques {
        println!("  {c:?}");
    }

    let tau_kc = 0.01; // freq(E6) = 0.005 < tau_kc, so {E0, E6} dies
    let kept = filter_small_cliques(cliques, &pruned, tau_kc);
    println!("\nafter the small-clique filter (tau_kc = {tau_kc}):");
    for c in &kept {
        println!("  {c:?}");
    }

    let merged = merge_similar_cliques(kept, &graph, 0.8, 0.0005);
    println!("\nafter merging (tau_c = 0.8):");
    for t in &merged {
        println!("  {t:?}");
    }
    println!(
        "\n(the two survivors have Jaccard {:.3}, so nothing merges here)",
        jaccard_similarity(&merged[0], &merged[1])
    );
    Ok(())
}
