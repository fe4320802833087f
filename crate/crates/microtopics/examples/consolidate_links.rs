//! Batch-level link improvement: the dominant entity wins for a
//! multiply-linked spot, matching unlinked spots are promoted, and the
//! rest are eliminated.
//!
//!     cargo run --example consolidate_links

use std::collections::BTreeSet;

use microtopics::collective::{
    consolidate_links, spot_entity_table, ElementOrigin, LinkedPost, SpotLink,
};

fn post(id: &str, links: &[(&str, &str)], unlinked: &[&str]) -> LinkedPost {
    LinkedPost {
        post_id: id.into(),
        text: String::new(),
        links: links
            .iter()
            .map(|(spot, entity)| SpotLink {
                spot: (*spot).into(),
                entity_iri: (*entity).into(),
                origin: ElementOrigin::Linker,
            })
            .collect(),
        unlinked_spots: unlinked.iter().map(|s| s.to_string()).collect(),
    }
}

fn main() {
    let mut posts = Vec::new();
    // ten posts link "clinton" to Hillary Clinton, two to Bill Clinton
    for i in 0..10 {
        posts.push(post(
            &format!("h{i}"),
            &[("clinton", "http://dbpedia.org/resource/Hillary_Clinton")],
            &[],
        ));
    }
    for i in 0..2 {
        posts.push(post(
            &format!("b{i}"),
            &[("clinton", "http://dbpedia.org/resource/Bill_Clinton")],
            &[],
        ));
    }
    // one post where the linker left "clinton" unlinked, plus a spot
    // that is linked nowhere in the batch
    posts.push(post("u0", &[], &["clinton", "xyzzy"]));

    let consolidated = consolidate_links(posts);

    println!("spot -> entity after consolidation:");
    for (spot, entity) in spot_entity_table(&consolidated) {
        println!("  {spot} -> {entity}");
    }

    let u0 = consolidated.iter().find(|p| p.post_id == "u0").unwrap();
    println!("\npost u0 links ({} promoted):", u0.links.len());
    for link in &u0.links {
        println!(
            "  `{}` -> {} ({:?})",
            link.spot, link.entity_iri, link.origin
        );
    }
    let eliminated: BTreeSet<&str> = u0.unlinked_spots.iter().map(String::as_str).collect();
    println!("still unlinked: {eliminated:?} (always empty after consolidation)");
}
