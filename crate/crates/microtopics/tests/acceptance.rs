//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines; the harness result line per test carries the
//! same pass/fail information.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::time::Instant;

use chrono::{DateTime, SecondsFormat, Utc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use microtopics::analyze::{co_persons, intervals_with, TopicIndex};
use microtopics::cliques::{
    enumerate_maximal_cliques, filter_small_cliques, jaccard_similarity, merge_similar_cliques,
    CliqueBudget, TopicProvenance,
};
use microtopics::collective::{consolidate_links, ElementOrigin, LinkedPost, SpotLink};
use microtopics::emit::{serialize_turtle, Topic, TopicoVocab};
use microtopics::graph::{build_cooc_graph, prune_graph, CoocGraph};
use microtopics::linking::{filter_annotations, Annotation};
use microtopics::pipeline::run_pipeline;
use microtopics::semantics::{classify_elements, ClassifyConfig, ElementKind, TypeRecord};
use microtopics::PipelineConfig;

fn linked_post(id: &str, elements: &[&str]) -> LinkedPost {
    LinkedPost {
        post_id: id.into(),
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

/// Builds a co-occurrence graph whose edges are exactly `edges` over
/// `names`, one co-occurrence post per edge.
fn graph_from_edges(names: &[String], edges: &[(usize, usize)]) -> CoocGraph {
    let posts: Vec<LinkedPost> = edges
        .iter()
        .enumerate()
        .map(|(k, (i, j))| linked_post(&format!("p{k}"), &[names[*i].as_str(), names[*j].as_str()]))
        .collect();
    build_cooc_graph(&posts, posts.len().max(1) as u64)
}

/// Exhaustive subset-maximality oracle over a bitmask adjacency.
/// `is_clique[s]` is solved bottom-up; maximality is checked directly.
#[allow(clippy::needless_range_loop)]
fn oracle_maximal_cliques(n: usize, adj: &[u32]) -> BTreeSet<Vec<usize>> {
    let full = 1usize << n;
    let mut is_clique = vec![false; full];
    is_clique[0] = true;
    for s in 1..full {
        let v = (s as u32).ilog2() as usize;
        let rest = s & !(1 << v);
        is_clique[s] = is_clique[rest] && (rest as u32 & adj[v]) == rest as u32;
    }
    let mut out = BTreeSet::new();
    for s in 1..full {
        if !is_clique[s] || (s as u32).count_ones() < 2 {
            continue;
        }
        let maximal = (0..n).all(|u| {
            let bit = 1u32 << u;
            s as u32 & bit != 0 || (s as u32 & adj[u]) != s as u32
        });
        if maximal {
            let members: Vec<usize> = (0..n).filter(|v| s & (1 << v) != 0).collect();
            out.insert(members);
        }
    }
    out
}

#[test]
fn criterion_01_clique_oracle() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for case in 0..200 {
        let n = rng.random_range(1..=20usize);
        let mut adj = vec![0u32; n];
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random_bool(0.3) {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                    edges.push((i, j));
                }
            }
        }
        let names: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
        let graph = graph_from_edges(&names, &edges);
        let found =
            enumerate_maximal_cliques(&graph, CliqueBudget::default()).expect("within budget");
        let found_sets: BTreeSet<Vec<usize>> = found
            .iter()
            .map(|clique| {
                clique
                    .iter()
                    .map(|name| name[1..].parse::<usize>().unwrap())
                    .collect()
            })
            .collect();
        let expected = oracle_maximal_cliques(n, &adj);
        assert_eq!(found_sets, expected, "case {case} with n = {n}");
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "200 oracle comparisons took {elapsed:?}"
    );
    println!("PASS clique oracle: 200 random graphs match the exhaustive oracle in {elapsed:?}");
}

/// The seven-vertex example graph: a hub E0 in a triangle, a 4-clique,
/// and a pendant, plus an E1-E3 edge below the pruning threshold.
fn hub_graph() -> CoocGraph {
    let mut posts = Vec::new();
    let mut id = 0;
    let mut push = |posts: &mut Vec<LinkedPost>, elements: &[&str], copies: usize| {
        for _ in 0..copies {
            posts.push(linked_post(&format!("p{id}"), elements));
            id += 1;
        }
    };
    push(&mut posts, &["E0", "E1", "E2"], 100);
    push(&mut posts, &["E0", "E3", "E4", "E5"], 100);
    push(&mut posts, &["E0", "E6"], 50);
    push(&mut posts, &["E1", "E3"], 5);
    build_cooc_graph(&posts, 10_000)
}

#[test]
fn criterion_02_hub_graph_semantics() {
    let graph = hub_graph();
    let tau_e = 0.001;
    assert!(graph.edge_weight("E1", "E3") < tau_e);

    let pruned = prune_graph(&graph, tau_e);
    let cliques = enumerate_maximal_cliques(&pruned, CliqueBudget::default()).unwrap();
    let expected: Vec<Vec<String>> = vec![
        vec!["E0".into(), "E1".into(), "E2".into()],
        vec!["E0".into(), "E3".into(), "E4".into(), "E5".into()],
        vec!["E0".into(), "E6".into()],
    ];
    assert_eq!(cliques, expected, "exactly the three expected cliques");

    // freq(E6) = 50/10000 = 0.005 < tau_kc, so the 2-clique dies
    let tau_kc = 0.01;
    assert!(pruned.vertex_freq("E6") < tau_kc);
    let kept = filter_small_cliques(cliques, &pruned, tau_kc);
    assert_eq!(
        kept,
        vec![
            vec!["E0".to_string(), "E1".to_string(), "E2".to_string()],
            vec![
                "E0".to_string(),
                "E3".to_string(),
                "E4".to_string(),
                "E5".to_string()
            ],
        ]
    );
    println!("PASS hub-graph semantics: three cliques emerge and the weak 2-clique is eliminated");
}

#[test]
fn criterion_03_pruning_arithmetic() {
    let six: Vec<LinkedPost> = (0..6)
        .map(|i| linked_post(&format!("p{i}"), &["A", "B"]))
        .collect();
    let g6 = build_cooc_graph(&six, 6000);
    assert!((g6.edge_weight("A", "B") - 0.001).abs() < 1e-15);
    let pruned6 = prune_graph(&g6, 0.001);
    assert_eq!(pruned6.edge_count(), 0, "w == tau_e is removed (strict >)");
    assert_eq!(pruned6.vertex_count(), 0);

    let seven: Vec<LinkedPost> = (0..7)
        .map(|i| linked_post(&format!("p{i}"), &["A", "B"]))
        .collect();
    let pruned7 = prune_graph(&build_cooc_graph(&seven, 6000), 0.001);
    assert_eq!(pruned7.edge_count(), 1, "7 of 6000 survives");
    println!("PASS pruning arithmetic: 6/6000 weighs 0.001 and is pruned, 7/6000 survives");
}

#[test]
fn criterion_04_planted_topic_recovery() {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let corpus_path = dir.path().join("corpus.jsonl");
    let dict_path = dir.path().join("dictionary.json");
    let out_dir = dir.path().join("out");

    // dictionary: the four planted entities plus 20 noise entities
    let planted = [
        ("alpha", "http://example.org/e/A"),
        ("beta", "http://example.org/e/B"),
        ("gamma", "http://example.org/e/C"),
        ("delta", "http://example.org/e/D"),
    ];
    let mut dict = Vec::new();
    for (spot, iri) in planted {
        dict.push(serde_json::json!({"spots": [spot], "iri": iri, "rho": 0.5, "p": 0.9}));
    }
    for i in 0..20 {
        dict.push(serde_json::json!({
            "spots": [format!("noise{i:02}")],
            "iri": format!("http://example.org/noise/N{i:02}"),
            "rho": 0.5,
            "p": 0.9
        }));
    }
    std::fs::write(&dict_path, serde_json::to_string(&dict).unwrap()).unwrap();

    // 6000 posts inside one 2-minute window: 300 carry the planted
    // element set (5%), every noise pair co-occurs exactly 6 times
    // (w = 0.001, at most tau_e, so pruned), the rest are filler.
    let mut lines = Vec::with_capacity(6000);
    let mut id = 0;
    let mut add_post = |lines: &mut Vec<String>, text: &str| {
        let ts = format!("2016-09-27T01:00:{:02}Z", id % 60);
        lines.push(format!(
            r#"{{"id":"p{id}","text":"{text}","created_at":"{ts}"}}"#
        ));
        id += 1;
    };
    for _ in 0..300 {
        add_post(&mut lines, "alpha beta gamma delta happening");
    }
    for i in 0..20 {
        for j in (i + 1)..20 {
            for _ in 0..6 {
                add_post(&mut lines, &format!("noise{i:02} noise{j:02} chatter"));
            }
        }
    }
    while lines.len() < 6000 {
        add_post(&mut lines, "plain filler chatter");
    }
    assert_eq!(lines.len(), 6000);
    let mut file = std::fs::File::create(&corpus_path).unwrap();
    writeln!(file, "{}", lines.join("\n")).unwrap();

    let config = PipelineConfig {
        dictionary: Some(dict_path),
        out_dir: out_dir.clone(),
        ..PipelineConfig::default()
    };
    let report = run_pipeline(&corpus_path, &config).unwrap();
    assert!(report.failures.is_empty());

    let doc = std::fs::read_to_string(out_dir.join("topics.json")).unwrap();
    let topics = microtopics::emit::parse_json(&doc).unwrap();
    let expected: BTreeSet<String> = planted.iter().map(|(_, iri)| iri.to_string()).collect();
    let recovered = topics.iter().any(|t| {
        t.elements
            .iter()
            .map(|(iri, _)| iri.clone())
            .collect::<BTreeSet<String>>()
            == expected
    });
    assert!(recovered, "planted element set must come back as a topic");
    assert_eq!(topics.len(), 1, "noise pairs below tau_e yield no topics");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "end-to-end took {elapsed:?}");
    println!("PASS planted-topic recovery: {{A,B,C,D}} recovered from 6000 posts in {elapsed:?}");
}

#[test]
fn criterion_05_merge_rule() {
    // shared 4-prefix cliques with an x-y co-occurrence of 6/10000
    let mut posts = Vec::new();
    let mut id = 0;
    for _ in 0..100 {
        posts.push(linked_post(&format!("p{id}"), &["a", "b", "c", "d", "x"]));
        id += 1;
        posts.push(linked_post(&format!("p{id}"), &["a", "b", "c", "d", "y"]));
        id += 1;
    }
    for _ in 0..6 {
        posts.push(linked_post(&format!("p{id}"), &["x", "y"]));
        id += 1;
    }
    let graph = build_cooc_graph(&posts, 10_000);
    let cliques: Vec<Vec<String>> = vec![
        vec!["a".into(), "b".into(), "c".into(), "d".into(), "x".into()],
        vec!["a".into(), "b".into(), "c".into(), "d".into(), "y".into()],
    ];

    // merge at tau_c = 0.6: jaccard 4/6 > 0.6 and w(x, y) = 0.0006 > 0.0005
    let merged = merge_similar_cliques(cliques.clone(), &graph, 0.6, 0.0005);
    assert_eq!(merged.len(), 1);
    assert_eq!(merged[0].len(), 6);

    // no merge at tau_c = 0.8: 4/6 < 0.8
    let unmerged = merge_similar_cliques(cliques.clone(), &graph, 0.8, 0.0005);
    assert_eq!(unmerged, cliques);

    // cross-edge veto: jaccard 0.9 but the exclusive pair never co-occurred
    let shared: Vec<String> = (1..=9).map(|i| format!("e{i}")).collect();
    let mut veto_posts = Vec::new();
    for k in 0..50 {
        let mut with_x: Vec<&str> = shared.iter().map(String::as_str).collect();
        with_x.push("x");
        veto_posts.push(linked_post(&format!("vx{k}"), &with_x));
        let mut with_y: Vec<&str> = shared.iter().map(String::as_str).collect();
        with_y.push("y");
        veto_posts.push(linked_post(&format!("vy{k}"), &with_y));
    }
    let veto_graph = build_cooc_graph(&veto_posts, 100);
    let a: Vec<String> = shared.iter().cloned().chain(["x".to_string()]).collect();
    let b: Vec<String> = shared.iter().cloned().chain(["y".to_string()]).collect();
    assert!(jaccard_similarity(&a, &b) > 0.8);
    assert_eq!(veto_graph.edge_weight("x", "y"), 0.0);
    let vetoed = merge_similar_cliques(vec![a, b], &veto_graph, 0.8, 0.0005);
    assert_eq!(vetoed.len(), 2, "absent cross edge disqualifies the merge");

    // the quoted answer/question pair has jaccard 4/6 and must not
    // merge at the default tau_c = 0.8
    let answer: Vec<String> = [
        "Hillary_Clinton",
        "Donald_Trump",
        "2016",
        "Answer",
        "Muslim",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let question: Vec<String> = [
        "Hillary_Clinton",
        "Donald_Trump",
        "2016",
        "Question",
        "Muslim",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    assert!((jaccard_similarity(&answer, &question) - 4.0 / 6.0).abs() < 1e-15);
    let mut aq_posts = Vec::new();
    for k in 0..100 {
        let mut t = answer.iter().map(String::as_str).collect::<Vec<_>>();
        t.push("Question"); // ensure every cross pair has weight
        aq_posts.push(linked_post(&format!("aq{k}"), &t));
    }
    let aq_graph = build_cooc_graph(&aq_posts, 100);
    let config = PipelineConfig::default();
    let merged_aq = merge_similar_cliques(
        vec![answer.clone(), question.clone()],
        &aq_graph,
        config.tau_c,
        config.tau_e_min,
    );
    assert_eq!(merged_aq.len(), 2, "4/6 similarity stays below tau_c = 0.8");
    println!("PASS merge rule: merge at 0.6, no merge at 0.8, cross-edge veto, answer/question pair unmerged");
}

#[test]
fn criterion_06_threshold_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);

    // annotation filtering: raising either threshold never adds spots
    for _ in 0..100 {
        let raw: Vec<Annotation> = (0..rng.random_range(0..25usize))
            .map(|i| Annotation {
                spot: format!("s{i}"),
                start: i * 10,
                end: i * 10 + 5,
                entity_iri: format!("e{i}"),
                rho: rng.random_range(0.0..1.0),
                link_prob: rng.random_range(0.0..1.0),
            })
            .collect();
        let t1: f64 = rng.random_range(0.0..1.0);
        let t2 = (t1 + rng.random_range(0.0..0.5)).min(1.0);
        let p1: f64 = rng.random_range(0.0..1.0);
        let p2 = (p1 + rng.random_range(0.0..0.5)).min(1.0);
        let loose: BTreeSet<String> = filter_annotations(raw.clone(), t1, p1)
            .into_iter()
            .map(|a| a.spot)
            .collect();
        let tight: BTreeSet<String> = filter_annotations(raw, t2, p2)
            .into_iter()
            .map(|a| a.spot)
            .collect();
        assert!(tight.is_subset(&loose));
    }

    // pruning: a higher tau_e yields a subgraph
    for _ in 0..100 {
        let posts: Vec<LinkedPost> = (0..rng.random_range(1..40usize))
            .map(|i| {
                let k = rng.random_range(0..8u8);
                let m = rng.random_range(0..8u8);
                linked_post(&format!("p{i}"), &[&format!("e{k}"), &format!("e{m}")])
            })
            .collect();
        let graph = build_cooc_graph(&posts, posts.len() as u64);
        let t1: f64 = rng.random_range(0.0..1.0);
        let t2 = (t1 + rng.random_range(0.0..0.5)).min(1.0);
        let loose = prune_graph(&graph, t1);
        let tight = prune_graph(&graph, t2);
        for (a, b, _) in tight.edges() {
            assert!(loose.edge_post_count(a, b).is_some());
        }
        for (v, _) in tight.vertices() {
            assert!(loose.contains_vertex(v));
        }
    }

    // location classification: raising tau_loc never adds locations
    let place_types: BTreeMap<String, TypeRecord> = [(
        "LOC".to_string(),
        TypeRecord {
            entity_iri: "LOC".into(),
            type_iris: BTreeSet::from(["http://dbpedia.org/ontology/Place".to_string()]),
        },
    )]
    .into();
    for _ in 0..100 {
        let total = rng.random_range(2..30usize);
        let with_prep = rng.random_range(0..=total);
        let posts: Vec<LinkedPost> = (0..total)
            .map(|i| {
                let text = if i < with_prep {
                    "protest in springfield today"
                } else {
                    "springfield wins an award"
                };
                LinkedPost {
                    post_id: format!("p{i}"),
                    text: text.into(),
                    links: vec![SpotLink {
                        spot: "springfield".into(),
                        entity_iri: "LOC".into(),
                        origin: ElementOrigin::Linker,
                    }],
                    unlinked_spots: BTreeSet::new(),
                }
            })
            .collect();
        let t1: f64 = rng.random_range(0.0..1.0);
        let t2 = (t1 + rng.random_range(0.0..0.5)).min(1.0);
        let kind_at = |tau: f64| {
            let config = ClassifyConfig {
                tau_loc: tau,
                ..ClassifyConfig::default()
            };
            classify_elements(&posts, total as u64, &place_types, &config)["LOC"]
        };
        let loose_is_loc = kind_at(t1) == ElementKind::Location;
        let tight_is_loc = kind_at(t2) == ElementKind::Location;
        assert!(
            loose_is_loc || !tight_is_loc,
            "location appeared under a tighter tau_loc"
        );
    }
    println!("PASS threshold monotonicity: filtering, pruning, and location classification (100 cases each)");
}

#[test]
fn criterion_07_relinking_majority() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for _ in 0..100 {
        let spots = ["clinton", "trump", "debate", "tax"];
        let posts: Vec<LinkedPost> = (0..rng.random_range(1..30usize))
            .map(|i| {
                let links: Vec<SpotLink> = (0..rng.random_range(0..4usize))
                    .map(|_| {
                        let spot = spots[rng.random_range(0..spots.len())];
                        SpotLink {
                            spot: spot.into(),
                            entity_iri: format!("{}#{}", spot, rng.random_range(0..3u8)),
                            origin: ElementOrigin::Linker,
                        }
                    })
                    .collect();
                let unlinked: BTreeSet<String> = (0..rng.random_range(0..3usize))
                    .map(|_| spots[rng.random_range(0..spots.len())].to_string())
                    .collect();
                LinkedPost {
                    post_id: format!("p{i}"),
                    text: String::new(),
                    links,
                    unlinked_spots: unlinked,
                }
            })
            .collect();

        // brute-force dominance: occurrence counts, ties to smallest IRI
        let mut counts: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
        for post in &posts {
            for link in &post.links {
                *counts
                    .entry(link.spot.clone())
                    .or_default()
                    .entry(link.entity_iri.clone())
                    .or_default() += 1;
            }
        }
        let expected_dominant: BTreeMap<String, String> = counts
            .iter()
            .map(|(spot, per_entity)| {
                let max = per_entity.values().max().copied().unwrap();
                let entity = per_entity
                    .iter()
                    .filter(|(_, c)| **c == max)
                    .map(|(e, _)| e.clone())
                    .min()
                    .unwrap();
                (spot.clone(), entity)
            })
            .collect();

        let consolidated = consolidate_links(posts);
        let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
        for post in &consolidated {
            assert!(post.unlinked_spots.is_empty());
            for link in &post.links {
                // single-valued
                let prev = seen.insert(link.spot.as_str(), link.entity_iri.as_str());
                if let Some(prev) = prev {
                    assert_eq!(prev, link.entity_iri, "spot {} is multi-valued", link.spot);
                }
                // majority selection
                assert_eq!(expected_dominant[link.spot.as_str()], link.entity_iri);
            }
        }
        // idempotence
        let twice = consolidate_links(consolidated.clone());
        for (a, b) in consolidated.iter().zip(&twice) {
            assert_eq!(a.links, b.links);
            assert_eq!(a.unlinked_spots, b.unlinked_spots);
        }
    }
    println!(
        "PASS relinking majority: single-valued, majority-selected, idempotent (100 fixtures)"
    );
}

const DBR: &str = "http://dbpedia.org/resource/";

fn random_topics(rng: &mut ChaCha8Rng) -> Vec<Topic> {
    let persons = ["P0", "P1", "P2", "P3", "P4"];
    // one local name with an apostrophe exercises the <iri> fallback
    let others = ["X0", "X1", "X2", "X3", "Women's_issue", "Y5"];
    let n = rng.random_range(1..15usize);
    (0..n)
        .map(|i| {
            let mut elements: Vec<(String, ElementKind)> = Vec::new();
            for p in persons {
                if rng.random_bool(0.4) {
                    elements.push((format!("{DBR}{p}"), ElementKind::Person));
                }
            }
            for o in others {
                if rng.random_bool(0.4) {
                    elements.push((format!("{DBR}{o}"), ElementKind::Other));
                }
            }
            if elements.len() < 2 {
                elements.push((format!("{DBR}P0"), ElementKind::Person));
                elements.push((format!("{DBR}X0"), ElementKind::Other));
            }
            elements.sort();
            elements.dedup();
            let slot = rng.random_range(0..5u32);
            let start: DateTime<Utc> = "2016-09-27T01:00:00Z".parse().unwrap();
            let start = start + chrono::Duration::minutes(2 * i64::from(slot));
            Topic {
                id: format!("http://example.org/topic/t{i:03}"),
                elements,
                interval_start: start,
                interval_end: start + chrono::Duration::minutes(2),
                created_at: start + chrono::Duration::minutes(2),
                maker: "http://example.org/agent/test".into(),
                provenance: TopicProvenance {
                    post_ids: vec![format!("p{i}")],
                    element_post_counts: BTreeMap::new(),
                },
                batch_size: 100,
            }
        })
        .collect()
}

#[test]
fn criterion_08_turtle_validity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let vocab = TopicoVocab::default();
    for _ in 0..25 {
        let topics = random_topics(&mut rng);
        let doc = serialize_turtle(&topics, &vocab);

        // independent conformant parser
        let mut triples: Vec<(String, String, String)> = Vec::new();
        for result in oxttl::TurtleParser::new().for_reader(doc.as_bytes()) {
            let t = result.expect("emitted Turtle parses");
            triples.push((
                t.subject.to_string(),
                t.predicate.to_string(),
                t.object.to_string(),
            ));
        }

        // round trip: regroup by subject and compare against the source
        let type_pred = "<http://www.w3.org/1999/02/22-rdf-syntax-ns#type>";
        let topic_class = format!("<{}>", vocab.class_topic());
        let typed_subjects: BTreeSet<&String> = triples
            .iter()
            .filter(|(_, p, o)| p == type_pred && *o == topic_class)
            .map(|(s, _, _)| s)
            .collect();
        assert_eq!(typed_subjects.len(), topics.len(), "topic count preserved");

        let element_preds = [
            format!("<{}>", vocab.has_person()),
            format!("<{}>", vocab.has_location()),
            format!("<{}>", vocab.has_temporal_expression()),
            format!("<{}>", vocab.is_about()),
        ];
        for topic in &topics {
            let subject = format!("<{}>", topic.id);
            let mut parsed_elements: Vec<String> = triples
                .iter()
                .filter(|(s, p, _)| *s == subject && element_preds.contains(p))
                .map(|(_, _, o)| o.trim_start_matches('<').trim_end_matches('>').to_string())
                .collect();
            parsed_elements.sort();
            let mut expected: Vec<String> =
                topic.elements.iter().map(|(iri, _)| iri.clone()).collect();
            expected.sort();
            assert_eq!(parsed_elements, expected, "element multiset preserved");

            // interval endpoints survive the round trip
            let begin_lit = format!(
                "\"{}\"^^<http://www.w3.org/2001/XMLSchema#dateTime>",
                topic
                    .interval_start
                    .to_rfc3339_opts(SecondsFormat::Secs, true)
            );
            let end_lit = format!(
                "\"{}\"^^<http://www.w3.org/2001/XMLSchema#dateTime>",
                topic
                    .interval_end
                    .to_rfc3339_opts(SecondsFormat::Secs, true)
            );
            let begin_subject = format!("<{}/interval/begin>", topic.id);
            let end_subject = format!("<{}/interval/end>", topic.id);
            assert!(triples
                .iter()
                .any(|(s, _, o)| *s == begin_subject && *o == begin_lit));
            assert!(triples
                .iter()
                .any(|(s, _, o)| *s == end_subject && *o == end_lit));
        }
    }

    // the empty document parses too
    let empty = serialize_turtle(&[], &vocab);
    assert!(oxttl::TurtleParser::new()
        .for_reader(empty.as_bytes())
        .next()
        .is_none());
    println!("PASS turtle validity: 25 randomized documents parse and round-trip");
}

#[test]
fn criterion_09_analysis_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    for _ in 0..50 {
        let topics = random_topics(&mut rng);
        let index = TopicIndex::from_topics(topics.clone());

        for name in ["P0", "P1", "P2", "P3", "P4", "absent"] {
            let anchor = format!("{DBR}{name}");
            // brute force over the raw list
            let mut expected: BTreeMap<String, u64> = BTreeMap::new();
            for topic in &topics {
                let anchored = topic
                    .elements
                    .iter()
                    .any(|(iri, kind)| *iri == anchor && *kind == ElementKind::Person);
                if !anchored {
                    continue;
                }
                for (iri, kind) in &topic.elements {
                    if *kind == ElementKind::Person && *iri != anchor {
                        *expected.entry(iri.clone()).or_default() += 1;
                    }
                }
            }
            let mut expected: Vec<(String, u64)> = expected.into_iter().collect();
            expected.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            assert_eq!(co_persons(&index, &anchor), expected);
        }

        let targets: BTreeSet<String> = [format!("{DBR}X0"), format!("{DBR}Women's_issue")].into();
        let mut expected: BTreeSet<(DateTime<Utc>, DateTime<Utc>)> = BTreeSet::new();
        for topic in &topics {
            if topic.elements.iter().any(|(iri, _)| targets.contains(iri)) {
                expected.insert((topic.interval_start, topic.interval_end));
            }
        }
        let got = intervals_with(&index, &targets);
        assert_eq!(got, expected.into_iter().collect::<Vec<_>>());
        // sorted and duplicate-free by construction of the expectation
        assert!(got.windows(2).all(|w| w[0] < w[1]));
    }
    println!("PASS analysis oracle: co-persons and intervals match brute force on 50 fixtures");
}

#[test]
fn criterion_10_determinism() {
    let data = |file: &str| format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR"));
    let corpus = data("sample_posts.jsonl");
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let out = tempfile::tempdir().unwrap();
        let config = PipelineConfig {
            dictionary: Some(data("dictionary.json").into()),
            type_db: Some(data("type_db.json").into()),
            handle_map: Some(data("handles.json").into()),
            out_dir: out.path().to_path_buf(),
            ..PipelineConfig::default()
        };
        let report = run_pipeline(Path::new(&corpus), &config).unwrap();
        assert!(report.failures.is_empty());
        assert!(report.total_topics() > 0, "sample corpus must yield topics");

        let mut files: BTreeMap<String, Vec<u8>> = BTreeMap::new();
        for entry in std::fs::read_dir(out.path()).unwrap() {
            let path = entry.unwrap().path();
            files.insert(
                path.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&path).unwrap(),
            );
        }
        outputs.push(files);
    }
    let names: Vec<&String> = outputs[0].keys().collect();
    assert_eq!(
        names,
        outputs[1].keys().collect::<Vec<_>>(),
        "same file set"
    );
    let mut compared = String::new();
    for (name, bytes) in &outputs[0] {
        assert_eq!(
            bytes, &outputs[1][name],
            "{name} differs between identical runs"
        );
        write!(compared, "{name} ").unwrap();
    }
    println!("PASS determinism: byte-identical reruns ({compared})");
}
