//! Topic extraction from the pruned graph: maximal clique enumeration,
//! weak small-clique elimination, and merging of similar cliques.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::collective::LinkedPost;
use crate::error::{Error, Result};
use crate::graph::CoocGraph;
use crate::weight::{ratio_below, ratio_exceeds};

/// Step bound for clique enumeration, a guard against pathological
/// graphs. One step is one recursive expansion.
#[derive(Debug, Clone, Copy)]
pub struct CliqueBudget {
    pub max_steps: u64,
}

impl Default for CliqueBudget {
    fn default() -> Self {
        CliqueBudget {
            max_steps: 10_000_000,
        }
    }
}

struct IndexGraph<'a> {
    names: Vec<&'a str>,
    adj: Vec<BTreeSet<usize>>,
}

impl<'a> IndexGraph<'a> {
    fn new(g: &'a CoocGraph) -> Self {
        // BTreeMap ordering means index order == lexicographic IRI order.
        let names: Vec<&str> = g.vertices().map(|(iri, _)| iri).collect();
        let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let mut adj = vec![BTreeSet::new(); names.len()];
        for (a, b, _) in g.edges() {
            let (i, j) = (index[a], index[b]);
            adj[i].insert(j);
            adj[j].insert(i);
        }
        IndexGraph { names, adj }
    }

    /// Smallest-last (degeneracy) ordering; ties go to the smaller index.
    fn degeneracy_order(&self) -> Vec<usize> {
        let n = self.names.len();
        let mut degree: Vec<usize> = self.adj.iter().map(|s| s.len()).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (degree[v], v))
                .expect("vertex remaining");
            removed[v] = true;
            order.push(v);
            for &u in &self.adj[v] {
                if !removed[u] {
                    degree[u] -= 1;
                }
            }
        }
        order
    }
}

struct BronKerbosch<'a> {
    graph: &'a IndexGraph<'a>,
    budget: CliqueBudget,
    steps: u64,
    cliques: Vec<Vec<usize>>,
}

impl BronKerbosch<'_> {
    fn expand(
        &mut self,
        r: &mut Vec<usize>,
        mut p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
    ) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget.max_steps {
            return Err(Error::CliqueBudget {
                max_steps: self.budget.max_steps,
            });
        }
        if p.is_empty() && x.is_empty() {
            self.cliques.push(r.clone());
            return Ok(());
        }
        // pivot on the vertex covering most of P
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by(|a, b| {
                let ca = self.graph.adj[*a].intersection(&p).count();
                let cb = self.graph.adj[*b].intersection(&p).count();
                ca.cmp(&cb).then_with(|| b.cmp(a))
            })
            .expect("p or x non-empty");
        let candidates: Vec<usize> = p.difference(&self.graph.adj[pivot]).copied().collect();
        for v in candidates {
            let neighbors = &self.graph.adj[v];
            r.push(v);
            let next_p = p.intersection(neighbors).copied().collect();
            let next_x = x.intersection(neighbors).copied().collect();
            self.expand(r, next_p, next_x)?;
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
        Ok(())
    }
}

/// Enumerates the maximal cliques of size >= 2 of the pruned graph.
///
/// Bron–Kerbosch with pivoting, seeded along a degeneracy ordering.
/// Each clique is sorted by IRI and the list is sorted lexicographically,
/// so output is deterministic for a given graph.
pub fn enumerate_maximal_cliques(g: &CoocGraph, budget: CliqueBudget) -> Result<Vec<Vec<String>>> {
    let graph = IndexGraph::new(g);
    let order = graph.degeneracy_order();
    let mut rank = vec![0usize; order.len()];
    for (pos, &v) in order.iter().enumerate() {
        rank[v] = pos;
    }

    let mut bk = BronKerbosch {
        graph: &graph,
        budget,
        steps: 0,
        cliques: Vec::new(),
    };
    for &v in &order {
        let p: BTreeSet<usize> = graph.adj[v]
            .iter()
            .copied()
            .filter(|&u| rank[u] > rank[v])
            .collect();
        let x: BTreeSet<usize> = graph.adj[v]
            .iter()
            .copied()
            .filter(|&u| rank[u] < rank[v])
            .collect();
        bk.expand(&mut vec![v], p, x)?;
    }

    let mut cliques: Vec<Vec<String>> = bk
        .cliques
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|mut c| {
            c.sort_unstable();
            c.into_iter().map(|i| graph.names[i].to_string()).collect()
        })
        .collect();
    cliques.sort();
    Ok(cliques)
}

/// Eliminates weak 2- and 3-cliques.
///
/// A clique of size 2 or 3 is dropped when any of its elements has
/// `freq(v, P) < tau_kc`; larger cliques pass unconditionally.
pub fn filter_small_cliques(
    cliques: Vec<Vec<String>>,
    graph: &CoocGraph,
    tau_kc: f64,
) -> Vec<Vec<String>> {
    cliques
        .into_iter()
        .filter(|clique| {
            if clique.len() > 3 {
                return true;
            }
            !clique
                .iter()
                .any(|v| ratio_below(graph.vertex_post_count(v), graph.batch_size(), tau_kc))
        })
        .collect()
}

fn intersection_union(a: &[String], b: &[String]) -> (u64, u64) {
    let sa: BTreeSet<&str> = a.iter().map(String::as_str).collect();
    let sb: BTreeSet<&str> = b.iter().map(String::as_str).collect();
    let inter = sa.intersection(&sb).count() as u64;
    let union = (sa.len() + sb.len()) as u64 - inter;
    (inter, union)
}

/// `|a and b| / |a or b|` over element sets.
pub fn jaccard_similarity(a: &[String], b: &[String]) -> f64 {
    let (inter, union) = intersection_union(a, b);
    if union == 0 {
        return 0.0;
    }
    inter as f64 / union as f64
}

fn cross_pairs_supported(a: &[String], b: &[String], g: &CoocGraph, tau_e_min: f64) -> bool {
    for x in a {
        for y in b {
            if x == y {
                continue;
            }
            // absent edges weigh 0 and disqualify
            if !g.edge_weight_exceeds(x, y, tau_e_min) {
                return false;
            }
        }
    }
    true
}

/// Merges similar cliques into their unions.
///
/// A pair qualifies when its Jaccard similarity strictly exceeds `tau_c`
/// and every cross pair of vertices carries weight above `tau_e_min` in
/// the *unpruned* graph — the relation that motivates the merge is one
/// that pruning removed, so it only exists there. Merging is a greedy
/// fixpoint, highest similarity first, ties broken on the
/// lexicographically smallest union.
pub fn merge_similar_cliques(
    cliques: Vec<Vec<String>>,
    unpruned: &CoocGraph,
    tau_c: f64,
    tau_e_min: f64,
) -> Vec<Vec<String>> {
    let mut topics: BTreeSet<Vec<String>> = cliques
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect();

    loop {
        let list: Vec<Vec<String>> = topics.iter().cloned().collect();
        // (inter, union_count, union_vec, i, j) of the best qualifying pair
        let mut best: Option<(u64, u64, Vec<String>, usize, usize)> = None;
        for i in 0..list.len() {
            for j in (i + 1)..list.len() {
                let (inter, union_count) = intersection_union(&list[i], &list[j]);
                if !ratio_exceeds(inter, union_count, tau_c) {
                    continue;
                }
                if !cross_pairs_supported(&list[i], &list[j], unpruned, tau_e_min) {
                    continue;
                }
                let union_vec: Vec<String> = list[i]
                    .iter()
                    .chain(list[j].iter())
                    .cloned()
                    .collect::<BTreeSet<String>>()
                    .into_iter()
                    .collect();
                let better = match &best {
                    None => true,
                    Some((bi, bu, bvec, _, _)) => {
                        // compare inter/union rationally: inter*bu vs bi*union
                        let lhs = inter as u128 * *bu as u128;
                        let rhs = *bi as u128 * union_count as u128;
                        lhs > rhs || (lhs == rhs && union_vec < *bvec)
                    }
                };
                if better {
                    best = Some((inter, union_count, union_vec, i, j));
                }
            }
        }
        match best {
            Some((_, _, union_vec, i, j)) => {
                topics.remove(&list[i]);
                topics.remove(&list[j]);
                topics.insert(union_vec);
            }
            None => break,
        }
    }
    topics.into_iter().collect()
}

/// The final topics of a batch with their provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopicProvenance {
    /// Posts containing at least two of the topic's elements.
    pub post_ids: Vec<String>,
    /// Batch post count per element.
    pub element_post_counts: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Default)]
pub struct TopicSet {
    /// Sorted element lists, lexicographically ordered.
    pub topics: Vec<Vec<String>>,
    /// Parallel to `topics`.
    pub provenance: Vec<TopicProvenance>,
}

/// Attaches provenance to merged topics.
pub fn build_topic_set(
    topics: Vec<Vec<String>>,
    posts: &[LinkedPost],
    graph: &CoocGraph,
) -> TopicSet {
    let provenance = topics
        .iter()
        .map(|topic| {
            let elements: BTreeSet<&str> = topic.iter().map(String::as_str).collect();
            let post_ids = posts
                .iter()
                .filter(|p| p.element_set().intersection(&elements).take(2).count() >= 2)
                .map(|p| p.post_id.clone())
                .collect();
            let element_post_counts = topic
                .iter()
                .map(|e| (e.clone(), graph.vertex_post_count(e)))
                .collect();
            TopicProvenance {
                post_ids,
                element_post_counts,
            }
        })
        .collect();
    TopicSet { topics, provenance }
}

#[cfg(test)]
mod tests {
    use crate::collective::{ElementOrigin, SpotLink};
    use crate::graph::build_cooc_graph;

    use super::*;

    fn post_with(id: &str, elements: &[&str]) -> LinkedPost {
        LinkedPost {
            post_id: id.into(),
            text: String::new(),
            links: elements
                .iter()
                .map(|e| SpotLink {
                    spot: e.to_lowercase(),
                    entity_iri: (*e).into(),
                    origin: ElementOrigin::Linker,
                })
                .collect(),
            unlinked_spots: BTreeSet::new(),
        }
    }

    fn graph_of(posts: &[&[&str]]) -> CoocGraph {
        let linked: Vec<LinkedPost> = posts
            .iter()
            .enumerate()
            .map(|(i, els)| post_with(&format!("p{i}"), els))
            .collect();
        build_cooc_graph(&linked, linked.len() as u64)
    }

    #[test]
    fn triangle_is_one_clique() {
        let g = graph_of(&[&["a", "b", "c"]]);
        let cliques = enumerate_maximal_cliques(&g, CliqueBudget::default()).unwrap();
        assert_eq!(cliques, vec![vec!["a", "b", "c"]]);
    }

    #[test]
    fn path_gives_two_maximal_edges() {
        let g = graph_of(&[&["a", "b"], &["b", "c"]]);
        let cliques = enumerate_maximal_cliques(&g, CliqueBudget::default()).unwrap();
        assert_eq!(cliques, vec![vec!["a", "b"], vec!["b", "c"]]);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let g = graph_of(&[&["a", "b", "c", "d", "e", "f"]]);
        let err = enumerate_maximal_cliques(&g, CliqueBudget { max_steps: 2 });
        assert!(matches!(err, Err(Error::CliqueBudget { .. })));
    }

    #[test]
    fn small_clique_with_rare_element_is_eliminated() {
        // 2-clique {a, b} where freq(b) < tau_kc
        let mut posts: Vec<&[&str]> = vec![&["a", "b"]];
        let filler: &[&str] = &["a"];
        for _ in 0..199 {
            posts.push(filler);
        }
        let g = graph_of(&posts);
        let cliques = vec![vec!["a".to_string(), "b".to_string()]];
        // freq(b) = 1/200 = 0.005 < 0.01
        assert!(filter_small_cliques(cliques.clone(), &g, 0.01).is_empty());
        // all freqs at or above the threshold pass
        assert_eq!(filter_small_cliques(cliques, &g, 0.005).len(), 1);
    }

    #[test]
    fn four_clique_is_exempt_from_the_small_filter() {
        let mut posts: Vec<&[&str]> = vec![&["a", "b", "c", "d"]];
        let filler: &[&str] = &["a"];
        for _ in 0..999 {
            posts.push(filler);
        }
        let g = graph_of(&posts);
        let cliques = vec![vec![
            "a".to_string(),
            "b".to_string(),
            "c".to_string(),
            "d".to_string(),
        ]];
        assert_eq!(filter_small_cliques(cliques, &g, 0.01).len(), 1);
    }

    #[test]
    fn jaccard_examples() {
        let a: Vec<String> = ["HC", "DT", "2016", "Answer", "Muslim"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let b: Vec<String> = ["HC", "DT", "2016", "Question", "Muslim"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert!((jaccard_similarity(&a, &a) - 1.0).abs() < 1e-15);
        let disjoint: Vec<String> = vec!["X".into(), "Y".into()];
        assert_eq!(jaccard_similarity(&a, &disjoint), 0.0);
        assert!((jaccard_similarity(&a, &b) - 4.0 / 6.0).abs() < 1e-15);
    }

    fn merge_fixture() -> (Vec<Vec<String>>, CoocGraph) {
        // two 5-cliques sharing {a,b,c,d}; x and y co-occur in 6 of 10000
        let mut posts: Vec<Vec<&str>> = Vec::new();
        for _ in 0..100 {
            posts.push(vec!["a", "b", "c", "d", "x"]);
            posts.push(vec!["a", "b", "c", "d", "y"]);
        }
        for _ in 0..6 {
            posts.push(vec!["x", "y"]);
        }
        while posts.len() < 10_000 {
            posts.push(vec![]);
        }
        let slices: Vec<&[&str]> = posts.iter().map(|p| p.as_slice()).collect();
        let g = graph_of(&slices);
        let cliques = vec![
            vec!["a".into(), "b".into(), "c".into(), "d".into(), "x".into()],
            vec!["a".into(), "b".into(), "c".into(), "d".into(), "y".into()],
        ];
        (cliques, g)
    }

    #[test]
    fn qualifying_pair_merges_into_union() {
        let (cliques, g) = merge_fixture();
        assert!((g.edge_weight("x", "y") - 0.0006).abs() < 1e-12);
        let merged = merge_similar_cliques(cliques, &g, 0.6, 0.0005);
        assert_eq!(
            merged,
            vec![vec![
                "a".to_string(),
                "b".to_string(),
                "c".to_string(),
                "d".to_string(),
                "x".to_string(),
                "y".to_string()
            ]]
        );
    }

    #[test]
    fn similarity_below_threshold_does_not_merge() {
        let (cliques, g) = merge_fixture();
        let merged = merge_similar_cliques(cliques.clone(), &g, 0.8, 0.0005);
        assert_eq!(merged, cliques);
    }

    #[test]
    fn missing_cross_edge_vetoes_the_merge() {
        // jaccard 9/10 but x and y never co-occurred
        let mut posts: Vec<Vec<&str>> = Vec::new();
        let shared = ["e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9"];
        for _ in 0..50 {
            let mut with_x = shared.to_vec();
            with_x.push("x");
            posts.push(with_x);
            let mut with_y = shared.to_vec();
            with_y.push("y");
            posts.push(with_y);
        }
        let slices: Vec<&[&str]> = posts.iter().map(|p| p.as_slice()).collect();
        let g = graph_of(&slices);
        let a: Vec<String> = shared
            .iter()
            .map(|s| s.to_string())
            .chain(["x".to_string()])
            .collect();
        let b: Vec<String> = shared
            .iter()
            .map(|s| s.to_string())
            .chain(["y".to_string()])
            .collect();
        assert!(jaccard_similarity(&a, &b) > 0.8);
        assert_eq!(g.edge_weight("x", "y"), 0.0);
        let merged = merge_similar_cliques(vec![a.clone(), b.clone()], &g, 0.8, 0.0005);
        assert_eq!(merged.len(), 2);
    }

    #[test]
    fn each_merge_step_strictly_decreases_topic_count() {
        let (cliques, g) = merge_fixture();
        let before = cliques.len();
        let merged = merge_similar_cliques(cliques, &g, 0.6, 0.0005);
        assert!(merged.len() < before);
        let min_before = 5;
        assert!(merged.iter().map(|t| t.len()).min().unwrap() >= min_before);
    }

    #[test]
    fn provenance_lists_contributing_posts_per_topic() {
        let posts = vec![
            post_with("p0", &["a", "b", "c"]),
            post_with("p1", &["a", "b"]),
            post_with("p2", &["a"]),
            post_with("p3", &["z"]),
        ];
        let g = build_cooc_graph(&posts, 4);
        let set = build_topic_set(vec![vec!["a".into(), "b".into(), "c".into()]], &posts, &g);
        assert_eq!(set.provenance[0].post_ids, vec!["p0", "p1"]);
        assert_eq!(set.provenance[0].element_post_counts["a"], 3);
        assert_eq!(set.provenance[0].element_post_counts["c"], 1);
    }
}
