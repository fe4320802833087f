//! The weighted entity co-occurrence graph and its pruning.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::collective::LinkedPost;
use crate::weight::ratio_exceeds;

/// Undirected co-occurrence graph over candidate elements.
///
/// Vertex and edge weights are post-count fractions of the batch size:
/// `freq(v)` is the share of batch posts containing the element, and
/// `w(u, v)` the share containing both. Counts are kept as integers so
/// threshold comparisons stay exact; the fractions are derived views.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoocGraph {
    batch_size: u64,
    vertices: BTreeMap<String, u64>,
    edges: BTreeMap<(String, String), u64>,
}

fn edge_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl CoocGraph {
    pub fn batch_size(&self) -> u64 {
        self.batch_size
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, iri: &str) -> bool {
        self.vertices.contains_key(iri)
    }

    /// Number of batch posts containing the element.
    pub fn vertex_post_count(&self, iri: &str) -> u64 {
        self.vertices.get(iri).copied().unwrap_or(0)
    }

    /// `freq(v, P)`: fraction of batch posts containing the element.
    pub fn vertex_freq(&self, iri: &str) -> f64 {
        if self.batch_size == 0 {
            return 0.0;
        }
        self.vertex_post_count(iri) as f64 / self.batch_size as f64
    }

    /// Number of batch posts containing both endpoints, if the edge exists.
    pub fn edge_post_count(&self, a: &str, b: &str) -> Option<u64> {
        self.edges.get(&edge_key(a, b)).copied()
    }

    /// `w(a, b)`: fraction of batch posts containing both elements.
    /// Absent edges weigh 0.
    pub fn edge_weight(&self, a: &str, b: &str) -> f64 {
        match (self.edge_post_count(a, b), self.batch_size) {
            (Some(count), n) if n > 0 => count as f64 / n as f64,
            _ => 0.0,
        }
    }

    /// True when `w(a, b) > tau`, compared exactly on post counts.
    pub fn edge_weight_exceeds(&self, a: &str, b: &str, tau: f64) -> bool {
        match self.edge_post_count(a, b) {
            Some(count) => ratio_exceeds(count, self.batch_size, tau),
            None => false,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = (&str, u64)> {
        self.vertices.iter().map(|(iri, c)| (iri.as_str(), *c))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, u64)> {
        self.edges
            .iter()
            .map(|((a, b), c)| (a.as_str(), b.as_str(), *c))
    }

    pub fn neighbors(&self, v: &str) -> BTreeSet<&str> {
        self.edges
            .keys()
            .filter_map(|(a, b)| {
                if a == v {
                    Some(b.as_str())
                } else if b == v {
                    Some(a.as_str())
                } else {
                    None
                }
            })
            .collect()
    }

    /// Tab-separated edge list: `iri_a`, `iri_b`, post count, weight.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for ((a, b), count) in &self.edges {
            let w = if self.batch_size > 0 {
                *count as f64 / self.batch_size as f64
            } else {
                0.0
            };
            writeln!(out, "{a}\t{b}\t{count}\t{w}").unwrap();
        }
        out
    }
}

/// Builds the co-occurrence graph of a consolidated batch.
///
/// Each element pair counts once per post regardless of repeated spots.
/// A zero batch size yields the empty graph.
pub fn build_cooc_graph(posts: &[LinkedPost], batch_size: u64) -> CoocGraph {
    if batch_size == 0 {
        return CoocGraph::default();
    }
    let mut graph = CoocGraph {
        batch_size,
        ..CoocGraph::default()
    };
    for post in posts {
        let elements: Vec<&str> = post.element_set().into_iter().collect();
        for (i, a) in elements.iter().enumerate() {
            *graph.vertices.entry((*a).to_string()).or_default() += 1;
            for b in &elements[i + 1..] {
                *graph.edges.entry(edge_key(a, b)).or_default() += 1;
            }
        }
    }
    debug_assert!(graph
        .edges
        .iter()
        .all(|((a, b), c)| { *c <= graph.vertices[a] && *c <= graph.vertices[b] }));
    graph
}

/// Removes weak edges and the vertices they strand.
///
/// Keeps exactly the edges with `w(e) > tau_e` — strictly greater, so a
/// weight equal to the threshold is removed — then drops vertices with
/// no remaining incident edge.
pub fn prune_graph(graph: &CoocGraph, tau_e: f64) -> CoocGraph {
    let edges: BTreeMap<(String, String), u64> = graph
        .edges
        .iter()
        .filter(|(_, count)| ratio_exceeds(**count, graph.batch_size, tau_e))
        .map(|(k, v)| (k.clone(), *v))
        .collect();
    let connected: BTreeSet<&String> = edges.keys().flat_map(|(a, b)| [a, b]).collect();
    let vertices = graph
        .vertices
        .iter()
        .filter(|(iri, _)| connected.contains(iri))
        .map(|(iri, c)| (iri.clone(), *c))
        .collect();
    CoocGraph {
        batch_size: graph.batch_size,
        vertices,
        edges,
    }
}
