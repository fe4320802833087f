//! End-to-end orchestration of topic extraction over a corpus.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use chrono::{DateTime, Utc};
use serde::Serialize;

use crate::cliques::{
    build_topic_set, enumerate_maximal_cliques, filter_small_cliques, merge_similar_cliques,
    CliqueBudget,
};
use crate::collective::{
    consolidate_links, spot_entity_table, ElementOrigin, LinkedPost, SpotLink,
};
use crate::config::{LinkerMode, PipelineConfig};
use crate::corpus::{load_posts, partition_intervals, preprocess_text, IntervalBatch};
use crate::emit::{instantiate_topics, serialize_json, serialize_turtle, Topic, TopicoVocab};
use crate::error::{Error, Result};
use crate::graph::{build_cooc_graph, prune_graph, CoocGraph};
use crate::linking::{unlinked_spots, DictionaryLinker, Linker, LinkerConfig, RemoteLinker};
use crate::semantics::{
    apply_year_filter, classify_elements, expand_mentions, match_temporal_rules,
    resolve_entity_types, ClassifyConfig, HandleMap, LayeredTypeSource, LocalTypeDb,
    RemoteTypeService, TemporalRuleSet,
};

/// Per-batch counters, including the share of posts that contribute
/// vertices, edges, and topics before pruning, after pruning, and in
/// the final topics.
#[derive(Debug, Clone, Serialize)]
pub struct BatchReport {
    pub start: DateTime<Utc>,
    pub end: DateTime<Utc>,
    pub posts: u64,
    /// Raw spots seen by the linking stages.
    pub spots: u64,
    /// Link occurrences surviving thresholds and the year filter.
    pub linked: u64,
    pub vertices_before: u64,
    pub edges_before: u64,
    pub vertices_pruned: u64,
    pub edges_pruned: u64,
    pub maximal_cliques: u64,
    pub topics: u64,
    pub pct_posts_vertices_before: f64,
    pub pct_posts_vertices_pruned: f64,
    pub pct_posts_vertices_topic: f64,
    pub pct_posts_edges_before: f64,
    pub pct_posts_edges_pruned: f64,
    pub pct_posts_edges_topic: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchFailure {
    pub start: DateTime<Utc>,
    pub end: DateTime<Utc>,
    pub error: String,
}

#[derive(Debug, Default, Serialize)]
pub struct RunReport {
    pub batches: Vec<BatchReport>,
    pub failures: Vec<BatchFailure>,
}

impl RunReport {
    pub fn total_topics(&self) -> u64 {
        self.batches.iter().map(|b| b.topics).sum()
    }

    /// One line per batch, human-readable.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(
            "batch start          posts  spots linked   V      E     V'     E'  cliques topics  %Vb  %Vp  %Vt  %Eb  %Ep  %Et\n",
        );
        for b in &self.batches {
            out.push_str(&format!(
                "{}  {:>5} {:>6} {:>6} {:>5} {:>6} {:>5} {:>6} {:>7} {:>6} {:>4.0} {:>4.0} {:>4.0} {:>4.0} {:>4.0} {:>4.0}\n",
                b.start.format("%Y-%m-%dT%H:%M:%SZ"),
                b.posts,
                b.spots,
                b.linked,
                b.vertices_before,
                b.edges_before,
                b.vertices_pruned,
                b.edges_pruned,
                b.maximal_cliques,
                b.topics,
                b.pct_posts_vertices_before,
                b.pct_posts_vertices_pruned,
                b.pct_posts_vertices_topic,
                b.pct_posts_edges_before,
                b.pct_posts_edges_pruned,
                b.pct_posts_edges_topic,
            ));
        }
        for f in &self.failures {
            out.push_str(&format!(
                "{}  FAILED: {}\n",
                f.start.format("%Y-%m-%dT%H:%M:%SZ"),
                f.error
            ));
        }
        out
    }
}

/// Everything a batch needs, built once per run and shared across the
/// worker pool.
pub struct PipelineContext {
    config: PipelineConfig,
    linker: Box<dyn Linker>,
    linker_config: LinkerConfig,
    rules: TemporalRuleSet,
    handles: HandleMap,
    types: LayeredTypeSource,
    classify: ClassifyConfig,
    vocab: TopicoVocab,
}

impl PipelineContext {
    pub fn from_config(config: PipelineConfig) -> Result<Self> {
        config.validate()?;
        let linker_config = LinkerConfig {
            tau_rho: config.tau_rho,
            tau_p: config.tau_p,
            endpoint: config.endpoint.clone(),
            resource_base: config.resource_base.clone(),
            cache_dir: config.cache_dir.clone(),
            max_in_flight: config.max_in_flight,
        };
        let linker: Box<dyn Linker> = match config.linker {
            LinkerMode::Dictionary => {
                let path = config.dictionary.as_ref().expect("validated");
                Box::new(DictionaryLinker::from_path(path)?)
            }
            LinkerMode::Remote => Box::new(RemoteLinker::new(&linker_config)?),
        };
        let rules = match &config.temporal_rules {
            Some(path) => TemporalRuleSet::from_path(path)?,
            None => TemporalRuleSet::builtin(),
        };
        let handles = match &config.handle_map {
            Some(path) => HandleMap::from_path(path)?,
            None => HandleMap::default(),
        };
        let local = match &config.type_db {
            Some(path) => LocalTypeDb::from_path(path)?,
            None => LocalTypeDb::default(),
        };
        let remote = match &config.type_endpoint {
            Some(endpoint) => Some(RemoteTypeService::new(
                endpoint.clone(),
                config.cache_dir.as_deref(),
            )?),
            None => None,
        };
        let classify = ClassifyConfig {
            tau_loc: config.tau_loc,
            ..ClassifyConfig::default()
        };
        let vocab = TopicoVocab::with_base(config.topico_base.clone());
        Ok(PipelineContext {
            config,
            linker,
            linker_config,
            rules,
            handles,
            types: LayeredTypeSource { local, remote },
            classify,
            vocab,
        })
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    pub fn vocab(&self) -> &TopicoVocab {
        &self.vocab
    }

    /// Runs the per-post linking stages of one batch: preprocess,
    /// mention expansion, annotation, temporal rules, year filter.
    pub fn link_batch(&self, batch: &IntervalBatch) -> Result<(Vec<LinkedPost>, u64, u64)> {
        let mut linked_posts = Vec::with_capacity(batch.posts.len());
        let mut spot_count = 0u64;
        let mut link_count = 0u64;
        for post in &batch.posts {
            let pre = preprocess_text(&post.text);
            let (text, substitutions) = expand_mentions(&pre, &self.handles);
            let raw = if text.is_empty() {
                Vec::new()
            } else {
                self.linker.annotate(&text)?
            };
            let accepted = crate::linking::filter_annotations(
                raw.clone(),
                self.linker_config.tau_rho,
                self.linker_config.tau_p,
            );
            let mut unlinked = unlinked_spots(&raw, &accepted);
            spot_count += raw.len() as u64;

            let mut links: Vec<SpotLink> = Vec::new();
            for annotation in accepted {
                if apply_year_filter(&annotation, &text) {
                    links.push(SpotLink {
                        spot: annotation.spot,
                        entity_iri: annotation.entity_iri,
                        origin: ElementOrigin::Linker,
                    });
                } else {
                    unlinked.insert(annotation.spot);
                }
            }
            for sub in substitutions {
                spot_count += 1;
                links.push(SpotLink {
                    spot: sub.display_name.to_lowercase(),
                    entity_iri: sub.entity_iri,
                    origin: ElementOrigin::Mention,
                });
            }
            for hit in match_temporal_rules(&text, &self.rules) {
                spot_count += 1;
                links.push(SpotLink {
                    spot: hit.spot,
                    entity_iri: hit.target_iri,
                    origin: ElementOrigin::TemporalRule,
                });
            }
            link_count += links.len() as u64;
            linked_posts.push(LinkedPost {
                post_id: post.id.clone(),
                text,
                links,
                unlinked_spots: unlinked,
            });
        }
        Ok((linked_posts, spot_count, link_count))
    }

    /// Runs every stage over one batch, returning the instantiated
    /// topics and the batch report row.
    pub fn process_batch(&self, batch: &IntervalBatch) -> Result<(Vec<Topic>, BatchReport)> {
        let n = batch.size();
        let (linked, spots, _) = self.link_batch(batch)?;
        let consolidated = consolidate_links(linked);
        let linked_count: u64 = consolidated.iter().map(|p| p.links.len() as u64).sum();

        let element_iris: BTreeSet<String> = consolidated
            .iter()
            .flat_map(|p| p.links.iter().map(|l| l.entity_iri.clone()))
            .collect();
        let types = resolve_entity_types(&element_iris, &self.types)?;
        let kinds = classify_elements(&consolidated, n, &types, &self.classify);

        let graph = build_cooc_graph(&consolidated, n);
        let pruned = prune_graph(&graph, self.config.tau_e);
        let cliques = enumerate_maximal_cliques(
            &pruned,
            CliqueBudget {
                max_steps: self.config.clique_max_steps,
            },
        )?;
        let clique_count = cliques.len() as u64;
        let kept = filter_small_cliques(cliques, &pruned, self.config.tau_kc);
        let merged = merge_similar_cliques(kept, &graph, self.config.tau_c, self.config.tau_e_min);
        let topic_set = build_topic_set(merged, &consolidated, &graph);

        let created_at = self.config.created_at.unwrap_or(batch.end);
        let topics = instantiate_topics(
            &topic_set,
            &kinds,
            batch,
            &self.config.base_iri,
            created_at,
            &self.config.maker,
        );

        let report = batch_report(
            batch,
            &consolidated,
            spots,
            linked_count,
            &graph,
            &pruned,
            clique_count,
            &topic_set.topics,
        );
        Ok((topics, report))
    }
}

#[allow(clippy::too_many_arguments)]
fn batch_report(
    batch: &IntervalBatch,
    posts: &[LinkedPost],
    spots: u64,
    linked: u64,
    graph: &CoocGraph,
    pruned: &CoocGraph,
    maximal_cliques: u64,
    topics: &[Vec<String>],
) -> BatchReport {
    let n = batch.size();
    let topic_sets: Vec<BTreeSet<&str>> = topics
        .iter()
        .map(|t| t.iter().map(String::as_str).collect())
        .collect();
    let topic_union: BTreeSet<&str> = topic_sets.iter().flatten().copied().collect();

    let mut vb = 0u64;
    let mut eb = 0u64;
    let mut vp = 0u64;
    let mut ep = 0u64;
    let mut vt = 0u64;
    let mut et = 0u64;
    for post in posts {
        let elements: Vec<&str> = post.element_set().into_iter().collect();
        if elements.is_empty() {
            continue;
        }
        vb += 1;
        if elements.len() >= 2 {
            eb += 1;
        }
        if elements.iter().any(|e| pruned.contains_vertex(e)) {
            vp += 1;
        }
        let mut has_pruned_edge = false;
        let mut has_topic_edge = false;
        'pairs: for (i, a) in elements.iter().enumerate() {
            for b in &elements[i + 1..] {
                if !has_pruned_edge && pruned.edge_post_count(a, b).is_some() {
                    has_pruned_edge = true;
                }
                if !has_topic_edge && topic_sets.iter().any(|t| t.contains(a) && t.contains(b)) {
                    has_topic_edge = true;
                }
                if has_pruned_edge && has_topic_edge {
                    break 'pairs;
                }
            }
        }
        if has_pruned_edge {
            ep += 1;
        }
        if has_topic_edge {
            et += 1;
        }
        if elements.iter().any(|e| topic_union.contains(e)) {
            vt += 1;
        }
    }
    let pct = |count: u64| {
        if n == 0 {
            0.0
        } else {
            count as f64 * 100.0 / n as f64
        }
    };
    BatchReport {
        start: batch.start,
        end: batch.end,
        posts: n,
        spots,
        linked,
        vertices_before: graph.vertex_count() as u64,
        edges_before: graph.edge_count() as u64,
        vertices_pruned: pruned.vertex_count() as u64,
        edges_pruned: pruned.edge_count() as u64,
        maximal_cliques,
        topics: topics.len() as u64,
        pct_posts_vertices_before: pct(vb),
        pct_posts_vertices_pruned: pct(vp),
        pct_posts_vertices_topic: pct(vt),
        pct_posts_edges_before: pct(eb),
        pct_posts_edges_pruned: pct(ep),
        pct_posts_edges_topic: pct(et),
    }
}

fn batch_stamp(batch: &IntervalBatch) -> String {
    batch.start.format("%Y%m%dT%H%M%SZ").to_string()
}

fn run_batches<T, F>(workers: usize, batches: &[IntervalBatch], job: F) -> Vec<T>
where
    T: Send,
    F: Fn(&IntervalBatch) -> T + Sync + Send,
{
    if workers == 1 || batches.len() <= 1 {
        return batches.iter().map(job).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers) // 0 means rayon's default
        .build()
        .expect("worker pool");
    pool.install(|| {
        use rayon::prelude::*;
        batches.par_iter().map(job).collect()
    })
}

/// Runs the whole pipeline over a JSON-lines corpus.
///
/// Per batch: preprocess, expand mentions, annotate, temporal rules,
/// year filter, consolidate, resolve types, classify, build and prune
/// the graph, enumerate cliques, filter small cliques, merge, and emit.
/// Batches run in a worker pool; a failing batch is logged and recorded
/// in the report while the others proceed.
///
/// Outputs under `config.out_dir`: `topics-{start}.ttl` and
/// `topics-{start}.json` per batch, an aggregate `topics.ttl` and
/// `topics.json`, the vocabulary as `topico.ttl`, and `report.json`.
pub fn run_pipeline(corpus_path: &Path, config: &PipelineConfig) -> Result<RunReport> {
    let context = PipelineContext::from_config(config.clone())?;
    let corpus = load_posts(corpus_path)?;
    let batches = partition_intervals(corpus, config.interval_minutes);

    fs::create_dir_all(&config.out_dir).map_err(|e| Error::io(&config.out_dir, e))?;

    let results = run_batches(config.workers, &batches, |batch| {
        (batch.start, batch.end, context.process_batch(batch))
    });

    let mut report = RunReport::default();
    let mut all_topics: Vec<Topic> = Vec::new();
    for (start, end, result) in results {
        match result {
            Ok((topics, batch_report)) => {
                let stamp = batches
                    .iter()
                    .find(|b| b.start == start)
                    .map(batch_stamp)
                    .expect("batch exists");
                write_out(
                    &config.out_dir.join(format!("topics-{stamp}.ttl")),
                    &serialize_turtle(&topics, &context.vocab),
                )?;
                write_out(
                    &config.out_dir.join(format!("topics-{stamp}.json")),
                    &serialize_json(&topics),
                )?;
                all_topics.extend(topics);
                report.batches.push(batch_report);
            }
            Err(e) => {
                log::error!("batch [{start}, {end}) failed: {e}");
                report.failures.push(BatchFailure {
                    start,
                    end,
                    error: e.to_string(),
                });
            }
        }
    }

    write_out(
        &config.out_dir.join("topics.ttl"),
        &serialize_turtle(&all_topics, &context.vocab),
    )?;
    write_out(
        &config.out_dir.join("topics.json"),
        &serialize_json(&all_topics),
    )?;
    write_out(
        &config.out_dir.join("topico.ttl"),
        &crate::emit::vocabulary_turtle(&context.vocab),
    )?;
    let report_json = serde_json::to_string_pretty(&report).expect("report serializes");
    write_out(&config.out_dir.join("report.json"), &report_json)?;
    Ok(report)
}

fn write_out(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|e| Error::io(path, e))
}

/// Per-batch spot-to-entity tables keyed by batch start.
pub type LinkTables = Vec<(DateTime<Utc>, BTreeMap<String, String>)>;

/// The consolidated spot-to-entity table per batch (the `dump-links`
/// debug output).
pub fn dump_links(corpus_path: &Path, config: &PipelineConfig) -> Result<LinkTables> {
    let context = PipelineContext::from_config(config.clone())?;
    let corpus = load_posts(corpus_path)?;
    let batches = partition_intervals(corpus, config.interval_minutes);
    let mut out = Vec::new();
    for batch in &batches {
        let (linked, _, _) = context.link_batch(batch)?;
        let consolidated = consolidate_links(linked);
        out.push((batch.start, spot_entity_table(&consolidated)));
    }
    Ok(out)
}

/// The co-occurrence graph edge list per batch, optionally pruned
/// (the `dump-graph` debug output).
pub fn dump_graph(
    corpus_path: &Path,
    config: &PipelineConfig,
    pruned: bool,
) -> Result<Vec<(DateTime<Utc>, String)>> {
    let context = PipelineContext::from_config(config.clone())?;
    let corpus = load_posts(corpus_path)?;
    let batches = partition_intervals(corpus, config.interval_minutes);
    let mut out = Vec::new();
    for batch in &batches {
        let (linked, _, _) = context.link_batch(batch)?;
        let consolidated = consolidate_links(linked);
        let graph = build_cooc_graph(&consolidated, batch.size());
        let graph = if pruned {
            prune_graph(&graph, config.tau_e)
        } else {
            graph
        };
        out.push((batch.start, graph.to_edge_list()));
    }
    Ok(out)
}
