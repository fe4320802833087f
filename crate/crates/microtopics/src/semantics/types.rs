//! Entity type resolution via a local type database and an optional
//! remote endpoint queried in fixed-size chunks.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linking::ResponseCache;

/// The rdf:type IRIs known for an entity; empty when unknown.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeRecord {
    pub entity_iri: String,
    pub type_iris: BTreeSet<String>,
}

/// A source of entity type information.
pub trait TypeSource: Send + Sync {
    /// Resolves the subset of `iris` this source knows about. Missing
    /// entries mean "not known here", not "has no types".
    fn resolve(&self, iris: &BTreeSet<String>) -> Result<BTreeMap<String, TypeRecord>>;
}

/// In-memory type database loaded from a JSON map of IRI to type list.
#[derive(Debug, Clone, Default)]
pub struct LocalTypeDb {
    map: BTreeMap<String, BTreeSet<String>>,
}

impl LocalTypeDb {
    pub fn new(map: BTreeMap<String, BTreeSet<String>>) -> Self {
        LocalTypeDb { map }
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        let map: BTreeMap<String, BTreeSet<String>> =
            serde_json::from_slice(&bytes).map_err(|e| Error::Resource {
                path: path.to_path_buf(),
                reason: e.to_string(),
            })?;
        Ok(LocalTypeDb { map })
    }
}

impl TypeSource for LocalTypeDb {
    fn resolve(&self, iris: &BTreeSet<String>) -> Result<BTreeMap<String, TypeRecord>> {
        Ok(iris
            .iter()
            .filter_map(|iri| {
                self.map.get(iri).map(|types| {
                    (
                        iri.clone(),
                        TypeRecord {
                            entity_iri: iri.clone(),
                            type_iris: types.clone(),
                        },
                    )
                })
            })
            .collect())
    }
}

/// Maximum IRIs per remote request, dictated by GET URL length limits.
pub const TYPE_CHUNK_SIZE: usize = 50;

/// HTTP client for a type lookup endpoint.
///
/// Sends `GET {endpoint}?iris=<iri>|<iri>|...` in chunks of at most
/// [`TYPE_CHUNK_SIZE`] entries and expects a JSON map of IRI to type
/// list. Chunk responses are cached.
pub struct RemoteTypeService {
    endpoint: String,
    cache: Option<ResponseCache>,
    chunk_size: usize,
    agent: ureq::Agent,
}

impl RemoteTypeService {
    pub fn new(endpoint: impl Into<String>, cache_dir: Option<&Path>) -> Result<Self> {
        let cache = match cache_dir {
            Some(dir) => Some(ResponseCache::new(dir.join("types"))?),
            None => None,
        };
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(30)))
            .build()
            .into();
        Ok(RemoteTypeService {
            endpoint: endpoint.into(),
            cache,
            chunk_size: TYPE_CHUNK_SIZE,
            agent,
        })
    }

    fn fetch_chunk(&self, joined: &str) -> Result<Vec<u8>> {
        let mut last_err = String::new();
        for attempt in 0..3 {
            if attempt > 0 {
                std::thread::sleep(Duration::from_millis(100));
            }
            match self.agent.get(&self.endpoint).query("iris", joined).call() {
                Ok(mut response) => {
                    return response
                        .body_mut()
                        .read_to_vec()
                        .map_err(|e| Error::TypeService(format!("reading response body: {e}")));
                }
                Err(e) => last_err = e.to_string(),
            }
        }
        Err(Error::TypeService(format!("{}: {last_err}", self.endpoint)))
    }
}

impl TypeSource for RemoteTypeService {
    fn resolve(&self, iris: &BTreeSet<String>) -> Result<BTreeMap<String, TypeRecord>> {
        let ordered: Vec<&String> = iris.iter().collect();
        let mut out = BTreeMap::new();
        for chunk in ordered.chunks(self.chunk_size) {
            let joined = chunk
                .iter()
                .map(|s| s.as_str())
                .collect::<Vec<_>>()
                .join("|");
            let key = format!("types\u{1}{}\u{1}{}", self.endpoint, joined);
            let bytes = match &self.cache {
                Some(cache) => cache.lookup_or_fetch(&key, || self.fetch_chunk(&joined))?,
                None => self.fetch_chunk(&joined)?,
            };
            let map: BTreeMap<String, BTreeSet<String>> = serde_json::from_slice(&bytes)
                .map_err(|e| Error::TypeService(format!("malformed response: {e}")))?;
            for iri in chunk {
                if let Some(types) = map.get(*iri) {
                    out.insert(
                        (*iri).clone(),
                        TypeRecord {
                            entity_iri: (*iri).clone(),
                            type_iris: types.clone(),
                        },
                    );
                }
            }
        }
        Ok(out)
    }
}

/// Local database backed by an optional remote service; local entries
/// take precedence and never touch the network.
pub struct LayeredTypeSource {
    pub local: LocalTypeDb,
    pub remote: Option<RemoteTypeService>,
}

impl TypeSource for LayeredTypeSource {
    fn resolve(&self, iris: &BTreeSet<String>) -> Result<BTreeMap<String, TypeRecord>> {
        let mut out = self.local.resolve(iris)?;
        if let Some(remote) = &self.remote {
            let missing: BTreeSet<String> = iris
                .iter()
                .filter(|iri| !out.contains_key(*iri))
                .cloned()
                .collect();
            if !missing.is_empty() {
                out.append(&mut remote.resolve(&missing)?);
            }
        }
        Ok(out)
    }
}

/// Resolves types for every IRI in `iris`.
///
/// Unlike [`TypeSource::resolve`], the result always covers the whole
/// input: IRIs the source does not know get an empty record rather than
/// being silently dropped.
pub fn resolve_entity_types(
    iris: &BTreeSet<String>,
    source: &dyn TypeSource,
) -> Result<BTreeMap<String, TypeRecord>> {
    let mut out = source.resolve(iris)?;
    for iri in iris {
        out.entry(iri.clone()).or_insert_with(|| TypeRecord {
            entity_iri: iri.clone(),
            type_iris: BTreeSet::new(),
        });
    }
    Ok(out)
}
