//! TagMe-style HTTP linker client.

use std::sync::{Condvar, Mutex};
use std::time::Duration;

use serde::Deserialize;

use crate::error::{Error, Result};

use super::{Annotation, Linker, LinkerConfig, ResponseCache};

const RETRIES: u32 = 3;
const RETRY_DELAY: Duration = Duration::from_millis(100);

/// Bounds the number of concurrent in-flight requests.
#[derive(Debug)]
struct InFlightGate {
    max: usize,
    active: Mutex<usize>,
    freed: Condvar,
}

impl InFlightGate {
    fn new(max: usize) -> Self {
        InFlightGate {
            max: max.max(1),
            active: Mutex::new(0),
            freed: Condvar::new(),
        }
    }

    fn acquire(&self) -> GateGuard<'_> {
        let mut active = self.active.lock().unwrap();
        while *active >= self.max {
            active = self.freed.wait(active).unwrap();
        }
        *active += 1;
        GateGuard { gate: self }
    }
}

struct GateGuard<'a> {
    gate: &'a InFlightGate,
}

impl Drop for GateGuard<'_> {
    fn drop(&mut self) {
        let mut active = self.gate.active.lock().unwrap();
        *active -= 1;
        self.gate.freed.notify_one();
    }
}

#[derive(Deserialize)]
struct WireResponse {
    #[serde(default)]
    annotations: Vec<WireAnnotation>,
}

#[derive(Deserialize)]
struct WireAnnotation {
    spot: String,
    start: usize,
    end: usize,
    rho: f64,
    link_probability: f64,
    title: String,
}

/// HTTP client for a remote entity linker.
///
/// Sends `GET {endpoint}?text=...` and expects a JSON body of
/// `{"annotations": [{spot, start, end, rho, link_probability, title}]}`
/// with `[start, end)` as character offsets into the submitted text.
/// Titles are turned into IRIs by replacing spaces with underscores
/// under the configured resource base. Responses are cached verbatim
/// when a cache directory is configured; transport failures are retried
/// a few times before surfacing as a retryable error.
pub struct RemoteLinker {
    endpoint: String,
    resource_base: String,
    cache: Option<ResponseCache>,
    gate: InFlightGate,
    agent: ureq::Agent,
}

impl RemoteLinker {
    pub fn new(config: &LinkerConfig) -> Result<Self> {
        let endpoint = config
            .endpoint
            .clone()
            .ok_or_else(|| Error::Config("remote linker requires an endpoint".into()))?;
        let cache = match &config.cache_dir {
            Some(dir) => Some(ResponseCache::new(dir.join("linker"))?),
            None => None,
        };
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(30)))
            .build()
            .into();
        Ok(RemoteLinker {
            endpoint,
            resource_base: config.resource_base.clone(),
            cache,
            gate: InFlightGate::new(config.max_in_flight),
            agent,
        })
    }

    fn fetch(&self, text: &str) -> Result<Vec<u8>> {
        let _slot = self.gate.acquire();
        let mut last_err = String::new();
        for attempt in 0..RETRIES {
            if attempt > 0 {
                std::thread::sleep(RETRY_DELAY);
            }
            match self.agent.get(&self.endpoint).query("text", text).call() {
                Ok(mut response) => {
                    return response
                        .body_mut()
                        .read_to_vec()
                        .map_err(|e| Error::Linker(format!("reading response body: {e}")));
                }
                Err(e) => last_err = e.to_string(),
            }
        }
        Err(Error::Linker(format!(
            "{} after {RETRIES} attempts: {last_err}",
            self.endpoint
        )))
    }

    fn title_to_iri(&self, title: &str) -> String {
        format!("{}{}", self.resource_base, title.trim().replace(' ', "_"))
    }
}

impl Linker for RemoteLinker {
    fn annotate(&self, text: &str) -> Result<Vec<Annotation>> {
        let key = format!("linker\u{1}{}\u{1}{}", self.endpoint, text);
        let bytes = match &self.cache {
            Some(cache) => cache.lookup_or_fetch(&key, || self.fetch(text))?,
            None => self.fetch(text)?,
        };
        let wire: WireResponse =
            serde_json::from_slice(&bytes).map_err(|e| Error::LinkerResponse(e.to_string()))?;
        let text_len = text.chars().count();
        let mut annotations = Vec::with_capacity(wire.annotations.len());
        for w in wire.annotations {
            if w.start >= w.end || w.end > text_len {
                return Err(Error::LinkerResponse(format!(
                    "span [{}, {}) out of bounds for text of {} chars",
                    w.start, w.end, text_len
                )));
            }
            if !(0.0..=1.0).contains(&w.rho) || !(0.0..=1.0).contains(&w.link_probability) {
                return Err(Error::LinkerResponse(format!(
                    "scores out of range for spot `{}`",
                    w.spot
                )));
            }
            annotations.push(Annotation {
                spot: w.spot,
                start: w.start,
                end: w.end,
                entity_iri: self.title_to_iri(&w.title),
                rho: w.rho,
                link_prob: w.link_probability,
            });
        }
        Ok(annotations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn titles_map_to_resource_iris() {
        let linker = RemoteLinker {
            endpoint: "http://unused".into(),
            resource_base: "http://dbpedia.org/resource/".into(),
            cache: None,
            gate: InFlightGate::new(1),
            agent: ureq::Agent::new_with_defaults(),
        };
        assert_eq!(
            linker.title_to_iri("Hillary Clinton"),
            "http://dbpedia.org/resource/Hillary_Clinton"
        );
    }

    #[test]
    fn gate_bounds_concurrency() {
        use std::sync::atomic::{AtomicUsize, Ordering};
        use std::sync::Arc;

        let gate = Arc::new(InFlightGate::new(2));
        let peak = Arc::new(AtomicUsize::new(0));
        let active = Arc::new(AtomicUsize::new(0));
        let mut handles = Vec::new();
        for _ in 0..8 {
            let gate = gate.clone();
            let peak = peak.clone();
            let active = active.clone();
            handles.push(std::thread::spawn(move || {
                let _slot = gate.acquire();
                let now = active.fetch_add(1, Ordering::SeqCst) + 1;
                peak.fetch_max(now, Ordering::SeqCst);
                std::thread::sleep(Duration::from_millis(5));
                active.fetch_sub(1, Ordering::SeqCst);
            }));
        }
        for h in handles {
            h.join().unwrap();
        }
        assert!(peak.load(Ordering::SeqCst) <= 2);
    }
}
