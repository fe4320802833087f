//! Pipeline configuration: a flat key=value file with CLI overrides.

use std::fs;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkerMode {
    Dictionary,
    Remote,
}

impl std::str::FromStr for LinkerMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dictionary" => Ok(LinkerMode::Dictionary),
            "remote" => Ok(LinkerMode::Remote),
            other => Err(Error::Config(format!(
                "unknown linker mode `{other}` (expected dictionary|remote)"
            ))),
        }
    }
}

/// All thresholds and resources of one pipeline run.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub tau_rho: f64,
    pub tau_p: f64,
    pub tau_e: f64,
    pub tau_e_min: f64,
    pub tau_loc: f64,
    pub tau_kc: f64,
    pub tau_c: f64,
    pub interval_minutes: u32,
    pub linker: LinkerMode,
    pub endpoint: Option<String>,
    pub type_endpoint: Option<String>,
    pub dictionary: Option<PathBuf>,
    pub type_db: Option<PathBuf>,
    pub temporal_rules: Option<PathBuf>,
    pub handle_map: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub workers: usize,
    pub max_in_flight: usize,
    pub clique_max_steps: u64,
    pub resource_base: String,
    pub topico_base: String,
    /// Base IRI for topic instances.
    pub base_iri: String,
    pub maker: String,
    /// Creation timestamp stamped on topics. Defaults to each batch's
    /// window end so reruns are byte-identical.
    pub created_at: Option<DateTime<Utc>>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            tau_rho: 0.15,
            tau_p: 0.35,
            tau_e: 0.001,
            tau_e_min: 0.0005,
            tau_loc: 0.01,
            tau_kc: 0.01,
            tau_c: 0.8,
            interval_minutes: 2,
            linker: LinkerMode::Dictionary,
            endpoint: None,
            type_endpoint: None,
            dictionary: None,
            type_db: None,
            temporal_rules: None,
            handle_map: None,
            cache_dir: None,
            out_dir: PathBuf::from("out"),
            workers: 0,
            max_in_flight: 8,
            clique_max_steps: 10_000_000,
            resource_base: "http://dbpedia.org/resource/".into(),
            topico_base: crate::emit::DEFAULT_TOPICO_BASE.into(),
            base_iri: "http://example.org".into(),
            maker: "http://example.org/agent/microtopics".into(),
            created_at: None,
        }
    }
}

impl PipelineConfig {
    /// Reads a configuration file of `key = value` lines. `#` starts a
    /// comment; unknown keys are rejected.
    pub fn from_file(path: &Path) -> Result<Self> {
        let mut config = PipelineConfig::default();
        config.merge_file(path)?;
        Ok(config)
    }

    pub fn merge_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "{}:{}: expected key=value, got `{raw}`",
                    path.display(),
                    idx + 1
                )));
            };
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Applies one key=value setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn float(key: &str, value: &str) -> Result<f64> {
            value
                .parse()
                .map_err(|_| Error::Config(format!("{key}: `{value}` is not a number")))
        }
        match key {
            "tau_rho" => self.tau_rho = float(key, value)?,
            "tau_p" => self.tau_p = float(key, value)?,
            "tau_e" => self.tau_e = float(key, value)?,
            "tau_e_min" => self.tau_e_min = float(key, value)?,
            "tau_loc" => self.tau_loc = float(key, value)?,
            "tau_kc" => self.tau_kc = float(key, value)?,
            "tau_c" => self.tau_c = float(key, value)?,
            "interval_minutes" => {
                self.interval_minutes = value
                    .parse()
                    .map_err(|_| Error::Config(format!("interval_minutes: `{value}`")))?
            }
            "linker" => self.linker = value.parse()?,
            "endpoint" => self.endpoint = Some(value.into()),
            "type_endpoint" => self.type_endpoint = Some(value.into()),
            "dictionary" => self.dictionary = Some(value.into()),
            "type_db" => self.type_db = Some(value.into()),
            "temporal_rules" => self.temporal_rules = Some(value.into()),
            "handle_map" => self.handle_map = Some(value.into()),
            "cache_dir" => self.cache_dir = Some(value.into()),
            "out_dir" => self.out_dir = value.into(),
            "workers" => {
                self.workers = value
                    .parse()
                    .map_err(|_| Error::Config(format!("workers: `{value}`")))?
            }
            "max_in_flight" => {
                self.max_in_flight = value
                    .parse()
                    .map_err(|_| Error::Config(format!("max_in_flight: `{value}`")))?
            }
            "clique_max_steps" => {
                self.clique_max_steps = value
                    .parse()
                    .map_err(|_| Error::Config(format!("clique_max_steps: `{value}`")))?
            }
            "resource_base" => self.resource_base = value.into(),
            "topico_base" => self.topico_base = value.into(),
            "base_iri" => self.base_iri = value.into(),
            "maker" => self.maker = value.into(),
            "created_at" => {
                self.created_at = Some(value.parse().map_err(|_| {
                    Error::Config(format!("created_at: `{value}` is not an RFC 3339 instant"))
                })?)
            }
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("tau_rho", self.tau_rho),
            ("tau_p", self.tau_p),
            ("tau_e", self.tau_e),
            ("tau_e_min", self.tau_e_min),
            ("tau_loc", self.tau_loc),
            ("tau_kc", self.tau_kc),
            ("tau_c", self.tau_c),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::Config(format!("{name} = {value} is outside [0, 1]")));
            }
        }
        if self.tau_e_min > self.tau_e {
            return Err(Error::Config(format!(
                "tau_e_min = {} must not exceed tau_e = {}",
                self.tau_e_min, self.tau_e
            )));
        }
        if self.interval_minutes < 1 {
            return Err(Error::Config("interval_minutes must be >= 1".into()));
        }
        match self.linker {
            LinkerMode::Dictionary if self.dictionary.is_none() => Err(Error::Config(
                "dictionary mode requires a dictionary file".into(),
            )),
            LinkerMode::Remote if self.endpoint.is_none() => {
                Err(Error::Config("remote mode requires an endpoint".into()))
            }
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::io::Write;

    use super::*;

    #[test]
    fn defaults_follow_the_threshold_table() {
        let c = PipelineConfig::default();
        assert_eq!(c.tau_rho, 0.15);
        assert_eq!(c.tau_p, 0.35);
        assert_eq!(c.tau_e, 0.001);
        assert_eq!(c.tau_e_min, 0.0005);
        assert_eq!(c.tau_loc, 0.01);
        assert_eq!(c.tau_kc, 0.01);
        assert_eq!(c.tau_c, 0.8);
        assert_eq!(c.interval_minutes, 2);
    }

    #[test]
    fn key_value_file_round_trip() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# a comment").unwrap();
        writeln!(f, "tau_e = 0.01").unwrap();
        writeln!(f, "linker = dictionary").unwrap();
        writeln!(f, "dictionary = /tmp/dict.json").unwrap();
        writeln!(f, "out_dir = /tmp/out  # trailing comment").unwrap();
        let c = PipelineConfig::from_file(f.path()).unwrap();
        assert_eq!(c.tau_e, 0.01);
        assert_eq!(c.dictionary.as_deref(), Some(Path::new("/tmp/dict.json")));
        assert_eq!(c.out_dir, PathBuf::from("/tmp/out"));
    }

    #[test]
    fn unknown_key_is_rejected() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "tau_q = 0.5").unwrap();
        assert!(PipelineConfig::from_file(f.path()).is_err());
    }

    #[test]
    fn tau_e_min_above_tau_e_fails_validation() {
        let mut c = PipelineConfig {
            dictionary: Some("dict.json".into()),
            tau_e_min: 0.01,
            tau_e: 0.001,
            ..PipelineConfig::default()
        };
        assert!(c.validate().is_err());
        c.tau_e_min = 0.001;
        assert!(c.validate().is_ok());
    }

    #[test]
    fn threshold_out_of_range_fails_validation() {
        let c = PipelineConfig {
            dictionary: Some("dict.json".into()),
            tau_c: 1.2,
            ..PipelineConfig::default()
        };
        assert!(c.validate().is_err());
    }
}
