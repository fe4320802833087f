//! Deterministic Turtle serialization of topics.

use std::fmt::Write as _;

use chrono::{DateTime, SecondsFormat, Utc};

use super::vocab::{TopicoVocab, DBR_NS, FOAF_NS, TIME_NS, XSD_NS};
use super::Topic;

fn is_safe_local(local: &str) -> bool {
    !local.is_empty() && local.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Renders an IRI as `prefix:local` when it falls under a declared
/// namespace and the local part needs no escaping; otherwise `<iri>`.
fn term(iri: &str, vocab: &TopicoVocab) -> String {
    for (prefix, ns) in [
        ("topico", vocab.base()),
        ("time", TIME_NS),
        ("foaf", FOAF_NS),
        ("xsd", XSD_NS),
        ("dbr", DBR_NS),
    ] {
        if let Some(local) = iri.strip_prefix(ns) {
            if is_safe_local(local) {
                return format!("{prefix}:{local}");
            }
        }
    }
    format!("<{iri}>")
}

fn escape_literal(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            other => out.push(other),
        }
    }
    out
}

fn datetime_literal(ts: DateTime<Utc>) -> String {
    format!(
        "\"{}\"^^xsd:dateTime",
        escape_literal(&ts.to_rfc3339_opts(SecondsFormat::Secs, true))
    )
}

/// Serializes topics as a Turtle document.
///
/// Every topic contributes one type triple, one triple per element, and
/// seven interval/meta triples (observation interval with beginning and
/// end instants, creation timestamp, maker). Output is byte-stable:
/// topics ordered by id, elements lexicographically by IRI, timestamps
/// in UTC with second precision.
pub fn serialize_turtle(topics: &[Topic], vocab: &TopicoVocab) -> String {
    let mut doc = String::new();
    writeln!(doc, "@prefix topico: <{}> .", vocab.base()).unwrap();
    writeln!(doc, "@prefix time: <{TIME_NS}> .").unwrap();
    writeln!(doc, "@prefix foaf: <{FOAF_NS}> .").unwrap();
    writeln!(doc, "@prefix xsd: <{XSD_NS}> .").unwrap();
    writeln!(doc, "@prefix dbr: <{DBR_NS}> .").unwrap();

    let mut ordered: Vec<&Topic> = topics.iter().collect();
    ordered.sort_by(|a, b| a.id.cmp(&b.id));

    for topic in ordered {
        let id = term(&topic.id, vocab);
        let interval_iri = format!("{}/interval", topic.id);
        let begin_iri = format!("{interval_iri}/begin");
        let end_iri = format!("{interval_iri}/end");

        writeln!(doc).unwrap();
        writeln!(doc, "{id} a {} ;", term(&vocab.class_topic(), vocab)).unwrap();
        let mut elements = topic.elements.clone();
        elements.sort_by(|a, b| a.0.cmp(&b.0));
        for (iri, kind) in &elements {
            let prop = super::kind_property(*kind, vocab);
            writeln!(doc, "    {} {} ;", term(&prop, vocab), term(iri, vocab)).unwrap();
        }
        writeln!(
            doc,
            "    {} {} ;",
            term(&vocab.observation_interval(), vocab),
            term(&interval_iri, vocab)
        )
        .unwrap();
        writeln!(
            doc,
            "    {} {} ;",
            term(&vocab.topic_created_at(), vocab),
            datetime_literal(topic.created_at)
        )
        .unwrap();
        writeln!(doc, "    foaf:maker {} .", term(&topic.maker, vocab)).unwrap();

        writeln!(doc).unwrap();
        writeln!(
            doc,
            "{} time:hasBeginning {} ;",
            term(&interval_iri, vocab),
            term(&begin_iri, vocab)
        )
        .unwrap();
        writeln!(doc, "    time:hasEnd {} .", term(&end_iri, vocab)).unwrap();
        writeln!(
            doc,
            "{} time:inXSDDateTime {} .",
            term(&begin_iri, vocab),
            datetime_literal(topic.interval_start)
        )
        .unwrap();
        writeln!(
            doc,
            "{} time:inXSDDateTime {} .",
            term(&end_iri, vocab),
            datetime_literal(topic.interval_end)
        )
        .unwrap();
    }
    doc
}

/// The vocabulary itself as Turtle: class and property declarations
/// plus the temporal individuals, rendered for the configured base so
/// emitted data is self-describing.
pub fn vocabulary_turtle(vocab: &TopicoVocab) -> String {
    let mut doc = String::new();
    writeln!(doc, "@prefix topico: <{}> .", vocab.base()).unwrap();
    writeln!(doc, "@prefix time: <{TIME_NS}> .").unwrap();
    writeln!(doc, "@prefix greg: <{}> .", super::vocab::GREG_NS).unwrap();
    writeln!(doc, "@prefix foaf: <{FOAF_NS}> .").unwrap();
    writeln!(doc, "@prefix xsd: <{XSD_NS}> .").unwrap();
    writeln!(doc, "@prefix owl: <http://www.w3.org/2002/07/owl#> .").unwrap();
    writeln!(
        doc,
        "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> ."
    )
    .unwrap();
    doc.push('\n');
    doc.push_str(concat!(
        "topico:Topic a owl:Class .\n",
        "topico:Location a owl:Class .\n",
        "topico:TemporalExpression a owl:Class .\n",
        "topico:TemporalTerm a owl:Class ;\n",
        "    rdfs:subClassOf topico:TemporalExpression .\n",
        "topico:Season a owl:Class ;\n",
        "    rdfs:subClassOf topico:TemporalTerm .\n",
        "\n",
        "topico:hasAgent a owl:ObjectProperty ;\n",
        "    rdfs:domain topico:Topic ;\n",
        "    rdfs:range foaf:Agent .\n",
        "topico:hasPerson a owl:ObjectProperty ;\n",
        "    rdfs:subPropertyOf topico:hasAgent ;\n",
        "    rdfs:range foaf:Person .\n",
        "topico:hasLocation a owl:ObjectProperty ;\n",
        "    rdfs:domain topico:Topic ;\n",
        "    rdfs:range topico:Location .\n",
        "topico:hasTemporalExpression a owl:ObjectProperty ;\n",
        "    rdfs:domain topico:Topic ;\n",
        "    rdfs:range topico:TemporalExpression .\n",
        "topico:isAbout a owl:ObjectProperty ;\n",
        "    rdfs:domain topico:Topic .\n",
        "topico:observationInterval a owl:ObjectProperty ;\n",
        "    rdfs:domain topico:Topic ;\n",
        "    rdfs:range time:Interval .\n",
        "topico:topicCreatedAt a owl:DatatypeProperty ;\n",
        "    rdfs:domain topico:Topic ;\n",
        "    rdfs:range xsd:dateTime .\n",
        "\n",
        "topico:Today a topico:TemporalExpression .\n",
        "topico:Tomorrow a topico:TemporalExpression .\n",
        "topico:Yesterday a topico:TemporalExpression .\n",
        "topico:Tonight a topico:TemporalExpression .\n",
        "topico:Now a topico:TemporalExpression .\n",
        "topico:Spring a topico:Season .\n",
        "topico:Summer a topico:Season .\n",
        "topico:Fall a topico:Season .\n",
        "topico:Winter a topico:Season .\n",
        "\n",
    ));
    for day in TopicoVocab::weekdays() {
        writeln!(doc, "{} a time:DayOfWeek .", term(&day, vocab)).unwrap();
    }
    for month in TopicoVocab::months() {
        let local = month.rsplit('/').next().unwrap();
        writeln!(doc, "greg:{local} a time:MonthOfYear .").unwrap();
    }
    doc
}
