//! The Topico emission vocabulary: the classes, properties, and
//! temporal individuals that topics are expressed with.

pub const TIME_NS: &str = "http://www.w3.org/2006/time#";
pub const FOAF_NS: &str = "http://xmlns.com/foaf/0.1/";
pub const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema#";
pub const GREG_NS: &str = "http://www.w3.org/ns/time/gregorian/";
pub const DBR_NS: &str = "http://dbpedia.org/resource/";

pub const DEFAULT_TOPICO_BASE: &str = "http://example.org/topico#";

/// IRI constants of the topic vocabulary, namespaced under a
/// configurable base.
#[derive(Debug, Clone)]
pub struct TopicoVocab {
    base: String,
}

impl Default for TopicoVocab {
    fn default() -> Self {
        TopicoVocab {
            base: DEFAULT_TOPICO_BASE.into(),
        }
    }
}

impl TopicoVocab {
    pub fn with_base(base: impl Into<String>) -> Self {
        TopicoVocab { base: base.into() }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    fn term(&self, local: &str) -> String {
        format!("{}{}", self.base, local)
    }

    // classes
    pub fn class_topic(&self) -> String {
        self.term("Topic")
    }
    pub fn class_location(&self) -> String {
        self.term("Location")
    }
    pub fn class_temporal_expression(&self) -> String {
        self.term("TemporalExpression")
    }

    // object and data properties
    pub fn has_agent(&self) -> String {
        self.term("hasAgent")
    }
    pub fn has_person(&self) -> String {
        self.term("hasPerson")
    }
    pub fn has_location(&self) -> String {
        self.term("hasLocation")
    }
    pub fn has_temporal_expression(&self) -> String {
        self.term("hasTemporalExpression")
    }
    pub fn is_about(&self) -> String {
        self.term("isAbout")
    }
    pub fn observation_interval(&self) -> String {
        self.term("observationInterval")
    }
    pub fn topic_created_at(&self) -> String {
        self.term("topicCreatedAt")
    }
    pub fn maker(&self) -> String {
        format!("{FOAF_NS}maker")
    }

    // relative temporal individuals
    pub fn today(&self) -> String {
        self.term("Today")
    }
    pub fn tomorrow(&self) -> String {
        self.term("Tomorrow")
    }
    pub fn yesterday(&self) -> String {
        self.term("Yesterday")
    }
    pub fn tonight(&self) -> String {
        self.term("Tonight")
    }
    pub fn now(&self) -> String {
        self.term("Now")
    }

    /// Spring, Summer, Fall, Winter.
    pub fn seasons(&self) -> [String; 4] {
        ["Spring", "Summer", "Fall", "Winter"].map(|s| self.term(s))
    }

    /// The seven `time:` weekday individuals.
    pub fn weekdays() -> [String; 7] {
        [
            "Monday",
            "Tuesday",
            "Wednesday",
            "Thursday",
            "Friday",
            "Saturday",
            "Sunday",
        ]
        .map(|d| format!("{TIME_NS}{d}"))
    }

    /// The twelve `greg:` month individuals.
    pub fn months() -> [String; 12] {
        [
            "January",
            "February",
            "March",
            "April",
            "May",
            "June",
            "July",
            "August",
            "September",
            "October",
            "November",
            "December",
        ]
        .map(|m| format!("{GREG_NS}{m}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_are_namespaced_under_the_base() {
        let vocab = TopicoVocab::default();
        assert_eq!(vocab.class_topic(), "http://example.org/topico#Topic");
        assert_eq!(vocab.has_person(), "http://example.org/topico#hasPerson");
        let custom = TopicoVocab::with_base("http://data.example/v#");
        assert_eq!(custom.is_about(), "http://data.example/v#isAbout");
    }

    #[test]
    fn maker_lives_in_foaf() {
        assert_eq!(
            TopicoVocab::default().maker(),
            "http://xmlns.com/foaf/0.1/maker"
        );
    }
}
