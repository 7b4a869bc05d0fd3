//! RDF-style terms: prefixed IRIs, literals and triples.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::KbError;

/// A prefixed IRI such as `geo_turkce:Sehir` or `ins:komsu`.
///
/// Equality is exact string equality on `(prefix, local)`; expansion to a
/// full IRI string goes through the [`PrefixMap`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Iri {
    pub prefix: String,
    pub local: String,
}

impl Iri {
    pub fn new(prefix: &str, local: &str) -> Self {
        debug_assert!(!local.is_empty() && !local.contains(char::is_whitespace));
        Iri {
            prefix: prefix.to_string(),
            local: local.to_string(),
        }
    }

    /// `geo_turkce:<local>` — ontology class namespace.
    pub fn class(local: &str) -> Self {
        Iri::new("geo_turkce", local)
    }

    /// `ins:<local>` — property and individual namespace.
    pub fn ins(local: &str) -> Self {
        Iri::new("ins", local)
    }

    pub fn rdf_type() -> Self {
        Iri::new("rdf", "type")
    }

    pub fn rdfs_subclass_of() -> Self {
        Iri::new("rdfs", "subClassOf")
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.prefix, self.local)
    }
}

/// Fixed-point decimal literal. Stored as `units * 10^-scale` so that the
/// text form round-trips losslessly and sums stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Decimal {
    units: i64,
    scale: u32,
}

impl Decimal {
    pub fn new(units: i64, scale: u32) -> Self {
        Decimal { units, scale }.normalize()
    }

    fn normalize(mut self) -> Self {
        while self.scale > 0 && self.units % 10 == 0 {
            self.units /= 10;
            self.scale -= 1;
        }
        self
    }

    pub fn from_int(v: i64) -> Self {
        Decimal { units: v, scale: 0 }
    }

    /// Numeric comparison across scales.
    pub fn cmp_numeric(&self, other: &Decimal) -> std::cmp::Ordering {
        let (a, b) = (self.units as i128, other.units as i128);
        let a = a * 10i128.pow(other.scale);
        let b = b * 10i128.pow(self.scale);
        a.cmp(&b)
    }

    pub fn add(&self, other: &Decimal) -> Decimal {
        let scale = self.scale.max(other.scale);
        let a = self.units * 10i64.pow(scale - self.scale);
        let b = other.units * 10i64.pow(scale - other.scale);
        Decimal::new(a + b, scale)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale == 0 {
            return write!(f, "{}", self.units);
        }
        let sign = if self.units < 0 { "-" } else { "" };
        let abs = self.units.unsigned_abs();
        let pow = 10u64.pow(self.scale);
        write!(
            f,
            "{}{}.{:0width$}",
            sign,
            abs / pow,
            abs % pow,
            width = self.scale as usize
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalParseError(String);

impl fmt::Display for DecimalParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad decimal `{}`", self.0)
    }
}

impl std::error::Error for DecimalParseError {}

impl FromStr for Decimal {
    type Err = DecimalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DecimalParseError(s.to_string());
        match s.split_once('.') {
            None => Ok(Decimal::from_int(s.parse().map_err(|_| bad())?)),
            Some((int, frac)) => {
                // nine fractional digits keep scale alignment within i64
                if frac.len() > 9 {
                    return Err(bad());
                }
                let scale = frac.len() as u32;
                let mut units: i64 = format!("{int}{frac}").parse().map_err(|_| bad())?;
                if int.starts_with('-') && units > 0 {
                    units = -units;
                }
                Ok(Decimal::new(units, scale))
            }
        }
    }
}

/// A term: an IRI or one of the three literal kinds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Term {
    Iri(Iri),
    Str(String),
    Int(i64),
    Dec(Decimal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(i) => Some(i),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        !matches!(self, Term::Iri(_))
    }

    /// Canonical text form used in gold files and reports: IRIs as
    /// `prefix:local`, numbers in their lossless decimal form, strings
    /// verbatim.
    pub fn canonical(&self) -> String {
        match self {
            Term::Iri(i) => i.to_string(),
            Term::Str(s) => s.clone(),
            Term::Int(v) => v.to_string(),
            Term::Dec(d) => d.to_string(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Str(s) => write!(f, "\"{s}\""),
            other => write!(f, "{}", other.canonical()),
        }
    }
}

/// Subject–predicate–object assertion.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Iri, predicate: Iri, object: Term) -> Self {
        Triple {
            subject,
            predicate,
            object,
        }
    }
}

/// Binds short prefixes to IRI base strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixMap {
    bases: BTreeMap<String, String>,
    order: Vec<String>,
}

impl PrefixMap {
    pub fn new() -> Self {
        PrefixMap {
            bases: BTreeMap::new(),
            order: Vec::new(),
        }
    }

    /// The four prefixes every bundled resource uses.
    pub fn standard() -> Self {
        let mut m = PrefixMap::new();
        m.insert("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
        m.insert("rdfs", "http://www.w3.org/2000/01/rdf-schema#");
        m.insert("geo_turkce", "http://www.semanticweb.org/ontologies/geo_turkce#");
        m.insert(
            "ins",
            "http://www.semanticweb.org/ontologies/geo_turkce/instances#",
        );
        m
    }

    pub fn insert(&mut self, prefix: &str, base: &str) {
        if !self.bases.contains_key(prefix) {
            self.order.push(prefix.to_string());
        }
        self.bases.insert(prefix.to_string(), base.to_string());
    }

    pub fn base(&self, prefix: &str) -> Option<&str> {
        self.bases.get(prefix).map(|s| s.as_str())
    }

    /// Declaration order, for deterministic `PREFIX` headers.
    pub fn prefixes(&self) -> impl Iterator<Item = &str> {
        self.order.iter().map(|s| s.as_str())
    }

    /// Expands `prefix:local` to the full IRI string (the value of
    /// `str(?x)` in filters).
    pub fn expand(&self, iri: &Iri) -> Result<String, KbError> {
        self.base(&iri.prefix)
            .map(|b| format!("{b}{}", iri.local))
            .ok_or_else(|| KbError::UnknownPrefix(iri.prefix.clone()))
    }
}

impl Default for PrefixMap {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_round_trips_losslessly() {
        for text in ["0", "17.5", "-3.25", "85000", "0.07", "-0.5"] {
            let d: Decimal = text.parse().unwrap();
            assert_eq!(d.to_string(), text);
        }
    }

    #[test]
    fn decimal_equality_ignores_trailing_zeros() {
        let a: Decimal = "17.50".parse().unwrap();
        let b: Decimal = "17.5".parse().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn decimal_numeric_comparison_crosses_scales() {
        let a: Decimal = "17.5".parse().unwrap();
        let b: Decimal = "20".parse().unwrap();
        assert_eq!(a.cmp_numeric(&b), std::cmp::Ordering::Less);
        assert_eq!(a.add(&b).to_string(), "37.5");
    }

    #[test]
    fn prefix_expansion() {
        let m = PrefixMap::standard();
        assert_eq!(
            m.expand(&Iri::ins("Ankara")).unwrap(),
            "http://www.semanticweb.org/ontologies/geo_turkce/instances#Ankara"
        );
        assert!(m.expand(&Iri::new("nope", "X")).is_err());
    }
}
