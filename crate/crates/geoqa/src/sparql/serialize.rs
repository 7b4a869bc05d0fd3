//! Query text emission with a bit-stable layout: `PREFIX` headers in
//! prefix-map order, two-space indentation, one space around the `.`
//! pattern separators.

use std::collections::BTreeSet;

use crate::kb::{Iri, PrefixMap, Term};

use super::ast::{GroupItem, PatternNode, Projection, SelectQuery};
use super::SparqlError;

pub fn serialize(q: &SelectQuery, prefixes: &PrefixMap) -> Result<String, SparqlError> {
    q.validate()?;

    let mut used = BTreeSet::new();
    collect_prefixes(q, &mut used);
    let mut out = String::new();
    for prefix in prefixes.prefixes() {
        if used.contains(prefix) {
            let base = prefixes.base(prefix).expect("listed prefix has a base");
            out.push_str(&format!("PREFIX {prefix}: <{base}>\n"));
        }
    }
    for prefix in &used {
        if prefixes.base(prefix).is_none() {
            return Err(SparqlError::Kb(crate::kb::KbError::UnknownPrefix(
                prefix.clone(),
            )));
        }
    }
    if !out.is_empty() {
        out.push('\n');
    }
    write_select(q, 0, &mut out);
    Ok(out)
}

/// The query body without `PREFIX` headers, for golden-file checks.
pub fn serialize_bare(q: &SelectQuery) -> Result<String, SparqlError> {
    q.validate()?;
    let mut out = String::new();
    write_select(q, 0, &mut out);
    Ok(out)
}

fn collect_prefixes(q: &SelectQuery, used: &mut BTreeSet<String>) {
    fn node(n: &PatternNode, used: &mut BTreeSet<String>) {
        if let PatternNode::Term(Term::Iri(iri)) = n {
            used.insert(iri.prefix.clone());
        }
    }
    for item in &q.group {
        match item {
            GroupItem::Pattern(p) => {
                node(&p.subject, used);
                used.insert(p.predicate.prefix.clone());
                node(&p.object, used);
            }
            GroupItem::Filter(_) => {}
            GroupItem::SubQuery(sq) => collect_prefixes(sq, used),
        }
    }
}

fn indent(level: usize, out: &mut String) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_select(q: &SelectQuery, level: usize, out: &mut String) {
    indent(level, out);
    out.push_str("SELECT");
    match &q.projection {
        Projection::Vars(vars) => {
            for v in vars {
                out.push_str(&format!(" {v}"));
            }
        }
        Projection::Aggregate(a) => {
            out.push_str(&format!(" ({}({}) as {})", a.func.name(), a.input, a.alias));
        }
    }
    out.push('\n');
    indent(level, out);
    out.push_str("WHERE {\n");
    for item in &q.group {
        match item {
            GroupItem::Pattern(p) => {
                indent(level + 1, out);
                out.push_str(&format!(
                    "{} {} {} .\n",
                    node_text(&p.subject),
                    iri_text(&p.predicate),
                    node_text(&p.object)
                ));
            }
            GroupItem::Filter(f) => {
                indent(level + 1, out);
                out.push_str(&format!(
                    "FILTER(regex(str({}),\"{}\",\"{}\"))\n",
                    f.var, f.pattern, f.flags
                ));
            }
            GroupItem::SubQuery(sq) => {
                indent(level + 1, out);
                out.push_str("{\n");
                write_select(sq, level + 2, out);
                indent(level + 1, out);
                out.push_str("}\n");
            }
        }
    }
    indent(level, out);
    out.push_str("}\n");
}

fn iri_text(iri: &Iri) -> String {
    iri.to_string()
}

fn node_text(n: &PatternNode) -> String {
    match n {
        PatternNode::Var(v) => v.to_string(),
        PatternNode::Term(t) => t.to_string(),
    }
}

/// Splits query text into comparison tokens: whitespace collapses and
/// the structural characters become their own tokens. Golden tests use
/// this to compare generated queries against golden text.
pub fn comparison_tokens(text: &str) -> Vec<String> {
    let mut spaced = String::with_capacity(text.len() * 2);
    for c in text.chars() {
        match c {
            '{' | '}' | '(' | ')' | ',' => {
                spaced.push(' ');
                spaced.push(c);
                spaced.push(' ');
            }
            '.' => {
                spaced.push(' ');
                spaced.push(c);
                spaced.push(' ');
            }
            _ => spaced.push(c),
        }
    }
    spaced.split_whitespace().map(|s| s.to_string()).collect()
}
