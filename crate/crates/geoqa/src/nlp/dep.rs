//! Rule-based dependency analysis producing CoNLL-X-aligned rows.
//!
//! The rules cover the question shapes of the bundled suite. In order:
//! the final token (question particle, verb, or copular form) is the
//! PREDICATE; punctuation attaches to it; a verb right before the
//! predicate is its ARGUMENT; accusative nouns are OBJECTs of the next
//! verb; genitive or bare nouns before a possessive-marked word are
//! POSSESSORs; relativized locatives, participles, oblique nouns,
//! adjectives and adverbs are MODIFIERs; what remains leans on the
//! predicate as ARGUMENT.

use std::fmt;

use super::morph::{MorphAnalysis, Pos};
use super::{NlpError, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepRelation {
    Subject,
    Object,
    Modifier,
    Possessor,
    Argument,
    Predicate,
    Punctuation,
    Classifier,
}

impl DepRelation {
    pub fn name(&self) -> &'static str {
        match self {
            DepRelation::Subject => "SUBJECT",
            DepRelation::Object => "OBJECT",
            DepRelation::Modifier => "MODIFIER",
            DepRelation::Possessor => "POSSESSOR",
            DepRelation::Argument => "ARGUMENT",
            DepRelation::Predicate => "PREDICATE",
            DepRelation::Punctuation => "PUNCTUATION",
            DepRelation::Classifier => "CLASSIFIER",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "SUBJECT" => DepRelation::Subject,
            "OBJECT" => DepRelation::Object,
            "MODIFIER" => DepRelation::Modifier,
            "POSSESSOR" => DepRelation::Possessor,
            "ARGUMENT" => DepRelation::Argument,
            "PREDICATE" => DepRelation::Predicate,
            "PUNCTUATION" => DepRelation::Punctuation,
            "CLASSIFIER" => DepRelation::Classifier,
            _ => return None,
        })
    }
}

impl fmt::Display for DepRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One CoNLL-X row. `head` is the 1-based index of the governing token,
/// 0 for the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepRow {
    pub id: usize,
    pub form: String,
    pub lemma: String,
    pub cpostag: String,
    pub postag: String,
    pub feats: String,
    pub head: usize,
    pub relation: DepRelation,
}

const INTERROGATIVE_LEMMAS: &[&str] = &["ne", "hangi", "kaç", "nasıl", "kim", "nere"];

fn is_interrogative(a: &MorphAnalysis) -> bool {
    a.has_root_feature("Ques") || INTERROGATIVE_LEMMAS.contains(&a.folded_lemma())
}

fn predicate_eligible(a: &MorphAnalysis) -> bool {
    matches!(a.pos, Pos::Verb | Pos::Postp) || a.is_copular() || a.has_root_feature("Ques")
}

fn is_relativized(a: &MorphAnalysis) -> bool {
    a.has_any_feature("Rel")
}

fn is_participle(a: &MorphAnalysis) -> bool {
    a.pos == Pos::Verb && a.has_any_feature("PresPart")
}

pub fn parse_dependencies(
    tokens: &[Token],
    analyses: &[MorphAnalysis],
) -> Result<Vec<DepRow>, NlpError> {
    assert_eq!(tokens.len(), analyses.len());
    let n = tokens.len();

    // predicate: last non-punctuation token, if eligible
    let pred = analyses
        .iter()
        .rposition(|a| a.pos != Pos::Punc)
        .filter(|&i| predicate_eligible(&analyses[i]))
        .ok_or(NlpError::NoPredicate)?;
    let pred_id = pred + 1;

    let next_verb = |from: usize| -> Option<usize> {
        (from + 1..n).find(|&j| analyses[j].pos == Pos::Verb || j == pred)
    };
    let next_of = |from: usize, wanted: &[Pos]| -> Option<usize> {
        (from + 1..n).find(|&j| wanted.contains(&analyses[j].pos))
    };

    let mut rows = Vec::with_capacity(n);
    for (k, (token, a)) in tokens.iter().zip(analyses).enumerate() {
        let (relation, head) = if k == pred {
            (DepRelation::Predicate, 0)
        } else if a.pos == Pos::Punc {
            (DepRelation::Punctuation, pred_id)
        } else if a.pos == Pos::Verb {
            if k + 1 == pred {
                (DepRelation::Argument, pred_id)
            } else if is_participle(a) {
                let head = (k + 1..n)
                    .find(|&j| analyses[j].pos == Pos::Verb)
                    .map(|j| j + 1)
                    .unwrap_or(pred_id);
                (DepRelation::Modifier, head)
            } else {
                (DepRelation::Argument, pred_id)
            }
        } else if a.pos == Pos::Noun && a.case() == Some("Acc") {
            let head = next_verb(k).map(|j| j + 1).unwrap_or(pred_id);
            (DepRelation::Object, head)
        } else if a.pos == Pos::Noun && is_relativized(a) {
            let head = (k + 1..n)
                .find(|&j| analyses[j].pos == Pos::Verb)
                .map(|j| j + 1)
                .unwrap_or(pred_id);
            (DepRelation::Modifier, head)
        } else if a.pos == Pos::Noun && a.case() == Some("Gen") {
            let head = (k + 1..n)
                .find(|&j| analyses[j].has_root_feature("P3sg"))
                .map(|j| j + 1)
                .unwrap_or(pred_id);
            (DepRelation::Possessor, head)
        } else if a.pos == Pos::Noun
            && a.case() == Some("Nom")
            && a.has_root_feature("Pnon")
            && k + 1 < n
            && analyses[k + 1].has_root_feature("P3sg")
        {
            (DepRelation::Possessor, k + 2)
        } else if a.pos == Pos::Noun
            && a.case() == Some("Nom")
            && (k + 1 == pred || (k + 1 < n && is_interrogative(&analyses[k + 1])))
        {
            (DepRelation::Subject, pred_id)
        } else if a.pos == Pos::Noun && matches!(a.case(), Some("Dat" | "Loc" | "Abl")) {
            let head = next_verb(k).map(|j| j + 1).unwrap_or(pred_id);
            (DepRelation::Modifier, head)
        } else if a.pos == Pos::Adj {
            let head = next_of(k, &[Pos::Noun, Pos::Verb])
                .map(|j| j + 1)
                .unwrap_or(pred_id);
            (DepRelation::Modifier, head)
        } else if a.pos == Pos::Adv {
            let head = next_of(k, &[Pos::Adj, Pos::Noun, Pos::Verb])
                .map(|j| j + 1)
                .unwrap_or(pred_id);
            (DepRelation::Modifier, head)
        } else if a.pos == Pos::Det || a.pos == Pos::Num {
            let head = next_of(k, &[Pos::Noun]).map(|j| j + 1).unwrap_or(pred_id);
            (DepRelation::Modifier, head)
        } else {
            (DepRelation::Argument, pred_id)
        };
        rows.push(DepRow {
            id: k + 1,
            form: token.surface.clone(),
            lemma: a.lemma.clone(),
            cpostag: a.pos.name().to_string(),
            postag: a.pos.name().to_string(),
            feats: a.feats_string(),
            head,
            relation,
        });
    }
    Ok(rows)
}

/// Follows heads from every node; true when each chain reaches the root
/// within `n` steps and exactly one PREDICATE/root exists.
pub fn is_single_rooted_and_acyclic(rows: &[DepRow]) -> bool {
    let roots = rows
        .iter()
        .filter(|r| r.head == 0 && r.relation == DepRelation::Predicate)
        .count();
    if roots != 1 || rows.iter().any(|r| r.head == r.id || r.head > rows.len()) {
        return false;
    }
    for row in rows {
        let mut cur = row.head;
        let mut steps = 0;
        while cur != 0 {
            cur = rows[cur - 1].head;
            steps += 1;
            if steps > rows.len() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nlp::{analyze, disambiguate, tokenize};
    use crate::resources;

    fn parse(question: &str) -> Vec<DepRow> {
        let lex = resources::bundled_lexicon();
        let tokens = tokenize(question).unwrap();
        let all: Vec<_> = tokens.iter().map(|t| analyze(&t.surface, &lex)).collect();
        let analyses = disambiguate(&all);
        parse_dependencies(&tokens, &analyses).unwrap()
    }

    fn triples(rows: &[DepRow]) -> Vec<(String, String, usize)> {
        rows.iter()
            .map(|r| (r.lemma.clone(), r.relation.to_string(), r.head))
            .collect()
    }

    #[test]
    fn reference_parse_of_the_neighbour_sentence() {
        let rows = parse("Ankara iline komşu olan illeri gösterir misin ?");
        assert_eq!(
            triples(&rows),
            vec![
                ("Ankara".into(), "POSSESSOR".into(), 2),
                ("il".into(), "MODIFIER".into(), 4),
                ("komşu".into(), "MODIFIER".into(), 4),
                ("ol".into(), "MODIFIER".into(), 6),
                ("il".into(), "OBJECT".into(), 6),
                ("göster".into(), "ARGUMENT".into(), 7),
                ("mi".into(), "PREDICATE".into(), 0),
                ("?".into(), "PUNCTUATION".into(), 7),
            ]
        );
    }

    #[test]
    fn reference_parse_of_the_area_sentence() {
        let rows = parse("Ege Bölgesi'nin yüzölçümü ne kadardır ?");
        assert_eq!(
            triples(&rows),
            vec![
                ("ege".into(), "POSSESSOR".into(), 2),
                ("bölge".into(), "POSSESSOR".into(), 3),
                ("yüzölçüm".into(), "SUBJECT".into(), 5),
                ("ne".into(), "ARGUMENT".into(), 5),
                ("kadar".into(), "PREDICATE".into(), 0),
                ("?".into(), "PUNCTUATION".into(), 5),
            ]
        );
    }

    #[test]
    fn reference_parse_of_the_population_sentence() {
        let rows = parse("Ege Bölgesi'ndeki şehirlerin nüfuslarını gösterir misin ?");
        assert_eq!(
            triples(&rows),
            vec![
                ("ege".into(), "POSSESSOR".into(), 2),
                ("bölge".into(), "MODIFIER".into(), 5),
                ("şehir".into(), "POSSESSOR".into(), 4),
                ("nüfus".into(), "OBJECT".into(), 5),
                ("göster".into(), "ARGUMENT".into(), 6),
                ("mi".into(), "PREDICATE".into(), 0),
                ("?".into(), "PUNCTUATION".into(), 6),
            ]
        );
    }

    #[test]
    fn sentences_without_a_predicate_are_rejected() {
        let lex = resources::bundled_lexicon();
        let tokens = tokenize("Ankara il").unwrap();
        let all: Vec<_> = tokens.iter().map(|t| analyze(&t.surface, &lex)).collect();
        let analyses = disambiguate(&all);
        assert!(matches!(
            parse_dependencies(&tokens, &analyses),
            Err(NlpError::NoPredicate)
        ));
    }

    #[test]
    fn parses_are_single_rooted_and_acyclic() {
        for q in [
            "Türkiye'nin en derin denizi hangisidir ?",
            "Ege Bölgesi'nde kaç şehir vardır ?",
            "Konak hangi şehirde konumlanır ?",
        ] {
            let rows = parse(q);
            assert!(is_single_rooted_and_acyclic(&rows), "bad structure for {q}");
        }
    }
}
