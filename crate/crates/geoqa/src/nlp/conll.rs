//! CoNLL-X reading and writing. Ten tab-separated columns per row,
//! blank lines between sentences.
//!
//! Two layouts are accepted: the standard one (head index in HEAD,
//! relation in DEPREL) and a legacy layout with HEAD `_`, the head
//! index in DEPREL and the relation in PDEPREL. Detection is per
//! sentence, by checking whether the DEPREL column is numeric. Writing
//! always emits the standard layout.

use super::dep::{DepRelation, DepRow};
use super::NlpError;

pub fn read_conll(text: &str) -> Result<Vec<Vec<DepRow>>, NlpError> {
    let mut sentences = Vec::new();
    let mut current: Vec<(usize, Vec<String>)> = Vec::new();

    let mut flush = |current: &mut Vec<(usize, Vec<String>)>| -> Result<(), NlpError> {
        if current.is_empty() {
            return Ok(());
        }
        sentences.push(convert_sentence(current)?);
        current.clear();
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            flush(&mut current)?;
            continue;
        }
        let cols: Vec<String> = line.split('\t').map(|c| c.to_string()).collect();
        if cols.len() != 10 {
            return Err(NlpError::Conll {
                line: idx + 1,
                message: format!("expected 10 columns, got {}", cols.len()),
            });
        }
        current.push((idx + 1, cols));
    }
    flush(&mut current)?;
    Ok(sentences)
}

fn convert_sentence(rows: &[(usize, Vec<String>)]) -> Result<Vec<DepRow>, NlpError> {
    // legacy layout: every DEPREL (column 8) is numeric and HEAD is `_`
    let legacy_layout = rows
        .iter()
        .all(|(_, c)| c[6] == "_" && c[7].parse::<usize>().is_ok());

    rows.iter()
        .map(|(line, c)| {
            let (head_col, rel_col) = if legacy_layout { (7, 9) } else { (6, 7) };
            let head = c[head_col].parse::<usize>().map_err(|_| NlpError::Conll {
                line: *line,
                message: format!("non-numeric head index `{}`", c[head_col]),
            })?;
            let relation =
                DepRelation::from_name(&c[rel_col]).ok_or_else(|| NlpError::Conll {
                    line: *line,
                    message: format!("unknown relation `{}`", c[rel_col]),
                })?;
            Ok(DepRow {
                id: c[0].parse().map_err(|_| NlpError::Conll {
                    line: *line,
                    message: format!("non-numeric token id `{}`", c[0]),
                })?,
                form: c[1].clone(),
                lemma: c[2].clone(),
                cpostag: c[3].clone(),
                postag: c[4].clone(),
                feats: c[5].clone(),
                head,
                relation,
            })
        })
        .collect()
}

pub fn write_conll(sentences: &[Vec<DepRow>]) -> String {
    let mut out = String::new();
    for (i, rows) in sentences.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for r in rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t_\t_\n",
                r.id, r.form, r.lemma, r.cpostag, r.postag, r.feats, r.head, r.relation
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resources;

    #[test]
    fn standard_layout_round_trips_identically() {
        let text = resources::GOLD_CONLL_STANDARD;
        let sentences = read_conll(text).unwrap();
        assert!(!sentences.is_empty());
        assert_eq!(write_conll(&sentences), text);
    }

    #[test]
    fn legacy_layout_is_auto_detected() {
        let sentences = read_conll(resources::LEGACY_LAYOUT_SAMPLE).unwrap();
        assert_eq!(sentences.len(), 1);
        let rows = &sentences[0];
        assert_eq!(rows.len(), 8);
        // head indexes came from the DEPREL column
        assert_eq!(rows[0].head, 2);
        assert_eq!(rows[0].relation, DepRelation::Possessor);
        assert_eq!(rows[6].head, 0);
        assert_eq!(rows[6].relation, DepRelation::Predicate);
    }

    #[test]
    fn wrong_column_count_reports_the_row() {
        let err = read_conll("1\tAnkara\tAnkara\tNoun\tNoun\t_\t2\tPOSSESSOR\t_\n").unwrap_err();
        assert!(err.to_string().contains("row 1"));
        assert!(err.to_string().contains("9"));
    }

    #[test]
    fn non_numeric_head_is_an_error() {
        let err =
            read_conll("1\ta\ta\tNoun\tNoun\t_\tx\tPOSSESSOR\t_\t_\n").unwrap_err();
        assert!(err.to_string().contains("non-numeric head"));
    }
}
