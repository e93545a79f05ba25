//! Text format: UTF-8, one fact per line, tab-separated, relation name first,
//! then the entity names. A relation's first-seen arity is binding.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::data::{Dataset, Fact, Vocab};
use crate::error::{Error, Result};

/// Parse facts from text, interning names into `vocab`.
///
/// Unseen entity/relation names are added; a relation re-appearing with a
/// different arity is an error naming the relation and the line number,
/// as is an empty relation or entity field.
pub fn parse_facts(text: &str, vocab: &mut Vocab) -> Result<Vec<Fact>> {
    let mut facts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let relation = fields.next().unwrap_or("");
        if relation.is_empty() {
            return Err(Error::Parse {
                line: line_no,
                message: "empty relation field".into(),
            });
        }
        let mut entities = Vec::new();
        for field in fields {
            if field.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "empty entity field".into(),
                });
            }
            entities.push(vocab.intern_entity(field));
        }
        if entities.is_empty() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("fact for relation `{relation}` has no entities"),
            });
        }
        let relation = vocab
            .intern_relation(relation, entities.len())
            .map_err(|e| match e {
                Error::ArityConflict { relation, expected, found, .. } => Error::ArityConflict {
                    relation,
                    expected,
                    found,
                    line: line_no,
                },
                other => other,
            })?;
        facts.push(Fact::new(relation, entities));
    }
    Ok(facts)
}

/// Render facts in the same line format `parse_facts` reads.
pub fn serialize_facts(facts: &[Fact], vocab: &Vocab) -> String {
    let mut out = String::new();
    for fact in facts {
        out.push_str(vocab.relation_name(fact.relation));
        for &e in &fact.entities {
            out.push('\t');
            out.push_str(vocab.entity_name(e));
        }
        out.push('\n');
    }
    out
}

/// Load one fact file into the given vocabulary.
pub fn load_fact_file(path: &Path, vocab: &mut Vocab) -> Result<Vec<Fact>> {
    let text = fs::read_to_string(path)?;
    parse_facts(&text, vocab).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

/// Write facts to a file, one per line with `\n` terminators.
pub fn write_fact_file(path: &Path, facts: &[Fact], vocab: &Vocab) -> Result<()> {
    fs::write(path, serialize_facts(facts, vocab))?;
    Ok(())
}

/// Load a dataset directory containing `train.txt` and optionally
/// `valid.txt` / `test.txt`, all sharing one vocabulary.
pub fn load_dataset_dir(dir: &Path) -> Result<Dataset> {
    let mut vocab = Vocab::new();
    let train_path = dir.join("train.txt");
    if !train_path.is_file() {
        return Err(Error::Invalid(format!(
            "dataset directory {} has no train.txt",
            dir.display()
        )));
    }
    let train = load_fact_file(&train_path, &mut vocab)?;
    let valid = match dir.join("valid.txt") {
        p if p.is_file() => load_fact_file(&p, &mut vocab)?,
        _ => Vec::new(),
    };
    let test = match dir.join("test.txt") {
        p if p.is_file() => load_fact_file(&p, &mut vocab)?,
        _ => Vec::new(),
    };
    Dataset::new(vocab, train, valid, test)
}

/// Read an allowlist file: one name per line, blank lines ignored.
pub fn read_allowlist(path: &Path) -> Result<HashSet<String>> {
    let text = fs::read_to_string(path)?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}
