//! Structural conversions between hypergraphs and binary graphs.
//!
//! `reify` replaces a k-ary fact (k >= 3) with k binary facts through a fresh
//! auxiliary entity; `star_to_clique` replaces it with C(k,2) pairwise facts;
//! `inverse_reify` reconstructs k-ary facts from triples sharing an auxiliary
//! entity. Auxiliary entities are named `_aux_<counter>` and reified relations
//! `<r>__pos<i>`; the `__` infix is reserved, so conversion inputs must not
//! contain it.

use std::collections::{HashMap, HashSet};

use crate::data::{EntityId, Fact, Vocab};
use crate::error::{Error, Result};

const AUX_PREFIX: &str = "_aux_";
const POS_INFIX: &str = "__pos";
const PAIR_INFIX: &str = "__pair";

fn check_reserved(vocab: &Vocab, facts: &[Fact]) -> Result<()> {
    let mut relations: HashSet<usize> = HashSet::new();
    let mut entities: HashSet<usize> = HashSet::new();
    for fact in facts {
        relations.insert(fact.relation);
        entities.extend(fact.entities.iter().copied());
    }
    for r in relations {
        let name = vocab.relation_name(r);
        if name.contains("__") {
            return Err(Error::ReservedName(name.to_string()));
        }
    }
    for e in entities {
        let name = vocab.entity_name(e);
        if name.contains("__") {
            return Err(Error::ReservedName(name.to_string()));
        }
    }
    Ok(())
}

/// Next free `_aux_<n>` counter in this vocabulary, so repeated conversions
/// against one vocab never collide.
fn next_aux_counter(vocab: &Vocab) -> usize {
    vocab
        .entity_names()
        .iter()
        .filter_map(|name| name.strip_prefix(AUX_PREFIX)?.parse::<usize>().ok())
        .map(|n| n + 1)
        .max()
        .unwrap_or(0)
}

/// Reify: every fact of arity k >= 3 on relation `r` becomes the k binary
/// facts `r__pos<i>(_aux_<c>, e_i)`; facts of arity <= 2 pass through.
///
/// Deterministic given input order: aux counters increase per converted fact.
pub fn reify(facts: &[Fact], vocab: &mut Vocab) -> Result<Vec<Fact>> {
    check_reserved(vocab, facts)?;
    let mut counter = next_aux_counter(vocab);
    let mut out = Vec::new();
    for fact in facts {
        if fact.arity() < 3 {
            out.push(fact.clone());
            continue;
        }
        let aux = vocab.intern_entity(&format!("{AUX_PREFIX}{counter}"));
        counter += 1;
        let base = vocab.relation_name(fact.relation).to_string();
        for (i, &e) in fact.entities.iter().enumerate() {
            let rel = vocab.intern_relation(&format!("{base}{POS_INFIX}{}", i + 1), 2)?;
            out.push(Fact::new(rel, vec![aux, e]));
        }
    }
    Ok(out)
}

/// Star-to-clique: every fact of arity k >= 3 on relation `r` becomes the
/// C(k,2) binary facts `r__pair<i>_<j>(e_i, e_j)` over ordered position pairs
/// i < j; facts of arity <= 2 pass through.
pub fn star_to_clique(facts: &[Fact], vocab: &mut Vocab) -> Result<Vec<Fact>> {
    check_reserved(vocab, facts)?;
    let mut out = Vec::new();
    for fact in facts {
        if fact.arity() < 3 {
            out.push(fact.clone());
            continue;
        }
        let base = vocab.relation_name(fact.relation).to_string();
        let k = fact.arity();
        for i in 0..k {
            for j in (i + 1)..k {
                let rel = vocab.intern_relation(
                    &format!("{base}{PAIR_INFIX}{}_{}", i + 1, j + 1),
                    2,
                )?;
                out.push(Fact::new(rel, vec![fact.entities[i], fact.entities[j]]));
            }
        }
    }
    Ok(out)
}

/// Counts reported by [`inverse_reify`].
#[derive(Debug, Default, Clone)]
pub struct UnreifyStats {
    /// Facts dropped by the single-entity / numeric-entity filter.
    pub dropped_filtered: usize,
    /// Aux groups of size 1, dropped with a warning count.
    pub singleton_groups: usize,
    /// Aux groups converted into one k-ary fact each.
    pub groups_converted: usize,
    /// Facts passed through unchanged (no aux entity involved).
    pub passthrough: usize,
    /// Malformed group descriptions (lenient mode only).
    pub malformed: Vec<String>,
}

fn is_numeric_name(name: &str) -> bool {
    !name.is_empty() && name.parse::<f64>().is_ok()
}

struct GroupMember {
    position: usize,
    entity: EntityId,
}

fn build_fact_from_group(
    vocab: &mut Vocab,
    aux: EntityId,
    base: &str,
    mut members: Vec<GroupMember>,
) -> Result<Fact> {
    let aux_name = vocab.entity_name(aux).to_string();
    members.sort_by_key(|m| m.position);
    for pair in members.windows(2) {
        if pair[0].position == pair[1].position {
            return Err(Error::MalformedGroup {
                aux: aux_name,
                message: format!("duplicate position suffix {}", pair[0].position),
            });
        }
    }
    let entities: Vec<EntityId> = members.iter().map(|m| m.entity).collect();
    let relation = vocab
        .intern_relation(base, entities.len())
        .map_err(|e| match e {
            Error::ArityConflict { relation, expected, found, .. } => Error::MalformedGroup {
                aux: aux_name.clone(),
                message: format!(
                    "reconstructed relation `{relation}` would have arity {found}, \
                     but it already has arity {expected}"
                ),
            },
            other => other,
        })?;
    Ok(Fact::new(relation, entities))
}

fn inverse_reify_impl(
    triples: &[Fact],
    vocab: &mut Vocab,
    aux_detector: &dyn Fn(&str) -> bool,
    lenient: bool,
) -> Result<(Vec<Fact>, UnreifyStats)> {
    let mut stats = UnreifyStats::default();
    let mut out = Vec::new();
    // groups keyed by aux entity, in first-seen order
    let mut group_order: Vec<EntityId> = Vec::new();
    let mut groups: HashMap<EntityId, Vec<(usize, GroupMember)>> = HashMap::new();

    for (idx, fact) in triples.iter().enumerate() {
        // step 1: drop single-entity facts and facts with numeric entities
        if fact.arity() < 2
            || fact
                .entities
                .iter()
                .any(|&e| is_numeric_name(vocab.entity_name(e)))
        {
            stats.dropped_filtered += 1;
            continue;
        }
        let first = fact.entities[0];
        if fact.arity() == 2 && aux_detector(vocab.entity_name(first)) {
            if !groups.contains_key(&first) {
                group_order.push(first);
            }
            let rel_name = vocab.relation_name(fact.relation);
            let position = rel_name
                .rsplit_once(POS_INFIX)
                .and_then(|(_, suffix)| suffix.parse::<usize>().ok());
            match position {
                Some(position) => {
                    groups.entry(first).or_default().push((
                        idx,
                        GroupMember { position, entity: fact.entities[1] },
                    ));
                }
                None => {
                    let err = Error::MalformedGroup {
                        aux: vocab.entity_name(first).to_string(),
                        message: format!(
                            "relation `{rel_name}` carries no `{POS_INFIX}<i>` suffix"
                        ),
                    };
                    if lenient {
                        stats.malformed.push(err.to_string());
                    } else {
                        return Err(err);
                    }
                }
            }
        } else {
            stats.passthrough += 1;
            out.push(fact.clone());
        }
    }

    for aux in group_order {
        let members = match groups.remove(&aux) {
            Some(m) => m,
            None => continue,
        };
        if members.len() == 1 {
            stats.singleton_groups += 1;
            continue;
        }
        // all members of one group share a base relation name by construction
        // of the reified convention; mixed bases are malformed
        let base: HashSet<String> = members
            .iter()
            .map(|(idx, _)| {
                let name = vocab.relation_name(triples[*idx].relation);
                name[..name.rfind(POS_INFIX).unwrap()].to_string()
            })
            .collect();
        let result = if base.len() != 1 {
            Err(Error::MalformedGroup {
                aux: vocab.entity_name(aux).to_string(),
                message: format!("mixed base relations: {:?}", {
                    let mut names: Vec<&String> = base.iter().collect();
                    names.sort();
                    names
                }),
            })
        } else {
            build_fact_from_group(
                vocab,
                aux,
                base.iter().next().unwrap(),
                members.into_iter().map(|(_, m)| m).collect(),
            )
        };
        match result {
            Ok(fact) => {
                stats.groups_converted += 1;
                out.push(fact);
            }
            Err(err) if lenient => stats.malformed.push(err.to_string()),
            Err(err) => return Err(err),
        }
    }
    Ok((out, stats))
}

/// Inverse reification: group triples whose first argument is an auxiliary
/// entity (per `aux_detector`) and emit one fact per group, entities ordered
/// by the `__pos<i>` suffix of the reified relation names.
///
/// Single-entity facts and facts naming a numeric entity are dropped first;
/// groups of size 1 are dropped and counted. Malformed groups (duplicate or
/// missing position suffixes) are errors.
pub fn inverse_reify<F>(
    triples: &[Fact],
    vocab: &mut Vocab,
    aux_detector: F,
) -> Result<(Vec<Fact>, UnreifyStats)>
where
    F: Fn(&str) -> bool,
{
    inverse_reify_impl(triples, vocab, &aux_detector, false)
}

/// Like [`inverse_reify`] but malformed groups are collected into
/// [`UnreifyStats::malformed`] instead of failing the run.
pub fn inverse_reify_lenient<F>(
    triples: &[Fact],
    vocab: &mut Vocab,
    aux_detector: F,
) -> Result<(Vec<Fact>, UnreifyStats)>
where
    F: Fn(&str) -> bool,
{
    inverse_reify_impl(triples, vocab, &aux_detector, true)
}

/// Default detector matching the aux entities produced by [`reify`].
pub fn default_aux_detector(name: &str) -> bool {
    name.starts_with(AUX_PREFIX)
}

/// Keep only facts whose relation (and every entity) is in the given
/// allowlists; a `None` list admits everything.
pub fn filter_by_allowlist(
    facts: &[Fact],
    vocab: &Vocab,
    entity_allowlist: Option<&HashSet<String>>,
    relation_allowlist: Option<&HashSet<String>>,
) -> Vec<Fact> {
    facts
        .iter()
        .filter(|fact| {
            if let Some(rels) = relation_allowlist {
                if !rels.contains(vocab.relation_name(fact.relation)) {
                    return false;
                }
            }
            if let Some(ents) = entity_allowlist {
                if !fact
                    .entities
                    .iter()
                    .all(|&e| ents.contains(vocab.entity_name(e)))
                {
                    return false;
                }
            }
            true
        })
        .cloned()
        .collect()
}
