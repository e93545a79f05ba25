//! Knowledge hypergraph datasets: facts, vocabularies, partitions, and the
//! structural conversions between hypergraphs and ordinary (binary) graphs.

mod convert;
mod parse;

pub use convert::{
    default_aux_detector, filter_by_allowlist, inverse_reify, inverse_reify_lenient, reify,
    star_to_clique, UnreifyStats,
};
pub use parse::{
    load_dataset_dir, load_fact_file, parse_facts, read_allowlist, serialize_facts,
    write_fact_file,
};

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type EntityId = usize;
pub type RelationId = usize;

/// One tuple `r(e_1, ..., e_k)`. Entity order is semantically meaningful;
/// the arity `k` is fixed per relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fact {
    pub relation: RelationId,
    pub entities: Vec<EntityId>,
}

impl Fact {
    pub fn new(relation: RelationId, entities: Vec<EntityId>) -> Self {
        Fact { relation, entities }
    }

    pub fn arity(&self) -> usize {
        self.entities.len()
    }
}

/// Set of known facts, used for filtered ranking.
pub type FactSet = HashSet<Fact>;

/// Entity/relation vocabularies with dense contiguous ids and the
/// per-relation arity table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocab {
    entity_names: Vec<String>,
    entity_ids: HashMap<String, EntityId>,
    relation_names: Vec<String>,
    relation_ids: HashMap<String, RelationId>,
    arities: Vec<usize>,
}

impl Vocab {
    pub fn new() -> Self {
        Vocab::default()
    }

    pub fn num_entities(&self) -> usize {
        self.entity_names.len()
    }

    pub fn num_relations(&self) -> usize {
        self.relation_names.len()
    }

    /// Maximum arity over all relations (delta). 1 for an empty vocabulary.
    pub fn max_arity(&self) -> usize {
        self.arities.iter().copied().max().unwrap_or(1)
    }

    pub fn entity_name(&self, id: EntityId) -> &str {
        &self.entity_names[id]
    }

    pub fn relation_name(&self, id: RelationId) -> &str {
        &self.relation_names[id]
    }

    pub fn entity_id(&self, name: &str) -> Option<EntityId> {
        self.entity_ids.get(name).copied()
    }

    pub fn relation_id(&self, name: &str) -> Option<RelationId> {
        self.relation_ids.get(name).copied()
    }

    pub fn arity(&self, relation: RelationId) -> usize {
        self.arities[relation]
    }

    pub fn entity_names(&self) -> &[String] {
        &self.entity_names
    }

    pub fn relation_names(&self) -> &[String] {
        &self.relation_names
    }

    /// Intern an entity name, returning its dense id.
    pub fn intern_entity(&mut self, name: &str) -> EntityId {
        if let Some(&id) = self.entity_ids.get(name) {
            return id;
        }
        let id = self.entity_names.len();
        self.entity_names.push(name.to_string());
        self.entity_ids.insert(name.to_string(), id);
        id
    }

    /// Intern a relation name with its declared arity. The first-seen arity
    /// is binding; a different arity later is a conflict.
    pub fn intern_relation(&mut self, name: &str, arity: usize) -> Result<RelationId> {
        if let Some(&id) = self.relation_ids.get(name) {
            if self.arities[id] != arity {
                return Err(Error::ArityConflict {
                    relation: name.to_string(),
                    expected: self.arities[id],
                    found: arity,
                    line: 0,
                });
            }
            return Ok(id);
        }
        let id = self.relation_names.len();
        self.relation_names.push(name.to_string());
        self.relation_ids.insert(name.to_string(), id);
        self.arities.push(arity);
        Ok(id)
    }

    /// Render a fact back to its name form (for messages and files).
    pub fn render_fact(&self, fact: &Fact) -> String {
        let names: Vec<&str> = fact.entities.iter().map(|&e| self.entity_name(e)).collect();
        format!("{}({})", self.relation_name(fact.relation), names.join(", "))
    }
}

/// A dataset: shared vocabulary plus disjoint train/valid/test fact partitions.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub vocab: Vocab,
    pub train: Vec<Fact>,
    pub valid: Vec<Fact>,
    pub test: Vec<Fact>,
}

impl Dataset {
    /// Build a dataset, checking that the partitions are disjoint as fact
    /// sets and that every fact matches its relation's declared arity.
    pub fn new(vocab: Vocab, train: Vec<Fact>, valid: Vec<Fact>, test: Vec<Fact>) -> Result<Self> {
        let mut seen: HashMap<&Fact, &'static str> = HashMap::new();
        for (facts, label) in [(&train, "train"), (&valid, "valid"), (&test, "test")] {
            for fact in facts {
                if fact.arity() != vocab.arity(fact.relation) {
                    return Err(Error::Invalid(format!(
                        "fact {} has arity {} but relation `{}` is declared with arity {}",
                        vocab.render_fact(fact),
                        fact.arity(),
                        vocab.relation_name(fact.relation),
                        vocab.arity(fact.relation)
                    )));
                }
                if let Some(other) = seen.get(fact) {
                    if *other != label {
                        return Err(Error::Invalid(format!(
                            "fact {} appears in both {} and {} partitions",
                            vocab.render_fact(fact),
                            other,
                            label
                        )));
                    }
                } else {
                    seen.insert(fact, label);
                }
            }
        }
        Ok(Dataset { vocab, train, valid, test })
    }

    /// All facts across the three partitions (tau' = train u valid u test).
    pub fn all_facts(&self) -> FactSet {
        self.train
            .iter()
            .chain(&self.valid)
            .chain(&self.test)
            .cloned()
            .collect()
    }

    /// Move a seeded random fraction of the train split into the validation
    /// split (for datasets shipped without one).
    pub fn carve_validation(&mut self, fraction: f64, seed: u64) {
        if fraction <= 0.0 || self.train.is_empty() {
            return;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut idx: Vec<usize> = (0..self.train.len()).collect();
        idx.shuffle(&mut rng);
        let take = ((self.train.len() as f64) * fraction).round() as usize;
        let take = take.min(self.train.len().saturating_sub(1));
        let chosen: HashSet<usize> = idx.into_iter().take(take).collect();
        let mut train = Vec::with_capacity(self.train.len() - take);
        for (i, fact) in self.train.drain(..).enumerate() {
            if chosen.contains(&i) {
                self.valid.push(fact);
            } else {
                train.push(fact);
            }
        }
        self.train = train;
    }
}

/// Test facts containing at least one (entity, position) pair that never
/// occurs in the train split. Positions are indexed within the tuple.
pub fn missing_positions_subset(train: &[Fact], test: &[Fact]) -> Vec<Fact> {
    let mut observed: HashSet<(EntityId, usize)> = HashSet::new();
    for fact in train {
        for (pos, &e) in fact.entities.iter().enumerate() {
            observed.insert((e, pos));
        }
    }
    test.iter()
        .filter(|fact| {
            fact.entities
                .iter()
                .enumerate()
                .any(|(pos, &e)| !observed.contains(&(e, pos)))
        })
        .cloned()
        .collect()
}

/// Synthetic arity-3 hypergraph generated from one compositional rule.
///
/// Entities `0..num_entities` carry two seeded permutations `pi` and `rho`;
/// every relation holds exactly the facts `r_i(a, pi(a), rho(a))`. Each
/// pairing recurs once per relation, so held-out facts are predictable from
/// the rest. `num_test` facts are held out for the test split; there is no
/// validation split.
pub fn composition_dataset(
    num_entities: usize,
    num_relations: usize,
    num_test: usize,
    seed: u64,
) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vocab = Vocab::new();
    for e in 0..num_entities {
        vocab.intern_entity(&format!("e{e}"));
    }
    let mut pi: Vec<usize> = (0..num_entities).collect();
    let mut rho: Vec<usize> = (0..num_entities).collect();
    pi.shuffle(&mut rng);
    rho.shuffle(&mut rng);
    let mut facts = Vec::with_capacity(num_entities * num_relations);
    for r in 0..num_relations {
        let rel = vocab.intern_relation(&format!("r{r}"), 3).expect("fresh relation");
        for a in 0..num_entities {
            facts.push(Fact::new(rel, vec![a, pi[a], rho[a]]));
        }
    }
    facts.shuffle(&mut rng);
    let test = facts.split_off(facts.len().saturating_sub(num_test));
    Dataset::new(vocab, facts, Vec::new(), test).expect("synthetic partitions are disjoint")
}
