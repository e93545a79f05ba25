//! Embedding models for knowledge hypergraphs.
//!
//! Five score functions over a shared parameter layout:
//!
//! * `HypE` — entities are convolved with position-specific filters, the
//!   feature maps are concatenated and projected, and the projected vectors
//!   are combined with the relation embedding by a generalized inner product.
//! * `HSimplE` — a single vector per entity, circularly shifted by
//!   `d * (position) / max_arity` before the inner product; for binary graphs
//!   this reduces exactly to SimplE under a concatenation mapping.
//! * `MDistMult` — the DistMult bilinear product extended to any arity.
//! * `MCp` — canonical polyadic decomposition with one entity vector per
//!   possible position.
//! * `RSimplE` — binary SimplE, used on reified datasets.

mod gradients;

pub use gradients::{score_gradients, Gradients};
pub(crate) use gradients::{forward_backward, TupleMasks};

use std::fmt;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::data::{EntityId, Fact, RelationId};
use crate::error::{Error, Result};
use crate::math::{circshift, conv1d, dotsum, feature_map_size};

/// Standard deviation of the zero-mean normal initializer.
pub const INIT_STD: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    HypE,
    HSimplE,
    MDistMult,
    MCp,
    RSimplE,
}

impl ModelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelKind::HypE => "hype",
            ModelKind::HSimplE => "hsimple",
            ModelKind::MDistMult => "m-distmult",
            ModelKind::MCp => "m-cp",
            ModelKind::RSimplE => "r-simple",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "hype" => Ok(ModelKind::HypE),
            "hsimple" => Ok(ModelKind::HSimplE),
            "m-distmult" => Ok(ModelKind::MDistMult),
            "m-cp" => Ok(ModelKind::MCp),
            "r-simple" => Ok(ModelKind::RSimplE),
            other => Err(Error::Config(format!(
                "unknown model `{other}` (expected hype, hsimple, m-distmult, m-cp, r-simple)"
            ))),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Dense row-major matrix of f64.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Rectangular identity: 1 on the main diagonal, 0 elsewhere.
    pub fn eye(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |r, c| if r == c { 1.0 } else { 0.0 })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }
}

/// Positional convolution filters: `positions x count x len` (omega).
#[derive(Debug, Clone, PartialEq)]
pub struct FilterBank {
    positions: usize,
    count: usize,
    len: usize,
    data: Vec<f64>,
}

impl FilterBank {
    pub fn zeros(positions: usize, count: usize, len: usize) -> Self {
        FilterBank { positions, count, len, data: vec![0.0; positions * count * len] }
    }

    pub fn from_fn(
        positions: usize,
        count: usize,
        len: usize,
        mut f: impl FnMut(usize, usize, usize) -> f64,
    ) -> Self {
        let mut data = Vec::with_capacity(positions * count * len);
        for p in 0..positions {
            for j in 0..count {
                for u in 0..len {
                    data.push(f(p, j, u));
                }
            }
        }
        FilterBank { positions, count, len, data }
    }

    pub fn positions(&self) -> usize {
        self.positions
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// The j-th filter for the given position.
    pub fn filter(&self, position: usize, j: usize) -> &[f64] {
        let start = (position * self.count + j) * self.len;
        &self.data[start..start + self.len]
    }

    pub fn filter_mut(&mut self, position: usize, j: usize) -> &mut [f64] {
        let start = (position * self.count + j) * self.len;
        &mut self.data[start..start + self.len]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }
}

/// Model hyperparameters and vocabulary sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    pub kind: ModelKind,
    pub num_entities: usize,
    pub num_relations: usize,
    /// Entity embedding dimension d.
    pub dim: usize,
    /// Relation embedding dimension. Equal to `dim` for all trained models;
    /// the expressivity constructions use a smaller value.
    pub dim_r: usize,
    /// Filters per position (n), HypE only.
    pub filters: usize,
    /// Filter length (l), HypE only.
    pub filter_len: usize,
    /// Convolution stride (s), HypE only.
    pub stride: usize,
    /// Maximum arity over the dataset's relations (delta).
    pub max_arity: usize,
}

impl ModelConfig {
    /// Config with the conventions of the trained models: `dim_r = dim`.
    pub fn new(
        kind: ModelKind,
        num_entities: usize,
        num_relations: usize,
        dim: usize,
        max_arity: usize,
    ) -> Self {
        ModelConfig {
            kind,
            num_entities,
            num_relations,
            dim,
            dim_r: dim,
            filters: 2,
            filter_len: 2,
            stride: 2,
            max_arity,
        }
    }

    /// Feature map size `q = floor((d - l) / s) + 1` (HypE).
    pub fn feature_map_size(&self) -> usize {
        feature_map_size(self.dim, self.filter_len, self.stride)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.dim_r == 0 {
            return Err(Error::Config("embedding dimensions must be positive".into()));
        }
        if self.max_arity == 0 {
            return Err(Error::Config("max arity must be at least 1".into()));
        }
        match self.kind {
            ModelKind::HypE => {
                if self.stride == 0 {
                    return Err(Error::Config("stride must be at least 1".into()));
                }
                if self.filters == 0 {
                    return Err(Error::Config("need at least one filter per position".into()));
                }
                if self.filter_len == 0 || self.filter_len > self.dim {
                    return Err(Error::Config(format!(
                        "filter length {} must be in 1..={}",
                        self.filter_len, self.dim
                    )));
                }
            }
            ModelKind::HSimplE => {
                if self.dim_r != self.dim {
                    return Err(Error::Config(
                        "hsimple requires equal entity and relation dimensions".into(),
                    ));
                }
                if self.dim % self.max_arity != 0 {
                    return Err(Error::Config(format!(
                        "hsimple requires max arity {} to divide the embedding dimension {}",
                        self.max_arity, self.dim
                    )));
                }
            }
            ModelKind::MDistMult | ModelKind::MCp | ModelKind::RSimplE => {
                if self.dim_r != self.dim {
                    return Err(Error::Config(format!(
                        "{} requires equal entity and relation dimensions",
                        self.kind
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of stored entity rows: one per entity, times the number of
    /// per-entity copies the model keeps.
    pub fn entity_rows(&self) -> usize {
        self.num_entities * self.entity_copies()
    }

    pub fn entity_copies(&self) -> usize {
        match self.kind {
            ModelKind::MCp => self.max_arity,
            ModelKind::RSimplE => 2,
            _ => 1,
        }
    }

    pub fn relation_rows(&self) -> usize {
        self.num_relations * self.relation_copies()
    }

    pub fn relation_copies(&self) -> usize {
        match self.kind {
            ModelKind::RSimplE => 2,
            _ => 1,
        }
    }
}

/// Learnable state: entity matrix, relation matrix, and for HypE the
/// positional filters and the projection matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub config: ModelConfig,
    /// Entity rows. m-cp stores `max_arity` consecutive rows per entity
    /// (one per position copy); r-simple stores 2 consecutive rows.
    pub entities: Matrix,
    /// Relation rows; r-simple stores 2 consecutive rows per relation.
    pub relations: Matrix,
    /// Positional filters omega (HypE).
    pub filters: Option<FilterBank>,
    /// Projection matrix P of shape `(filters * q) x dim_r` (HypE).
    pub projection: Option<Matrix>,
}

impl ModelParams {
    /// Initialize parameters: entity/relation/filter entries from
    /// N(0, 0.01); the projection starts as the rectangular identity so
    /// early training behaves like truncated pass-through.
    pub fn init(config: ModelConfig, rng: &mut impl Rng) -> Result<Self> {
        config.validate()?;
        let normal = Normal::new(0.0, INIT_STD).expect("valid std");
        let entities =
            Matrix::from_fn(config.entity_rows(), config.dim, |_, _| normal.sample(rng));
        let relations =
            Matrix::from_fn(config.relation_rows(), config.dim_r, |_, _| normal.sample(rng));
        let (filters, projection) = if config.kind == ModelKind::HypE {
            let filters = FilterBank::from_fn(
                config.max_arity,
                config.filters,
                config.filter_len,
                |_, _, _| normal.sample(rng),
            );
            let nq = config.filters * config.feature_map_size();
            (Some(filters), Some(Matrix::eye(nq, config.dim_r)))
        } else {
            (None, None)
        };
        Ok(ModelParams { config, entities, relations, filters, projection })
    }

    /// Rows of the entity matrix that belong to `entity` (all copies).
    pub fn entity_row_range(&self, entity: EntityId) -> std::ops::Range<usize> {
        let copies = self.config.entity_copies();
        entity * copies..(entity + 1) * copies
    }

    /// The single entity row a tuple slot reads, for single-row-per-slot
    /// kinds (everything except r-simple).
    pub(crate) fn slot_row(&self, entity: EntityId, slot: usize) -> usize {
        match self.config.kind {
            ModelKind::MCp => entity * self.config.max_arity + slot,
            ModelKind::RSimplE => unreachable!("r-simple slots read two rows"),
            _ => entity,
        }
    }

    pub fn relation_row_range(&self, relation: RelationId) -> std::ops::Range<usize> {
        let copies = self.config.relation_copies();
        relation * copies..(relation + 1) * copies
    }

    fn check_fact(&self, fact: &Fact) -> Result<()> {
        match self.config.kind {
            ModelKind::RSimplE => {
                if fact.arity() != 2 {
                    return Err(Error::Arity {
                        arity: fact.arity(),
                        expected: "exactly 2 (r-simple scores binary facts)".into(),
                    });
                }
            }
            _ => {
                if fact.arity() > self.config.max_arity {
                    return Err(Error::Arity {
                        arity: fact.arity(),
                        expected: format!("at most {}", self.config.max_arity),
                    });
                }
            }
        }
        if fact.arity() == 0 {
            return Err(Error::Arity { arity: 0, expected: "at least 1".into() });
        }
        Ok(())
    }

    /// Left-rotation amount for a tuple slot (HSimplE): `slot * d / delta`.
    pub(crate) fn shift_amount(&self, slot: usize) -> usize {
        slot * (self.config.dim / self.config.max_arity)
    }
}

/// `f(e, position)`: convolve the entity vector with each of the position's
/// filters, concatenate the feature maps, and project back to the relation
/// dimension. HypE only.
pub fn position_transform(
    params: &ModelParams,
    entity_vec: &[f64],
    position: usize,
) -> Result<Vec<f64>> {
    let concat = transform_concat(params, entity_vec, position)?;
    let p = params
        .projection
        .as_ref()
        .ok_or_else(|| Error::Config("model has no projection matrix".into()))?;
    Ok(project(&concat, p))
}

/// The concatenated feature maps (length `n * q`) before projection.
pub(crate) fn transform_concat(
    params: &ModelParams,
    entity_vec: &[f64],
    position: usize,
) -> Result<Vec<f64>> {
    let filters = params
        .filters
        .as_ref()
        .ok_or_else(|| Error::Config("model has no positional filters".into()))?;
    if position >= params.config.max_arity {
        return Err(Error::Position { position, max_arity: params.config.max_arity });
    }
    let q = params.config.feature_map_size();
    let mut concat = Vec::with_capacity(params.config.filters * q);
    for j in 0..params.config.filters {
        let map = conv1d(entity_vec, filters.filter(position, j), params.config.stride)?;
        concat.extend_from_slice(&map);
    }
    Ok(concat)
}

/// Row-vector times matrix: `out[c] = sum_m v[m] * p[m][c]`.
pub(crate) fn project(v: &[f64], p: &Matrix) -> Vec<f64> {
    debug_assert_eq!(v.len(), p.rows());
    let mut out = vec![0.0; p.cols()];
    for (m, &vm) in v.iter().enumerate() {
        let row = p.row(m);
        for (o, &pm) in out.iter_mut().zip(row) {
            *o += vm * pm;
        }
    }
    out
}

/// The per-slot vectors entering the generalized inner product, for the
/// product-form models (everything except r-simple).
pub(crate) fn slot_vector(params: &ModelParams, fact: &Fact, slot: usize) -> Result<Vec<f64>> {
    let entity = fact.entities[slot];
    match params.config.kind {
        ModelKind::HypE => {
            position_transform(params, params.entities.row(params.slot_row(entity, slot)), slot)
        }
        ModelKind::HSimplE => Ok(circshift(
            params.entities.row(params.slot_row(entity, slot)),
            params.shift_amount(slot),
        )),
        ModelKind::MDistMult | ModelKind::MCp => {
            Ok(params.entities.row(params.slot_row(entity, slot)).to_vec())
        }
        ModelKind::RSimplE => unreachable!("r-simple is not a product-form model"),
    }
}

/// Score one fact under the model.
pub fn score(params: &ModelParams, fact: &Fact) -> Result<f64> {
    params.check_fact(fact)?;
    match params.config.kind {
        ModelKind::RSimplE => {
            let (a, b) = (fact.entities[0], fact.entities[1]);
            let (a1, a2) = (params.entities.row(2 * a), params.entities.row(2 * a + 1));
            let (b1, b2) = (params.entities.row(2 * b), params.entities.row(2 * b + 1));
            let r1 = params.relations.row(2 * fact.relation);
            let r2 = params.relations.row(2 * fact.relation + 1);
            Ok(dotsum(&[r1, a1, b2])? + dotsum(&[r2, b1, a2])?)
        }
        _ => {
            let slots: Vec<Vec<f64>> = (0..fact.arity())
                .map(|slot| slot_vector(params, fact, slot))
                .collect::<Result<_>>()?;
            let mut inputs: Vec<&[f64]> = Vec::with_capacity(slots.len() + 1);
            inputs.push(params.relations.row(fact.relation));
            inputs.extend(slots.iter().map(|s| s.as_slice()));
            dotsum(&inputs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Fact;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_params(
        kind: ModelKind,
        num_entities: usize,
        num_relations: usize,
        dim: usize,
        max_arity: usize,
        seed: u64,
    ) -> ModelParams {
        let config = ModelConfig::new(kind, num_entities, num_relations, dim, max_arity);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut params = ModelParams::init(config, &mut rng).unwrap();
        // the default init is tiny; rescale to O(1) magnitudes so score and
        // gradient comparisons are numerically meaningful
        for x in params.entities.data_mut() {
            *x *= 100.0;
        }
        for x in params.relations.data_mut() {
            *x *= 100.0;
        }
        if let Some(f) = params.filters.as_mut() {
            for x in f.data_mut() {
                *x *= 100.0;
            }
        }
        params
    }

    #[test]
    fn identity_filter_and_projection_is_identity() {
        let config = ModelConfig {
            kind: ModelKind::HypE,
            num_entities: 1,
            num_relations: 1,
            dim: 5,
            dim_r: 5,
            filters: 1,
            filter_len: 1,
            stride: 1,
            max_arity: 3,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut params = ModelParams::init(config, &mut rng).unwrap();
        // one-tap unit filter at every position; projection is already I
        if let Some(f) = params.filters.as_mut() {
            for p in 0..3 {
                f.filter_mut(p, 0)[0] = 1.0;
            }
        }
        let e = vec![0.5, -1.0, 2.0, 0.0, 3.0];
        for pos in 0..3 {
            assert_eq!(position_transform(&params, &e, pos).unwrap(), e);
        }
    }

    #[test]
    fn position_transform_matches_naive_loop() {
        let params = random_params(ModelKind::HypE, 4, 2, 9, 3, 42);
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let e: Vec<f64> = (0..9).map(|_| rng.random_range(-1.0..1.0)).collect();
        use rand::Rng;
        let cfg = &params.config;
        let omega = params.filters.as_ref().unwrap();
        let p = params.projection.as_ref().unwrap();
        let q = cfg.feature_map_size();
        for pos in 0..cfg.max_arity {
            let got = position_transform(&params, &e, pos).unwrap();
            // explicit conv-concat-matmul
            let mut concat = vec![0.0; cfg.filters * q];
            for j in 0..cfg.filters {
                for t in 0..q {
                    let mut acc = 0.0;
                    for u in 0..cfg.filter_len {
                        acc += e[t * cfg.stride + u] * omega.filter(pos, j)[u];
                    }
                    concat[j * q + t] = acc;
                }
            }
            let mut want = vec![0.0; cfg.dim_r];
            for (c, w) in want.iter_mut().enumerate() {
                for (m, &cm) in concat.iter().enumerate() {
                    *w += cm * p.row(m)[c];
                }
            }
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn position_out_of_range_errors() {
        let params = random_params(ModelKind::HypE, 2, 1, 6, 2, 1);
        let e = vec![0.0; 6];
        assert!(matches!(
            position_transform(&params, &e, 2),
            Err(Error::Position { position: 2, .. })
        ));
    }

    #[test]
    fn zero_relation_scores_zero() {
        let mut params = random_params(ModelKind::HypE, 3, 1, 8, 3, 2);
        for x in params.relations.data_mut() {
            *x = 0.0;
        }
        let fact = Fact::new(0, vec![0, 1, 2]);
        assert_eq!(score(&params, &fact).unwrap(), 0.0);
    }

    #[test]
    fn arity_above_max_errors() {
        let params = random_params(ModelKind::HypE, 5, 1, 8, 3, 3);
        let fact = Fact::new(0, vec![0, 1, 2, 3]);
        assert!(matches!(score(&params, &fact), Err(Error::Arity { .. })));
    }

    #[test]
    fn hype_score_composes_from_position_transforms() {
        let params = random_params(ModelKind::HypE, 6, 2, 10, 3, 4);
        let fact = Fact::new(1, vec![2, 0, 5]);
        let mut inputs: Vec<Vec<f64>> = Vec::new();
        for (slot, &e) in fact.entities.iter().enumerate() {
            inputs.push(position_transform(&params, params.entities.row(e), slot).unwrap());
        }
        let mut refs: Vec<&[f64]> = vec![params.relations.row(1)];
        refs.extend(inputs.iter().map(|v| v.as_slice()));
        let want = dotsum(&refs).unwrap();
        let got = score(&params, &fact).unwrap();
        assert!((got - want).abs() <= 1e-12);
    }

    #[test]
    fn mdistmult_is_permutation_invariant() {
        let params = random_params(ModelKind::MDistMult, 6, 2, 7, 4, 5);
        let fact = Fact::new(0, vec![1, 4, 2]);
        let swapped = Fact::new(0, vec![2, 1, 4]);
        let a = score(&params, &fact).unwrap();
        let b = score(&params, &swapped).unwrap();
        assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn mdistmult_all_ones_entities_sums_relation() {
        let mut params = random_params(ModelKind::MDistMult, 3, 1, 5, 2, 6);
        for x in params.entities.data_mut() {
            *x = 1.0;
        }
        let fact = Fact::new(0, vec![0, 2]);
        let want: f64 = params.relations.row(0).iter().sum();
        assert!((score(&params, &fact).unwrap() - want).abs() <= 1e-12);
    }

    #[test]
    fn mdistmult_matches_index_loop() {
        let params = random_params(ModelKind::MDistMult, 6, 2, 7, 4, 7);
        let fact = Fact::new(1, vec![0, 5, 3, 2]);
        let mut want = 0.0;
        for t in 0..7 {
            let mut term = params.relations.row(1)[t];
            for &e in &fact.entities {
                term *= params.entities.row(e)[t];
            }
            want += term;
        }
        assert!((score(&params, &fact).unwrap() - want).abs() <= 1e-12);
    }

    #[test]
    fn mcp_uses_position_copies() {
        let params = random_params(ModelKind::MCp, 5, 2, 6, 3, 8);
        let fact = Fact::new(0, vec![1, 3]);
        let mut want = 0.0;
        let delta = params.config.max_arity;
        for t in 0..6 {
            want += params.relations.row(0)[t]
                * params.entities.row(1 * delta)[t]
                * params.entities.row(3 * delta + 1)[t];
        }
        assert!((score(&params, &fact).unwrap() - want).abs() <= 1e-12);
    }

    #[test]
    fn mcp_swapping_entities_changes_score() {
        let params = random_params(ModelKind::MCp, 5, 2, 6, 3, 9);
        let mut found_asymmetry = false;
        for (a, b) in [(0, 1), (2, 3), (1, 4)] {
            let x = score(&params, &Fact::new(0, vec![a, b])).unwrap();
            let y = score(&params, &Fact::new(0, vec![b, a])).unwrap();
            if (x - y).abs() > 1e-9 {
                found_asymmetry = true;
            }
        }
        assert!(found_asymmetry, "m-cp should not be symmetric under entity swaps");
    }

    #[test]
    fn rsimple_requires_binary_facts() {
        let params = random_params(ModelKind::RSimplE, 4, 2, 6, 2, 10);
        assert!(matches!(
            score(&params, &Fact::new(0, vec![0, 1, 2])),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn rsimple_symmetric_setup_is_symmetric() {
        let mut params = random_params(ModelKind::RSimplE, 4, 2, 6, 2, 11);
        // tie the two blocks together: r1 = r2, e1 = e2 per entity
        for e in 0..4 {
            let first = params.entities.row(2 * e).to_vec();
            params.entities.row_mut(2 * e + 1).copy_from_slice(&first);
        }
        for r in 0..2 {
            let first = params.relations.row(2 * r).to_vec();
            params.relations.row_mut(2 * r + 1).copy_from_slice(&first);
        }
        let a = score(&params, &Fact::new(0, vec![1, 3])).unwrap();
        let b = score(&params, &Fact::new(0, vec![3, 1])).unwrap();
        assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn rsimple_matches_loop_oracle() {
        let params = random_params(ModelKind::RSimplE, 4, 2, 6, 2, 12);
        let fact = Fact::new(1, vec![0, 3]);
        let mut want = 0.0;
        for t in 0..6 {
            want += params.relations.row(2)[t]
                * params.entities.row(0)[t]
                * params.entities.row(7)[t];
            want += params.relations.row(3)[t]
                * params.entities.row(6)[t]
                * params.entities.row(1)[t];
        }
        assert!((score(&params, &fact).unwrap() - want).abs() <= 1e-12);
    }

    #[test]
    fn hsimple_arity_one_is_plain_dotsum() {
        let params = random_params(ModelKind::HSimplE, 3, 1, 6, 3, 13);
        let fact = Fact::new(0, vec![2]);
        let want = dotsum(&[params.relations.row(0), params.entities.row(2)]).unwrap();
        assert!((score(&params, &fact).unwrap() - want).abs() <= 1e-12);
    }

    #[test]
    fn hsimple_rejects_indivisible_dimension() {
        let config = ModelConfig::new(ModelKind::HSimplE, 3, 1, 7, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(ModelParams::init(config, &mut rng).is_err());
    }

    #[test]
    fn hsimple_delta2_equals_simple_under_concatenation() {
        // e = concat(e1, e2), r = concat(r1, r2) makes the shifted product
        // reproduce SimplE's two dotsum terms
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        use rand::Rng;
        let half = 5;
        let num_entities = 6;
        let num_relations = 3;
        let simple = random_params(ModelKind::RSimplE, num_entities, num_relations, half, 2, 15);
        let config = ModelConfig::new(ModelKind::HSimplE, num_entities, num_relations, 2 * half, 2);
        let mut hs = ModelParams::init(config, &mut rng).unwrap();
        for e in 0..num_entities {
            let row = hs.entities.row_mut(e);
            row[..half].copy_from_slice(simple.entities.row(2 * e));
            row[half..].copy_from_slice(simple.entities.row(2 * e + 1));
        }
        for r in 0..num_relations {
            let row = hs.relations.row_mut(r);
            row[..half].copy_from_slice(simple.relations.row(2 * r));
            row[half..].copy_from_slice(simple.relations.row(2 * r + 1));
        }
        for _ in 0..1000 {
            let fact = Fact::new(
                rng.random_range(0..num_relations),
                vec![rng.random_range(0..num_entities), rng.random_range(0..num_entities)],
            );
            let a = score(&hs, &fact).unwrap();
            let b = score(&simple, &fact).unwrap();
            assert!((a - b).abs() <= 1e-9, "hsimple {a} vs simple {b}");
        }
    }

    #[test]
    fn scaling_one_entity_scales_score() {
        for kind in [
            ModelKind::HypE,
            ModelKind::HSimplE,
            ModelKind::MDistMult,
            ModelKind::MCp,
        ] {
            let mut params = random_params(kind, 5, 2, 6, 3, 20);
            let fact = Fact::new(0, vec![1, 2, 4]);
            let before = score(&params, &fact).unwrap();
            let alpha = 3.5;
            for slot_row in [params.slot_row(2, 1)] {
                for x in params.entities.row_mut(slot_row) {
                    *x *= alpha;
                }
            }
            let after = score(&params, &fact).unwrap();
            assert!(
                (after - alpha * before).abs() <= 1e-9 * before.abs().max(1.0),
                "{kind}: {after} vs {}",
                alpha * before
            );
        }
    }

    #[test]
    fn hype_feature_map_permutation_with_matching_projection_rows() {
        // permuting the filter order while permuting the corresponding P row
        // blocks leaves the score unchanged
        let params = random_params(ModelKind::HypE, 4, 1, 8, 2, 21);
        let fact = Fact::new(0, vec![1, 3]);
        let before = score(&params, &fact).unwrap();
        let mut permuted = params.clone();
        let q = params.config.feature_map_size();
        let f = permuted.filters.as_mut().unwrap();
        for pos in 0..2 {
            let a = f.filter(pos, 0).to_vec();
            let b = f.filter(pos, 1).to_vec();
            f.filter_mut(pos, 0).copy_from_slice(&b);
            f.filter_mut(pos, 1).copy_from_slice(&a);
        }
        let p = permuted.projection.as_mut().unwrap();
        for m in 0..q {
            let a = p.row(m).to_vec();
            let b = p.row(m + q).to_vec();
            p.row_mut(m).copy_from_slice(&b);
            p.row_mut(m + q).copy_from_slice(&a);
        }
        let after = score(&permuted, &fact).unwrap();
        assert!((before - after).abs() <= 1e-9);
    }
}
