//! Triplet classification: negative generation, per-relation threshold
//! search, and accuracy.
//!
//! A triple is predicted positive iff its score falls strictly below the
//! relation-specific threshold `σ_r`. Thresholds are searched on the
//! validation split by maximizing accuracy over the midpoints between
//! consecutive distinct scores (plus −∞/+∞ sentinels).
//!
//! Negatives replace the head or tail of a positive with an entity that
//! itself occurs in that slot — under the same relation when possible,
//! anywhere in the dataset otherwise — and never reproduce a known fact.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;
use serde::Serialize;

use crate::data::{EntityId, LabeledTriple, RelationId, Triple, TripleSet};
use crate::embed::{EmbeddingTable, TableRng};
use crate::model::{score, NormKind};
use crate::{Error, Result};

/// Random draws per candidate tier before falling through to the next.
const DRAWS_PER_TIER: usize = 100;

/// Which entities occur as heads and tails, per relation and globally.
#[derive(Debug, Clone, Default)]
pub struct PositionIndex {
    heads_by_rel: HashMap<RelationId, Vec<EntityId>>,
    tails_by_rel: HashMap<RelationId, Vec<EntityId>>,
    all_heads: Vec<EntityId>,
    all_tails: Vec<EntityId>,
    n_entities: usize,
}

impl PositionIndex {
    /// Collect slot occupancy over the given sets (typically every split).
    /// `n_entities` is the vocabulary size, used by the final any-entity
    /// fallback.
    pub fn build<'a>(sets: impl IntoIterator<Item = &'a TripleSet>, n_entities: usize) -> Self {
        let mut heads_by_rel: HashMap<RelationId, BTreeSet<EntityId>> = HashMap::new();
        let mut tails_by_rel: HashMap<RelationId, BTreeSet<EntityId>> = HashMap::new();
        let mut all_heads = BTreeSet::new();
        let mut all_tails = BTreeSet::new();
        for set in sets {
            for t in set.iter() {
                heads_by_rel.entry(t.relation).or_default().insert(t.head);
                tails_by_rel.entry(t.relation).or_default().insert(t.tail);
                all_heads.insert(t.head);
                all_tails.insert(t.tail);
            }
        }
        PositionIndex {
            heads_by_rel: heads_by_rel
                .into_iter()
                .map(|(r, s)| (r, s.into_iter().collect()))
                .collect(),
            tails_by_rel: tails_by_rel
                .into_iter()
                .map(|(r, s)| (r, s.into_iter().collect()))
                .collect(),
            all_heads: all_heads.into_iter().collect(),
            all_tails: all_tails.into_iter().collect(),
            n_entities,
        }
    }

    fn slot_candidates(&self, relation: RelationId, replace_head: bool) -> (&[EntityId], &[EntityId]) {
        if replace_head {
            (
                self.heads_by_rel
                    .get(&relation)
                    .map(Vec::as_slice)
                    .unwrap_or(&[]),
                &self.all_heads,
            )
        } else {
            (
                self.tails_by_rel
                    .get(&relation)
                    .map(Vec::as_slice)
                    .unwrap_or(&[]),
                &self.all_tails,
            )
        }
    }
}

/// Output of [`make_tc_negatives`]: positives and negatives interleaved
/// 1:1, plus how often the any-entity fallback fired.
#[derive(Debug, Clone)]
pub struct GeneratedNegatives {
    pub labeled: Vec<LabeledTriple>,
    pub any_entity_fallbacks: usize,
}

fn substituted(triple: Triple, replace_head: bool, entity: EntityId) -> Triple {
    if replace_head {
        Triple::new(entity, triple.relation, triple.tail)
    } else {
        Triple::new(triple.head, triple.relation, entity)
    }
}

/// For each positive, emit one negative by replacing the head or tail
/// (coin flip) with an entity drawn uniformly from those observed at that
/// position — under the same relation first, anywhere as a fallback —
/// excluding replacements that reproduce a fact in `known`. When no
/// position-respecting replacement can be found after bounded retries, any
/// entity is admitted (still excluding known facts) and counted as a
/// fallback.
pub fn make_tc_negatives(
    positives: &TripleSet,
    index: &PositionIndex,
    known: &TripleSet,
    rng: &mut TableRng,
) -> Result<GeneratedNegatives> {
    let mut labeled = Vec::with_capacity(2 * positives.len());
    let mut any_entity_fallbacks = 0usize;
    for &positive in positives.iter() {
        let replace_head = rng.random_bool(0.5);
        let current = if replace_head {
            positive.head
        } else {
            positive.tail
        };
        let admissible = |entity: EntityId| {
            entity != current && !known.contains(substituted(positive, replace_head, entity))
        };

        let (per_relation, global) = index.slot_candidates(positive.relation, replace_head);
        let mut negative = None;
        for tier in [per_relation, global] {
            if tier.is_empty() {
                continue;
            }
            for _ in 0..DRAWS_PER_TIER {
                let entity = tier[rng.random_range(0..tier.len())];
                if admissible(entity) {
                    negative = Some(substituted(positive, replace_head, entity));
                    break;
                }
            }
            if negative.is_some() {
                break;
            }
        }
        if negative.is_none() {
            // Any-entity fallback: bounded random draws, then a
            // deterministic sweep so that generation cannot spin forever.
            for _ in 0..DRAWS_PER_TIER {
                let entity = rng.random_range(0..index.n_entities);
                if admissible(entity) {
                    negative = Some(substituted(positive, replace_head, entity));
                    break;
                }
            }
            if negative.is_none() {
                negative = (0..index.n_entities)
                    .find(|&e| admissible(e))
                    .map(|e| substituted(positive, replace_head, e));
            }
            if negative.is_some() {
                any_entity_fallbacks += 1;
            }
        }
        let Some(negative) = negative else {
            return Err(Error::NoNegativeAvailable {
                head: positive.head,
                relation: positive.relation,
                tail: positive.tail,
            });
        };
        labeled.push(LabeledTriple {
            triple: positive,
            positive: true,
        });
        labeled.push(LabeledTriple {
            triple: negative,
            positive: false,
        });
    }
    Ok(GeneratedNegatives {
        labeled,
        any_entity_fallbacks,
    })
}

/// Relation-specific thresholds plus the global fallback for relations
/// unseen in validation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TcThresholds {
    pub per_relation: BTreeMap<RelationId, f64>,
    pub global: f64,
}

impl TcThresholds {
    pub fn for_relation(&self, relation: RelationId) -> f64 {
        self.per_relation
            .get(&relation)
            .copied()
            .unwrap_or(self.global)
    }
}

fn triple_score(
    triple: Triple,
    entities: &EmbeddingTable,
    relations: &EmbeddingTable,
    norm: NormKind,
) -> Result<f64> {
    score(
        entities.row(triple.head),
        relations.row(triple.relation),
        entities.row(triple.tail),
        norm,
    )
}

/// Accuracy of `sigma` under the strict decision rule `score < sigma`.
fn accuracy_at(scored: &[(f64, bool)], sigma: f64) -> usize {
    scored
        .iter()
        .filter(|&&(s, positive)| (s < sigma) == positive)
        .count()
}

/// Candidate thresholds for a score set: −∞, midpoints between
/// consecutive distinct sorted scores, +∞. Returns the candidate with the
/// highest accuracy; ties go to the smallest candidate.
fn best_threshold(scored: &[(f64, bool)]) -> f64 {
    let mut distinct: Vec<f64> = scored.iter().map(|&(s, _)| s).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    let mut candidates = Vec::with_capacity(distinct.len() + 1);
    candidates.push(f64::NEG_INFINITY);
    for pair in distinct.windows(2) {
        candidates.push(pair[0] + (pair[1] - pair[0]) / 2.0);
    }
    candidates.push(f64::INFINITY);

    let mut best = (candidates[0], accuracy_at(scored, candidates[0]));
    for &c in &candidates[1..] {
        let acc = accuracy_at(scored, c);
        if acc > best.1 {
            best = (c, acc);
        }
    }
    best.0
}

/// Search `σ_r` per relation on labeled validation triples, maximizing
/// classification accuracy. The global threshold over all validation
/// triples backs relations that never appear in validation.
pub fn tc_threshold_search(
    valid: &[LabeledTriple],
    entities: &EmbeddingTable,
    relations: &EmbeddingTable,
    norm: NormKind,
) -> Result<TcThresholds> {
    if valid.is_empty() {
        return Err(Error::Eval(
            "threshold search needs a nonempty validation set".to_owned(),
        ));
    }
    let mut by_relation: BTreeMap<RelationId, Vec<(f64, bool)>> = BTreeMap::new();
    let mut all = Vec::with_capacity(valid.len());
    for item in valid {
        let s = triple_score(item.triple, entities, relations, norm)?;
        by_relation
            .entry(item.triple.relation)
            .or_default()
            .push((s, item.positive));
        all.push((s, item.positive));
    }
    let per_relation = by_relation
        .into_iter()
        .map(|(r, scored)| (r, best_threshold(&scored)))
        .collect();
    Ok(TcThresholds {
        per_relation,
        global: best_threshold(&all),
    })
}

/// Strict decision rule: positive iff the score is below the threshold.
pub fn tc_classify(
    triple: Triple,
    sigma: f64,
    entities: &EmbeddingTable,
    relations: &EmbeddingTable,
    norm: NormKind,
) -> Result<bool> {
    Ok(triple_score(triple, entities, relations, norm)? < sigma)
}

/// Per-relation tallies of a classification run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct RelationAccuracy {
    pub threshold: f64,
    pub correct: usize,
    pub total: usize,
}

impl RelationAccuracy {
    pub fn accuracy(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.correct as f64 / self.total as f64
        }
    }
}

/// Classification accuracy over a labeled test set.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct TcMetrics {
    pub per_relation: BTreeMap<RelationId, RelationAccuracy>,
    pub correct: usize,
    pub total: usize,
    /// Test relations that fell back to the global threshold.
    pub fallback_relations: usize,
}

impl TcMetrics {
    pub fn accuracy(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.correct as f64 / self.total as f64
        }
    }
}

/// Classify every labeled test triple with its relation's threshold and
/// tally per-relation and overall accuracy.
pub fn tc_evaluate(
    test: &[LabeledTriple],
    thresholds: &TcThresholds,
    entities: &EmbeddingTable,
    relations: &EmbeddingTable,
    norm: NormKind,
) -> Result<TcMetrics> {
    let mut metrics = TcMetrics::default();
    let mut fallbacks = BTreeSet::new();
    for item in test {
        let relation = item.triple.relation;
        let sigma = thresholds.for_relation(relation);
        if !thresholds.per_relation.contains_key(&relation) {
            fallbacks.insert(relation);
        }
        let predicted = tc_classify(item.triple, sigma, entities, relations, norm)?;
        let entry = metrics.per_relation.entry(relation).or_insert_with(|| {
            RelationAccuracy {
                threshold: sigma,
                ..RelationAccuracy::default()
            }
        });
        entry.total += 1;
        metrics.total += 1;
        if predicted == item.positive {
            entry.correct += 1;
            metrics.correct += 1;
        }
    }
    metrics.fallback_relations = fallbacks.len();
    Ok(metrics)
}
